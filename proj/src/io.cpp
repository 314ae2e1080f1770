#include "gammatrop/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>

namespace gammatrop {

namespace {

template <class T>
T field(const Json& j, const char* key, T fallback) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

void only_keys(const Json& j, std::initializer_list<const char*> allowed, const char* where) {
    if (!j.is_object()) throw ConfigError(std::string(where) + " must be a JSON object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : j.items())
        if (!ok.count(k)) throw ConfigError(std::string("unknown key '") + k + "' in " + where);
}

Json complex_pair(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

QuadratureConfig quadrature_from_json(const Json& section) {
    QuadratureConfig cfg;
    if (section.is_null()) return cfg;
    only_keys(section, {"abs_tol", "rel_tol", "max_subdivisions", "rule_order", "tail_cutoff", "workers"},
              "quadrature section");
    cfg.abs_tol = field(section, "abs_tol", cfg.abs_tol);
    cfg.rel_tol = field(section, "rel_tol", cfg.rel_tol);
    cfg.max_subdivisions = field(section, "max_subdivisions", cfg.max_subdivisions);
    cfg.rule_order = field(section, "rule_order", cfg.rule_order);
    cfg.tail_cutoff = field(section, "tail_cutoff", cfg.tail_cutoff);
    cfg.workers = field(section, "workers", cfg.workers);
    try {
        cfg.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

Json to_json(const QuadratureConfig& cfg) {
    return {{"abs_tol", cfg.abs_tol},
            {"rel_tol", cfg.rel_tol},
            {"max_subdivisions", cfg.max_subdivisions},
            {"rule_order", cfg.rule_order},
            {"tail_cutoff", cfg.tail_cutoff}};
}

ManifoldModel model_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("ambient")) throw ConfigError("model needs an 'ambient' dimension");
    if (!j.at("ambient").is_number_integer()) throw ConfigError("'ambient' must be an integer");
    ManifoldModel m;
    m.ambient = j.at("ambient").get<int>();
    if (j.contains("degree") && !j.at("degree").is_null()) {
        if (!j.at("degree").is_number_integer()) throw ConfigError("'degree' must be an integer or null");
        m.degree = j.at("degree").get<int>();
    }
    try {
        m.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return m;
}

LaurentFamily family_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("terms")) throw ConfigError("family needs 'dim' and 'terms'");
    if (!j.at("dim").is_number_integer()) throw ConfigError("'dim' must be an integer");
    const int n = j.at("dim").get<int>();
    if (n < 1) throw ConfigError("'dim' must be >= 1");
    if (!j.at("terms").is_array()) throw ConfigError("'terms' must be an array");
    std::vector<LaurentTerm> terms;
    for (const auto& t : j.at("terms")) {
        only_keys(t, {"coeff", "texp", "exp"}, "term");
        LaurentTerm term;
        term.coeff = 1.0;
        if (t.contains("coeff")) {
            const auto& c = t.at("coeff");
            if (c.is_number()) {
                term.coeff = c.get<double>();
            } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
                term.coeff = {c[0].get<double>(), c[1].get<double>()};
            } else {
                throw ConfigError("'coeff' must be [re, im] or a number");
            }
        }
        term.t_exp = 0;
        if (t.contains("texp")) {
            const auto& e = t.at("texp");
            try {
                term.t_exp = e.is_string() ? parse_rational(e.get<std::string>())
                                           : (e.is_number_integer() ? Rational(e.get<long>()) : throw ConfigError(""));
            } catch (const Error&) {
                throw ConfigError("'texp' must be an integer or a string \"p/q\"");
            }
        }
        if (!t.contains("exp") || !t.at("exp").is_array() || static_cast<int>(t.at("exp").size()) != n)
            throw ConfigError("'exp' must be an integer array of length dim");
        term.exponent = IntVector(n);
        for (int i = 0; i < n; ++i) {
            if (!t.at("exp")[static_cast<std::size_t>(i)].is_number_integer()) throw ConfigError("'exp' entries must be integers");
            term.exponent[i] = t.at("exp")[static_cast<std::size_t>(i)].get<std::int64_t>();
        }
        terms.push_back(std::move(term));
    }
    try {
        return LaurentFamily(n, std::move(terms));
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    } catch (const ShapeError& e) {
        throw ConfigError(e.what());
    }
}

Json to_json(const LaurentFamily& f) {
    Json terms = Json::array();
    for (const auto& t : f.terms()) {
        Json e = Json::array();
        for (Eigen::Index i = 0; i < t.exponent.size(); ++i) e.push_back(t.exponent[i]);
        terms.push_back({{"coeff", complex_pair(t.coeff)}, {"texp", to_string(t.t_exp)}, {"exp", e}});
    }
    return {{"dim", f.dim()}, {"terms", terms}};
}

Json to_json(const Symbolic& s) {
    return {{"value", complex_pair(s.evaluate())}, {"exact", s.to_string()}};
}

Json to_json(const PeriodPolynomial& p) {
    Json coeffs = Json::array(), exact = Json::array();
    for (const auto& c : p.exact()) {
        coeffs.push_back(complex_pair(c.evaluate()));
        exact.push_back(c.to_string());
    }
    return {{"coeffs", coeffs}, {"symbolic", p.symbolic()}, {"exact", exact}};
}

Json to_json(const GradedElement<Symbolic>& x) {
    Json out = Json::array();
    for (int k = 0; k <= x.top_degree(); ++k)
        out.push_back({{"degree", k}, {"exact", x[k].to_string()}, {"value", complex_pair(x[k].evaluate())}});
    return out;
}

Json to_json(const RationalVector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_string(v[i]));
    return out;
}

Json to_json(const CellComplex& cx) {
    Json cells = Json::array();
    for (const auto& c : cx.cells) {
        Json dirs = Json::array();
        for (Eigen::Index j = 0; j < c.directions.cols(); ++j) {
            Json d = Json::array();
            for (Eigen::Index i = 0; i < c.directions.rows(); ++i) d.push_back(c.directions(i, j));
            dirs.push_back(d);
        }
        Json verts = Json::array();
        for (const auto& v : c.vertices) verts.push_back(to_json(v));
        cells.push_back({{"dim", c.dim},
                         {"active", c.active},
                         {"point", to_json(c.point)},
                         {"directions", dirs},
                         {"bounded", c.bounded},
                         {"degenerate", c.degenerate},
                         {"vertices", verts}});
    }
    return {{"ambient_dim", cx.ambient_dim},
            {"box", {{"lower", to_json(cx.box.lower)}, {"upper", to_json(cx.box.upper)}}},
            {"cells", cells}};
}

Json to_json(const LatticePolytope& p) {
    Json verts = Json::array(), facets = Json::array();
    for (const auto& v : p.vertices) verts.push_back(to_json(v));
    for (const auto& f : p.facets) {
        Json m = Json::array();
        for (Eigen::Index i = 0; i < f.slope.size(); ++i) m.push_back(f.slope[i]);
        facets.push_back({{"m", m}, {"a", to_string(f.constant)}});
    }
    return {{"vertices", verts}, {"facets", facets}};
}

Json to_json(const IntegrationResult& r) {
    return {{"value", r.value},
            {"error_estimate", r.error_estimate},
            {"evaluations", r.evaluations},
            {"converged", r.converged}};
}

std::vector<double> parse_t_grid(const std::string& text) {
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (c2 == std::string::npos) throw ConfigError("t-grid must look like start:end:logN, got '" + text + "'");
    const std::string count = text.substr(c2 + 1);
    if (count.rfind("log", 0) != 0) throw ConfigError("t-grid spacing must be logN (log-spaced)");
    double a = 0.0, b = 0.0;
    int n = 0;
    try {
        std::size_t used = 0;
        a = std::stod(text.substr(0, c1), &used);
        if (used != c1) throw std::invalid_argument("start");
        b = std::stod(text.substr(c1 + 1, c2 - c1 - 1), &used);
        if (used != c2 - c1 - 1) throw std::invalid_argument("end");
        n = std::stoi(count.substr(3), &used);
        if (used != count.size() - 3) throw std::invalid_argument("count");
    } catch (const std::exception&) {
        throw ConfigError("cannot parse t-grid '" + text + "'");
    }
    if (!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0)) throw ConfigError("t-grid must lie strictly inside (0,1)");
    if (a == b) throw ConfigError("t-grid start and end coincide");
    if (n < 2) throw ConfigError("t-grid needs at least 2 points");
    return log_spaced(a, b, n);
}

void write_period_csv(std::ostream& os, const std::vector<PeriodSample>& samples) {
    os << "t,L,value,error_estimate\n";
    for (const auto& s : samples)
        os << g17(s.t) << ',' << g17(-std::log(s.t)) << ',' << g17(s.value) << ',' << g17(s.error_estimate) << '\n';
}

Json to_json(const VerificationReport& r, bool with_metadata) {
    auto value = [](const CheckValue& v) -> Json {
        if (const auto* d = std::get_if<double>(&v)) return *d;
        return std::get<std::string>(v);
    };
    Json checks = Json::array();
    Json runtimes = Json::object();
    for (const auto& c : r.checks) {
        checks.push_back({{"check", c.id},
                          {"expected", value(c.expected)},
                          {"observed", value(c.observed)},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass},
                          {"converged", c.converged}});
        runtimes[c.id] = c.runtime;
    }
    Json out = {{"suite", r.suite}, {"pass", r.pass()}, {"checks", checks}};
    if (with_metadata) out["metadata"] = {{"threads", r.threads}, {"runtime", r.runtime}, {"check_runtimes", runtimes}};
    return out;
}

}  // namespace gammatrop
