// gammatrop: command-line driver for the Γ̂-class / tropical period checks.
//
//   gammatrop gamma  --model '{"ambient":4,"degree":5}' --omega 1
//   gammatrop trop   --family k3
//   gammatrop period --family elliptic --t-grid 1e-3:1e-6:log6
//   gammatrop verify zeta
//   gammatrop report [report.json]
//
// Exit codes: 0 pass, 1 check failure, 2 usage/config error, 3 numerical
// non-convergence.

#include "gammatrop/io.hpp"
#include "gammatrop/verification.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace gammatrop;
namespace fs = std::filesystem;

namespace {

constexpr int exit_pass = 0, exit_fail = 1, exit_usage = 2, exit_numeric = 3;

struct Global {
    std::string config_path;
    std::string out;
    int threads = 0;
    bool quiet = false;
    Json config = Json::object();
};

Json parse_json(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("cannot parse " + what + ": " + e.what());
    }
}

Json load_config(const std::string& path) {
    if (path.empty()) return Json::object();
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    Json j = parse_json(ss.str(), "config '" + path + "'");
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    return j;
}

int resolve_threads(int flag) {
    if (flag > 0) return flag;
    if (const char* env = std::getenv("GAMMATROP_THREADS")) {
        try {
            std::size_t used = 0;
            const int n = std::stoi(env, &used);
            if (used == std::string(env).size() && n > 0) return n;
        } catch (const std::exception&) {
        }
        throw ConfigError(std::string("GAMMATROP_THREADS must be a positive integer, got '") + env + "'");
    }
    return 1;
}

QuadratureConfig quadrature(const Global& g) {
    auto cfg = quadrature_from_json(g.config.contains("quadrature") ? g.config.at("quadrature") : Json());
    cfg.workers = g.threads;
    return cfg;
}

// Writes the primary output to <out>/<name> when --out is set, else stdout.
void emit(const Global& g, const std::string& name, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    fs::create_directories(g.out);
    const fs::path p = fs::path(g.out) / name;
    std::ofstream f(p);
    if (!f) throw ConfigError("cannot write '" + p.string() + "'");
    f << text;
    if (!g.quiet) std::cerr << "wrote " << p.string() << "\n";
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// gamma ---------------------------------------------------------------------

struct GammaArgs {
    std::string model;
    std::string omega;
};

int run_gamma(const Global& g, const GammaArgs& a) {
    Json mj;
    if (!a.model.empty()) {
        mj = parse_json(a.model, "--model");
    } else if (g.config.contains("model")) {
        mj = g.config.at("model");
    } else {
        throw ConfigError("gamma needs --model or a \"model\" entry in the config");
    }
    const auto m = model_from_json(mj);
    std::string omega_text = a.omega;
    if (omega_text.empty() && g.config.contains("omega")) {
        const auto& o = g.config.at("omega");
        omega_text = o.is_string() ? o.get<std::string>() : o.dump();
    }
    Rational omega(m.ambient + 1);
    if (!omega_text.empty()) {
        try {
            omega = parse_rational(omega_text);
        } catch (const DomainError& e) {
            throw ConfigError(std::string("--omega: ") + e.what());
        }
    }
    const auto c = total_chern(m);
    Json chern = Json::array(), ch = Json::array();
    for (int k = 0; k <= c.top_degree(); ++k) chern.push_back(to_string(c[k]));
    const auto chv = chern_character(c, m.dim());
    for (const auto& piece : chv) {
        int k = 0;
        while (k < piece.top_degree() && piece[k] == 0) ++k;
        ch.push_back(to_string(piece[k]));
    }
    const auto poly = gamma_period_polynomial(m, omega);
    Json out = {{"model", {{"ambient", m.ambient}, {"degree", m.degree ? Json(*m.degree) : Json(nullptr)}}},
                {"name", m.name()},
                {"dim", m.dim()},
                {"omega", to_string(omega)},
                {"chern_class", chern},
                {"chern_character", ch},
                {"gamma_class", to_json(gamma_class(m))},
                {"period_polynomial", to_json(poly)}};
    emit(g, "gamma.json", dump(out));
    if (!g.quiet && !g.out.empty()) std::cerr << poly.symbolic() << "\n";
    return exit_pass;
}

// trop ----------------------------------------------------------------------

struct TropArgs {
    std::string family;
    std::string family_json;
    std::size_t samples = 0;
    double t = 1e-2;
    unsigned seed = 1;
};

LaurentFamily named_family(const std::string& name) {
    if (name == "pants") return LaurentFamily::pair_of_pants();
    if (name == "elliptic") return LaurentFamily::elliptic_mirror();
    if (name == "k3") return LaurentFamily::quartic_mirror();
    throw ConfigError("trop knows the families pants, elliptic, k3; got '" + name + "'");
}

int run_trop(const Global& g, const TropArgs& a) {
    std::optional<LaurentFamily> f;
    if (!a.family_json.empty()) {
        f = family_from_json(parse_json(a.family_json, "--family-json"));
    } else if (!a.family.empty()) {
        f = named_family(a.family);
    } else if (g.config.contains("family")) {
        const auto& fj = g.config.at("family");
        f = fj.is_string() ? named_family(fj.get<std::string>()) : family_from_json(fj);
    } else {
        throw ConfigError("trop needs --family, --family-json or a \"family\" entry in the config");
    }
    const auto p = tropicalize(*f);
    const auto box = default_bounding_box(p);
    const auto cx = corner_locus(p, box);

    Json forms = Json::array();
    for (const auto& form : p.forms()) {
        Json m = Json::array();
        for (Eigen::Index i = 0; i < form.slope.size(); ++i) m.push_back(form.slope[i]);
        forms.push_back({{"m", m}, {"a", to_string(form.constant)}});
    }
    Json counts = Json::object();
    for (int k = 0; k < p.dim(); ++k) counts[std::to_string(k)] = cx.cells_of_dim(k).size();
    Json out = {{"family", to_json(*f)}, {"tropical_polynomial", forms}, {"cell_counts", counts}};
    out["corner_locus"] = to_json(cx);

    try {
        const auto chamber = compact_chamber(p);
        Json ch = to_json(chamber);
        if (chamber.dim() == 2) ch["boundary_affine_length"] = to_string(boundary_affine_length(chamber));
        if (chamber.dim() == 3) ch["boundary_affine_area"] = to_string(boundary_affine_area(chamber));
        if (chamber.dim() >= 2) {
            const auto sing = edge_singularities(chamber);
            Json pts = Json::array();
            for (const auto& s : sing) pts.push_back(to_json(s));
            ch["singularities"] = pts;
            ch["singularity_count"] = sing.size();
        }
        out["compact_chamber"] = ch;
    } catch (const StructureError&) {
        out["compact_chamber"] = nullptr;
    }
    emit(g, "trop.json", dump(out));

    if (a.samples > 0) {
        if (!(a.t > 0.0 && a.t < 1.0)) throw ConfigError("--t must lie in (0,1)");
        const auto pts = sample_variety(*f, a.t, a.samples, a.seed);
        std::ostringstream csv;
        for (int i = 0; i < f->dim(); ++i) csv << (i ? "," : "") << "w" << (i + 1);
        csv << "\n";
        char buf[40];
        for (const auto& pt : pts) {
            const auto w = log_t_image(pt, a.t);
            for (Eigen::Index i = 0; i < w.size(); ++i) {
                std::snprintf(buf, sizeof buf, "%.17g", w[i]);
                csv << (i ? "," : "") << buf;
            }
            csv << "\n";
        }
        if (g.out.empty()) {
            std::cout << csv.str();
        } else {
            emit(g, "amoeba.csv", csv.str());
        }
    }
    return exit_pass;
}

// period --------------------------------------------------------------------

struct PeriodArgs {
    std::string family;
    std::string t_grid;
    std::string params;
};

MirrorFamily mirror_family(const std::string& name, const Json& params) {
    MirrorFamily f;
    try {
        f.kind = MirrorFamily::parse_kind(name);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    if (!params.is_null()) {
        if (!params.is_object()) throw ConfigError("--params must be a JSON object");
        for (const auto& [k, v] : params.items()) {
            if (k == "n" && v.is_number_integer()) f.n = v.get<int>();
            else if (k == "a1" && v.is_number()) f.a1 = v.get<double>();
            else if (k == "a2" && v.is_number()) f.a2 = v.get<double>();
            else if (k == "b" && v.is_number()) f.b = v.get<double>();
            else if (k == "x0" && v.is_number()) f.x0 = v.get<double>();
            else if (k == "x1" && v.is_number()) f.x1 = v.get<double>();
            else throw ConfigError("bad parameter '" + k + "' for --params");
        }
    }
    try {
        f.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return f;
}

int run_period(const Global& g, const PeriodArgs& a) {
    std::string name = a.family;
    if (name.empty() && g.config.contains("family") && g.config.at("family").is_string())
        name = g.config.at("family").get<std::string>();
    if (name.empty()) throw ConfigError("period needs --family");
    Json params = a.params.empty() ? (g.config.contains("params") ? g.config.at("params") : Json())
                                   : parse_json(a.params, "--params");
    const auto family = mirror_family(name, params);

    std::string grid = a.t_grid;
    if (grid.empty() && g.config.contains("t_grid")) grid = g.config.at("t_grid").get<std::string>();
    if (grid.empty()) grid = family.kind == FamilyKind::quartic_k3 ? "1e-2:1e-4:log5" : "1e-2:1e-6:log8";
    const auto ts = parse_t_grid(grid);
    const auto cfg = quadrature(g);

    std::vector<PeriodSample> samples(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        samples[i] = sample_period(family, ts[i], cfg);
        if (!g.quiet) std::cerr << "t=" << ts[i] << " value=" << samples[i].value << "\n";
    }
    std::ostringstream csv;
    write_period_csv(csv, samples);
    if (!g.out.empty() && fs::path(g.out).extension() == ".csv") {
        const fs::path p(g.out);
        if (p.has_parent_path()) fs::create_directories(p.parent_path());
        std::ofstream f(p);
        if (!f) throw ConfigError("cannot write '" + p.string() + "'");
        f << csv.str();
    } else {
        emit(g, "period_" + family.name() + ".csv", csv.str());
    }
    for (const auto& s : samples)
        if (!s.converged) {
            if (!g.quiet) std::cerr << "quadrature did not converge at t=" << s.t << "\n";
            return exit_numeric;
        }
    return exit_pass;
}

// verify / report -----------------------------------------------------------

int status_of(const VerificationReport& r) {
    if (r.pass()) return exit_pass;
    return r.converged() ? exit_fail : exit_numeric;
}

std::string table(const Json& report) {
    std::ostringstream os;
    auto show = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    for (const auto& c : report.at("checks"))
        os << (c.at("pass").get<bool>() ? "PASS " : "FAIL ") << c.at("check").get<std::string>()
           << "  observed=" << show(c.at("observed")) << "  expected=" << show(c.at("expected"))
           << "  tol=" << show(c.at("tolerance")) << "\n";
    os << (report.at("pass").get<bool>() ? "overall: PASS" : "overall: FAIL") << "\n";
    return os.str();
}

int run_verify_cmd(const Global& g, std::string suite) {
    if (suite.empty() && g.config.contains("suite")) suite = g.config.at("suite").get<std::string>();
    if (suite.empty()) suite = "all";
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end())
        throw ConfigError("unknown suite '" + suite + "'");
    const auto report = run_verify(suite, quadrature(g), g.threads);
    const Json j = to_json(report);
    emit(g, "verify_" + suite + ".json", dump(j));
    if (!g.quiet) std::cerr << table(j);
    return status_of(report);
}

int run_report(const Global& g, const std::string& input) {
    Json j;
    if (input.empty()) {
        j = to_json(run_verify("all", quadrature(g), g.threads));
        emit(g, "verify_all.json", dump(j));
    } else {
        std::ifstream in(input);
        if (!in) throw ConfigError("cannot open report '" + input + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        j = parse_json(ss.str(), "report '" + input + "'");
        if (!j.is_object() || !j.contains("checks") || !j.contains("pass"))
            throw ConfigError("'" + input + "' is not a verification report");
    }
    const std::string text = table(j);
    if (input.empty() || !g.out.empty()) {
        emit(g, "report.txt", text);
    } else {
        std::cout << text;
    }
    bool conv = true;
    for (const auto& c : j.at("checks")) conv = conv && c.value("converged", true);
    if (j.at("pass").get<bool>()) return exit_pass;
    return conv ? exit_fail : exit_numeric;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Γ̂-class predictions against tropical and exponential periods"};
    app.require_subcommand(1);
    Global g;
    app.add_option("--config", g.config_path, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--out", g.out, "output directory (period also accepts a .csv path)");
    app.add_option("--threads", g.threads, "worker threads (default $GAMMATROP_THREADS or 1)")
        ->check(CLI::PositiveNumber);
    app.add_flag("--quiet", g.quiet, "no progress or summary on stderr");

    GammaArgs ga;
    auto* gamma = app.add_subcommand("gamma", "Γ̂-class and Γ̂-period polynomial of P^n or a hypersurface");
    gamma->add_option("--model", ga.model, "{\"ambient\": n, \"degree\": d|null}");
    gamma->add_option("--omega", ga.omega, "ω as a multiple of H, \"p/q\" (default n+1)");

    TropArgs ta;
    auto* trop = app.add_subcommand("trop", "corner locus, compact chamber, volumes and singularities");
    trop->add_option("--family", ta.family, "pants | elliptic | k3");
    trop->add_option("--family-json", ta.family_json, "LaurentFamily as JSON");
    trop->add_option("--samples", ta.samples, "amoeba points to sample into amoeba.csv");
    trop->add_option("--t", ta.t, "t for amoeba samples");
    trop->add_option("--seed", ta.seed, "sampling seed");

    PeriodArgs pa;
    auto* period = app.add_subcommand("period", "period samples over a t-grid as CSV");
    period->add_option("--family", pa.family, "pants | elliptic | local2d | k3 | fano");
    period->add_option("--t-grid", pa.t_grid, "start:end:logN");
    period->add_option("--params", pa.params, "family parameters as JSON, e.g. {\"n\": 2}");

    std::string suite;
    auto* verify = app.add_subcommand("verify", "run a named check suite and write a JSON report");
    verify->add_option("suite", suite, "zeta | local2d | elliptic | k3 | fano | combinatorics | cohomology | all");

    std::string report_in;
    auto* report = app.add_subcommand("report", "render a report (runs the full suite if none is given)");
    report->add_option("input", report_in, "verification report JSON");

    for (auto* sub : {gamma, trop, period, verify, report}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_pass : exit_usage;
    }

    try {
        g.config = load_config(g.config_path);
        g.threads = resolve_threads(g.threads);
        if (*gamma) return run_gamma(g, ga);
        if (*trop) return run_trop(g, ta);
        if (*period) return run_period(g, pa);
        if (*verify) return run_verify_cmd(g, suite);
        if (*report) return run_report(g, report_in);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const UnsupportedDimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ShapeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: bad JSON value: " << e.what() << "\n";
        return exit_usage;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numeric;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
