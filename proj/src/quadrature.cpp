#include "gammatrop/quadrature.hpp"

#include "gammatrop/errors.hpp"
#include "gammatrop/parallel.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <queue>
#include <set>

namespace gammatrop {

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw DomainError("quadrature tolerances must be positive");
    if (max_subdivisions < 1) throw DomainError("max_subdivisions must be >= 1");
    if (!(tail_cutoff > 0.0)) throw DomainError("tail_cutoff must be positive");
    if (workers < 1) throw DomainError("workers must be >= 1");
    static const std::set<int> orders{15, 21, 31, 41, 51, 61};
    if (!orders.count(rule_order))
        throw DomainError("rule_order must be one of 15, 21, 31, 41, 51, 61; got " + std::to_string(rule_order));
}

namespace {

// Non-negative Kronrod abscissae (x[0] = 0) with Kronrod weights and the
// embedded Gauss weights (zero where a Kronrod node is not a Gauss node).
struct Rule {
    std::vector<double> x, wk, wg;
};

template <unsigned N>
Rule make_rule() {
    using K = boost::math::quadrature::gauss_kronrod<double, N>;
    using G = boost::math::quadrature::gauss<double, (N - 1) / 2>;
    Rule r;
    r.x.assign(K::abscissa().begin(), K::abscissa().end());
    r.wk.assign(K::weights().begin(), K::weights().end());
    r.wg.assign(r.x.size(), 0.0);
    for (std::size_t j = 0; j < G::abscissa().size(); ++j) {
        const double xg = G::abscissa()[j];
        auto it = std::min_element(r.x.begin(), r.x.end(),
                                   [xg](double p, double q) { return std::abs(p - xg) < std::abs(q - xg); });
        r.wg[static_cast<std::size_t>(it - r.x.begin())] = G::weights()[j];
    }
    return r;
}

const Rule& rule_for(int order) {
    static const Rule r15 = make_rule<15>(), r21 = make_rule<21>(), r31 = make_rule<31>(), r41 = make_rule<41>(),
                      r51 = make_rule<51>(), r61 = make_rule<61>();
    switch (order) {
        case 15: return r15;
        case 21: return r21;
        case 31: return r31;
        case 41: return r41;
        case 51: return r51;
        default: return r61;
    }
}

struct Panel {
    double a, b, value, error;
    bool frozen;
};

std::size_t nodes_per_panel(const Rule& r) { return 2 * r.x.size() - 1; }

void panel_nodes(const Rule& r, double a, double b, std::span<double> out) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    out[0] = c;
    for (std::size_t i = 1; i < r.x.size(); ++i) {
        out[2 * i - 1] = c - h * r.x[i];
        out[2 * i] = c + h * r.x[i];
    }
}

Panel panel_estimate(const Rule& r, double a, double b, std::span<const double> fx) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double tiny = std::numeric_limits<double>::min();
    const double h = 0.5 * (b - a);
    double resk = r.wk[0] * fx[0], resg = r.wg[0] * fx[0], resabs = r.wk[0] * std::abs(fx[0]);
    for (std::size_t i = 1; i < r.x.size(); ++i) {
        const double f1 = fx[2 * i - 1], f2 = fx[2 * i];
        resk += r.wk[i] * (f1 + f2);
        resg += r.wg[i] * (f1 + f2);
        resabs += r.wk[i] * (std::abs(f1) + std::abs(f2));
    }
    const double mean = 0.5 * resk;
    double resasc = r.wk[0] * std::abs(fx[0] - mean);
    for (std::size_t i = 1; i < r.x.size(); ++i)
        resasc += r.wk[i] * (std::abs(fx[2 * i - 1] - mean) + std::abs(fx[2 * i] - mean));
    const double ah = std::abs(h);
    double err = std::abs((resk - resg) * h);
    resabs *= ah;
    resasc *= ah;
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > tiny / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    const bool frozen = std::abs(b - a) <= 100.0 * eps * std::max({std::abs(a), std::abs(b), 1e-280});
    return {a, b, resk * h, err, frozen};
}

struct Adaptive {
    IntegrationResult result;
    std::vector<Panel> panels;  // sorted by left endpoint
};

void evaluate(const BatchIntegrand& f, std::span<const double> x, std::span<double> fx, long& evaluations) {
    f(x, fx);
    evaluations += static_cast<long>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!std::isfinite(fx[i]))
            throw DomainError("integrand is not finite at x = " + std::to_string(x[i]));
}

Adaptive adaptive(const BatchIntegrand& f, const std::vector<double>& edges, const QuadratureConfig& cfg, double extra_error) {
    const Rule& rule = rule_for(cfg.rule_order);
    const std::size_t m = nodes_per_panel(rule);
    Adaptive out;
    std::vector<Panel> panels;
    {
        std::vector<std::pair<double, double>> spans;
        for (std::size_t i = 0; i + 1 < edges.size(); ++i)
            if (edges[i + 1] > edges[i]) spans.emplace_back(edges[i], edges[i + 1]);
        std::vector<double> x(spans.size() * m), fx(x.size());
        for (std::size_t i = 0; i < spans.size(); ++i)
            panel_nodes(rule, spans[i].first, spans[i].second, std::span(x).subspan(i * m, m));
        evaluate(f, x, fx, out.result.evaluations);
        for (std::size_t i = 0; i < spans.size(); ++i)
            panels.push_back(panel_estimate(rule, spans[i].first, spans[i].second, std::span<const double>(fx).subspan(i * m, m)));
    }
    auto worse = [&panels](std::size_t i, std::size_t j) {
        if (panels[i].error != panels[j].error) return panels[i].error < panels[j].error;
        return panels[i].a > panels[j].a;
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> queue(worse);
    double value = 0.0, error = 0.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
        value += panels[i].value;
        error += panels[i].error;
        if (!panels[i].frozen) queue.push(i);
    }
    auto exact_sums = [&] {
        value = 0.0;
        error = 0.0;
        std::vector<std::size_t> order(panels.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return panels[i].a < panels[j].a; });
        for (auto i : order) {
            value += panels[i].value;
            error += panels[i].error;
        }
    };
    auto tolerance = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value)); };
    std::vector<double> x(2 * m), fx(2 * m);
    int since_exact = 0;
    while (true) {
        if (error + extra_error <= tolerance()) {
            exact_sums();
            since_exact = 0;
            if (error + extra_error <= tolerance()) break;
        }
        if (queue.empty() || static_cast<int>(panels.size()) >= cfg.max_subdivisions) break;
        const std::size_t worst = queue.top();
        queue.pop();
        const Panel old = panels[worst];
        const double mid = 0.5 * (old.a + old.b);
        panel_nodes(rule, old.a, mid, std::span(x).subspan(0, m));
        panel_nodes(rule, mid, old.b, std::span(x).subspan(m, m));
        evaluate(f, x, fx, out.result.evaluations);
        const Panel left = panel_estimate(rule, old.a, mid, std::span<const double>(fx).subspan(0, m));
        const Panel right = panel_estimate(rule, mid, old.b, std::span<const double>(fx).subspan(m, m));
        panels[worst] = left;
        panels.push_back(right);
        value += left.value + right.value - old.value;
        error += left.error + right.error - old.error;
        if (!left.frozen) queue.push(worst);
        if (!right.frozen) queue.push(panels.size() - 1);
        if (++since_exact >= 64) {
            exact_sums();
            since_exact = 0;
        }
    }
    exact_sums();
    std::sort(panels.begin(), panels.end(), [](const Panel& p, const Panel& q) { return p.a < q.a; });
    out.result.value = value;
    out.result.error_estimate = error + extra_error;
    out.result.subdivisions = static_cast<int>(panels.size());
    out.result.converged = out.result.error_estimate <= tolerance();
    out.panels = std::move(panels);
    return out;
}

double eval_one(const BatchIntegrand& f, double x, long& evaluations) {
    double fx = 0.0;
    evaluate(f, std::span<const double>(&x, 1), std::span<double>(&fx, 1), evaluations);
    return fx;
}

// Walks away from `anchor` in steps 1, 2, 4, ... until |f| < cutoff, then
// bounds the remaining tail assuming exponential decay.
std::pair<double, double> truncate_tail(const BatchIntegrand& f, double anchor, double direction, double cutoff,
                                        long& evaluations) {
    double step = 1.0;
    for (int i = 0; i < 64; ++i, step *= 2.0) {
        const double x = anchor + direction * step;
        const double v = std::abs(eval_one(f, x, evaluations));
        if (v >= cutoff) continue;
        if (v == 0.0) return {x, 0.0};
        const double v2 = std::abs(eval_one(f, x + direction, evaluations));
        const double rate = v2 > 0.0 ? std::log(v / v2) : std::numeric_limits<double>::infinity();
        const double bound = rate > 0.0 ? v / rate : v * step;
        return {x, bound};
    }
    throw DomainError("integrand does not decay on an infinite interval");
}

struct Prepared {
    std::vector<double> edges;
    double tail_error = 0.0;
};

Prepared prepare_interval(const BatchIntegrand& f, double a, double b, const QuadratureConfig& cfg,
                          std::span<const double> breakpoints, long& evaluations) {
    std::vector<double> inner;
    for (double p : breakpoints)
        if (std::isfinite(p) && p > a && p < b) inner.push_back(p);
    std::sort(inner.begin(), inner.end());
    inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
    Prepared out;
    double lo = a, hi = b;
    const double left_anchor = std::isfinite(a) ? a : (inner.empty() ? std::min(0.0, std::isfinite(b) ? b : 0.0) : inner.front());
    const double right_anchor = std::isfinite(b) ? b : (inner.empty() ? std::max(0.0, std::isfinite(a) ? a : 0.0) : inner.back());
    if (!std::isfinite(b)) {
        auto [cut, bound] = truncate_tail(f, right_anchor, 1.0, cfg.tail_cutoff, evaluations);
        hi = cut;
        out.tail_error += bound;
        if (right_anchor > lo && right_anchor < hi) inner.push_back(right_anchor);
    }
    if (!std::isfinite(a)) {
        auto [cut, bound] = truncate_tail(f, left_anchor, -1.0, cfg.tail_cutoff, evaluations);
        lo = cut;
        out.tail_error += bound;
        if (left_anchor > lo && left_anchor < hi) inner.push_back(left_anchor);
    }
    std::sort(inner.begin(), inner.end());
    inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
    out.edges.push_back(lo);
    for (double p : inner)
        if (p > lo && p < hi) out.edges.push_back(p);
    out.edges.push_back(hi);
    return out;
}

Adaptive integrate_panels(const BatchIntegrand& f, double a, double b, const QuadratureConfig& cfg,
                          std::span<const double> breakpoints) {
    cfg.validate();
    if (std::isnan(a) || std::isnan(b)) throw DomainError("integration limits are NaN");
    if (a == b) return {};
    if (a > b) {
        Adaptive r = integrate_panels(f, b, a, cfg, breakpoints);
        r.result.value = -r.result.value;
        return r;
    }
    long evaluations = 0;
    Prepared p = prepare_interval(f, a, b, cfg, breakpoints, evaluations);
    Adaptive r = adaptive(f, p.edges, cfg, p.tail_error);
    r.result.evaluations += evaluations;
    return r;
}

BatchIntegrand batched(const std::function<double(double)>& f, int workers) {
    return [&f, workers](std::span<const double> x, std::span<double> fx) {
        parallel_for(x.size(), workers, [&](std::size_t i) { fx[i] = f(x[i]); });
    };
}

}  // namespace

IntegrationResult integrate_1d_batch(const BatchIntegrand& f, double a, double b, const QuadratureConfig& cfg,
                                     std::span<const double> breakpoints) {
    return integrate_panels(f, a, b, cfg, breakpoints).result;
}

IntegrationResult integrate_1d(const std::function<double(double)>& f, double a, double b, const QuadratureConfig& cfg,
                               std::span<const double> breakpoints) {
    return integrate_1d_batch(batched(f, cfg.workers), a, b, cfg, breakpoints);
}

namespace {

struct InnerProblem {
    double lo, hi;
    std::vector<double> breaks;
};

// Outer adaptive rule over x; every outer node runs its own inner adaptive
// integral. Inner error estimates are integrated panel-wise (width times the
// largest inner error on the panel's nodes) and added to the outer estimate.
IntegrationResult iterated(const std::function<double(double, double)>& f, double x0, double x1,
                           std::vector<double> x_breaks, const std::function<InnerProblem(double)>& inner,
                           const std::function<double(double)>& weight, const QuadratureConfig& cfg) {
    cfg.validate();
    QuadratureConfig inner_cfg = cfg;
    inner_cfg.workers = 1;
    inner_cfg.abs_tol = 0.1 * cfg.abs_tol / std::max(x1 - x0, 1e-300);
    inner_cfg.rel_tol = 0.1 * cfg.rel_tol;
    std::map<double, double> inner_error;
    long inner_evals = 0;
    bool inner_ok = true;
    BatchIntegrand outer = [&](std::span<const double> x, std::span<double> fx) {
        std::vector<IntegrationResult> slots(x.size());
        parallel_for(x.size(), cfg.workers, [&](std::size_t i) {
            const double xi = x[i];
            const InnerProblem p = inner(xi);
            const double w = weight(xi);
            if (w == 0.0 || !(p.hi > p.lo)) {
                slots[i] = {};
                return;
            }
            auto g = [&f, xi](double y) { return f(xi, y); };
            IntegrationResult r = integrate_1d(g, p.lo, p.hi, inner_cfg, p.breaks);
            r.value *= w;
            r.error_estimate *= std::abs(w);
            slots[i] = r;
        });
        for (std::size_t i = 0; i < x.size(); ++i) {
            fx[i] = slots[i].value;
            inner_error[x[i]] = std::max(inner_error[x[i]], slots[i].error_estimate);
            inner_evals += slots[i].evaluations;
            inner_ok = inner_ok && slots[i].converged;
        }
    };
    Adaptive r = integrate_panels(outer, x0, x1, cfg, x_breaks);
    double propagated = 0.0;
    for (const auto& panel : r.panels) {
        double worst = 0.0;
        for (auto it = inner_error.lower_bound(panel.a); it != inner_error.end() && it->first <= panel.b; ++it)
            worst = std::max(worst, it->second);
        propagated += (panel.b - panel.a) * worst;
    }
    IntegrationResult out = r.result;
    out.error_estimate += propagated;
    out.evaluations += inner_evals;
    out.converged = r.result.converged && inner_ok &&
                    out.error_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(out.value));
    return out;
}

}  // namespace

IntegrationResult integrate_2d(const std::function<double(double, double)>& f, const Domain2D& domain,
                               const QuadratureConfig& cfg) {
    auto unit = [](double) { return 1.0; };
    if (const auto* rect = std::get_if<Rectangle>(&domain)) {
        if (!(rect->x1 >= rect->x0) || !(rect->y1 >= rect->y0)) throw DomainError("rectangle bounds are reversed");
        auto inner = [rect](double x) {
            InnerProblem p{rect->y0, rect->y1, {}};
            if (rect->y_breaks) p.breaks = rect->y_breaks(x);
            return p;
        };
        return iterated(f, rect->x0, rect->x1, rect->x_breaks, inner, unit, cfg);
    }
    if (const auto* poly = std::get_if<ConvexPolygon>(&domain)) {
        const auto& v = poly->vertices;
        if (v.size() < 3) throw DomainError("polygon needs at least three vertices");
        double x0 = v[0].x(), x1 = v[0].x();
        std::vector<double> breaks;
        for (const auto& p : v) {
            x0 = std::min(x0, p.x());
            x1 = std::max(x1, p.x());
            breaks.push_back(p.x());
        }
        auto inner = [&v](double x) {
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (std::size_t i = 0; i < v.size(); ++i) {
                const Eigen::Vector2d& p = v[i];
                const Eigen::Vector2d& q = v[(i + 1) % v.size()];
                const double a = std::min(p.x(), q.x()), b = std::max(p.x(), q.x());
                if (x < a || x > b) continue;
                if (b == a) {
                    lo = std::min({lo, p.y(), q.y()});
                    hi = std::max({hi, p.y(), q.y()});
                    continue;
                }
                const double y = p.y() + (q.y() - p.y()) * (x - p.x()) / (q.x() - p.x());
                lo = std::min(lo, y);
                hi = std::max(hi, y);
            }
            return InnerProblem{lo, hi, {}};
        };
        return iterated(f, x0, x1, breaks, inner, unit, cfg);
    }
    const double pi = std::numbers::pi;
    auto inner = [pi](double) { return InnerProblem{0.0, 2.0 * pi, {}}; };
    auto sine = [](double theta) { return std::sin(theta); };
    return iterated(f, 0.0, pi, {}, inner, sine, cfg);
}

double AsymptoticFit::coefficient(int k) const {
    for (std::size_t i = 0; i < powers.size(); ++i)
        if (powers[i] == k) return coeffs[i];
    return 0.0;
}

double AsymptoticFit::operator()(double L) const {
    double v = 0.0;
    for (std::size_t i = 0; i < powers.size(); ++i) v += coeffs[i] * std::pow(L, powers[i]);
    return v;
}

AsymptoticFit fit_asymptotic(const std::vector<FitSample>& samples, const std::vector<int>& powers,
                             const std::map<int, double>& fixed) {
    std::vector<int> free = powers;
    std::sort(free.begin(), free.end());
    if (std::adjacent_find(free.begin(), free.end()) != free.end()) throw DomainError("repeated power in fit model");
    for (const auto& [k, c] : fixed)
        if (std::binary_search(free.begin(), free.end(), k)) throw DomainError("power " + std::to_string(k) + " is both free and pinned");
    if (free.empty()) throw DomainError("fit model has no free powers");
    if (samples.size() < free.size() + 1)
        throw ConditioningError("need at least " + std::to_string(free.size() + 1) + " samples, got " +
                                std::to_string(samples.size()));
    std::vector<double> ls;
    for (const auto& s : samples) {
        if (!(s.t > 0.0 && s.t < 1.0)) throw DomainError("fit samples need 0 < t < 1");
        if (!std::isfinite(s.value)) throw DomainError("fit sample value is not finite");
        ls.push_back(-std::log(s.t));
    }
    {
        std::vector<double> sorted = ls;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw DomainError("repeated t in fit samples");
        if (sorted.back() / sorted.front() < 1.5)
            throw ConditioningError("L range too narrow for a stable fit (max L / min L < 1.5)");
    }
    const auto rows = static_cast<Eigen::Index>(samples.size());
    const auto cols = static_cast<Eigen::Index>(free.size());
    Eigen::MatrixXd a(rows, cols);
    Eigen::VectorXd y(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double L = ls[static_cast<std::size_t>(i)];
        double target = samples[static_cast<std::size_t>(i)].value;
        for (const auto& [k, c] : fixed) target -= c * std::pow(L, k);
        y[i] = target;
        for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = std::pow(L, free[static_cast<std::size_t>(j)]);
    }
    const Eigen::VectorXd scale = a.colwise().norm().transpose();
    const Eigen::MatrixXd scaled = a * scale.cwiseInverse().asDiagonal();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled);
    const auto& sv = svd.singularValues();
    const double condition = sv[sv.size() - 1] > 0.0 ? sv[0] / sv[sv.size() - 1] : std::numeric_limits<double>::infinity();
    if (!(condition <= 1e12)) throw ConditioningError("design matrix condition number " + std::to_string(condition));
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
    const Eigen::VectorXd c = qr.solve(y).cwiseQuotient(scale);

    AsymptoticFit fit;
    fit.samples = samples;
    fit.condition = condition;
    std::map<int, std::pair<double, bool>> merged;
    for (std::size_t j = 0; j < free.size(); ++j) merged[free[j]] = {c[static_cast<Eigen::Index>(j)], false};
    for (const auto& [k, v] : fixed) merged[k] = {v, true};
    for (const auto& [k, entry] : merged) {
        fit.powers.push_back(k);
        fit.coeffs.push_back(entry.first);
        fit.pinned.push_back(entry.second);
    }
    double ss = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double r = samples[i].value - fit(ls[i]);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / static_cast<double>(samples.size()));
    return fit;
}

std::vector<double> log_spaced(double t_first, double t_last, int count) {
    if (!(t_first > 0.0 && t_first < 1.0 && t_last > 0.0 && t_last < 1.0)) throw DomainError("t-grid must lie in (0,1)");
    if (count < 1) throw DomainError("t-grid needs at least one point");
    if (count == 1) return {t_first};
    std::vector<double> out(static_cast<std::size_t>(count));
    const double l0 = std::log(t_first), l1 = std::log(t_last);
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = std::exp(l0 + (l1 - l0) * i / (count - 1));
    out.front() = t_first;
    out.back() = t_last;
    return out;
}

}  // namespace gammatrop
