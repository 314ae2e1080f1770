#include "gammatrop/periods.hpp"

#include "gammatrop/cohomology.hpp"
#include "gammatrop/errors.hpp"
#include "gammatrop/parallel.hpp"

#include <Eigen/Geometry>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace gammatrop {

namespace {

void require_t(double t, const char* what) {
    if (!(t > 0.0 && t < 1.0)) throw DomainError(std::string(what) + " needs 0 < t < 1");
}

// log(1 + e^x) without overflow
double softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

PeriodSample to_sample(double t, const IntegrationResult& r, std::string method) {
    return {t, r.value, r.error_estimate, r.evaluations, r.converged, std::move(method)};
}

// Cutting |s| at 60 drops at most 2 e^{-60} of the ζ(2) integrand and
// 2·61·e^{-60} of the ζ(3) one.
constexpr double raw_cut = 60.0;
const double zeta2_tail = 2.0 * std::exp(-raw_cut);
const double zeta3_tail = 122.0 * std::exp(-raw_cut);

}  // namespace

void MirrorFamily::validate() const {
    switch (kind) {
        case FamilyKind::projective_fano:
            if (n < 1 || n > 3) throw UnsupportedDimensionError("exponential periods are implemented for 1 <= n <= 3");
            break;
        case FamilyKind::local_model_2d:
            if (!(a1 > 0.0 && a2 > 0.0 && b > 0.0)) throw DomainError("local model needs a1, a2, b > 0");
            break;
        case FamilyKind::pair_of_pants:
            if (!(x0 <= x1)) throw DomainError("pants section needs x0 <= x1");
            break;
        default:
            break;
    }
}

std::string MirrorFamily::name() const {
    switch (kind) {
        case FamilyKind::projective_fano: return "fano";
        case FamilyKind::elliptic_cubic: return "elliptic";
        case FamilyKind::local_model_2d: return "local2d";
        case FamilyKind::quartic_k3: return "k3";
        case FamilyKind::pair_of_pants: return "pants";
    }
    return "";
}

FamilyKind MirrorFamily::parse_kind(const std::string& name) {
    if (name == "fano") return FamilyKind::projective_fano;
    if (name == "elliptic") return FamilyKind::elliptic_cubic;
    if (name == "local2d") return FamilyKind::local_model_2d;
    if (name == "k3") return FamilyKind::quartic_k3;
    if (name == "pants") return FamilyKind::pair_of_pants;
    throw DomainError("unknown family '" + name + "' (expected pants, elliptic, local2d, k3 or fano)");
}

PeriodSample sample_period(const MirrorFamily& family, double t, const QuadratureConfig& cfg) {
    family.validate();
    switch (family.kind) {
        case FamilyKind::projective_fano: return exp_period_orthant(family.n, t, cfg);
        case FamilyKind::elliptic_cubic: return elliptic_period(t, cfg);
        case FamilyKind::quartic_k3: return k3_period(t, cfg);
        case FamilyKind::local_model_2d: return local_model_region_period(family.a1, family.a2, family.b, t, cfg);
        case FamilyKind::pair_of_pants:
            return to_sample(t, pants_section_integral(family.x0, family.x1, t, cfg), "pants-section");
    }
    throw DomainError("unknown family");
}

// In u = log x the integrand is exp(-t(Σ e^{u_i} + e^{-Σ u_i})). It is below
// e^{-K} unless every u_i <= B and Σ u_i >= -B, B = log(K/t), so the nested
// integration runs over that polytope.
PeriodSample exp_period_orthant(int n, double t, const QuadratureConfig& cfg) {
    if (n < 1) throw DomainError("exponential period needs n >= 1");
    if (n > 3) throw UnsupportedDimensionError("exponential periods are implemented for n <= 3");
    require_t(t, "exp_period_orthant");
    cfg.validate();
    constexpr double K = 60.0;
    const double B = std::log(K / t);
    const double width = (n + 1) * B;

    struct Level {
        double value = 0.0, error = 0.0;
        long evaluations = 0;
        bool converged = true;
    };
    // Integrates the variables k..n given S = u_1 + ... + u_{k-1} and
    // E = e^{u_1} + ... + e^{u_{k-1}}.
    std::function<Level(int, double, double, const QuadratureConfig&)> level =
        [&](int k, double S, double E, const QuadratureConfig& c) -> Level {
        const double lo = -B - S - (n - k) * B;
        const double hi = B;
        if (!(hi > lo)) return {};
        Level out;
        IntegrationResult r;
        if (k == n) {
            auto f = [t, S, E](double u) { return std::exp(-t * (E + std::exp(u) + std::exp(-S - u))); };
            r = integrate_1d(f, lo, hi, c);
        } else {
            QuadratureConfig inner = c;
            inner.abs_tol = 0.1 * c.abs_tol / width;
            inner.rel_tol = 0.1 * c.rel_tol;
            double worst = 0.0;
            long evals = 0;
            bool ok = true;
            auto f = [&](double u) {
                Level l = level(k + 1, S + u, E + std::exp(u), inner);
                worst = std::max(worst, l.error);
                evals += l.evaluations;
                ok = ok && l.converged;
                return l.value;
            };
            r = integrate_1d(f, lo, hi, c);
            r.error_estimate += (hi - lo) * worst;
            r.evaluations += evals;
            r.converged = r.converged && ok;
        }
        out.value = r.value;
        out.error = r.error_estimate;
        out.evaluations = r.evaluations;
        out.converged = r.converged;
        return out;
    };

    IntegrationResult total;
    if (n == 1) {
        total = integrate_1d([t](double u) { return std::exp(-t * (std::exp(u) + std::exp(-u))); }, -B, B, cfg);
    } else {
        // outermost level: inner integrals at the outer nodes run in parallel
        QuadratureConfig inner = cfg;
        inner.workers = 1;
        inner.abs_tol = 0.1 * cfg.abs_tol / width;
        inner.rel_tol = 0.1 * cfg.rel_tol;
        double worst = 0.0;
        long evals = 0;
        bool ok = true;
        BatchIntegrand outer = [&](std::span<const double> x, std::span<double> fx) {
            std::vector<Level> slots(x.size());
            parallel_for(x.size(), cfg.workers, [&](std::size_t i) { slots[i] = level(2, x[i], std::exp(x[i]), inner); });
            for (std::size_t i = 0; i < x.size(); ++i) {
                fx[i] = slots[i].value;
                worst = std::max(worst, slots[i].error);
                evals += slots[i].evaluations;
                ok = ok && slots[i].converged;
            }
        };
        const double lo = -B - (n - 1) * B;
        total = integrate_1d_batch(outer, lo, B, cfg);
        total.error_estimate += (B - lo) * worst;
        total.evaluations += evals;
        total.converged = total.converged && ok;
    }
    // mass outside the truncation polytope
    total.error_estimate += (n + 1) * std::exp(-K) * std::pow(width, n);
    total.converged = total.converged &&
                      total.error_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total.value)) * 10.0;
    return to_sample(t, total, "nested-log-coordinates");
}

double fano_gamma_prediction(int n, double t) {
    if (n < 1) throw DomainError("fano prediction needs n >= 1");
    // t = 1 is allowed here: L = 0 leaves the degree-n Γ̂ coefficient
    if (!(t > 0.0 && t <= 1.0)) throw DomainError("fano_gamma_prediction needs 0 < t <= 1");
    const auto poly = gamma_period_polynomial(ManifoldModel::projective(n), Rational(n + 1));
    return poly(-std::log(t)).real();
}

IntegrationResult error_integral_dim1_reduced(const QuadratureConfig& cfg) {
    // log(1 + e^{-s}) + min(0, s) = log(1 + e^{-|s|})
    auto f = [](double s) { return std::log1p(std::exp(-std::abs(s))); };
    const double breaks[] = {0.0};
    return integrate_1d(f, -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), cfg,
                        breaks);
}

IntegrationResult error_integral_dim1_raw(double t, const QuadratureConfig& cfg) {
    require_t(t, "error_integral_dim1 raw");
    const double L = -std::log(t);
    const double lt = std::log(t);
    const double ymax = raw_cut / L;
    auto f = [t, lt](double y) { return -std::log(1.0 + std::pow(t, y)) / lt + std::min(0.0, y); };
    QuadratureConfig c = cfg;
    c.abs_tol = cfg.abs_tol / (L * L);
    const double breaks[] = {0.0};
    IntegrationResult r = integrate_1d(f, -ymax, ymax, c, breaks);
    r.value *= L * L;
    r.error_estimate = r.error_estimate * L * L + zeta2_tail;
    return r;
}

IntegrationResult error_integral_dim2_a_reduced(const QuadratureConfig& cfg) {
    // for s < 0, log(1 + e^{-s}) = -s + e with e = log(1 + e^{s}); the s² cancels
    auto f = [](double s) {
        const double e = std::log1p(std::exp(-std::abs(s)));
        return 0.5 * (e * e + 2.0 * std::max(0.0, -s) * e);
    };
    const double breaks[] = {0.0};
    return integrate_1d(f, -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), cfg,
                        breaks);
}

IntegrationResult error_integral_dim2_a_raw(double t, const QuadratureConfig& cfg) {
    require_t(t, "error_integral_dim2_a raw");
    const double L = -std::log(t);
    const double lt = std::log(t);
    const double ymax = raw_cut / L;
    auto f = [t, lt](double y) {
        const double g = std::log(1.0 + std::pow(t, y)) / lt;
        const double m = std::min(0.0, y);
        return g * g - m * m;
    };
    const double scale = 0.5 * L * L * L;
    QuadratureConfig c = cfg;
    c.abs_tol = cfg.abs_tol / scale;
    const double breaks[] = {0.0};
    IntegrationResult r = integrate_1d(f, -ymax, ymax, c, breaks);
    r.value *= scale;
    r.error_estimate = r.error_estimate * scale + zeta3_tail;
    return r;
}

namespace {

TropicalPolynomial two_dim_local_curve() {
    IntVector e1(2), e2(2);
    e1 << 1, 0;
    e2 << 0, 1;
    return TropicalPolynomial(2, {{IntVector::Zero(2), 0}, {e1, 0}, {e2, 0}});
}

}  // namespace

Dim2Result error_integral_dim2_b(const Box2& u, double t, const QuadratureConfig& cfg, Transversality check) {
    require_t(t, "error_integral_dim2_b");
    if (!(u.lo1 < u.hi1 && u.lo2 < u.hi2)) throw DomainError("U must be a nondegenerate rectangle");
    BoundingBox box{RationalVector(2), RationalVector(2)};
    box.lower << Rational(u.lo1), Rational(u.lo2);
    box.upper << Rational(u.hi1), Rational(u.hi2);
    const CellComplex cx = corner_locus(two_dim_local_curve(), box);

    Dim2Result out;
    auto corner = [&](const RationalVector& w) {
        return (w[0] == box.lower[0] || w[0] == box.upper[0]) && (w[1] == box.lower[1] || w[1] == box.upper[1]);
    };
    auto same_side = [&](const RationalVector& p, const RationalVector& q) {
        for (int i = 0; i < 2; ++i) {
            if (p[i] == q[i] && (p[i] == box.lower[i] || p[i] == box.upper[i])) return true;
        }
        return false;
    };
    for (const auto& cell : cx.cells) {
        if (cell.dim == 0 && check == Transversality::require && box.on_boundary(cell.point))
            throw DomainError("the vertex of the tropical curve lies on the boundary of U");
        if (cell.dim != 1) continue;
        out.ell += affine_volume(cell.vertices);
        if (check == Transversality::skip) continue;
        for (const auto& v : cell.vertices)
            if (corner(v)) throw DomainError("a ray of the tropical curve leaves U through a corner");
        if (cell.vertices.size() == 2 && same_side(cell.vertices[0], cell.vertices[1]))
            throw DomainError("a ray of the tropical curve runs along a side of U");
    }
    out.chi = (u.lo1 <= 0.0 && 0.0 <= u.hi1 && u.lo2 <= 0.0 && 0.0 <= u.hi2) ? 1 : 0;

    const double L = -std::log(t);
    // with m = min(0, s1, s2): log(1 + e^{-s1} + e^{-s2}) + m = log(e^m + e^{m-s1} + e^{m-s2})
    auto f = [](double s1, double s2) {
        const double m = std::min({0.0, s1, s2});
        return std::log(std::exp(m) + std::exp(m - s1) + std::exp(m - s2));
    };
    Rectangle rect{L * u.lo1, L * u.hi1, L * u.lo2, L * u.hi2, {0.0}, [](double s1) {
                       return std::vector<double>{0.0, s1};
                   }};
    out.integral = integrate_2d(f, rect, cfg);
    return out;
}

double local_model_area(double a1, double a2, double b) { return 2.0 * (a1 + a2) * b - 0.5 * b * b; }

PeriodSample local_model_region_period(double a1, double a2, double b, double t, const QuadratureConfig& cfg) {
    if (!(a1 > 0.0 && a2 > 0.0 && b > 0.0)) throw DomainError("local model needs a1, a2, b > 0");
    require_t(t, "local_model_region_period");
    const double L = -std::log(t);
    // log_t(1 + t^y) = -log(1 + e^{-Ly}) / L
    auto f = [a1, a2, L](double y) { return a1 + a2 - softplus(-L * y) / L; };
    QuadratureConfig c = cfg;
    c.abs_tol = cfg.abs_tol / (L * L);
    const double breaks[] = {0.0};
    IntegrationResult r = integrate_1d(f, -b, b, c, breaks);
    r.value *= L * L;
    r.error_estimate *= L * L;
    return to_sample(t, r, "region-1d-reduction");
}

FiberSample local_fiber_sample(double lambda, double r, double theta, double phi, double t) {
    require_t(t, "local_fiber_sample");
    if (!(r > 0.0)) throw DomainError("fiber radius r must be positive");
    const std::complex<double> y = std::polar(r, theta);
    const double q = std::abs(1.0 + y);
    if (q <= 1e-14 * std::max(1.0, r)) {
        if (lambda == 0.0) throw SingularFiberError("Y = -1 with λ = 0 is the pinch point of the singular fibre");
        throw DomainError("Y = -1 forces a zero coordinate; the point is outside the torus");
    }
    const double m1 = 0.5 * (lambda + std::sqrt(lambda * lambda + 4.0 * q * q));
    FiberSample s;
    s.y = y;
    s.x1 = std::polar(std::sqrt(m1), phi);
    s.x2 = (1.0 + y) / s.x1;
    const double lt = std::log(t);
    s.log_image << std::log(std::abs(s.x1)) / lt, std::log(std::abs(s.x2)) / lt, std::log(r) / lt;
    const double rho = std::max(1.0, r);
    const double root = std::sqrt(lambda * lambda + 4.0 * rho * rho);
    s.outer_approx[0] = 0.5 * std::log((lambda + root) / 2.0) / lt;
    s.outer_approx[1] = 0.5 * std::log((-lambda + root) / 2.0) / lt;
    s.outer_deviation[0] = s.log_image[0] - s.outer_approx[0];
    s.outer_deviation[1] = s.log_image[1] - s.outer_approx[1];
    if (lambda != 0.0) {
        s.leg_approx = 0.5 * std::log(std::abs(lambda)) / lt;
        s.leg_deviation = (lambda > 0.0 ? s.log_image[0] : s.log_image[1]) - s.leg_approx;
    } else {
        s.leg_approx = std::numeric_limits<double>::infinity();
        s.leg_deviation = std::numeric_limits<double>::infinity();
    }
    s.equation_residual = std::abs(s.x1 * s.x2 - (1.0 + y));
    s.moment_residual = std::abs(std::norm(s.x1) - std::norm(s.x2) - lambda);
    return s;
}

IntegrationResult pants_section_integral(double x0, double x1, double t, const QuadratureConfig& cfg) {
    require_t(t, "pants_section_integral");
    if (x0 > x1) throw DomainError("pants section needs x0 <= x1");
    if (x0 == x1) return {};
    const double L = -std::log(t);
    // dX/(XY) = log t dx / (-1 - t^x) = L dx / (1 + e^{-Lx})
    auto f = [L](double x) { return L / (1.0 + std::exp(-L * x)); };
    const double breaks[] = {0.0};
    return integrate_1d(f, x0, x1, cfg, breaks);
}

namespace {

// {Σ c_k t^{a_k + <m_k, w>} = 1} in Log_t coordinates w, seen from a center
// inside the convex sublevel set.
struct PositiveCycle {
    int n = 0;
    double L = 0.0;
    std::vector<double> log_c, a;
    std::vector<Eigen::VectorXd> m;
    Eigen::VectorXd center;
    std::vector<std::vector<Eigen::VectorXd>> simplices;  // facets of the chamber, triangulated

    // log G(w) and the normalized term weights
    double log_g(const Eigen::VectorXd& w, std::vector<double>* weights = nullptr) const {
        std::vector<double> e(m.size());
        double top = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < m.size(); ++k) {
            e[k] = log_c[k] - L * (a[k] + m[k].dot(w));
            top = std::max(top, e[k]);
        }
        double sum = 0.0;
        for (auto& x : e) sum += (x = std::exp(x - top));
        if (weights) {
            weights->resize(m.size());
            for (std::size_t k = 0; k < m.size(); ++k) (*weights)[k] = e[k] / sum;
        }
        return top + std::log(sum);
    }

    // s > 0 with G(center + s d) = 1, by doubling then Newton from above.
    double radial_root(const Eigen::VectorXd& d) const {
        std::vector<double> wts;
        auto F = [&](double s, double* slope) {
            const double v = log_g(center + s * d, &wts);
            double md = 0.0;
            for (std::size_t k = 0; k < m.size(); ++k) md += wts[k] * m[k].dot(d);
            *slope = -L * md;
            return v;
        };
        auto fail = [&](const char* why) {
            std::ostringstream os;
            os << "radial solve " << why << " in direction (" << d.transpose() << ")";
            throw StructureError(os.str());
        };
        double lo = 0.0, hi = 1.0, slope = 0.0;
        double v = F(hi, &slope);
        for (int i = 0; v < 0.0; ++i) {
            if (i > 60) fail("found no bracket");
            lo = hi;
            hi *= 2.0;
            v = F(hi, &slope);
        }
        double s = hi;
        for (int it = 0; it < 200; ++it) {
            if (v == 0.0) return s;
            double next = (slope > 0.0) ? s - v / slope : 0.5 * (lo + hi);
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            const double step = std::abs(next - s);
            s = next;
            v = F(s, &slope);
            if (v > 0.0) hi = s; else lo = s;
            if (step <= 4.0 * std::numeric_limits<double>::epsilon() * s) return s;
        }
        fail("did not converge");
        return s;
    }

    // s^{n-1} / (-Σ w_k <m_k, d>) at the root; the residue density in (s, α).
    double density(const Eigen::VectorXd& d) const {
        const double s = radial_root(d);
        std::vector<double> wts;
        log_g(center + s * d, &wts);
        double md = 0.0;
        for (std::size_t k = 0; k < m.size(); ++k) md += wts[k] * m[k].dot(d);
        if (!(md < 0.0)) throw StructureError("cycle is not transverse to the radial direction");
        return std::pow(s, n - 1) / (-md);
    }
};

std::vector<Eigen::VectorXd> ordered_facet(const std::vector<RationalVector>& verts, const Eigen::VectorXd& normal) {
    std::vector<Eigen::VectorXd> pts;
    for (const auto& v : verts) pts.push_back(to_double(v));
    if (pts.size() <= 3) return pts;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(pts.front().size());
    for (const auto& p : pts) c += p;
    c /= static_cast<double>(pts.size());
    const Eigen::Vector3d nz = normal.normalized();
    const Eigen::Vector3d e1 = (pts.front() - c).normalized();
    const Eigen::Vector3d e2 = nz.cross(e1);
    std::sort(pts.begin(), pts.end(), [&](const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
        const Eigen::Vector3d dp = p - c, dq = q - c;
        return std::atan2(dp.dot(e2), dp.dot(e1)) < std::atan2(dq.dot(e2), dq.dot(e1));
    });
    return pts;
}

PositiveCycle make_cycle(const LaurentFamily& f, double t) {
    require_t(t, "positive cycle");
    const int n = f.dim();
    if (n != 2 && n != 3) throw UnsupportedDimensionError("positive cycles are implemented in dimension 2 and 3");
    PositiveCycle c;
    c.n = n;
    c.L = -std::log(t);
    bool has_constant = false;
    for (const auto& term : f.terms()) {
        if (term.exponent.isZero()) {
            if (term.coeff != -1.0 || term.t_exp != 0)
                throw DomainError("positive cycle needs the constant term -1");
            has_constant = true;
            continue;
        }
        if (term.coeff.imag() != 0.0 || !(term.coeff.real() > 0.0))
            throw DomainError("positive cycle needs positive real coefficients");
        c.log_c.push_back(std::log(term.coeff.real()));
        c.a.push_back(term.t_exp.get_d());
        c.m.push_back(term.exponent.cast<double>());
    }
    if (!has_constant) throw DomainError("positive cycle needs the constant term -1");
    const LatticePolytope chamber = compact_chamber(tropicalize(f));
    c.center = Eigen::VectorXd::Zero(n);
    if (c.log_g(c.center) >= 0.0) {
        for (const auto& v : chamber.vertices) c.center += to_double(v);
        c.center /= static_cast<double>(chamber.vertices.size());
        if (c.log_g(c.center) >= 0.0) throw StructureError("no interior point found for the positive cycle");
    }
    for (std::size_t i = 0; i < chamber.facets.size(); ++i) {
        const auto pts = ordered_facet(chamber.facet_vertices(i), chamber.facets[i].slope.cast<double>());
        if (n == 2) {
            c.simplices.push_back(pts);
        } else {
            for (std::size_t j = 1; j + 1 < pts.size(); ++j) c.simplices.push_back({pts[0], pts[j], pts[j + 1]});
        }
    }
    return c;
}

double simplex_jacobian(const PositiveCycle& c, const std::vector<Eigen::VectorXd>& v) {
    Eigen::MatrixXd frame(c.n, c.n);
    frame.col(0) = v[0] - c.center;
    for (int j = 1; j < c.n; ++j) frame.col(j) = v[static_cast<std::size_t>(j)] - v[0];
    return std::abs(frame.determinant());
}

}  // namespace

PeriodSample positive_cycle_period(const LaurentFamily& f, double t, const QuadratureConfig& cfg) {
    const PositiveCycle c = make_cycle(f, t);
    cfg.validate();
    IntegrationResult total;
    const double scale = std::pow(c.L, c.n - 1);
    QuadratureConfig piece = cfg;
    piece.abs_tol = cfg.abs_tol / (scale * static_cast<double>(c.simplices.size()));
    for (const auto& v : c.simplices) {
        const double jac = simplex_jacobian(c, v);
        IntegrationResult r;
        if (c.n == 2) {
            auto g = [&](double alpha) { return c.density(v[0] + alpha * (v[1] - v[0]) - c.center); };
            r = integrate_1d(g, 0.0, 1.0, piece);
        } else {
            auto g = [&](double alpha, double beta) {
                return c.density(v[0] + alpha * (v[1] - v[0]) + beta * (v[2] - v[0]) - c.center);
            };
            r = integrate_2d(g, ConvexPolygon{{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}}, piece);
        }
        total.value += jac * r.value;
        total.error_estimate += jac * r.error_estimate;
        total.evaluations += r.evaluations;
        total.converged = total.converged && r.converged;
        total.subdivisions += r.subdivisions;
    }
    total.value *= scale;
    total.error_estimate *= scale;
    return to_sample(t, total, "radial-from-center");
}

PeriodSample elliptic_period(double t, const QuadratureConfig& cfg) {
    if (!(t > 0.0 && t < positive_cycle_t_max)) throw DomainError("elliptic_period needs 0 < t < 0.1");
    return positive_cycle_period(LaurentFamily::elliptic_mirror(), t, cfg);
}

PeriodSample k3_period(double t, const QuadratureConfig& cfg) {
    if (!(t > 0.0 && t < positive_cycle_t_max)) throw DomainError("k3_period needs 0 < t < 0.1");
    return positive_cycle_period(LaurentFamily::quartic_mirror(), t, cfg);
}

std::vector<Eigen::VectorXd> positive_cycle_points(const LaurentFamily& f, double t, int per_facet) {
    const PositiveCycle c = make_cycle(f, t);
    if (c.n != 2) throw UnsupportedDimensionError("cycle point sampling is implemented in dimension 2");
    if (per_facet < 1) throw DomainError("per_facet must be >= 1");
    std::vector<Eigen::VectorXd> out;
    for (const auto& v : c.simplices) {
        for (int j = 0; j < per_facet; ++j) {
            const double alpha = (j + 0.5) / per_facet;
            const Eigen::VectorXd d = v[0] + alpha * (v[1] - v[0]) - c.center;
            out.push_back(c.center + c.radial_root(d) * d);
        }
    }
    return out;
}

}  // namespace gammatrop
