#pragma once

#include <Eigen/Core>

#include <functional>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace gammatrop {

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
    int rule_order = 15;        // Kronrod points per panel: 15, 21, 31, 41, 51 or 61
    double tail_cutoff = 1e-26; // |f| below which an infinite tail is dropped
    int workers = 1;            // threads for integrand evaluation; never changes results

    /// Throws DomainError on non-positive tolerances or an unknown rule order.
    void validate() const;
};

struct IntegrationResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = true;
    int subdivisions = 0;
};

/// Evaluates f at every x, writing into fx (same length). Must be safe to call
/// concurrently on disjoint spans.
using BatchIntegrand = std::function<void(std::span<const double> x, std::span<double> fx)>;

/// Globally adaptive Gauss–Kronrod integration on (a, b); a and b may be
/// infinite. Infinite ends are cut where |f| < tail_cutoff; the estimated
/// tail mass goes into error_estimate. Interior breakpoints seed the panels.
IntegrationResult integrate_1d(const std::function<double(double)>& f, double a, double b, const QuadratureConfig& cfg,
                               std::span<const double> breakpoints = {});
IntegrationResult integrate_1d_batch(const BatchIntegrand& f, double a, double b, const QuadratureConfig& cfg,
                                     std::span<const double> breakpoints = {});

struct Rectangle {
    double x0, x1, y0, y1;
    std::vector<double> x_breaks;                            // kinks of the inner integral in x
    std::function<std::vector<double>(double x)> y_breaks;  // kinks of f(x, .) for fixed x
};

/// Vertices in any cyclic order.
struct ConvexPolygon {
    std::vector<Eigen::Vector2d> vertices;
};

/// The unit sphere in (θ, φ) ∈ [0, π] × [0, 2π); f receives (θ, φ) and the
/// sin θ area factor is applied by the integrator.
struct UnitSphere {};

using Domain2D = std::variant<Rectangle, ConvexPolygon, UnitSphere>;

/// Iterated adaptive integration: outer 1D rule over x, inner over y at each
/// outer node. Inner integrals at the nodes of one outer panel run on
/// cfg.workers threads.
IntegrationResult integrate_2d(const std::function<double(double, double)>& f, const Domain2D& domain,
                               const QuadratureConfig& cfg);

struct FitSample {
    double t;
    double value;
};

/// Σ c_k L^k, L = -log t.
struct AsymptoticFit {
    std::vector<int> powers;    // increasing
    std::vector<double> coeffs;
    std::vector<bool> pinned;
    double residual_rms = 0.0;
    double condition = 1.0;
    std::vector<FitSample> samples;

    double coefficient(int k) const;
    double operator()(double L) const;
};

/// Least squares over the free powers with the `fixed` coefficients
/// subtracted first. Needs distinct t in (0,1), at least |powers|+1 samples
/// and max L / min L >= 1.5; ConditioningError otherwise or when the scaled
/// design matrix has condition number above 1e12.
AsymptoticFit fit_asymptotic(const std::vector<FitSample>& samples, const std::vector<int>& powers,
                             const std::map<int, double>& fixed = {});

/// count points from t_first to t_last, equally spaced in log t.
std::vector<double> log_spaced(double t_first, double t_last, int count);

}  // namespace gammatrop
