#pragma once

#include "gammatrop/quadrature.hpp"
#include "gammatrop/rational.hpp"
#include "gammatrop/tropical.hpp"

#include <Eigen/Core>

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace gammatrop {

struct PeriodSample {
    double t = 0.0;
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = true;
    std::string method;
};

enum class FamilyKind { projective_fano, elliptic_cubic, local_model_2d, quartic_k3, pair_of_pants };

struct MirrorFamily {
    FamilyKind kind = FamilyKind::projective_fano;
    int n = 1;                            // projective_fano
    double a1 = 1.0, a2 = 1.0, b = 1.0;  // local_model_2d
    double x0 = 1.0, x1 = 2.0;           // pair_of_pants section

    void validate() const;
    /// "fano", "elliptic", "local2d", "k3" or "pants".
    std::string name() const;
    static FamilyKind parse_kind(const std::string& name);
};

/// Period of the family at t; dispatches to the functions below.
PeriodSample sample_period(const MirrorFamily& family, double t, const QuadratureConfig& cfg);

/// ∫ over (R_{>0})^n of exp(-tW) dx/x with W = x_1 + ... + x_n + 1/(x_1...x_n).
PeriodSample exp_period_orthant(int n, double t, const QuadratureConfig& cfg);

/// Γ̂-period polynomial of P^n with ω = (n+1)H evaluated at L = -log t.
double fano_gamma_prediction(int n, double t);

/// ∫ (log(1+e^{-s}) + min(0,s)) ds over R.
IntegrationResult error_integral_dim1_reduced(const QuadratureConfig& cfg);
/// L² ∫ (-log_t(1+t^y) + min(0,y)) dy, evaluated as written on |y| <= 60/L.
IntegrationResult error_integral_dim1_raw(double t, const QuadratureConfig& cfg);

/// ½ ∫ (log²(1+e^{-s}) - min(0,s)²) ds over R.
IntegrationResult error_integral_dim2_a_reduced(const QuadratureConfig& cfg);
/// ½ L³ ∫ ((log_t(1+t^y))² - min(0,y)²) dy on |y| <= 60/L.
IntegrationResult error_integral_dim2_a_raw(double t, const QuadratureConfig& cfg);

struct Box2 {
    double lo1, hi1, lo2, hi2;
};

struct Dim2Result {
    IntegrationResult integral;
    Rational ell;  // affine length of U ∩ Sing(min(0, y1, y2))
    int chi = 0;   // 1 iff 0 ∈ U
};

enum class Transversality { require, skip };

/// L³ ∫_U (-log_t(1 + t^{y1} + t^{y2}) + min(0, y1, y2)) dy, computed in s = L y.
/// DomainError unless ∂U meets the tropical curve transversally (no vertex on
/// ∂U, no ray through a corner of U or along a side), unless `check` is skip.
Dim2Result error_integral_dim2_b(const Box2& u, double t, const QuadratureConfig& cfg,
                                 Transversality check = Transversality::require);

/// L² ∫_{-b}^{b} (a1 + a2 + log_t(1 + t^y)) dy.
PeriodSample local_model_region_period(double a1, double a2, double b, double t, const QuadratureConfig& cfg);
/// 2(a1 + a2) b - b²/2.
double local_model_area(double a1, double a2, double b);

struct FiberSample {
    std::complex<double> x1, x2, y;  // point with X1 X2 = 1 + Y
    Eigen::Vector3d log_image;       // (log_t|X1|, log_t|X2|, log_t|Y|)
    // ½ log_t((±λ + √(λ² + 4ρ²))/2) with ρ = max(1, r), valid for |y| > ε
    std::array<double, 2> outer_approx;
    std::array<double, 2> outer_deviation;
    // ½ log_t|λ|: x1 for x1 < x2 - ε, x2 for x2 < x1 - ε
    double leg_approx = 0.0;
    double leg_deviation = 0.0;  // against x1 if λ > 0, x2 if λ < 0
    double equation_residual = 0.0;  // |X1 X2 - (1 + Y)|
    double moment_residual = 0.0;    // ||X1|² - |X2|² - λ|
};

/// Point of T_{λ,r} = {|X1|² - |X2|² = λ, |Y| = r} on X1 X2 = 1 + Y with
/// Y = r e^{iθ} and arg X1 = φ. SingularFiberError at the pinch point
/// (λ = 0, Y = -1); DomainError if another point leaves the torus.
FiberSample local_fiber_sample(double lambda, double r, double theta, double phi, double t);

/// ∫ dX/(XY) along X = t^x, Y = -1 - t^x for x in [x0, x1], i.e. ∫ L/(1 + t^x) dx.
IntegrationResult pants_section_integral(double x0, double x1, double t, const QuadratureConfig& cfg);

constexpr double positive_cycle_t_max = 0.1;

/// Period of the residue form over the positive real cycle, radially
/// parametrized from the center of the compact chamber.
PeriodSample elliptic_period(double t, const QuadratureConfig& cfg);
PeriodSample k3_period(double t, const QuadratureConfig& cfg);

/// Same for any family Σ c_k t^{a_k} X^{m_k} - 1 with positive c_k whose
/// tropicalization has a compact chamber, in dimension 2 or 3.
PeriodSample positive_cycle_period(const LaurentFamily& f, double t, const QuadratureConfig& cfg);

/// Log_t images of points of the positive real cycle, `per_facet` radial
/// samples along each facet of the chamber (dimension 2 only).
std::vector<Eigen::VectorXd> positive_cycle_points(const LaurentFamily& f, double t, int per_facet);

}  // namespace gammatrop
