#pragma once

#include "gammatrop/graded.hpp"
#include "gammatrop/rational.hpp"
#include "gammatrop/symbolic.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace gammatrop {

/// Projective space P^n, or a degree-d hypersurface Y ⊂ P^n.
struct ManifoldModel {
    int ambient = 1;
    std::optional<int> degree;

    static ManifoldModel projective(int n);
    static ManifoldModel hypersurface(int n, int d);

    /// Complex dimension: n for P^n, n - 1 for a hypersurface.
    int dim() const { return degree ? ambient - 1 : ambient; }
    bool is_calabi_yau() const { return degree && *degree == ambient + 1; }
    /// Throws DomainError for n < 1, d < 1, or a hypersurface of P^1.
    void validate() const;
    std::string name() const;
};

double euler_gamma_constant();

/// ζ(k) for k >= 2; DomainError otherwise.
double zeta_value(int k);

/// Taylor coefficients a_1..a_order of log Γ(1+x): a_1 = -γ, a_k = (-1)^k ζ(k)/k.
std::vector<double> log_gamma_series(int order);
std::vector<Symbolic> log_gamma_series_symbolic(int order);

/// Total Chern class of the tangent bundle, truncated at dim(m).
GradedElement<Rational> total_chern(const ManifoldModel& m);

/// Power sums p_0..p_n of the Chern roots (coefficients of H^k), from the
/// Chern classes in c via Newton's identities; p_0 = rank.
std::vector<Rational> power_sums(const GradedElement<Rational>& c, int rank);

/// [ch_0, ch_1, ...], ch_k = p_k / k! as a homogeneous element of degree k.
std::vector<GradedElement<Rational>> chern_character(const GradedElement<Rational>& c, int rank);

/// Γ̂ = Π Γ(1+δ_i) = exp(Σ_k a_k p_k), exact in ζ-values and γ.
GradedElement<Symbolic> gamma_class(const ManifoldModel& m);

/// ∫_m x: the top coefficient, times d on a degree-d hypersurface.
template <class Scalar>
Scalar integrate(const ManifoldModel& m, const GradedElement<Scalar>& x) {
    m.validate();
    if (x.top_degree() != m.dim()) throw ShapeError("class is not truncated at the model dimension");
    Scalar top = x[m.dim()];
    if (m.degree) top *= ScalarTraits<Scalar>::from_rational(Rational(*m.degree));
    return top;
}

/// Σ_k c_k L^k with L = -log t.
class PeriodPolynomial {
public:
    PeriodPolynomial() = default;
    explicit PeriodPolynomial(std::vector<Symbolic> coeffs) : coeffs_(std::move(coeffs)) {}

    const std::vector<Symbolic>& exact() const { return coeffs_; }
    std::vector<std::complex<double>> numeric() const;
    int degree() const;
    std::complex<double> operator()(double L) const;
    /// e.g. "5/6*L^3 - 50*zeta(2)*L + 200*zeta(3)"
    std::string symbolic() const;

private:
    std::vector<Symbolic> coeffs_;
};

/// ∫_m t^{-ω} Γ̂_m (2πi)^{deg/2} ch(V) as a polynomial in L, with ω = omega_multiple·H.
/// chV lists the homogeneous pieces of ch(V); it defaults to the structure sheaf.
PeriodPolynomial gamma_period_polynomial(const ManifoldModel& m, const Rational& omega_multiple,
                                         const std::optional<std::vector<GradedElement<Symbolic>>>& chV = std::nullopt);

}  // namespace gammatrop
