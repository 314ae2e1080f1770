#pragma once

#include "gammatrop/rational.hpp"

#include <complex>
#include <map>
#include <string>

namespace gammatrop {

/// Product γ^a · Π ζ(k)^{e_k} · (2πi)^m of the transcendental constants that
/// appear in Γ̂-class expansions. The empty monomial is 1.
struct Transcendental {
    int euler_gamma = 0;
    std::map<int, int> zeta;  // k -> exponent, k >= 2, exponents > 0
    int two_pi_i = 0;

    auto operator<=>(const Transcendental&) const = default;
    bool operator==(const Transcendental&) const = default;

    Transcendental operator*(const Transcendental& other) const;
    std::complex<double> evaluate() const;
    bool is_one() const { return euler_gamma == 0 && zeta.empty() && two_pi_i == 0; }
    std::string to_string() const;
};

/// Finite Q-linear combination of Transcendental monomials. Arithmetic is
/// exact; evaluate() is the float pass.
class Symbolic {
public:
    Symbolic() = default;
    Symbolic(const Rational& q);  // NOLINT(google-explicit-constructor)
    Symbolic(long n) : Symbolic(Rational(n)) {}  // NOLINT(google-explicit-constructor)
    Symbolic(int n) : Symbolic(Rational(n)) {}  // NOLINT(google-explicit-constructor)

    static Symbolic zeta(int k);
    static Symbolic euler_gamma();
    static Symbolic two_pi_i();
    static Symbolic term(const Rational& coefficient, Transcendental monomial);

    const std::map<Transcendental, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Coefficient of the given monomial (zero if absent).
    Rational coefficient(const Transcendental& monomial) const;
    /// Rational part, i.e. the coefficient of the empty monomial.
    Rational rational_part() const { return coefficient(Transcendental{}); }

    Symbolic& operator+=(const Symbolic& other);
    Symbolic& operator-=(const Symbolic& other);
    Symbolic& operator*=(const Symbolic& other);
    Symbolic operator-() const;

    friend Symbolic operator+(Symbolic a, const Symbolic& b) { return a += b; }
    friend Symbolic operator-(Symbolic a, const Symbolic& b) { return a -= b; }
    friend Symbolic operator*(Symbolic a, const Symbolic& b) { return a *= b; }
    bool operator==(const Symbolic& other) const { return terms_ == other.terms_; }

    std::complex<double> evaluate() const;
    /// Human-readable form, e.g. "200*zeta(3) - 50*zeta(2)".
    std::string to_string() const;

private:
    void add_term(const Transcendental& m, const Rational& c);
    std::map<Transcendental, Rational> terms_;
};

}  // namespace gammatrop
