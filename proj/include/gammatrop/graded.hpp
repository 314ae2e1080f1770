#pragma once

#include "gammatrop/errors.hpp"
#include "gammatrop/rational.hpp"
#include "gammatrop/symbolic.hpp"

#include <complex>
#include <string>
#include <vector>

namespace gammatrop {

/// Conversion of exact rationals into a coefficient type, plus the zero test
/// used by exp/log preconditions.
template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static Rational from_rational(const Rational& q) { return q; }
    static bool is_zero(const Rational& x) { return x == 0; }
};

template <>
struct ScalarTraits<Symbolic> {
    static Symbolic from_rational(const Rational& q) { return Symbolic(q); }
    static bool is_zero(const Symbolic& x) { return x.is_zero(); }
};

template <>
struct ScalarTraits<double> {
    static double from_rational(const Rational& q) { return q.get_d(); }
    static bool is_zero(double x) { return x == 0.0; }
};

template <>
struct ScalarTraits<std::complex<double>> {
    static std::complex<double> from_rational(const Rational& q) { return q.get_d(); }
    static bool is_zero(const std::complex<double>& x) { return x == 0.0; }
};

/// Element of the truncated ring Scalar[H]/(H^{n+1}): the cohomology ring of
/// a projective space or hypersurface, generated by the hyperplane class H.
template <class Scalar>
class GradedElement {
public:
    using Traits = ScalarTraits<Scalar>;

    explicit GradedElement(int top_degree = 0)
        : coeffs_(static_cast<std::size_t>(checked(top_degree)) + 1, Traits::from_rational(0)) {}

    explicit GradedElement(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw ShapeError("graded element needs at least the degree-0 coefficient");
    }

    static GradedElement one(int top_degree) {
        GradedElement r(top_degree);
        r.coeffs_[0] = Traits::from_rational(1);
        return r;
    }

    /// c · H^k truncated at top_degree (zero if k > top_degree).
    static GradedElement monomial(int top_degree, int k, const Scalar& c) {
        GradedElement r(top_degree);
        if (k <= top_degree) r.coeffs_[static_cast<std::size_t>(k)] = c;
        return r;
    }

    int top_degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Scalar>& coefficients() const { return coeffs_; }
    const Scalar& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
    Scalar& operator[](int k) { return coeffs_.at(static_cast<std::size_t>(k)); }

    /// Homogeneous degree-k part as an element of the same ring.
    GradedElement part(int k) const { return monomial(top_degree(), k, (*this)[k]); }

    GradedElement truncated(int top) const {
        GradedElement r(top);
        for (int k = 0; k <= std::min(top, top_degree()); ++k) r[k] = (*this)[k];
        return r;
    }

    GradedElement& operator+=(const GradedElement& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        return *this;
    }
    GradedElement& operator-=(const GradedElement& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        return *this;
    }
    GradedElement& operator*=(const GradedElement& o) {
        *this = *this * o;
        return *this;
    }
    GradedElement& operator*=(const Scalar& c) {
        for (auto& x : coeffs_) x *= c;
        return *this;
    }

    friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
    friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
    friend GradedElement operator*(GradedElement a, const Scalar& c) { return a *= c; }
    friend GradedElement operator*(const Scalar& c, GradedElement a) { return a *= c; }

    friend GradedElement operator*(const GradedElement& a, const GradedElement& b) {
        a.require_same_shape(b);
        const int n = a.top_degree();
        GradedElement r(n);
        for (int i = 0; i <= n; ++i) {
            if (Traits::is_zero(a[i])) continue;
            for (int j = 0; i + j <= n; ++j) r[i + j] += a[i] * b[j];
        }
        return r;
    }

    bool operator==(const GradedElement& o) const { return coeffs_ == o.coeffs_; }

    template <class F>
    auto map(F&& f) const {
        using Out = decltype(f(coeffs_[0]));
        std::vector<Out> out;
        out.reserve(coeffs_.size());
        for (const auto& c : coeffs_) out.push_back(f(c));
        return GradedElement<Out>(std::move(out));
    }

    void require_same_shape(const GradedElement& o) const {
        if (o.top_degree() != top_degree())
            throw ShapeError("truncation mismatch: degree " + std::to_string(top_degree()) + " vs " +
                             std::to_string(o.top_degree()));
    }

private:
    static int checked(int n) {
        if (n < 0) throw ShapeError("truncation degree must be non-negative");
        return n;
    }
    std::vector<Scalar> coeffs_;
};

/// exp(x) for x with zero constant term; the series terminates at top degree.
template <class Scalar>
GradedElement<Scalar> exp(const GradedElement<Scalar>& x) {
    using Traits = ScalarTraits<Scalar>;
    if (!Traits::is_zero(x[0])) throw DomainError("exp needs a nilpotent argument (zero constant term)");
    const int n = x.top_degree();
    GradedElement<Scalar> result = GradedElement<Scalar>::one(n);
    GradedElement<Scalar> power = GradedElement<Scalar>::one(n);
    for (int k = 1; k <= n; ++k) {
        power = power * x * Traits::from_rational(Rational(1, k));
        result += power;
    }
    return result;
}

/// log(x) for x with constant term exactly 1.
template <class Scalar>
GradedElement<Scalar> log(const GradedElement<Scalar>& x) {
    using Traits = ScalarTraits<Scalar>;
    const int n = x.top_degree();
    GradedElement<Scalar> nil = x - GradedElement<Scalar>::one(n);
    if (!Traits::is_zero(nil[0])) throw DomainError("log needs constant term 1");
    GradedElement<Scalar> result(n);
    GradedElement<Scalar> power = GradedElement<Scalar>::one(n);
    for (int k = 1; k <= n; ++k) {
        power = power * nil;
        const Rational sign_over_k(k % 2 == 1 ? 1 : -1, k);
        result += power * Traits::from_rational(sign_over_k);
    }
    return result;
}

/// Multiplicative inverse of an element whose constant term is an invertible rational.
inline GradedElement<Rational> inverse(const GradedElement<Rational>& x) {
    if (x[0] == 0) throw DomainError("inverse needs a nonzero constant term");
    const int n = x.top_degree();
    GradedElement<Rational> r(n);
    r[0] = 1 / x[0];
    for (int k = 1; k <= n; ++k) {
        Rational s = 0;
        for (int j = 1; j <= k; ++j) s += x[j] * r[k - j];
        r[k] = -s / x[0];
    }
    return r;
}

inline GradedElement<Symbolic> to_symbolic(const GradedElement<Rational>& x) {
    return x.map([](const Rational& q) { return Symbolic(q); });
}

inline GradedElement<std::complex<double>> evaluate(const GradedElement<Symbolic>& x) {
    return x.map([](const Symbolic& s) { return s.evaluate(); });
}

}  // namespace gammatrop
