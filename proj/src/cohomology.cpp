#include "gammatrop/cohomology.hpp"

#include "gammatrop/errors.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include <sstream>

namespace gammatrop {

ManifoldModel ManifoldModel::projective(int n) {
    ManifoldModel m{n, std::nullopt};
    m.validate();
    return m;
}

ManifoldModel ManifoldModel::hypersurface(int n, int d) {
    ManifoldModel m{n, d};
    m.validate();
    return m;
}

void ManifoldModel::validate() const {
    if (ambient < 1) throw DomainError("ambient dimension must be >= 1");
    if (degree) {
        if (*degree < 1) throw DomainError("hypersurface degree must be >= 1");
        if (ambient < 2) throw DomainError("hypersurfaces need ambient dimension >= 2");
    }
}

std::string ManifoldModel::name() const {
    std::string s = "P^" + std::to_string(ambient);
    if (degree) s = "degree-" + std::to_string(*degree) + " hypersurface in " + s;
    return s;
}

double euler_gamma_constant() { return boost::math::constants::euler<double>(); }

double zeta_value(int k) {
    if (k < 2) throw DomainError("zeta(" + std::to_string(k) + ") is not defined here (needs k >= 2)");
    return boost::math::zeta(static_cast<double>(k));
}

std::vector<double> log_gamma_series(int order) {
    std::vector<double> out;
    for (const auto& s : log_gamma_series_symbolic(order)) out.push_back(s.evaluate().real());
    return out;
}

std::vector<Symbolic> log_gamma_series_symbolic(int order) {
    if (order < 1) throw DomainError("log_gamma_series needs order >= 1");
    std::vector<Symbolic> a;
    a.push_back(-Symbolic::euler_gamma());
    for (int k = 2; k <= order; ++k) a.push_back(Symbolic::zeta(k) * Symbolic(Rational(k % 2 == 0 ? 1 : -1, k)));
    return a;
}

GradedElement<Rational> total_chern(const ManifoldModel& m) {
    m.validate();
    const int n = m.ambient;
    const int top = m.dim();
    // (1+H)^{n+1}
    GradedElement<Rational> c = GradedElement<Rational>::one(top);
    const auto one_plus_h = GradedElement<Rational>::one(top) + GradedElement<Rational>::monomial(top, 1, 1);
    for (int i = 0; i <= n; ++i) c = c * one_plus_h;
    if (m.degree) {
        // adjunction: c(TY) = c(TP^n)|_Y / (1 + dH)
        const auto normal = GradedElement<Rational>::one(top) + GradedElement<Rational>::monomial(top, 1, *m.degree);
        c = c * inverse(normal);
    }
    return c;
}

std::vector<Rational> power_sums(const GradedElement<Rational>& c, int rank) {
    if (c[0] != 1) throw DomainError("total Chern class must have constant term 1");
    const int n = c.top_degree();
    std::vector<Rational> p(static_cast<std::size_t>(n) + 1);
    p[0] = rank;
    auto e = [&](int i) -> Rational { return (i <= n && i <= rank) ? c[i] : Rational(0); };
    // p_k = Σ_{i=1}^{k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
    for (int k = 1; k <= n; ++k) {
        Rational s = 0;
        for (int i = 1; i < k; ++i) {
            const Rational term = e(i) * p[static_cast<std::size_t>(k - i)];
            if (i % 2 == 1) s += term; else s -= term;
        }
        const Rational last = Rational(k) * e(k);
        if (k % 2 == 1) s += last; else s -= last;
        p[static_cast<std::size_t>(k)] = s;
    }
    return p;
}

std::vector<GradedElement<Rational>> chern_character(const GradedElement<Rational>& c, int rank) {
    const auto p = power_sums(c, rank);
    const int n = c.top_degree();
    std::vector<GradedElement<Rational>> ch;
    Integer factorial = 1;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) factorial *= k;
        ch.push_back(GradedElement<Rational>::monomial(n, k, p[static_cast<std::size_t>(k)] / Rational(factorial)));
    }
    return ch;
}

GradedElement<Symbolic> gamma_class(const ManifoldModel& m) {
    const auto c = total_chern(m);
    const int n = m.dim();
    if (n == 0) return GradedElement<Symbolic>::one(0);
    const auto p = power_sums(c, n);
    const auto a = log_gamma_series_symbolic(n);
    GradedElement<Symbolic> exponent(n);
    for (int k = 1; k <= n; ++k)
        exponent[k] = a[static_cast<std::size_t>(k) - 1] * Symbolic(p[static_cast<std::size_t>(k)]);
    return exp(exponent);
}

std::vector<std::complex<double>> PeriodPolynomial::numeric() const {
    std::vector<std::complex<double>> out;
    for (const auto& c : coeffs_) out.push_back(c.evaluate());
    return out;
}

int PeriodPolynomial::degree() const {
    for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k)
        if (!coeffs_[static_cast<std::size_t>(k)].is_zero()) return k;
    return -1;
}

std::complex<double> PeriodPolynomial::operator()(double L) const {
    std::complex<double> v = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * L + it->evaluate();
    return v;
}

std::string PeriodPolynomial::symbolic() const {
    std::ostringstream os;
    bool first = true;
    for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k) {
        const Symbolic& c = coeffs_[static_cast<std::size_t>(k)];
        if (c.is_zero()) continue;
        std::string body = c.to_string();
        const bool single = c.terms().size() == 1;
        bool negative = false;
        if (single && body.front() == '-') {
            negative = true;
            body.erase(body.begin());
        }
        std::string power = k == 0 ? "" : (k == 1 ? "L" : "L^" + std::to_string(k));
        std::string term;
        if (k == 0) {
            term = single ? body : "(" + body + ")";
        } else if (single && body == "1") {
            term = power;
        } else {
            term = (single ? body : "(" + body + ")") + "*" + power;
        }
        if (first) {
            os << (negative ? "-" : "") << term;
        } else {
            os << (negative ? " - " : " + ") << term;
        }
        first = false;
    }
    return first ? "0" : os.str();
}

PeriodPolynomial gamma_period_polynomial(const ManifoldModel& m, const Rational& omega_multiple,
                                         const std::optional<std::vector<GradedElement<Symbolic>>>& chV) {
    m.validate();
    const int n = m.dim();
    GradedElement<Symbolic> ch = GradedElement<Symbolic>::one(n);
    if (chV) {
        if (chV->empty()) throw ShapeError("chern character input is empty");
        ch = GradedElement<Symbolic>(n);
        for (const auto& piece : *chV) {
            if (piece.top_degree() != n)
                throw ShapeError("chern character piece truncated at degree " + std::to_string(piece.top_degree()) +
                                 ", model dimension is " + std::to_string(n));
            ch += piece;
        }
        // (2πi)^{deg/2}: the H^k coefficient picks up (2πi)^k
        Symbolic twist = Symbolic(1);
        for (int k = 1; k <= n; ++k) {
            twist *= Symbolic::two_pi_i();
            ch[k] *= twist;
        }
    }
    const GradedElement<Symbolic> body = gamma_class(m) * ch;
    // e^{Lω} = Σ_j (qL)^j H^j / j!, so the L^j coefficient is q^j/j! ∫ H^j · body.
    std::vector<Symbolic> coeffs(static_cast<std::size_t>(n) + 1);
    Rational scale = 1;
    for (int j = 0; j <= n; ++j) {
        if (j > 0) scale *= omega_multiple / Rational(j);
        GradedElement<Symbolic> shifted = GradedElement<Symbolic>::monomial(n, n, body[n - j]) * Symbolic(scale);
        coeffs[static_cast<std::size_t>(j)] = integrate(m, shifted);
    }
    return PeriodPolynomial(std::move(coeffs));
}

}  // namespace gammatrop
