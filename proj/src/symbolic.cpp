#include "gammatrop/symbolic.hpp"

#include "gammatrop/cohomology.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <sstream>

namespace gammatrop {

Transcendental Transcendental::operator*(const Transcendental& other) const {
    Transcendental r = *this;
    r.euler_gamma += other.euler_gamma;
    r.two_pi_i += other.two_pi_i;
    for (const auto& [k, e] : other.zeta) r.zeta[k] += e;
    return r;
}

std::complex<double> Transcendental::evaluate() const {
    std::complex<double> v = std::pow(euler_gamma_constant(), euler_gamma);
    for (const auto& [k, e] : zeta) v *= std::pow(zeta_value(k), e);
    if (two_pi_i != 0) v *= std::pow(std::complex<double>(0.0, 2.0 * boost::math::constants::pi<double>()), two_pi_i);
    return v;
}

std::string Transcendental::to_string() const {
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
        if (!first) os << '*';
        first = false;
    };
    if (euler_gamma != 0) {
        sep();
        os << "gamma";
        if (euler_gamma != 1) os << '^' << euler_gamma;
    }
    for (const auto& [k, e] : zeta) {
        sep();
        os << "zeta(" << k << ')';
        if (e != 1) os << '^' << e;
    }
    if (two_pi_i != 0) {
        sep();
        os << "(2*pi*i)";
        if (two_pi_i != 1) os << '^' << two_pi_i;
    }
    return first ? "1" : os.str();
}

Symbolic::Symbolic(const Rational& q) {
    if (q != 0) terms_.emplace(Transcendental{}, q);
}

Symbolic Symbolic::zeta(int k) {
    Transcendental m;
    m.zeta[k] = 1;
    return term(1, m);
}

Symbolic Symbolic::euler_gamma() {
    Transcendental m;
    m.euler_gamma = 1;
    return term(1, m);
}

Symbolic Symbolic::two_pi_i() {
    Transcendental m;
    m.two_pi_i = 1;
    return term(1, m);
}

Symbolic Symbolic::term(const Rational& coefficient, Transcendental monomial) {
    Symbolic s;
    s.add_term(monomial, coefficient);
    return s;
}

Rational Symbolic::coefficient(const Transcendental& monomial) const {
    auto it = terms_.find(monomial);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Symbolic::add_term(const Transcendental& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Symbolic& Symbolic::operator+=(const Symbolic& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

Symbolic& Symbolic::operator-=(const Symbolic& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

Symbolic& Symbolic::operator*=(const Symbolic& other) {
    Symbolic product;
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : other.terms_) product.add_term(m1 * m2, c1 * c2);
    *this = std::move(product);
    return *this;
}

Symbolic Symbolic::operator-() const {
    Symbolic r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

std::complex<double> Symbolic::evaluate() const {
    std::complex<double> v = 0.0;
    for (const auto& [m, c] : terms_) v += c.get_d() * m.evaluate();
    return v;
}

std::string Symbolic::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational mag = abs(c);
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (m.is_one()) {
            os << mag.get_str();
        } else {
            if (mag != 1) os << mag.get_str() << '*';
            os << m.to_string();
        }
    }
    return os.str();
}

}  // namespace gammatrop
