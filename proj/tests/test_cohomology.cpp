#include "gammatrop/cohomology.hpp"

#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace gammatrop;

namespace {

// mpq_class(a, b) does not reduce
Rational frac(long a, long b) {
    Rational q(a, b);
    q.canonicalize();
    return q;
}

// Euler–Maclaurin with N = 20 terms and Bernoulli corrections up to B_12.
double zeta_em(int s) {
    const int N = 20;
    double sum = 0.0;
    for (int k = 1; k < N; ++k) sum += std::pow(k, -s);
    sum += std::pow(N, 1.0 - s) / (s - 1) + 0.5 * std::pow(N, -s);
    const double B[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730};
    double fact = 1.0, rising = s;  // (2j)! and s(s+1)...(s+2j-2)
    for (int j = 1; j <= 6; ++j) {
        fact *= (2 * j - 1) * (2 * j);
        sum += B[j - 1] / fact * rising * std::pow(N, -s - 2 * j + 1);
        rising *= (s + 2 * j - 1) * (s + 2 * j);
    }
    return sum;
}

// c(T) of P^n or of a degree-d hypersurface: (1+H)^{n+1} / (1+dH), truncated.
std::vector<Rational> chern_oracle(int n, std::optional<int> d) {
    const int dim = d ? n - 1 : n;
    std::vector<Rational> c(dim + 1, 0);
    for (int k = 0; k <= dim; ++k) {
        Rational binom = 1;
        for (int i = 0; i < k; ++i) binom = binom * (n + 1 - i) / (i + 1);
        c[k] = binom;
    }
    if (d) {
        // multiply by Σ (-d)^k H^k
        std::vector<Rational> out(dim + 1, 0);
        for (int i = 0; i <= dim; ++i) {
            Rational p = 1;
            for (int j = 0; i + j <= dim; ++j) {
                out[i + j] += c[i] * p;
                p *= -*d;
            }
        }
        c = out;
    }
    return c;
}

// Power-series coefficients of exp(Σ_k q_k x^k) through x^m, numerically.
std::vector<double> series_exp(const std::vector<double>& q, int m) {
    std::vector<double> r(m + 1, 0.0);
    r[0] = 1.0;
    // r' = q' r gives k r_k = Σ_j j q_j r_{k-j}
    for (int k = 1; k <= m; ++k)
        for (int j = 1; j <= k; ++j) r[k] += j * (j < static_cast<int>(q.size()) ? q[j] : 0.0) * r[k - j] / k;
    return r;
}

std::vector<double> log_gamma_oracle(int order) {
    std::vector<double> a(order + 1, 0.0);
    a[1] = -0.57721566490153286061;
    for (int k = 2; k <= order; ++k) a[k] = (k % 2 ? -1.0 : 1.0) * zeta_em(k) / k;
    return a;
}

}  // namespace

TEST_CASE("zeta values match Euler-Maclaurin") {
    for (int k = 2; k <= 8; ++k) CHECK(zeta_value(k) == doctest::Approx(zeta_em(k)).epsilon(1e-14));
    CHECK(zeta_value(2) == doctest::Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(1e-15));
    CHECK_THROWS_AS(zeta_value(1), DomainError);
}

TEST_CASE("log gamma series sums to lgamma(1+x)") {
    const auto a = log_gamma_series(40);
    REQUIRE(a.size() == 40);
    for (double x : {0.05, 0.2, -0.3}) {
        double s = 0.0, p = 1.0;
        for (double c : a) {
            p *= x;
            s += c * p;
        }
        CHECK(s == doctest::Approx(std::lgamma(1 + x)).epsilon(1e-13));
    }
    const auto sym = log_gamma_series_symbolic(4);
    CHECK(sym[0] == -Symbolic::euler_gamma());
    CHECK(sym[1] == Symbolic(Rational(1, 2)) * Symbolic::zeta(2));
    CHECK(sym[2] == Symbolic(Rational(-1, 3)) * Symbolic::zeta(3));
}

TEST_CASE("total chern class against (1+H)^{n+1}/(1+dH)") {
    for (int n = 1; n <= 6; ++n) {
        const auto c = total_chern(ManifoldModel::projective(n));
        CHECK(c.coefficients() == chern_oracle(n, std::nullopt));
        for (int d = 1; d <= n + 3 && n >= 2; ++d) {
            const auto cy = total_chern(ManifoldModel::hypersurface(n, d));
            CHECK(cy.coefficients() == chern_oracle(n, d));
        }
    }
}

TEST_CASE("quintic characteristic numbers") {
    const auto m = ManifoldModel::hypersurface(4, 5);
    REQUIRE(m.is_calabi_yau());
    const auto c = total_chern(m);
    CHECK(c[1] == 0);
    CHECK(integrate(m, GradedElement<Rational>::monomial(3, 3, c[2])) == 50);
    CHECK(integrate(m, GradedElement<Rational>::monomial(3, 3, c[3])) == -200);
    const auto ch = chern_character(c, 3);
    REQUIRE(ch.size() == 4);
    CHECK(ch[0][0] == 3);
    CHECK(ch[1][1] == 0);
    CHECK(ch[2][2] == -10);
    // p_3 = 5 - 5^3 from the Euler and normal sequences
    CHECK(ch[3][3] == -20);
}

TEST_CASE("power sums from symbolic roots (Newton identities)") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> root(-4, 4);
    for (int trial = 0; trial < 50; ++trial) {
        const int r = 1 + trial % 5, top = 5;
        std::vector<int> roots(r);
        for (auto& x : roots) x = root(rng);
        // c = Π (1 + x_i H)
        GradedElement<Rational> c = GradedElement<Rational>::one(top);
        for (int x : roots) {
            GradedElement<Rational> f = GradedElement<Rational>::one(top);
            f[1] = x;
            c = c * f;
        }
        const auto p = power_sums(c, r);
        REQUIRE(p.size() == static_cast<std::size_t>(top + 1));
        CHECK(p[0] == r);
        for (int k = 1; k <= top; ++k) {
            Rational want = 0;
            for (int x : roots) want += Rational(static_cast<long>(std::pow(x, k)));
            CHECK(p[k] == want);
        }
        // ch_1 = c_1 and p_k = c_1 p_{k-1} - c_2 p_{k-2} + ... ± k c_k
        CHECK(p[1] == c[1]);
        for (int k = 1; k <= top; ++k) {
            Rational rhs = 0;
            for (int i = 1; i < k; ++i) rhs += (i % 2 ? 1 : -1) * c[i] * p[k - i];
            rhs += (k % 2 ? 1 : -1) * k * c[k];
            CHECK(p[k] == rhs);
        }
    }
}

TEST_CASE("gamma class against Γ(1+H)^{n+1} / Γ(1+dH)") {
    const auto a = log_gamma_oracle(8);
    for (int n = 1; n <= 5; ++n) {
        for (int d = 0; d <= n + 1; ++d) {
            if (d > 0 && n < 2) continue;
            const auto m = d ? ManifoldModel::hypersurface(n, d) : ManifoldModel::projective(n);
            const int dim = m.dim();
            std::vector<double> q(dim + 1, 0.0);
            for (int k = 1; k <= dim; ++k) q[k] = (n + 1) * a[k] - (d ? std::pow(d, k) * a[k] : 0.0);
            const auto want = series_exp(q, dim);
            const auto g = gamma_class(m);
            CHECK(g[0] == Symbolic(1));
            if (m.is_calabi_yau()) CHECK(g[1].is_zero());
            for (int k = 0; k <= dim; ++k) {
                const auto got = g[k].evaluate();
                CHECK(got.real() == doctest::Approx(want[k]).epsilon(1e-12));
                CHECK(got.imag() == 0.0);
            }
        }
    }
}

TEST_CASE("single-point check of Γ(1+x)^3 through boost tgamma") {
    // Γ̂_{P^2} as a series in x, evaluated at a small x, against tgamma directly
    const auto g = evaluate(gamma_class(ManifoldModel::projective(2)));
    const double x = 1e-3;
    const double series = g[0].real() + g[1].real() * x + g[2].real() * x * x;
    CHECK(series == doctest::Approx(std::pow(boost::math::tgamma(1 + x), 3)).epsilon(1e-8));
}

TEST_CASE("period polynomial examples") {
    SUBCASE("quintic with ω = H") {
        const auto p = gamma_period_polynomial(ManifoldModel::hypersurface(4, 5), 1);
        REQUIRE(p.exact().size() == 4);
        CHECK(p.exact()[3] == Symbolic(Rational(5, 6)));
        CHECK(p.exact()[2].is_zero());
        CHECK(p.exact()[1] == Symbolic(-50) * Symbolic::zeta(2));
        CHECK(p.exact()[0] == Symbolic(200) * Symbolic::zeta(3));
        CHECK(p.symbolic() == "5/6*L^3 - 50*zeta(2)*L + 200*zeta(3)");
    }
    SUBCASE("P^1 with ω = 2H") {
        const auto p = gamma_period_polynomial(ManifoldModel::projective(1), 2);
        CHECK(p.exact()[1] == Symbolic(2));
        CHECK(p.exact()[0] == Symbolic(-2) * Symbolic::euler_gamma());
        CHECK(p(1.0).real() == doctest::Approx(2 - 2 * 0.57721566490153286));
    }
    SUBCASE("P^2 hand expansion") {
        const double g = 0.57721566490153286061, z2 = zeta_em(2);
        const auto p = gamma_period_polynomial(ManifoldModel::projective(2), 3);
        for (double L : {0.0, 1.5, 7.0}) {
            const double want = 4.5 * L * L - 9 * g * L + 4.5 * g * g + 1.5 * z2;
            CHECK(p(L).real() == doctest::Approx(want).epsilon(1e-13));
        }
    }
    SUBCASE("cubic curve with ω = 3H is 9L") {
        const auto p = gamma_period_polynomial(ManifoldModel::hypersurface(2, 3), 3);
        CHECK(p.exact()[0].is_zero());
        CHECK(p.exact()[1] == Symbolic(9));
    }
}

TEST_CASE("CY3 formula on the quintic") {
    // (∫ω³/3!)L³ - ζ(2)(∫ω c₂)L - ζ(3)∫c₃ with ∫H³ = 5, ∫H c₂ = 50, ∫c₃ = -200
    for (int q : {1, 2, 5}) {
        const auto p = gamma_period_polynomial(ManifoldModel::hypersurface(4, 5), q);
        CHECK(p.exact()[3] == Symbolic(frac(5 * q * q * q, 6)));
        CHECK(p.exact()[1] == Symbolic(-50 * q) * Symbolic::zeta(2));
        CHECK(p.exact()[0] == Symbolic(200) * Symbolic::zeta(3));
    }
}

TEST_CASE("period polynomial is linear in ch(V) and has leading ∫ω^n/n!") {
    const auto m = ManifoldModel::projective(3);
    const int n = m.dim();
    auto line = [&](int a) {
        // ch O(a) = e^{aH}
        std::vector<GradedElement<Symbolic>> pieces;
        Rational c = 1;
        for (int k = 0; k <= n; ++k) {
            if (k > 0) c = c * a / k;
            pieces.push_back(GradedElement<Symbolic>::monomial(n, k, Symbolic(c)));
        }
        return pieces;
    };
    const auto pa = gamma_period_polynomial(m, 4, line(1));
    const auto pb = gamma_period_polynomial(m, 4, line(-2));
    auto sum = line(1);
    const auto other = line(-2);
    for (int k = 0; k <= n; ++k) sum[k] += other[k];
    const auto psum = gamma_period_polynomial(m, 4, sum);
    for (int j = 0; j <= n; ++j) CHECK(psum.exact()[j] == pa.exact()[j] + pb.exact()[j]);

    const auto po = gamma_period_polynomial(m, 4);
    CHECK(po.exact()[3] == Symbolic(frac(64, 6)));
    const auto o_explicit = gamma_period_polynomial(m, 4, line(0));
    for (int j = 0; j <= n; ++j) CHECK(o_explicit.exact()[j] == po.exact()[j]);
}

TEST_CASE("exp/log round trip on nilpotent elements") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    for (int trial = 0; trial < 30; ++trial) {
        GradedElement<Rational> x(5);
        for (int k = 1; k <= 5; ++k) x[k] = frac(num(rng), den(rng));
        CHECK(log(exp(x)) == x);
        GradedElement<Rational> y = exp(x);
        CHECK(exp(log(y)) == y);
    }
    GradedElement<Rational> bad = GradedElement<Rational>::one(2);
    CHECK_THROWS_AS(exp(bad), DomainError);
    CHECK_THROWS_AS(log(GradedElement<Rational>(2)), DomainError);
}

TEST_CASE("model validation and shape errors") {
    CHECK_THROWS_AS(ManifoldModel::projective(0).validate(), DomainError);
    CHECK_THROWS_AS(ManifoldModel::hypersurface(1, 2).validate(), DomainError);
    CHECK_THROWS_AS(ManifoldModel::hypersurface(3, 0).validate(), DomainError);
    CHECK_THROWS_AS(GradedElement<Rational>(2) + GradedElement<Rational>(3), ShapeError);
    const auto m = ManifoldModel::projective(2);
    std::vector<GradedElement<Symbolic>> wrong{GradedElement<Symbolic>::one(3)};
    CHECK_THROWS_AS(gamma_period_polynomial(m, 3, wrong), ShapeError);
}
