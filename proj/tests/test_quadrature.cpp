#include "gammatrop/errors.hpp"
#include "gammatrop/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>

using namespace gammatrop;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double pi = std::numbers::pi;
constexpr double euler = 0.57721566490153286061;

struct ClosedForm {
    const char* name;
    std::function<double(double)> f;
    double a, b;
    double exact;
    std::vector<double> breaks;
};

std::vector<ClosedForm> closed_forms() {
    return {
        {"exp(-s) on [0,inf)", [](double s) { return std::exp(-s); }, 0, inf, 1.0, {}},
        {"x^-1/2 on [0,1]", [](double x) { return 1.0 / std::sqrt(x); }, 0, 1, 2.0, {}},
        {"sin on [0,pi]", [](double x) { return std::sin(x); }, 0, pi, 2.0, {}},
        {"gaussian on R", [](double x) { return std::exp(-x * x); }, -inf, inf, std::sqrt(pi), {}},
        {"log on [0,1]", [](double x) { return std::log(x); }, 0, 1, -1.0, {}},
        {"x^5 on [-1,2]", [](double x) { return std::pow(x, 5); }, -1, 2, 10.5, {}},
        {"|x-0.3| on [0,1]", [](double x) { return std::abs(x - 0.3); }, 0, 1, 0.29, {0.3}},
        {"sin^2(10x) on [0,pi]", [](double x) { return std::pow(std::sin(10 * x), 2); }, 0, pi, pi / 2, {}},
        {"half disc", [](double x) { return std::sqrt(std::max(0.0, 1 - x * x)); }, -1, 1, pi / 2, {}},
        {"exp(-|x|) cos x on R", [](double x) { return std::exp(-std::abs(x)) * std::cos(x); }, -inf, inf, 1.0, {0.0}},
        {"log(1+e^-|s|) on R", [](double s) { return std::log1p(std::exp(-std::abs(s))); }, -inf, inf, pi * pi / 6, {0.0}},
    };
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("error estimates bound the true error on closed-form integrands") {
    for (double tol : {1e-6, 1e-10}) {
        QuadratureConfig cfg;
        cfg.abs_tol = cfg.rel_tol = tol;
        for (const auto& c : closed_forms()) {
            CAPTURE(c.name);
            CAPTURE(tol);
            const auto r = integrate_1d(c.f, c.a, c.b, cfg, c.breaks);
            CHECK(r.converged);
            CHECK(r.error_estimate >= 0.0);
            CHECK(std::abs(r.value - c.exact) <= r.error_estimate + 4 * std::numeric_limits<double>::epsilon() * std::abs(c.exact));
            CHECK(r.error_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value)));
            CHECK(r.evaluations > 0);
        }
    }
}

TEST_CASE("1d edge cases") {
    QuadratureConfig cfg;
    auto sq = [](double x) { return x * x; };
    CHECK(integrate_1d(sq, 1, 1, cfg).value == 0.0);
    CHECK(integrate_1d(sq, 1, 0, cfg).value == doctest::Approx(-1.0 / 3));
    auto r = integrate_1d([](double x) { return std::exp(x); }, -inf, 0, cfg);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(integrate_1d([](double) { return 1.0; }, 0, inf, cfg), DomainError);
    CHECK_THROWS_AS(integrate_1d([](double x) { return std::sqrt(x - 0.5); }, 0, 1, cfg), DomainError);

    // a budget of one subdivision cannot resolve a spike; flagged, not thrown
    QuadratureConfig tight;
    tight.max_subdivisions = 1;
    auto spike = integrate_1d([](double x) { return 1.0 / (1e-4 + x * x); }, -1, 1, tight);
    CHECK_FALSE(spike.converged);
}

TEST_CASE("linearity within combined error estimates") {
    QuadratureConfig cfg;
    auto f = [](double x) { return std::exp(-x * x) * std::cos(3 * x); };
    auto g = [](double x) { return x * x * std::exp(-x); };
    const double alpha = 2.5, beta = -0.75;
    const auto rf = integrate_1d(f, 0, inf, cfg);
    const auto rg = integrate_1d(g, 0, inf, cfg);
    const auto rs = integrate_1d([&](double x) { return alpha * f(x) + beta * g(x); }, 0, inf, cfg);
    CHECK(std::abs(rs.value - (alpha * rf.value + beta * rg.value)) <=
          rs.error_estimate + std::abs(alpha) * rf.error_estimate + std::abs(beta) * rg.error_estimate + 1e-15);
    CHECK(rg.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("every rule order converges") {
    for (int order : {15, 21, 31, 41, 51, 61}) {
        QuadratureConfig cfg;
        cfg.rule_order = order;
        const auto r = integrate_1d([](double x) { return std::cos(x) * std::exp(x); }, 0, 2, cfg);
        const double exact = 0.5 * (std::exp(2.0) * (std::cos(2.0) + std::sin(2.0)) - 1);
        CAPTURE(order);
        CHECK(r.value == doctest::Approx(exact).epsilon(1e-12));
    }
    QuadratureConfig bad;
    bad.rule_order = 17;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = {};
    bad.abs_tol = 0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = {};
    bad.max_subdivisions = 0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("2d domains") {
    QuadratureConfig cfg;
    SUBCASE("unit square") {
        const auto r = integrate_2d([](double, double) { return 1.0; }, Rectangle{0, 1, 0, 1}, cfg);
        CHECK(r.value == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(r.converged);
    }
    SUBCASE("rectangle with a kink") {
        Rectangle rect{0, 1, 0, 2, {0.5}, [](double x) { return std::vector<double>{x}; }};
        const auto r = integrate_2d([](double x, double y) { return std::abs(x - 0.5) + std::abs(y - x); }, rect, cfg);
        // ∫|x-1/2| over the rectangle is 1/2; ∫_0^1 ∫_0^2 |y-x| dy dx = 4/3
        CHECK(r.value == doctest::Approx(0.5 + 4.0 / 3).epsilon(1e-11));
    }
    SUBCASE("triangle") {
        ConvexPolygon tri{{Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)}};
        const auto r = integrate_2d([](double x, double y) { return x + y; }, tri, cfg);
        CHECK(r.value == doctest::Approx(1.0 / 3).epsilon(1e-12));
    }
    SUBCASE("hexagon area") {
        ConvexPolygon hex;
        for (int k = 0; k < 6; ++k) hex.vertices.emplace_back(std::cos(k * pi / 3), std::sin(k * pi / 3));
        const auto r = integrate_2d([](double, double) { return 1.0; }, hex, cfg);
        CHECK(r.value == doctest::Approx(1.5 * std::sqrt(3.0)).epsilon(1e-12));
    }
    SUBCASE("unit sphere") {
        const auto r = integrate_2d([](double, double) { return 1.0; }, UnitSphere{}, cfg);
        CHECK(r.value == doctest::Approx(4 * pi).epsilon(1e-12));
        // ∫ z² dσ = 4π/3
        const auto z2 = integrate_2d([](double th, double) { return std::pow(std::cos(th), 2); }, UnitSphere{}, cfg);
        CHECK(z2.value == doctest::Approx(4 * pi / 3).epsilon(1e-12));
    }
}

TEST_CASE("results are bit-identical across runs and thread counts") {
    QuadratureConfig one, four;
    four.workers = 4;
    auto f = [](double x) { return std::exp(-std::abs(x)) * (1 + std::sin(5 * x)) / (1 + x * x); };
    const double breaks[] = {0.0};
    const auto a = integrate_1d(f, -inf, inf, one, breaks);
    const auto b = integrate_1d(f, -inf, inf, four, breaks);
    const auto c = integrate_1d(f, -inf, inf, four, breaks);
    CHECK(same_bits(a.value, b.value));
    CHECK(same_bits(a.error_estimate, b.error_estimate));
    CHECK(same_bits(b.value, c.value));
    CHECK(a.evaluations == b.evaluations);

    auto g = [](double x, double y) { return std::exp(-x * x - y) * std::cos(x * y); };
    const Rectangle rect{-3, 3, 0, 5};
    const auto p = integrate_2d(g, rect, one);
    const auto q = integrate_2d(g, rect, four);
    CHECK(same_bits(p.value, q.value));
    CHECK(same_bits(p.error_estimate, q.error_estimate));

    BatchIntegrand batch = [](std::span<const double> x, std::span<double> y) {
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::log1p(x[i] * x[i]);
    };
    const auto u = integrate_1d_batch(batch, 0, 3, one);
    const auto v = integrate_1d_batch(batch, 0, 3, four);
    CHECK(same_bits(u.value, v.value));
}

TEST_CASE("fit recovers exact polynomials in L") {
    SUBCASE("2L - 2γ from three points") {
        std::vector<FitSample> s;
        for (double t : {1e-2, 1e-3, 1e-4}) s.push_back({t, 2 * -std::log(t) - 2 * euler});
        const auto fit = fit_asymptotic(s, {0, 1});
        CHECK(fit.coefficient(1) == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(fit.coefficient(0) == doctest::Approx(-2 * euler).epsilon(1e-12));
        CHECK(fit.residual_rms < 1e-12);
        CHECK(fit(3.0) == doctest::Approx(6 - 2 * euler));
    }
    SUBCASE("cubic to 12 digits, free and pinned") {
        const double c[] = {200 * 1.2020569031595942, -50 * pi * pi / 6, 0.0, 5.0 / 6};
        std::vector<FitSample> s;
        for (double t : log_spaced(1e-2, 1e-8, 8)) {
            const double L = -std::log(t);
            s.push_back({t, c[0] + c[1] * L + c[2] * L * L + c[3] * L * L * L});
        }
        const auto fit = fit_asymptotic(s, {0, 1, 2, 3});
        for (int k = 0; k < 4; ++k) CHECK(std::abs(fit.coefficient(k) - c[k]) <= 1e-12 * std::max(1.0, std::abs(c[k])) * 100);
        const auto pinned = fit_asymptotic(s, {0, 1}, {{3, c[3]}, {2, 0.0}});
        CHECK(pinned.coefficient(0) == doctest::Approx(c[0]).epsilon(1e-12));
        CHECK(pinned.coefficient(1) == doctest::Approx(c[1]).epsilon(1e-12));
        CHECK(pinned.coefficient(3) == c[3]);
        REQUIRE(pinned.powers == std::vector<int>{0, 1, 2, 3});
        CHECK(pinned.pinned == std::vector<bool>{false, false, true, true});
    }
}

TEST_CASE("fit preconditions") {
    std::vector<FitSample> narrow{{1e-2, 1}, {8e-3, 2}, {6e-3, 3}, {5e-3, 4}};
    CHECK_THROWS_AS(fit_asymptotic(narrow, {0, 1}), ConditioningError);
    std::vector<FitSample> few{{1e-2, 1}, {1e-5, 2}};
    CHECK_THROWS_AS(fit_asymptotic(few, {0, 1}), ConditioningError);
    std::vector<FitSample> ok{{1e-2, 1}, {1e-4, 2}, {1e-6, 3}};
    CHECK_THROWS_AS(fit_asymptotic(ok, {1, 1}), DomainError);
    CHECK_THROWS_AS(fit_asymptotic(ok, {0, 1}, {{1, 2.0}}), DomainError);
    std::vector<FitSample> bad_t{{1e-2, 1}, {1.5, 2}, {1e-6, 3}};
    CHECK_THROWS_AS(fit_asymptotic(bad_t, {0}), DomainError);
    std::vector<FitSample> repeated{{1e-2, 1}, {1e-2, 2}, {1e-6, 3}};
    CHECK_THROWS_AS(fit_asymptotic(repeated, {0, 1}), DomainError);
}

TEST_CASE("log-spaced grids") {
    const auto g = log_spaced(1e-2, 1e-6, 5);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == 1e-2);
    CHECK(g.back() == 1e-6);
    CHECK(g[2] == doctest::Approx(1e-4).epsilon(1e-12));
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] / g[i - 1] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK_THROWS_AS(log_spaced(0, 1e-2, 4), DomainError);
}
