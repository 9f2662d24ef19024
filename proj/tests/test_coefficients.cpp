#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "degen/coefficients.hpp"
#include "degen/errors.hpp"
#include "oracles.hpp"

using namespace degen;

TEST_CASE("theta blend plateaus and midpoint") {
    const ThetaBlend blend(0.25);
    CHECK(theta_eval(blend, 0.1) == 1.0);
    CHECK(theta_eval(blend, 0.25) == 1.0);
    CHECK(theta_eval(blend, 0.9) == 0.0);
    CHECK(theta_eval(blend, 0.75) == 0.0);
    CHECK(theta_eval(blend, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(theta_eval(blend, -0.01), DomainError);
    CHECK_THROWS_AS(theta_eval(blend, 1.01), DomainError);
    CHECK_THROWS_AS(ThetaBlend(0.0), ConfigError);
    CHECK_THROWS_AS(ThetaBlend(0.5), ConfigError);
}

TEST_CASE("theta blend matches an independent cubic solve") {
    // solve the 4x4 system for the cubic coefficients on [lambda, 1-lambda]
    const double lambda = 0.3;
    const double x0 = lambda, x1 = 1.0 - lambda;
    std::vector<std::vector<double>> m = {
        {1.0, x0, x0 * x0, x0 * x0 * x0},
        {0.0, 1.0, 2.0 * x0, 3.0 * x0 * x0},
        {1.0, x1, x1 * x1, x1 * x1 * x1},
        {0.0, 1.0, 2.0 * x1, 3.0 * x1 * x1},
    };
    const auto c = oracle::dense_solve(std::move(m), {1.0, 0.0, 0.0, 0.0});
    const ThetaBlend blend(lambda);
    for (int i = 0; i <= 100; ++i) {
        const double x = x0 + (x1 - x0) * i / 100.0;
        const double cubic = c[0] + x * (c[1] + x * (c[2] + x * c[3]));
        CHECK(blend.value(x) == doctest::Approx(cubic).epsilon(1e-14));
    }
}

TEST_CASE("boundary classification") {
    const auto ts = time_samples(1.0);
    const AsianParams params;
    const Problem asian = asian_problem(params, {});
    CHECK(classify_boundary(asian.B, ts) == BoundaryCase::B0NonnegB1Nonpos);
    CHECK(classify_boundary(CoefficientField::constant(1.0), ts) ==
          BoundaryCase::B0NonnegB1Pos);
    CHECK(classify_boundary(CoefficientField::constant(-1.0), ts) ==
          BoundaryCase::B0NegB1Nonpos);

    // B(0,t) = 1 - 2t flips sign over [0,1]
    const auto flipping = CoefficientField::closed_form(
        [](double, double t) { return 1.0 - 2.0 * t; });
    CHECK_THROWS_AS(classify_boundary(flipping, ts), ClassificationError);
    CHECK_THROWS_AS(classify_boundary(asian.B, std::span<const double>{}),
                    ClassificationError);
}

TEST_CASE("asian preset values") {
    AsianParams params; // sigma = 0.05, r = 0.05, d0 = 0.1
    const Problem p = asian_problem(params, {});
    CHECK(p.A(0.5, 0.3) == doctest::Approx(7.8125e-5).epsilon(1e-14));
    CHECK(p.A(0.0, 0.0) == 0.0);
    CHECK(p.A(1.0, 0.7) == 0.0);
    CHECK(p.C(0.0, 0.0) == doctest::Approx(-0.1));
    CHECK(p.C(1.0, 0.0) == doctest::Approx(-0.05));
    CHECK(p.B(0.0, 0.5) == 0.0);
    CHECK(p.B(1.0, 0.5) == 0.0);
    CHECK(p.f(0.0) == 0.0);
    CHECK(p.boundary_case == BoundaryCase::B0NonnegB1Nonpos);

    // stays in the no-boundary-data case for any valid parameter triple
    for (const double sigma : {0.01, 0.3, 2.0})
        for (const double r : {0.0, 0.05, 0.2})
            for (const double d0 : {0.0, 0.1, 0.5}) {
                const Problem q = asian_problem({sigma, r, d0}, {});
                CHECK(classify_boundary(q.B, time_samples(1.0)) ==
                      BoundaryCase::B0NonnegB1Nonpos);
            }
    CHECK_THROWS_AS(asian_problem({0.0, 0.05, 0.1}, {}), ConfigError);
}

TEST_CASE("conservative rewrite") {
    // A = x(1-x), no advection: B picks up -dA/dx = 2x - 1
    const auto A = CoefficientField::closed_form(
        [](double x, double) { return x * (1.0 - x); },
        [](double x, double) { return 1.0 - 2.0 * x; });
    const auto conv = conservative_from_nonconservative(A, CoefficientField::constant(0.0),
                                                        CoefficientField::constant(0.0));
    CHECK(conv.B(0.0, 0.0) == doctest::Approx(-1.0));
    CHECK(conv.B(1.0, 0.0) == doctest::Approx(1.0));

    // constant A keeps b unchanged
    const auto conv2 = conservative_from_nonconservative(
        CoefficientField::constant(2.0), CoefficientField::constant(0.7),
        CoefficientField::constant(0.0));
    CHECK(conv2.B(0.3, 0.1) == doctest::Approx(0.7));

    // the asian pieces: b vanishes at the ends and A has double zeros
    AsianParams params;
    const double half_sig2 = 0.5 * params.sigma * params.sigma;
    const auto A_asian = CoefficientField::closed_form(
        [half_sig2](double x, double) {
            const double w = x * (1.0 - x);
            return half_sig2 * w * w;
        },
        [half_sig2](double x, double) {
            return half_sig2 * 2.0 * x * (1.0 - x) * (1.0 - 2.0 * x);
        });
    const auto b_asian = CoefficientField::closed_form(
        [params](double x, double) { return (params.d0 - params.r) * x * (1.0 - x); });
    const auto conv3 = conservative_from_nonconservative(A_asian, b_asian,
                                                         CoefficientField::constant(0.0));
    CHECK(conv3.B(0.0, 0.0) == 0.0);
    CHECK(conv3.B(1.0, 0.0) == 0.0);
}

TEST_CASE("conservative rewrite re-expands to the nonconservative operator") {
    // (A u')' + B u' + C u must equal A u'' + b u' + c u for smooth u when
    // B = b - dA/dx (analytic derivative path)
    const auto A = CoefficientField::closed_form(
        [](double x, double t) { return x * (1.0 - x) * (1.0 + 0.5 * t); },
        [](double x, double t) { return (1.0 - 2.0 * x) * (1.0 + 0.5 * t); });
    const auto b = CoefficientField::separable({0.2, -0.4, 0.1}, {1.0});
    const auto c = CoefficientField::separable({-0.3, 0.2}, {1.0});
    const auto conv = conservative_from_nonconservative(A, b, c);

    const struct {
        double (*u)(double);
        double (*du)(double);
        double (*ddu)(double);
    } polys[5] = {
        {[](double) { return 1.0; }, [](double) { return 0.0; }, [](double) { return 0.0; }},
        {[](double x) { return x; }, [](double) { return 1.0; }, [](double) { return 0.0; }},
        {[](double x) { return x * x; }, [](double x) { return 2.0 * x; },
         [](double) { return 2.0; }},
        {[](double x) { return x * x * x; }, [](double x) { return 3.0 * x * x; },
         [](double x) { return 6.0 * x; }},
        {[](double x) { return 1.0 - x * x + 2.0 * x * x * x; },
         [](double x) { return -2.0 * x + 6.0 * x * x; },
         [](double x) { return -2.0 + 12.0 * x; }},
    };
    for (const auto& poly : polys)
        for (const double x : {0.1, 0.35, 0.6, 0.85})
            for (const double t : {0.0, 0.4, 1.0}) {
                const double conservative = conv.a(x, t) * poly.du(x) +
                                            conv.A(x, t) * poly.ddu(x) +
                                            conv.B(x, t) * poly.du(x) +
                                            conv.C(x, t) * poly.u(x);
                const double nonconservative = A(x, t) * poly.ddu(x) + b(x, t) * poly.du(x) +
                                               c(x, t) * poly.u(x);
                CHECK(conservative == doctest::Approx(nonconservative).epsilon(1e-10));
            }
}

TEST_CASE("finite-difference derivative fallback") {
    const auto field = CoefficientField::closed_form(
        [](double x, double t) { return std::exp(x) * (1.0 + t); });
    CHECK_FALSE(field.has_analytic_dx());
    const auto d = field.dx();
    CHECK(d(0.5, 0.0) == doctest::Approx(std::exp(0.5)).epsilon(1e-9));
    CHECK(d(0.0, 1.0) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("separable fields evaluate and differentiate exactly") {
    // p(x) = x - x^2, q(t) = 2 + t
    const auto field = CoefficientField::separable({0.0, 1.0, -1.0}, {2.0, 1.0});
    CHECK(field.has_analytic_dx());
    CHECK(field(0.5, 1.0) == doctest::Approx(0.75));
    const auto d = field.dx();
    CHECK(d(0.25, 0.0) == doctest::Approx(1.0)); // (1 - 2x) * 2 at x = 1/4
    CHECK(d(0.5, 2.0) == doctest::Approx(0.0));
}

TEST_CASE("presets: diffusion vanishes exactly at the ends") {
    for (const auto& name : preset_names()) {
        const Problem p = make_preset(name);
        for (int i = 0; i <= 1000; ++i) {
            const double x = i / 1000.0;
            CHECK(p.A(x, 0.5) >= 0.0);
        }
        CHECK(p.A(0.0, 0.25) == 0.0);
        CHECK(p.A(1.0, 0.25) == 0.0);
        CHECK_NOTHROW(validate_problem(p, 1.0));
    }
    CHECK_THROWS_AS(make_preset("unknown"), ConfigError);
}

TEST_CASE("problem validation catches inconsistent data") {
    Problem p = make_preset("asian");
    p.dirichlet_right = [](double) { return 0.0; }; // case takes no data at x=1
    CHECK_THROWS_AS(validate_problem(p, 1.0), ConfigError);

    Problem q = make_preset("two-sided");
    q.dirichlet_left.reset(); // case requires data at x=0
    CHECK_THROWS_AS(validate_problem(q, 1.0), ConfigError);

    // declared case contradicting the sign of B at x=0
    Problem r = make_preset("asian");
    r.B = CoefficientField::constant(-0.5);
    CHECK_THROWS_AS(validate_problem(r, 1.0), ClassificationError);
}

TEST_CASE("mms preset satisfies its own equation") {
    const Problem p = make_preset("mms");
    REQUIRE(p.exact.has_value());
    const auto& u = *p.exact;
    // residual u_t - (A u_x)_x - B u_x - C u - F via centered differences
    const double h = 1e-4;
    for (const double x : {0.15, 0.4, 0.65, 0.9})
        for (const double t : {0.1, 0.5, 0.9}) {
            const double ut = (u(x, t + h) - u(x, t - h)) / (2.0 * h);
            const double ux = (u(x + h, t) - u(x - h, t)) / (2.0 * h);
            const double uxx = (u(x + h, t) - 2.0 * u(x, t) + u(x - h, t)) / (h * h);
            const double res = ut - p.a(x, t) * ux - p.A(x, t) * uxx - p.B(x, t) * ux -
                               p.C(x, t) * u(x, t) - p.F(x, t);
            CHECK(res == doctest::Approx(0.0).epsilon(1e-5));
        }
}
