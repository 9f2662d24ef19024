#include "degen/coefficients.hpp"

#include <cmath>
#include <utility>

#include "degen/errors.hpp"

namespace degen {

namespace {

double poly_eval(const std::vector<double>& c, double v) {
    if (c.empty()) return 0.0;
    double r = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) r = r * v + c[i];
    return r;
}

std::vector<double> poly_derivative(const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
    return d;
}

} // namespace

CoefficientField::CoefficientField() : separable_(true) {} // empty polynomials: zero field

CoefficientField CoefficientField::constant(double c) {
    return closed_form([c](double, double) { return c; },
                       [](double, double) { return 0.0; });
}

CoefficientField CoefficientField::closed_form(Fn f) {
    CoefficientField field;
    field.eval_ = std::move(f);
    field.dfdx_ = nullptr;
    field.separable_ = false;
    return field;
}

CoefficientField CoefficientField::closed_form(Fn f, Fn dfdx) {
    CoefficientField field;
    field.eval_ = std::move(f);
    field.dfdx_ = std::move(dfdx);
    field.separable_ = false;
    return field;
}

CoefficientField CoefficientField::separable(std::vector<double> px, std::vector<double> qt) {
    CoefficientField field;
    field.px_ = std::move(px);
    field.qt_ = std::move(qt);
    field.separable_ = true;
    field.eval_ = nullptr;
    field.dfdx_ = nullptr;
    return field;
}

double CoefficientField::operator()(double x, double t) const {
    if (separable_) return poly_eval(px_, x) * poly_eval(qt_, t);
    return eval_(x, t);
}

bool CoefficientField::has_analytic_dx() const {
    return separable_ || static_cast<bool>(dfdx_);
}

CoefficientField CoefficientField::dx() const {
    if (separable_) return separable(poly_derivative(px_), qt_);
    if (dfdx_) return closed_form(dfdx_);
    Fn f = eval_;
    return closed_form([f](double x, double t) {
        const double h = 1e-6 * std::max(1.0, std::fabs(x));
        return (f(x + h, t) - f(x - h, t)) / (2.0 * h);
    });
}

std::string to_string(BoundaryCase c) {
    switch (c) {
    case BoundaryCase::B0NonnegB1Nonpos: return "8a";
    case BoundaryCase::B0NonnegB1Pos: return "8b";
    case BoundaryCase::B0NegB1Nonpos: return "8c";
    case BoundaryCase::B0NegB1Pos: return "8d";
    }
    return "?";
}

BoundaryCase boundary_case_from_string(const std::string& s) {
    if (s == "8a") return BoundaryCase::B0NonnegB1Nonpos;
    if (s == "8b") return BoundaryCase::B0NonnegB1Pos;
    if (s == "8c") return BoundaryCase::B0NegB1Nonpos;
    if (s == "8d") return BoundaryCase::B0NegB1Pos;
    throw ConfigError("unknown boundary case: " + s);
}

bool needs_dirichlet_left(BoundaryCase c) {
    return c == BoundaryCase::B0NegB1Nonpos || c == BoundaryCase::B0NegB1Pos;
}

bool needs_dirichlet_right(BoundaryCase c) {
    return c == BoundaryCase::B0NonnegB1Pos || c == BoundaryCase::B0NegB1Pos;
}

BoundaryCase classify_boundary(const CoefficientField& B, std::span<const double> t_samples) {
    if (t_samples.empty()) throw ClassificationError("classification needs time samples");
    bool left_nonneg = B(0.0, t_samples[0]) >= 0.0;
    bool right_pos = B(1.0, t_samples[0]) > 0.0;
    for (double t : t_samples) {
        if ((B(0.0, t) >= 0.0) != left_nonneg)
            throw ClassificationError("sign of B(0,t) changes over the time samples");
        if ((B(1.0, t) > 0.0) != right_pos)
            throw ClassificationError("sign of B(1,t) changes over the time samples");
    }
    if (left_nonneg)
        return right_pos ? BoundaryCase::B0NonnegB1Pos : BoundaryCase::B0NonnegB1Nonpos;
    return right_pos ? BoundaryCase::B0NegB1Pos : BoundaryCase::B0NegB1Nonpos;
}

std::vector<double> time_samples(double T, int count) {
    std::vector<double> ts(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        ts[static_cast<std::size_t>(i)] = T * static_cast<double>(i) / (count - 1);
    return ts;
}

ThetaBlend::ThetaBlend(double lambda) : lambda_(lambda) {
    if (!(lambda > 0.0 && lambda < 0.5))
        throw ConfigError("blend width must satisfy 0 < lambda < 1/2");
}

double ThetaBlend::value(double x) const {
    if (x < 0.0 || x > 1.0)
        throw DomainError("theta blend evaluated outside [0,1]");
    if (x <= lambda_) return 1.0;
    if (x >= 1.0 - lambda_) return 0.0;
    // unique cubic with value 1 / slope 0 at lambda and value 0 / slope 0
    // at 1 - lambda
    const double s = (x - lambda_) / (1.0 - 2.0 * lambda_);
    return 1.0 - s * s * (3.0 - 2.0 * s);
}

double theta_eval(const ThetaBlend& blend, double x) { return blend.value(x); }

void validate_problem(const Problem& p, double T) {
    if (needs_dirichlet_left(p.boundary_case) != p.dirichlet_left.has_value())
        throw ConfigError("problem '" + p.name + "': case " + to_string(p.boundary_case) +
                          (p.dirichlet_left ? " does not take" : " requires") +
                          " Dirichlet data at x=0");
    if (needs_dirichlet_right(p.boundary_case) != p.dirichlet_right.has_value())
        throw ConfigError("problem '" + p.name + "': case " + to_string(p.boundary_case) +
                          (p.dirichlet_right ? " does not take" : " requires") +
                          " Dirichlet data at x=1");
    const auto ts = time_samples(T);
    for (double t : {0.0, 0.5 * T, T}) {
        if (p.A(0.0, t) != 0.0 || p.A(1.0, t) != 0.0)
            throw ConfigError("problem '" + p.name + "': diffusion must vanish at x=0 and x=1");
    }
    for (int j = 0; j <= 1000; ++j) {
        const double x = j / 1000.0;
        for (double t : {0.0, T}) {
            if (p.A(x, t) < 0.0)
                throw ConfigError("problem '" + p.name + "': diffusion negative at x=" +
                                  std::to_string(x));
        }
    }
    if (classify_boundary(p.B, ts) != p.boundary_case)
        throw ClassificationError("problem '" + p.name + "': declared case " +
                                  to_string(p.boundary_case) +
                                  " does not match the endpoint signs of B (computed " +
                                  to_string(classify_boundary(p.B, ts)) + ")");
}

ConservativeCoefficients conservative_from_nonconservative(const CoefficientField& A,
                                                           const CoefficientField& b,
                                                           const CoefficientField& c) {
    CoefficientField a = A.dx();
    CoefficientField bb = b, aa = a;
    CoefficientField B = CoefficientField::closed_form(
        [bb, aa](double x, double t) { return bb(x, t) - aa(x, t); });
    return {A, B, c, a};
}

Problem asian_problem(const AsianParams& p, std::function<double(double)> f) {
    if (!(p.sigma > 0.0)) throw ConfigError("asian preset requires sigma > 0");
    if (p.r < 0.0 || p.d0 < 0.0) throw ConfigError("asian preset requires r >= 0 and d0 >= 0");
    const double half_sig2 = 0.5 * p.sigma * p.sigma;
    const double drift = p.d0 - p.r;
    const double r = p.r, d0 = p.d0;
    Problem prob;
    prob.name = "asian";
    prob.A = CoefficientField::closed_form(
        [half_sig2](double x, double) {
            const double w = x * (1.0 - x);
            return half_sig2 * w * w;
        },
        [half_sig2](double x, double) {
            return half_sig2 * 2.0 * x * (1.0 - x) * (1.0 - 2.0 * x);
        });
    prob.a = prob.A.dx();
    auto a = prob.a;
    prob.B = CoefficientField::closed_form(
        [drift, a](double x, double t) { return drift * x * (1.0 - x) - a(x, t); });
    prob.C = CoefficientField::closed_form(
        [d0, r](double x, double) { return -(d0 * (1.0 - x) + r * x); });
    prob.f = f ? std::move(f) : [](double x) { return std::tanh(x); };
    prob.boundary_case = BoundaryCase::B0NonnegB1Nonpos;
    return prob;
}

namespace {

// double-zero diffusion shared by several presets
CoefficientField double_zero_diffusion() {
    return CoefficientField::closed_form(
        [](double x, double) {
            const double w = x * (1.0 - x);
            return w * w;
        },
        [](double x, double) { return 2.0 * x * (1.0 - x) * (1.0 - 2.0 * x); });
}

double sin_pi(double x) { return std::sin(3.141592653589793238462643383280 * x); }

Problem pure_diffusion_problem(std::function<double(double)> f) {
    Problem p;
    p.name = "pure-diffusion";
    CoefficientField A = CoefficientField::closed_form(
        [](double x, double) { return x * (1.0 - x); },
        [](double x, double) { return 1.0 - 2.0 * x; });
    auto conv = conservative_from_nonconservative(A, CoefficientField::constant(0.0),
                                                  CoefficientField::constant(0.0));
    p.A = conv.A;
    p.B = conv.B; // 2x - 1: negative at the left end, positive at the right
    p.C = conv.C;
    p.a = conv.a;
    p.f = f ? std::move(f) : sin_pi;
    p.boundary_case = BoundaryCase::B0NegB1Pos;
    const double g0 = p.f(0.0), g1 = p.f(1.0);
    p.dirichlet_left = [g0](double) { return g0; };
    p.dirichlet_right = [g1](double) { return g1; };
    return p;
}

Problem advection_demo_problem(double speed, std::function<double(double)> f) {
    Problem p;
    p.name = speed > 0.0 ? "advection-right" : "advection-left";
    p.A = double_zero_diffusion();
    p.a = p.A.dx();
    p.B = CoefficientField::constant(speed);
    p.C = CoefficientField::constant(0.0);
    p.f = f ? std::move(f) : sin_pi;
    if (speed > 0.0) {
        p.boundary_case = BoundaryCase::B0NonnegB1Pos;
        const double g1 = p.f(1.0);
        p.dirichlet_right = [g1](double) { return g1; };
    } else {
        p.boundary_case = BoundaryCase::B0NegB1Nonpos;
        const double g0 = p.f(0.0);
        p.dirichlet_left = [g0](double) { return g0; };
    }
    return p;
}

Problem two_sided_problem(std::function<double(double)> f) {
    Problem p;
    p.name = "two-sided";
    p.A = double_zero_diffusion();
    p.a = p.A.dx();
    p.B = CoefficientField::closed_form([](double x, double) { return x - 0.5; },
                                        [](double, double) { return 1.0; });
    p.C = CoefficientField::constant(0.0);
    p.f = f ? std::move(f) : sin_pi;
    p.boundary_case = BoundaryCase::B0NegB1Pos;
    const double g0 = p.f(0.0), g1 = p.f(1.0);
    p.dirichlet_left = [g0](double) { return g0; };
    p.dirichlet_right = [g1](double) { return g1; };
    return p;
}

// Manufactured problem with exact solution u = e^{-t} (sin(pi x) + cos(pi x)):
// A = x^2 (1-x)^2, B = 1/2 - x, C = -1, and the source F makes u exact.
Problem mms_problem() {
    constexpr double kPi = 3.141592653589793238462643383280;
    Problem p;
    p.name = "mms";
    p.A = double_zero_diffusion();
    p.a = p.A.dx();
    p.B = CoefficientField::closed_form([](double x, double) { return 0.5 - x; },
                                        [](double, double) { return -1.0; });
    p.C = CoefficientField::constant(-1.0);
    auto u = [](double x, double t) {
        return std::exp(-t) * (std::sin(kPi * x) + std::cos(kPi * x));
    };
    auto ux = [](double x, double t) {
        return std::exp(-t) * kPi * (std::cos(kPi * x) - std::sin(kPi * x));
    };
    auto A = p.A;
    auto a = p.a;
    auto B = p.B;
    // F = u_t - (a + B) u_x - A u_xx - C u; with u_t = -u, u_xx = -pi^2 u,
    // C = -1 this collapses to pi^2 A u - (a + B) u_x.
    p.F = CoefficientField::closed_form([A, a, B, u, ux](double x, double t) {
        return kPi * kPi * A(x, t) * u(x, t) - (a(x, t) + B(x, t)) * ux(x, t);
    });
    p.f = [u](double x) { return u(x, 0.0); };
    p.exact = u;
    p.boundary_case = BoundaryCase::B0NonnegB1Nonpos;
    return p;
}

} // namespace

Problem make_preset(const std::string& name, const AsianParams& asian,
                    std::function<double(double)> f) {
    if (name == "asian") return asian_problem(asian, std::move(f));
    if (name == "pure-diffusion") return pure_diffusion_problem(std::move(f));
    if (name == "advection-right") return advection_demo_problem(0.2, std::move(f));
    if (name == "advection-left") return advection_demo_problem(-0.2, std::move(f));
    if (name == "two-sided") return two_sided_problem(std::move(f));
    if (name == "mms") {
        if (f) throw ConfigError("the mms preset fixes its own initial profile");
        return mms_problem();
    }
    throw ConfigError("unknown preset: " + name);
}

std::vector<std::string> preset_names() {
    return {"asian",          "pure-diffusion", "advection-right",
            "advection-left", "two-sided",      "mms"};
}

Problem gronwall_demo_problem(std::function<double(double)> f) {
    Problem p;
    p.name = "gronwall-demo";
    CoefficientField A = double_zero_diffusion();
    CoefficientField b = CoefficientField::closed_form(
        [](double x, double) { return 0.1 * x * (1.0 - x); });
    auto conv = conservative_from_nonconservative(A, b, CoefficientField::constant(0.0));
    p.A = conv.A;
    p.B = conv.B;
    p.C = conv.C;
    p.a = conv.a;
    p.f = std::move(f);
    p.boundary_case = BoundaryCase::B0NonnegB1Nonpos;
    return p;
}

} // namespace degen
