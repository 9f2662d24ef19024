#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace degen {

/// Scalar field on [0,1] x [0,T], either a closed form (optionally with an
/// analytic x-derivative) or a separable polynomial p(x) * q(t) with stored
/// coefficient sequences. Evaluation is deterministic and total.
class CoefficientField {
public:
    using Fn = std::function<double(double, double)>;

    CoefficientField(); // zero field

    static CoefficientField constant(double c);
    static CoefficientField closed_form(Fn f);
    static CoefficientField closed_form(Fn f, Fn dfdx);
    /// p(x) * q(t), coefficients in ascending powers; empty means zero.
    static CoefficientField separable(std::vector<double> px, std::vector<double> qt);

    double operator()(double x, double t) const;

    bool has_analytic_dx() const;

    /// x-derivative field: exact for separable polynomials and closed forms
    /// constructed with one; otherwise a centered difference with step
    /// h = 1e-6 * max(1, |x|).
    CoefficientField dx() const;

private:
    Fn eval_;
    Fn dfdx_; // empty when only the fallback is available
    std::vector<double> px_, qt_;
    bool separable_ = false;
};

/// Boundary sign pattern of the advection coefficient at the two endpoints.
enum class BoundaryCase { B0NonnegB1Nonpos, B0NonnegB1Pos, B0NegB1Nonpos, B0NegB1Pos };

std::string to_string(BoundaryCase c);
BoundaryCase boundary_case_from_string(const std::string& s);

/// Dirichlet data is required at x=0 for the cases with B(0,t) < 0 and at
/// x=1 for the cases with B(1,t) > 0.
bool needs_dirichlet_left(BoundaryCase c);
bool needs_dirichlet_right(BoundaryCase c);

/// Classify the endpoint signs of B over the given time samples. Throws
/// ClassificationError when a sign changes over the samples.
BoundaryCase classify_boundary(const CoefficientField& B, std::span<const double> t_samples);

/// Evenly spaced samples 0..T used by classification and stability checks.
std::vector<double> time_samples(double T, int count = 64);

/// Cubic transition weight: 1 on [0, lambda], 0 on [1-lambda, 1], and in
/// between the unique C^1 cubic joining the two plateaus.
class ThetaBlend {
public:
    explicit ThetaBlend(double lambda);
    double lambda() const { return lambda_; }
    double value(double x) const; // throws DomainError outside [0,1]

private:
    double lambda_;
};

double theta_eval(const ThetaBlend& blend, double x);

/// Volatility / interest / dividend parameters of the Asian-option preset.
struct AsianParams {
    double sigma = 0.05;
    double r = 0.05;
    double d0 = 0.1;
};

/// Conservative-form problem data: u_t = (A u_x)_x + B u_x + C u + F,
/// A >= 0 with A(0,t) = A(1,t) = 0, initial profile f, boundary case and
/// whatever Dirichlet data the case requires. The source F and the optional
/// manufactured exact solution are artifact additions; both default absent.
struct Problem {
    std::string name;
    CoefficientField A;
    CoefficientField B;
    CoefficientField C;
    CoefficientField a; // dA/dx
    CoefficientField F;
    std::function<double(double)> f;
    BoundaryCase boundary_case = BoundaryCase::B0NonnegB1Nonpos;
    std::optional<std::function<double(double)>> dirichlet_left;  // g0(t)
    std::optional<std::function<double(double)>> dirichlet_right; // g1(t)
    std::optional<std::function<double(double, double)>> exact;
};

/// Checks the structural invariants: Dirichlet data present iff the case
/// requires it, A(0,t) = A(1,t) = 0 exactly and A >= 0 on a 1001-point
/// lattice, and the declared case consistent with the endpoint signs of B
/// over [0,T]. Throws ClassificationError / ConfigError on violation.
void validate_problem(const Problem& p, double T);

struct ConservativeCoefficients {
    CoefficientField A;
    CoefficientField B; // b - dA/dx
    CoefficientField C;
    CoefficientField a; // dA/dx
};

/// Rewrites A u_xx + b u_x + c u as (A u_x)_x + B u_x + C u.
ConservativeCoefficients conservative_from_nonconservative(const CoefficientField& A,
                                                           const CoefficientField& b,
                                                           const CoefficientField& c);

/// The Asian-option problem on the unit interval:
///   A = sigma^2/2 x^2 (1-x)^2,  B = (d0 - r) x (1-x) - dA/dx,
///   C = -(d0 (1-x) + r x),      no Dirichlet data.
Problem asian_problem(const AsianParams& p, std::function<double(double)> f);

/// Named presets: asian, pure-diffusion, advection-right, advection-left,
/// two-sided, mms. An empty f keeps the preset default.
Problem make_preset(const std::string& name, const AsianParams& asian = {},
                    std::function<double(double)> f = {});

std::vector<std::string> preset_names();

/// Advection-only degenerate problem with C = 0, used by the data-stability
/// estimate checks: A = x^2 (1-x)^2, b = 0.1 x (1-x) in nonconservative form.
Problem gronwall_demo_problem(std::function<double(double)> f);

} // namespace degen
