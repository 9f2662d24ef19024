#pragma once

#include <array>
#include <string>
#include <vector>

#include "degen/scheme.hpp"

namespace degen {

/// Empirical counterparts of the a-priori constants: per-step norm series,
/// the accumulated time-quotient energy, and the uniform / modulus bounds.
struct DiagnosticsReport {
    std::vector<double> norm_u;      // ||U^n||, n = 0..N
    std::vector<double> norm_dplus;  // ||D+ U^n||, n = 0..N
    double time_quotient_energy = 0; // sum_n ||(U^{n+1}-U^n)/dt||^2 dt
    double c1 = 0;                   // max_n ||U^n||
    double c6 = 0;                   // max_n ||D+ U^n||
    double c11 = 0;                  // alias of time_quotient_energy
    double c4p = 0;                  // max_{j,n} |U_j^n|
    double c5p = 0;                  // max |U_j^{n+1}-U_j^n| / dt^{1/4}
    double c6p = 0;                  // max(cx, c5p)
    double cx = 0;                   // max |U_{j+1}^n-U_j^n| / sqrt(dx)
    double c5_estimate = 0;
    std::vector<int> ratio_violations; // steps breaking the gradient-ratio bound
    std::string notes;
};

/// Fills the series and constants from a solved run; the gradient-ratio
/// monitor uses the c5 estimate recorded at solve time.
DiagnosticsReport energy_series(const Solution& s);

struct GronwallResult {
    double max_slack = 0; // max over steps of (lhs - rhs) / rhs
    bool holds = true;    // lhs <= 1.05 rhs at every step
};

/// Data-stability estimate for two runs of the same C == 0 problem:
/// ||d^n||^2 <= e^{(NB+1) t^n} (||f1-f2||^2 + trapezoid boundary integral),
/// with NB = max |dB/dx|, N1 = max(0, max_t B(1,t)), N2 = -min(0, min_t
/// B(0,t)). Throws PreconditionError when C is not identically zero.
GronwallResult gronwall_check(const Problem& p, const Solution& s1, const Solution& s2);

struct QuadraticFormProbe {
    double theta = 0;            // in [0,1]
    std::array<double, 3> y{};   // (Y_{j-1}, Y_j, Y_{j+1})
};

struct QuadraticFormGap {
    double q1 = 0;
    double q2 = 0;
};

/// Evaluates the advection quadratic form and its dominating counterpart;
/// q2 - q1 = theta/2 (y1 - 2 y2 + y3)^2, so q1 <= q2 always.
QuadraticFormGap quadratic_form_gap(const QuadraticFormProbe& probe);

struct HolderModuli {
    double cx = 0; // max |U_{j+1}^n - U_j^n| / sqrt(dx)
    double ct = 0; // max |U_j^{n+1} - U_j^n| / dt^{1/4}
};

HolderModuli holder_moduli(const Solution& s);

enum class Endpoint { left, right };

/// At a fully degenerate endpoint (A = dA/dx = B = 0 there) the boundary row
/// is an exact trapezoidal step of u' = C u + F restricted to that point;
/// with F absent the trace must follow f(x_e) exp(int_0^t C(x_e, tau) dtau).
/// Returns the max deviation over all steps. Throws PreconditionError when
/// the endpoint is not fully degenerate.
double boundary_ode_check(const Solution& s, Endpoint e);

} // namespace degen
