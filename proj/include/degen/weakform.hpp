#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "degen/diagnostics.hpp"
#include "degen/scheme.hpp"

namespace degen {

/// Piecewise-constant extensions of a discrete solution over mesh cells.
/// r / l carry the nodal values anchored to the right / left cell edge;
/// r_prime / l_prime the forward / backward space quotients; r_t / l_t the
/// time quotients; m, m1, m2 the half-sum level V/2 and its central and
/// forward quotients; q1 / q2 the one-sided second-order quotients of V/2.
enum class ViewKind { r, l, r_prime, l_prime, r_t, l_t, m, m1, m2, q1, q2 };

std::string to_string(ViewKind k);

/// Evaluable cell-lookup adaptor over an immutable Solution. Cells are
/// half-open following the defining sums; points outside every defining
/// cell (and not covered by one of the explicit edge rows) evaluate to 0.
class StepFunctionView {
public:
    StepFunctionView(const Solution& s, ViewKind kind);

    /// Value at (x,t); throws DomainError outside [0,1] x [0,T].
    double operator()(double x, double t) const;

    /// Exact space-time norm square: sum of value^2 * dx * dt over the
    /// defining cells (edge rows have measure zero and do not contribute).
    double energy_norm_sq() const;

    ViewKind kind() const { return kind_; }

private:
    double cell_value(int j, int n) const; // value on cell (j, n)
    std::pair<int, int> cell_j_range() const;
    const Solution* sol_;
    ViewKind kind_;
};

/// Surface interpolating the nodal values linearly in x and t; continuous,
/// and equal to the solution at every node.
class BilinearInterpolant {
public:
    explicit BilinearInterpolant(const Solution& s) : sol_(&s) {}
    double operator()(double x, double t) const;

private:
    const Solution* sol_;
};

/// Compactly supported bump K x^a (1-x)^a t^b (T-t)^b with analytic
/// partials, scaled to unit space-time norm.
class TestFunction {
public:
    TestFunction(int a, int b, double horizon);
    double value(double x, double t) const;
    double dx(double x, double t) const;
    double dt(double x, double t) const;
    int a() const { return a_; }
    int b() const { return b_; }

private:
    int a_, b_;
    double horizon_, scale_;
};

/// The fixed catalog used by the verification runs: (a,b) in
/// {(2,2),(3,2),(2,3)}.
std::vector<TestFunction> test_catalog(double horizon);

/// Space-time inner product by 2x2 Gauss quadrature per mesh cell; exact
/// when the integrand is (bi)linear-times-constant on every cell, which
/// covers products of the step-function views.
template <class F, class G>
double energy_inner(F&& f, G&& g, const Grid& grid) {
    constexpr double kOffset = 0.28867513459481288225457439025098; // 1/(2 sqrt 3)
    const double dx = grid.dx(), dt = grid.dt();
    double total = 0.0;
    for (int n = 0; n < grid.N(); ++n) {
        const double tc = grid.t(n) + 0.5 * dt;
        const double t0 = tc - kOffset * dt, t1 = tc + kOffset * dt;
        for (int j = 0; j < grid.J(); ++j) {
            const double xc = grid.x(j) + 0.5 * dx;
            const double x0 = xc - kOffset * dx, x1 = xc + kOffset * dx;
            double cell = 0.0;
            for (double t : {t0, t1})
                for (double x : {x0, x1}) cell += f(x, t) * g(x, t);
            total += cell * 0.25 * dx * dt;
        }
    }
    return total;
}

template <class F>
double energy_norm_sq(F&& f, const Grid& grid) {
    return energy_inner(f, f, grid);
}

/// Residual of the weak identity for compactly supported phi:
///   R = <r_t, phi> + <A m2, phi_x> - <B m2, phi> - <C m, phi> - <F, phi>.
/// For the continuum solution every term pairing vanishes; for a discrete
/// run R shrinks under refinement.
double weak_residual(const Solution& s, const TestFunction& phi);

/// Per-test-function residual pair on a coarse and a once-halved fine grid,
/// plus the interpolant gap bound and the q1/q2 agreement.
struct WeakIdentityReport {
    std::vector<double> weak_dx_coarse, weak_dx_fine; // |<r,phi_x> + <l',phi>|
    std::vector<double> weak_dt_coarse, weak_dt_fine; // |<r,phi_t> + <r_t,phi>|
    std::vector<double> qgap_coarse, qgap_fine;       // |<q1 - q2, phi>|
    double sup_sr_coarse = 0, sup_sl_coarse = 0;      // max|s-r|, max|s-l|
    double sup_sr_fine = 0, sup_sl_fine = 0;
    double gap_bound_coarse = 0, gap_bound_fine = 0;  // c6p (sqrt dx + dt^{1/4})
    bool gaps_within_bound = true;
};

/// Same problem solved on g and on the grid with both steps halved.
WeakIdentityReport weak_identity_checks(const Solution& s_coarse, const Solution& s_fine,
                         const std::vector<TestFunction>& phis);

struct ConvergenceLevel {
    int J = 0, N = 0;
    double l2_error = std::numeric_limits<double>::quiet_NaN(); // needs exact solution
    double order = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> weak_residuals; // per catalog test function
    double cx = 0, ct = 0;
};

struct ConvergenceReport {
    std::vector<ConvergenceLevel> levels;
};

/// Solves the problem on each (J,N) level (levels must be strictly refining
/// and nested), recording l2 error at t = T against the exact solution when
/// one is attached, observed orders between consecutive levels, weak
/// residuals for the catalog, and the Hoelder moduli.
ConvergenceReport refinement_study(const Problem& p,
                                   const std::vector<std::pair<int, int>>& levels,
                                   double horizon, double lambda, bool strict = true);

} // namespace degen
