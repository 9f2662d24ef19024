#include "degen/weakform.hpp"

#include <cmath>

#include "degen/errors.hpp"

namespace degen {

std::string to_string(ViewKind k) {
    switch (k) {
    case ViewKind::r: return "r";
    case ViewKind::l: return "l";
    case ViewKind::r_prime: return "r_prime";
    case ViewKind::l_prime: return "l_prime";
    case ViewKind::r_t: return "r_t";
    case ViewKind::l_t: return "l_t";
    case ViewKind::m: return "m";
    case ViewKind::m1: return "m1";
    case ViewKind::m2: return "m2";
    case ViewKind::q1: return "q1";
    case ViewKind::q2: return "q2";
    }
    return "?";
}

namespace {

// Cell anchoring of each view. Right-anchored kinds live on ((j-1)dx, j dx],
// left-anchored on [j dx, (j+1)dx), forward-anchored on (j dx, (j+1)dx].
enum class Anchor { right, left, forward };

Anchor anchor_of(ViewKind k) {
    switch (k) {
    case ViewKind::r:
    case ViewKind::r_t:
    case ViewKind::m:
    case ViewKind::m1:
    case ViewKind::q2: return Anchor::right;
    case ViewKind::l:
    case ViewKind::l_t:
    case ViewKind::l_prime: return Anchor::left;
    case ViewKind::r_prime:
    case ViewKind::m2:
    case ViewKind::q1: return Anchor::forward;
    }
    return Anchor::right;
}

} // namespace

StepFunctionView::StepFunctionView(const Solution& s, ViewKind kind)
    : sol_(&s), kind_(kind) {}

std::pair<int, int> StepFunctionView::cell_j_range() const {
    const int J = sol_->grid().J();
    switch (kind_) {
    case ViewKind::r:
    case ViewKind::r_t:
    case ViewKind::m: return {1, J};
    case ViewKind::m1: return {1, J - 1};
    case ViewKind::q2: return {2, J};
    case ViewKind::l:
    case ViewKind::l_t:
    case ViewKind::l_prime:
    case ViewKind::r_prime:
    case ViewKind::m2: return {0, J - 1};
    case ViewKind::q1: return {0, J - 2};
    }
    return {0, J};
}

// Value on cell j at time band n (levels n and n+1); initial_row switches to
// the t = 0 definitions, which use level 0 only (the quotient views of the
// half-sum V keep using V^0).
double StepFunctionView::cell_value(int j, int n) const {
    const Solution& s = *sol_;
    const double dx = s.grid().dx();
    const double dt = s.grid().dt();
    const auto u = [&](int level, int idx) { return s.at(level, idx); };
    const auto v_half = [&](int idx) { return 0.5 * (u(n + 1, idx) + u(n, idx)); };
    switch (kind_) {
    case ViewKind::r:
    case ViewKind::l: return u(n + 1, j);
    // l_prime holds the backward quotient of the node right of the cell,
    // which is the same forward difference in left-anchored coordinates
    case ViewKind::r_prime:
    case ViewKind::l_prime: return (u(n + 1, j + 1) - u(n + 1, j)) / dx;
    case ViewKind::r_t:
    case ViewKind::l_t: return (u(n + 1, j) - u(n, j)) / dt;
    case ViewKind::m: return v_half(j);
    case ViewKind::m1: return (v_half(j + 1) - v_half(j - 1)) / (2.0 * dx);
    case ViewKind::m2: return (v_half(j + 1) - v_half(j)) / dx;
    case ViewKind::q1: {
        const double d0 = (v_half(j + 1) - v_half(j)) / dx;
        const double d1 = (v_half(j + 2) - v_half(j + 1)) / dx;
        return 0.5 * (3.0 * d0 - d1);
    }
    case ViewKind::q2: {
        const double d0 = (v_half(j) - v_half(j - 1)) / dx;
        const double d1 = (v_half(j - 1) - v_half(j - 2)) / dx;
        return 0.5 * (3.0 * d0 - d1);
    }
    }
    return 0.0;
}

double StepFunctionView::operator()(double x, double t) const {
    const Grid& g = sol_->grid();
    if (x < 0.0 || x > 1.0 || t < 0.0 || t > g.T())
        throw DomainError("step-function view evaluated outside the domain");
    const int J = g.J(), N = g.N();
    const double dx = g.dx(), dt = g.dt();

    const bool initial_row = (t == 0.0);
    int n = 0;
    if (!initial_row) {
        n = static_cast<int>(std::ceil(t / dt)) - 1;
        n = std::min(std::max(n, 0), N - 1);
    }

    const Anchor anchor = anchor_of(kind_);
    int cell;
    if (anchor == Anchor::right) {
        if (x == 0.0) {
            // explicit edge rows at x = 0
            switch (kind_) {
            case ViewKind::r: return initial_row ? sol_->at(0, 0) : sol_->at(n + 1, 0);
            case ViewKind::r_t: return initial_row ? 0.0 : (sol_->at(n + 1, 0) - sol_->at(n, 0)) / dt;
            case ViewKind::m:
                return initial_row ? sol_->at(0, 0)
                                   : 0.5 * (sol_->at(n + 1, 0) + sol_->at(n, 0));
            default: return 0.0;
            }
        }
        cell = static_cast<int>(std::ceil(x / dx));
        cell = std::min(std::max(cell, 1), J);
    } else if (anchor == Anchor::left) {
        if (x == 1.0) {
            switch (kind_) {
            case ViewKind::l: return initial_row ? sol_->at(0, J) : sol_->at(n + 1, J);
            case ViewKind::l_t: return initial_row ? 0.0 : (sol_->at(n + 1, J) - sol_->at(n, J)) / dt;
            default: return 0.0;
            }
        }
        cell = static_cast<int>(std::floor(x / dx));
        cell = std::min(std::max(cell, 0), J - 1);
    } else {
        if (x == 0.0) return 0.0;
        cell = static_cast<int>(std::ceil(x / dx)) - 1;
        cell = std::min(std::max(cell, 0), J - 1);
    }

    const auto [lo, hi] = cell_j_range();
    if (cell < lo || cell > hi) return 0.0;

    if (initial_row) {
        // t = 0 rows: value kinds drop to level 0; time quotients are not
        // defined there; the V-based quotients keep V^0.
        const auto u0 = [&](int idx) { return sol_->at(0, idx); };
        switch (kind_) {
        case ViewKind::r:
        case ViewKind::l:
        case ViewKind::m: return u0(cell);
        case ViewKind::r_prime:
        case ViewKind::l_prime: return (u0(cell + 1) - u0(cell)) / dx;
        case ViewKind::r_t:
        case ViewKind::l_t: return 0.0;
        default: return cell_value(cell, 0);
        }
    }
    return cell_value(cell, n);
}

double StepFunctionView::energy_norm_sq() const {
    const Grid& g = sol_->grid();
    const auto [lo, hi] = cell_j_range();
    const double weight = g.dx() * g.dt();
    double total = 0.0;
    for (int n = 0; n < g.N(); ++n)
        for (int j = lo; j <= hi; ++j) {
            const double v = cell_value(j, n);
            total += v * v * weight;
        }
    return total;
}

double BilinearInterpolant::operator()(double x, double t) const {
    const Grid& g = sol_->grid();
    if (x < 0.0 || x > 1.0 || t < 0.0 || t > g.T())
        throw DomainError("interpolant evaluated outside the domain");
    const int J = g.J(), N = g.N();
    int j = std::min(static_cast<int>(std::floor(x / g.dx())), J - 1);
    int n = std::min(static_cast<int>(std::floor(t / g.dt())), N - 1);
    j = std::max(j, 0);
    n = std::max(n, 0);
    const double xi = (x - g.x(j)) / g.dx();
    const double tau = (t - g.t(n)) / g.dt();
    return (1.0 - xi) * (1.0 - tau) * sol_->at(n, j) + xi * (1.0 - tau) * sol_->at(n, j + 1) +
           (1.0 - xi) * tau * sol_->at(n + 1, j) + xi * tau * sol_->at(n + 1, j + 1);
}

namespace {

double int_power_pair(int m) {
    // integral over [0,1] of x^m (1-x)^m = (m!)^2 / (2m+1)!
    double num = 1.0, den = 1.0;
    for (int i = 1; i <= m; ++i) num *= i;
    for (int i = 1; i <= 2 * m + 1; ++i) den *= i;
    return num * num / den;
}

} // namespace

TestFunction::TestFunction(int a, int b, double horizon)
    : a_(a), b_(b), horizon_(horizon) {
    if (a < 2 || b < 2) throw ConfigError("test functions require a, b >= 2");
    const double ix = int_power_pair(2 * a);
    const double it = std::pow(horizon, 4 * b + 1) * int_power_pair(2 * b);
    scale_ = 1.0 / std::sqrt(ix * it);
}

double TestFunction::value(double x, double t) const {
    return scale_ * std::pow(x * (1.0 - x), a_) * std::pow(t * (horizon_ - t), b_);
}

double TestFunction::dx(double x, double t) const {
    return scale_ * a_ * std::pow(x * (1.0 - x), a_ - 1) * (1.0 - 2.0 * x) *
           std::pow(t * (horizon_ - t), b_);
}

double TestFunction::dt(double x, double t) const {
    return scale_ * std::pow(x * (1.0 - x), a_) * b_ *
           std::pow(t * (horizon_ - t), b_ - 1) * (horizon_ - 2.0 * t);
}

std::vector<TestFunction> test_catalog(double horizon) {
    return {TestFunction(2, 2, horizon), TestFunction(3, 2, horizon),
            TestFunction(2, 3, horizon)};
}

double weak_residual(const Solution& s, const TestFunction& phi) {
    const Grid& g = s.grid();
    const Problem& p = s.problem();
    const StepFunctionView rt(s, ViewKind::r_t);
    const StepFunctionView m2(s, ViewKind::m2);
    const StepFunctionView m(s, ViewKind::m);
    constexpr double kOffset = 0.28867513459481288225457439025098;
    const double dx = g.dx(), dt = g.dt();
    double total = 0.0;
    for (int n = 0; n < g.N(); ++n) {
        const double tc = g.t(n) + 0.5 * dt;
        for (int j = 0; j < g.J(); ++j) {
            const double xc = g.x(j) + 0.5 * dx;
            double cell = 0.0;
            for (double t : {tc - kOffset * dt, tc + kOffset * dt})
                for (double x : {xc - kOffset * dx, xc + kOffset * dx}) {
                    const double grad = m2(x, t);
                    cell += rt(x, t) * phi.value(x, t) + p.A(x, t) * grad * phi.dx(x, t) -
                            p.B(x, t) * grad * phi.value(x, t) -
                            p.C(x, t) * m(x, t) * phi.value(x, t) -
                            p.F(x, t) * phi.value(x, t);
                }
            total += cell * 0.25 * dx * dt;
        }
    }
    return total;
}

namespace {

struct GapSample {
    double sup_sr = 0;
    double sup_sl = 0;
};

GapSample sample_interpolant_gaps(const Solution& s) {
    const BilinearInterpolant interp(s);
    const StepFunctionView r(s, ViewKind::r);
    const StepFunctionView l(s, ViewKind::l);
    const double T = s.grid().T();
    GapSample gap;
    for (int k = 0; k <= 100; ++k)
        for (int i = 0; i <= 100; ++i) {
            const double x = i / 100.0;
            const double t = T * k / 100.0;
            const double sv = interp(x, t);
            gap.sup_sr = std::max(gap.sup_sr, std::fabs(sv - r(x, t)));
            gap.sup_sl = std::max(gap.sup_sl, std::fabs(sv - l(x, t)));
        }
    return gap;
}

} // namespace

WeakIdentityReport weak_identity_checks(const Solution& s_coarse, const Solution& s_fine,
                         const std::vector<TestFunction>& phis) {
    const Grid& gc = s_coarse.grid();
    const Grid& gf = s_fine.grid();
    if (gf.J() != 2 * gc.J() || gf.N() != 2 * gc.N() || gf.T() != gc.T())
        throw ConfigError("weak-identity checks need the fine grid to halve both steps");

    WeakIdentityReport rep;
    for (const Solution* s : {&s_coarse, &s_fine}) {
        const bool coarse = (s == &s_coarse);
        const Grid& g = s->grid();
        const StepFunctionView r(*s, ViewKind::r);
        const StepFunctionView lp(*s, ViewKind::l_prime);
        const StepFunctionView rt(*s, ViewKind::r_t);
        const StepFunctionView q1(*s, ViewKind::q1);
        const StepFunctionView q2(*s, ViewKind::q2);
        for (const TestFunction& phi : phis) {
            const double wx = energy_inner(r, [&](double x, double t) { return phi.dx(x, t); }, g) +
                              energy_inner(lp, [&](double x, double t) { return phi.value(x, t); }, g);
            const double wt = energy_inner(r, [&](double x, double t) { return phi.dt(x, t); }, g) +
                              energy_inner(rt, [&](double x, double t) { return phi.value(x, t); }, g);
            const double qg = energy_inner(
                [&](double x, double t) { return q1(x, t) - q2(x, t); },
                [&](double x, double t) { return phi.value(x, t); }, g);
            (coarse ? rep.weak_dx_coarse : rep.weak_dx_fine).push_back(std::fabs(wx));
            (coarse ? rep.weak_dt_coarse : rep.weak_dt_fine).push_back(std::fabs(wt));
            (coarse ? rep.qgap_coarse : rep.qgap_fine).push_back(std::fabs(qg));
        }
        const GapSample gap = sample_interpolant_gaps(*s);
        const DiagnosticsReport diag = energy_series(*s);
        const double bound = diag.c6p * (std::sqrt(g.dx()) + std::pow(g.dt(), 0.25));
        if (coarse) {
            rep.sup_sr_coarse = gap.sup_sr;
            rep.sup_sl_coarse = gap.sup_sl;
            rep.gap_bound_coarse = bound;
        } else {
            rep.sup_sr_fine = gap.sup_sr;
            rep.sup_sl_fine = gap.sup_sl;
            rep.gap_bound_fine = bound;
        }
        // absolute floor covers pure rounding noise when the moduli vanish
        const double tol = bound * 1e-12 + 1e-12;
        if (gap.sup_sr > bound + tol || gap.sup_sl > bound + tol)
            rep.gaps_within_bound = false;
    }
    return rep;
}

ConvergenceReport refinement_study(const Problem& p,
                                   const std::vector<std::pair<int, int>>& levels,
                                   double horizon, double lambda, bool strict) {
    if (levels.empty()) throw ConfigError("refinement study needs at least one level");
    for (std::size_t k = 1; k < levels.size(); ++k) {
        const auto [jc, nc] = levels[k - 1];
        const auto [jf, nf] = levels[k];
        if (jf <= jc || nf <= nc || jf % jc != 0 || nf % nc != 0)
            throw ConfigError("levels must be nested and strictly refining");
    }

    ConvergenceReport rep;
    const auto phis = test_catalog(horizon);
    for (const auto& [J, N] : levels) {
        const Grid g(J, N, horizon, lambda);
        const Solution s = solve(p, g, {strict});
        ConvergenceLevel level;
        level.J = J;
        level.N = N;
        if (p.exact) {
            const auto& exact = *p.exact;
            const GridFunction diff(
                [&] {
                    std::vector<double> d(static_cast<std::size_t>(J + 1));
                    for (int j = 0; j <= J; ++j)
                        d[static_cast<std::size_t>(j)] = s.at(N, j) - exact(g.x(j), horizon);
                    return d;
                }(),
                g.dx());
            level.l2_error = norm(diff);
        }
        for (const TestFunction& phi : phis)
            level.weak_residuals.push_back(weak_residual(s, phi));
        const HolderModuli hm = holder_moduli(s);
        level.cx = hm.cx;
        level.ct = hm.ct;
        rep.levels.push_back(std::move(level));
    }
    for (std::size_t k = 1; k < rep.levels.size(); ++k) {
        const double ec = rep.levels[k - 1].l2_error;
        const double ef = rep.levels[k].l2_error;
        const double ratio = static_cast<double>(rep.levels[k].J) / rep.levels[k - 1].J;
        if (std::isfinite(ec) && std::isfinite(ef) && ef > 0.0)
            rep.levels[k].order = std::log(ec / ef) / std::log(ratio);
    }
    return rep;
}

} // namespace degen
