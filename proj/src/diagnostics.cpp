#include "degen/diagnostics.hpp"

#include <cmath>
#include <limits>

#include "degen/errors.hpp"
#include "degen/kernels.hpp"

namespace degen {

DiagnosticsReport energy_series(const Solution& s) {
    const Grid& g = s.grid();
    const int N = g.N();
    const double dt = g.dt();
    const double dx = g.dx();

    DiagnosticsReport rep;
    rep.c5_estimate = s.stability().c5_estimate;
    rep.norm_u.reserve(static_cast<std::size_t>(N + 1));
    rep.norm_dplus.reserve(static_cast<std::size_t>(N + 1));
    for (int n = 0; n <= N; ++n) {
        const auto row = s.row_span(n);
        rep.norm_u.push_back(std::sqrt(kernels::sumsq(row) * dx));
        rep.norm_dplus.push_back(std::sqrt(kernels::diff_sumsq(row) / dx));
        rep.c1 = std::max(rep.c1, rep.norm_u.back());
        rep.c6 = std::max(rep.c6, rep.norm_dplus.back());
        rep.c4p = std::max(rep.c4p, kernels::max_abs(row));
        rep.cx = std::max(rep.cx, kernels::max_abs_adjdiff(row) / std::sqrt(dx));
    }
    for (int n = 0; n < N; ++n) {
        const auto cur = s.row_span(n);
        const auto nxt = s.row_span(n + 1);
        // sum_j ((U^{n+1}_j - U^n_j)/dt)^2 dx dt = sub_sumsq * dx / dt
        rep.time_quotient_energy += kernels::sub_sumsq(nxt, cur) * dx / dt;
        rep.c5p = std::max(rep.c5p,
                           kernels::max_abs_diff(nxt, cur) / std::pow(dt, 0.25));
    }
    rep.c11 = rep.time_quotient_energy;
    rep.c6p = std::max(rep.cx, rep.c5p);

    // gradient-ratio monitor: ||D+ U^{n+1}||^2 - ||D+ U^n||^2 must stay
    // below c5 dt ||D+ V^n||^2 (V = U^{n+1} + U^n)
    for (int n = 0; n < N; ++n) {
        const auto cur = s.row_span(n);
        const auto nxt = s.row_span(n + 1);
        const double lhs = kernels::diff_sumsq(nxt) / dx - kernels::diff_sumsq(cur) / dx;
        std::vector<double> v(cur.size());
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = nxt[j] + cur[j];
        const double grad_v = kernels::diff_sumsq(v) / dx;
        const double rhs = rep.c5_estimate * dt * grad_v;
        if (lhs > rhs + 1e-12 * (1.0 + std::fabs(rhs)))
            rep.ratio_violations.push_back(n);
    }
    return rep;
}

GronwallResult gronwall_check(const Problem& p, const Solution& s1, const Solution& s2) {
    const Grid& g = s1.grid();
    if (s2.grid().J() != g.J() || s2.grid().N() != g.N() || s2.grid().T() != g.T())
        throw PreconditionError("the two runs must share one grid");
    for (double t : time_samples(g.T()))
        for (double x : {0.0, 0.25, 0.5, 0.75, 1.0})
            if (p.C(x, t) != 0.0)
                throw PreconditionError("the data-stability estimate requires C == 0");

    const auto ts = time_samples(g.T());
    const double nb = [&] {
        // max |dB/dx| over a 512 x 64 sample lattice, by difference quotients
        constexpr int kPoints = 512;
        const double h = 1.0 / (kPoints - 1);
        double m = 0.0;
        for (double t : ts) {
            double prev = p.B(0.0, t);
            for (int i = 1; i < kPoints; ++i) {
                const double cur = p.B(i * h, t);
                m = std::max(m, std::fabs(cur - prev) / h);
                prev = cur;
            }
        }
        return m;
    }();
    double n1 = 0.0, n2 = 0.0;
    for (double t : ts) {
        n1 = std::max(n1, p.B(1.0, t));
        n2 = std::max(n2, -p.B(0.0, t));
    }

    const int N = g.N(), J = g.J();
    const double dt = g.dt(), dx = g.dx();
    const auto d_norm_sq = [&](int n) {
        return kernels::sub_sumsq(s1.row_span(n), s2.row_span(n)) * dx;
    };
    const auto boundary_term = [&](int n) {
        const double d1 = s1.at(n, J) - s2.at(n, J);
        const double d0 = s1.at(n, 0) - s2.at(n, 0);
        return n1 * d1 * d1 + n2 * d0 * d0;
    };

    GronwallResult res;
    const double f_norm_sq = d_norm_sq(0);
    double integral = 0.0;
    for (int n = 0; n <= N; ++n) {
        if (n > 0) integral += 0.5 * dt * (boundary_term(n - 1) + boundary_term(n));
        const double lhs = d_norm_sq(n);
        const double rhs = std::exp((nb + 1.0) * g.t(n)) * (f_norm_sq + integral);
        double slack;
        if (rhs > 0.0)
            slack = (lhs - rhs) / rhs;
        else
            slack = lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        res.max_slack = std::max(res.max_slack, slack);
        if (!(lhs <= 1.05 * rhs || lhs == 0.0)) res.holds = false;
    }
    return res;
}

QuadraticFormGap quadratic_form_gap(const QuadraticFormProbe& probe) {
    const double th = probe.theta;
    const double y1 = probe.y[0], y2 = probe.y[1], y3 = probe.y[2];
    const double q1 = (1.0 - th) * y1 * y1 - (1.0 + 2.0 * th) * y2 * y2 +
                      3.0 * th * y1 * y2 - th * y1 * y3 + th * y2 * y3;
    const double q2 = (1.0 - 0.5 * th) * y1 * y1 - y2 * y2 + 0.5 * th * y3 * y3 +
                      th * y1 * y2 - th * y2 * y3;
    return {q1, q2};
}

HolderModuli holder_moduli(const Solution& s) {
    const Grid& g = s.grid();
    HolderModuli m;
    const double sqrt_dx = std::sqrt(g.dx());
    const double dt_quarter = std::pow(g.dt(), 0.25);
    for (int n = 0; n <= g.N(); ++n)
        m.cx = std::max(m.cx, kernels::max_abs_adjdiff(s.row_span(n)) / sqrt_dx);
    for (int n = 0; n < g.N(); ++n)
        m.ct = std::max(m.ct, kernels::max_abs_diff(s.row_span(n + 1), s.row_span(n)) /
                                  dt_quarter);
    return m;
}

double boundary_ode_check(const Solution& s, Endpoint e) {
    const Grid& g = s.grid();
    const Problem& p = s.problem();
    const double xe = (e == Endpoint::left) ? 0.0 : 1.0;
    const int je = (e == Endpoint::left) ? 0 : g.J();
    for (double t : time_samples(g.T()))
        if (std::fabs(p.A(xe, t)) > 1e-14 || std::fabs(p.a(xe, t)) > 1e-14 ||
            std::fabs(p.B(xe, t)) > 1e-14)
            throw PreconditionError("endpoint is not fully degenerate (needs A = dA/dx = B = 0)");

    // cumulative integral of C(xe, t) by Simpson's rule per step; exact for
    // C constant in t
    const double u0 = p.f(xe);
    double integral = 0.0;
    double max_dev = std::fabs(s.at(0, je) - u0);
    for (int n = 1; n <= g.N(); ++n) {
        const double lo = g.t(n - 1), hi = g.t(n);
        integral += (hi - lo) / 6.0 *
                    (p.C(xe, lo) + 4.0 * p.C(xe, 0.5 * (lo + hi)) + p.C(xe, hi));
        max_dev = std::max(max_dev, std::fabs(s.at(n, je) - u0 * std::exp(integral)));
    }
    return max_dev;
}

} // namespace degen
