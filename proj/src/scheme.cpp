#include "degen/scheme.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "degen/errors.hpp"

namespace degen {

BandMatrix::BandMatrix(int n) : n_(n), ab_(static_cast<std::size_t>(n) * kWidth, 0.0) {}

double& BandMatrix::slot(int i, int j) {
    return ab_[static_cast<std::size_t>(i) * kWidth + (j - i + kLower)];
}

double BandMatrix::get(int i, int j) const {
    if (j < 0 || j >= n_ || j - i < -kLower || j - i > kUpperStored) return 0.0;
    return ab_[static_cast<std::size_t>(i) * kWidth + (j - i + kLower)];
}

void BandMatrix::set(int i, int j, double v) {
    if (j - i < -kLower || j - i > kUpperStored)
        throw IndexError("band entry (" + std::to_string(i) + "," + std::to_string(j) +
                         ") outside stored band");
    slot(i, j) = v;
}

std::vector<double> BandMatrix::apply(std::span<const double> x) const {
    std::vector<double> y(static_cast<std::size_t>(n_), 0.0);
    for (int i = 0; i < n_; ++i) {
        double s = 0.0;
        const int lo = std::max(0, i - kLower);
        const int hi = std::min(n_ - 1, i + kLower);
        for (int j = lo; j <= hi; ++j) s += get(i, j) * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = s;
    }
    return y;
}

std::vector<double> BandMatrix::solve(std::vector<double> rhs, int step_index) && {
    const int n = n_;
    for (int k = 0; k < n; ++k) {
        const int last_row = std::min(n - 1, k + kLower);
        int piv = k;
        double best = std::fabs(slot(k, k));
        for (int i = k + 1; i <= last_row; ++i) {
            const double cand = std::fabs(slot(i, k));
            if (cand > best) {
                best = cand;
                piv = i;
            }
        }
        if (!(best >= 1e-300))
            throw SolverError("numerically singular system at column " + std::to_string(k) +
                              " (step " + std::to_string(step_index) + ")");
        const int last_col = std::min(n - 1, k + kUpperStored);
        if (piv != k) {
            for (int j = k; j <= last_col; ++j) std::swap(slot(k, j), slot(piv, j));
            std::swap(rhs[static_cast<std::size_t>(k)], rhs[static_cast<std::size_t>(piv)]);
        }
        const double pivot = slot(k, k);
        for (int i = k + 1; i <= last_row; ++i) {
            const double m = slot(i, k) / pivot;
            if (m == 0.0) continue;
            for (int j = k + 1; j <= last_col; ++j) slot(i, j) -= m * slot(k, j);
            rhs[static_cast<std::size_t>(i)] -= m * rhs[static_cast<std::size_t>(k)];
        }
    }
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double s = rhs[static_cast<std::size_t>(i)];
        const int last_col = std::min(n - 1, i + kUpperStored);
        for (int j = i + 1; j <= last_col; ++j) s -= slot(i, j) * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = s / slot(i, i);
    }
    return x;
}

Solution::Solution(Problem problem, Grid grid, std::vector<double> values,
                   StabilityReport stability)
    : problem_(std::move(problem)), grid_(grid), values_(std::move(values)),
      stability_(stability) {
    if (values_.size() !=
        static_cast<std::size_t>(grid_.N() + 1) * static_cast<std::size_t>(grid_.J() + 1))
        throw ShapeError("solution array does not match the grid");
}

GridFunction Solution::row(int n) const {
    const auto s = row_span(n);
    return GridFunction(std::vector<double>(s.begin(), s.end()), grid_.dx());
}

namespace {

double lipschitz_estimate_x(const CoefficientField& field, std::span<const double> ts) {
    constexpr int kPoints = 512;
    const double h = 1.0 / (kPoints - 1);
    double m = 0.0;
    for (double t : ts) {
        double prev = field(0.0, t);
        for (int i = 1; i < kPoints; ++i) {
            const double cur = field(i * h, t);
            m = std::max(m, std::fabs(cur - prev) / h);
            prev = cur;
        }
    }
    return m;
}

} // namespace

StabilityReport check_stability(const Problem& p, const Grid& g) {
    StabilityReport rep;
    rep.boundary_case = p.boundary_case;

    const auto ts = time_samples(g.T());
    const ThetaBlend blend(g.lambda());
    const auto B = p.B;
    const CoefficientField theta_b = CoefficientField::closed_form(
        [B, blend](double x, double t) { return blend.value(x) * B(x, t); });
    rep.c2 = lipschitz_estimate_x(p.a, ts);
    rep.c3 = lipschitz_estimate_x(p.B, ts);
    rep.c4 = lipschitz_estimate_x(theta_b, ts);
    rep.c5_estimate = 7.0 / 16.0 * rep.c2 + 2.0 * rep.c3 + 2.0 * rep.c4;
    rep.dt_max = rep.c5_estimate > 0.0 ? 1.0 / rep.c5_estimate
                                       : std::numeric_limits<double>::infinity();
    rep.dt_ok = g.dt() < rep.dt_max;

    const auto tol = [](double a, double b) { return 1e-12 * (1.0 + std::fabs(a) + std::fabs(b)); };
    const bool left_one_sided = !needs_dirichlet_left(p.boundary_case);
    const bool right_one_sided = !needs_dirichlet_right(p.boundary_case);
    for (double t : ts) {
        const double b0 = p.B(0.0, t), b1 = p.B(1.0, t);
        const double a0 = p.a(0.0, t), a1 = p.a(1.0, t);
        if (left_one_sided && !(b0 >= a0 / 7.0 - tol(b0, a0))) rep.cond_left = false;
        switch (p.boundary_case) {
        case BoundaryCase::B0NonnegB1Nonpos:
            if (right_one_sided && !(b1 <= a1 / 7.0 + tol(b1, a1))) rep.cond_right = false;
            break;
        case BoundaryCase::B0NonnegB1Pos:
            if (!(a1 + b1 >= -tol(a1, b1))) rep.cond_right = false;
            break;
        case BoundaryCase::B0NegB1Nonpos:
            if (!(b1 <= a1 / 7.0 + tol(b1, a1)) || !(a0 + b0 <= tol(a0, b0)))
                rep.cond_right = false;
            break;
        case BoundaryCase::B0NegB1Pos:
            break;
        }
    }
    return rep;
}

namespace {

// L-stencil of one row, offsets -2..+2 relative to the row index.
struct RowStencil {
    double c[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
    double& at(int offset) { return c[offset + 2]; }
};

RowStencil interior_stencil(const Problem& p, const ThetaBlend& blend, double dx, double x,
                            double t_mid, int j, int j_max) {
    RowStencil s;
    const double a_minus = p.A(x - 0.5 * dx, t_mid);
    const double a_plus = p.A(x + 0.5 * dx, t_mid);
    const double inv2dx2 = 0.5 / (dx * dx);
    s.at(-1) += a_minus * inv2dx2;
    s.at(0) -= (a_plus + a_minus) * inv2dx2;
    s.at(+1) += a_plus * inv2dx2;

    const double b = p.B(x, t_mid);
    // The one-sided branch reaches two nodes upwind; where that leaves the
    // grid (only j=1 with b<0, since theta vanishes within 2*dx of x=1) the
    // node falls back to the central quotient, which stays second order.
    const bool wide_fits = b >= 0.0 ? (j + 2 <= j_max) : (j - 2 >= 0);
    const double theta = wide_fits ? blend.value(x) : 0.0;
    const double central = 0.25 * (1.0 - theta) * b / dx;
    s.at(-1) -= central;
    s.at(+1) += central;
    if (theta != 0.0) {
        const double q = 0.25 * theta * b / dx;
        if (b >= 0.0) {
            s.at(0) -= 3.0 * q;
            s.at(+1) += 4.0 * q;
            s.at(+2) -= q;
        } else {
            s.at(0) += 3.0 * q;
            s.at(-1) -= 4.0 * q;
            s.at(-2) += q;
        }
    }

    s.at(0) += 0.5 * p.C(x, t_mid);
    return s;
}

RowStencil left_boundary_stencil(const Problem& p, double dx, double t_mid) {
    RowStencil s;
    const double a0 = p.a(0.0, t_mid);
    const double b0 = p.B(0.0, t_mid);
    // (1/2) a Dp V_0 + (1/4) b (3 Dp V_0 - Dp V_1) + (1/2) c V_0
    s.at(0) -= 0.5 * a0 / dx;
    s.at(+1) += 0.5 * a0 / dx;
    s.at(0) -= 0.75 * b0 / dx;
    s.at(+1) += b0 / dx;
    s.at(+2) -= 0.25 * b0 / dx;
    s.at(0) += 0.5 * p.C(0.0, t_mid);
    return s;
}

RowStencil right_boundary_stencil(const Problem& p, double dx, double t_mid) {
    RowStencil s;
    const double a1 = p.a(1.0, t_mid);
    const double b1 = p.B(1.0, t_mid);
    // mirror of the left row with backward quotients
    s.at(0) += 0.5 * a1 / dx;
    s.at(-1) -= 0.5 * a1 / dx;
    s.at(0) += 0.75 * b1 / dx;
    s.at(-1) -= b1 / dx;
    s.at(-2) += 0.25 * b1 / dx;
    s.at(0) += 0.5 * p.C(1.0, t_mid);
    return s;
}

} // namespace

StepSystem assemble_step(const Problem& p, const Grid& g, int n, const GridFunction& u_n) {
    if (n < 0 || n > g.N() - 1)
        throw IndexError("step index " + std::to_string(n) + " outside 0.." +
                         std::to_string(g.N() - 1));
    if (u_n.size() != g.J() + 1)
        throw ShapeError("current level does not match the grid");
    const bool dirichlet_left = needs_dirichlet_left(p.boundary_case);
    const bool dirichlet_right = needs_dirichlet_right(p.boundary_case);
    if (dirichlet_left && !p.dirichlet_left)
        throw ConfigError("case " + to_string(p.boundary_case) + " requires g0(t)");
    if (dirichlet_right && !p.dirichlet_right)
        throw ConfigError("case " + to_string(p.boundary_case) + " requires g1(t)");

    const int J = g.J();
    const double dx = g.dx();
    const double dt = g.dt();
    const double t_mid = g.t(n) + 0.5 * dt;
    const ThetaBlend blend(g.lambda());

    StepSystem sys{BandMatrix(J + 1), std::vector<double>(static_cast<std::size_t>(J + 1), 0.0),
                   n, dx};

    for (int j = 0; j <= J; ++j) {
        if ((j == 0 && dirichlet_left) || (j == J && dirichlet_right)) {
            sys.matrix.set(j, j, 1.0);
            const auto& gfun = (j == 0) ? *p.dirichlet_left : *p.dirichlet_right;
            sys.rhs[static_cast<std::size_t>(j)] = gfun(g.t(n + 1));
            continue;
        }
        RowStencil st;
        if (j == 0) {
            st = left_boundary_stencil(p, dx, t_mid);
        } else if (j == J) {
            st = right_boundary_stencil(p, dx, t_mid);
        } else {
            st = interior_stencil(p, blend, dx, g.x(j), t_mid, j, J);
        }
        double rhs = u_n[j] / dt + p.F(g.x(j), t_mid);
        for (int o = -2; o <= 2; ++o) {
            const int col = j + o;
            if (col < 0 || col > J) continue;
            const double c = st.at(o);
            sys.matrix.set(j, col, (o == 0 ? 1.0 / dt : 0.0) - c);
            rhs += c * u_n[col];
        }
        sys.rhs[static_cast<std::size_t>(j)] = rhs;
    }
    // Move the known Dirichlet values out of the neighboring rows. The
    // identity rows then never participate in pivoting, so the boundary
    // values hold exactly after the solve.
    if (dirichlet_left) {
        const double g0 = sys.rhs[0];
        for (int i = 1; i <= 2; ++i) {
            const double coef = sys.matrix.get(i, 0);
            if (coef != 0.0) {
                sys.rhs[static_cast<std::size_t>(i)] -= coef * g0;
                sys.matrix.set(i, 0, 0.0);
            }
        }
    }
    if (dirichlet_right) {
        const double g1 = sys.rhs[static_cast<std::size_t>(J)];
        for (int i = J - 2; i <= J - 1; ++i) {
            const double coef = sys.matrix.get(i, J);
            if (coef != 0.0) {
                sys.rhs[static_cast<std::size_t>(i)] -= coef * g1;
                sys.matrix.set(i, J, 0.0);
            }
        }
    }
    return sys;
}

GridFunction step(const StepSystem& sys) {
    BandMatrix factors = sys.matrix;
    std::vector<double> x = std::move(factors).solve(sys.rhs, sys.step_index);
    for (std::size_t j = 0; j < x.size(); ++j)
        if (!std::isfinite(x[j]))
            throw SolverError("non-finite solution value at (j=" + std::to_string(j) +
                              ", n=" + std::to_string(sys.step_index + 1) + ")");
    const auto y = sys.matrix.apply(x);
    double resid = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        resid = std::max(resid, std::fabs(y[i] - sys.rhs[i]));
        scale = std::max(scale, std::fabs(sys.rhs[i]));
    }
    if (!(resid <= 1e-10 * (1.0 + scale)))
        throw SolverError("linear solve residual " + std::to_string(resid) +
                          " too large at step " + std::to_string(sys.step_index));
    return GridFunction(std::move(x), sys.dx);
}

Solution solve(const Problem& p, const Grid& g, const SolveOptions& opt) {
    validate_problem(p, g.T());
    const StabilityReport rep = check_stability(p, g);
    if (opt.strict && !rep.ok()) {
        std::string why;
        if (!rep.cond_left) why += " left endpoint condition fails;";
        if (!rep.cond_right) why += " right endpoint condition fails;";
        if (!rep.dt_ok)
            why += " dt=" + std::to_string(g.dt()) + " >= dt_max=" + std::to_string(rep.dt_max) +
                   ";";
        throw StabilityRefusal("strict mode refused to run:" + why);
    }

    const int J = g.J(), N = g.N();
    std::vector<double> values(static_cast<std::size_t>(N + 1) * (J + 1));
    for (int j = 0; j <= J; ++j) values[static_cast<std::size_t>(j)] = p.f(g.x(j));
    GridFunction level(std::vector<double>(values.begin(), values.begin() + J + 1), g.dx());

    for (int n = 0; n < N; ++n) {
        GridFunction next = step(assemble_step(p, g, n, level));
        std::copy(next.values().begin(), next.values().end(),
                  values.begin() + static_cast<std::size_t>(n + 1) * (J + 1));
        level = std::move(next);
    }
    return Solution(p, g, std::move(values), rep);
}

} // namespace degen
