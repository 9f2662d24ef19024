#include "degen/grid.hpp"

#include <cmath>
#include <string>

#include "degen/errors.hpp"
#include "degen/kernels.hpp"

namespace degen {

Grid::Grid(int j_count, int n_count, double horizon, double lambda)
    : j_(j_count), n_(n_count), horizon_(horizon), lambda_(lambda) {
    if (j_ < 4) throw ConfigError("grid requires J >= 4, got J=" + std::to_string(j_));
    if (n_ < 1) throw ConfigError("grid requires N >= 1, got N=" + std::to_string(n_));
    if (!(horizon_ > 0.0)) throw ConfigError("grid requires T > 0");
    if (!(lambda_ > 0.0 && lambda_ < 0.5))
        throw ConfigError("blend width must satisfy 0 < lambda < 1/2");
    if (lambda_ < 2.0 * dx())
        throw ConfigError("blend width must satisfy lambda >= 2*dx; got lambda=" +
                          std::to_string(lambda_) + ", dx=" + std::to_string(dx()));
}

GridFunction::GridFunction(std::vector<double> values, double dx)
    : values_(std::move(values)), dx_(dx) {
    if (values_.empty()) throw ShapeError("grid function must hold at least one value");
    if (!(dx_ > 0.0)) throw ShapeError("grid function needs positive dx");
    for (double v : values_)
        if (!std::isfinite(v)) throw ShapeError("grid function holds a non-finite value");
}

GridFunction GridFunction::zeros(int size, double dx) {
    return GridFunction(std::vector<double>(static_cast<std::size_t>(size), 0.0), dx);
}

GridFunction GridFunction::sample(const Grid& g, const std::function<double(double)>& f) {
    std::vector<double> v(static_cast<std::size_t>(g.J() + 1));
    for (int j = 0; j <= g.J(); ++j) v[static_cast<std::size_t>(j)] = f(g.x(j));
    return GridFunction(std::move(v), g.dx());
}

namespace {
void require_conforming(const GridFunction& u, const GridFunction& v) {
    if (u.size() != v.size())
        throw ShapeError("grid functions differ in length: " + std::to_string(u.size()) +
                         " vs " + std::to_string(v.size()));
    if (u.dx() != v.dx()) throw ShapeError("grid functions differ in dx");
}
} // namespace

double inner(const GridFunction& u, const GridFunction& v) {
    require_conforming(u, v);
    return kernels::dot(u.span(), v.span()) * u.dx();
}

double norm(const GridFunction& u) { return std::sqrt(kernels::sumsq(u.span()) * u.dx()); }

double dplus_norm(const GridFunction& u) {
    // sum_j ((u_{j+1}-u_j)/dx)^2 dx = (sum of squared adjacent diffs) / dx
    return std::sqrt(kernels::diff_sumsq(u.span()) / u.dx());
}

double diff(DiffKind kind, const GridFunction& u, int j) {
    const int last = u.size() - 1;
    const double dx = u.dx();
    const auto fwd = [&](int i) { return (u[i + 1] - u[i]) / dx; };
    const auto bwd = [&](int i) { return (u[i] - u[i - 1]) / dx; };
    const auto check = [&](bool ok) {
        if (!ok)
            throw IndexError("difference stencil out of range at j=" + std::to_string(j));
    };
    switch (kind) {
    case DiffKind::forward:
        check(j >= 0 && j <= last - 1);
        return fwd(j);
    case DiffKind::backward:
        check(j >= 1 && j <= last);
        return bwd(j);
    case DiffKind::central:
        check(j >= 1 && j <= last - 1);
        return 0.5 * (fwd(j) + bwd(j));
    case DiffKind::forward2:
        check(j >= 0 && j <= last - 2);
        return 0.5 * (3.0 * fwd(j) - fwd(j + 1));
    case DiffKind::backward2:
        check(j >= 2 && j <= last);
        return 0.5 * (3.0 * bwd(j) - bwd(j - 1));
    }
    throw IndexError("unknown difference kind");
}

SupBound sup_bound_check(const GridFunction& v) {
    const double m = kernels::max_abs(v.span());
    const double lhs = m * m;
    const double n = norm(v);
    const double rhs = n * (2.0 * dplus_norm(v) + n);
    return {lhs, rhs, lhs <= rhs + 1e-12 * rhs};
}

} // namespace degen
