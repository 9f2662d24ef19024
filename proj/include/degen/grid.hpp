#pragma once

#include <functional>
#include <span>
#include <vector>

namespace degen {

/// Uniform space-time mesh on [0,1] x [0,T] with dx = 1/J and dt = T/N,
/// carrying the advection-blend half-width lambda it was built for.
class Grid {
public:
    Grid(int j_count, int n_count, double horizon, double lambda = 0.25);

    int J() const { return j_; }
    int N() const { return n_; }
    double T() const { return horizon_; }
    double lambda() const { return lambda_; }
    double dx() const { return 1.0 / j_; }
    double dt() const { return horizon_ / n_; }
    double x(int j) const { return j * dx(); }
    double t(int n) const { return n * dt(); }

private:
    int j_;
    int n_;
    double horizon_;
    double lambda_;
};

/// One time level of nodal values, j = 0..J, with its spacing. Values are
/// validated finite at construction and immutable afterwards.
class GridFunction {
public:
    GridFunction(std::vector<double> values, double dx);

    static GridFunction zeros(int size, double dx);
    static GridFunction sample(const Grid& g, const std::function<double(double)>& f);

    int size() const { return static_cast<int>(values_.size()); }
    double dx() const { return dx_; }
    double operator[](int j) const { return values_[static_cast<std::size_t>(j)]; }
    std::span<const double> span() const { return values_; }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> values_;
    double dx_;
};

/// <u,v> = sum_{j=0}^{J} u_j v_j dx; endpoint terms carry full dx weight.
double inner(const GridFunction& u, const GridFunction& v);
double norm(const GridFunction& u);

/// ||D+ u||: forward quotients j = 0..J-1, weight dx. Equal, term by term,
/// to the backward-quotient sum over j = 1..J.
double dplus_norm(const GridFunction& u);

enum class DiffKind { forward, backward, central, forward2, backward2 };

/// Difference quotient of u at node j. forward2/backward2 are the one-sided
/// three-point second-order quotients (3 D+ u_j - D+ u_{j+1})/2 and
/// (3 D- u_j - D- u_{j-1})/2.
double diff(DiffKind kind, const GridFunction& u, int j);

struct SupBound {
    double lhs;  // max_j |v_j|^2
    double rhs;  // ||v|| (2 ||D+ v|| + ||v||)
    bool holds;
};

/// Discrete sup bound: max_j |v_j|^2 <= ||v|| (2||D+ v|| + ||v||).
SupBound sup_bound_check(const GridFunction& v);

} // namespace degen
