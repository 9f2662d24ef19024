#pragma once

#include <limits>
#include <span>
#include <vector>

#include "degen/coefficients.hpp"
#include "degen/grid.hpp"

namespace degen {

/// Pentadiagonal matrix (two bands each side) in row-major band storage.
/// Two extra superdiagonal slots absorb fill from partial pivoting, so row i
/// stores columns i-2 .. i+4.
class BandMatrix {
public:
    explicit BandMatrix(int n);

    int size() const { return n_; }

    /// Entry (i, j); zero outside the stored band, writable inside it.
    double get(int i, int j) const;
    void set(int i, int j, double v);

    /// y = M x over the assembled band (columns i-2 .. i+2).
    std::vector<double> apply(std::span<const double> x) const;

    /// Gaussian elimination with partial pivoting confined to the band;
    /// destroys the matrix. step_index only labels error messages.
    std::vector<double> solve(std::vector<double> rhs, int step_index) &&;

private:
    static constexpr int kLower = 2;
    static constexpr int kUpperStored = 4; // 2 assembled + 2 pivot fill
    static constexpr int kWidth = kLower + kUpperStored + 1;

    double& slot(int i, int j);
    int n_;
    std::vector<double> ab_;
};

/// One implicit step: matrix acting on the next time level plus the
/// right-hand side assembled from the current level, boundary data and
/// source.
struct StepSystem {
    BandMatrix matrix;
    std::vector<double> rhs;
    int step_index;
    double dx;
};

/// Endpoint stability conditions and the time-step restriction estimate.
struct StabilityReport {
    BoundaryCase boundary_case = BoundaryCase::B0NonnegB1Nonpos;
    bool cond_left = true;
    bool cond_right = true;
    double c2 = 0.0; // Lipschitz estimate of dA/dx in x
    double c3 = 0.0; // Lipschitz estimate of B in x
    double c4 = 0.0; // Lipschitz estimate of theta * B in x
    double c5_estimate = 0.0;
    double dt_max = std::numeric_limits<double>::infinity();
    bool dt_ok = true;

    bool ok() const { return cond_left && cond_right && dt_ok; }
};

/// Nodal values at all time levels, row n = 0..N, column j = 0..J.
class Solution {
public:
    Solution(Problem problem, Grid grid, std::vector<double> values,
             StabilityReport stability);

    const Problem& problem() const { return problem_; }
    const Grid& grid() const { return grid_; }
    const StabilityReport& stability() const { return stability_; }

    double at(int n, int j) const {
        return values_[static_cast<std::size_t>(n) * (grid_.J() + 1) +
                       static_cast<std::size_t>(j)];
    }
    std::span<const double> row_span(int n) const {
        return {values_.data() + static_cast<std::size_t>(n) * (grid_.J() + 1),
                static_cast<std::size_t>(grid_.J() + 1)};
    }
    GridFunction row(int n) const;

private:
    Problem problem_;
    Grid grid_;
    std::vector<double> values_;
    StabilityReport stability_;
};

/// Evaluates the endpoint conditions for the problem's boundary case on 64
/// time samples and estimates the Lipschitz constants on a 512-point
/// lattice; c5 = 7 c2 / 16 + 2 c3 + 2 c4 and dt_max = 1 / c5.
StabilityReport check_stability(const Problem& p, const Grid& g);

/// Builds the banded system for the step u^n -> u^{n+1}.
StepSystem assemble_step(const Problem& p, const Grid& g, int n, const GridFunction& u_n);

/// Solves the assembled system. The residual per row is verified against
/// 1e-10 * (1 + max |rhs|); failures raise SolverError with the step index.
GridFunction step(const StepSystem& sys);

struct SolveOptions {
    bool strict = true; // refuse to run when check_stability fails
};

/// March the scheme from the initial profile to T. Throws StabilityRefusal
/// in strict mode when the stability report fails, SolverError on numeric
/// breakdown (with the offending node and step).
Solution solve(const Problem& p, const Grid& g, const SolveOptions& opt = {});

} // namespace degen
