#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace degen::kernels {

// Reduction kernels over contiguous double arrays. These are the arithmetic
// inner loops behind grid norms, inner products and the diagnostic sweeps.
// A scalar reference implementation always exists; wider variants (AVX2)
// are selected once at startup from CPU features and can be overridden with
// force_backend() or the DEGEN_KERNELS environment variable.
//
// SIMD variants reassociate the reduction, so results may differ from the
// scalar path by a few ulps; the equivalence tests pin that down.
struct Backend {
    const char* name;
    double (*dot)(const double*, const double*, std::size_t);
    double (*sumsq)(const double*, std::size_t);
    // sum over i of (a[i] - b[i])^2
    double (*sub_sumsq)(const double*, const double*, std::size_t);
    // sum over i < n-1 of (a[i+1] - a[i])^2
    double (*diff_sumsq)(const double*, std::size_t);
    double (*max_abs)(const double*, std::size_t);
    double (*max_abs_diff)(const double*, const double*, std::size_t);
    // max over i < n-1 of |a[i+1] - a[i]|
    double (*max_abs_adjdiff)(const double*, std::size_t);
};

const Backend& scalar_backend();
const Backend* avx2_backend(); // nullptr when not compiled in or unsupported

/// Currently active backend.
const Backend& active();

/// Select "scalar", "avx2" or "auto". Throws std::invalid_argument on an
/// unknown name or when forcing an unavailable backend.
void force_backend(const std::string& name);

double dot(std::span<const double> a, std::span<const double> b);
double sumsq(std::span<const double> a);
double sub_sumsq(std::span<const double> a, std::span<const double> b);
double diff_sumsq(std::span<const double> a);
double max_abs(std::span<const double> a);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
double max_abs_adjdiff(std::span<const double> a);

} // namespace degen::kernels
