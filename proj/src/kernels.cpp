#include "degen/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace degen::kernels {

namespace {

double scalar_dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double scalar_sumsq(const double* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
    return s;
}

double scalar_sub_sumsq(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double scalar_diff_sumsq(const double* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double d = a[i + 1] - a[i];
        s += d * d;
    }
    return s;
}

double scalar_max_abs(const double* a, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i]));
    return m;
}

double scalar_max_abs_diff(const double* a, const double* b, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

double scalar_max_abs_adjdiff(const double* a, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) m = std::max(m, std::fabs(a[i + 1] - a[i]));
    return m;
}

const Backend kScalar = {
    "scalar",         scalar_dot,          scalar_sumsq,
    scalar_sub_sumsq, scalar_diff_sumsq,   scalar_max_abs,
    scalar_max_abs_diff, scalar_max_abs_adjdiff,
};

const Backend* pick_default() {
    if (const char* env = std::getenv("DEGEN_KERNELS")) {
        const std::string want(env);
        if (want == "scalar") return &kScalar;
        if (want == "avx2" && avx2_backend() != nullptr) return avx2_backend();
        // fall through to auto selection on unknown values
    }
    if (const Backend* v = avx2_backend()) return v;
    return &kScalar;
}

const Backend*& active_slot() {
    static const Backend* slot = pick_default();
    return slot;
}

} // namespace

const Backend& scalar_backend() { return kScalar; }

#if !defined(DEGEN_HAVE_AVX2)
const Backend* avx2_backend() { return nullptr; }
#endif

const Backend& active() { return *active_slot(); }

void force_backend(const std::string& name) {
    if (name == "scalar") {
        active_slot() = &kScalar;
    } else if (name == "avx2") {
        const Backend* v = avx2_backend();
        if (!v) throw std::invalid_argument("avx2 kernels not available on this host");
        active_slot() = v;
    } else if (name == "auto") {
        active_slot() = avx2_backend() ? avx2_backend() : &kScalar;
    } else {
        throw std::invalid_argument("unknown kernel backend: " + name);
    }
}

double dot(std::span<const double> a, std::span<const double> b) {
    return active().dot(a.data(), b.data(), a.size());
}
double sumsq(std::span<const double> a) { return active().sumsq(a.data(), a.size()); }
double sub_sumsq(std::span<const double> a, std::span<const double> b) {
    return active().sub_sumsq(a.data(), b.data(), a.size());
}
double diff_sumsq(std::span<const double> a) {
    return active().diff_sumsq(a.data(), a.size());
}
double max_abs(std::span<const double> a) { return active().max_abs(a.data(), a.size()); }
double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    return active().max_abs_diff(a.data(), b.data(), a.size());
}
double max_abs_adjdiff(std::span<const double> a) {
    return active().max_abs_adjdiff(a.data(), a.size());
}

} // namespace degen::kernels
