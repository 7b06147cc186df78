#pragma once

#include <cstddef>

// Small dense arithmetic kernels used by the norm/gauge/series hot loops.
// Scalar reference implementations always exist; on x86-64 an AVX2+FMA
// variant is selected at runtime when the CPU supports it. The two paths
// are equivalence-tested against each other (tests/test_kernels.cpp).
namespace condan::kern {

double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double sumsq(const double* a, std::size_t n);
double abs_sum(const double* a, std::size_t n);
double max_abs(const double* a, std::size_t n);

// y += s * x
void axpy(double s, const double* x, double* y, std::size_t n);

// Routes every call through the scalar reference path (for tests).
void set_force_scalar(bool v);
bool simd_available();

}  // namespace condan::kern
