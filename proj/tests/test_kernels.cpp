#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "condan/kernels.hpp"
#include "condan/rng.hpp"

using namespace condan;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(-10.0, 10.0);
  return v;
}

double rel_diff(double a, double b) { return std::fabs(a - b) / (1.0 + std::fabs(a)); }

}  // namespace

TEST_CASE("simd and scalar kernels agree") {
  Rng rng(7);
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 64u, 1000u}) {
    auto a = random_vec(rng, n);
    auto b = random_vec(rng, n);

    kern::set_force_scalar(true);
    double dot_s = kern::dot(a.data(), b.data(), n);
    double sum_s = kern::sum(a.data(), n);
    double sumsq_s = kern::sumsq(a.data(), n);
    double abs_s = kern::abs_sum(a.data(), n);
    double max_s = kern::max_abs(a.data(), n);

    kern::set_force_scalar(false);
    CHECK(rel_diff(kern::dot(a.data(), b.data(), n), dot_s) < 1e-12);
    CHECK(rel_diff(kern::sum(a.data(), n), sum_s) < 1e-12);
    CHECK(rel_diff(kern::sumsq(a.data(), n), sumsq_s) < 1e-12);
    CHECK(rel_diff(kern::abs_sum(a.data(), n), abs_s) < 1e-12);
    CHECK(kern::max_abs(a.data(), n) == max_s);  // max has no reassociation error

    auto y1 = random_vec(rng, n);
    auto y2 = y1;
    kern::set_force_scalar(true);
    kern::axpy(2.5, a.data(), y1.data(), n);
    kern::set_force_scalar(false);
    kern::axpy(2.5, a.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(rel_diff(y2[i], y1[i]) < 1e-12);
  }
}

TEST_CASE("force_scalar reproduces the reference path exactly") {
  Rng rng(11);
  auto a = random_vec(rng, 37);
  auto b = random_vec(rng, 37);
  kern::set_force_scalar(true);
  double d1 = kern::dot(a.data(), b.data(), a.size());
  double d2 = kern::dot(a.data(), b.data(), a.size());
  kern::set_force_scalar(false);
  CHECK(d1 == d2);
}

TEST_CASE("kernel edge values") {
  double empty = 0.0;
  CHECK(kern::sum(&empty, 0) == 0.0);
  CHECK(kern::max_abs(&empty, 0) == 0.0);
  std::vector<double> v{-3.0, 1.0, 2.0};
  CHECK(kern::max_abs(v.data(), v.size()) == 3.0);
  CHECK(kern::abs_sum(v.data(), v.size()) == 6.0);
}
