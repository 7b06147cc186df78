#pragma once

#include <cstddef>
#include <vector>

namespace condan {

// Row-major dense matrix; everything here is small (dims <= a handful).
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  const double* row(int i) const { return a.data() + static_cast<std::size_t>(i) * cols; }

  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

std::vector<double> matvec(const Mat& m, const std::vector<double>& x);
Mat transpose(const Mat& m);
Mat matmul(const Mat& a, const Mat& b);

// Solves a d x d system by Gaussian elimination with partial pivoting.
// Returns false when the pivot falls below `singular_tol` times the scale.
bool solve_dense(Mat a, std::vector<double> b, std::vector<double>& x,
                 double singular_tol = 1e-12);

// Eigenvalues of a symmetric matrix via cyclic Jacobi sweeps, ascending.
std::vector<double> jacobi_eigenvalues(Mat s, int max_sweeps = 64);

// Orthonormal basis of the column span, with rank detection.
// Columns whose residual norm falls below rel_tol * max_input_norm are dropped.
std::vector<std::vector<double>> orthonormal_basis(const std::vector<std::vector<double>>& vecs,
                                                   double rel_tol = 1e-10);

double vec_norm2(const std::vector<double>& v);

// Deterministic unit-sphere sample set: normalized cube-surface grid with
// `steps` cells per axis. Covering radius <= (2/steps) * sqrt(d-1).
std::vector<std::vector<double>> sphere_grid(int d, int steps);

}  // namespace condan
