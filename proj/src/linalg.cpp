#include "condan/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "condan/kernels.hpp"

namespace condan {

std::vector<double> matvec(const Mat& m, const std::vector<double>& x) {
  std::vector<double> y(static_cast<std::size_t>(m.rows));
  for (int i = 0; i < m.rows; ++i)
    y[static_cast<std::size_t>(i)] = kern::dot(m.row(i), x.data(), static_cast<std::size_t>(m.cols));
  return y;
}

Mat transpose(const Mat& m) {
  Mat t(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  return t;
}

Mat matmul(const Mat& a, const Mat& b) {
  Mat c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      double v = a.at(i, k);
      if (v == 0.0) continue;
      for (int j = 0; j < b.cols; ++j) c.at(i, j) += v * b.at(k, j);
    }
  return c;
}

bool solve_dense(Mat a, std::vector<double> b, std::vector<double>& x, double singular_tol) {
  int n = a.rows;
  double scale = 0.0;
  for (double v : a.a) scale = std::max(scale, std::fabs(v));
  if (scale == 0.0) return false;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a.at(r, col)) > std::fabs(a.at(piv, col))) piv = r;
    if (std::fabs(a.at(piv, col)) <= singular_tol * scale) return false;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
      std::swap(b[static_cast<std::size_t>(piv)], b[static_cast<std::size_t>(col)]);
    }
    for (int r = col + 1; r < n; ++r) {
      double f = a.at(r, col) / a.at(col, col);
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j) a.at(r, j) -= f * a.at(col, j);
      b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(col)];
    }
  }
  x.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) s -= a.at(i, j) * x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(i)] = s / a.at(i, i);
  }
  return true;
}

std::vector<double> jacobi_eigenvalues(Mat s, int max_sweeps) {
  int n = s.rows;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += s.at(i, j) * s.at(i, j);
    double diag = 0.0;
    for (int i = 0; i < n; ++i) diag = std::max(diag, std::fabs(s.at(i, i)));
    if (off <= 1e-30 * (1.0 + diag * diag)) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        double apq = s.at(p, q);
        if (std::fabs(apq) < 1e-300) continue;
        double theta = (s.at(q, q) - s.at(p, p)) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double sn = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = s.at(k, p), akq = s.at(k, q);
          s.at(k, p) = c * akp - sn * akq;
          s.at(k, q) = sn * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = s.at(p, k), aqk = s.at(q, k);
          s.at(p, k) = c * apk - sn * aqk;
          s.at(q, k) = sn * apk + c * aqk;
        }
      }
  }
  std::vector<double> eig(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = s.at(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

double vec_norm2(const std::vector<double>& v) {
  return std::sqrt(kern::sumsq(v.data(), v.size()));
}

std::vector<std::vector<double>> sphere_grid(int d, int steps) {
  std::vector<std::vector<double>> out;
  if (d <= 0) return out;
  if (d == 1) {
    out.push_back({1.0});
    out.push_back({-1.0});
    return out;
  }
  for (int axis = 0; axis < d; ++axis)
    for (int sign = -1; sign <= 1; sign += 2) {
      std::vector<int> idx(static_cast<std::size_t>(d - 1), 0);
      while (true) {
        std::vector<double> p(static_cast<std::size_t>(d));
        p[static_cast<std::size_t>(axis)] = static_cast<double>(sign);
        int k = 0;
        for (int i = 0; i < d; ++i) {
          if (i == axis) continue;
          p[static_cast<std::size_t>(i)] =
              -1.0 + 2.0 * static_cast<double>(idx[static_cast<std::size_t>(k)]) / steps;
          ++k;
        }
        double nn = vec_norm2(p);
        for (double& v : p) v /= nn;
        out.push_back(std::move(p));
        int i = 0;
        for (; i < d - 1; ++i) {
          if (++idx[static_cast<std::size_t>(i)] <= steps) break;
          idx[static_cast<std::size_t>(i)] = 0;
        }
        if (i == d - 1) break;
      }
    }
  return out;
}

std::vector<std::vector<double>> orthonormal_basis(const std::vector<std::vector<double>>& vecs,
                                                   double rel_tol) {
  std::vector<std::vector<double>> q;
  double scale = 0.0;
  for (const auto& v : vecs) scale = std::max(scale, vec_norm2(v));
  if (scale == 0.0) return q;
  for (const auto& v : vecs) {
    std::vector<double> r = v;
    for (int pass = 0; pass < 2; ++pass)  // re-orthogonalize once
      for (const auto& u : q) {
        double c = kern::dot(r.data(), u.data(), r.size());
        kern::axpy(-c, u.data(), r.data(), r.size());
      }
    double n = vec_norm2(r);
    if (n > rel_tol * scale) {
      for (double& x : r) x /= n;
      q.push_back(std::move(r));
    }
  }
  return q;
}

}  // namespace condan
