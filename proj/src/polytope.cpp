#include "condan/polytope.hpp"

#include <algorithm>
#include <cmath>

#include "condan/errors.hpp"
#include "condan/kernels.hpp"

namespace condan {

bool hbody_spans(const HBody& body) {
  int d = body.dim();
  if (d == 0) return false;
  std::vector<std::vector<double>> dirs;
  dirs.reserve(body.faces.size());
  for (const auto& f : body.faces) dirs.push_back(f.u);
  return static_cast<int>(orthonormal_basis(dirs).size()) == d;
}

bool hbody_member(const HBody& body, const double* x, double tol) {
  for (const auto& f : body.faces) {
    double v = std::fabs(kern::dot(f.u.data(), x, f.u.size()));
    if (v > f.c + tol) return false;
  }
  return true;
}

double hbody_gauge(const HBody& body, const double* x) {
  double g = 0.0;
  for (const auto& f : body.faces) {
    double v = std::fabs(kern::dot(f.u.data(), x, f.u.size())) / f.c;
    if (v > g) g = v;
  }
  return g;
}

namespace {

// All signed constraints <a_i, x> <= b_i from the symmetric pairs.
struct Rows {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
};

Rows signed_rows(const HBody& body) {
  Rows r;
  for (const auto& f : body.faces) {
    r.a.push_back(f.u);
    r.b.push_back(f.c);
    std::vector<double> neg(f.u.size());
    for (std::size_t i = 0; i < f.u.size(); ++i) neg[i] = -f.u[i];
    r.a.push_back(std::move(neg));
    r.b.push_back(f.c);
  }
  return r;
}

}  // namespace

std::vector<std::vector<double>> hbody_vertices(const HBody& body) {
  int d = body.dim();
  if (d > kVertexEnumDimCap)
    throw Error(ErrorKind::UnsupportedDimension,
                "vertex enumeration capped at dimension " + std::to_string(kVertexEnumDimCap));
  if (!hbody_spans(body))
    throw Error(ErrorKind::NotBounded, "vertex enumeration requires a bounded body");

  Rows rows = signed_rows(body);
  int n = static_cast<int>(rows.a.size());
  double scale = 0.0;
  for (const auto& row : rows.a)
    for (double v : row) scale = std::max(scale, std::fabs(v));

  std::vector<std::vector<double>> vertices;
  std::vector<int> pick(static_cast<std::size_t>(d));
  std::vector<double> x;

  // Enumerate d-subsets of the signed constraints; each candidate vertex is
  // the solution of the active set, kept when feasible for all constraints.
  auto consider = [&]() {
    Mat a(d, d);
    std::vector<double> b(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) a.at(i, j) = rows.a[static_cast<std::size_t>(pick[i])][static_cast<std::size_t>(j)];
      b[static_cast<std::size_t>(i)] = rows.b[static_cast<std::size_t>(pick[i])];
    }
    if (!solve_dense(std::move(a), std::move(b), x, 1e-9)) return;
    double xmag = kern::max_abs(x.data(), x.size());
    double feas_tol = 1e-9 * (1.0 + scale * xmag);
    for (int i = 0; i < n; ++i) {
      if (kern::dot(rows.a[static_cast<std::size_t>(i)].data(), x.data(), x.size()) >
          rows.b[static_cast<std::size_t>(i)] + feas_tol)
        return;
    }
    for (const auto& v : vertices) {
      double diff = 0.0;
      for (int i = 0; i < d; ++i) diff = std::max(diff, std::fabs(v[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)]));
      if (diff <= 1e-8 * (1.0 + xmag)) return;  // duplicate
    }
    vertices.push_back(x);
  };

  auto enumerate = [&](auto&& self, int depth, int start) -> void {
    if (depth == d) {
      consider();
      return;
    }
    for (int i = start; i <= n - (d - depth); ++i) {
      pick[static_cast<std::size_t>(depth)] = i;
      self(self, depth + 1, i + 1);
    }
  };
  enumerate(enumerate, 0, 0);
  return vertices;
}

double hbody_support(const std::vector<std::vector<double>>& vertices,
                     const std::vector<double>& u) {
  double h = -1e300;
  for (const auto& v : vertices) h = std::max(h, kern::dot(v.data(), u.data(), u.size()));
  return h;
}

double hbody_support(const HBody& body, const std::vector<double>& u) {
  return hbody_support(hbody_vertices(body), u);
}

double hbody_inball_radius(const HBody& body) {
  double r = 1e300;
  for (const auto& f : body.faces) {
    double n = std::sqrt(kern::sumsq(f.u.data(), f.u.size()));
    if (n > 0.0) r = std::min(r, f.c / n);
  }
  return r;
}

std::vector<double> hbody_bounding_halfwidths(const HBody& body) {
  int d = body.dim();
  auto vertices = hbody_vertices(body);
  std::vector<double> w(static_cast<std::size_t>(d), 0.0);
  for (const auto& v : vertices)
    for (int i = 0; i < d; ++i)
      w[static_cast<std::size_t>(i)] = std::max(w[static_cast<std::size_t>(i)], std::fabs(v[static_cast<std::size_t>(i)]));
  return w;
}

}  // namespace condan
