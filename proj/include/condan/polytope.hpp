#pragma once

#include <vector>

#include "condan/linalg.hpp"

namespace condan {

// One symmetric halfspace pair: |<u, x>| <= c, with c > 0 so 0 is interior.
struct Halfspace {
  std::vector<double> u;
  double c = 1.0;

  bool operator==(const Halfspace& o) const { return u == o.u && c == o.c; }
};

// Per-atom symmetric convex polytope in H-representation. The directions need
// not span: a slab is representable (and then the body is unbounded, with the
// gauge degenerating to a seminorm).
struct HBody {
  std::vector<Halfspace> faces;

  int dim() const { return faces.empty() ? 0 : static_cast<int>(faces.front().u.size()); }
};

// Largest per-atom dimension for which exact vertex enumeration runs.
inline constexpr int kVertexEnumDimCap = 4;

bool hbody_spans(const HBody& body);          // directions span <=> body bounded
bool hbody_member(const HBody& body, const double* x, double tol = 0.0);
double hbody_gauge(const HBody& body, const double* x);  // max_j |<u_j,x>| / c_j

// Exact vertices (dim <= kVertexEnumDimCap, bounded bodies only).
std::vector<std::vector<double>> hbody_vertices(const HBody& body);

// h(u) = max_{x in body} <u, x>, via vertex enumeration.
double hbody_support(const HBody& body, const std::vector<double>& u);
double hbody_support(const std::vector<std::vector<double>>& vertices,
                     const std::vector<double>& u);

// Radius of the largest origin-centered Euclidean ball inside the body.
double hbody_inball_radius(const HBody& body);

// Coordinate-wise bounding box half-widths: max |x_i| over the body.
std::vector<double> hbody_bounding_halfwidths(const HBody& body);

}  // namespace condan
