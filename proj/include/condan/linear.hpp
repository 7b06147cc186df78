#pragma once

#include <memory>
#include <optional>

#include "condan/numbers.hpp"
#include "condan/polytope.hpp"

namespace condan {

// Per-atom real vector; the dimension may differ from atom to atom
// (conditionally finitely generated spaces have a conditional dimension).
class CondVector {
 public:
  CondVector() = default;
  CondVector(Cond on, std::vector<std::vector<double>> per_atom)
      : on_(on), per_atom_(std::move(per_atom)) {
    if (static_cast<int>(per_atom_.size()) != on_.count())
      throw Error(ErrorKind::InvalidAssignment, "per-atom vector count != atom count");
  }

  static CondVector zero(const Cond& on, int dim) {
    return CondVector(on, std::vector<std::vector<double>>(
                              static_cast<std::size_t>(on.count()),
                              std::vector<double>(static_cast<std::size_t>(dim), 0.0)));
  }

  template <typename F>
  static CondVector from_atom_fn(const Cond& on, F&& fn) {
    std::vector<std::vector<double>> v;
    v.reserve(static_cast<std::size_t>(on.count()));
    for (int t : on.atom_list()) v.push_back(fn(t));
    return CondVector(on, std::move(v));
  }

  const Cond& on() const { return on_; }

  const std::vector<double>& at(int atom) const {
    int idx = slot(atom);
    if (idx < 0) throw Error(ErrorKind::ConditionNotBelow, "vector not defined at that atom");
    return per_atom_[static_cast<std::size_t>(idx)];
  }

  int dim_at(int atom) const { return static_cast<int>(at(atom).size()); }
  const std::vector<std::vector<double>>& per_atom() const { return per_atom_; }

  CondVector restrict_to(const Cond& b) const {
    if (!b.leq(on_)) throw Error(ErrorKind::ConditionNotBelow, "restriction above the condition");
    return from_atom_fn(b, [&](int t) { return at(t); });
  }

  bool operator==(const CondVector& o) const { return on_ == o.on_ && per_atom_ == o.per_atom_; }

 private:
  int slot(int atom) const {
    if (!on_.contains_atom(atom)) return -1;
    std::uint64_t below = on_.bits() & ((std::uint64_t{1} << atom) - 1);
    return __builtin_popcountll(below);
  }

  Cond on_;
  std::vector<std::vector<double>> per_atom_;
};

CondVector cv_add(const CondVector& x, const CondVector& y);
CondVector cv_sub(const CondVector& x, const CondVector& y);
CondVector cv_scale(const CondVector& x, double s);
CondVector cv_scale(const CondVector& x, const CondReal& s);
CondReal cv_dot(const CondVector& x, const CondVector& y);

enum class NormKind { L1, L2, Linf, GaugeBody };

// Conditionally convex, balanced, closed set: one symmetric H-polytope per
// atom. Offsets must be strictly positive (0 interior, absorbing); the
// directions need not span, so unbounded slabs are representable.
class SymmetricBody {
 public:
  SymmetricBody(Cond on, std::vector<HBody> per_atom);

  const Cond& on() const { return on_; }
  const HBody& at(int atom) const;
  const std::vector<HBody>& per_atom() const { return per_atom_; }

  bool operator==(const SymmetricBody& o) const {
    return on_ == o.on_ && per_atom_eq(o);
  }

 private:
  bool per_atom_eq(const SymmetricBody& o) const {
    if (per_atom_.size() != o.per_atom_.size()) return false;
    for (std::size_t i = 0; i < per_atom_.size(); ++i)
      if (!(per_atom_[i].faces == o.per_atom_[i].faces)) return false;
    return true;
  }

  Cond on_;
  std::vector<HBody> per_atom_;
};

struct CondNorm {
  NormKind kind = NormKind::L2;
  std::shared_ptr<const SymmetricBody> body;  // set only for GaugeBody

  static CondNorm lp(NormKind k) { return CondNorm{k, nullptr}; }
  static CondNorm of_body(SymmetricBody b) {
    return CondNorm{NormKind::GaugeBody, std::make_shared<SymmetricBody>(std::move(b))};
  }
};

CondReal norm_value(const CondVector& x, const CondNorm& n);
double norm_value_at(const double* x, std::size_t n, NormKind kind);
double dual_norm_value_at(const double* u, std::size_t n, NormKind primal_kind);

// Minkowski gauge of the body: per atom max_j |<u_j, x>| / c_j, which equals
// inf { r > 0 : x in r*C } for H-represented bodies.
CondReal gauge(const SymmetricBody& c, const CondVector& x);

// Support function h_C(u) per atom, by vertex enumeration (bounded bodies).
CondReal support_function(const SymmetricBody& c, const CondVector& u);

// Grid-outer body of alpha*A + beta*B: same directions, combined support
// offsets. Exact for bodies carried by the shared grid.
SymmetricBody minkowski_combine(double alpha, const SymmetricBody& a, double beta,
                                const SymmetricBody& b);

// Tightens every offset to the body's own support value; the set is
// unchanged and the representation becomes grid-canonical.
SymmetricBody grid_canonicalize(const SymmetricBody& a);

SymmetricBody scale_body(double alpha, const SymmetricBody& a);

// Atoms where every vertex of A satisfies B's inequalities. Atoms where A is
// unbounded are conservatively excluded.
Cond body_inclusion(const SymmetricBody& a, const SymmetricBody& b, double tol = 1e-9);

// Atoms where the directions span (closed + bounded there).
Cond body_bounded_condition(const SymmetricBody& a);

SymmetricBody body_restrict(const SymmetricBody& a, const Cond& b);

// Conditionally linear map: one real matrix per atom, with norm-bearing
// domain and codomain.
class CondLinearMap {
 public:
  CondLinearMap(Cond on, std::vector<Mat> per_atom, CondNorm domain, CondNorm codomain);

  const Cond& on() const { return on_; }
  const Mat& at(int atom) const;
  const std::vector<Mat>& per_atom() const { return per_atom_; }
  const CondNorm& domain() const { return domain_; }
  const CondNorm& codomain() const { return codomain_; }

  static CondLinearMap functional(const CondVector& coeffs, NormKind domain_kind);

  // Coefficient covector of a 1-row map.
  CondVector as_covector() const;

 private:
  int slot(int atom) const {
    if (!on_.contains_atom(atom)) return -1;
    std::uint64_t below = on_.bits() & ((std::uint64_t{1} << atom) - 1);
    return __builtin_popcountll(below);
  }

  Cond on_;
  std::vector<Mat> per_atom_;
  CondNorm domain_;
  CondNorm codomain_;
};

CondVector apply(const CondLinearMap& t, const CondVector& x);
CondReal apply_functional(const CondLinearMap& f, const CondVector& x);

// Analytic operator norm for matching l1->l1 / l2->l2 / linf->linf pairs;
// the l2 case runs power iteration on T^T T (relative 1e-9, certified by the
// residual bound, deterministic all-ones start with random restarts).
CondReal operator_norm(const CondLinearMap& t);

// Monte-Carlo lower bound max ||T x|| / ||x|| over sampled x; works for any
// norm kinds including gauges.
CondReal sampled_operator_norm(const CondLinearMap& t, int samples, std::uint64_t seed);

// Dual-unit functional attaining the norm of x per atom (zero atoms give the
// zero functional). Linf ties break toward the smallest coordinate index.
CondLinearMap norming_functional(const CondVector& x, NormKind kind);

struct EmbeddingCheck {
  CondReal sup_over_dual_ball;
  CondReal isometry_gap;
};

// Realizes x as a functional on the dual: sup of |x*(x)| over the norming
// functional plus sampled dual-ball functionals, against ||x||.
EmbeddingCheck embedding_check(const CondVector& x, NormKind kind, int dual_samples,
                               std::uint64_t seed);

// Functionals z*_n such that every y in the span of the inputs satisfies
// ||y||/2 <= max_n |<y, z*_n>|: a quarter-net of the subspace unit sphere,
// taken as self-dual l2 norming functionals of the net points.
std::vector<CondLinearMap> half_norming_set(const std::vector<CondVector>& span_vectors);

struct EquivalenceConstants {
  CondReal r_low;
  CondReal r_high;
};

// Constants with r_low * ||z||_1 <= ||sum z_k b_k|| <= r_high * ||z||_1.
// r_high is the vertex maximum; r_low comes from a certified branch-and-bound
// minimization over the l1-sphere (relative rel_tol).
EquivalenceConstants equivalence_constants(const std::vector<CondVector>& basis,
                                           const CondNorm& norm, double rel_tol = 1e-4);

struct DirectSumResult {
  CondReal norm2;             // (sum_k ||x_k||^2)^(1/2)
  CondReal dual_norm2;        // (sum_k ||x*_k||^2)^(1/2)
  CondReal pairing;           // sum_k x*_k(x_k)
  CondReal attained_op_norm;  // pairing at the constructed norming element
  CondReal pairing_norm_gap;  // |attained - dual_norm2|
};

// Square-summable direct sum evaluated on finitely supported elements.
DirectSumResult direct_sum_l2(const std::vector<NormKind>& component_norms,
                              const std::vector<CondVector>& x,
                              const std::vector<CondVector>& xstar, bool truncated = false,
                              const std::optional<CondReal>& tail_mass = std::nullopt);

struct RenormResult {
  std::vector<CondReal> gauges;  // gauge(B_n, x) for n = 1..kmax
  CondReal sum_of_squares;       // truncated sum of squared gauges
  CondReal tail_bound;           // gauge_K(x)^2 * 4^{-kmax} / 3
  CondReal norm_c;               // sqrt(truncated sum + tail bound)
  Cond sum_bound_ok;             // atoms where sum + tail <= 1/3 + tol
  CondReal lambda;               // max over K's vertices of the unit-body gauge
};

// Renorming pipeline through the bodies B_n = 2^n K + 2^-n B, evaluated on a
// shared direction grid.
RenormResult renorm_sequence(const SymmetricBody& k_body, const SymmetricBody& unit_body,
                             const CondVector& x, int kmax, double tol = 1e-6);

// Shared direction grids: the standard basis plus `extra` deterministic
// pseudo-random unit directions.
std::vector<std::vector<double>> make_grid_directions(int dim, int extra, std::uint64_t seed);

}  // namespace condan
