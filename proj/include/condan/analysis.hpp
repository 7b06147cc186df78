#pragma once

#include <functional>
#include <variant>

#include "condan/linear.hpp"

namespace condan {

// A conditional sequence: an ordinary stream k -> CondVector on 1 (k >= 1),
// with conditional indexing x_n per atom for a conditional natural n.
class CondSequence {
 public:
  explicit CondSequence(std::function<CondVector(int)> gen) : gen_(std::move(gen)) {}

  CondVector term(int k) const { return gen_(k); }

  // x_n(t) = stream[n(t)](t)
  CondVector at(const CondNat& n) const {
    return CondVector::from_atom_fn(n.on(), [&](int t) {
      return gen_(static_cast<int>(n.at(t))).at(t);
    });
  }

 private:
  std::function<CondVector(int)> gen_;
};

// Seminorm: |<f, x>| for a functional, or the gauge of a symmetric body.
struct Seminorm {
  std::optional<CondVector> functional;
  std::shared_ptr<const SymmetricBody> body;

  static Seminorm of_functional(CondVector f) { return Seminorm{std::move(f), nullptr}; }
  static Seminorm of_body(SymmetricBody b) {
    return Seminorm{std::nullopt, std::make_shared<SymmetricBody>(std::move(b))};
  }

  CondReal value(const CondVector& x) const;
};

// Atoms where sup_{p in Q} p(x - center) <= r.
Cond neighborhood_member(const std::vector<Seminorm>& q, const CondReal& r,
                         const CondVector& center, const CondVector& x);

class CondMetric {
 public:
  enum class Construction { NormInduced, SeminormSeries };

  struct Checked {
    CondReal value;
    Cond indiscernible_violation;  // atoms with d = 0 but x != y
  };

  CondMetric(Construction c, std::function<CondReal(const CondVector&, const CondVector&)> fn)
      : construction_(c), fn_(std::move(fn)) {}

  CondReal distance(const CondVector& x, const CondVector& y) const { return fn_(x, y); }
  Checked distance_checked(const CondVector& x, const CondVector& y) const;
  Construction construction() const { return construction_; }

 private:
  Construction construction_;
  std::function<CondReal(const CondVector&, const CondVector&)> fn_;
};

CondMetric norm_metric(const CondNorm& n);

// d(x,y) = sum_{n=1..k} 2^-n |f_n(x-y)| / ||f_n||, exact over the finite
// family. Functionals of zero dual norm anywhere on 1 are rejected.
CondMetric seminorm_metric(const std::vector<CondLinearMap>& functionals);

struct TotalSetResult {
  std::vector<CondLinearMap> functionals;
  bool is_total;
  Cond total_condition;
  std::optional<CondVector> witness;  // near-annihilator on the failing atoms
};

// Norming functionals of the given points; totality is decided by a grid
// search for an annihilating unit vector (per-atom dimension <= 3).
TotalSetResult total_set(const std::vector<CondVector>& dense_points, NormKind kind,
                         int resolution = 24);

struct CauchyVerdict {
  Cond cauchy;     // criterion met within budget
  Cond refuted;    // a late pair beyond tol witnesses failure
  Cond undecided;  // budget exhausted without either
};

CauchyVerdict is_cauchy(const CondSequence& seq, const CondMetric& metric, double tol, int budget);

// Limit detection by the Cauchy criterion; a limit is returned only when the
// criterion is met on all atoms of 1. Atoms that are undecided (rather than
// refuted) raise Undecided.
std::optional<CondVector> limit(const CondSequence& seq, const CondMetric& metric, double tol,
                                int budget);

struct Subsequence {
  std::vector<CondNat> indices;       // strictly increasing per atom
  CondVector limit;                   // per-atom accumulation point
  std::vector<CondReal> cert_bounds;  // |x_{n_k} - limit|_2 <= bound[k]
  CondReal initial_diameter;
};

// Per-atom Bolzano-Weierstrass extraction by repeated bisection of the
// region's bounding box. Throws UnboundedError with the join of the atoms
// where the region is unbounded or a term escapes it.
Subsequence extract_convergent_subsequence(const CondSequence& seq, const SymmetricBody& region,
                                           int budget);

// Closed + bounded certification: atoms where the H-body's directions span.
Cond compactness_check(const SymmetricBody& k);
// Finite point sets are compact on their condition.
Cond compactness_check(const StableSet<std::vector<double>>& points);

struct CoverBall {
  CondVector center;
  CondReal radius;  // Euclidean ball
};

struct SubcoverResult {
  Cond on;
  std::vector<std::vector<int>> selected_per_atom;  // 0-based ball indices
  std::vector<CondNat> selected;                    // 1-based, padded per atom
};

// Greedy selection of finitely many balls covering a membership grid of K.
SubcoverResult extract_finite_subcover(const SymmetricBody& k, const std::vector<CoverBall>& cover,
                                       int resolution);

// --- certified-closed membership oracles -----------------------------------

struct IntervalProductAtom {
  std::vector<std::pair<double, double>> bounds;  // [lo, hi] per coordinate
};

struct PolytopeAtom {
  std::vector<std::pair<std::vector<double>, double>> rows;  // <a, x> <= b
};

using ClosedPiece = std::variant<IntervalProductAtom, PolytopeAtom>;

struct ClosedSetAtom {
  std::vector<ClosedPiece> pieces;  // finite union; singleton for plain sets
};

// A conditionally closed subset with a closedness certificate by form:
// interval products, H-polytopes, or finite unions of those.
class ClosedSet {
 public:
  ClosedSet(Cond on, std::vector<ClosedSetAtom> per_atom);

  const Cond& on() const { return on_; }
  const ClosedSetAtom& at(int atom) const;
  bool contains(int atom, const std::vector<double>& x, double tol = 0.0) const;

 private:
  Cond on_;
  std::vector<ClosedSetAtom> per_atom_;
};

struct BaireSchedule {
  int levels = 6;
  int ball_samples_per_dim = 5;
  double initial_radius_frac = 0.25;
  int verify_factor = 10;
};

struct BaireResult {
  CondVector center;
  CondReal radius;
  CondNat index;  // 1-based member of the closed family
};

// Locates a ball contained in one member of a closed cover of the space, per
// atom, concatenating the per-atom findings. The returned ball is re-verified
// by sampling at verify_factor times the search resolution.
BaireResult baire_locate(const SymmetricBody& space, const std::vector<ClosedSet>& closed_sets,
                         const BaireSchedule& schedule);

struct PointwiseBound {
  std::function<CondReal(const CondVector&)> bound;
  int samples = 32;
  std::uint64_t seed = 0;
};

// Uniform bound over the stable hull of the generators: the per-atom max of
// the generator norms (which is the hull supremum). With a pointwise bound
// supplied, the hypothesis is validated on sampled vectors first.
CondReal uniform_bound(const std::vector<CondLinearMap>& generators,
                       const std::optional<PointwiseBound>& pointwise = std::nullopt);

}  // namespace condan
