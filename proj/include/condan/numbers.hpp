#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "condan/conditional.hpp"

namespace condan {

using CondReal = CondValue<double>;

// Conditional naturals start at 1; they index conditionally finite sums.
class CondNat {
 public:
  CondNat() = default;
  explicit CondNat(CondValue<std::int64_t> v) : v_(std::move(v)) {
    for (auto n : v_.values())
      if (n < 1) throw Error(ErrorKind::BadInput, "conditional naturals start at 1");
  }

  static CondNat constant(const Cond& on, std::int64_t n) {
    return CondNat(CondValue<std::int64_t>::constant(on, n));
  }

  const Cond& on() const { return v_.on(); }
  std::int64_t at(int atom) const { return v_.at(atom); }
  const CondValue<std::int64_t>& value() const { return v_; }

  std::int64_t max_value() const {
    std::int64_t m = 1;
    for (auto n : v_.values()) m = std::max(m, n);
    return m;
  }

  // conditional strict order: strict on every atom
  bool lt(const CondNat& o) const {
    if (!(o.on() == on())) throw Error(ErrorKind::ConditionMismatch, "comparing across conditions");
    for (int t : on().atom_list())
      if (!(at(t) < o.at(t))) return false;
    return true;
  }

  bool operator==(const CondNat& o) const { return v_ == o.v_; }

 private:
  CondValue<std::int64_t> v_;
};

enum class ArithOp { Add, Sub, Mul, Abs, Min, Max };

CondReal arith(const CondReal& x, const CondReal& y, ArithOp op);
CondReal cond_abs(const CondReal& x);
CondReal cond_scale(const CondReal& x, double s);

struct CompareResult {
  Cond leq_condition;
  Cond lt_condition;
  bool leq;  // true iff leq_condition equals the carrier condition
  bool lt;
};

CompareResult compare(const CondReal& x, const CondReal& y);

// Reciprocal on the support, zero elsewhere; r * cond_inverse(r) is the
// indicator of supp(r).
CondReal cond_inverse(const CondReal& r);

struct SupInf {
  CondReal sup;
  CondReal inf;
};

SupInf sup_inf(const StableSet<double>& f);

// Per atom t: sum of seq[k-1](t) for k = 1..n(t). The sequence must be
// defined up to the largest per-atom index of n.
CondReal partial_sum(std::span<const CondReal> seq, const CondNat& n);

struct SeriesValue {
  CondReal value;      // truncated sum over k = 1..K
  CondReal tail_bound; // caller-certified bound on the absolute tail
};

// Truncated conditional series. Convergence is never assumed: the caller
// must certify the tail beyond the truncation index.
SeriesValue series_limit(std::span<const CondReal> seq, int truncation,
                         const std::optional<CondReal>& tail_bound);

struct CauchySchwarzResult {
  CondReal lhs;         // (sum a_k b_k)^2, truncated
  CondReal rhs;         // (sum a_k^2)(sum b_k^2), truncated
  Cond holds_condition; // atoms where lhs <= rhs + slack (tail-robust)
  bool holds;           // holds on the whole carrier condition
};

// tail_a2 / tail_b2 bound the tails of the squared series beyond the given
// terms. The verdict is conservative: the truncated lhs is inflated by the
// worst-case tail contribution before comparing.
CauchySchwarzResult cauchy_schwarz_eval(std::span<const CondReal> a, std::span<const CondReal> b,
                                        const std::optional<CondReal>& tail_a2,
                                        const std::optional<CondReal>& tail_b2, double tol);

}  // namespace condan
