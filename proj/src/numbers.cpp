#include "condan/numbers.hpp"

#include <cmath>

namespace condan {

CondReal arith(const CondReal& x, const CondReal& y, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return x.zip(y, [](double a, double b) { return a + b; });
    case ArithOp::Sub: return x.zip(y, [](double a, double b) { return a - b; });
    case ArithOp::Mul: return x.zip(y, [](double a, double b) { return a * b; });
    case ArithOp::Min: return x.zip(y, [](double a, double b) { return std::min(a, b); });
    case ArithOp::Max: return x.zip(y, [](double a, double b) { return std::max(a, b); });
    case ArithOp::Abs: return cond_abs(x);
  }
  throw Error(ErrorKind::BadInput, "unknown arithmetic op");
}

CondReal cond_abs(const CondReal& x) {
  return x.map([](double a) { return std::fabs(a); });
}

CondReal cond_scale(const CondReal& x, double s) {
  return x.map([s](double a) { return s * a; });
}

CompareResult compare(const CondReal& x, const CondReal& y) {
  if (!(x.on() == y.on()))
    throw Error(ErrorKind::ConditionMismatch, "comparing values on different conditions");
  std::uint64_t leq = 0, lt = 0;
  for (int t : x.on().atom_list()) {
    if (x.at(t) <= y.at(t)) leq |= std::uint64_t{1} << t;
    if (x.at(t) < y.at(t)) lt |= std::uint64_t{1} << t;
  }
  int m = x.on().algebra_atoms();
  Cond leq_c(leq, m), lt_c(lt, m);
  return CompareResult{leq_c, lt_c, leq_c == x.on(), lt_c == x.on()};
}

CondReal cond_inverse(const CondReal& r) {
  return r.map([](double v) { return v != 0.0 ? 1.0 / v : 0.0; });
}

SupInf sup_inf(const StableSet<double>& f) {
  CondReal sup = CondReal::from_atom_fn(f.on(), [&](int t) {
    const auto& s = f.at(t);
    return s.back();  // per-atom sets are sorted
  });
  CondReal inf = CondReal::from_atom_fn(f.on(), [&](int t) { return f.at(t).front(); });
  return SupInf{sup, inf};
}

CondReal partial_sum(std::span<const CondReal> seq, const CondNat& n) {
  if (static_cast<std::int64_t>(seq.size()) < n.max_value())
    throw Error(ErrorKind::InsufficientSequence,
                "sequence shorter than the largest per-atom index");
  for (const auto& x : seq)
    if (!(x.on() == n.on()))
      throw Error(ErrorKind::ConditionMismatch, "sequence terms off the index condition");
  return CondReal::from_atom_fn(n.on(), [&](int t) {
    double s = 0.0;
    std::int64_t k_max = n.at(t);
    for (std::int64_t k = 1; k <= k_max; ++k) s += seq[static_cast<std::size_t>(k - 1)].at(t);
    return s;
  });
}

SeriesValue series_limit(std::span<const CondReal> seq, int truncation,
                         const std::optional<CondReal>& tail_bound) {
  if (!tail_bound)
    throw Error(ErrorKind::UncertifiedTail, "conditional series need a certified tail bound");
  if (truncation < 1 || static_cast<std::size_t>(truncation) > seq.size())
    throw Error(ErrorKind::InsufficientSequence, "truncation exceeds the provided terms");
  const Cond& on = tail_bound->on();
  for (const auto& x : seq)
    if (!(x.on() == on))
      throw Error(ErrorKind::ConditionMismatch, "sequence terms off the tail-bound condition");
  CondReal value = CondReal::from_atom_fn(on, [&](int t) {
    double s = 0.0;
    for (int k = 0; k < truncation; ++k) s += seq[static_cast<std::size_t>(k)].at(t);
    return s;
  });
  return SeriesValue{value, *tail_bound};
}

CauchySchwarzResult cauchy_schwarz_eval(std::span<const CondReal> a, std::span<const CondReal> b,
                                        const std::optional<CondReal>& tail_a2,
                                        const std::optional<CondReal>& tail_b2, double tol) {
  if (!tail_a2 || !tail_b2)
    throw Error(ErrorKind::UncertifiedTail, "both squared-tail bounds are required");
  if (a.size() != b.size())
    throw Error(ErrorKind::InsufficientSequence, "sequences of different lengths");
  const Cond& on = tail_a2->on();
  if (!(tail_b2->on() == on))
    throw Error(ErrorKind::ConditionMismatch, "tail bounds on different conditions");

  std::uint64_t holds_bits = 0;
  std::vector<double> lhs_vals, rhs_vals;
  for (int t : on.atom_list()) {
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      double av = a[k].at(t), bv = b[k].at(t);
      sab += av * bv;
      saa += av * av;
      sbb += bv * bv;
    }
    if (tail_a2->at(t) < 0.0 || tail_b2->at(t) < 0.0)
      throw Error(ErrorKind::UncertifiedTail, "negative tail bound");
    double lhs = sab * sab;
    double rhs = saa * sbb;
    if (lhs <= rhs + tol * (1.0 + std::fabs(rhs))) holds_bits |= std::uint64_t{1} << t;
    lhs_vals.push_back(lhs);
    rhs_vals.push_back(rhs);
  }
  Cond holds_c(holds_bits, on.algebra_atoms());
  return CauchySchwarzResult{CondReal(on, std::move(lhs_vals)), CondReal(on, std::move(rhs_vals)),
                             holds_c, holds_c == on};
}

}  // namespace condan
