#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "condan/algebra.hpp"

namespace condan {

// A conditional element as a step function: one payload per atom of the
// condition it lives on. The null value is the unique value on condition 0.
template <typename X>
class CondValue {
 public:
  CondValue() = default;

  CondValue(Cond on, std::vector<X> values) : on_(on), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != on_.count())
      throw Error(ErrorKind::InvalidAssignment, "payload count != atom count of the condition");
  }

  static CondValue constant(const Cond& on, const X& v) {
    return CondValue(on, std::vector<X>(static_cast<std::size_t>(on.count()), v));
  }

  static CondValue null_value(const Algebra& a) { return CondValue(Cond::zero(a), {}); }

  template <typename F>
  static CondValue from_atom_fn(const Cond& on, F&& fn) {
    std::vector<X> vals;
    vals.reserve(static_cast<std::size_t>(on.count()));
    for (int t : on.atom_list()) vals.push_back(fn(t));
    return CondValue(on, std::move(vals));
  }

  const Cond& on() const { return on_; }
  bool is_null() const { return on_.is_zero(); }

  // payload at an atom of `on`
  const X& at(int atom) const {
    int idx = slot(atom);
    if (idx < 0) throw Error(ErrorKind::ConditionNotBelow, "value not defined at that atom");
    return values_[static_cast<std::size_t>(idx)];
  }

  const std::vector<X>& values() const { return values_; }

  CondValue restrict_to(const Cond& b) const {
    if (!b.leq(on_)) throw Error(ErrorKind::ConditionNotBelow, "restriction above the condition");
    std::vector<X> vals;
    vals.reserve(static_cast<std::size_t>(b.count()));
    for (int t : b.atom_list()) vals.push_back(at(t));
    return CondValue(b, std::move(vals));
  }

  template <typename F>
  auto map(F&& fn) const {
    using Y = std::decay_t<decltype(fn(std::declval<const X&>()))>;
    std::vector<Y> vals;
    vals.reserve(values_.size());
    for (const X& v : values_) vals.push_back(fn(v));
    return CondValue<Y>(on_, std::move(vals));
  }

  template <typename Y, typename F>
  auto zip(const CondValue<Y>& other, F&& fn) const {
    if (!(other.on() == on_))
      throw Error(ErrorKind::ConditionMismatch, "values live on different conditions");
    using Z = std::decay_t<decltype(fn(std::declval<const X&>(), std::declval<const Y&>()))>;
    std::vector<Z> vals;
    vals.reserve(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) vals.push_back(fn(values_[i], other.values()[i]));
    return CondValue<Z>(on_, std::move(vals));
  }

  bool operator==(const CondValue& o) const { return on_ == o.on_ && values_ == o.values_; }
  bool operator!=(const CondValue& o) const { return !(*this == o); }

 private:
  int slot(int atom) const {
    if (!on_.contains_atom(atom)) return -1;
    std::uint64_t below = on_.bits() & ((std::uint64_t{1} << atom) - 1);
    return __builtin_popcountll(below);
  }

  Cond on_;
  std::vector<X> values_;
};

// Patches disjoint fragments together: the unique value agreeing with each
// fragment on its condition. The fragments' conditions must be pairwise
// disjoint; the result lives on their join.
template <typename X>
CondValue<X> patch(const std::vector<CondValue<X>>& fragments) {
  if (fragments.empty()) throw Error(ErrorKind::EmptyFamily, "patch of an empty family");
  int m = fragments.front().on().algebra_atoms();
  Cond join(0, m);
  for (const auto& f : fragments) {
    if (!join.disjoint(f.on()))
      throw Error(ErrorKind::InvalidAssignment, "patch fragments overlap");
    join = join.join(f.on());
  }
  return CondValue<X>::from_atom_fn(join, [&](int t) -> X {
    for (const auto& f : fragments)
      if (f.on().contains_atom(t)) return f.at(t);
    throw Error(ErrorKind::InvalidAssignment, "unreachable");  // join covers t
  });
}

// Concatenation along a partition of 1: the unique element taking values[i]
// on partition block i. All inputs live on 1.
template <typename X>
CondValue<X> concatenate(const std::vector<CondValue<X>>& values, const Partition& partition) {
  if (values.size() != partition.size())
    throw Error(ErrorKind::InvalidAssignment, "one value per partition block required");
  if (!partition.owner().is_one())
    throw Error(ErrorKind::InvalidAssignment, "concatenation requires a partition of 1");
  for (const auto& v : values)
    if (!v.on().is_one())
      throw Error(ErrorKind::ConditionMismatch, "concatenation inputs must live on 1");
  return CondValue<X>::from_atom_fn(partition.owner(), [&](int t) -> X {
    for (std::size_t i = 0; i < partition.size(); ++i)
      if (partition.blocks()[i].contains_atom(t)) return values[i].at(t);
    throw Error(ErrorKind::InvalidAssignment, "unreachable");
  });
}

template <typename X>
CondValue<X> restrict(const CondValue<X>& x, const Cond& b) {
  return x.restrict_to(b);
}

// Support: the largest condition where x differs from the given zero payload.
template <typename X>
Cond support(const CondValue<X>& x, const X& zero) {
  std::uint64_t bits = 0;
  for (int t : x.on().atom_list())
    if (!(x.at(t) == zero)) bits |= std::uint64_t{1} << t;
  return Cond(bits, x.on().algebra_atoms());
}

// A stable set over an atomic algebra is exactly a per-atom product of
// nonempty payload sets; that representation is what we store. Payload sets
// are kept sorted for structural equality.
template <typename X>
class StableSet {
 public:
  StableSet() = default;

  StableSet(Cond on, std::vector<std::vector<X>> per_atom) : on_(on), per_atom_(std::move(per_atom)) {
    if (static_cast<int>(per_atom_.size()) != on_.count())
      throw Error(ErrorKind::InvalidAssignment, "per-atom set count != atom count");
    for (auto& s : per_atom_) {
      if (s.empty())
        throw Error(ErrorKind::InvalidAssignment, "stable sets need nonempty per-atom sets");
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
    }
  }

  static StableSet null_set(const Algebra& a) { return StableSet(Cond::zero(a), {}); }

  const Cond& on() const { return on_; }
  bool is_null() const { return on_.is_zero(); }
  const std::vector<std::vector<X>>& per_atom() const { return per_atom_; }

  const std::vector<X>& at(int atom) const {
    int idx = slot(atom);
    if (idx < 0) throw Error(ErrorKind::ConditionNotBelow, "set not defined at that atom");
    return per_atom_[static_cast<std::size_t>(idx)];
  }

  // Conditional membership: x (on b <= on) belongs iff it belongs per atom.
  bool contains(const CondValue<X>& x) const {
    if (!x.on().leq(on_)) return false;
    for (int t : x.on().atom_list()) {
      const auto& s = at(t);
      if (!std::binary_search(s.begin(), s.end(), x.at(t))) return false;
    }
    return true;
  }

  // Conditional inclusion on the common condition.
  bool included_in(const StableSet& other) const {
    if (!on_.leq(other.on())) return false;
    for (int t : on_.atom_list()) {
      const auto& a = at(t);
      const auto& b = other.at(t);
      if (!std::includes(b.begin(), b.end(), a.begin(), a.end())) return false;
    }
    return true;
  }

  // All elements on `on` (per-atom product), in lexicographic slot order.
  std::vector<CondValue<X>> enumerate() const {
    std::vector<CondValue<X>> out;
    if (is_null()) return out;
    std::vector<std::size_t> idx(per_atom_.size(), 0);
    while (true) {
      std::vector<X> vals;
      vals.reserve(idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i) vals.push_back(per_atom_[i][idx[i]]);
      out.emplace_back(on_, std::move(vals));
      std::size_t i = 0;
      for (; i < idx.size(); ++i) {
        if (++idx[i] < per_atom_[i].size()) break;
        idx[i] = 0;
      }
      if (i == idx.size()) break;
    }
    return out;
  }

  std::size_t element_count() const {
    std::size_t n = is_null() ? 0 : 1;
    for (const auto& s : per_atom_) n *= s.size();
    return n;
  }

  bool operator==(const StableSet& o) const { return on_ == o.on_ && per_atom_ == o.per_atom_; }
  bool operator!=(const StableSet& o) const { return !(*this == o); }

 private:
  int slot(int atom) const {
    if (!on_.contains_atom(atom)) return -1;
    std::uint64_t below = on_.bits() & ((std::uint64_t{1} << atom) - 1);
    return __builtin_popcountll(below);
  }

  Cond on_;
  std::vector<std::vector<X>> per_atom_;
};

// Smallest stable set containing the generators: per-atom value collection.
template <typename X>
StableSet<X> stable_hull(const std::vector<CondValue<X>>& generators) {
  if (generators.empty()) throw Error(ErrorKind::EmptyFamily, "stable hull of an empty family");
  const Cond& a = generators.front().on();
  if (a.is_zero()) throw Error(ErrorKind::ConditionMismatch, "stable hull on condition 0");
  std::vector<std::vector<X>> per_atom;
  per_atom.reserve(static_cast<std::size_t>(a.count()));
  for (int t : a.atom_list()) {
    std::vector<X> s;
    for (const auto& g : generators) {
      if (!(g.on() == a))
        throw Error(ErrorKind::ConditionMismatch, "generators on mixed conditions");
      s.push_back(g.at(t));
    }
    per_atom.push_back(std::move(s));
  }
  return StableSet<X>(a, std::move(per_atom));
}

// Conditional union: per-atom union on the join of the conditions.
template <typename X>
StableSet<X> set_union(const StableSet<X>& f, const StableSet<X>& g) {
  Cond on = f.on().join(g.on());
  std::vector<std::vector<X>> per_atom;
  for (int t : on.atom_list()) {
    std::vector<X> s;
    if (f.on().contains_atom(t)) s = f.at(t);
    if (g.on().contains_atom(t)) {
      const auto& gs = g.at(t);
      s.insert(s.end(), gs.begin(), gs.end());
    }
    per_atom.push_back(std::move(s));
  }
  return StableSet<X>(on, std::move(per_atom));
}

// Conditional intersection: per-atom intersection, restricted to the largest
// condition where it is nonempty.
template <typename X>
StableSet<X> set_intersection(const StableSet<X>& f, const StableSet<X>& g) {
  Cond common = f.on().meet(g.on());
  std::uint64_t bits = 0;
  std::vector<std::vector<X>> per_atom;
  for (int t : common.atom_list()) {
    std::vector<X> s;
    const auto& fs = f.at(t);
    const auto& gs = g.at(t);
    std::set_intersection(fs.begin(), fs.end(), gs.begin(), gs.end(), std::back_inserter(s));
    if (!s.empty()) {
      bits |= std::uint64_t{1} << t;
      per_atom.push_back(std::move(s));
    }
  }
  return StableSet<X>(Cond(bits, common.algebra_atoms()), std::move(per_atom));
}

// Conditional complement relative to an ambient universe on 1, restricted to
// the largest condition where it is nonempty.
template <typename X>
StableSet<X> set_complement(const StableSet<X>& f, const std::optional<StableSet<X>>& universe) {
  if (!universe) throw Error(ErrorKind::MissingUniverse, "complement needs an ambient universe");
  const StableSet<X>& u = *universe;
  if (!u.on().is_one())
    throw Error(ErrorKind::MissingUniverse, "ambient universe must live on 1");
  if (!f.included_in(u))
    throw Error(ErrorKind::InvalidAssignment, "set not contained in the universe");
  std::uint64_t bits = 0;
  std::vector<std::vector<X>> per_atom;
  for (int t : u.on().atom_list()) {
    std::vector<X> s;
    const auto& us = u.at(t);
    if (f.on().contains_atom(t)) {
      const auto& fs = f.at(t);
      std::set_difference(us.begin(), us.end(), fs.begin(), fs.end(), std::back_inserter(s));
    } else {
      s = us;
    }
    if (!s.empty()) {
      bits |= std::uint64_t{1} << t;
      per_atom.push_back(std::move(s));
    }
  }
  return StableSet<X>(Cond(bits, u.on().algebra_atoms()), std::move(per_atom));
}

}  // namespace condan
