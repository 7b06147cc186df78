#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "condan/errors.hpp"

namespace condan {

// Finite complete Boolean algebra: the powerset of {0,...,m-1}. Every finite
// complete Boolean algebra is isomorphic to one of these, and all conditional
// objects in this library live over it. Conditions are atom-index sets stored
// as bitmasks, which fixes the representation cap at 64 atoms.
class Algebra {
 public:
  static constexpr int kMaxAtoms = 64;

  explicit Algebra(int atom_count);

  int atoms() const { return m_; }

 private:
  int m_;
};

// An element of the algebra: a set of atom indices. Carries the atom count of
// its algebra so cross-algebra operations can be rejected.
class Cond {
 public:
  Cond() : bits_(0), m_(0) {}  // condition of the trivial not-yet-bound state
  Cond(std::uint64_t bits, int atom_count);

  static Cond zero(const Algebra& a) { return Cond(0, a.atoms()); }
  static Cond one(const Algebra& a) { return Cond(full_mask(a.atoms()), a.atoms()); }
  static Cond atom(const Algebra& a, int t) { return Cond(std::uint64_t{1} << t, a.atoms()); }
  static Cond from_atoms(const Algebra& a, const std::vector<int>& atoms);

  std::uint64_t bits() const { return bits_; }
  int algebra_atoms() const { return m_; }

  bool is_zero() const { return bits_ == 0; }
  bool is_one() const { return bits_ == full_mask(m_); }
  bool contains_atom(int t) const { return (bits_ >> t) & 1u; }
  int count() const { return __builtin_popcountll(bits_); }

  Cond meet(const Cond& o) const { return Cond(bits_ & check(o).bits_, m_); }
  Cond join(const Cond& o) const { return Cond(bits_ | check(o).bits_, m_); }
  Cond minus(const Cond& o) const { return Cond(bits_ & ~check(o).bits_, m_); }
  Cond complement() const { return Cond(~bits_ & full_mask(m_), m_); }
  bool leq(const Cond& o) const { return (bits_ & ~check(o).bits_) == 0; }
  bool disjoint(const Cond& o) const { return (bits_ & check(o).bits_) == 0; }

  // smallest contained atom; -1 for the zero condition
  int first_atom() const { return bits_ ? __builtin_ctzll(bits_) : -1; }

  std::vector<int> atom_list() const;

  bool operator==(const Cond& o) const { return bits_ == o.bits_ && m_ == o.m_; }
  bool operator!=(const Cond& o) const { return !(*this == o); }

  std::string str() const;

  static std::uint64_t full_mask(int m) {
    return m >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1);
  }

 private:
  const Cond& check(const Cond& o) const {
    if (o.m_ != m_) throw Error(ErrorKind::AlgebraMismatch, "conditions from different algebras");
    return o;
  }

  std::uint64_t bits_;
  int m_;
};

// A finite family of pairwise disjoint conditions whose join is the owner.
// Empty blocks are allowed. Blocks are kept in canonical order (by smallest
// contained atom, empty blocks last) so structural equality is well defined.
class Partition {
 public:
  Partition(Cond owner, std::vector<Cond> blocks);

  const Cond& owner() const { return owner_; }
  const std::vector<Cond>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }

  bool operator==(const Partition& o) const;

 private:
  Cond owner_;
  std::vector<Cond> blocks_;
};

struct ConditionOps {
  Cond meet;
  Cond join;
  Cond complement_of_x;
  bool leq;
};

ConditionOps condition_ops(const Cond& x, const Cond& y);

// Blocks are the label preimages; the assignment must cover exactly the
// owner's atoms.
Partition make_partition(const Cond& owner, const std::vector<std::pair<int, std::string>>& assignment);

// Common refinement: all nonzero pairwise meets.
Partition refine_partitions(const Partition& p, const Partition& q);

}  // namespace condan
