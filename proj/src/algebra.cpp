#include "condan/algebra.hpp"

#include <algorithm>
#include <map>

namespace condan {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::InvalidAssignment: return "InvalidAssignment";
    case ErrorKind::ConditionNotBelow: return "ConditionNotBelow";
    case ErrorKind::ConditionMismatch: return "ConditionMismatch";
    case ErrorKind::EmptyFamily: return "EmptyFamily";
    case ErrorKind::MissingUniverse: return "MissingUniverse";
    case ErrorKind::InsufficientSequence: return "InsufficientSequence";
    case ErrorKind::UncertifiedTail: return "UncertifiedTail";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::UnsupportedNormKind: return "UnsupportedNormKind";
    case ErrorKind::NotInjective: return "NotInjective";
    case ErrorKind::NotBounded: return "NotBounded";
    case ErrorKind::ZeroFunctional: return "ZeroFunctional";
    case ErrorKind::Undecided: return "Undecided";
    case ErrorKind::UnboundedOnCondition: return "UnboundedOnCondition";
    case ErrorKind::NotACover: return "NotACover";
    case ErrorKind::ResolutionExhausted: return "ResolutionExhausted";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
    case ErrorKind::BadInput: return "BadInput";
  }
  return "UnknownError";
}

Algebra::Algebra(int atom_count) : m_(atom_count) {
  if (atom_count < 1 || atom_count > kMaxAtoms)
    throw Error(ErrorKind::BadInput,
                "atom count must be in [1, " + std::to_string(kMaxAtoms) + "]");
}

Cond::Cond(std::uint64_t bits, int atom_count) : bits_(bits), m_(atom_count) {
  if (atom_count < 1 || atom_count > Algebra::kMaxAtoms)
    throw Error(ErrorKind::BadInput, "condition over invalid algebra size");
  if (bits & ~full_mask(atom_count))
    throw Error(ErrorKind::BadInput, "condition contains atoms outside the algebra");
}

Cond Cond::from_atoms(const Algebra& a, const std::vector<int>& atoms) {
  std::uint64_t bits = 0;
  for (int t : atoms) {
    if (t < 0 || t >= a.atoms())
      throw Error(ErrorKind::BadInput, "atom index " + std::to_string(t) + " out of range");
    bits |= std::uint64_t{1} << t;
  }
  return Cond(bits, a.atoms());
}

std::vector<int> Cond::atom_list() const {
  std::vector<int> out;
  for (int t = 0; t < m_; ++t)
    if (contains_atom(t)) out.push_back(t);
  return out;
}

std::string Cond::str() const {
  std::string s = "{";
  bool first = true;
  for (int t : atom_list()) {
    if (!first) s += ",";
    s += std::to_string(t);
    first = false;
  }
  return s + "}";
}

Partition::Partition(Cond owner, std::vector<Cond> blocks)
    : owner_(owner), blocks_(std::move(blocks)) {
  std::uint64_t seen = 0;
  for (const Cond& b : blocks_) {
    if (b.algebra_atoms() != owner_.algebra_atoms())
      throw Error(ErrorKind::AlgebraMismatch, "partition block from a different algebra");
    if (seen & b.bits())
      throw Error(ErrorKind::InvalidAssignment, "partition blocks overlap");
    seen |= b.bits();
  }
  if (seen != owner_.bits())
    throw Error(ErrorKind::InvalidAssignment, "partition blocks do not join to the owner");
  std::stable_sort(blocks_.begin(), blocks_.end(), [](const Cond& a, const Cond& b) {
    // empty blocks (first_atom == -1) sort last
    unsigned ka = a.is_zero() ? 1u << 30 : static_cast<unsigned>(a.first_atom());
    unsigned kb = b.is_zero() ? 1u << 30 : static_cast<unsigned>(b.first_atom());
    return ka < kb;
  });
}

bool Partition::operator==(const Partition& o) const {
  return owner_ == o.owner_ && blocks_ == o.blocks_;
}

ConditionOps condition_ops(const Cond& x, const Cond& y) {
  return ConditionOps{x.meet(y), x.join(y), x.complement(), x.leq(y)};
}

Partition make_partition(const Cond& owner,
                         const std::vector<std::pair<int, std::string>>& assignment) {
  std::uint64_t covered = 0;
  std::map<std::string, std::uint64_t> groups;
  for (const auto& [atom, label] : assignment) {
    if (atom < 0 || atom >= owner.algebra_atoms() || !owner.contains_atom(atom))
      throw Error(ErrorKind::InvalidAssignment,
                  "assignment mentions atom " + std::to_string(atom) + " outside the owner");
    std::uint64_t bit = std::uint64_t{1} << atom;
    if (covered & bit)
      throw Error(ErrorKind::InvalidAssignment,
                  "atom " + std::to_string(atom) + " assigned twice");
    covered |= bit;
    groups[label] |= bit;
  }
  if (covered != owner.bits())
    throw Error(ErrorKind::InvalidAssignment, "assignment does not cover the owner");
  std::vector<Cond> blocks;
  blocks.reserve(groups.size());
  for (const auto& [label, bits] : groups) blocks.emplace_back(bits, owner.algebra_atoms());
  return Partition(owner, std::move(blocks));
}

Partition refine_partitions(const Partition& p, const Partition& q) {
  if (!(p.owner() == q.owner()))
    throw Error(ErrorKind::InvalidAssignment, "partitions refine different owners");
  std::vector<Cond> blocks;
  for (const Cond& a : p.blocks())
    for (const Cond& b : q.blocks()) {
      Cond m = a.meet(b);
      if (!m.is_zero()) blocks.push_back(m);
    }
  return Partition(p.owner(), std::move(blocks));
}

}  // namespace condan
