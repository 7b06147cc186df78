#include "condan/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "condan/json_io.hpp"
#include "condan/kernels.hpp"

namespace condan::harness {

using nlohmann::json;

namespace {

// Checks are normalized so that "measured <= allowed" maps to a violation of
// at most the suite tolerance; max_violation <= tolerance iff all passed.
class Checker {
 public:
  explicit Checker(double tol) : tol_(tol) {}

  void leq(const char* name, double measured, double allowed) {
    double v;
    if (allowed > 0.0)
      v = measured * (tol_ / allowed);
    else
      v = measured <= 0.0 ? 0.0 : 2.0 * tol_ * (1.0 + measured);
    if (v > violation_) violation_ = v;
    if (v > tol_ && fails_.size() < 4)
      fails_.push_back(json{{"check", name}, {"measured", measured}, {"allowed", allowed}});
  }

  void is_true(const char* name, bool ok) { leq(name, ok ? 0.0 : 1.0, 0.0); }

  void near(const char* name, double value, double expected, double allowed) {
    leq(name, std::fabs(value - expected), allowed);
  }

  bool passed() const { return violation_ <= tol_; }
  double violation() const { return violation_; }
  const json& fails() const { return fails_; }

 private:
  double tol_;
  double violation_ = 0.0;
  json fails_ = json::array();
};

struct CaseOutcome {
  bool passed = true;
  double violation = 0.0;
  json witness;  // null unless failed
};

CaseOutcome finish(const Checker& ck, const SuiteConfig& cfg, int idx,
                   const json& instance = json()) {
  CaseOutcome out;
  out.passed = ck.passed();
  out.violation = ck.violation();
  if (!out.passed) {
    out.witness = json{{"case", idx},
                       {"seed", cfg.seed},
                       {"suite", cfg.suite_name},
                       {"failed_checks", ck.fails()}};
    if (!instance.is_null()) out.witness["instance"] = instance;
  }
  return out;
}

int suite_stream(const std::string& name);

Rng case_rng(const SuiteConfig& cfg, int case_idx, int salt = 0) {
  return Rng(cfg.seed, static_cast<std::uint64_t>(suite_stream(cfg.suite_name) * 131 + salt),
             static_cast<std::uint64_t>(case_idx));
}

// ---- shared random builders ------------------------------------------------

Cond random_nonzero_condition(const Algebra& alg, Rng& rng) {
  std::uint64_t mask = Cond::full_mask(alg.atoms());
  std::uint64_t bits = rng.next_u64() & mask;
  if (!bits) bits = std::uint64_t{1} << rng.below(static_cast<std::uint64_t>(alg.atoms()));
  return Cond(bits, alg.atoms());
}

Partition random_partition_of_one(const Algebra& alg, Rng& rng, int max_blocks = 3) {
  Cond one = Cond::one(alg);
  std::vector<std::pair<int, std::string>> assignment;
  for (int t = 0; t < alg.atoms(); ++t)
    assignment.emplace_back(
        t, std::string(1, static_cast<char>('a' + rng.below(static_cast<std::uint64_t>(max_blocks)))));
  return make_partition(one, assignment);
}

CondReal random_cond_real(const Cond& on, Rng& rng, double lo, double hi) {
  return CondReal::from_atom_fn(on, [&](int) { return rng.uniform(lo, hi); });
}

CondValue<int> random_int_value(const Cond& on, Rng& rng, int universe) {
  return CondValue<int>::from_atom_fn(
      on, [&](int) { return static_cast<int>(rng.below(static_cast<std::uint64_t>(universe))); });
}

StableSet<int> random_int_stable_set(const Cond& on, Rng& rng, int universe) {
  std::vector<std::vector<int>> per_atom;
  for (int i = 0; i < on.count(); ++i) {
    std::vector<int> s;
    for (int v = 0; v < universe; ++v)
      if (rng.coin(0.5)) s.push_back(v);
    if (s.empty()) s.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(universe))));
    per_atom.push_back(std::move(s));
  }
  return StableSet<int>(on, std::move(per_atom));
}

StableSet<int> random_subset_of(const StableSet<int>& u, Rng& rng) {
  Cond on = u.on();
  if (on.count() > 1 && rng.coin(0.3)) {
    std::uint64_t bits = on.bits();
    int drop = static_cast<int>(rng.below(static_cast<std::uint64_t>(on.count())));
    bits &= ~(std::uint64_t{1} << on.atom_list()[static_cast<std::size_t>(drop)]);
    on = Cond(bits, on.algebra_atoms());
  }
  std::vector<std::vector<int>> per_atom;
  for (int t : on.atom_list()) {
    const auto& base = u.at(t);
    std::vector<int> s;
    for (int v : base)
      if (rng.coin(0.6)) s.push_back(v);
    if (s.empty()) s.push_back(base[rng.below(base.size())]);
    per_atom.push_back(std::move(s));
  }
  return StableSet<int>(on, std::move(per_atom));
}

int effective_atoms(const SuiteConfig& cfg, int cap) {
  return std::max(1, std::min(cfg.atoms, cap));
}

}  // namespace

// ---- public generators -------------------------------------------------

SymmetricBody gen_body(const Algebra& alg, Rng& rng, int min_dim, int max_dim, int extra_dirs) {
  Cond on = Cond::one(alg);
  std::vector<HBody> bodies;
  for (int t = 0; t < alg.atoms(); ++t) {
    (void)t;
    int d = rng.uniform_int(min_dim, max_dim);
    HBody h;
    for (int i = 0; i < d; ++i) {
      std::vector<double> e(static_cast<std::size_t>(d), 0.0);
      e[static_cast<std::size_t>(i)] = 1.0;
      h.faces.push_back(Halfspace{std::move(e), rng.uniform(0.4, 2.5)});
    }
    for (int j = 0; j < extra_dirs; ++j) {
      std::vector<double> u(static_cast<std::size_t>(d));
      double nn = 0.0;
      while (nn < 1e-3) {
        for (double& v : u) v = rng.normal();
        nn = vec_norm2(u);
      }
      for (double& v : u) v /= nn;
      h.faces.push_back(Halfspace{u, rng.uniform(0.4, 2.5)});
    }
    bodies.push_back(std::move(h));
  }
  return SymmetricBody(on, std::move(bodies));
}

SymmetricBody gen_body_with_slabs(const Algebra& alg, Rng& rng, int min_dim, int max_dim,
                                  int extra_dirs, const Cond& slab_atoms) {
  min_dim = std::max(min_dim, 2);
  max_dim = std::max(max_dim, min_dim);
  Cond on = Cond::one(alg);
  std::vector<HBody> bodies;
  for (int t = 0; t < alg.atoms(); ++t) {
    int d = rng.uniform_int(min_dim, max_dim);
    bool slab = slab_atoms.contains_atom(t);
    int free_axis = slab ? rng.uniform_int(0, d - 1) : -1;
    HBody h;
    for (int i = 0; i < d; ++i) {
      if (i == free_axis) continue;
      std::vector<double> e(static_cast<std::size_t>(d), 0.0);
      e[static_cast<std::size_t>(i)] = 1.0;
      h.faces.push_back(Halfspace{std::move(e), rng.uniform(0.4, 2.5)});
    }
    for (int j = 0; j < extra_dirs; ++j) {
      std::vector<double> u(static_cast<std::size_t>(d));
      double nn = 0.0;
      while (nn < 1e-3) {
        for (double& v : u) v = rng.normal();
        if (free_axis >= 0) u[static_cast<std::size_t>(free_axis)] = 0.0;
        nn = vec_norm2(u);
      }
      for (double& v : u) v /= nn;
      h.faces.push_back(Halfspace{u, rng.uniform(0.4, 2.5)});
    }
    bodies.push_back(std::move(h));
  }
  return SymmetricBody(on, std::move(bodies));
}

CondVector gen_point_in_body(const SymmetricBody& body, Rng& rng) {
  return CondVector::from_atom_fn(body.on(), [&](int t) {
    auto verts = hbody_vertices(body.at(t));
    std::vector<double> w(verts.size());
    double sum = 0.0;
    for (double& v : w) {
      v = rng.uniform();
      sum += v;
    }
    std::vector<double> p(verts.front().size(), 0.0);
    for (std::size_t i = 0; i < verts.size(); ++i)
      kern::axpy(w[i] / sum, verts[i].data(), p.data(), p.size());
    double shrink = rng.uniform(0.0, 0.95);
    for (double& v : p) v *= shrink;
    return p;
  });
}

CondSequence gen_convergent_sequence(const SymmetricBody& body, Rng& rng) {
  const Cond on = body.on();
  struct AtomPattern {
    std::vector<double> center;
    std::vector<double> dir;
    double rate;
    int mode;  // 0: geometric, 1: alternating-sign geometric, 2: two-point cluster
  };
  auto patterns = std::make_shared<std::vector<AtomPattern>>();
  for (int t : on.atom_list()) {
    auto verts = hbody_vertices(body.at(t));
    const auto& v0 = verts[rng.below(verts.size())];
    AtomPattern p;
    double shrink = 0.45 * rng.uniform();  // scalar: balancedness keeps it inside
    p.center.assign(v0.size(), 0.0);
    for (std::size_t i = 0; i < v0.size(); ++i) p.center[i] = shrink * v0[i];
    const auto& v1 = verts[rng.below(verts.size())];
    p.dir.assign(v1.size(), 0.0);
    for (std::size_t i = 0; i < v1.size(); ++i) p.dir[i] = 0.3 * (v1[i] - p.center[i]);
    p.rate = rng.uniform(0.3, 0.8);
    p.mode = rng.uniform_int(0, 2);
    patterns->push_back(std::move(p));
  }
  return CondSequence([on, patterns](int k) {
    std::size_t slot = 0;
    return CondVector::from_atom_fn(on, [&](int) {
      const AtomPattern& p = (*patterns)[slot++];
      std::vector<double> x = p.center;
      double f;
      switch (p.mode) {
        case 0: f = std::pow(p.rate, k); break;
        case 1: f = std::pow(-p.rate, k); break;
        default: f = (k % 2 == 0) ? 1.0 : -1.0; break;
      }
      kern::axpy(f, p.dir.data(), x.data(), x.size());
      return x;
    });
  });
}

std::vector<ClosedSet> gen_closed_cover(const Algebra& alg, int dim, Rng& rng) {
  // three interval products covering [-1,1]^dim, cut along a random axis
  // with overlap; cuts differ per atom
  Cond on = Cond::one(alg);
  const double margin = 0.05;
  std::vector<std::vector<IntervalProductAtom>> pieces(3);
  for (int t = 0; t < alg.atoms(); ++t) {
    (void)t;
    int axis = rng.uniform_int(0, dim - 1);
    double c1 = rng.uniform(-0.6, 0.0);
    double c2 = rng.uniform(0.1, 0.7);
    for (int n = 0; n < 3; ++n) {
      IntervalProductAtom ip;
      for (int i = 0; i < dim; ++i) {
        double lo = -1.0, hi = 1.0;
        if (i == axis) {
          if (n == 0) hi = c1 + margin;
          if (n == 1) {
            lo = c1 - margin;
            hi = c2 + margin;
          }
          if (n == 2) lo = c2 - margin;
        }
        ip.bounds.emplace_back(lo, hi);
      }
      pieces[static_cast<std::size_t>(n)].push_back(std::move(ip));
    }
  }
  std::vector<ClosedSet> out;
  for (int n = 0; n < 3; ++n) {
    std::vector<ClosedSetAtom> atoms;
    for (int t = 0; t < alg.atoms(); ++t)
      atoms.push_back(
          ClosedSetAtom{{pieces[static_cast<std::size_t>(n)][static_cast<std::size_t>(t)]}});
    out.push_back(ClosedSet(on, std::move(atoms)));
  }
  return out;
}

std::vector<CondLinearMap> gen_operator_family(const Algebra& alg, Rng& rng, int count,
                                               int max_dim, NormKind kind) {
  Cond on = Cond::one(alg);
  std::vector<int> dims;
  for (int t = 0; t < alg.atoms(); ++t) {
    (void)t;
    dims.push_back(rng.uniform_int(1, max_dim));
  }
  std::vector<CondLinearMap> out;
  for (int g = 0; g < count; ++g) {
    std::vector<Mat> mats;
    for (int t = 0; t < alg.atoms(); ++t) {
      int d = dims[static_cast<std::size_t>(t)];
      Mat m(d, d);
      for (double& v : m.a) v = rng.uniform(-2.0, 2.0);
      mats.push_back(std::move(m));
    }
    out.push_back(CondLinearMap(on, std::move(mats), CondNorm::lp(kind), CondNorm::lp(kind)));
  }
  return out;
}

std::vector<CondVector> gen_dense_points(const Algebra& alg, Rng& rng, int dim, int count) {
  Cond on = Cond::one(alg);
  std::vector<CondVector> out;
  for (int i = 0; i < count; ++i) {
    int basis_axis = i % dim;
    out.push_back(CondVector::from_atom_fn(on, [&](int) {
      std::vector<double> v(static_cast<std::size_t>(dim));
      for (double& c : v) c = 0.15 * rng.normal();
      v[static_cast<std::size_t>(basis_axis)] += rng.coin() ? 1.0 : -1.0;
      return v;
    }));
  }
  return out;
}

// ---- suites -------------------------------------------------------------

namespace {

// Definitional one-step concatenation closure of the generators: every
// assignment of a generator to each atom. Oracle for the stable hull.
template <typename X>
std::vector<CondValue<X>> concatenation_closure(const std::vector<CondValue<X>>& gens) {
  const Cond on = gens.front().on();
  std::vector<int> atoms = on.atom_list();
  std::vector<CondValue<X>> out;
  std::vector<std::size_t> idx(atoms.size(), 0);
  while (true) {
    std::size_t slot = 0;
    out.push_back(CondValue<X>::from_atom_fn(on, [&](int t) { return gens[idx[slot++]].at(t); }));
    std::size_t i = 0;
    for (; i < idx.size(); ++i) {
      if (++idx[i] < gens.size()) break;
      idx[i] = 0;
    }
    if (i == idx.size()) break;
  }
  std::sort(out.begin(), out.end(), [](const CondValue<X>& a, const CondValue<X>& b) {
    return a.values() < b.values();
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CaseOutcome core_case(const SuiteConfig& cfg, int idx) {
  Rng rng = case_rng(cfg, idx);
  Checker ck(cfg.tolerance);
  Algebra alg(effective_atoms(cfg, 6));
  Cond one = Cond::one(alg);

  // stable hull vs the definitional closure
  int universe = rng.uniform_int(1, 4);
  int gcount = rng.uniform_int(1, 3);
  std::vector<CondValue<int>> gens;
  for (int g = 0; g < gcount; ++g) gens.push_back(random_int_value(one, rng, universe));
  StableSet<int> hull = stable_hull(gens);
  auto closure = concatenation_closure(gens);
  if (hull.element_count() <= 4096) {
    auto members = hull.enumerate();
    std::sort(members.begin(), members.end(), [](const CondValue<int>& a, const CondValue<int>& b) {
      return a.values() < b.values();
    });
    ck.is_true("hull-equals-closure", members == closure);
    ck.is_true("closure-idempotent", stable_hull(closure) == hull);
  } else {
    for (const auto& c : closure) ck.is_true("closure-in-hull", hull.contains(c));
  }

  // power-set Boolean laws relative to a universe
  StableSet<int> u = random_int_stable_set(one, rng, universe + 2);
  StableSet<int> f = random_subset_of(u, rng);
  StableSet<int> g2 = random_subset_of(u, rng);
  StableSet<int> h = random_subset_of(u, rng);
  std::optional<StableSet<int>> uni = u;
  auto fc = set_complement(f, uni);
  auto gc = set_complement(g2, uni);
  ck.is_true("de-morgan-union", set_complement(set_union(f, g2), uni) == set_intersection(fc, gc));
  ck.is_true("de-morgan-intersection",
             set_complement(set_intersection(f, g2), uni) == set_union(fc, gc));
  ck.is_true("distribute-meet", set_intersection(f, set_union(g2, h)) ==
                                    set_union(set_intersection(f, g2), set_intersection(f, h)));
  ck.is_true("distribute-join", set_union(f, set_intersection(g2, h)) ==
                                    set_intersection(set_union(f, g2), set_union(f, h)));
  ck.is_true("complement-top", set_union(f, fc) == u);
  ck.is_true("complement-bottom", set_intersection(f, fc).is_null());
  ck.is_true("double-complement", set_complement(fc, uni) == f);
  ck.is_true("order-least", StableSet<int>::null_set(alg).included_in(f));
  ck.is_true("order-greatest", f.included_in(u));

  // consistency and concatenation axioms for conditional values
  CondValue<int> x = random_int_value(one, rng, universe);
  CondValue<int> z = random_int_value(one, rng, universe);
  Cond b = random_nonzero_condition(alg, rng);
  CondValue<int> y = patch<int>({x.restrict_to(b), z.restrict_to(b.complement())});
  Cond a = Cond(b.bits() & rng.next_u64(), alg.atoms());
  ck.is_true("consistency", x.restrict_to(a) == y.restrict_to(a));
  Partition part = random_partition_of_one(alg, rng);
  std::vector<CondValue<int>> vals;
  for (std::size_t i = 0; i < part.size(); ++i) vals.push_back(random_int_value(one, rng, universe));
  CondValue<int> w = concatenate(vals, part);
  bool agrees = true;
  for (std::size_t i = 0; i < part.size(); ++i)
    for (int t : part.blocks()[i].atom_list())
      if (w.at(t) != vals[i].at(t)) agrees = false;
  ck.is_true("concatenation-agrees", agrees);

  // support
  CondValue<int> s = random_int_value(one, rng, 2);
  Cond sup = support(s, 0);
  bool sup_ok = true;
  for (int t : one.atom_list()) sup_ok &= sup.contains_atom(t) == (s.at(t) != 0);
  ck.is_true("support-definition", sup_ok);

  return finish(ck, cfg, idx);
}

CaseOutcome numbers_case(const SuiteConfig& cfg, int idx) {
  Rng rng = case_rng(cfg, idx);
  Checker ck(cfg.tolerance);
  Algebra alg(effective_atoms(cfg, 6));
  Cond one = Cond::one(alg);

  // inverse identity on the support
  CondReal r = CondReal::from_atom_fn(
      one, [&](int) { return rng.coin(0.3) ? 0.0 : rng.uniform(-4.0, 4.0); });
  CondReal inv = cond_inverse(r);
  for (int t : one.atom_list()) {
    double prod = r.at(t) * inv.at(t);
    double ind = r.at(t) != 0.0 ? 1.0 : 0.0;
    ck.near("inverse-indicator", prod, ind, 1e-12);
  }

  // partial sums respect concatenation
  const int klen = 8;
  std::vector<CondReal> seq;
  for (int k = 0; k < klen; ++k) seq.push_back(random_cond_real(one, rng, -2.0, 2.0));
  Partition part = random_partition_of_one(alg, rng);
  std::vector<CondNat> ns;
  for (std::size_t i = 0; i < part.size(); ++i)
    ns.push_back(CondNat(CondValue<std::int64_t>::from_atom_fn(
        one, [&](int) { return static_cast<std::int64_t>(rng.uniform_int(1, klen)); })));
  std::vector<CondValue<std::int64_t>> nvals;
  for (const auto& n : ns) nvals.push_back(n.value());
  CondNat n_concat{concatenate(nvals, part)};
  CondReal lhs = partial_sum(seq, n_concat);
  std::vector<CondReal> rhs_frags;
  for (std::size_t i = 0; i < part.size(); ++i)
    if (!part.blocks()[i].is_zero())
      rhs_frags.push_back(partial_sum(seq, ns[i]).restrict_to(part.blocks()[i]));
  CondReal rhs = patch(rhs_frags);
  ck.is_true("partial-sum-concatenation", lhs == rhs);

  // sup/inf against the enumeration of the hull
  std::vector<CondReal> gens;
  int gcount = rng.uniform_int(1, 3);
  for (int g = 0; g < gcount; ++g) gens.push_back(random_cond_real(one, rng, -3.0, 3.0));
  StableSet<double> hull = stable_hull(gens);
  SupInf si = sup_inf(hull);
  bool upper = true, attained_sup = false, lower = true;
  for (const auto& e : hull.enumerate()) {
    upper &= compare(e, si.sup).leq;
    if (e == si.sup) attained_sup = true;
    lower &= compare(si.inf, e).leq;
  }
  ck.is_true("sup-is-upper-bound", upper);
  ck.is_true("inf-is-lower-bound", lower);
  ck.is_true("sup-attained", attained_sup);
  CondReal bump = random_cond_real(one, rng, 0.0, 2.0);
  ck.is_true("sup-least", compare(si.sup, arith(si.sup, bump, ArithOp::Add)).leq);

  // geometric series against the closed form
  CondReal ratio = random_cond_real(one, rng, 0.1, 0.85);
  const int kcut = cfg.truncation;
  std::vector<CondReal> geo;
  for (int k = 1; k <= kcut; ++k)
    geo.push_back(ratio.map([k](double rr) { return std::pow(rr, k); }));
  CondReal tail = ratio.map([kcut](double rr) { return std::pow(rr, kcut + 1) / (1.0 - rr); });
  SeriesValue sv = series_limit(geo, kcut, tail);
  for (int t : one.atom_list()) {
    double rr = ratio.at(t);
    double closed = rr * (1.0 - std::pow(rr, kcut)) / (1.0 - rr);
    ck.near("series-truncated-sum", sv.value.at(t), closed, 1e-10 * (1.0 + closed));
    double limit_exact = rr / (1.0 - rr);
    ck.leq("series-tail-certificate", std::fabs(limit_exact - sv.value.at(t)),
           sv.tail_bound.at(t) * (1.0 + 1e-9) + 1e-12);
  }

  CondReal cx = random_cond_real(one, rng, -1.0, 1.0);
  CompareResult cc = compare(cx, cx);
  ck.is_true("compare-reflexive", cc.leq && cc.lt_condition.is_zero());
  return finish(ck, cfg, idx);
}

double bisect_gauge_oracle(const HBody& body, const double* x) {
  auto member = [&](double r) {
    for (const auto& f : body.faces)
      if (std::fabs(kern::dot(f.u.data(), x, f.u.size())) > r * f.c) return false;
    return true;
  };
  if (member(1e-300)) return 0.0;
  double hi = 1.0;
  int guard = 0;
  while (!member(hi) && guard++ < 2000) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < 120; ++it) {
    double mid = 0.5 * (lo + hi);
    if (member(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

CaseOutcome gauge_case(const SuiteConfig& cfg, int idx) {
  Rng rng = case_rng(cfg, idx);
  Checker ck(cfg.tolerance);
  Algebra alg(effective_atoms(cfg, 3));
  int max_dim = std::min(4, std::max(1, cfg.max_dim + 1));
  SymmetricBody body = gen_body(alg, rng, 1, max_dim, 4);
  Cond one = Cond::one(alg);

  auto rand_vec = [&](const SymmetricBody& b) {
    return CondVector::from_atom_fn(one, [&](int t) {
      std::vector<double> v(static_cast<std::size_t>(b.at(t).dim()));
      for (double& c : v) c = rng.uniform(-3.0, 3.0);
      return v;
    });
  };
  CondVector x = rand_vec(body);
  CondVector y = rand_vec(body);
  CondReal r = random_cond_real(one, rng, -3.0, 3.0);

  CondReal gx = gauge(body, x);
  CondReal gy = gauge(body, y);
  CondReal grx = gauge(body, cv_scale(x, r));
  CondReal gxy = gauge(body, cv_add(x, y));
  for (int t : one.atom_list()) {
    ck.is_true("gauge-finite", std::isfinite(gx.at(t)));
    ck.leq("gauge-homogeneity", std::fabs(grx.at(t) - std::fabs(r.at(t)) * gx.at(t)),
           1e-9 * (1.0 + gx.at(t)));
    ck.leq("gauge-triangle", gxy.at(t) - (gx.at(t) + gy.at(t)), 1e-9);
    std::vector<double> zero(static_cast<std::size_t>(body.at(t).dim()), 0.0);
    ck.near("gauge-zero-vector", hbody_gauge(body.at(t), zero.data()), 0.0, 1e-15);
  }

  if (idx % 10 == 0) {
    for (int t : one.atom_list()) {
      double oracle = bisect_gauge_oracle(body.at(t), x.at(t).data());
      ck.leq("gauge-vs-bisection", std::fabs(gx.at(t) - oracle), 1e-9 * (1.0 + gx.at(t)));
    }
  }

  // U_{Q,r} membership
  std::vector<Seminorm> q;
  q.push_back(Seminorm::of_body(body));
  CondVector f = rand_vec(body);
  q.push_back(Seminorm::of_functional(f));
  CondReal rad = random_cond_real(one, rng, 0.5, 2.0);
  ck.is_true("neighborhood-contains-center", neighborhood_member(q, rad, x, x) == one);
  CondVector probe = rand_vec(body);
  Cond got = neighborhood_member(q, rad, x, probe);
  CondVector diff = cv_sub(probe, x);
  CondReal p1 = gauge(body, diff);
  CondReal p2 = cv_dot(f, diff);
  bool match = true;
  for (int t : one.atom_list()) {
    bool expect = std::max(p1.at(t), std::fabs(p2.at(t))) <= rad.at(t);
    match &= expect == got.contains_atom(t);
  }
  ck.is_true("neighborhood-per-atom", match);
  return finish(ck, cfg, idx);
}

CaseOutcome linear_case(const SuiteConfig& cfg, int idx) {
  Rng rng = case_rng(cfg, idx);
  Checker ck(cfg.tolerance);
  Algebra alg(effective_atoms(cfg, 3));
  Cond one = Cond::one(alg);
  int d = rng.uniform_int(1, std::min(4, std::max(1, cfg.max_dim)));

  NormKind kinds[3] = {NormKind::L1, NormKind::L2, NormKind::Linf};
  NormKind kind = kinds[idx % 3];
  std::vector<Mat> mats;
  for (int t = 0; t < alg.atoms(); ++t) {
    (void)t;
    Mat m(d, d);
    for (double& v : m.a) v = rng.uniform(-2.0, 2.0);
    mats.push_back(std::move(m));
  }
  CondLinearMap tmap(one, mats, CondNorm::lp(kind), CondNorm::lp(kind));
  CondReal tn = operator_norm(tmap);

  for (int t : one.atom_list()) {
    const Mat& m = tmap.at(t);
    if (kind == NormKind::L1) {
      double brute = 0.0;
      for (int j = 0; j < d; ++j) {
        std::vector<double> e(static_cast<std::size_t>(d), 0.0);
        e[static_cast<std::size_t>(j)] = 1.0;
        auto col = matvec(m, e);
        brute = std::max(brute, kern::abs_sum(col.data(), col.size()));
      }
      ck.is_true("l1-norm-vertex-exact", brute == tn.at(t));
    } else if (kind == NormKind::Linf) {
      double brute = 0.0;
      for (int sbits = 0; sbits < (1 << d); ++sbits) {
        std::vector<double> v(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j)
          v[static_cast<std::size_t>(j)] = (sbits >> j) & 1 ? 1.0 : -1.0;
        auto img = matvec(m, v);
        brute = std::max(brute, kern::max_abs(img.data(), img.size()));
      }
      ck.is_true("linf-norm-vertex-exact", brute == tn.at(t));
    } else {
      Mat mt = transpose(m);
      auto eig = jacobi_eigenvalues(matmul(mt, m));
      double oracle = std::sqrt(std::max(0.0, eig.back()));
      ck.leq("l2-norm-vs-jacobi", std::fabs(tn.at(t) - oracle), 1e-7 * (1.0 + oracle));
    }
  }

  CondVector x = CondVector::from_atom_fn(one, [&](int) {
    std::vector<double> v(static_cast<std::size_t>(d));
    for (double& c : v) c = rng.uniform(-2.0, 2.0);
    return v;
  });
  CondReal xn = norm_value(x, CondNorm::lp(kind));
  CondReal txn = norm_value(apply(tmap, x), CondNorm::lp(kind));
  for (int t : one.atom_list())
    ck.leq("operator-bound", txn.at(t) - tn.at(t) * xn.at(t), 1e-9 * (1.0 + tn.at(t) * xn.at(t)));

  std::vector<Mat> mats2;
  for (int t = 0; t < alg.atoms(); ++t) {
    (void)t;
    Mat m(d, d);
    for (double& v : m.a) v = rng.uniform(-2.0, 2.0);
    mats2.push_back(std::move(m));
  }
  CondLinearMap tmap2(one, mats2, CondNorm::lp(kind), CondNorm::lp(kind));
  Cond bsel = random_nonzero_condition(alg, rng);
  std::vector<Mat> patched;
  for (int t : one.atom_list()) patched.push_back(bsel.contains_atom(t) ? tmap.at(t) : tmap2.at(t));
  CondLinearMap tc(one, patched, CondNorm::lp(kind), CondNorm::lp(kind));
  CondReal tcn = operator_norm(tc);
  CondReal t2n = operator_norm(tmap2);
  bool concat_ok = true;
  for (int t : one.atom_list())
    concat_ok &= tcn.at(t) == (bsel.contains_atom(t) ? tn.at(t) : t2n.at(t));
  ck.is_true("operator-norm-stable", concat_ok);

  CondLinearMap nf = norming_functional(x, kind);
  CondVector cov = nf.as_covector();
  CondReal attained = apply_functional(nf, x);
  for (int t : one.atom_list()) {
    const auto& u = cov.at(t);
    ck.leq("norming-dual-norm", dual_norm_value_at(u.data(), u.size(), kind) - 1.0, 1e-12);
    ck.near("norming-attains", attained.at(t), xn.at(t), 1e-12 * (1.0 + xn.at(t)));
  }

  // bounded-disk norm comparisons
  SymmetricBody disk = gen_body(alg, rng, d, d, 3);
  CondReal gx = gauge(disk, x);
  for (int t : one.atom_list()) {
    double r_high = 0.0;
    for (const auto& v : hbody_vertices(disk.at(t))) r_high = std::max(r_high, vec_norm2(v));
    double rho = hbody_inball_radius(disk.at(t));
    double xnorm2 = vec_norm2(x.at(t));
    ck.leq("disk-upper", xnorm2 - r_high * gx.at(t), 1e-9 * (1.0 + xnorm2));
    ck.leq("disk-lower", rho * gx.at(t) - xnorm2, 1e-9 * (1.0 + xnorm2));
  }
  return finish(ck, cfg, idx);
}

CaseOutcome embedding_case(const SuiteConfig& cfg, int idx) {
  Rng rng = case_rng(cfg, idx);
  Checker ck(cfg.tolerance);
  Algebra alg(effective_atoms(cfg, 3));
  Cond one = Cond::one(alg);
  NormKind kinds[3] = {NormKind::L1, NormKind::L2, NormKind::Linf};
  NormKind kind = kinds[idx % 3];
  int d = rng.uniform_int(1, std::min(5, std::max(1, cfg.max_dim + 2)));

  CondVector x = CondVector::from_atom_fn(one, [&](int) {
    std::vector<double> v(static_cast<std::size_t>(d));
    for (double& c : v) c = rng.uniform(-3.0, 3.0);
    return v;
  });
  CondReal xn = norm_value(x, CondNorm::lp(kind));
  EmbeddingCheck emb = embedding_check(x, kind, 32, cfg.seed + static_cast<std::uint64_t>(idx));
  CondLinearMap nf = norming_functional(x, kind);
  CondReal nf_value = apply_functional(nf, x);
  for (int t : one.atom_list()) {
    ck.leq("isometry-gap", emb.isometry_gap.at(t), 1e-6 * (1.0 + xn.at(t)));
    ck.leq("dual-ball-dominated", emb.sup_over_dual_ball.at(t) - xn.at(t),
           1e-9 * (1.0 + xn.at(t)));
    ck.near("norming-attains", nf_value.at(t), xn.at(t), 1e-12 * (1.0 + xn.at(t)));
  }

  if (d <= 3) {
    // the double-dual norm of the embedded vector equals the primal norm
    for (int t : one.atom_list()) {
      const auto& xv = x.at(t);
      double sup = 0.0;
      for (auto u : sphere_grid(d, 16)) {
        double dn = dual_norm_value_at(u.data(), u.size(), kind);
        for (double& c : u) c /= dn;
        sup = std::max(sup, std::fabs(kern::dot(u.data(), xv.data(), u.size())));
      }
      CondLinearMap nf = norming_functional(x, kind);
      sup = std::max(sup, std::fabs(kern::dot(nf.at(t).row(0), xv.data(), xv.size())));
      ck.near("bidual-norm", sup, xn.at(t), 1e-6 * (1.0 + xn.at(t)));
    }
    // unit bidual vectors are realized by unit primal vectors
    std::vector<double> z(static_cast<std::size_t>(d));
    for (double& c : z) c = rng.normal();
    double zn = norm_value_at(z.data(), z.size(), kind);
    if (zn > 1e-9) {
      for (double& c : z) c /= zn;
      CondVector zc = CondVector::from_atom_fn(one, [&](int) { return z; });
      CondReal zn2 = norm_value(zc, CondNorm::lp(kind));
      CondLinearMap znf = norming_functional(zc, kind);
      CondReal zattained = apply_functional(znf, zc);
      for (int t : one.atom_list()) {
        ck.near("bidual-realized", zn2.at(t), 1.0, 1e-9);
        ck.near("bidual-realized-attains", zattained.at(t), 1.0, 1e-9);
      }
    }
  }
  return finish(ck, cfg, idx);
}

CaseOutcome baire_case(const SuiteConfig& cfg, int idx) {
  Rng rng = case_rng(cfg, idx);
  Checker ck(cfg.tolerance);
  Algebra alg(effective_atoms(cfg, 3));
  Cond one = Cond::one(alg);
  int d = rng.uniform_int(1, std::min(2, std::max(1, cfg.max_dim)));

  std::vector<HBody> boxes;
  for (int t = 0; t < alg.atoms(); ++t) {
    (void)t;
    HBody h;
    for (int i = 0; i < d; ++i) {
      std::vector<double> e(static_cast<std::size_t>(d), 0.0);
      e[static_cast<std::size_t>(i)] = 1.0;
      h.faces.push_back(Halfspace{std::move(e), 1.0});
    }
    boxes.push_back(std::move(h));
  }
  SymmetricBody space(one, std::move(boxes));

  std::vector<ClosedSet> cover;
  if (idx % 7 == 0) {
    std::vector<ClosedSetAtom> atoms;
    for (int t = 0; t < alg.atoms(); ++t) {
      (void)t;
      IntervalProductAtom ip;
      for (int i = 0; i < d; ++i) ip.bounds.emplace_back(-1.0, 1.0);
      atoms.push_back(ClosedSetAtom{{ip}});
    }
    cover.push_back(ClosedSet(one, std::move(atoms)));
  } else {
    cover = gen_closed_cover(alg, d, rng);
  }

  BaireSchedule sched;
  BaireResult res = baire_locate(space, cover, sched);

  // external postcondition verification at ten times the sampling density
  for (int t : one.atom_list()) {
    const auto& c = res.center.at(t);
    double r = res.radius.at(t);
    int n = static_cast<int>(res.index.at(t)) - 1;
    ck.is_true("radius-positive", r > 0.0);
    ck.is_true("center-in-space", hbody_member(space.at(t), c.data(), 1e-12));
    int per_dim = sched.ball_samples_per_dim * 10;
    std::vector<int> sidx(static_cast<std::size_t>(d), 0);
    bool all_in = true;
    while (true) {
      std::vector<double> p(static_cast<std::size_t>(d));
      double off2 = 0.0;
      for (int i = 0; i < d; ++i) {
        double off = -r + 2.0 * r * sidx[static_cast<std::size_t>(i)] / (per_dim - 1);
        p[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)] + off;
        off2 += off * off;
      }
      if (off2 <= r * r && hbody_member(space.at(t), p.data(), 1e-12))
        all_in &= cover[static_cast<std::size_t>(n)].contains(t, p, 1e-12);
      int i = 0;
      for (; i < d; ++i) {
        if (++sidx[static_cast<std::size_t>(i)] < per_dim) break;
        sidx[static_cast<std::size_t>(i)] = 0;
      }
      if (i == d) break;
    }
    ck.is_true("ball-inside-one-member", all_in);
  }
  if (idx % 7 == 0) {
    bool idx1 = true;
    for (int t : one.atom_list()) idx1 &= res.index.at(t) == 1;
    ck.is_true("whole-space-gives-first-index", idx1);
  }
  return finish(ck, cfg, idx);
}

CaseOutcome ubp_case(const SuiteConfig& cfg, int idx) {
  Rng rng = case_rng(cfg, idx);
  Checker ck(cfg.tolerance);
  Algebra alg(effective_atoms(cfg, 3));
  Cond one = Cond::one(alg);
  NormKind kinds[3] = {NormKind::L1, NormKind::L2, NormKind::Linf};
  NormKind kind = kinds[idx % 3];
  int gcount = rng.uniform_int(1, 3);
  auto gens = gen_operator_family(alg, rng, gcount, std::min(3, std::max(1, cfg.max_dim)), kind);

  CondReal s = uniform_bound(gens);

  // enumeration cross-check: the sup over all per-atom selections equals
  // the per-atom generator max, exactly
  std::vector<int> atoms = one.atom_list();
  std::vector<std::size_t> sel(atoms.size(), 0);
  std::vector<double> hull_max(atoms.size(), 0.0);
  while (true) {
    std::vector<Mat> hm;
    for (std::size_t i = 0; i < atoms.size(); ++i) hm.push_back(gens[sel[i]].at(atoms[i]));
    CondLinearMap h(one, std::move(hm), CondNorm::lp(kind), CondNorm::lp(kind));
    CondReal hn = operator_norm(h);
    for (std::size_t i = 0; i < atoms.size(); ++i)
      hull_max[i] = std::max(hull_max[i], hn.at(atoms[i]));
    std::size_t i = 0;
    for (; i < sel.size(); ++i) {
      if (++sel[i] < gens.size()) break;
      sel[i] = 0;
    }
    if (i == sel.size()) break;
  }
  double worst_gap = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    worst_gap = std::max(worst_gap, std::fabs(hull_max[i] - s.at(atoms[i])));
  ck.is_true("hull-sup-equals-generator-max", worst_gap == 0.0);

  // the bound holds over random hull concatenations and sampled points
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<Mat> hm;
    for (int t : atoms) hm.push_back(gens[rng.below(gens.size())].at(t));
    CondLinearMap h(one, std::move(hm), CondNorm::lp(kind), CondNorm::lp(kind));
    for (int xs = 0; xs < 2; ++xs) {
      CondVector x = CondVector::from_atom_fn(one, [&](int t) {
        std::vector<double> v(static_cast<std::size_t>(h.at(t).cols));
        for (double& c : v) c = rng.uniform(-2.0, 2.0);
        return v;
      });
      CondReal xnv = norm_value(x, CondNorm::lp(kind));
      CondReal hx = norm_value(apply(h, x), CondNorm::lp(kind));
      for (int t : atoms)
        ck.leq("uniform-bound-holds", hx.at(t) - s.at(t) * xnv.at(t),
               1e-9 * (1.0 + s.at(t) * xnv.at(t)));
    }
  }

  if (idx % 3 == 0) {
    PointwiseBound pb;
    std::vector<CondReal> gnorms;
    for (const auto& g : gens) gnorms.push_back(operator_norm(g));
    pb.bound = [gnorms, kind](const CondVector& x) {
      CondReal xnv = norm_value(x, CondNorm::lp(kind));
      return CondReal::from_atom_fn(x.on(), [&](int t) {
        double best = 0.0;
        for (const auto& g : gnorms) best = std::max(best, g.at(t));
        return best * xnv.at(t) + 1e-6;
      });
    };
    pb.samples = 8;
    pb.seed = cfg.seed + static_cast<std::uint64_t>(idx);
    CondReal s2 = uniform_bound(gens, pb);
    bool same = true;
    for (int t : atoms) same &= s2.at(t) == s.at(t);
    ck.is_true("pointwise-path-same-bound", same);
  }
  return finish(ck, cfg, idx);
}

CaseOutcome heine_borel_case(const SuiteConfig& cfg, int idx) {
  Rng rng = case_rng(cfg, idx);
  Checker ck(cfg.tolerance);
  Algebra alg(effective_atoms(cfg, 3));
  Cond one = Cond::one(alg);
  int d = rng.uniform_int(1, std::min(3, std::max(1, cfg.max_dim)));

  bool plant_slab = (idx % 3 == 2) && d >= 2;
  Cond slab_atoms = plant_slab ? random_nonzero_condition(alg, rng) : Cond::zero(alg);
  SymmetricBody k_body = plant_slab ? gen_body_with_slabs(alg, rng, d, d, 2, slab_atoms)
                                    : gen_body(alg, rng, d, d, 2);

  Cond compact = compactness_check(k_body);
  ck.is_true("compactness-matches-plant", compact == one.minus(slab_atoms));

  if (!compact.is_zero()) {
    SymmetricBody kk = body_restrict(k_body, compact);
    // cover built to cover: ball centers on a bounding-box grid, radii above
    // the half cell diagonal
    const int grid_n = 3;
    std::vector<std::vector<std::vector<double>>> centers_by_atom;
    std::vector<double> radius_by_atom;
    for (int t : compact.atom_list()) {
      auto w = hbody_bounding_halfwidths(kk.at(t));
      std::vector<std::vector<double>> centers;
      std::vector<int> gidx(static_cast<std::size_t>(d), 0);
      while (true) {
        std::vector<double> p(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
          p[static_cast<std::size_t>(i)] =
              -w[static_cast<std::size_t>(i)] +
              2.0 * w[static_cast<std::size_t>(i)] * gidx[static_cast<std::size_t>(i)] / grid_n;
        centers.push_back(std::move(p));
        int i = 0;
        for (; i < d; ++i) {
          if (++gidx[static_cast<std::size_t>(i)] <= grid_n) break;
          gidx[static_cast<std::size_t>(i)] = 0;
        }
        if (i == d) break;
      }
      double diag2 = 0.0;
      for (double ww : w) {
        double cell = ww / grid_n;
        diag2 += cell * cell;
      }
      centers_by_atom.push_back(std::move(centers));
      radius_by_atom.push_back(1.2 * std::sqrt(diag2) + 1e-9);
    }
    std::size_t nballs = centers_by_atom.front().size();
    std::vector<CoverBall> cover;
    for (std::size_t b = 0; b < nballs; ++b) {
      std::size_t slot = 0;
      CondVector center =
          CondVector::from_atom_fn(compact, [&](int) { return centers_by_atom[slot++][b]; });
      slot = 0;
      CondReal radius = CondReal::from_atom_fn(compact, [&](int) { return radius_by_atom[slot++]; });
      cover.push_back(CoverBall{std::move(center), std::move(radius)});
    }

    SubcoverResult sub = extract_finite_subcover(kk, cover, 6);
    ck.is_true("subcover-nonempty", !sub.selected.empty());
    // re-verify: every grid point of K is inside a selected ball
    std::size_t aslot = 0;
    for (int t : compact.atom_list()) {
      const auto& selected = sub.selected_per_atom[aslot++];
      ck.is_true("subcover-conditionally-finite", selected.size() <= cover.size());
      auto w = hbody_bounding_halfwidths(kk.at(t));
      std::vector<int> gidx(static_cast<std::size_t>(d), 0);
      bool all_covered = true;
      while (true) {
        std::vector<double> p(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
          p[static_cast<std::size_t>(i)] =
              -w[static_cast<std::size_t>(i)] +
              2.0 * w[static_cast<std::size_t>(i)] * gidx[static_cast<std::size_t>(i)] / 6;
        if (hbody_member(kk.at(t), p.data(), 1e-12)) {
          bool covered = false;
          for (int b : selected) {
            const auto& c = cover[static_cast<std::size_t>(b)].center.at(t);
            double rr = cover[static_cast<std::size_t>(b)].radius.at(t);
            double dist2 = 0.0;
            for (int i = 0; i < d; ++i) {
              double diff = p[static_cast<std::size_t>(i)] - c[static_cast<std::size_t>(i)];
              dist2 += diff * diff;
            }
            if (dist2 <= rr * rr * (1.0 + 1e-12)) {
              covered = true;
              break;
            }
          }
          all_covered &= covered;
        }
        int i = 0;
        for (; i < d; ++i) {
          if (++gidx[static_cast<std::size_t>(i)] <= 6) break;
          gidx[static_cast<std::size_t>(i)] = 0;
        }
        if (i == d) break;
      }
      ck.is_true("subcover-covers-grid", all_covered);
    }
  }

  // equivalence constants for a random conditionally independent basis
  int kb = rng.uniform_int(1, d);
  std::vector<CondVector> basis;
  for (int i = 0; i < kb; ++i) {
    int axis = i;
    basis.push_back(CondVector::from_atom_fn(one, [&](int) {
      std::vector<double> v(static_cast<std::size_t>(d));
      for (double& c : v) c = 0.2 * rng.normal();
      v[static_cast<std::size_t>(axis)] += rng.uniform(0.7, 2.0);
      return v;
    }));
  }
  NormKind kinds[3] = {NormKind::L1, NormKind::L2, NormKind::Linf};
  NormKind nk = kinds[idx % 3];
  EquivalenceConstants eq = equivalence_constants(basis, CondNorm::lp(nk), 1e-4);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> z(static_cast<std::size_t>(kb));
    for (double& c : z) c = rng.uniform(-1.5, 1.5);
    double z1 = kern::abs_sum(z.data(), z.size());
    for (int t : one.atom_list()) {
      std::vector<double> img(static_cast<std::size_t>(d), 0.0);
      for (int i = 0; i < kb; ++i)
        kern::axpy(z[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(i)].at(t).data(),
                   img.data(), img.size());
      double tz = norm_value_at(img.data(), img.size(), nk);
      ck.leq("equiv-lower", eq.r_low.at(t) * z1 - tz, 1e-6 * (z1 + 1.0));
      ck.leq("equiv-upper", tz - eq.r_high.at(t) * z1, 1e-6 * (z1 + 1.0));
    }
  }
  return finish(ck, cfg, idx);
}

CaseOutcome eberlein_case(const SuiteConfig& cfg, int idx) {
  Rng rng = case_rng(cfg, idx);
  Checker ck(cfg.tolerance);
  Algebra alg(effective_atoms(cfg, 3));
  Cond one = Cond::one(alg);
  int d = rng.uniform_int(1, std::min(3, std::max(1, cfg.max_dim)));
  const int budget = 256;

  bool plant = (idx % 4 == 0);
  if (plant) {
    Cond slab_atoms = random_nonzero_condition(alg, rng);
    SymmetricBody region = gen_body_with_slabs(alg, rng, std::max(2, d), std::max(2, d), 2,
                                               slab_atoms);
    CondSequence seq([&region, slab_atoms](int k) {
      return CondVector::from_atom_fn(region.on(), [&](int t) {
        std::vector<double> v(static_cast<std::size_t>(region.at(t).dim()), 0.0);
        if (slab_atoms.contains_atom(t)) v[0] = static_cast<double>(k);  // escapes every box
        return v;
      });
    });
    bool threw = false;
    try {
      extract_convergent_subsequence(seq, region, budget);
    } catch (const UnboundedError& e) {
      threw = true;
      ck.is_true("unbounded-condition-exact",
                 Cond(e.condition_bits(), e.atom_count()) == slab_atoms);
    }
    ck.is_true("unbounded-raised", threw);
  } else {
    SymmetricBody k_body = gen_body(alg, rng, d, d, 2);
    ck.is_true("instance-certified-compact", compactness_check(k_body) == one);
    int nseq = 20;
    for (int sidx2 = 0; sidx2 < nseq; ++sidx2) {
      CondSequence seq = gen_convergent_sequence(k_body, rng);
      Subsequence sub = extract_convergent_subsequence(seq, k_body, budget);
      ck.is_true("subsequence-nonempty", !sub.indices.empty());
      for (std::size_t k = 0; k + 1 < sub.indices.size(); ++k)
        ck.is_true("indices-strictly-increasing", sub.indices[k].lt(sub.indices[k + 1]));
      for (std::size_t k = 0; k < sub.indices.size(); ++k) {
        CondVector xk = seq.at(sub.indices[k]);
        CondVector diff = cv_sub(xk, sub.limit);
        for (int t : one.atom_list()) {
          double dist = vec_norm2(diff.at(t));
          ck.leq("certified-bound-honored", dist - sub.cert_bounds[k].at(t), 1e-12);
        }
      }
    }
  }

  // half-norming functionals over a random subspace
  int ambient = rng.uniform_int(1, std::min(4, d + 1));
  int span_count = rng.uniform_int(1, ambient);
  std::vector<CondVector> span;
  for (int i = 0; i < span_count; ++i)
    span.push_back(CondVector::from_atom_fn(one, [&](int) {
      std::vector<double> v(static_cast<std::size_t>(ambient));
      for (double& c : v) c = rng.normal();
      return v;
    }));
  auto funcs = half_norming_set(span);
  for (int rep = 0; rep < 5; ++rep) {
    CondVector y = CondVector::from_atom_fn(one, [&](int t) {
      std::vector<double> v(static_cast<std::size_t>(ambient), 0.0);
      for (const auto& sv : span) {
        double c = rng.uniform(-2.0, 2.0);
        kern::axpy(c, sv.at(t).data(), v.data(), v.size());
      }
      return v;
    });
    for (int t : one.atom_list()) {
      double best = 0.0;
      for (const auto& f : funcs)
        best = std::max(best, std::fabs(kern::dot(f.at(t).row(0), y.at(t).data(),
                                                  y.at(t).size())));
      ck.leq("half-norming", 0.5 * vec_norm2(y.at(t)) - best, 1e-9);
    }
  }

  // totality and the seminorm-series metric
  int td = rng.uniform_int(1, std::min(3, std::max(1, cfg.max_dim)));
  bool sabotage = (idx % 5 == 3) && td >= 2;
  auto points = gen_dense_points(alg, rng, td, td);
  if (sabotage) {
    // drop every component along the last axis: the family annihilates e_td
    std::vector<CondVector> flat;
    for (auto& p : points)
      flat.push_back(CondVector::from_atom_fn(one, [&](int t) {
        std::vector<double> v = p.at(t);
        v[static_cast<std::size_t>(td - 1)] = 0.0;
        if (kern::max_abs(v.data(), v.size()) < 1e-9) v[0] = 1.0;
        return v;
      }));
    points = std::move(flat);
  }
  TotalSetResult ts = total_set(points, NormKind::L2, 24);
  ck.is_true("totality-matches-construction", ts.is_total == !sabotage);
  if (!sabotage && td >= 1) {
    CondMetric metric = seminorm_metric(ts.functionals);
    auto rand_pt = [&]() {
      return CondVector::from_atom_fn(one, [&](int) {
        std::vector<double> v(static_cast<std::size_t>(td));
        for (double& c : v) c = rng.uniform(-2.0, 2.0);
        return v;
      });
    };
    CondVector a = rand_pt(), b2 = rand_pt(), c2 = rand_pt();
    CondReal dab = metric.distance(a, b2);
    CondReal dba = metric.distance(b2, a);
    CondReal dac = metric.distance(a, c2);
    CondReal dcb = metric.distance(c2, b2);
    CondReal daa = metric.distance(a, a);
    for (int t : one.atom_list()) {
      ck.is_true("metric-symmetric", dab.at(t) == dba.at(t));
      ck.near("metric-identity", daa.at(t), 0.0, 1e-15);
      ck.leq("metric-triangle", dab.at(t) - (dac.at(t) + dcb.at(t)), 1e-12);
    }
  }
  if (sabotage && ts.witness) {
    // the witness direction is indistinguishable under the metric
    CondMetric metric = seminorm_metric(ts.functionals);
    Cond fail = one.minus(ts.total_condition);
    CondVector w0 = CondVector::zero(fail, td);
    CondVector w1 = *ts.witness;
    auto checked = metric.distance_checked(
        CondVector::from_atom_fn(fail, [&](int t) { return w1.at(t); }), w0);
    ck.is_true("not-total-flagged", checked.indiscernible_violation == fail);
  }
  return finish(ck, cfg, idx);
}

CaseOutcome amir_lindenstrauss_case(const SuiteConfig& cfg, int idx) {
  Rng rng = case_rng(cfg, idx);
  Checker ck(cfg.tolerance);
  Algebra alg(effective_atoms(cfg, 3));
  Cond one = Cond::one(alg);
  const int kmax = std::min(20, std::max(4, cfg.truncation));

  bool reference = (idx == 0);
  int d = reference ? 1 : rng.uniform_int(1, std::min(3, std::max(1, cfg.max_dim)));

  // shared grid bodies
  std::vector<HBody> kb, bb;
  auto dirs = make_grid_directions(d, reference ? 0 : 4, cfg.seed + static_cast<std::uint64_t>(idx));
  for (int t = 0; t < alg.atoms(); ++t) {
    (void)t;
    HBody hk, hb;
    for (const auto& u : dirs) {
      hk.faces.push_back(Halfspace{u, reference ? 1.0 : rng.uniform(0.3, 1.2)});
      hb.faces.push_back(Halfspace{u, reference ? 1.0 : rng.uniform(0.8, 1.6)});
    }
    kb.push_back(std::move(hk));
    bb.push_back(std::move(hb));
  }
  SymmetricBody k_body(one, std::move(kb));
  SymmetricBody unit_body(one, std::move(bb));

  CondVector x = reference
                     ? CondVector::from_atom_fn(one, [&](int) { return std::vector<double>{1.0}; })
                     : gen_point_in_body(k_body, rng);
  RenormResult rr = renorm_sequence(k_body, unit_body, x, kmax, 1e-6);

  if (reference) {
    // frozen by the truncated-summation oracle with 4^-K tail bound:
    // sum_{n>=1} (2^n + 2^-n)^-2 = 0.235687212765...
    for (int t : one.atom_list()) {
      ck.near("reference-sum-of-squares", rr.sum_of_squares.at(t), 0.235687212765, 1e-5);
      ck.near("reference-norm-c", rr.norm_c.at(t), 0.485476274153, 1e-4);
    }
  }

  // the bodies B_n shrink on K: gauge(B_n, v) <= 2^-n at K's vertices, and
  // every vertex of K lies in C (so K does, by convexity of the squared sum)
  SymmetricBody b1 = minkowski_combine(2.0, k_body, 0.5, unit_body);
  CondVector xk = reference ? x : gen_point_in_body(k_body, rng);
  RenormResult rk = renorm_sequence(k_body, unit_body, xk, kmax, 1e-6);
  ck.is_true("sum-bound-ok-on-one", rk.sum_bound_ok == one);
  for (int t : one.atom_list()) {
    const auto& kfaces = k_body.at(t).faces;
    auto kverts = hbody_vertices(k_body.at(t));
    auto bverts = hbody_vertices(unit_body.at(t));
    std::vector<double> hk, hb;
    for (const auto& f : kfaces) {
      hk.push_back(hbody_support(kverts, f.u));
      hb.push_back(hbody_support(bverts, f.u));
    }
    for (const auto& v : kverts) {
      ck.leq("b1-gauge-bound", hbody_gauge(b1.at(t), v.data()) - 0.5, 1e-9);
      double ss = 0.0;
      for (int n = 1; n <= kmax; ++n) {
        double a = std::ldexp(1.0, n);
        double b = std::ldexp(1.0, -n);
        double worst = 0.0;
        for (std::size_t j = 0; j < kfaces.size(); ++j) {
          double c = a * hk[j] + b * hb[j];
          worst = std::max(worst,
                           std::fabs(kern::dot(kfaces[j].u.data(), v.data(), v.size())) / c);
        }
        ck.leq("bn-gauge-bound", worst - b, 1e-9);
        ss += worst * worst;
      }
      double gk = hbody_gauge(k_body.at(t), v.data());
      double tail = gk * gk * std::ldexp(1.0, -2 * kmax) / 3.0;
      // sum of 4^-n over n >= 1 is 1/3, so vertices of K sit well inside C
      ck.leq("k-sum-below-third", ss + tail - 1.0 / 3.0, 1e-6);
    }
  }
  ck.is_true("k-inside-b1", body_inclusion(k_body, b1) == one);
  ck.is_true("c-bounded-via-b1", compactness_check(b1) == one);

  // a random dual-ball conditional sequence has a convergent subsequence
  std::vector<HBody> polar_boxes;
  for (int t : one.atom_list()) {
    double rho = hbody_inball_radius(unit_body.at(t));
    HBody h;
    for (int i = 0; i < d; ++i) {
      std::vector<double> e(static_cast<std::size_t>(d), 0.0);
      e[static_cast<std::size_t>(i)] = 1.0;
      h.faces.push_back(Halfspace{std::move(e), 1.0001 / rho});
    }
    polar_boxes.push_back(std::move(h));
  }
  SymmetricBody polar_region(one, std::move(polar_boxes));
  struct DualPattern {
    std::vector<double> base;
    std::vector<double> dir;
  };
  auto pat = std::make_shared<std::vector<DualPattern>>();
  for (int t : one.atom_list()) {
    auto bverts = hbody_vertices(unit_body.at(t));
    DualPattern p;
    p.base.assign(static_cast<std::size_t>(d), 0.0);
    p.dir.assign(static_cast<std::size_t>(d), 0.0);
    for (int i = 0; i < d; ++i) {
      p.base[static_cast<std::size_t>(i)] = rng.normal();
      p.dir[static_cast<std::size_t>(i)] = rng.normal();
    }
    // scale into the polar: h_B(u) <= 1 ensures |<u,x>| <= 1 on B
    double hb_base = hbody_support(bverts, p.base);
    double hb_dir = hbody_support(bverts, p.dir);
    for (double& c : p.base) c /= (2.0 * std::max(hb_base, 1e-9));
    for (double& c : p.dir) c /= (2.0 * std::max(hb_dir, 1e-9));
    pat->push_back(std::move(p));
  }
  CondSequence dual_seq([one, pat](int k) {
    std::size_t slot = 0;
    return CondVector::from_atom_fn(one, [&](int) {
      const DualPattern& p = (*pat)[slot++];
      std::vector<double> u = p.base;
      kern::axpy(std::pow(0.6, k), p.dir.data(), u.data(), u.size());
      return u;
    });
  });
  Subsequence dual_sub = extract_convergent_subsequence(dual_seq, polar_region, 128);
  ck.is_true("dual-subsequence-nonempty", !dual_sub.indices.empty());
  for (std::size_t k2 = 0; k2 + 1 < dual_sub.indices.size(); ++k2)
    ck.is_true("dual-indices-increasing", dual_sub.indices[k2].lt(dual_sub.indices[k2 + 1]));

  return finish(ck, cfg, idx);
}

CaseOutcome l2_duality_case(const SuiteConfig& cfg, int idx) {
  Rng rng = case_rng(cfg, idx);
  Checker ck(cfg.tolerance);
  Algebra alg(effective_atoms(cfg, 3));
  Cond one = Cond::one(alg);
  int ncomp = rng.uniform_int(1, 4);
  NormKind kinds[3] = {NormKind::L1, NormKind::L2, NormKind::Linf};

  std::vector<NormKind> comps;
  std::vector<int> dims;
  for (int i = 0; i < ncomp; ++i) {
    comps.push_back(kinds[rng.uniform_int(0, 2)]);
    dims.push_back(rng.uniform_int(1, std::min(3, std::max(1, cfg.max_dim))));
  }
  bool zero_xstar = (idx % 7 == 6);
  auto rand_comp = [&](int i, double scale) {
    return CondVector::from_atom_fn(one, [&](int) {
      std::vector<double> v(static_cast<std::size_t>(dims[static_cast<std::size_t>(i)]));
      for (double& c : v) c = scale * rng.uniform(-2.0, 2.0);
      return v;
    });
  };
  std::vector<CondVector> x, xstar;
  for (int i = 0; i < ncomp; ++i) {
    x.push_back(rand_comp(i, 1.0));
    xstar.push_back(rand_comp(i, zero_xstar ? 0.0 : 1.0));
  }

  DirectSumResult ds = direct_sum_l2(comps, x, xstar);
  for (int t : one.atom_list()) {
    // Pythagorean norm recomputed directly
    double ss = 0.0;
    for (int i = 0; i < ncomp; ++i) {
      const auto& v = x[static_cast<std::size_t>(i)].at(t);
      double nv = norm_value_at(v.data(), v.size(), comps[static_cast<std::size_t>(i)]);
      ss += nv * nv;
    }
    ck.near("pythagorean-norm", ds.norm2.at(t), std::sqrt(ss), 1e-12 * (1.0 + std::sqrt(ss)));
    // Cauchy-Schwarz pairing bound and the duality gap
    ck.leq("pairing-cs-bound", std::fabs(ds.pairing.at(t)) - ds.dual_norm2.at(t) * ds.norm2.at(t),
           1e-9 * (1.0 + ds.dual_norm2.at(t) * ds.norm2.at(t)));
    ck.leq("duality-gap", ds.pairing_norm_gap.at(t), 1e-6 * (1.0 + ds.dual_norm2.at(t)));
    if (zero_xstar) {
      ck.near("zero-functional-pairing", ds.pairing.at(t), 0.0, 1e-15);
      ck.near("zero-functional-gap", ds.pairing_norm_gap.at(t), 0.0, 1e-15);
    }
  }

  // truncation: appending a tail of certified mass moves the norm by at most
  // that mass
  std::vector<NormKind> comps_ext = comps;
  std::vector<CondVector> x_ext = x, xstar_ext = xstar;
  int extra = rng.uniform_int(1, 3);
  double mass2 = 0.0;
  for (int e = 0; e < extra; ++e) {
    comps_ext.push_back(NormKind::L2);
    double scale = std::pow(0.5, e + 1);
    CondVector tail_comp = CondVector::from_atom_fn(one, [&](int) {
      std::vector<double> v(1);
      v[0] = scale * rng.uniform(-1.0, 1.0);
      return v;
    });
    for (int t : one.atom_list()) {
      double nv = std::fabs(tail_comp.at(t)[0]);
      mass2 = std::max(mass2, nv * nv);
    }
    x_ext.push_back(std::move(tail_comp));
    xstar_ext.push_back(CondVector::zero(one, 1));
  }
  double tail_mass = std::sqrt(static_cast<double>(extra) * mass2);
  DirectSumResult ds_ext = direct_sum_l2(comps_ext, x_ext, xstar_ext);
  for (int t : one.atom_list())
    ck.leq("truncation-error-within-tail", std::fabs(ds_ext.norm2.at(t) - ds.norm2.at(t)),
           tail_mass + 1e-12);

  return finish(ck, cfg, idx);
}

CaseOutcome cauchy_schwarz_case(const SuiteConfig& cfg, int idx) {
  Rng rng = case_rng(cfg, idx);
  Checker ck(cfg.tolerance);
  Algebra alg(effective_atoms(cfg, 6));
  Cond one = Cond::one(alg);
  const int klen = std::max(4, cfg.truncation);

  bool proportional = (idx % 5 == 4);
  bool geometric = (idx % 2 == 0);

  std::vector<CondReal> a, b;
  CondReal tail_a2 = CondReal::constant(one, 0.0);
  CondReal tail_b2 = CondReal::constant(one, 0.0);
  if (geometric) {
    CondReal ca = random_cond_real(one, rng, -2.0, 2.0);
    CondReal ra = random_cond_real(one, rng, 0.2, 0.8);
    CondReal lam = random_cond_real(one, rng, -2.0, 2.0);
    CondReal cb = proportional ? arith(ca, lam, ArithOp::Mul) : random_cond_real(one, rng, -2.0, 2.0);
    CondReal rb = proportional ? ra : random_cond_real(one, rng, 0.2, 0.8);
    for (int k = 1; k <= klen; ++k) {
      a.push_back(CondReal::from_atom_fn(one, [&](int t) { return ca.at(t) * std::pow(ra.at(t), k); }));
      b.push_back(CondReal::from_atom_fn(one, [&](int t) { return cb.at(t) * std::pow(rb.at(t), k); }));
    }
    tail_a2 = CondReal::from_atom_fn(one, [&](int t) {
      double c = ca.at(t), r2 = ra.at(t) * ra.at(t);
      return c * c * std::pow(r2, klen + 1) / (1.0 - r2);
    });
    tail_b2 = CondReal::from_atom_fn(one, [&](int t) {
      double c = cb.at(t), r2 = rb.at(t) * rb.at(t);
      return c * c * std::pow(r2, klen + 1) / (1.0 - r2);
    });
  } else {
    CondReal lam = random_cond_real(one, rng, -2.0, 2.0);
    int support_len = rng.uniform_int(1, klen);
    for (int k = 1; k <= klen; ++k) {
      CondReal ak = k <= support_len ? random_cond_real(one, rng, -2.0, 2.0)
                                     : CondReal::constant(one, 0.0);
      CondReal bk = proportional ? arith(ak, lam, ArithOp::Mul)
                                 : (k <= support_len ? random_cond_real(one, rng, -2.0, 2.0)
                                                     : CondReal::constant(one, 0.0));
      a.push_back(std::move(ak));
      b.push_back(std::move(bk));
    }
  }

  CauchySchwarzResult cs = cauchy_schwarz_eval(a, b, tail_a2, tail_b2, 1e-12);
  ck.is_true("cs-holds-on-one", cs.holds);
  for (int t : one.atom_list()) {
    ck.leq("cs-direct", cs.lhs.at(t) - cs.rhs.at(t), 1e-12 * (1.0 + cs.rhs.at(t)));
    if (proportional)
      ck.near("cs-equality-when-proportional", cs.lhs.at(t), cs.rhs.at(t),
              1e-9 * (1.0 + cs.rhs.at(t)));
  }
  return finish(ck, cfg, idx);
}

// ---- dispatch ---------------------------------------------------------

using CaseFn = CaseOutcome (*)(const SuiteConfig&, int);

struct SuiteDef {
  const char* name;
  CaseFn fn;
};

const SuiteDef kSuites[] = {
    {"core", core_case},
    {"numbers", numbers_case},
    {"gauge", gauge_case},
    {"linear", linear_case},
    {"embedding", embedding_case},
    {"baire", baire_case},
    {"ubp", ubp_case},
    {"heine_borel", heine_borel_case},
    {"eberlein_smulian", eberlein_case},
    {"amir_lindenstrauss", amir_lindenstrauss_case},
    {"l2_duality", l2_duality_case},
    {"cauchy_schwarz", cauchy_schwarz_case},
};

int suite_stream(const std::string& name) {
  int i = 0;
  for (const auto& s : kSuites) {
    if (name == s.name) return i;
    ++i;
  }
  return 97;
}

int resolve_threads(const SuiteConfig& cfg) {
  int n = cfg.threads;
  if (const char* env = std::getenv("CONDAN_THREADS")) {
    int cap = std::atoi(env);
    if (cap > 0) n = n > 0 ? std::min(n, cap) : cap;
  }
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  return std::max(1, n);
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& s : kSuites) v.emplace_back(s.name);
    return v;
  }();
  return names;
}

bool is_suite_name(const std::string& name) {
  for (const auto& s : kSuites)
    if (name == s.name) return true;
  return false;
}

SuiteReport run_suite(const SuiteConfig& config) {
  const SuiteDef* def = nullptr;
  for (const auto& s : kSuites)
    if (config.suite_name == s.name) def = &s;
  if (!def) throw Error(ErrorKind::UnknownSuite, "no suite named '" + config.suite_name + "'");

  auto start = std::chrono::steady_clock::now();
  int n = std::max(0, config.case_count);
  std::vector<CaseOutcome> results(static_cast<std::size_t>(n));

  auto run_one = [&](int i) {
    try {
      results[static_cast<std::size_t>(i)] = def->fn(config, i);
    } catch (const std::exception& e) {
      CaseOutcome out;
      out.passed = false;
      out.violation = 2.0 * config.tolerance;
      out.witness = json{{"case", i},
                         {"seed", config.seed},
                         {"suite", config.suite_name},
                         {"error", e.what()}};
      results[static_cast<std::size_t>(i)] = std::move(out);
    }
  };

  int workers = std::min(resolve_threads(config), std::max(1, n));
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) run_one(i);
  } else {
    std::atomic<int> next{0};
    auto work = [&] {
      while (true) {
        int i = next.fetch_add(1);
        if (i >= n) break;
        run_one(i);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  SuiteReport rep;
  rep.suite = config.suite_name;
  rep.config = config;
  rep.cases = n;
  for (const auto& r : results) {
    if (r.passed)
      ++rep.passed;
    else {
      ++rep.failed;
      rep.witnesses.push_back(r.witness);
    }
    rep.max_violation = std::max(rep.max_violation, r.violation);
  }
  rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return rep;
}

json config_to_json(const SuiteConfig& c) {
  return json{{"suite", c.suite_name}, {"atoms", c.atoms},
              {"seed", c.seed},        {"tol", c.tolerance},
              {"trunc", c.truncation}, {"cases", c.case_count},
              {"max_dim", c.max_dim}};
}

json report_to_json(const SuiteReport& r) {
  return json{{"suite", r.suite},
              {"config", config_to_json(r.config)},
              {"cases", r.cases},
              {"passed", r.passed},
              {"failed", r.failed},
              {"max_violation", r.max_violation},
              {"witnesses", r.witnesses},
              {"runtime_ms", r.runtime_ms}};
}

std::string report_to_markdown(const std::vector<SuiteReport>& reports) {
  std::string md = "| suite | cases | passed | failed | max violation | time (ms) |\n";
  md += "|---|---|---|---|---|---|\n";
  for (const auto& r : reports) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", r.max_violation);
    md += "| " + r.suite + " | " + std::to_string(r.cases) + " | " + std::to_string(r.passed) +
          " | " + std::to_string(r.failed) + " | " + buf + " | " + std::to_string(r.runtime_ms) +
          " |\n";
  }
  return md;
}

nlohmann::json generate_instance(const std::string& kind, const SuiteConfig& config,
                                 int case_idx) {
  Rng rng(config.seed, 0x6e57a4ce, static_cast<std::uint64_t>(case_idx));
  Algebra alg(std::max(1, std::min(config.atoms, 6)));
  int dim = std::max(1, std::min(config.max_dim, 4));
  if (kind == "body") return io::body_to_json(gen_body(alg, rng, 1, dim, 4));
  if (kind == "sequence") {
    SymmetricBody body = gen_body(alg, rng, 1, dim, 2);
    CondSequence seq = gen_convergent_sequence(body, rng);
    json terms = json::array();
    for (int k = 1; k <= 16; ++k) terms.push_back(io::to_json(seq.term(k)));
    return json{{"kind", "table"}, {"terms", terms}};
  }
  if (kind == "operator_family") {
    auto fam = gen_operator_family(alg, rng, 3, dim, NormKind::L2);
    json out = json::array();
    for (const auto& t : fam) out.push_back(io::map_to_json(t));
    return out;
  }
  if (kind == "closed_cover") {
    json out = json::array();
    for (const auto& s : gen_closed_cover(alg, std::min(dim, 2), rng))
      out.push_back(io::closed_set_to_json(s));
    return out;
  }
  if (kind == "dense_points") {
    json out = json::array();
    for (const auto& p : gen_dense_points(alg, rng, std::min(dim, 3), std::min(dim, 3)))
      out.push_back(io::to_json(p));
    return out;
  }
  if (kind == "l2_element") {
    json comps = json::array();
    int n = rng.uniform_int(1, 4);
    for (int i = 0; i < n; ++i) {
      CondVector v = CondVector::from_atom_fn(Cond::one(alg), [&](int) {
        std::vector<double> w(static_cast<std::size_t>(rng.uniform_int(1, 3)));
        for (double& c : w) c = rng.uniform(-2.0, 2.0);
        return w;
      });
      comps.push_back(io::to_json(v));
    }
    return json{{"components", comps}};
  }
  if (kind == "renorm_pair") {
    auto dirs = make_grid_directions(dim, 4, config.seed);
    std::vector<HBody> kb, bb;
    for (int t = 0; t < alg.atoms(); ++t) {
      (void)t;
      HBody hk, hb;
      for (const auto& u : dirs) {
        hk.faces.push_back(Halfspace{u, rng.uniform(0.3, 1.2)});
        hb.faces.push_back(Halfspace{u, rng.uniform(0.8, 1.6)});
      }
      kb.push_back(std::move(hk));
      bb.push_back(std::move(hb));
    }
    Cond on = Cond::one(alg);
    return json{{"k", io::body_to_json(SymmetricBody(on, std::move(kb)))},
                {"b", io::body_to_json(SymmetricBody(on, std::move(bb)))}};
  }
  throw Error(ErrorKind::BadInput, "unknown instance kind '" + kind + "'");
}

}  // namespace condan::harness
