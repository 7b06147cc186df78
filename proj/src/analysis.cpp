#include "condan/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "condan/kernels.hpp"
#include "condan/rng.hpp"

namespace condan {

CondReal Seminorm::value(const CondVector& x) const {
  if (functional) {
    CondReal v = cv_dot(*functional, x);
    return v.map([](double a) { return std::fabs(a); });
  }
  if (body) return gauge(*body, x);
  throw Error(ErrorKind::BadInput, "seminorm with neither functional nor body");
}

Cond neighborhood_member(const std::vector<Seminorm>& q, const CondReal& r,
                         const CondVector& center, const CondVector& x) {
  if (q.empty()) throw Error(ErrorKind::EmptyFamily, "empty seminorm family");
  CondVector diff = cv_sub(x, center);
  std::uint64_t bits = 0;
  std::vector<CondReal> values;
  values.reserve(q.size());
  for (const auto& p : q) values.push_back(p.value(diff));
  for (int t : x.on().atom_list()) {
    double sup = 0.0;
    for (const auto& v : values) sup = std::max(sup, v.at(t));
    if (sup <= r.at(t)) bits |= std::uint64_t{1} << t;
  }
  return Cond(bits, x.on().algebra_atoms());
}

CondMetric::Checked CondMetric::distance_checked(const CondVector& x, const CondVector& y) const {
  CondReal d = distance(x, y);
  std::uint64_t bits = 0;
  for (int t : x.on().atom_list())
    if (d.at(t) == 0.0 && !(x.at(t) == y.at(t))) bits |= std::uint64_t{1} << t;
  return Checked{d, Cond(bits, x.on().algebra_atoms())};
}

CondMetric norm_metric(const CondNorm& n) {
  return CondMetric(CondMetric::Construction::NormInduced,
                    [n](const CondVector& x, const CondVector& y) {
                      return norm_value(cv_sub(x, y), n);
                    });
}

CondMetric seminorm_metric(const std::vector<CondLinearMap>& functionals) {
  if (functionals.empty()) throw Error(ErrorKind::EmptyFamily, "empty functional family");
  std::vector<CondVector> covs;
  std::vector<CondReal> norms;
  for (const auto& f : functionals) {
    CondVector u = f.as_covector();
    CondReal n = CondReal::from_atom_fn(u.on(), [&](int t) {
      const auto& row = u.at(t);
      return dual_norm_value_at(row.data(), row.size(), f.domain().kind);
    });
    for (int t : u.on().atom_list())
      if (n.at(t) <= 0.0)
        throw Error(ErrorKind::ZeroFunctional, "functional with zero norm in the family");
    covs.push_back(std::move(u));
    norms.push_back(std::move(n));
  }
  return CondMetric(
      CondMetric::Construction::SeminormSeries,
      [covs, norms](const CondVector& x, const CondVector& y) {
        CondVector diff = cv_sub(x, y);
        return CondReal::from_atom_fn(diff.on(), [&](int t) {
          double s = 0.0;
          double w = 0.5;
          for (std::size_t n = 0; n < covs.size(); ++n, w *= 0.5) {
            const auto& u = covs[n].at(t);
            const auto& d = diff.at(t);
            s += w * std::fabs(kern::dot(u.data(), d.data(), u.size())) / norms[n].at(t);
          }
          return s;
        });
      });
}

TotalSetResult total_set(const std::vector<CondVector>& dense_points, NormKind kind,
                         int resolution) {
  if (dense_points.empty()) throw Error(ErrorKind::EmptyFamily, "no points supplied");
  Cond on = dense_points.front().on();

  std::vector<CondLinearMap> functionals;
  functionals.reserve(dense_points.size());
  for (const auto& p : dense_points) functionals.push_back(norming_functional(p, kind));

  std::uint64_t total_bits = 0;
  std::vector<std::vector<double>> witness_atoms;
  std::vector<int> witness_slots;
  for (int t : on.atom_list()) {
    int d = dense_points.front().dim_at(t);
    if (d > 3)
      throw Error(ErrorKind::UnsupportedDimension, "annihilator search capped at dimension 3");
    double max_norm = 0.0;
    std::vector<std::vector<double>> rows;
    for (const auto& f : functionals) {
      const Mat& m = f.at(t);
      rows.emplace_back(m.a.begin(), m.a.end());
      max_norm = std::max(max_norm, std::sqrt(kern::sumsq(m.a.data(), m.a.size())));
    }
    double covering = d == 1 ? 0.0 : (2.0 / resolution) * std::sqrt(static_cast<double>(d - 1));
    double minmax = 1e300;
    std::vector<double> argmin;
    for (const auto& v : sphere_grid(d, resolution)) {
      double worst = 0.0;
      for (const auto& row : rows)
        worst = std::max(worst, std::fabs(kern::dot(row.data(), v.data(), v.size())));
      if (worst < minmax) {
        minmax = worst;
        argmin = v;
      }
    }
    if (minmax > max_norm * covering + 1e-12) {
      total_bits |= std::uint64_t{1} << t;
    } else {
      witness_atoms.push_back(argmin);
      witness_slots.push_back(t);
    }
  }
  Cond total_c(total_bits, on.algebra_atoms());
  std::optional<CondVector> witness;
  if (!witness_atoms.empty()) {
    Cond fail = on.minus(total_c);
    std::size_t slot = 0;
    witness = CondVector::from_atom_fn(fail, [&](int) { return witness_atoms[slot++]; });
  }
  return TotalSetResult{std::move(functionals), total_c == on, total_c, std::move(witness)};
}

CauchyVerdict is_cauchy(const CondSequence& seq, const CondMetric& metric, double tol,
                        int budget) {
  if (budget < 4) throw Error(ErrorKind::BadInput, "budget too small");
  std::vector<CondVector> terms;
  terms.reserve(static_cast<std::size_t>(budget));
  for (int k = 1; k <= budget; ++k) terms.push_back(seq.term(k));
  const Cond on = terms.front().on();
  int m = on.algebra_atoms();

  CondVector last = terms.back();
  std::vector<CondReal> to_last;
  to_last.reserve(terms.size() - 1);
  for (int k = 0; k + 1 < budget; ++k) to_last.push_back(metric.distance(terms[static_cast<std::size_t>(k)], last));

  int n_cap = (budget * 4) / 5;
  std::uint64_t cauchy_bits = 0;
  for (int t : on.atom_list()) {
    // suffix maxima of the distance to the last term
    double suffix_max = 0.0;
    int best_n = -1;
    for (int p = budget - 1; p >= 1; --p) {
      if (p <= n_cap && suffix_max <= tol / 2.0) best_n = p;
      suffix_max = std::max(suffix_max, to_last[static_cast<std::size_t>(p - 1)].at(t));
    }
    if (best_n >= 1) cauchy_bits |= std::uint64_t{1} << t;
  }

  // Refutation: oscillation beyond tol in the last window that has not
  // decayed since the middle of the budget. Decaying-but-slow sequences are
  // left undecided rather than called non-Cauchy.
  int w = std::min(40, std::max(4, budget / 5));
  auto window_amplitude = [&](int first, std::vector<double>& amp) {
    for (int p = first; p < first + w; ++p)
      for (int q = p + 1; q < first + w; ++q) {
        CondReal d = metric.distance(terms[static_cast<std::size_t>(p - 1)],
                                     terms[static_cast<std::size_t>(q - 1)]);
        for (int t : on.atom_list()) {
          double& a = amp[static_cast<std::size_t>(t)];
          a = std::max(a, d.at(t));
        }
      }
  };
  std::vector<double> amp_late(static_cast<std::size_t>(m), 0.0);
  std::vector<double> amp_mid(static_cast<std::size_t>(m), 0.0);
  window_amplitude(budget - w + 1, amp_late);
  window_amplitude(std::max(1, budget / 2 - w / 2), amp_mid);
  std::uint64_t refuted_bits = 0;
  for (int t : on.atom_list())
    if (amp_late[static_cast<std::size_t>(t)] > tol &&
        amp_late[static_cast<std::size_t>(t)] > 0.5 * amp_mid[static_cast<std::size_t>(t)])
      refuted_bits |= std::uint64_t{1} << t;
  refuted_bits &= ~cauchy_bits;

  Cond cauchy(cauchy_bits, m);
  Cond refuted(refuted_bits, m);
  Cond undecided = on.minus(cauchy.join(refuted));
  return CauchyVerdict{cauchy, refuted, undecided};
}

std::optional<CondVector> limit(const CondSequence& seq, const CondMetric& metric, double tol,
                                int budget) {
  CauchyVerdict v = is_cauchy(seq, metric, tol, budget);
  if (!v.refuted.is_zero()) return std::nullopt;
  if (!v.undecided.is_zero())
    throw Error(ErrorKind::Undecided,
                "budget exhausted without a verdict on " + v.undecided.str());
  return seq.term(budget);
}

Subsequence extract_convergent_subsequence(const CondSequence& seq, const SymmetricBody& region,
                                           int budget) {
  if (budget < 2) throw Error(ErrorKind::BadInput, "budget too small");
  const Cond on = region.on();
  int m = on.algebra_atoms();

  std::vector<CondVector> terms;
  terms.reserve(static_cast<std::size_t>(budget));
  for (int k = 1; k <= budget; ++k) terms.push_back(seq.term(k));

  // Boundedness hypothesis: the region spans per atom and no term escapes.
  std::uint64_t bad_bits = 0;
  for (int t : on.atom_list()) {
    if (!hbody_spans(region.at(t))) {
      bad_bits |= std::uint64_t{1} << t;
      continue;
    }
    for (const auto& x : terms)
      if (!hbody_member(region.at(t), x.at(t).data(), 1e-9)) {
        bad_bits |= std::uint64_t{1} << t;
        break;
      }
  }
  if (bad_bits)
    throw UnboundedError(bad_bits, m, "sequence not bounded on " + Cond(bad_bits, m).str());

  struct AtomExtraction {
    std::vector<int> picks;     // 1-based indices
    std::vector<double> certs;  // box diameter when each pick was taken
    std::vector<double> lim;
  };

  std::vector<AtomExtraction> per_atom;
  std::vector<double> diam_by_atom;
  std::size_t min_len = static_cast<std::size_t>(-1);

  for (int t : on.atom_list()) {
    auto w = hbody_bounding_halfwidths(region.at(t));
    int d = static_cast<int>(w.size());
    std::vector<double> lo(w.size()), hi(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      lo[i] = -w[i];
      hi[i] = w[i];
    }
    auto box_diam = [&] {
      double s = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) s += (hi[i] - lo[i]) * (hi[i] - lo[i]);
      return std::sqrt(s);
    };
    diam_by_atom.push_back(box_diam());

    std::vector<int> live(static_cast<std::size_t>(budget));
    for (int k = 0; k < budget; ++k) live[static_cast<std::size_t>(k)] = k + 1;

    AtomExtraction ext;
    int prev_pick = 0;
    for (int stage = 0; stage < 40 && !live.empty(); ++stage) {
      // one full cycle of single-dimension bisections halves the diameter
      for (int j = 0; j < d && live.size() > 1; ++j) {
        double mid = 0.5 * (lo[static_cast<std::size_t>(j)] + hi[static_cast<std::size_t>(j)]);
        std::vector<int> left, right;
        for (int k : live) {
          double c = terms[static_cast<std::size_t>(k - 1)].at(t)[static_cast<std::size_t>(j)];
          (c <= mid ? left : right).push_back(k);
        }
        // descend into the half with more indices; ties go to the half whose
        // first index is smaller
        bool take_left;
        if (left.size() != right.size()) {
          take_left = left.size() > right.size();
        } else if (left.empty()) {
          take_left = true;
        } else {
          take_left = left.front() < right.front();
        }
        if (take_left) {
          hi[static_cast<std::size_t>(j)] = mid;
          live = std::move(left);
        } else {
          lo[static_cast<std::size_t>(j)] = mid;
          live = std::move(right);
        }
      }
      // earliest admissible index strictly beyond the previous pick
      int pick = -1;
      for (int k : live)
        if (k > prev_pick) {
          pick = k;
          break;
        }
      if (pick < 0) break;
      ext.picks.push_back(pick);
      // the picked term and the eventual limit both sit in the current box
      ext.certs.push_back(box_diam());
      prev_pick = pick;
    }
    ext.lim.resize(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) ext.lim[i] = 0.5 * (lo[i] + hi[i]);
    min_len = std::min(min_len, ext.picks.size());
    per_atom.push_back(std::move(ext));
  }

  if (min_len == 0 || min_len == static_cast<std::size_t>(-1))
    throw Error(ErrorKind::GenerationFailed, "no extractable subsequence within budget");

  Subsequence out;
  for (std::size_t k = 0; k < min_len; ++k) {
    std::size_t slot = 0;
    CondValue<std::int64_t> idx = CondValue<std::int64_t>::from_atom_fn(on, [&](int) {
      return static_cast<std::int64_t>(per_atom[slot++].picks[k]);
    });
    out.indices.push_back(CondNat(std::move(idx)));
    std::size_t aslot = 0;
    out.cert_bounds.push_back(
        CondReal::from_atom_fn(on, [&](int) { return per_atom[aslot++].certs[k]; }));
  }
  std::size_t slot = 0;
  out.limit = CondVector::from_atom_fn(on, [&](int) { return per_atom[slot++].lim; });
  slot = 0;
  out.initial_diameter = CondReal::from_atom_fn(on, [&](int) { return diam_by_atom[slot++]; });
  return out;
}

Cond compactness_check(const SymmetricBody& k) { return body_bounded_condition(k); }

Cond compactness_check(const StableSet<std::vector<double>>& points) { return points.on(); }

SubcoverResult extract_finite_subcover(const SymmetricBody& k, const std::vector<CoverBall>& cover,
                                       int resolution) {
  if (cover.empty()) throw Error(ErrorKind::EmptyFamily, "empty cover");
  const Cond on = k.on();
  SubcoverResult res;
  res.on = on;
  std::size_t max_count = 0;

  for (int t : on.atom_list()) {
    if (!hbody_spans(k.at(t)))
      throw Error(ErrorKind::NotBounded, "subcover extraction needs a bounded set");
    auto w = hbody_bounding_halfwidths(k.at(t));
    int d = static_cast<int>(w.size());

    // membership grid over the bounding box
    std::vector<std::vector<double>> grid;
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    while (true) {
      std::vector<double> p(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i)
        p[static_cast<std::size_t>(i)] =
            -w[static_cast<std::size_t>(i)] +
            2.0 * w[static_cast<std::size_t>(i)] * idx[static_cast<std::size_t>(i)] / resolution;
      if (hbody_member(k.at(t), p.data(), 1e-12)) grid.push_back(p);
      int i = 0;
      for (; i < d; ++i) {
        if (++idx[static_cast<std::size_t>(i)] <= resolution) break;
        idx[static_cast<std::size_t>(i)] = 0;
      }
      if (i == d) break;
    }

    // ball membership table
    std::size_t nballs = cover.size();
    std::vector<std::vector<bool>> covers(nballs);
    for (std::size_t b = 0; b < nballs; ++b) {
      const auto& c = cover[b].center.at(t);
      double r = cover[b].radius.at(t);
      covers[b].resize(grid.size());
      for (std::size_t g = 0; g < grid.size(); ++g) {
        double dist2 = 0.0;
        for (int i = 0; i < d; ++i) {
          double diff = grid[g][static_cast<std::size_t>(i)] - c[static_cast<std::size_t>(i)];
          dist2 += diff * diff;
        }
        covers[b][g] = dist2 <= r * r * (1.0 + 1e-12);
      }
    }

    std::vector<bool> covered(grid.size(), false);
    std::vector<int> chosen;
    std::size_t remaining = grid.size();
    while (remaining > 0) {
      std::size_t best = nballs;
      std::size_t best_gain = 0;
      for (std::size_t b = 0; b < nballs; ++b) {
        std::size_t gain = 0;
        for (std::size_t g = 0; g < grid.size(); ++g)
          if (!covered[g] && covers[b][g]) ++gain;
        if (gain > best_gain) {
          best_gain = gain;
          best = b;
        }
      }
      if (best == nballs) {
        // some grid point lies in no ball at all
        for (std::size_t g = 0; g < grid.size(); ++g)
          if (!covered[g]) {
            std::string pt = "(";
            for (int i = 0; i < d; ++i)
              pt += (i ? "," : "") + std::to_string(grid[g][static_cast<std::size_t>(i)]);
            throw Error(ErrorKind::NotACover,
                        "uncovered point " + pt + ") at atom " + std::to_string(t));
          }
        break;
      }
      chosen.push_back(static_cast<int>(best));
      for (std::size_t g = 0; g < grid.size(); ++g)
        if (covers[best][g] && !covered[g]) {
          covered[g] = true;
          --remaining;
        }
    }
    max_count = std::max(max_count, chosen.size());
    res.selected_per_atom.push_back(std::move(chosen));
  }

  for (std::size_t j = 0; j < max_count; ++j) {
    std::size_t slot = 0;
    CondValue<std::int64_t> idx = CondValue<std::int64_t>::from_atom_fn(on, [&](int) {
      const auto& sel = res.selected_per_atom[slot++];
      return static_cast<std::int64_t>(sel[std::min(j, sel.size() - 1)] + 1);
    });
    res.selected.push_back(CondNat(std::move(idx)));
  }
  return res;
}

ClosedSet::ClosedSet(Cond on, std::vector<ClosedSetAtom> per_atom)
    : on_(on), per_atom_(std::move(per_atom)) {
  if (static_cast<int>(per_atom_.size()) != on_.count())
    throw Error(ErrorKind::InvalidAssignment, "per-atom piece count != atom count");
  for (const auto& a : per_atom_)
    if (a.pieces.empty())
      throw Error(ErrorKind::InvalidAssignment, "closed sets need at least one piece");
}

const ClosedSetAtom& ClosedSet::at(int atom) const {
  if (!on_.contains_atom(atom))
    throw Error(ErrorKind::ConditionNotBelow, "closed set not defined at that atom");
  std::uint64_t below = on_.bits() & ((std::uint64_t{1} << atom) - 1);
  return per_atom_[static_cast<std::size_t>(__builtin_popcountll(below))];
}

bool ClosedSet::contains(int atom, const std::vector<double>& x, double tol) const {
  for (const auto& piece : at(atom).pieces) {
    bool in = true;
    if (const auto* ip = std::get_if<IntervalProductAtom>(&piece)) {
      if (ip->bounds.size() != x.size()) in = false;
      for (std::size_t i = 0; in && i < x.size(); ++i)
        if (x[i] < ip->bounds[i].first - tol || x[i] > ip->bounds[i].second + tol) in = false;
    } else {
      const auto& poly = std::get<PolytopeAtom>(piece);
      for (const auto& [a, b] : poly.rows)
        if (kern::dot(a.data(), x.data(), x.size()) > b + tol) {
          in = false;
          break;
        }
    }
    if (in) return true;
  }
  return false;
}

BaireResult baire_locate(const SymmetricBody& space, const std::vector<ClosedSet>& closed_sets,
                         const BaireSchedule& schedule) {
  if (closed_sets.empty()) throw Error(ErrorKind::EmptyFamily, "empty closed family");
  const Cond on = space.on();

  struct AtomFind {
    std::vector<double> center;
    double radius = 0.0;
    int index = 0;  // 1-based
  };
  std::vector<AtomFind> found;

  for (int t : on.atom_list()) {
    if (!hbody_spans(space.at(t)))
      throw Error(ErrorKind::NotBounded, "the ambient space must be bounded");
    auto w = hbody_bounding_halfwidths(space.at(t));
    int d = static_cast<int>(w.size());
    double inradius = hbody_inball_radius(space.at(t));

    auto sample_ball_ok = [&](const std::vector<double>& c, double r, int per_dim,
                              int set_idx) -> bool {
      std::vector<int> idx(static_cast<std::size_t>(d), 0);
      std::vector<double> p(static_cast<std::size_t>(d));
      while (true) {
        double off2 = 0.0;
        for (int i = 0; i < d; ++i) {
          double off = per_dim == 1 ? 0.0
                                    : -r + 2.0 * r * idx[static_cast<std::size_t>(i)] / (per_dim - 1);
          p[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)] + off;
          off2 += off * off;
        }
        if (off2 <= r * r * (1.0 + 1e-12) && hbody_member(space.at(t), p.data(), 1e-12)) {
          if (!closed_sets[static_cast<std::size_t>(set_idx)].contains(t, p, 1e-12)) return false;
        }
        int i = 0;
        for (; i < d; ++i) {
          if (++idx[static_cast<std::size_t>(i)] < per_dim) break;
          idx[static_cast<std::size_t>(i)] = 0;
        }
        if (i == d) break;
      }
      return true;
    };

    std::optional<AtomFind> result;
    std::string trace;
    for (int level = 0; level < schedule.levels && !result; ++level) {
      double radius = inradius * schedule.initial_radius_frac * std::ldexp(1.0, -level);
      // candidate centers: membership grid with spacing ~ radius
      std::vector<std::vector<double>> centers;
      std::vector<int> steps(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i)
        steps[static_cast<std::size_t>(i)] =
            std::max(2, static_cast<int>(std::ceil(2.0 * w[static_cast<std::size_t>(i)] / radius)));
      std::vector<int> idx(static_cast<std::size_t>(d), 0);
      while (true) {
        std::vector<double> p(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
          p[static_cast<std::size_t>(i)] =
              -w[static_cast<std::size_t>(i)] + 2.0 * w[static_cast<std::size_t>(i)] *
                                                    idx[static_cast<std::size_t>(i)] /
                                                    steps[static_cast<std::size_t>(i)];
        if (hbody_member(space.at(t), p.data(), 1e-12)) centers.push_back(p);
        int i = 0;
        for (; i < d; ++i) {
          if (++idx[static_cast<std::size_t>(i)] <= steps[static_cast<std::size_t>(i)]) break;
          idx[static_cast<std::size_t>(i)] = 0;
        }
        if (i == d) break;
      }

      // hypothesis check on this grid: the closed family covers the space
      for (const auto& c : centers) {
        bool in_some = false;
        for (const auto& e : closed_sets)
          if (e.contains(t, c, 1e-12)) {
            in_some = true;
            break;
          }
        if (!in_some)
          throw Error(ErrorKind::NotACover,
                      "closed family misses a grid point at atom " + std::to_string(t));
      }

      for (const auto& c : centers) {
        for (std::size_t n = 0; n < closed_sets.size(); ++n) {
          if (!closed_sets[n].contains(t, c, 1e-12)) continue;
          if (!sample_ball_ok(c, radius, schedule.ball_samples_per_dim, static_cast<int>(n)))
            continue;
          // verification pass at a finer sampling of the same ball
          if (!sample_ball_ok(c, radius, schedule.ball_samples_per_dim * schedule.verify_factor,
                              static_cast<int>(n)))
            continue;
          result = AtomFind{c, radius, static_cast<int>(n) + 1};
          break;
        }
        if (result) break;
      }
      if (!result)
        trace += "level " + std::to_string(level) + " radius " + std::to_string(radius) + "; ";
    }
    if (!result)
      throw Error(ErrorKind::ResolutionExhausted,
                  "no localized ball at atom " + std::to_string(t) + " (trace: " + trace + ")");
    found.push_back(*result);
  }

  std::size_t slot = 0;
  CondVector center = CondVector::from_atom_fn(on, [&](int) { return found[slot++].center; });
  slot = 0;
  CondReal radius = CondReal::from_atom_fn(on, [&](int) { return found[slot++].radius; });
  slot = 0;
  CondValue<std::int64_t> index = CondValue<std::int64_t>::from_atom_fn(on, [&](int) {
    return static_cast<std::int64_t>(found[slot++].index);
  });
  return BaireResult{std::move(center), std::move(radius), CondNat(std::move(index))};
}

CondReal uniform_bound(const std::vector<CondLinearMap>& generators,
                       const std::optional<PointwiseBound>& pointwise) {
  if (generators.empty()) throw Error(ErrorKind::EmptyFamily, "no generators");
  const Cond on = generators.front().on();

  if (pointwise) {
    Rng rng(pointwise->seed, 0xb0, 0);
    for (int s = 0; s < pointwise->samples; ++s) {
      CondVector x = CondVector::from_atom_fn(on, [&](int t) {
        int dim = generators.front().at(t).cols;
        std::vector<double> v(static_cast<std::size_t>(dim));
        for (double& c : v) c = rng.uniform(-1.0, 1.0);
        return v;
      });
      CondReal bound = pointwise->bound(x);
      for (const auto& g : generators) {
        CondReal val = norm_value(apply(g, x), g.codomain());
        for (int t : on.atom_list())
          if (val.at(t) > bound.at(t) + 1e-9)
            throw Error(ErrorKind::HypothesisViolated,
                        "pointwise bound violated at atom " + std::to_string(t));
      }
    }
  }

  // The hull supremum of the operator norms equals the per-atom maximum over
  // the generators: every hull element is a per-atom selection of them.
  std::vector<CondReal> norms;
  norms.reserve(generators.size());
  for (const auto& g : generators) norms.push_back(operator_norm(g));
  return CondReal::from_atom_fn(on, [&](int t) {
    double best = 0.0;
    for (const auto& n : norms) best = std::max(best, n.at(t));
    return best;
  });
}

}  // namespace condan
