#include "condan/linear.hpp"

#include <algorithm>
#include <cmath>

#include "condan/kernels.hpp"
#include "condan/rng.hpp"

namespace condan {

namespace {

void require_same_condition(const Cond& a, const Cond& b) {
  if (!(a == b)) throw Error(ErrorKind::ConditionMismatch, "objects on different conditions");
}

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) throw Error(ErrorKind::DimensionMismatch, "per-atom dimensions differ");
}

}  // namespace

CondVector cv_add(const CondVector& x, const CondVector& y) {
  require_same_condition(x.on(), y.on());
  return CondVector::from_atom_fn(x.on(), [&](int t) {
    const auto& a = x.at(t);
    const auto& b = y.at(t);
    require_same_dim(a.size(), b.size());
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
  });
}

CondVector cv_sub(const CondVector& x, const CondVector& y) {
  return cv_add(x, cv_scale(y, -1.0));
}

CondVector cv_scale(const CondVector& x, double s) {
  return CondVector::from_atom_fn(x.on(), [&](int t) {
    std::vector<double> out = x.at(t);
    for (double& v : out) v *= s;
    return out;
  });
}

CondVector cv_scale(const CondVector& x, const CondReal& s) {
  require_same_condition(x.on(), s.on());
  return CondVector::from_atom_fn(x.on(), [&](int t) {
    std::vector<double> out = x.at(t);
    double f = s.at(t);
    for (double& v : out) v *= f;
    return out;
  });
}

CondReal cv_dot(const CondVector& x, const CondVector& y) {
  require_same_condition(x.on(), y.on());
  return CondReal::from_atom_fn(x.on(), [&](int t) {
    const auto& a = x.at(t);
    const auto& b = y.at(t);
    require_same_dim(a.size(), b.size());
    return kern::dot(a.data(), b.data(), a.size());
  });
}

SymmetricBody::SymmetricBody(Cond on, std::vector<HBody> per_atom)
    : on_(on), per_atom_(std::move(per_atom)) {
  if (static_cast<int>(per_atom_.size()) != on_.count())
    throw Error(ErrorKind::InvalidAssignment, "per-atom body count != atom count");
  for (const auto& body : per_atom_) {
    if (body.faces.empty())
      throw Error(ErrorKind::InvalidAssignment, "bodies need at least one face");
    std::size_t d = body.faces.front().u.size();
    for (const auto& f : body.faces) {
      if (f.u.size() != d)
        throw Error(ErrorKind::DimensionMismatch, "face directions of mixed dimension");
      if (!(f.c > 0.0))
        throw Error(ErrorKind::InvalidAssignment, "face offsets must be strictly positive");
      if (kern::max_abs(f.u.data(), f.u.size()) == 0.0)
        throw Error(ErrorKind::InvalidAssignment, "zero face direction");
    }
  }
}

const HBody& SymmetricBody::at(int atom) const {
  if (!on_.contains_atom(atom))
    throw Error(ErrorKind::ConditionNotBelow, "body not defined at that atom");
  std::uint64_t below = on_.bits() & ((std::uint64_t{1} << atom) - 1);
  return per_atom_[static_cast<std::size_t>(__builtin_popcountll(below))];
}

double norm_value_at(const double* x, std::size_t n, NormKind kind) {
  switch (kind) {
    case NormKind::L1: return kern::abs_sum(x, n);
    case NormKind::L2: return std::sqrt(kern::sumsq(x, n));
    case NormKind::Linf: return kern::max_abs(x, n);
    case NormKind::GaugeBody:
      throw Error(ErrorKind::UnsupportedNormKind, "gauge norms need their body");
  }
  throw Error(ErrorKind::UnsupportedNormKind, "unknown norm kind");
}

double dual_norm_value_at(const double* u, std::size_t n, NormKind primal_kind) {
  switch (primal_kind) {
    case NormKind::L1: return kern::max_abs(u, n);
    case NormKind::L2: return std::sqrt(kern::sumsq(u, n));
    case NormKind::Linf: return kern::abs_sum(u, n);
    case NormKind::GaugeBody:
      throw Error(ErrorKind::UnsupportedNormKind, "gauge norms need their body");
  }
  throw Error(ErrorKind::UnsupportedNormKind, "unknown norm kind");
}

CondReal norm_value(const CondVector& x, const CondNorm& n) {
  if (n.kind == NormKind::GaugeBody) {
    if (!n.body) throw Error(ErrorKind::UnsupportedNormKind, "gauge norm without a body");
    return gauge(*n.body, x);
  }
  return CondReal::from_atom_fn(x.on(), [&](int t) {
    const auto& v = x.at(t);
    return norm_value_at(v.data(), v.size(), n.kind);
  });
}

CondReal gauge(const SymmetricBody& c, const CondVector& x) {
  require_same_condition(c.on(), x.on());
  return CondReal::from_atom_fn(x.on(), [&](int t) {
    const HBody& body = c.at(t);
    const auto& v = x.at(t);
    if (body.dim() != static_cast<int>(v.size()))
      throw Error(ErrorKind::DimensionMismatch, "vector/body dimension mismatch");
    return hbody_gauge(body, v.data());
  });
}

CondReal support_function(const SymmetricBody& c, const CondVector& u) {
  require_same_condition(c.on(), u.on());
  return CondReal::from_atom_fn(u.on(), [&](int t) {
    return hbody_support(c.at(t), u.at(t));
  });
}

namespace {

void require_same_grid(const SymmetricBody& a, const SymmetricBody& b) {
  require_same_condition(a.on(), b.on());
  for (int t : a.on().atom_list()) {
    const auto& fa = a.at(t).faces;
    const auto& fb = b.at(t).faces;
    if (fa.size() != fb.size())
      throw Error(ErrorKind::GridMismatch, "bodies carry different direction grids");
    for (std::size_t j = 0; j < fa.size(); ++j)
      if (fa[j].u != fb[j].u)
        throw Error(ErrorKind::GridMismatch, "bodies carry different direction grids");
  }
}

}  // namespace

SymmetricBody minkowski_combine(double alpha, const SymmetricBody& a, double beta,
                                const SymmetricBody& b) {
  require_same_grid(a, b);
  std::vector<HBody> out;
  for (int t : a.on().atom_list()) {
    auto va = hbody_vertices(a.at(t));
    auto vb = hbody_vertices(b.at(t));
    HBody h;
    for (const auto& f : a.at(t).faces) {
      double c = alpha * hbody_support(va, f.u) + beta * hbody_support(vb, f.u);
      h.faces.push_back(Halfspace{f.u, c});
    }
    out.push_back(std::move(h));
  }
  return SymmetricBody(a.on(), std::move(out));
}

SymmetricBody grid_canonicalize(const SymmetricBody& a) {
  std::vector<HBody> out;
  for (int t : a.on().atom_list()) {
    auto va = hbody_vertices(a.at(t));
    HBody h;
    for (const auto& f : a.at(t).faces)
      h.faces.push_back(Halfspace{f.u, hbody_support(va, f.u)});
    out.push_back(std::move(h));
  }
  return SymmetricBody(a.on(), std::move(out));
}

SymmetricBody scale_body(double alpha, const SymmetricBody& a) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::BadInput, "body scaling needs alpha > 0");
  std::vector<HBody> out;
  for (int t : a.on().atom_list()) {
    HBody h = a.at(t);
    for (auto& f : h.faces) f.c *= alpha;
    out.push_back(std::move(h));
  }
  return SymmetricBody(a.on(), std::move(out));
}

Cond body_inclusion(const SymmetricBody& a, const SymmetricBody& b, double tol) {
  require_same_condition(a.on(), b.on());
  std::uint64_t bits = 0;
  for (int t : a.on().atom_list()) {
    if (!hbody_spans(a.at(t))) continue;  // unbounded: conservatively excluded
    bool ok = true;
    for (const auto& v : hbody_vertices(a.at(t)))
      if (!hbody_member(b.at(t), v.data(), tol)) {
        ok = false;
        break;
      }
    if (ok) bits |= std::uint64_t{1} << t;
  }
  return Cond(bits, a.on().algebra_atoms());
}

Cond body_bounded_condition(const SymmetricBody& a) {
  std::uint64_t bits = 0;
  for (int t : a.on().atom_list())
    if (hbody_spans(a.at(t))) bits |= std::uint64_t{1} << t;
  return Cond(bits, a.on().algebra_atoms());
}

SymmetricBody body_restrict(const SymmetricBody& a, const Cond& b) {
  if (!b.leq(a.on())) throw Error(ErrorKind::ConditionNotBelow, "restriction above the condition");
  std::vector<HBody> out;
  for (int t : b.atom_list()) out.push_back(a.at(t));
  return SymmetricBody(b, std::move(out));
}

CondLinearMap::CondLinearMap(Cond on, std::vector<Mat> per_atom, CondNorm domain, CondNorm codomain)
    : on_(on), per_atom_(std::move(per_atom)), domain_(domain), codomain_(codomain) {
  if (static_cast<int>(per_atom_.size()) != on_.count())
    throw Error(ErrorKind::InvalidAssignment, "per-atom matrix count != atom count");
}

const Mat& CondLinearMap::at(int atom) const {
  int idx = slot(atom);
  if (idx < 0) throw Error(ErrorKind::ConditionNotBelow, "map not defined at that atom");
  return per_atom_[static_cast<std::size_t>(idx)];
}

CondLinearMap CondLinearMap::functional(const CondVector& coeffs, NormKind domain_kind) {
  std::vector<Mat> mats;
  for (int t : coeffs.on().atom_list()) {
    const auto& u = coeffs.at(t);
    Mat m(1, static_cast<int>(u.size()));
    for (std::size_t i = 0; i < u.size(); ++i) m.at(0, static_cast<int>(i)) = u[i];
    mats.push_back(std::move(m));
  }
  return CondLinearMap(coeffs.on(), std::move(mats), CondNorm::lp(domain_kind),
                       CondNorm::lp(domain_kind));
}

CondVector CondLinearMap::as_covector() const {
  return CondVector::from_atom_fn(on_, [&](int t) {
    const Mat& m = at(t);
    if (m.rows != 1) throw Error(ErrorKind::BadInput, "not a functional");
    return std::vector<double>(m.a.begin(), m.a.end());
  });
}

CondVector apply(const CondLinearMap& t, const CondVector& x) {
  require_same_condition(t.on(), x.on());
  return CondVector::from_atom_fn(x.on(), [&](int a) {
    const Mat& m = t.at(a);
    const auto& v = x.at(a);
    if (m.cols != static_cast<int>(v.size()))
      throw Error(ErrorKind::DimensionMismatch, "map/vector dimension mismatch");
    return matvec(m, v);
  });
}

CondReal apply_functional(const CondLinearMap& f, const CondVector& x) {
  require_same_condition(f.on(), x.on());
  return CondReal::from_atom_fn(x.on(), [&](int a) {
    const Mat& m = f.at(a);
    const auto& v = x.at(a);
    if (m.rows != 1 || m.cols != static_cast<int>(v.size()))
      throw Error(ErrorKind::DimensionMismatch, "functional/vector mismatch");
    return kern::dot(m.row(0), v.data(), v.size());
  });
}

namespace {

// Largest singular value by power iteration on T^T T. Deterministic
// all-ones start; restarts with pseudo-random vectors if the Rayleigh
// residual stagnates.
double largest_singular_value(const Mat& m, double rel_tol, int max_iters) {
  int n = m.cols;
  if (n == 0 || m.rows == 0) return 0.0;
  Mat mt = transpose(m);
  double scale = 0.0;
  for (double v : m.a) scale = std::max(scale, std::fabs(v));
  if (scale == 0.0) return 0.0;

  Rng rng(0xc0ffee);
  double best = 0.0;
  for (int restart = 0; restart < 4; ++restart) {
    std::vector<double> v(static_cast<std::size_t>(n), 1.0);
    if (restart > 0)
      for (double& x : v) x = rng.uniform(-1.0, 1.0);
    double vn = vec_norm2(v);
    if (vn == 0.0) continue;
    for (double& x : v) x /= vn;

    double lambda = 0.0;
    bool converged = false;
    for (int it = 0; it < max_iters; ++it) {
      std::vector<double> w = matvec(mt, matvec(m, v));  // B v
      lambda = kern::dot(v.data(), w.data(), v.size());  // Rayleigh quotient
      // residual ||Bv - lambda v||; for symmetric B this brackets an
      // eigenvalue within the residual of the Rayleigh estimate
      double res = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        double r = w[i] - lambda * v[i];
        res += r * r;
      }
      res = std::sqrt(res);
      if (res <= rel_tol * std::max(lambda, 1e-300)) {
        converged = true;
        break;
      }
      double wn = vec_norm2(w);
      if (wn == 0.0) break;
      for (std::size_t i = 0; i < w.size(); ++i) v[i] = w[i] / wn;
    }
    best = std::max(best, lambda);
    if (converged && restart >= 1) break;  // one confirmation restart
  }
  return std::sqrt(std::max(best, 0.0));
}

double analytic_operator_norm(const Mat& m, NormKind kind) {
  switch (kind) {
    case NormKind::L1: {  // max column abs sum
      double best = 0.0;
      for (int j = 0; j < m.cols; ++j) {
        double s = 0.0;
        for (int i = 0; i < m.rows; ++i) s += std::fabs(m.at(i, j));
        best = std::max(best, s);
      }
      return best;
    }
    case NormKind::Linf: {  // max row abs sum
      double best = 0.0;
      for (int i = 0; i < m.rows; ++i) best = std::max(best, kern::abs_sum(m.row(i), static_cast<std::size_t>(m.cols)));
      return best;
    }
    case NormKind::L2:
      return largest_singular_value(m, 1e-9, 10000);
    default:
      throw Error(ErrorKind::UnsupportedNormKind, "gauge-norm operator norms are sampled only");
  }
}

}  // namespace

CondReal operator_norm(const CondLinearMap& t) {
  NormKind dk = t.domain().kind;
  NormKind ck = t.codomain().kind;
  if (dk == NormKind::GaugeBody || ck == NormKind::GaugeBody || dk != ck)
    throw Error(ErrorKind::UnsupportedNormKind,
                "analytic operator norm needs matching l1/l2/linf norms");
  return CondReal::from_atom_fn(t.on(), [&](int a) { return analytic_operator_norm(t.at(a), dk); });
}

CondReal sampled_operator_norm(const CondLinearMap& t, int samples, std::uint64_t seed) {
  if ((t.domain().kind == NormKind::GaugeBody && !t.domain().body) ||
      (t.codomain().kind == NormKind::GaugeBody && !t.codomain().body))
    throw Error(ErrorKind::UnsupportedNormKind, "gauge norm without a body");
  return CondReal::from_atom_fn(t.on(), [&](int a) {
    const Mat& m = t.at(a);
    Rng rng(seed, 0x5a3, static_cast<std::uint64_t>(a));
    double best = 0.0;
    for (int s = 0; s < samples; ++s) {
      std::vector<double> x(static_cast<std::size_t>(m.cols));
      for (double& v : x) v = rng.normal();
      double xn;
      if (t.domain().kind == NormKind::GaugeBody)
        xn = hbody_gauge(t.domain().body->at(a), x.data());
      else
        xn = norm_value_at(x.data(), x.size(), t.domain().kind);
      if (xn <= 1e-300) continue;
      std::vector<double> y = matvec(m, x);
      double yn;
      if (t.codomain().kind == NormKind::GaugeBody)
        yn = hbody_gauge(t.codomain().body->at(a), y.data());
      else
        yn = norm_value_at(y.data(), y.size(), t.codomain().kind);
      best = std::max(best, yn / xn);
    }
    return best;
  });
}

namespace {

// Unit-dual-norm coefficient vector with <u, x> = ||x|| (zero when x = 0).
std::vector<double> norming_coefficients(const std::vector<double>& x, NormKind kind) {
  std::size_t n = x.size();
  std::vector<double> u(n, 0.0);
  switch (kind) {
    case NormKind::L1:
      for (std::size_t i = 0; i < n; ++i) u[i] = x[i] > 0 ? 1.0 : (x[i] < 0 ? -1.0 : 0.0);
      return u;
    case NormKind::L2: {
      double nn = std::sqrt(kern::sumsq(x.data(), n));
      if (nn > 0)
        for (std::size_t i = 0; i < n; ++i) u[i] = x[i] / nn;
      return u;
    }
    case NormKind::Linf: {
      double mx = kern::max_abs(x.data(), n);
      if (mx > 0)
        for (std::size_t i = 0; i < n; ++i)
          if (std::fabs(x[i]) == mx) {  // smallest index attaining the max
            u[i] = x[i] > 0 ? 1.0 : -1.0;
            break;
          }
      return u;
    }
    default:
      throw Error(ErrorKind::UnsupportedNormKind, "norming functionals need an analytic norm");
  }
}

// Unit primal vector y with <u, y> = dual norm of u (zero when u = 0).
std::vector<double> norming_vector_for_dual(const std::vector<double>& u, NormKind primal_kind) {
  std::size_t n = u.size();
  std::vector<double> y(n, 0.0);
  switch (primal_kind) {
    case NormKind::L1: {  // dual is linf; extreme coordinate of u
      double mx = kern::max_abs(u.data(), n);
      if (mx > 0)
        for (std::size_t i = 0; i < n; ++i)
          if (std::fabs(u[i]) == mx) {
            y[i] = u[i] > 0 ? 1.0 : -1.0;
            break;
          }
      return y;
    }
    case NormKind::L2: {
      double nn = std::sqrt(kern::sumsq(u.data(), n));
      if (nn > 0)
        for (std::size_t i = 0; i < n; ++i) y[i] = u[i] / nn;
      return y;
    }
    case NormKind::Linf: {  // dual is l1; sign vector
      double mx = kern::max_abs(u.data(), n);
      if (mx > 0)
        for (std::size_t i = 0; i < n; ++i) y[i] = u[i] > 0 ? 1.0 : (u[i] < 0 ? -1.0 : 0.0);
      return y;
    }
    default:
      throw Error(ErrorKind::UnsupportedNormKind, "norming vectors need an analytic norm");
  }
}

}  // namespace

CondLinearMap norming_functional(const CondVector& x, NormKind kind) {
  CondVector coeffs = CondVector::from_atom_fn(
      x.on(), [&](int t) { return norming_coefficients(x.at(t), kind); });
  return CondLinearMap::functional(coeffs, kind);
}

EmbeddingCheck embedding_check(const CondVector& x, NormKind kind, int dual_samples,
                               std::uint64_t seed) {
  CondReal xnorm = norm_value(x, CondNorm::lp(kind));
  CondLinearMap norming = norming_functional(x, kind);
  CondReal sup = CondReal::from_atom_fn(x.on(), [&](int t) {
    const auto& xv = x.at(t);
    std::size_t n = xv.size();
    const Mat& nf = norming.at(t);
    double best = std::fabs(kern::dot(nf.row(0), xv.data(), n));
    Rng rng(seed, 0xeb1, static_cast<std::uint64_t>(t));
    for (int s = 0; s < dual_samples; ++s) {
      std::vector<double> u(n);
      for (double& v : u) v = rng.normal();
      double dn = dual_norm_value_at(u.data(), n, kind);
      if (dn <= 1e-300) continue;
      // scale into the dual unit ball
      double scale = rng.uniform() / dn;
      best = std::max(best, std::fabs(kern::dot(u.data(), xv.data(), n)) * scale);
    }
    return best;
  });
  CondReal gap = CondReal::from_atom_fn(x.on(), [&](int t) {
    return std::fabs(sup.at(t) - xnorm.at(t));
  });
  return EmbeddingCheck{sup, gap};
}

namespace {

// Deterministic net of the unit sphere in R^d with covering radius <= 1/4:
// grids on the cube surface, normalized. For points p on the cube surface
// ||p||_2 >= 1, so normalization at most doubles distances.
std::vector<std::vector<double>> sphere_net_quarter(int d) {
  std::vector<std::vector<double>> net;
  if (d <= 0) return net;
  if (d == 1) {
    net.push_back({1.0});
    net.push_back({-1.0});
    return net;
  }
  double s = 1.0 / (4.0 * std::sqrt(static_cast<double>(d - 1)));
  int steps = static_cast<int>(std::ceil(2.0 / s));
  for (int axis = 0; axis < d; ++axis)
    for (int sign = -1; sign <= 1; sign += 2) {
      std::vector<int> idx(static_cast<std::size_t>(d - 1), 0);
      while (true) {
        std::vector<double> p(static_cast<std::size_t>(d));
        p[static_cast<std::size_t>(axis)] = static_cast<double>(sign);
        int k = 0;
        for (int i = 0; i < d; ++i) {
          if (i == axis) continue;
          p[static_cast<std::size_t>(i)] =
              -1.0 + 2.0 * static_cast<double>(idx[static_cast<std::size_t>(k)]) / steps;
          ++k;
        }
        double nn = std::sqrt(kern::sumsq(p.data(), p.size()));
        for (double& v : p) v /= nn;
        net.push_back(std::move(p));
        int i = 0;
        for (; i < d - 1; ++i) {
          if (++idx[static_cast<std::size_t>(i)] <= steps) break;
          idx[static_cast<std::size_t>(i)] = 0;
        }
        if (i == d - 1) break;
      }
    }
  return net;
}

}  // namespace

std::vector<CondLinearMap> half_norming_set(const std::vector<CondVector>& span_vectors) {
  if (span_vectors.empty()) throw Error(ErrorKind::EmptyFamily, "empty spanning family");
  Cond on = span_vectors.front().on();
  for (const auto& v : span_vectors) require_same_condition(on, v.on());

  // per atom: orthonormal basis of the span, then a quarter-net in span
  // coordinates mapped back to ambient functionals
  std::vector<std::vector<std::vector<double>>> per_atom_functionals;
  std::size_t max_count = 1;
  for (int t : on.atom_list()) {
    std::vector<std::vector<double>> cols;
    for (const auto& v : span_vectors) cols.push_back(v.at(t));
    auto q = orthonormal_basis(cols);
    int d = static_cast<int>(q.size());
    if (d > kVertexEnumDimCap)
      throw Error(ErrorKind::UnsupportedDimension, "subspace dimension above the net cap");
    std::vector<std::vector<double>> funcs;
    std::size_t ambient = cols.front().size();
    for (const auto& w : sphere_net_quarter(d)) {
      std::vector<double> z(ambient, 0.0);
      for (int i = 0; i < d; ++i)
        kern::axpy(w[static_cast<std::size_t>(i)], q[static_cast<std::size_t>(i)].data(), z.data(),
                   ambient);
      funcs.push_back(std::move(z));
    }
    if (funcs.empty()) funcs.push_back(std::vector<double>(ambient, 0.0));  // zero subspace
    max_count = std::max(max_count, funcs.size());
    per_atom_functionals.push_back(std::move(funcs));
  }

  std::vector<CondLinearMap> out;
  out.reserve(max_count);
  for (std::size_t j = 0; j < max_count; ++j) {
    std::size_t slot = 0;
    CondVector coeffs = CondVector::from_atom_fn(on, [&](int t) {
      (void)t;
      const auto& funcs = per_atom_functionals[slot++];
      return funcs[std::min(j, funcs.size() - 1)];
    });
    out.push_back(CondLinearMap::functional(coeffs, NormKind::L2));
  }
  return out;
}

namespace {

struct SimplexCell {
  std::vector<std::vector<double>> verts;  // points on one face of the l1-sphere
  double lb = 0.0;
};

double l1_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

// Subgradient of v -> ||v|| (dual-unit vector u with <u, v> = ||v||).
std::vector<double> norm_subgradient_at(const std::vector<double>& v, NormKind kind,
                                        const HBody* body) {
  std::size_t n = v.size();
  std::vector<double> u(n, 0.0);
  switch (kind) {
    case NormKind::L1:
      for (std::size_t i = 0; i < n; ++i) u[i] = v[i] > 0 ? 1.0 : (v[i] < 0 ? -1.0 : 0.0);
      return u;
    case NormKind::L2: {
      double nn = std::sqrt(kern::sumsq(v.data(), n));
      if (nn > 0)
        for (std::size_t i = 0; i < n; ++i) u[i] = v[i] / nn;
      return u;
    }
    case NormKind::Linf: {
      double mx = kern::max_abs(v.data(), n);
      if (mx > 0)
        for (std::size_t i = 0; i < n; ++i)
          if (std::fabs(v[i]) == mx) {
            u[i] = v[i] > 0 ? 1.0 : -1.0;
            break;
          }
      return u;
    }
    case NormKind::GaugeBody: {
      double best = -1.0;
      for (const auto& f : body->faces) {
        double val = kern::dot(f.u.data(), v.data(), n);
        if (std::fabs(val) / f.c > best) {
          best = std::fabs(val) / f.c;
          double s = (val >= 0 ? 1.0 : -1.0) / f.c;
          u.assign(n, 0.0);
          kern::axpy(s, f.u.data(), u.data(), n);
        }
      }
      return u;
    }
  }
  return u;
}

}  // namespace

EquivalenceConstants equivalence_constants(const std::vector<CondVector>& basis,
                                           const CondNorm& norm, double rel_tol) {
  if (basis.empty()) throw Error(ErrorKind::EmptyFamily, "empty basis");
  Cond on = basis.front().on();
  for (const auto& b : basis) require_same_condition(on, b.on());
  int k = static_cast<int>(basis.size());

  std::vector<double> lows, highs;
  for (int t : on.atom_list()) {
    std::vector<std::vector<double>> cols;
    for (const auto& b : basis) cols.push_back(b.at(t));

    // conditional injectivity: per-atom full column rank, with tolerance
    Mat gram(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        gram.at(i, j) = kern::dot(cols[static_cast<std::size_t>(i)].data(),
                                  cols[static_cast<std::size_t>(j)].data(),
                                  cols[static_cast<std::size_t>(i)].size());
    auto eig = jacobi_eigenvalues(gram);
    if (eig.front() <= 1e-12 * std::max(eig.back(), 1e-300))
      throw Error(ErrorKind::NotInjective, "basis is conditionally rank deficient");

    auto norm_of_comb = [&](const std::vector<double>& z) {
      std::vector<double> v(cols.front().size(), 0.0);
      for (int i = 0; i < k; ++i)
        kern::axpy(z[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(i)].data(),
                   v.data(), v.size());
      if (norm.kind == NormKind::GaugeBody) return hbody_gauge(norm.body->at(t), v.data());
      return norm_value_at(v.data(), v.size(), norm.kind);
    };

    // r_high: the norm is convex, so the max over the l1 ball sits at a
    // vertex +-e_i, all of which lie on the sphere.
    double r_high = 0.0;
    for (int i = 0; i < k; ++i) {
      std::vector<double> z(static_cast<std::size_t>(k), 0.0);
      z[static_cast<std::size_t>(i)] = 1.0;
      r_high = std::max(r_high, norm_of_comb(z));
    }

    if (k == 1) {  // the l1-sphere is {+-e_1}
      lows.push_back(r_high);
      highs.push_back(r_high);
      continue;
    }

    // r_low: branch-and-bound per sign-pattern face, Lipschitz constant
    // r_high in the l1 metric, certified to rel_tol.
    double ub = r_high;
    auto eval = [&](const std::vector<double>& z) {
      double v = norm_of_comb(z);
      ub = std::min(ub, v);
      return v;
    };

    std::vector<SimplexCell> active;
    int faces = 1 << (k - 1);  // g(-z) = g(z): half the sign patterns suffice
    for (int mask = 0; mask < faces; ++mask) {
      SimplexCell cell;
      for (int i = 0; i < k; ++i) {
        std::vector<double> v(static_cast<std::size_t>(k), 0.0);
        double sign = (i > 0 && (mask >> (i - 1)) & 1) ? -1.0 : 1.0;
        v[static_cast<std::size_t>(i)] = sign;
        cell.verts.push_back(std::move(v));
      }
      active.push_back(std::move(cell));
    }

    auto cell_bound = [&](SimplexCell& cell) {
      std::vector<double> c(static_cast<std::size_t>(k), 0.0);
      for (const auto& v : cell.verts)
        for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] += v[static_cast<std::size_t>(i)];
      double inv = 1.0 / static_cast<double>(cell.verts.size());
      for (double& x : c) x *= inv;  // faces are affine, so the centroid stays on the sphere
      double g = eval(c);
      for (const auto& v : cell.verts) eval(v);
      // convexity: g(x) >= g(c) + <s, x - c> on the cell, with s the
      // subgradient of z -> ||sum z_i b_i|| at the centroid; the linear part
      // attains its minimum at a cell vertex
      std::vector<double> img(cols.front().size(), 0.0);
      for (int i = 0; i < k; ++i)
        kern::axpy(c[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(i)].data(),
                   img.data(), img.size());
      std::vector<double> nsub = norm_subgradient_at(
          img, norm.kind, norm.kind == NormKind::GaugeBody ? &norm.body->at(t) : nullptr);
      std::vector<double> s(static_cast<std::size_t>(k), 0.0);
      for (int i = 0; i < k; ++i)
        s[static_cast<std::size_t>(i)] = kern::dot(nsub.data(), cols[static_cast<std::size_t>(i)].data(), nsub.size());
      double lin_min = 0.0;
      bool first = true;
      double radius = 0.0;
      for (const auto& v : cell.verts) {
        double lin = 0.0;
        for (int i = 0; i < k; ++i)
          lin += s[static_cast<std::size_t>(i)] *
                 (v[static_cast<std::size_t>(i)] - c[static_cast<std::size_t>(i)]);
        lin_min = first ? lin : std::min(lin_min, lin);
        first = false;
        radius = std::max(radius, l1_dist(c, v));
      }
      cell.lb = std::max(g + lin_min, g - r_high * radius);
    };

    for (auto& cell : active) cell_bound(cell);

    double final_lb = 0.0;
    for (int round = 0; round < 20000; ++round) {
      double lb = 1e300;
      std::size_t worst = 0;
      for (std::size_t i = 0; i < active.size(); ++i)
        if (active[i].lb < lb) {
          lb = active[i].lb;
          worst = i;
        }
      final_lb = lb;
      if (lb >= ub - rel_tol * std::max(ub, 1e-300)) break;
      // split the worst cell along its longest edge
      SimplexCell cell = active[worst];
      active.erase(active.begin() + static_cast<std::ptrdiff_t>(worst));
      std::size_t ei = 0, ej = 1;
      double longest = -1.0;
      for (std::size_t i = 0; i < cell.verts.size(); ++i)
        for (std::size_t j = i + 1; j < cell.verts.size(); ++j) {
          double d = l1_dist(cell.verts[i], cell.verts[j]);
          if (d > longest) {
            longest = d;
            ei = i;
            ej = j;
          }
        }
      std::vector<double> mid(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i)
        mid[static_cast<std::size_t>(i)] =
            0.5 * (cell.verts[ei][static_cast<std::size_t>(i)] + cell.verts[ej][static_cast<std::size_t>(i)]);
      double mn = kern::abs_sum(mid.data(), mid.size());
      if (mn > 1e-300)
        for (double& x : mid) x /= mn;
      SimplexCell left = cell, right = cell;
      left.verts[ej] = mid;
      right.verts[ei] = mid;
      cell_bound(left);
      cell_bound(right);
      active.push_back(std::move(left));
      active.push_back(std::move(right));
    }
    // certified lower bound on the sphere minimum, within rel_tol of it
    lows.push_back(std::max(final_lb, 0.0));
    highs.push_back(r_high);
  }

  std::size_t slot = 0;
  CondReal r_low = CondReal::from_atom_fn(on, [&](int) { return lows[slot++]; });
  slot = 0;
  CondReal r_high = CondReal::from_atom_fn(on, [&](int) { return highs[slot++]; });
  return EquivalenceConstants{r_low, r_high};
}

DirectSumResult direct_sum_l2(const std::vector<NormKind>& component_norms,
                              const std::vector<CondVector>& x,
                              const std::vector<CondVector>& xstar, bool truncated,
                              const std::optional<CondReal>& tail_mass) {
  if (truncated && !tail_mass)
    throw Error(ErrorKind::UncertifiedTail, "truncated direct sums need a tail certificate");
  if (component_norms.size() != x.size() || x.size() != xstar.size())
    throw Error(ErrorKind::InvalidAssignment, "component lists of different lengths");
  if (x.empty()) throw Error(ErrorKind::EmptyFamily, "no components");
  Cond on = x.front().on();
  for (const auto& v : x) require_same_condition(on, v.on());
  for (const auto& v : xstar) require_same_condition(on, v.on());

  std::size_t n = x.size();
  CondReal norm2 = CondReal::from_atom_fn(on, [&](int t) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& v = x[i].at(t);
      double nv = norm_value_at(v.data(), v.size(), component_norms[i]);
      s += nv * nv;
    }
    if (truncated) {
      double tm = tail_mass->at(t);
      s += tm * tm;
    }
    return std::sqrt(s);
  });

  CondReal dual_norm2 = CondReal::from_atom_fn(on, [&](int t) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& u = xstar[i].at(t);
      double nu = dual_norm_value_at(u.data(), u.size(), component_norms[i]);
      s += nu * nu;
    }
    return std::sqrt(s);
  });

  CondReal pairing = CondReal::from_atom_fn(on, [&](int t) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& u = xstar[i].at(t);
      const auto& v = x[i].at(t);
      require_same_dim(u.size(), v.size());
      s += kern::dot(u.data(), v.data(), u.size());
    }
    return s;
  });

  // The operator norm of the pairing functional over the finitely supported
  // ball, attained at the explicitly constructed norming element.
  CondReal attained = CondReal::from_atom_fn(on, [&](int t) {
    std::vector<std::vector<double>> z(n);
    double z_norm_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& u = xstar[i].at(t);
      double du = dual_norm_value_at(u.data(), u.size(), component_norms[i]);
      auto y = norming_vector_for_dual(u, component_norms[i]);
      for (double& v : y) v *= du;
      double ny = norm_value_at(y.data(), y.size(), component_norms[i]);
      z_norm_sq += ny * ny;
      z[i] = std::move(y);
    }
    double zn = std::sqrt(z_norm_sq);
    if (zn <= 0.0) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& u = xstar[i].at(t);
      s += kern::dot(u.data(), z[i].data(), u.size());
    }
    return s / zn;
  });

  CondReal gap = CondReal::from_atom_fn(on, [&](int t) {
    return std::fabs(attained.at(t) - dual_norm2.at(t));
  });

  return DirectSumResult{norm2, dual_norm2, pairing, attained, gap};
}

RenormResult renorm_sequence(const SymmetricBody& k_body, const SymmetricBody& unit_body,
                             const CondVector& x, int kmax, double tol) {
  require_same_grid(k_body, unit_body);
  require_same_condition(k_body.on(), x.on());
  if (kmax < 1) throw Error(ErrorKind::BadInput, "kmax must be at least 1");
  for (int t : k_body.on().atom_list())
    if (!hbody_spans(k_body.at(t)))
      throw Error(ErrorKind::NotBounded, "generating body unbounded at atom " + std::to_string(t));

  // per-atom support values of K and B on the grid, via vertices
  const Cond& on = k_body.on();
  std::vector<std::vector<double>> hk, hb;  // [slot][face]
  std::vector<double> lambda_vals;
  CondReal gauge_k = gauge(k_body, x);
  for (int t : on.atom_list()) {
    auto vk = hbody_vertices(k_body.at(t));
    auto vb = hbody_vertices(unit_body.at(t));
    std::vector<double> hkt, hbt;
    for (const auto& f : k_body.at(t).faces) {
      hkt.push_back(hbody_support(vk, f.u));
      hbt.push_back(hbody_support(vb, f.u));
    }
    hk.push_back(std::move(hkt));
    hb.push_back(std::move(hbt));
    double lam = 0.0;
    for (const auto& v : vk) lam = std::max(lam, hbody_gauge(unit_body.at(t), v.data()));
    lambda_vals.push_back(lam);
  }

  std::vector<CondReal> gauges;
  gauges.reserve(static_cast<std::size_t>(kmax));
  std::vector<double> sumsq(static_cast<std::size_t>(on.count()), 0.0);
  for (int nn = 1; nn <= kmax; ++nn) {
    double a = std::ldexp(1.0, nn);   // 2^n
    double b = std::ldexp(1.0, -nn);  // 2^-n
    std::size_t slot = 0;
    CondReal g = CondReal::from_atom_fn(on, [&](int t) {
      const auto& faces = k_body.at(t).faces;
      const auto& xv = x.at(t);
      double best = 0.0;
      for (std::size_t j = 0; j < faces.size(); ++j) {
        double c = a * hk[slot][j] + b * hb[slot][j];
        double v = std::fabs(kern::dot(faces[j].u.data(), xv.data(), xv.size())) / c;
        best = std::max(best, v);
      }
      ++slot;
      return best;
    });
    std::size_t i = 0;
    for (int t : on.atom_list()) {
      double v = g.at(t);
      sumsq[i++] += v * v;
    }
    gauges.push_back(std::move(g));
  }

  // tail: gauge(B_n, x) <= 2^-n gauge_K(x), so the tail of the squared sum
  // is at most gauge_K(x)^2 * 4^-kmax / 3
  CondReal tail = CondReal::from_atom_fn(on, [&](int t) {
    double gk = gauge_k.at(t);
    return gk * gk * std::ldexp(1.0, -2 * kmax) / 3.0;
  });

  std::size_t i = 0;
  std::vector<double> ss_vals, nc_vals;
  std::uint64_t ok_bits = 0;
  for (int t : on.atom_list()) {
    double ss = sumsq[i++];
    ss_vals.push_back(ss);
    nc_vals.push_back(std::sqrt(ss + tail.at(t)));
    if (ss + tail.at(t) <= 1.0 / 3.0 + tol) ok_bits |= std::uint64_t{1} << t;
  }
  std::size_t slot = 0;
  CondReal sum_sq = CondReal::from_atom_fn(on, [&](int) { return ss_vals[slot++]; });
  slot = 0;
  CondReal norm_c = CondReal::from_atom_fn(on, [&](int) { return nc_vals[slot++]; });
  slot = 0;
  CondReal lambda = CondReal::from_atom_fn(on, [&](int) { return lambda_vals[slot++]; });

  return RenormResult{std::move(gauges), sum_sq,
                      tail,              norm_c,
                      Cond(ok_bits, on.algebra_atoms()), lambda};
}

std::vector<std::vector<double>> make_grid_directions(int dim, int extra, std::uint64_t seed) {
  std::vector<std::vector<double>> dirs;
  for (int i = 0; i < dim; ++i) {
    std::vector<double> e(static_cast<std::size_t>(dim), 0.0);
    e[static_cast<std::size_t>(i)] = 1.0;
    dirs.push_back(std::move(e));
  }
  Rng rng(seed, 0x9a1d, 0);
  for (int j = 0; j < extra; ++j) {
    std::vector<double> u(static_cast<std::size_t>(dim));
    double nn = 0.0;
    while (nn < 1e-6) {
      for (double& v : u) v = rng.normal();
      nn = std::sqrt(kern::sumsq(u.data(), u.size()));
    }
    for (double& v : u) v /= nn;
    dirs.push_back(std::move(u));
  }
  return dirs;
}

}  // namespace condan
