#include "condan/json_io.hpp"

#include <cmath>
#include <sstream>

namespace condan::io {

namespace {

Error bad(const std::string& what) { return Error(ErrorKind::BadInput, what); }

}  // namespace

json to_json(const Cond& c) {
  json arr = json::array();
  for (int t : c.atom_list()) arr.push_back(t);
  return arr;
}

Cond cond_from_json(const json& j, int atoms) {
  if (!j.is_array()) throw bad("condition must be an array of atom indices");
  Algebra a(atoms);
  std::vector<int> list;
  for (const auto& v : j) list.push_back(v.get<int>());
  return Cond::from_atoms(a, list);
}

json to_json(const Partition& p) {
  json blocks = json::array();
  for (const auto& b : p.blocks()) blocks.push_back(to_json(b));
  return json{{"owner", to_json(p.owner())}, {"blocks", blocks}};
}

Partition partition_from_json(const json& j, int atoms) {
  Cond owner = cond_from_json(j.at("owner"), atoms);
  std::vector<Cond> blocks;
  for (const auto& b : j.at("blocks")) blocks.push_back(cond_from_json(b, atoms));
  return Partition(owner, std::move(blocks));
}

namespace {

template <typename X, typename GetFn>
json value_map_to_json(const Cond& on, GetFn&& get) {
  json values = json::object();
  for (int t : on.atom_list()) values[std::to_string(t)] = get(t);
  return json{{"on", to_json(on)}, {"values", values}};
}

}  // namespace

json to_json(const CondReal& v) {
  return value_map_to_json<double>(v.on(), [&](int t) { return v.at(t); });
}

CondReal cond_real_from_json(const json& j, int atoms) {
  Cond on = cond_from_json(j.at("on"), atoms);
  const auto& values = j.at("values");
  return CondReal::from_atom_fn(on, [&](int t) { return values.at(std::to_string(t)).get<double>(); });
}

json to_json(const CondNat& v) {
  return value_map_to_json<std::int64_t>(v.on(), [&](int t) { return v.at(t); });
}

CondNat cond_nat_from_json(const json& j, int atoms) {
  Cond on = cond_from_json(j.at("on"), atoms);
  const auto& values = j.at("values");
  return CondNat(CondValue<std::int64_t>::from_atom_fn(
      on, [&](int t) { return values.at(std::to_string(t)).get<std::int64_t>(); }));
}

json to_json(const CondVector& v) {
  return value_map_to_json<json>(v.on(), [&](int t) { return json(v.at(t)); });
}

CondVector cond_vector_from_json(const json& j, int atoms) {
  Cond on = cond_from_json(j.at("on"), atoms);
  const auto& values = j.at("values");
  return CondVector::from_atom_fn(
      on, [&](int t) { return values.at(std::to_string(t)).get<std::vector<double>>(); });
}

json to_json(const StableSet<double>& s) {
  json per_atom = json::object();
  for (int t : s.on().atom_list()) per_atom[std::to_string(t)] = json(s.at(t));
  return json{{"on", to_json(s.on())}, {"per_atom", per_atom}};
}

StableSet<double> stable_set_from_json(const json& j, int atoms) {
  Cond on = cond_from_json(j.at("on"), atoms);
  const auto& per = j.at("per_atom");
  std::vector<std::vector<double>> sets;
  for (int t : on.atom_list()) sets.push_back(per.at(std::to_string(t)).get<std::vector<double>>());
  return StableSet<double>(on, std::move(sets));
}

json body_to_json(const SymmetricBody& b) {
  json per_atom = json::object();
  for (int t : b.on().atom_list()) {
    json faces = json::array();
    for (const auto& f : b.at(t).faces) faces.push_back(json{{"u", f.u}, {"c", f.c}});
    per_atom[std::to_string(t)] = faces;
  }
  return json{{"on", to_json(b.on())}, {"per_atom", per_atom}};
}

SymmetricBody body_from_json(const json& j, int atoms) {
  Cond on = cond_from_json(j.at("on"), atoms);
  const auto& per = j.at("per_atom");
  std::vector<HBody> bodies;
  for (int t : on.atom_list()) {
    HBody h;
    for (const auto& f : per.at(std::to_string(t))) {
      Halfspace hs;
      hs.u = f.at("u").get<std::vector<double>>();
      hs.c = f.at("c").get<double>();
      h.faces.push_back(std::move(hs));
    }
    bodies.push_back(std::move(h));
  }
  return SymmetricBody(on, std::move(bodies));
}

const char* norm_kind_name(NormKind k) {
  switch (k) {
    case NormKind::L1: return "l1";
    case NormKind::L2: return "l2";
    case NormKind::Linf: return "linf";
    case NormKind::GaugeBody: return "gauge";
  }
  return "?";
}

NormKind norm_kind_from_name(const std::string& s) {
  if (s == "l1") return NormKind::L1;
  if (s == "l2") return NormKind::L2;
  if (s == "linf") return NormKind::Linf;
  if (s == "gauge") return NormKind::GaugeBody;
  throw bad("unknown norm kind '" + s + "'");
}

json map_to_json(const CondLinearMap& t) {
  json per_atom = json::object();
  for (int a : t.on().atom_list()) {
    const Mat& m = t.at(a);
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
      json row = json::array();
      for (int j2 = 0; j2 < m.cols; ++j2) row.push_back(m.at(i, j2));
      rows.push_back(row);
    }
    per_atom[std::to_string(a)] = rows;
  }
  return json{{"on", to_json(t.on())},
              {"per_atom", per_atom},
              {"domain", norm_kind_name(t.domain().kind)},
              {"codomain", norm_kind_name(t.codomain().kind)}};
}

CondLinearMap map_from_json(const json& j, int atoms) {
  Cond on = cond_from_json(j.at("on"), atoms);
  const auto& per = j.at("per_atom");
  std::vector<Mat> mats;
  for (int t : on.atom_list()) {
    const auto& rows = per.at(std::to_string(t));
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    Mat m(r, c);
    for (int i = 0; i < r; ++i)
      for (int k = 0; k < c; ++k) m.at(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].get<double>();
    mats.push_back(std::move(m));
  }
  NormKind dk = norm_kind_from_name(j.value("domain", "l2"));
  NormKind ck = norm_kind_from_name(j.value("codomain", "l2"));
  return CondLinearMap(on, std::move(mats), CondNorm::lp(dk), CondNorm::lp(ck));
}

namespace {

json piece_to_json(const ClosedPiece& piece) {
  if (const auto* ip = std::get_if<IntervalProductAtom>(&piece)) {
    json bounds = json::array();
    for (const auto& [lo, hi] : ip->bounds) bounds.push_back(json::array({lo, hi}));
    return json{{"kind", "interval_product"}, {"bounds", bounds}};
  }
  const auto& poly = std::get<PolytopeAtom>(piece);
  json rows = json::array();
  for (const auto& [a, b] : poly.rows) rows.push_back(json{{"a", a}, {"b", b}});
  return json{{"kind", "hbody"}, {"rows", rows}};
}

ClosedPiece piece_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "interval_product") {
    IntervalProductAtom ip;
    for (const auto& b : j.at("bounds"))
      ip.bounds.emplace_back(b.at(0).get<double>(), b.at(1).get<double>());
    return ip;
  }
  if (kind == "hbody") {
    PolytopeAtom poly;
    for (const auto& r : j.at("rows"))
      poly.rows.emplace_back(r.at("a").get<std::vector<double>>(), r.at("b").get<double>());
    return poly;
  }
  throw bad("unknown closed-set piece kind '" + kind + "'");
}

}  // namespace

json closed_set_to_json(const ClosedSet& s) {
  json per_atom = json::object();
  for (int t : s.on().atom_list()) {
    const auto& atom = s.at(t);
    if (atom.pieces.size() == 1) {
      per_atom[std::to_string(t)] = piece_to_json(atom.pieces.front());
    } else {
      json parts = json::array();
      for (const auto& p : atom.pieces) parts.push_back(piece_to_json(p));
      per_atom[std::to_string(t)] = json{{"kind", "finite_union"}, {"parts", parts}};
    }
  }
  return json{{"on", to_json(s.on())}, {"per_atom", per_atom}};
}

ClosedSet closed_set_from_json(const json& j, int atoms) {
  Cond on = cond_from_json(j.at("on"), atoms);
  const auto& per = j.at("per_atom");
  std::vector<ClosedSetAtom> out;
  for (int t : on.atom_list()) {
    const auto& entry = per.at(std::to_string(t));
    ClosedSetAtom atom;
    if (entry.at("kind").get<std::string>() == "finite_union") {
      for (const auto& p : entry.at("parts")) atom.pieces.push_back(piece_from_json(p));
    } else {
      atom.pieces.push_back(piece_from_json(entry));
    }
    out.push_back(std::move(atom));
  }
  return ClosedSet(on, std::move(out));
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::string describe_document(const json& doc) {
  std::string type = doc.at("type").get<std::string>();
  int atoms = doc.at("atoms").get<int>();
  std::ostringstream out;
  out << "type: " << type << "\natoms: " << atoms << "\n";

  if (type == "cond_real") {
    CondReal v = cond_real_from_json(doc, atoms);
    out << "on: " << v.on().str() << "\n";
    out << "support: " << support(v, 0.0).str() << "\n";
    for (int t : v.on().atom_list()) out << "  atom " << t << ": " << fmt(v.at(t)) << "\n";
  } else if (type == "cond_nat") {
    CondNat v = cond_nat_from_json(doc, atoms);
    out << "on: " << v.on().str() << "\n";
    for (int t : v.on().atom_list()) out << "  atom " << t << ": " << v.at(t) << "\n";
  } else if (type == "cond_vector") {
    CondVector v = cond_vector_from_json(doc, atoms);
    out << "on: " << v.on().str() << "\n";
    // support relative to the per-atom zero vector
    std::uint64_t bits = 0;
    for (int t : v.on().atom_list()) {
      bool nonzero = false;
      for (double c : v.at(t)) nonzero |= (c != 0.0);
      if (nonzero) bits |= std::uint64_t{1} << t;
    }
    out << "support: " << Cond(bits, atoms).str() << "\n";
    for (int t : v.on().atom_list()) {
      out << "  atom " << t << ": [";
      const auto& row = v.at(t);
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? ", " : "") << fmt(row[i]);
      out << "]\n";
    }
    for (NormKind k : {NormKind::L1, NormKind::L2, NormKind::Linf}) {
      CondReal n = norm_value(v, CondNorm::lp(k));
      out << "norm " << norm_kind_name(k) << ":";
      for (int t : v.on().atom_list()) out << " " << fmt(n.at(t));
      out << "\n";
    }
  } else if (type == "stable_set_real") {
    StableSet<double> s = stable_set_from_json(doc, atoms);
    out << "on: " << s.on().str() << "\n";
    for (int t : s.on().atom_list()) {
      out << "  atom " << t << ": {";
      const auto& set = s.at(t);
      for (std::size_t i = 0; i < set.size(); ++i) out << (i ? ", " : "") << fmt(set[i]);
      out << "}\n";
    }
    out << "elements: " << s.element_count() << "\n";
  } else if (type == "body") {
    SymmetricBody b = body_from_json(doc, atoms);
    out << "on: " << b.on().str() << "\n";
    out << "bounded on: " << body_bounded_condition(b).str() << "\n";
    for (int t : b.on().atom_list()) {
      out << "  atom " << t << " (dim " << b.at(t).dim() << "):\n";
      for (const auto& f : b.at(t).faces) {
        out << "    |<[";
        for (std::size_t i = 0; i < f.u.size(); ++i) out << (i ? ", " : "") << fmt(f.u[i]);
        out << "], x>| <= " << fmt(f.c) << "\n";
      }
    }
  } else if (type == "map") {
    CondLinearMap t = map_from_json(doc, atoms);
    out << "on: " << t.on().str() << "\n";
    out << "domain: " << norm_kind_name(t.domain().kind)
        << ", codomain: " << norm_kind_name(t.codomain().kind) << "\n";
    for (int a : t.on().atom_list()) {
      const Mat& m = t.at(a);
      out << "  atom " << a << " (" << m.rows << "x" << m.cols << "):\n";
      for (int i = 0; i < m.rows; ++i) {
        out << "    [";
        for (int j2 = 0; j2 < m.cols; ++j2) out << (j2 ? ", " : "") << fmt(m.at(i, j2));
        out << "]\n";
      }
    }
    if (t.domain().kind == t.codomain().kind && t.domain().kind != NormKind::GaugeBody) {
      CondReal n = operator_norm(t);
      out << "operator norm:";
      for (int a : t.on().atom_list()) out << " " << fmt(n.at(a));
      out << "\n";
    }
  } else if (type == "partition") {
    Partition p = partition_from_json(doc, atoms);
    out << "owner: " << p.owner().str() << "\n";
    for (const auto& b : p.blocks()) out << "  block: " << b.str() << "\n";
  } else if (type == "closed_set") {
    ClosedSet s = closed_set_from_json(doc, atoms);
    out << "on: " << s.on().str() << "\n";
    for (int t : s.on().atom_list())
      out << "  atom " << t << ": " << s.at(t).pieces.size() << " piece(s)\n";
  } else if (type == "sequence") {
    CondSequence seq = sequence_from_json(doc, atoms);
    out << "kind: " << doc.at("kind").get<std::string>() << "\n";
    for (int k = 1; k <= 4; ++k) {
      CondVector term = seq.term(k);
      out << "  term " << k << ":";
      for (int t : term.on().atom_list()) {
        out << " [";
        const auto& row = term.at(t);
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? ", " : "") << fmt(row[i]);
        out << "]";
      }
      out << "\n";
    }
  } else {
    throw bad("unknown document type '" + type + "'");
  }
  return out.str();
}

CondSequence sequence_from_json(const json& j, int atoms) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "table") {
    auto terms = std::make_shared<std::vector<CondVector>>();
    for (const auto& t : j.at("terms")) terms->push_back(cond_vector_from_json(t, atoms));
    if (terms->empty()) throw bad("table sequence without terms");
    return CondSequence([terms](int k) {
      // the table repeats its last entry beyond its length
      std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(k), terms->size()) - 1;
      return (*terms)[idx];
    });
  }
  if (kind == "formula") {
    std::string name = j.at("name").get<std::string>();
    if (name == "geometric") {
      CondVector base = cond_vector_from_json(j.at("base"), atoms);
      double ratio = j.at("ratio").get<double>();
      return CondSequence([base, ratio](int k) {
        return CondVector::from_atom_fn(base.on(), [&](int t) {
          std::vector<double> v = base.at(t);
          double f = std::pow(ratio, k);
          for (double& c : v) c *= f;
          return v;
        });
      });
    }
    throw bad("unknown sequence formula '" + name + "'");
  }
  throw bad("unknown sequence kind '" + kind + "'");
}

}  // namespace condan::io
