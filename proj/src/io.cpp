#include "cover_games/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cover_games/errors.hpp"

namespace cover_games::io {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) { throw InputError(where + ": " + what); }

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing field '") + key + "'");
  return *it;
}

const Json& array_at(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  return j;
}

std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }
std::string dot(const std::string& where, const char* key) { return where + "." + key; }

PointIndex index_from(const SampledSpace& space, const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected a point index");
  auto v = j.get<long long>();
  if (v < 0 || static_cast<unsigned long long>(v) >= space.size()) {
    bad(where, "point index " + std::to_string(v) + " out of range");
  }
  return static_cast<PointIndex>(v);
}

std::vector<Rational> vector_from(const Json& j, const std::string& where) {
  std::vector<Rational> out;
  const Json& a = array_at(j, where);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(rational_from(a[i], at(where, i)));
  return out;
}

Json vector_to_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_json(q));
  return out;
}

void check_space_ref(const SampledSpace& space, const Json& j, const std::string& where) {
  auto it = j.find("space");
  if (it == j.end()) return;
  std::string label;
  if (it->is_string()) {
    label = it->get<std::string>();
    if (label.rfind("builtin:", 0) == 0) label = label.substr(8);
  } else if (it->is_object() && it->contains("label") && (*it)["label"].is_string()) {
    label = (*it)["label"].get<std::string>();
  } else {
    bad(dot(where, "space"), "expected a label or an inline space");
  }
  if (label != space.label()) {
    bad(dot(where, "space"), "refers to space '" + label + "' but the loaded space is '" + space.label() + "'");
  }
}

Json ref_to_json(const RegionRef& r) { return Json::array({r.n, r.member}); }

std::string structure_kind(Structure::Kind k) {
  switch (k) {
    case Structure::Kind::grid: return "grid";
    case Structure::Kind::cantor: return "cantor";
    case Structure::Kind::generic: break;
  }
  return "generic";
}

}  // namespace

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string digest_hex(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(bytes)));
  return buf;
}

Json parse_json(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(source + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Rational rational_from(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const InputError& e) {
      bad(where, e.what());
    }
  }
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  bad(where, "expected a rational string such as \"3/8\"");
}

Json to_json(const Rational& q) { return to_string(q); }

SampledSpace space_from_json(const Json& j, std::size_t point_cap, const std::string& where) {
  std::string label = j.contains("label") && j["label"].is_string() ? j["label"].get<std::string>() : "";
  const Json& metric = field(j, "metric", where);
  if (!metric.is_string()) bad(dot(where, "metric"), "expected a string");
  MetricKind kind;
  try {
    kind = parse_metric_kind(metric.get<std::string>());
  } catch (const InputError& e) {
    bad(dot(where, "metric"), e.what());
  }
  Rational mesh = rational_from(field(j, "mesh", where), dot(where, "mesh"));
  const Json& pts = array_at(field(j, "points", where), dot(where, "points"));
  if (pts.size() > point_cap) {
    throw ResourceError(where + ": " + std::to_string(pts.size()) + " points exceed the point cap " +
                        std::to_string(point_cap));
  }
  std::vector<std::vector<Rational>> points;
  points.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) points.push_back(vector_from(pts[i], at(dot(where, "points"), i)));
  Structure structure;
  if (auto it = j.find("structure"); it != j.end()) {
    std::string w = dot(where, "structure");
    const Json& k = field(*it, "kind", w);
    std::string ks = k.is_string() ? k.get<std::string>() : "";
    if (ks == "grid") {
      structure.kind = Structure::Kind::grid;
    } else if (ks == "cantor") {
      structure.kind = Structure::Kind::cantor;
    } else if (ks != "generic") {
      bad(dot(w, "kind"), "expected grid, cantor or generic");
    }
    const Json& d = field(*it, "dim", w);
    if (!d.is_number_integer() || d.get<int>() < 0 || d.get<int>() > 3) bad(dot(w, "dim"), "expected 0..3");
    structure.dim = d.get<int>();
    if (it->contains("resolution")) structure.resolution = rational_from((*it)["resolution"], dot(w, "resolution"));
  }
  try {
    SampledSpace s(label, kind, mesh, points, structure);
    std::vector<PointIndex> order(s.size());
    for (PointIndex p = 0; p < s.size(); ++p) order[p] = p;
    auto coords = [&](PointIndex p) {
      std::vector<std::int64_t> c;
      for (int a = 0; a < s.dim(); ++a) c.push_back(s.scaled_coordinate(p, a));
      return c;
    };
    std::sort(order.begin(), order.end(), [&](PointIndex a, PointIndex b) { return coords(a) < coords(b); });
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (coords(order[i - 1]) == coords(order[i])) {
        bad(dot(where, "points"), "points " + std::to_string(std::min(order[i - 1], order[i])) + " and " +
                                      std::to_string(std::max(order[i - 1], order[i])) + " coincide");
      }
    }
    return s;
  } catch (const InputError& e) {
    std::string msg = e.what();
    if (msg.rfind(where, 0) == 0) throw;
    bad(where, msg);
  }
}

Json space_to_json(const SampledSpace& space) {
  Json pts = Json::array();
  for (PointIndex p = 0; p < space.size(); ++p) pts.push_back(vector_to_json(space.point(p)));
  Json out{{"label", space.label()}, {"metric", to_string(space.metric())}, {"mesh", to_json(space.mesh())},
           {"points", std::move(pts)}};
  const Structure& st = space.structure();
  if (st.kind != Structure::Kind::generic) {
    out["structure"] = {{"kind", structure_kind(st.kind)}, {"dim", st.dim}, {"resolution", to_json(st.resolution)}};
  }
  return out;
}

Region region_from_json(const SampledSpace& space, const Json& j, const std::string& where) {
  const Json& shape = field(j, "shape", where);
  if (!shape.is_string()) bad(dot(where, "shape"), "expected a string");
  const std::string s = shape.get<std::string>();
  Region r;
  if (s == "ball") {
    r = Ball{index_from(space, field(j, "center", where), dot(where, "center")),
             rational_from(field(j, "radius", where), dot(where, "radius"))};
  } else if (s == "box") {
    r = Box{vector_from(field(j, "lo", where), dot(where, "lo")), vector_from(field(j, "hi", where), dot(where, "hi"))};
  } else if (s == "co_closed_balls") {
    CoClosedBalls cb;
    std::string w = dot(where, "balls");
    const Json& balls = array_at(field(j, "balls", where), w);
    for (std::size_t i = 0; i < balls.size(); ++i) {
      const Json& b = balls[i];
      if (!b.is_array() || b.size() != 2) bad(at(w, i), "expected [center, radius]");
      cb.balls.push_back(ClosedBall{index_from(space, b[0], at(w, i)), rational_from(b[1], at(w, i))});
    }
    r = std::move(cb);
  } else {
    bad(dot(where, "shape"), "unknown shape '" + s + "'");
  }
  try {
    validate_region(space, r);
  } catch (const InputError& e) {
    bad(where, e.what());
  }
  return r;
}

Json region_to_json(const Region& region) {
  return std::visit(
      [](const auto& r) -> Json {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return Json{{"shape", "ball"}, {"center", r.center}, {"radius", to_json(r.radius)}};
        } else if constexpr (std::is_same_v<T, Box>) {
          return Json{{"shape", "box"}, {"lo", vector_to_json(r.lo)}, {"hi", vector_to_json(r.hi)}};
        } else {
          Json balls = Json::array();
          for (const auto& b : r.balls) balls.push_back(Json::array({b.center, to_json(b.radius)}));
          return Json{{"shape", "co_closed_balls"}, {"balls", std::move(balls)}};
        }
      },
      region);
}

Cover cover_from_json(const SampledSpace& space, const Json& j, const std::string& where) {
  check_space_ref(space, j, where);
  std::string w = dot(where, "regions");
  const Json& regs = array_at(field(j, "regions", where), w);
  std::vector<Region> regions;
  for (std::size_t i = 0; i < regs.size(); ++i) regions.push_back(region_from_json(space, regs[i], at(w, i)));
  return make_cover(space, std::move(regions));
}

Json cover_to_json(const SampledSpace& space, const Cover& cover) {
  Json regs = Json::array();
  for (const auto& r : cover.regions) regs.push_back(region_to_json(r));
  return Json{{"space", space.label()}, {"regions", std::move(regs)}};
}

CoverSeq covers_from_json(const SampledSpace& space, const Json& j, const std::string& where) {
  check_space_ref(space, j, where);
  std::string w = dot(where, "covers");
  const Json& cs = array_at(field(j, "covers", where), w);
  if (cs.empty()) bad(w, "needs at least one cover");
  CoverSeq out;
  for (std::size_t i = 0; i < cs.size(); ++i) out.covers.push_back(cover_from_json(space, cs[i], at(w, i)));
  return out;
}

Json covers_to_json(const SampledSpace& space, const CoverSeq& covers) {
  Json cs = Json::array();
  for (const auto& c : covers.covers) {
    Json regs = Json::array();
    for (const auto& r : c.regions) regs.push_back(region_to_json(r));
    cs.push_back(Json{{"regions", std::move(regs)}});
  }
  return Json{{"space", space.label()}, {"covers", std::move(cs)}};
}

HurewiczSelections selections_from_json(const SampledSpace& space, const Json& j, const std::string& where) {
  std::string w = dot(where, "selections");
  const Json& rows = array_at(field(j, "selections", where), w);
  HurewiczSelections out;
  for (std::size_t n = 0; n < rows.size(); ++n) {
    const Json& row = array_at(rows[n], at(w, n));
    std::vector<Ball> balls;
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::string wi = at(at(w, n), i);
      balls.push_back(Ball{index_from(space, field(row[i], "center", wi), dot(wi, "center")),
                           rational_from(field(row[i], "radius", wi), dot(wi, "radius"))});
    }
    out.push_back(std::move(balls));
  }
  return out;
}

Json selections_to_json(const HurewiczSelections& selections) {
  Json rows = Json::array();
  for (const auto& row : selections) {
    Json r = Json::array();
    for (const auto& b : row) r.push_back(Json{{"center", b.center}, {"radius", to_json(b.radius)}});
    rows.push_back(std::move(r));
  }
  return Json{{"selections", std::move(rows)}};
}

std::vector<Subset> chain_from_json(const SampledSpace& space, const Json& j, const std::string& where) {
  std::string w = dot(where, "chain");
  const Json& rows = array_at(field(j, "chain", where), w);
  if (rows.empty()) bad(w, "needs at least one set");
  std::vector<Subset> out;
  for (std::size_t n = 0; n < rows.size(); ++n) {
    const Json& row = array_at(rows[n], at(w, n));
    Subset x(space.size());
    for (std::size_t i = 0; i < row.size(); ++i) x.set(index_from(space, row[i], at(at(w, n), i)));
    out.push_back(std::move(x));
  }
  return out;
}

Json chain_to_json(const std::vector<Subset>& chain) {
  Json rows = Json::array();
  for (const auto& x : chain) rows.push_back(subset_to_json(x));
  return Json{{"chain", std::move(rows)}};
}

Picks picks_from_json(const Json& j, const std::string& where) {
  std::string w = dot(where, "picks");
  const Json& rows = array_at(field(j, "picks", where), w);
  Picks out;
  for (std::size_t n = 0; n < rows.size(); ++n) {
    const Json& row = array_at(rows[n], at(w, n));
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (!row[i].is_number_integer() || row[i].get<long long>() < 0) bad(at(at(w, n), i), "expected a region index");
      r.push_back(row[i].get<std::size_t>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

Json picks_to_json(const Picks& picks) { return Json{{"picks", picks}}; }

Json subset_to_json(const Subset& subset) {
  Json out = Json::array();
  for (auto i = subset.find_first(); i != Subset::npos; i = subset.find_next(i)) out.push_back(i);
  return out;
}

Json family_to_json(const DisjointFamily& family) {
  Json regs = Json::array();
  for (const auto& r : family.regions) regs.push_back(region_to_json(r));
  return Json{{"regions", std::move(regs)}, {"witness", family.witness}, {"separation", to_json(family.separation)}};
}

Json net_to_json(const NetCertificate& net) {
  return Json{{"epsilon", to_json(net.epsilon)}, {"centers", net.centers}, {"covered", subset_to_json(net.covered)}};
}

Json decomposition_to_json(const SigmaDecomposition& decomposition) {
  Json certs = Json::array();
  for (const auto& c : decomposition.certificates) {
    certs.push_back(Json{{"n", c.n}, {"source", c.source}, {"net", net_to_json(c.net)}});
  }
  Json out = chain_to_json(decomposition.chain);
  out["certificates"] = std::move(certs);
  return out;
}

Json transcript_to_json(const Transcript& transcript) {
  Json rounds = Json::array();
  for (const auto& r : transcript.rounds) {
    Json fams = Json::array();
    for (const auto& f : r.one_move.families) fams.push_back(family_to_json(f));
    Json two = Json::array();
    for (const auto& ref : r.two_move) two.push_back(ref_to_json(ref));
    rounds.push_back(Json{{"one", {{"start", r.one_move.start}, {"families", std::move(fams)}}},
                          {"two", std::move(two)},
                          {"block", r.block}});
  }
  Json out{{"rounds", std::move(rounds)},
           {"blocks", transcript.blocks},
           {"horizon", transcript.horizon},
           {"tail_slack", transcript.tail_slack},
           {"entry", transcript.entry},
           {"lost_by_one", transcript.lost_by_one}};
  out["survivor"] = transcript.survivor ? Json(*transcript.survivor) : Json();
  return out;
}

Json sc_plus_to_json(const ScPlusResult& result) {
  Json fams = Json::array();
  Json prov = Json::array();
  for (std::size_t j = 0; j < result.families.size(); ++j) {
    fams.push_back(family_to_json(result.families[j]));
    Json p = Json::array();
    for (const auto& m : result.provenance[j]) p.push_back(Json{{"round", m.round}, {"ref", ref_to_json(m.ref)}});
    prov.push_back(std::move(p));
  }
  return Json{{"families", std::move(fams)},
              {"provenance", std::move(prov)},
              {"blocks", result.blocks},
              {"tail_index", result.tail_index},
              {"horizon", result.horizon}};
}

Json haver_to_json(const HaverWitness& witness) {
  Json fams = Json::array();
  for (const auto& f : witness.families) fams.push_back(family_to_json(f));
  Json diams = Json::array();
  for (const auto& d : witness.diam_bounds) {
    if (d.empty) {
      diams.push_back(Json());
    } else {
      Json e{{"squared", to_json(d.squared)}};
      if (auto x = d.exact()) e["exact"] = to_json(*x);
      diams.push_back(std::move(e));
    }
  }
  Json traces = Json::array();
  for (const auto& t : witness.traces) {
    traces.push_back(Json{{"point", t.point}, {"entry", t.entry}, {"N", t.n_bound}, {"k", t.k}, {"j", t.j},
                          {"member", t.member}, {"kept_index", t.kept_index}});
  }
  Json nets = Json::array();
  for (const auto& n : witness.covers.nets) nets.push_back(n);
  Json cw = Json::array();
  for (const auto& w : witness.covering_witness) {
    cw.push_back(w ? Json::array({w->first + 1, w->second}) : Json());
  }
  return Json{{"epsilons", vector_to_json(witness.epsilons.values())},
              {"deltas", vector_to_json(witness.deltas.values())},
              {"nets", std::move(nets)},
              {"families", std::move(fams)},
              {"diameter_bounds", std::move(diams)},
              {"covering_witness", std::move(cw)},
              {"blocks", witness.blocks},
              {"traces", std::move(traces)}};
}

}  // namespace cover_games::io
