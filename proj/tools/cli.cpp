#include "cover_games/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "cover_games/errors.hpp"

namespace cover_games::cli {

using io::Json;

namespace {

class Report {
 public:
  Json inputs = Json::object();
  Json checks = Json::array();
  Json result = Json::object();

  void check(const std::string& name, bool pass, Json witness = Json()) {
    Json c{{"name", name}, {"pass", pass}};
    if (!pass) c["witness"] = std::move(witness);
    checks.push_back(std::move(c));
    ok_ = ok_ && pass;
  }
  bool ok() const { return ok_; }

 private:
  bool ok_ = true;
};

struct Options {
  std::string config;
  std::string out;
  int horizon = 0;
  std::string margin;
  int tail_slack = 0;
  std::size_t point_cap = 0;
  std::uint64_t seed = 0;

  std::string space;
  std::string epsilon;
  bool oracle = false;
  std::size_t oracle_cap = 1000000;
  std::string selections;
  std::string epsilons;
  std::string cert_epsilons;
  std::string chain;
  std::string cover;
  std::string covers;
  std::string two = "covering";
  std::string kind;
  std::string picks;
  std::string label;
  std::size_t trace_cap = 16;
};

std::vector<Rational> parse_list(const std::string& text, const std::string& what) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_rational(item));
    } catch (const InputError& e) {
      throw InputError(what + ": " + e.what());
    }
  }
  if (out.empty()) throw InputError(what + ": empty list");
  return out;
}

std::vector<Rational> quarter_schedule(int horizon) {
  std::vector<Rational> out;
  Rational e(1);
  for (int n = 0; n < horizon; ++n) {
    out.push_back(e);
    e /= 4;
  }
  return out;
}

Json contract_witness(const ContractError& e) {
  Json w{{"message", e.what()}};
  if (e.point()) w["point"] = *e.point();
  return w;
}

Json point_list(const std::vector<PointIndex>& pts, std::size_t cap = 32) {
  Json out = Json::array();
  for (std::size_t i = 0; i < pts.size() && i < cap; ++i) out.push_back(pts[i]);
  return out;
}

class Inputs {
 public:
  Inputs(Report& report, const RunConfig& config) : report_(report), config_(config) {}

  SampledSpace space(const std::string& source) {
    if (source.empty()) throw InputError("--space is required");
    if (source.rfind("builtin:", 0) == 0) {
      std::string label = source.substr(8);
      report_.inputs["space"] = Json{{"source", source}, {"fnv1a64", io::digest_hex(label)}};
      return builtin_space(label, config_.point_cap);
    }
    return io::space_from_json(load("space", source), config_.point_cap, source);
  }

  Json load(const std::string& name, const std::string& path) {
    if (path.empty()) throw InputError("--" + name + " is required");
    std::string text = io::read_file(path);
    report_.inputs[name] = Json{{"source", path}, {"fnv1a64", io::digest_hex(text)}};
    return io::parse_json(text, path);
  }

 private:
  Report& report_;
  const RunConfig& config_;
};

CoverSeq horizon_slice(const CoverSeq& covers, const RunConfig& config) {
  if (!config.horizon_set) return covers;
  if (covers.horizon() < config.horizon) {
    throw InputError("horizon " + std::to_string(config.horizon) + " exceeds the " +
                     std::to_string(covers.horizon()) + " covers supplied");
  }
  return covers.slice(1, config.horizon);
}

Rational margin_for(const SampledSpace& space, const RunConfig& config) {
  return config.margin ? *config.margin : space.mesh();
}

void check_families(Report& report, const SampledSpace& space, const std::vector<DisjointFamily>& families,
                    const std::function<const Cover&(std::size_t)>& parent, const Rational& margin) {
  for (std::size_t i = 0; i < families.size(); ++i) {
    FamilyCheck fc = validate_family(space, families[i], parent(i), margin);
    Json w;
    if (!fc.ok) {
      if (fc.disjoint.violating_pair) {
        w["pair"] = Json::array({fc.disjoint.violating_pair->first, fc.disjoint.violating_pair->second});
      }
      if (fc.disjoint.shared_point) w["point"] = *fc.disjoint.shared_point;
      if (fc.bad_witness) w["member"] = *fc.bad_witness;
    }
    report.check("family_" + std::to_string(i + 1), fc.ok, w);
  }
  std::optional<PointIndex> uncovered;
  family_assignment(space, families, uncovered);
  report.check("covers", !uncovered, uncovered ? Json{{"point", *uncovered}} : Json());
}

Json families_json(const std::vector<DisjointFamily>& families) {
  Json out = Json::array();
  for (const auto& f : families) out.push_back(io::family_to_json(f));
  return out;
}

void cmd_net(Report& r, Inputs& in, const Options& o, const RunConfig&) {
  auto space = in.space(o.space);
  if (o.epsilon.empty()) throw InputError("--epsilon is required");
  Rational eps = parse_rational(o.epsilon);
  Subset all = full_subset(space);
  auto net = greedy_net(space, all, eps);
  auto v = net_violation(space, net);
  r.check("greedy_net_valid", !v, v ? Json{{"point", *v}} : Json());
  r.result["greedy"] = Json{{"epsilon", io::to_json(eps)}, {"centers", net.centers}, {"size", net.centers.size()}};
  if (o.oracle) {
    auto m = minimal_net_bruteforce(space, all, eps, o.oracle_cap);
    if (m.exceeded_cap) {
      throw ResourceError("minimal net search exceeded " + std::to_string(o.oracle_cap) + " center sets");
    }
    NetCertificate mc{eps, m.centers, all};
    auto mv = net_violation(space, mc);
    r.check("minimal_net_valid", !mv, mv ? Json{{"point", *mv}} : Json());
    r.check("greedy_at_least_minimal", net.centers.size() >= m.centers.size(),
            Json{{"greedy", net.centers.size()}, {"minimal", m.centers.size()}});
    r.result["minimal"] = Json{{"centers", m.centers}, {"size", m.centers.size()}, {"combinations", m.combinations}};
  }
}

void cmd_decompose(Report& r, Inputs& in, const Options& o, const RunConfig& c) {
  auto space = in.space(o.space);
  HurewiczSelections sel;
  int horizon = c.horizon;
  if (o.selections.empty()) {
    sel = greedy_hurewicz_selections(space, horizon);
    r.result["selections"] = "greedy";
  } else {
    sel = io::selections_from_json(space, in.load("selections", o.selections), o.selections);
    if (!c.horizon_set) horizon = static_cast<int>(sel.size());
  }
  auto eps = parse_list(o.cert_epsilons, "--epsilons");
  auto d = decompose_from_hurewicz(space, sel, horizon, eps);
  auto cc = check_chain(space, d.chain);
  r.check("chain_monotone", cc.monotone, cc.bad_index ? Json{{"index", *cc.bad_index}} : Json());
  r.check("chain_exhausts", cc.exhausts, cc.orphan ? Json{{"point", *cc.orphan}} : Json());
  for (const auto& cert : d.certificates) {
    auto v = net_violation(space, cert.net);
    r.check("certificate_n" + std::to_string(cert.n) + "_eps" + cover_games::to_string(cert.net.epsilon), !v,
            v ? Json{{"point", *v}} : Json());
  }
  r.result["horizon"] = horizon;
  r.result["decomposition"] = io::decomposition_to_json(d);
}

void cmd_select(Report& r, Inputs& in, const Options& o, const RunConfig& c) {
  auto space = in.space(o.space);
  SigmaDecomposition d;
  d.chain = io::chain_from_json(space, in.load("chain", o.chain), o.chain);
  auto covers = horizon_slice(io::covers_from_json(space, in.load("covers", o.covers), o.covers), c);
  auto sel = select_from_decomposition(space, d, covers);
  auto h = hurewicz_selection_check(space, covers, sel.chosen);
  r.check("hurewicz", h.ok, Json{{"points", point_list(h.failures)}});
  std::vector<PointIndex> late;
  for (PointIndex p = 0; p < space.size(); ++p) {
    auto e = d.entry(p);
    if (!e || h.tail[p] > *e) late.push_back(p);
  }
  r.check("tail_within_entry", late.empty(), Json{{"points", point_list(late)}});
  Json leb = Json::array();
  for (const auto& l : sel.lebesgue) leb.push_back(io::to_json(l));
  r.result = Json{{"chosen", sel.chosen}, {"lebesgue", std::move(leb)}, {"tail_start", sel.tail_start}};
}

void cmd_refine(Report& r, Inputs& in, const Options& o, const RunConfig& c) {
  auto space = in.space(o.space);
  auto cover = io::cover_from_json(space, in.load("cover", o.cover), o.cover);
  auto cov = covers_check(space, cover);
  if (!cov.covers) throw ContractError("the input cover misses a point", cov.uncovered);
  auto fams = brick_refinement(space, cover);
  check_families(r, space, fams, [&](std::size_t) -> const Cover& { return cover; }, margin_for(space, c));
  r.result = Json{{"families", families_json(fams)}};
}

void cmd_scfin(Report& r, Inputs& in, const Options& o, const RunConfig& c) {
  auto space = in.space(o.space);
  auto covers = horizon_slice(io::covers_from_json(space, in.load("covers", o.covers), o.covers), c);
  auto sel = sc_fin_select(space, covers);
  check_families(r, space, sel.families, [&](std::size_t i) -> const Cover& { return covers.at(static_cast<int>(i + 1)); },
                 margin_for(space, c));
  Json sides = Json::array();
  for (const auto& s : sel.cell_sides) sides.push_back(io::to_json(s));
  r.result = Json{{"families", families_json(sel.families)}, {"cell_sides", std::move(sides)}};
}

void cmd_fincspace(Report& r, Inputs& in, const Options& o, const RunConfig& c) {
  auto space = in.space(o.space);
  auto covers = horizon_slice(io::covers_from_json(space, in.load("covers", o.covers), o.covers), c);
  auto f = finite_c_search(space, covers);
  Json failures = Json::array();
  for (const auto& [n, p] : f.failures) failures.push_back(Json{{"n", n}, {"point", p}});
  r.result = Json{{"found", f.found}, {"failures", std::move(failures)}};
  if (f.found) {
    r.result["n"] = f.n;
    r.result["families"] = families_json(f.selection.families);
    check_families(r, space, f.selection.families,
                   [&](std::size_t i) -> const Cover& { return covers.at(static_cast<int>(i + 1)); }, margin_for(space, c));
  } else {
    r.result["answer"] = "no witness at horizon";
  }
}

void haver_checks(Report& r, const SampledSpace& space, const HaverWitness& w, const std::string& prefix) {
  auto hc = check_haver_witness(space, w);
  r.check(prefix + "disjoint", hc.disjoint, Json{{"problem", hc.problem}});
  r.check(prefix + "diameter_below_eps", hc.small, Json{{"problem", hc.problem}});
  r.check(prefix + "covers", hc.covers, Json{{"problem", hc.problem}});
  r.check(prefix + "claim_replay", w.traces.size() == space.size(), Json{{"traced", w.traces.size()}});
}

void cmd_haver(Report& r, Inputs& in, const Options& o, const RunConfig& c, std::ostream& err) {
  auto space = in.space(o.space);
  auto chain = io::chain_from_json(space, in.load("chain", o.chain), o.chain);
  if (o.epsilons.empty()) throw InputError("--epsilons is required");
  auto raw = parse_list(o.epsilons, "--epsilons");
  if (c.horizon_set) raw.resize(static_cast<std::size_t>(c.horizon), raw.back());
  auto w = build_haver_witness(space, chain, normalize_epsilons(raw), c.tail_slack);
  haver_checks(r, space, w, "");
  r.result = io::haver_to_json(w);

  err << "haver witness on '" << space.label() << "' (" << space.size() << " points)\n";
  for (int n = 1; n <= w.epsilons.horizon(); ++n) {
    const auto& d = w.diam_bounds[static_cast<std::size_t>(n - 1)];
    err << "  n=" << n << " eps=" << to_string(w.epsilons.at(n)) << " delta=" << to_string(w.deltas.at(n))
        << " |F|=" << w.covers.nets[static_cast<std::size_t>(n - 1)].size()
        << " |H|=" << w.families[static_cast<std::size_t>(n - 1)].regions.size()
        << " max diam^2=" << (d.empty ? std::string("-") : to_string(d.squared)) << "\n";
  }
  err << "  blocks:";
  for (int m : w.blocks) err << " " << m;
  err << "\n";
  for (std::size_t i = 0; i < w.traces.size() && i < o.trace_cap; ++i) {
    const auto& t = w.traces[i];
    err << "  point " << t.point << ": entry " << t.entry << ", N " << t.n_bound << ", block " << t.k << ", j " << t.j
        << ", member " << t.kept_index << "\n";
  }
  if (w.traces.size() > o.trace_cap) err << "  (" << w.traces.size() - o.trace_cap << " more traces in the JSON)\n";
}

void cmd_game(Report& r, Inputs& in, const Options& o, const RunConfig& c) {
  auto space = in.space(o.space);
  auto covers = horizon_slice(io::covers_from_json(space, in.load("covers", o.covers), o.covers), c);
  TwoPolicy two;
  bool covering = o.two == "covering";
  if (covering) {
    two = covering_two();
  } else if (o.two.rfind("adversarial:", 0) == 0) {
    std::string p = o.two.substr(12);
    if (p.empty() || !std::all_of(p.begin(), p.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
      throw InputError("--two adversarial:<point> needs a point index");
    }
    auto idx = std::stoull(p);
    if (idx >= space.size()) throw InputError("adversarial point " + p + " out of range");
    two = adversarial_two(static_cast<PointIndex>(idx));
  } else {
    throw InputError("--two must be covering or adversarial:<point>");
  }
  auto t = play_hurewicz_game(space, covers, two, c.tail_slack);
  auto tc = check_transcript(space, covers, t);
  r.check("transcript", tc.ok, Json{{"problem", tc.problem}});
  if (covering) {
    r.check("one_loses", t.lost_by_one, t.survivor ? Json{{"point", *t.survivor}} : Json());
  }
  r.result = io::transcript_to_json(t);
}

void cmd_scplus(Report& r, Inputs& in, const Options& o, const RunConfig& c) {
  auto space = in.space(o.space);
  auto covers = horizon_slice(io::covers_from_json(space, in.load("covers", o.covers), o.covers), c);
  auto s = sc_plus_select(space, covers, c.tail_slack);
  auto sc = check_sc_plus(space, covers, s, c.tail_slack + 1);
  Json w{{"problem", sc.problem}};
  r.check("finite", sc.finite, w);
  r.check("disjoint", sc.disjoint, w);
  r.check("refines", sc.refines, w);
  r.check("block_clause", sc.block_clause, w);
  r.result = io::sc_plus_to_json(s);
}

void cmd_check(Report& r, Inputs& in, const Options& o, const RunConfig& c) {
  auto space = in.space(o.space);
  auto covers = horizon_slice(io::covers_from_json(space, in.load("covers", o.covers), o.covers), c);
  auto picks = io::picks_from_json(in.load("picks", o.picks), o.picks);
  if (static_cast<int>(picks.size()) > covers.horizon()) throw InputError("more pick lists than covers");
  picks.resize(static_cast<std::size_t>(covers.horizon()));
  if (o.kind == "menger") {
    auto m = menger_selection_check(space, covers, picks);
    r.check("menger", m.covers, m.uncovered ? Json{{"point", *m.uncovered}} : Json());
    Json wit = Json::array();
    for (const auto& x : m.witness) wit.push_back(x ? Json::array({x->n, x->member}) : Json());
    r.result = Json{{"witness", std::move(wit)}};
  } else if (o.kind == "hurewicz") {
    auto h = hurewicz_selection_check(space, covers, picks);
    r.check("hurewicz", h.ok, Json{{"points", point_list(h.failures)}});
    r.result = Json{{"tail", h.tail}};
  } else {
    throw InputError("--kind must be menger or hurewicz");
  }
}

}  // namespace

io::Json pipeline_demo(const std::string& label, const RunConfig& config, const std::vector<Rational>& epsilons) {
  Report r;
  std::string stage = "space";
  try {
    auto space = builtin_space(label, config.point_cap);
    r.result["space"] = Json{{"label", label}, {"points", space.size()}};

    stage = "decompose";
    const int horizon = config.horizon;
    auto sel = greedy_hurewicz_selections(space, horizon);
    auto d = decompose_from_hurewicz(space, sel, horizon, {Rational(1, 2), Rational(1, 4), Rational(1, 16)});
    auto cc = check_chain(space, d.chain);
    r.check("decompose.chain", cc.ok(), Json{{"index", cc.bad_index ? Json(*cc.bad_index) : Json()},
                                             {"point", cc.orphan ? Json(*cc.orphan) : Json()}});
    for (const auto& cert : d.certificates) {
      auto v = net_violation(space, cert.net);
      if (v) r.check("decompose.certificate", false, Json{{"n", cert.n}, {"point", *v}});
    }
    r.result["decompose"] = Json{{"certificates", d.certificates.size()}};

    stage = "haver";
    auto eps = normalize_epsilons(epsilons);
    auto w = build_haver_witness(space, d.chain, eps, config.tail_slack);
    stage = "scplus";
    auto sc = check_sc_plus(space, w.covers.covers, w.scplus, std::numeric_limits<int>::max());
    r.check("scplus.clauses", sc.ok(), Json{{"problem", sc.problem}});
    std::size_t per_block = static_cast<std::size_t>(brick_dimension(space) + 1);
    r.result["scplus"] = Json{{"blocks", w.blocks}, {"families_per_move", per_block}};
    stage = "haver";
    haver_checks(r, space, w, "haver.");
    Json sizes = Json::array();
    for (const auto& f : w.families) sizes.push_back(f.regions.size());
    Json eps_json = Json::array();
    for (const auto& e : eps.values()) eps_json.push_back(io::to_json(e));
    r.result["haver"] = Json{{"epsilons", std::move(eps_json)}, {"family_sizes", std::move(sizes)}};
  } catch (const ContractError& e) {
    r.check(stage + ".contract", false, contract_witness(e));
  } catch (const InputError& e) {
    throw InputError(stage + ": " + e.what());
  }
  return Json{{"checks", r.checks}, {"result", r.result}, {"ok", r.ok()}};
}

void apply_config(RunConfig& config, const Json& j) {
  if (!j.is_object()) throw InputError("config: expected an object");
  auto int_field = [&](const char* key, long long lo) -> std::optional<long long> {
    auto it = j.find(key);
    if (it == j.end()) return std::nullopt;
    if (!it->is_number_integer() || it->get<long long>() < lo) {
      throw InputError(std::string("config.") + key + ": expected an integer >= " + std::to_string(lo));
    }
    return it->get<long long>();
  };
  if (auto v = int_field("horizon", 1)) {
    config.horizon = static_cast<int>(*v);
    config.horizon_set = true;
  }
  if (auto v = int_field("tail_slack", 0)) config.tail_slack = static_cast<int>(*v);
  if (auto v = int_field("point_cap", 1)) config.point_cap = static_cast<std::size_t>(*v);
  if (auto v = int_field("seed", 0)) config.seed = static_cast<std::uint64_t>(*v);
  if (auto it = j.find("margin"); it != j.end()) {
    Rational m = io::rational_from(*it, "config.margin");
    if (m < 0) throw InputError("config.margin: must be non-negative");
    config.margin = m;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  CLI::App app{"Selective screenability and Hurewicz-game constructions on sampled metric spaces", "cover_games"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.config, "run.json overriding the run configuration");
  app.add_option("--out", o.out, "write the report here instead of stdout");
  auto* horizon_opt = app.add_option("--horizon", o.horizon, "horizon N")->check(CLI::PositiveNumber);
  auto* margin_opt = app.add_option("--margin", o.margin, "disjointness margin (default: mesh)");
  auto* slack_opt = app.add_option("--tail-slack", o.tail_slack, "tail slack for the game")->check(CLI::NonNegativeNumber);
  auto* cap_opt = app.add_option("--point-cap", o.point_cap, "largest space accepted")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", o.seed, "seed for generated instances");
  app.fallthrough();

  auto* net = app.add_subcommand("net", "greedy epsilon-net with certificate");
  net->add_option("--space", o.space)->required();
  net->add_option("--epsilon", o.epsilon)->required();
  net->add_flag("--oracle", o.oracle, "also run the exhaustive minimal net");
  net->add_option("--oracle-cap", o.oracle_cap);

  auto* decompose = app.add_subcommand("decompose", "chain X_n from Hurewicz selections");
  decompose->add_option("--space", o.space)->required();
  decompose->add_option("--selections", o.selections, "selections JSON (default: greedy nets)");
  decompose->add_option("--epsilons", o.cert_epsilons)->default_val("1/2,1/4,1/16");

  auto* select = app.add_subcommand("select", "Hurewicz selections from a chain");
  select->add_option("--space", o.space)->required();
  select->add_option("--chain", o.chain)->required();
  select->add_option("--covers", o.covers)->required();

  auto* refine = app.add_subcommand("refine", "brick refinement of one cover");
  refine->add_option("--space", o.space)->required();
  refine->add_option("--cover", o.cover)->required();

  auto* scfin = app.add_subcommand("scfin", "one disjoint family per cover");
  scfin->add_option("--space", o.space)->required();
  scfin->add_option("--covers", o.covers)->required();

  auto* fincspace = app.add_subcommand("fincspace", "least n with n disjoint refinements covering");
  fincspace->add_option("--space", o.space)->required();
  fincspace->add_option("--covers", o.covers)->required();

  auto* haver = app.add_subcommand("haver", "Haver witness from a chain and an epsilon schedule");
  haver->add_option("--space", o.space)->required();
  haver->add_option("--chain", o.chain)->required();
  haver->add_option("--epsilons", o.epsilons)->required();
  haver->add_option("--trace-cap", o.trace_cap, "traces printed to stderr");

  auto* game = app.add_subcommand("game", "play the Hurewicz game");
  game->add_option("--space", o.space)->required();
  game->add_option("--covers", o.covers)->required();
  game->add_option("--two", o.two, "covering or adversarial:<point>");

  auto* scplus = app.add_subcommand("scplus", "S_c^+ selection via the game");
  scplus->add_option("--space", o.space)->required();
  scplus->add_option("--covers", o.covers)->required();

  auto* check = app.add_subcommand("check", "Menger or Hurewicz check of picks");
  check->add_option("--space", o.space)->required();
  check->add_option("--covers", o.covers)->required();
  check->add_option("--kind", o.kind)->required()->check(CLI::IsMember({"menger", "hurewicz"}));
  check->add_option("--picks", o.picks)->required();

  auto* demo = app.add_subcommand("demo", "decompose, scplus and haver on a built-in space");
  demo->add_option("--label", o.label)->required();
  demo->add_option("--epsilons", o.epsilons, "default 1,1/4,1/16,...");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Report report;
  int code = 0;
  try {
    RunConfig config;
    if (!o.config.empty()) {
      std::string text = io::read_file(o.config);
      report.inputs["config"] = Json{{"source", o.config}, {"fnv1a64", io::digest_hex(text)}};
      apply_config(config, io::parse_json(text, o.config));
    }
    if (*horizon_opt) {
      config.horizon = o.horizon;
      config.horizon_set = true;
    }
    if (*margin_opt) {
      config.margin = parse_rational(o.margin);
      if (*config.margin < 0) throw InputError("--margin must be non-negative");
    }
    if (*slack_opt) config.tail_slack = o.tail_slack;
    if (*cap_opt) config.point_cap = o.point_cap;
    if (*seed_opt) config.seed = o.seed;

    Inputs in(report, config);
    try {
      if (*net) cmd_net(report, in, o, config);
      if (*decompose) cmd_decompose(report, in, o, config);
      if (*select) cmd_select(report, in, o, config);
      if (*refine) cmd_refine(report, in, o, config);
      if (*scfin) cmd_scfin(report, in, o, config);
      if (*fincspace) cmd_fincspace(report, in, o, config);
      if (*haver) cmd_haver(report, in, o, config, err);
      if (*game) cmd_game(report, in, o, config);
      if (*scplus) cmd_scplus(report, in, o, config);
      if (*check) cmd_check(report, in, o, config);
      if (*demo) {
        std::vector<Rational> eps =
            o.epsilons.empty() ? quarter_schedule(config.horizon) : parse_list(o.epsilons, "--epsilons");
        report.inputs["space"] = Json{{"source", "builtin:" + o.label}, {"fnv1a64", io::digest_hex(o.label)}};
        Json d = pipeline_demo(o.label, config, eps);
        for (const auto& c : d["checks"]) {
          report.check(c["name"].get<std::string>(), c["pass"].get<bool>(), c.value("witness", Json()));
        }
        report.result = d["result"];
      }
    } catch (const ContractError& e) {
      report.check("contract", false, contract_witness(e));
    }
    code = report.ok() ? 0 : 1;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << "\n";
    return 2;
  }

  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
  Json doc{{"command", args},
           {"inputs", report.inputs},
           {"checks", report.checks},
           {"ok", report.ok()},
           {"result", report.result},
           {"wall_time_ms", elapsed.count()}};
  std::string text = doc.dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      err << "input error: cannot write '" << o.out << "'\n";
      return 2;
    }
    f << text;
  }
  return code;
}

}  // namespace cover_games::cli
