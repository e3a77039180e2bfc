#include "cover_games/game.hpp"

#include <algorithm>
#include <limits>

#include "cover_games/errors.hpp"
#include "cover_games/netting.hpp"

namespace cover_games {

namespace {

struct Candidate {
  RegionRef ref;
  Subset members;
};

std::vector<RegionRef> greedy_select(const SampledSpace& space, const OneMove& move, std::optional<PointIndex> avoid) {
  std::vector<Candidate> cands;
  Subset target(space.size());
  for (std::size_t f = 0; f < move.families.size(); ++f) {
    const auto& fam = move.families[f];
    for (std::size_t m = 0; m < fam.regions.size(); ++m) {
      Subset s = members(space, fam.regions[m]);
      if (avoid && s.test(*avoid)) continue;
      target |= s;
      cands.push_back({RegionRef{move.start + static_cast<int>(f), m}, std::move(s)});
    }
  }
  if (!avoid && !target.all()) {
    throw ContractError("ONE's move does not cover point " + std::to_string((~target).find_first()));
  }
  Subset prefix(space.size());
  int last = move.start - 1;
  std::size_t limit = 0;
  while (limit < cands.size() && !target.is_subset_of(prefix)) {
    last = cands[limit].ref.n;
    while (limit < cands.size() && cands[limit].ref.n == last) prefix |= cands[limit++].members;
  }
  std::vector<RegionRef> out;
  Subset todo = target;
  while (todo.any()) {
    std::size_t best = limit;
    std::size_t best_gain = 0;
    for (std::size_t i = 0; i < limit; ++i) {
      std::size_t gain = (cands[i].members & todo).count();
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    if (best == limit) break;
    out.push_back(cands[best].ref);
    todo -= cands[best].members;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Subset round_union(const SampledSpace& space, const Round& r) {
  Subset u(space.size());
  for (const auto& ref : r.two_move) u |= members(space, r.one_move.region(ref));
  return u;
}

std::pair<int, int> round_block(const Transcript& t, std::size_t k) {
  int lo = k == 0 ? 1 : t.blocks[k - 1];
  return {lo, t.blocks[k]};
}

}  // namespace

bool OneMove::has(const RegionRef& r) const {
  if (r.n < start || r.n >= start + static_cast<int>(families.size())) return false;
  return r.member < family(r.n).regions.size();
}

OneMove strategy_F_move(const SampledSpace& space, const CoverSeq& covers, int start) {
  const int d = brick_dimension(space);
  const int horizon = covers.horizon();
  if (start < 1 || start > horizon - d) {
    throw InputError("start index " + std::to_string(start) + " leaves fewer than " + std::to_string(d + 1) +
                     " covers before the horizon " + std::to_string(horizon));
  }
  ScSelection sel = sc_fin_select(space, covers.slice(start, horizon));
  return OneMove{start, std::move(sel.families)};
}

int block_index(const std::vector<RegionRef>& two_move, const OneMove& one_move) {
  int m = one_move.start;
  for (const auto& r : two_move) {
    if (!one_move.has(r)) {
      throw InputError("selected region (" + std::to_string(r.n) + ", " + std::to_string(r.member) +
                       ") is not part of ONE's move");
    }
    m = std::max(m, r.n + 1);
  }
  return m;
}

TwoPolicy covering_two() {
  return [](const SampledSpace& space, const OneMove& move) { return greedy_select(space, move, std::nullopt); };
}

TwoPolicy adversarial_two(PointIndex p) {
  return [p](const SampledSpace& space, const OneMove& move) {
    if (p >= space.size()) throw InputError("adversarial point out of range");
    return greedy_select(space, move, p);
  };
}

Transcript play_hurewicz_game(const SampledSpace& space, const CoverSeq& covers, const TwoPolicy& two,
                              int tail_slack) {
  if (tail_slack < 0) throw InputError("tail slack must be nonnegative");
  const int d = brick_dimension(space);
  Transcript t;
  t.horizon = covers.horizon();
  t.tail_slack = tail_slack;
  int start = 1;
  while (start <= t.horizon - d) {
    Round r;
    r.one_move = strategy_F_move(space, covers, start);
    r.two_move = two(space, r.one_move);
    r.block = block_index(r.two_move, r.one_move);
    t.blocks.push_back(r.block);
    t.rounds.push_back(std::move(r));
    if (t.blocks.back() <= start) break;
    start = t.blocks.back();
  }
  const int K = static_cast<int>(t.rounds.size());
  t.entry.assign(space.size(), 1);
  std::vector<bool> alive(space.size(), true);
  for (int k = K; k >= 1; --k) {
    Subset u = round_union(space, t.rounds[static_cast<std::size_t>(k - 1)]);
    for (PointIndex p = 0; p < space.size(); ++p) {
      if (alive[p] && !u.test(p)) {
        alive[p] = false;
        t.entry[p] = k + 1;
      }
    }
  }
  t.lost_by_one = K > 0;
  for (PointIndex p = 0; p < space.size(); ++p) {
    if (t.entry[p] > K - tail_slack) {
      t.lost_by_one = false;
      t.survivor = p;
      break;
    }
  }
  return t;
}

TranscriptCheck check_transcript(const SampledSpace& space, const CoverSeq& covers, const Transcript& t) {
  TranscriptCheck out;
  auto fail = [&](std::string why) {
    if (out.ok) {
      out.ok = false;
      out.problem = std::move(why);
    }
  };
  if (t.blocks.size() != t.rounds.size()) fail("block count differs from round count");
  for (std::size_t k = 0; k < t.rounds.size() && out.ok; ++k) {
    const Round& r = t.rounds[k];
    const std::string tag = "round " + std::to_string(k + 1) + ": ";
    int expected_start = k == 0 ? 1 : t.blocks[k - 1];
    if (r.one_move.start != expected_start) fail(tag + "ONE started at the wrong index");
    Subset u(space.size());
    for (std::size_t f = 0; f < r.one_move.families.size(); ++f) {
      const auto& fam = r.one_move.families[f];
      int n = r.one_move.start + static_cast<int>(f);
      if (!validate_family(space, fam, covers.at(n), fam.separation).ok) fail(tag + "family " + std::to_string(n) + " invalid");
      for (const auto& reg : fam.regions) u |= members(space, reg);
    }
    if (!u.all()) fail(tag + "ONE's move does not cover");
    for (const auto& ref : r.two_move) {
      if (!r.one_move.has(ref)) fail(tag + "TWO chose a region outside ONE's move");
    }
    if (!out.ok) break;
    if (block_index(r.two_move, r.one_move) != r.block) fail(tag + "block index mismatch");
    if (k > 0 && r.block <= t.blocks[k - 1]) fail(tag + "blocks do not increase");
    if (!r.two_move.empty()) {
      bool tight = std::any_of(r.two_move.begin(), r.two_move.end(),
                               [&](const RegionRef& ref) { return ref.n == r.block - 1; });
      if (!tight) fail(tag + "block index is not minimal");
    }
  }
  return out;
}

ScPlusResult assemble_W(const SampledSpace& space, const Transcript& transcript, const CoverSeq& covers) {
  if (!transcript.lost_by_one) {
    throw ContractError("the play is not lost by ONE within the horizon", transcript.survivor);
  }
  ScPlusResult out;
  out.horizon = covers.horizon();
  out.blocks = transcript.blocks;
  out.families.assign(static_cast<std::size_t>(out.horizon), DisjointFamily{{}, {}, Rational(0)});
  out.provenance.assign(static_cast<std::size_t>(out.horizon), {});
  for (std::size_t k = 0; k < transcript.rounds.size(); ++k) {
    const Round& r = transcript.rounds[k];
    auto [lo, hi] = round_block(transcript, k);
    for (int j = lo; j < hi && j <= out.horizon; ++j) {
      auto uj = static_cast<std::size_t>(j - 1);
      const DisjointFamily& v = r.one_move.family(j);
      out.families[uj].separation = v.separation;
      for (const auto& ref : r.two_move) {
        if (ref.n != j) continue;
        const Region& reg = r.one_move.region(ref);
        std::size_t w = v.witness.at(ref.member);
        if (contained_in(space, reg, covers.at(j).regions.at(w)) == Containment::none) {
          throw ContractError("selected region escapes its parent in cover " + std::to_string(j));
        }
        out.families[uj].regions.push_back(reg);
        out.families[uj].witness.push_back(w);
        out.provenance[uj].push_back(WMember{static_cast<int>(k + 1), ref});
      }
    }
  }
  out.tail_index = check_sc_plus(space, covers, out, std::numeric_limits<int>::max()).tail_index;
  return out;
}

std::vector<RegionRef> literal_W(const SampledSpace& space, const Transcript& transcript, const CoverSeq& covers,
                                 int j) {
  std::vector<RegionRef> out;
  for (std::size_t k = 0; k < transcript.rounds.size(); ++k) {
    auto [lo, hi] = round_block(transcript, k);
    if (j < lo || j >= hi) continue;
    const Round& r = transcript.rounds[k];
    for (const auto& ref : r.two_move) {
      const Region& reg = r.one_move.region(ref);
      for (const auto& u : covers.at(j).regions) {
        if (contained_in(space, reg, u) != Containment::none) {
          out.push_back(ref);
          break;
        }
      }
    }
  }
  return out;
}

ScPlusCheck check_sc_plus(const SampledSpace& space, const CoverSeq& covers, const ScPlusResult& result,
                          int max_tail_index) {
  ScPlusCheck out;
  auto fail = [&](bool& flag, std::string why) {
    flag = false;
    if (out.problem.empty()) out.problem = std::move(why);
  };
  if (static_cast<int>(result.families.size()) != covers.horizon()) fail(out.finite, "one family per cover expected");
  std::vector<Subset> unions;
  for (std::size_t j = 0; j < result.families.size(); ++j) {
    const auto& fam = result.families[j];
    const Cover& parent = covers.at(static_cast<int>(j + 1));
    auto check = validate_family(space, fam, parent, fam.separation);
    if (!check.disjoint.disjoint) fail(out.disjoint, "W_" + std::to_string(j + 1) + " is not pairwise disjoint");
    if (check.bad_witness) fail(out.refines, "W_" + std::to_string(j + 1) + " does not refine its cover");
    Subset u(space.size());
    for (const auto& reg : fam.regions) u |= members(space, reg);
    unions.push_back(std::move(u));
  }
  for (std::size_t i = 1; i < result.blocks.size(); ++i) {
    if (result.blocks[i] <= result.blocks[i - 1]) fail(out.block_clause, "blocks do not increase");
  }
  const int K = static_cast<int>(result.blocks.size());
  std::vector<Subset> block_union;
  for (int k = 1; k <= K - 1; ++k) {
    Subset u(space.size());
    for (int j = result.blocks[static_cast<std::size_t>(k - 1)]; j < result.blocks[static_cast<std::size_t>(k)]; ++j) {
      if (j >= 1 && j <= static_cast<int>(unions.size())) u |= unions[static_cast<std::size_t>(j - 1)];
    }
    block_union.push_back(std::move(u));
  }
  out.tail_index.assign(space.size(), 1);
  for (PointIndex p = 0; p < space.size(); ++p) {
    int k = K - 1;
    while (k >= 1 && block_union[static_cast<std::size_t>(k - 1)].test(p)) --k;
    out.tail_index[p] = k + 1;
    if (out.tail_index[p] > max_tail_index) {
      fail(out.block_clause, "point " + std::to_string(p) + " has tail index " + std::to_string(out.tail_index[p]));
    }
  }
  return out;
}

ScPlusResult sc_plus_select(const SampledSpace& space, const CoverSeq& covers, int tail_slack) {
  Transcript t = play_hurewicz_game(space, covers, covering_two(), tail_slack);
  return assemble_W(space, t, covers);
}

namespace {

void check_picks(const CoverSeq& covers, const Picks& picks) {
  if (static_cast<int>(picks.size()) != covers.horizon()) throw InputError("one pick list per cover expected");
  for (int n = 1; n <= covers.horizon(); ++n) {
    for (std::size_t i : picks[static_cast<std::size_t>(n - 1)]) {
      if (i >= covers.at(n).regions.size()) {
        throw InputError("pick " + std::to_string(i) + " is not a region of cover " + std::to_string(n));
      }
    }
  }
}

}  // namespace

HurewiczCheck hurewicz_selection_check(const SampledSpace& space, const CoverSeq& covers, const Picks& picks) {
  check_picks(covers, picks);
  HurewiczCheck out;
  out.tail = tail_starts(space, covers, picks);
  for (PointIndex p = 0; p < space.size(); ++p) {
    if (out.tail[p] > covers.horizon()) out.failures.push_back(p);
  }
  out.ok = out.failures.empty();
  return out;
}

MengerCheck menger_selection_check(const SampledSpace& space, const CoverSeq& covers, const Picks& picks) {
  check_picks(covers, picks);
  MengerCheck out;
  out.witness.assign(space.size(), std::nullopt);
  for (int n = 1; n <= covers.horizon(); ++n) {
    for (std::size_t i : picks[static_cast<std::size_t>(n - 1)]) {
      Subset s = members(space, covers.at(n).regions[i]);
      for (auto p = s.find_first(); p != Subset::npos; p = s.find_next(p)) {
        RegionRef ref{n, i};
        if (!out.witness[p] || ref < *out.witness[p]) out.witness[p] = ref;
      }
    }
  }
  for (PointIndex p = 0; p < space.size(); ++p) {
    if (!out.witness[p]) {
      out.uncovered = p;
      break;
    }
  }
  out.covers = !out.uncovered;
  return out;
}

}  // namespace cover_games
