#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cover_games/cover.hpp"
#include "cover_games/screenability.hpp"
#include "cover_games/space.hpp"

namespace cover_games {

/// A member of ONE's move: family for cover n (1-based), member index.
struct RegionRef {
  int n = 0;
  std::size_t member = 0;
  friend bool operator==(const RegionRef&, const RegionRef&) = default;
  friend auto operator<=>(const RegionRef&, const RegionRef&) = default;
};

/// ONE's move starting at `start`: families[i] refines covers[start + i].
struct OneMove {
  int start = 1;
  std::vector<DisjointFamily> families;

  const DisjointFamily& family(int n) const { return families.at(static_cast<std::size_t>(n - start)); }
  const Region& region(const RegionRef& r) const { return family(r.n).regions.at(r.member); }
  bool has(const RegionRef& r) const;
};

/// sc_fin_select on covers[start..horizon]. Requires start <= horizon - d.
OneMove strategy_F_move(const SampledSpace& space, const CoverSeq& covers, int start);

/// Least n such that every selected region comes from a family j < n;
/// `start` for an empty selection.
int block_index(const std::vector<RegionRef>& two_move, const OneMove& one_move);

using TwoPolicy = std::function<std::vector<RegionRef>(const SampledSpace&, const OneMove&)>;

/// Shortest prefix of ONE's families that covers, then greedy max coverage
/// inside it (ties to the lowest (n, member)).
TwoPolicy covering_two();
/// Same, restricted to regions avoiding `p`.
TwoPolicy adversarial_two(PointIndex p);

struct Round {
  OneMove one_move;
  std::vector<RegionRef> two_move;
  int block = 0;
};

struct Transcript {
  std::vector<Round> rounds;
  std::vector<int> blocks;
  int horizon = 0;
  int tail_slack = 1;
  /// Per point the least k with the point in the union of T_k' for all k' in [k, K]; K + 1 if none.
  std::vector<int> entry;
  bool lost_by_one = false;
  std::optional<PointIndex> survivor;
};

/// Rounds continue while a full block of d+1 covers remains after the
/// current start. ONE loses when every entry is at most K - tail_slack.
Transcript play_hurewicz_game(const SampledSpace& space, const CoverSeq& covers, const TwoPolicy& two,
                              int tail_slack = 1);

struct TranscriptCheck {
  bool ok = true;
  std::string problem;
};

/// Moves are legal, ONE's families validate, blocks increase and are minimal.
TranscriptCheck check_transcript(const SampledSpace& space, const CoverSeq& covers, const Transcript& t);

struct WMember {
  int round = 0;
  RegionRef ref;
};

struct ScPlusResult {
  /// families[j-1] = W_j, j = 1..horizon.
  std::vector<DisjointFamily> families;
  std::vector<std::vector<WMember>> provenance;
  std::vector<int> blocks;
  std::vector<int> tail_index;
  int horizon = 0;
};

/// Block j in [m_k, m_{k+1}) draws from T_{k+1} (m_0 = 1), keeping those
/// regions that ONE placed in V_j.
ScPlusResult assemble_W(const SampledSpace& space, const Transcript& transcript, const CoverSeq& covers);

/// The unrestricted rule {T in T_{k+1} : T inside some region of covers[j]}
/// for block membership of j, as region references into that round.
std::vector<RegionRef> literal_W(const SampledSpace& space, const Transcript& transcript, const CoverSeq& covers,
                                 int j);

struct ScPlusCheck {
  bool finite = true;
  bool disjoint = true;
  bool refines = true;
  bool block_clause = true;
  std::vector<int> tail_index;
  std::string problem;
  bool ok() const { return finite && disjoint && refines && block_clause; }
};

/// Block clause over k = 1..K-1 (all blocks inside the horizon); a point's
/// tail index is the least k from which the clause holds through K-1.
ScPlusCheck check_sc_plus(const SampledSpace& space, const CoverSeq& covers, const ScPlusResult& result,
                          int max_tail_index);

ScPlusResult sc_plus_select(const SampledSpace& space, const CoverSeq& covers, int tail_slack = 1);

/// picks[n-1] are indices into covers[n].regions.
using Picks = std::vector<std::vector<std::size_t>>;

struct HurewiczCheck {
  bool ok = false;
  std::vector<int> tail;
  std::vector<PointIndex> failures;
};

HurewiczCheck hurewicz_selection_check(const SampledSpace& space, const CoverSeq& covers, const Picks& picks);

struct MengerCheck {
  bool covers = false;
  /// Lowest (n, region index) containing each point.
  std::vector<std::optional<RegionRef>> witness;
  std::optional<PointIndex> uncovered;
};

MengerCheck menger_selection_check(const SampledSpace& space, const CoverSeq& covers, const Picks& picks);

}  // namespace cover_games
