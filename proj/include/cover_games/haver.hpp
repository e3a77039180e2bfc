#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cover_games/cover.hpp"
#include "cover_games/game.hpp"
#include "cover_games/netting.hpp"
#include "cover_games/space.hpp"

namespace cover_games {

/// eps'_1 = raw_1; eps'_n = raw_n when raw_n < eps'_{n-1}/2, else eps'_{n-1}/4.
Schedule normalize_epsilons(const std::vector<Rational>& raw);

struct HaverCovers {
  Schedule epsilons;
  Schedule deltas;
  /// nets[n-1] = F_n, a delta_n-net of X_n.
  std::vector<std::vector<PointIndex>> nets;
  /// covers[n]: the eps_n/2 balls at F_n in net order, then the complement piece.
  CoverSeq covers;
  std::vector<Subset> chain;
};

/// Index of the complement piece in covers[n].
inline std::size_t complement_index(const HaverCovers& t, int n) { return t.nets.at(static_cast<std::size_t>(n - 1)).size(); }

HaverCovers haver_covers(const SampledSpace& space, const std::vector<Subset>& chain, const Schedule& epsilons);

struct ClaimTrace {
  PointIndex point = 0;
  int entry = 0;
  int n_bound = 0;
  int k = 0;
  int j = 0;
  /// Member of H'_j containing the point, and its index inside H_j.
  std::size_t member = 0;
  std::size_t kept_index = 0;
};

struct HaverWitness {
  Schedule epsilons;
  Schedule deltas;
  /// families[n-1] = H_n; witness[i] indexes the eps_n/2 ball in covers[n].
  std::vector<DisjointFamily> families;
  /// Per family the largest squared sample diameter of a member.
  std::vector<Diameter> diam_bounds;
  std::vector<std::vector<Containment>> filter_how;
  std::vector<std::optional<MemberRef>> covering_witness;
  std::vector<ClaimTrace> traces;
  std::vector<int> blocks;
  HaverCovers covers;
  ScPlusResult scplus;
};

/// Runs the S_c^+ engine on the covers U_n, filters to members inside
/// an eps_n/2 ball and replays the Claim for every point. Throws
/// ContractError naming the point when the replay cannot finish within the
/// horizon.
HaverWitness build_haver_witness(const SampledSpace& space, const std::vector<Subset>& chain,
                                 const Schedule& epsilons, int tail_slack = 1);

struct HaverCheck {
  bool disjoint = true;
  bool small = true;
  bool covers = true;
  std::string problem;
  bool ok() const { return disjoint && small && covers; }
};

/// The three Haver invariants, recomputed from the families alone.
HaverCheck check_haver_witness(const SampledSpace& space, const HaverWitness& witness);

/// X_n = sample within [0, min(1, n/steps)] on the first axis, n = 1..horizon.
std::vector<Subset> staircase_chain(const SampledSpace& space, int horizon, int steps);

}  // namespace cover_games
