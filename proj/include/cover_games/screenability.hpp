#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cover_games/cover.hpp"
#include "cover_games/space.hpp"

namespace cover_games {

/// Colored open boxes around the cells of a lattice of side cell_side.
/// Boxes of one class are pairwise at analytic distance >= separation; the
/// union of all classes covers the ambient cube, hence every sample point.
/// Only boxes meeting the sample are kept.
struct BrickLayout {
  int dim = 0;
  Rational cell_side;
  Rational gap;
  Rational separation;
  /// Upper bound on the diameter of every box.
  Rational diameter_bound;
  std::vector<std::vector<Box>> classes;
  /// anchor[c][i] is a sample point inside classes[c][i].
  std::vector<std::vector<PointIndex>> anchors;
};

/// Covering dimension used for bricks: structure dim for grids, 0 for
/// Cantor samples, coordinate dim otherwise.
int brick_dimension(const SampledSpace& space);

/// Layout whose boxes all have diameter < lambda.
BrickLayout brick_layout(const SampledSpace& space, const Rational& lambda);

/// Attach parent witnesses to the boxes of one class. Every box must lie in
/// a ball B(anchor, lambda) that itself sits in some region of `cover`.
DisjointFamily witness_class(const SampledSpace& space, const BrickLayout& layout, std::size_t cls,
                             const Cover& cover);

/// d+1 disjoint families refining `cover` whose union covers the sample.
std::vector<DisjointFamily> brick_refinement(const SampledSpace& space, const Cover& cover);

/// (family index, member index); family index is 0-based over covers.
using MemberRef = std::pair<std::size_t, std::size_t>;

struct ScSelection {
  std::vector<DisjointFamily> families;
  std::vector<Rational> cell_sides;
  std::vector<std::optional<MemberRef>> covering_witness;
  std::optional<PointIndex> uncovered;
  bool covers() const { return !uncovered; }
};

/// Per-point lowest (family, member) containing it.
std::vector<std::optional<MemberRef>> family_assignment(const SampledSpace& space,
                                                        const std::vector<DisjointFamily>& families,
                                                        std::optional<PointIndex>& uncovered);

/// Blocks of d+1 consecutive covers share one layout; the c-th cover of a
/// block receives class c. A trailing short block receives its leading
/// classes only. With `require_full` the horizon must be at least d+1 and
/// the result must cover.
ScSelection sc_fin_select(const SampledSpace& space, const CoverSeq& covers, bool require_full = true);

struct FiniteCResult {
  bool found = false;
  int n = 0;
  ScSelection selection;
  /// For each tried n that failed, a sample point left uncovered.
  std::vector<std::pair<int, PointIndex>> failures;
};

FiniteCResult finite_c_search(const SampledSpace& space, const CoverSeq& covers);

}  // namespace cover_games
