#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "cover_games/rational.hpp"
#include "cover_games/space.hpp"

namespace cover_games {

/// Open metric ball {x : d(x, center) < radius}.
struct Ball {
  PointIndex center = 0;
  Rational radius;
};

/// Open axis box, lo < x < hi on every axis.
struct Box {
  std::vector<Rational> lo;
  std::vector<Rational> hi;
};

/// Closed ball {x : d(x, center) <= radius}; only used inside CoClosedBalls.
struct ClosedBall {
  PointIndex center = 0;
  Rational radius;
};

/// X minus a finite union of closed balls.
struct CoClosedBalls {
  std::vector<ClosedBall> balls;
};

using Region = std::variant<Ball, Box, CoClosedBalls>;

/// Throws InputError when the region is malformed for this space.
void validate_region(const SampledSpace& space, const Region& region);

bool contains(const SampledSpace& space, const Region& region, PointIndex p);
Subset members(const SampledSpace& space, const Region& region);
std::vector<Subset> members_of(const SampledSpace& space, const std::vector<Region>& regions);

struct Cover {
  std::vector<Region> regions;
  Subset target;
};

/// A cover whose target is the whole sample. Validation is lazy.
Cover make_cover(const SampledSpace& space, std::vector<Region> regions);

/// Finite sequence of covers indexed 1..horizon.
struct CoverSeq {
  std::vector<Cover> covers;

  int horizon() const { return static_cast<int>(covers.size()); }
  const Cover& at(int n) const { return covers.at(static_cast<std::size_t>(n - 1)); }
  /// covers[first..last], re-indexed from 1.
  CoverSeq slice(int first, int last) const;
};

struct CoverCheck {
  bool covers = false;
  /// Lowest-index region containing each target point.
  std::vector<std::optional<std::size_t>> assignment;
  std::optional<PointIndex> uncovered;
};

CoverCheck covers_check(const SampledSpace& space, const Cover& cover);
CoverCheck covers_check(const SampledSpace& space, const std::vector<Region>& regions,
                        const Subset& target);

enum class Containment { none, sample, analytic };

/// Decides fine ⊆ coarse. Analytic whenever the shape pair admits an exact
/// test that succeeds; otherwise by comparing sample members.
Containment contained_in(const SampledSpace& space, const Region& fine, const Subset& fine_members,
                         const Region& coarse, const Subset& coarse_members);
Containment contained_in(const SampledSpace& space, const Region& fine, const Region& coarse);

struct RefineCheck {
  bool refines = false;
  std::vector<std::size_t> witness;
  std::vector<Containment> how;
  /// (fine region index, sample point of that region outside its best parent).
  std::optional<std::pair<std::size_t, PointIndex>> counterexample;
};

RefineCheck refines_check(const SampledSpace& space, const std::vector<Region>& fine,
                          const Cover& coarse);

struct DisjointCheck {
  bool disjoint = true;
  std::optional<std::pair<std::size_t, std::size_t>> violating_pair;
  /// Shared sample point when the violation is on the sample.
  std::optional<PointIndex> shared_point;
};

/// Pairwise disjoint on the sample, and analytically at distance >= margin
/// wherever both shapes allow an exact gap computation.
DisjointCheck pairwise_disjoint_check(const SampledSpace& space, const std::vector<Region>& regions,
                                      const Rational& margin);

/// Largest radius rho (a certified lower bound) with B(p, rho) inside the
/// region; zero when p is outside. Sample-based for the cantor_2adic metric.
Rational containment_radius(const SampledSpace& space, const Region& region, PointIndex p);

/// min over points of max over regions of containment_radius. Throws
/// ContractError naming the first uncovered point.
Rational lebesgue_number(const SampledSpace& space, const Cover& cover);

/// Pairwise disjoint regions refining one parent cover.
struct DisjointFamily {
  std::vector<Region> regions;
  /// witness[i] is the parent region containing regions[i].
  std::vector<std::size_t> witness;
  /// Guaranteed analytic separation between members.
  Rational separation;
};

struct FamilyCheck {
  bool ok = false;
  DisjointCheck disjoint;
  std::optional<std::size_t> bad_witness;
};

FamilyCheck validate_family(const SampledSpace& space, const DisjointFamily& family,
                            const Cover& parent, const Rational& margin);

}  // namespace cover_games
