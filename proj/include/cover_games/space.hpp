#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cover_games/rational.hpp"

namespace cover_games {

using PointIndex = std::size_t;

/// Membership bitset over the point indices of one SampledSpace.
using Subset = boost::dynamic_bitset<>;

enum class MetricKind { euclidean, chebyshev, cantor_2adic };

std::string to_string(MetricKind kind);
MetricKind parse_metric_kind(const std::string& text);

/// What the sample approximates. Brick refinements need to know the
/// covering dimension and the lattice the sample lives on.
struct Structure {
  enum class Kind { generic, grid, cantor };
  Kind kind = Kind::generic;
  int dim = 0;          // covering dimension of the underlying compact space
  Rational resolution;  // grid step h, or 3^-depth for Cantor samples
};

/// Thresholds on SampledSpace::key for a fixed radius r:
/// key <= open  <=>  d < r,   key <= closed  <=>  d <= r.
struct KeyBounds {
  std::int64_t open = 0;
  std::int64_t closed = 0;
};

/// A finite sample of a compact metric space with exact rational
/// coordinates. Coordinates are stored as integers over one common
/// denominator so that distance comparisons run on machine integers;
/// every comparison is still exact.
class SampledSpace {
 public:
  SampledSpace(std::string label, MetricKind metric, Rational mesh,
               const std::vector<std::vector<Rational>>& points, Structure structure = {});

  const std::string& label() const { return label_; }
  MetricKind metric() const { return metric_; }
  const Rational& mesh() const { return mesh_; }
  const Structure& structure() const { return structure_; }
  std::size_t size() const { return size_; }
  int dim() const { return dim_; }

  Rational coordinate(PointIndex p, int axis) const;
  std::vector<Rational> point(PointIndex p) const;
  std::int64_t scaled_coordinate(PointIndex p, int axis) const {
    return coords_[p * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(axis)];
  }
  std::int64_t scale() const { return scale_; }

  /// Integer key, strictly monotone in d(p, q); zero iff p == q.
  std::int64_t key(PointIndex p, PointIndex q) const;
  Rational key_to_distance_squared(std::int64_t key) const;
  Rational distance_squared(PointIndex p, PointIndex q) const {
    return key_to_distance_squared(key(p, q));
  }
  KeyBounds bounds(const Rational& radius) const;

  /// Exact d(a,c) <= d(a,b) + d(b,c).
  bool triangle_holds(PointIndex a, PointIndex b, PointIndex c) const;

  /// Squared distance from a sample point to an arbitrary rational point.
  /// Only meaningful for coordinate metrics (euclidean, chebyshev).
  Rational distance_squared_to(PointIndex p, const std::vector<Rational>& x) const;

  /// Whether regions described by coordinates (balls around arbitrary
  /// points, boxes) can be compared analytically in this metric.
  bool coordinate_metric() const { return metric_ != MetricKind::cantor_2adic; }

 private:
  int first_ternary_difference(PointIndex p, PointIndex q) const;

  std::string label_;
  MetricKind metric_;
  Rational mesh_;
  Structure structure_;
  std::size_t size_ = 0;
  int dim_ = 0;
  std::int64_t scale_ = 1;
  std::vector<std::int64_t> coords_;
};

/// Squared diameter of a point set; `empty` marks the vacuous case.
struct Diameter {
  Rational squared;
  bool empty = true;

  bool less_than(const Rational& bound) const;
  /// The diameter itself when it is rational.
  std::optional<Rational> exact() const;
};

Diameter diameter(const SampledSpace& space, const Subset& subset);

Subset full_subset(const SampledSpace& space);
Subset subset_of(const SampledSpace& space, const std::vector<PointIndex>& members);
std::vector<PointIndex> indices_of(const Subset& subset);

/// A positive schedule indexed from 1 (stored 0-based).
class Schedule {
 public:
  enum class Kind { epsilon, delta_netting, delta_haver };

  static Schedule epsilon(std::vector<Rational> values);
  /// delta_n = (1/2)^(2^n) for n = 1..horizon.
  static Schedule delta_netting(int horizon);
  /// delta_n = ((2^(2^n) - 1) / 2^(2^n)) * (eps_n / 2).
  static Schedule delta_haver(const Schedule& epsilons);

  Kind kind() const { return kind_; }
  int horizon() const { return static_cast<int>(values_.size()); }
  /// 1-based access.
  const Rational& at(int n) const;
  const std::vector<Rational>& values() const { return values_; }

 private:
  Schedule(Kind kind, std::vector<Rational> values);
  Kind kind_;
  std::vector<Rational> values_;
};

std::size_t default_point_cap();

SampledSpace build_grid_space(int dim, const Rational& h, MetricKind metric,
                              std::size_t point_cap = default_point_cap());
SampledSpace build_cantor_space(int depth, MetricKind metric = MetricKind::euclidean,
                                std::size_t point_cap = default_point_cap());

std::vector<std::string> builtin_space_labels();
/// Throws InputError for unknown labels.
SampledSpace builtin_space(const std::string& label, std::size_t point_cap = default_point_cap());

}  // namespace cover_games
