#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cover_games/cover.hpp"
#include "cover_games/space.hpp"

namespace cover_games {

/// Every member of `covered` lies in some open ball B(center, epsilon).
struct NetCertificate {
  Rational epsilon;
  std::vector<PointIndex> centers;
  Subset covered;
};

/// First member of `covered` outside every ball, if any.
std::optional<PointIndex> net_violation(const SampledSpace& space, const NetCertificate& net);
inline bool validate_net(const SampledSpace& space, const NetCertificate& net) {
  return !net_violation(space, net);
}

/// Farthest-point greedy net. Ties go to the lowest point index.
NetCertificate greedy_net(const SampledSpace& space, const Subset& subset, const Rational& epsilon);

struct MinimalNet {
  bool exceeded_cap = false;
  std::vector<PointIndex> centers;
  std::size_t combinations = 0;
};

/// Smallest net with centers drawn from the subset, by exhaustive search over
/// center sets of increasing size. `cap` bounds the number of center sets
/// examined.
MinimalNet minimal_net_bruteforce(const SampledSpace& space, const Subset& subset,
                                  const Rational& epsilon, std::size_t cap);

/// Per n a finite list of balls of radius (1/2)^(2^n), n = 1..N.
using HurewiczSelections = std::vector<std::vector<Ball>>;

struct ChainCertificate {
  int n = 0;
  /// Index whose selection supplied the centers; 0 when the greedy fallback was used.
  int source = 0;
  NetCertificate net;
};

struct SigmaDecomposition {
  /// chain[n-1] = X_n.
  std::vector<Subset> chain;
  std::vector<ChainCertificate> certificates;

  int horizon() const { return static_cast<int>(chain.size()); }
  const Subset& at(int n) const { return chain.at(static_cast<std::size_t>(n - 1)); }
  /// Least n with p in X_n, or nullopt.
  std::optional<int> entry(PointIndex p) const;
};

struct ChainCheck {
  bool monotone = true;
  bool exhausts = true;
  std::optional<int> bad_index;
  std::optional<PointIndex> orphan;
  bool ok() const { return monotone && exhausts; }
};

ChainCheck check_chain(const SampledSpace& space, const std::vector<Subset>& chain);

/// X_n = intersection over n <= m <= N of the union of selections[m]. For
/// each requested epsilon and each n a certificate from the least m >= n
/// with (1/2)^(2^m) <= epsilon.
SigmaDecomposition decompose_from_hurewicz(const SampledSpace& space, const HurewiczSelections& selections,
                                           int horizon, const std::vector<Rational>& epsilons);

/// Greedy (1/2)^(2^m)-nets of the whole sample, m = first..horizon; empty lists below `first`.
HurewiczSelections greedy_hurewicz_selections(const SampledSpace& space, int horizon, int first = 1);

struct HurewiczSelection {
  /// chosen[n-1] = sorted indices into covers[n].regions.
  std::vector<std::vector<std::size_t>> chosen;
  std::vector<Rational> lebesgue;
  /// Per n the centers of the lambda_n/2 net of X_n.
  std::vector<std::vector<PointIndex>> net_centers;
  /// Per point the least n from which it is covered through the horizon.
  std::vector<int> tail_start;
};

/// Chain index used for cover n: X_n, or the last chain element beyond it.
const Subset& chain_at(const SigmaDecomposition& decomposition, int n);

HurewiczSelection select_from_decomposition(const SampledSpace& space, const SigmaDecomposition& decomposition,
                                            const CoverSeq& covers);

/// Per point the least n such that p is in the union of chosen[n..N]
/// for every n' in [n, N]; horizon + 1 when p is not covered at N.
std::vector<int> tail_starts(const SampledSpace& space, const CoverSeq& covers,
                             const std::vector<std::vector<std::size_t>>& chosen);

}  // namespace cover_games
