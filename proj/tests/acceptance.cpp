#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cover_games/cli.hpp"
#include "cover_games/errors.hpp"
#include "cover_games/game.hpp"
#include "cover_games/haver.hpp"
#include "cover_games/io.hpp"
#include "cover_games/netting.hpp"
#include "cover_games/screenability.hpp"
#include "oracles.hpp"

using namespace cover_games;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  void expect(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

std::vector<Region> union_of(const std::vector<DisjointFamily>& fams) {
  std::vector<Region> out;
  for (const auto& f : fams) out.insert(out.end(), f.regions.begin(), f.regions.end());
  return out;
}

std::vector<Rational> quarters_from(int first_exp, int horizon) {
  std::vector<Rational> out;
  Rational e(1);
  for (int k = 0; k < first_exp; ++k) e /= 4;
  for (int n = 0; n < horizon; ++n) {
    out.push_back(e);
    e /= 4;
  }
  return out;
}

using i128 = __int128;

/// Squared distances as exact integers over a common denominator, computed
/// from the rational coordinates without the library's key machinery.
class IntegerMetric {
 public:
  explicit IntegerMetric(const SampledSpace& s) : s_(s), n_(s.size()), dim_(s.dim()) {
    if (s.metric() == MetricKind::cantor_2adic) {
      for (PointIndex p = 0; p < n_; ++p) {
        Rational x = s.coordinate(p, 0);
        std::vector<long> digits;
        Rational pow3(1);
        for (int i = 0; i < kLevels; ++i) {
          digits.push_back(oracle::floor_q(x * pow3).get_num().get_si());
          pow3 *= 3;
        }
        levels_.push_back(std::move(digits));
      }
      return;
    }
    Integer common(1);
    for (PointIndex p = 0; p < n_; ++p) {
      for (int a = 0; a < dim_; ++a) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), s.coordinate(p, a).get_den_mpz_t());
    }
    denominator_ = Rational(common);
    for (PointIndex p = 0; p < n_; ++p) {
      for (int a = 0; a < dim_; ++a) coords_.push_back(Rational(s.coordinate(p, a) * denominator_).get_num().get_si());
    }
  }

  /// Integer d^2 scaled by denominator^2, or 4^(levels - matching) for the 2-adic metric.
  i128 d2(PointIndex p, PointIndex q) const {
    if (!levels_.empty()) {
      if (p == q) return 0;
      int k = 0;
      while (k < kLevels && levels_[p][static_cast<std::size_t>(k)] == levels_[q][static_cast<std::size_t>(k)]) ++k;
      return i128(1) << (2 * (kLevels - k));
    }
    i128 acc = 0;
    for (int a = 0; a < dim_; ++a) {
      i128 diff = coords_[p * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(a)] -
                  coords_[q * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(a)];
      i128 sq = diff * diff;
      if (s_.metric() == MetricKind::chebyshev) {
        acc = std::max(acc, sq);
      } else {
        acc += sq;
      }
    }
    return acc;
  }

  Rational exact(PointIndex p, PointIndex q) const {
    i128 v = d2(p, q);
    Rational r(Integer(std::to_string(static_cast<long long>(v))));
    if (!levels_.empty()) return r / Rational(Integer(1) << (2 * kLevels));
    return r / (denominator_ * denominator_);
  }

 private:
  static constexpr int kLevels = 24;
  const SampledSpace& s_;
  std::size_t n_;
  int dim_;
  Rational denominator_{1};
  std::vector<long> coords_;
  std::vector<std::vector<long>> levels_;
};

bool triangle(i128 x, i128 y, i128 z) {
  i128 w = z - x - y;
  if (w <= 0) return true;
  return w * w <= 4 * x * y;
}

Outcome c1_metric_axioms() {
  Outcome o;
  std::mt19937_64 rng(1001);
  std::size_t exhaustive = 0, sampled = 0;
  for (const auto& label : builtin_space_labels()) {
    auto s = builtin_space(label);
    IntegerMetric m(s);
    const std::size_t n = s.size();
    if (n <= 200) {
      std::vector<i128> d2(n * n);
      for (PointIndex p = 0; p < n; ++p) {
        for (PointIndex q = 0; q < n; ++q) d2[p * n + q] = m.d2(p, q);
      }
      for (PointIndex p = 0; p < n; ++p) {
        o.expect(d2[p * n + p] == 0, label + ": d(p,p) != 0");
        for (PointIndex q = 0; q < n; ++q) {
          if (p == q) continue;
          o.expect(d2[p * n + q] == d2[q * n + p], label + ": asymmetric");
          o.expect(d2[p * n + q] > 0, label + ": distinct points at distance 0");
          o.expect(s.distance_squared(p, q) == m.exact(p, q), label + ": library distance differs from the oracle");
        }
      }
      for (PointIndex a = 0; a < n; ++a) {
        for (PointIndex b = 0; b < n; ++b) {
          for (PointIndex c = 0; c < n; ++c) {
            ++exhaustive;
            if (!s.triangle_holds(a, b, c) || !triangle(d2[a * n + b], d2[b * n + c], d2[a * n + c])) {
              o.fail(label + ": triangle violated at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                     std::to_string(c) + ")");
            }
          }
        }
      }
    } else {
      std::uniform_int_distribution<PointIndex> pick(0, n - 1);
      for (int t = 0; t < 100000; ++t) {
        PointIndex a = pick(rng), b = pick(rng), c = pick(rng);
        ++sampled;
        if (!s.triangle_holds(a, b, c) || !triangle(m.d2(a, b), m.d2(b, c), m.d2(a, c))) {
          o.fail(label + ": triangle violated");
        }
        if (a != b && (s.key(a, b) != s.key(b, a) || s.key(a, b) <= 0 || m.d2(a, b) != m.d2(b, a) || m.d2(a, b) <= 0)) {
          o.fail(label + ": symmetry or positivity violated");
        }
      }
      for (int t = 0; t < 1000; ++t) {
        PointIndex a = pick(rng), b = pick(rng);
        if (s.distance_squared(a, b) != m.exact(a, b)) o.fail(label + ": library distance differs from the oracle");
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(exhaustive) + " exhaustive and " + std::to_string(sampled) + " sampled triples, 0 violations";
  }
  return o;
}

bool oracle_net_valid(const SampledSpace& s, const Subset& subset, const std::vector<PointIndex>& centers,
                      const Rational& eps) {
  for (PointIndex c : centers) {
    if (!subset.test(c)) return false;
  }
  for (PointIndex p = 0; p < s.size(); ++p) {
    if (!subset.test(p)) continue;
    bool hit = false;
    for (PointIndex c : centers) hit = hit || oracle::in_open_ball(s, c, eps, p);
    if (!hit) return false;
  }
  return true;
}

/// Whether some center set of exactly k members of the subset is a net.
bool oracle_net_of_size(const SampledSpace& s, const Subset& subset, const Rational& eps, std::size_t k) {
  auto members = indices_of(subset);
  if (k > members.size()) return false;
  std::vector<bool> mask(members.size(), false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<PointIndex> centers;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (mask[i]) centers.push_back(members[i]);
    }
    if (oracle_net_valid(s, subset, centers, eps)) return true;
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return false;
}

Outcome c2_net_oracle() {
  Outcome o;
  auto s = build_grid_space(1, Rational(1, 8), MetricKind::euclidean);
  const std::vector<Rational> eps{Rational(1, 8), Rational(1, 4), Rational(1, 3), Rational(1, 2)};
  std::size_t cases = 0;
  for (unsigned mask = 1; mask < (1u << s.size()); ++mask) {
    Subset sub(s.size());
    for (PointIndex p = 0; p < s.size(); ++p) sub[p] = (mask >> p) & 1u;
    for (const auto& e : eps) {
      ++cases;
      auto g = greedy_net(s, sub, e);
      auto m = minimal_net_bruteforce(s, sub, e, 1u << 20);
      std::string tag = "subset " + std::to_string(mask) + " eps " + to_string(e);
      o.expect(!m.exceeded_cap, tag + ": minimal search exceeded its cap");
      o.expect(validate_net(s, g) && oracle_net_valid(s, sub, g.centers, e), tag + ": greedy net invalid");
      o.expect(oracle_net_valid(s, sub, m.centers, e), tag + ": minimal net invalid");
      o.expect(m.centers.empty() || !oracle_net_of_size(s, sub, e, m.centers.size() - 1), tag + ": minimal net not minimal");
      o.expect(g.centers.size() >= m.centers.size(), tag + ": greedy smaller than minimal");
    }
  }
  if (o.pass) o.detail = std::to_string(cases) + " (subset, eps) cases";
  return o;
}

CoverSeq random_covers(std::mt19937_64& rng, const SampledSpace& s, int horizon) {
  CoverSeq out;
  for (int n = 0; n < horizon; ++n) {
    std::vector<Region> regs = s.dim() == 1 ? oracle::random_interval_cover(rng, 6, Rational(1, 20))
                                            : oracle::random_box_cover(rng, 3, Rational(1, 4));
    out.covers.push_back(make_cover(s, std::move(regs)));
  }
  return out;
}

Outcome c3_theorem1_loop() {
  Outcome o;
  const std::vector<Rational> eps{Rational(1, 2), Rational(1, 4), Rational(1, 16)};
  std::mt19937_64 rng(1003);
  std::size_t points_checked = 0;
  for (auto s : {build_grid_space(1, Rational(1, 256), MetricKind::euclidean),
                 build_grid_space(2, Rational(1, 64), MetricKind::euclidean)}) {
    const std::string tag = "dim " + std::to_string(s.dim());
    const int N = 4;
    auto sel = greedy_hurewicz_selections(s, N);
    for (int m = 1; m <= N; ++m) {
      for (const auto& b : sel[static_cast<std::size_t>(m - 1)]) {
        o.expect(b.radius == Schedule::delta_netting(N).at(m), tag + ": selection radius is not (1/2)^(2^m)");
      }
    }
    auto d = decompose_from_hurewicz(s, sel, N, eps);
    Subset all(s.size());
    for (int n = 1; n <= N; ++n) {
      if (n < N) o.expect(d.at(n).is_subset_of(d.at(n + 1)), tag + ": chain not monotone");
      all |= d.at(n);
    }
    o.expect(all.all(), tag + ": chain union misses a point");
    for (int n = 1; n <= N; ++n) {
      for (const auto& e : eps) {
        bool found = false;
        for (const auto& c : d.certificates) {
          if (c.n != n || c.net.epsilon != e) continue;
          found = true;
          o.expect(c.net.covered == d.at(n), tag + ": certificate covers the wrong set");
          o.expect(oracle_net_valid(s, d.at(n), c.net.centers, e), tag + ": certificate is not a net");
        }
        o.expect(found, tag + ": missing certificate at n=" + std::to_string(n) + " eps=" + to_string(e));
      }
    }
    for (int trial = 0; trial < 5; ++trial) {
      auto covers = random_covers(rng, s, N);
      for (const auto& c : covers.covers) o.expect(covers_check(s, c).covers, tag + ": generated cover invalid");
      auto chosen = select_from_decomposition(s, d, covers);
      auto h = hurewicz_selection_check(s, covers, chosen.chosen);
      o.expect(h.ok, tag + ": hurewicz_selection_check failed");
      for (PointIndex p = 0; p < s.size(); ++p) {
        ++points_checked;
        int K = *d.entry(p);
        o.expect(h.tail[p] <= K, tag + ": tail beyond K(x)");
        for (int n = K; n <= N; ++n) {
          bool hit = false;
          const auto& regs = covers.at(n).regions;
          for (std::size_t i : chosen.chosen[static_cast<std::size_t>(n - 1)]) hit = hit || oracle::in_region(s, regs[i], p);
          if (!hit) o.fail(tag + ": point " + std::to_string(p) + " uncovered at n=" + std::to_string(n));
        }
      }
    }
  }
  if (o.pass) o.detail = std::to_string(points_checked) + " point tails verified against K(x)";
  return o;
}

void check_refinement(Outcome& o, const SampledSpace& s, const Cover& cover, const std::vector<DisjointFamily>& fams,
                      std::size_t expected, const std::string& tag) {
  o.expect(fams.size() == expected, tag + ": " + std::to_string(fams.size()) + " families");
  for (const auto& f : fams) {
    o.expect(pairwise_disjoint_check(s, f.regions, s.mesh()).disjoint, tag + ": family not disjoint at margin = mesh");
    o.expect(refines_check(s, f.regions, cover).refines, tag + ": family does not refine");
    o.expect(oracle::sample_disjoint(s, f.regions), tag + ": oracle finds overlap");
    for (std::size_t i = 0; i < f.regions.size(); ++i) {
      o.expect(oracle::sample_subset(s, f.regions[i], cover.regions[f.witness[i]]), tag + ": oracle finds escape");
    }
  }
  auto all = union_of(fams);
  o.expect(covers_check(s, all, full_subset(s)).covers, tag + ": union does not cover");
  o.expect(oracle::first_uncovered(s, all) == -1, tag + ": oracle finds an uncovered point");
}

Outcome c4_screenability() {
  Outcome o;
  std::mt19937_64 rng(1004);
  auto line = build_grid_space(1, Rational(1, 1024), MetricKind::euclidean);
  for (int t = 0; t < 50; ++t) {
    auto cover = make_cover(line, oracle::random_interval_cover(rng, 6, Rational(1, 20)));
    check_refinement(o, line, cover, brick_refinement(line, cover), 2, "interval cover " + std::to_string(t));
  }
  auto sq = builtin_space("square_h64");
  for (int t = 0; t < 20; ++t) {
    auto cover = make_cover(sq, oracle::random_box_cover(rng, 3, Rational(1, 4)));
    check_refinement(o, sq, cover, brick_refinement(sq, cover), 3, "box cover " + std::to_string(t));
  }
  if (o.pass) o.detail = "50 interval covers -> 2 families, 20 box covers -> 3 families";
  return o;
}

Outcome c5_finite_c() {
  Outcome o;
  std::mt19937_64 rng(1005);
  auto line = build_grid_space(1, Rational(1, 256), MetricKind::euclidean);
  auto sq = builtin_space("square_h32");
  for (int t = 0; t < 5; ++t) {
    auto r1 = finite_c_search(line, random_covers(rng, line, 4));
    o.expect(r1.found && r1.n == 2, "interval trial " + std::to_string(t) + ": n != 2");
    auto r2 = finite_c_search(sq, random_covers(rng, sq, 4));
    o.expect(r2.found && r2.n == 3, "square trial " + std::to_string(t) + ": n != 3");
    if (r1.found) o.expect(oracle::first_uncovered(line, union_of(r1.selection.families)) == -1, "witness misses a point");
    if (r2.found) o.expect(oracle::first_uncovered(sq, union_of(r2.selection.families)) == -1, "witness misses a point");
  }
  auto s = build_grid_space(1, Rational(1, 64), MetricKind::euclidean);
  const Rational a(3, 5), b(2, 5);
  auto crossing = make_cover(s, {Box{{Rational(-1)}, {a}}, Box{{b}, {Rational(2)}}});
  auto r3 = finite_c_search(s, CoverSeq{{crossing}});
  o.expect(!r3.found, "crossing cover: a witness was reported at horizon 1");
  o.expect(!oracle::lattice_family_exists(s, {{Rational(-1), a}, {b, Rational(2)}}, Rational(1, 64)),
           "crossing cover: exhaustive search found a single-family witness");
  o.expect(oracle::lattice_family_exists(s, {{Rational(-1), Rational(2)}}, Rational(1, 64)),
           "exhaustive search misses a trivial witness");
  if (o.pass) o.detail = "n = 2 on [0,1], n = 3 on [0,1]^2, crossing cover has no witness";
  return o;
}

/// Block clause and per-family clauses recomputed from regions alone.
void oracle_sc_plus(Outcome& o, const SampledSpace& s, const CoverSeq& covers, const ScPlusResult& r, int max_tail,
                    const std::string& tag) {
  for (int j = 1; j <= covers.horizon(); ++j) {
    const auto& fam = r.families[static_cast<std::size_t>(j - 1)];
    o.expect(oracle::sample_disjoint(s, fam.regions), tag + ": W_" + std::to_string(j) + " overlaps");
    for (std::size_t i = 0; i < fam.regions.size(); ++i) {
      o.expect(oracle::sample_subset(s, fam.regions[i], covers.at(j).regions.at(fam.witness[i])),
               tag + ": W_" + std::to_string(j) + " escapes its parent");
    }
  }
  const int K = static_cast<int>(r.blocks.size());
  for (std::size_t k = 1; k < r.blocks.size(); ++k) o.expect(r.blocks[k] > r.blocks[k - 1], tag + ": blocks not increasing");
  for (PointIndex p = 0; p < s.size(); ++p) {
    int worst = 0;
    for (int k = 1; k <= K - 1; ++k) {
      bool hit = false;
      for (int j = r.blocks[static_cast<std::size_t>(k - 1)]; j < r.blocks[static_cast<std::size_t>(k)]; ++j) {
        for (const auto& reg : r.families[static_cast<std::size_t>(j - 1)].regions) hit = hit || oracle::in_region(s, reg, p);
      }
      if (!hit) worst = k;
    }
    o.expect(worst + 1 <= max_tail, tag + ": tail index of point " + std::to_string(p) + " exceeds the bound");
  }
}

Outcome c6_sc_plus() {
  Outcome o;
  std::mt19937_64 rng(1006);
  auto s = build_grid_space(1, Rational(1, 256), MetricKind::euclidean);
  for (int t = 0; t < 5; ++t) {
    const std::string tag = "seeded sequence " + std::to_string(t);
    auto covers = random_covers(rng, s, 8);
    auto r = sc_plus_select(s, covers);
    auto c = check_sc_plus(s, covers, r, 2);
    o.expect(c.ok(), tag + ": " + c.problem);
    oracle_sc_plus(o, s, covers, r, 2, tag);

    auto game = play_hurewicz_game(s, covers, covering_two());
    auto tc = check_transcript(s, covers, game);
    o.expect(tc.ok, tag + ": " + tc.problem);
    o.expect(game.blocks == r.blocks, tag + ": blocks differ from the game's");
    for (const auto& round : game.rounds) {
      int least = round.one_move.start;
      for (const auto& ref : round.two_move) least = std::max(least, ref.n + 1);
      o.expect(round.block == least, tag + ": block index is not minimal");
    }
  }
  if (o.pass) o.detail = "5 seeded sequences, horizon 8, tail index <= 2";
  return o;
}

void oracle_haver(Outcome& o, const SampledSpace& s, const HaverWitness& w, const std::string& tag) {
  const int N = w.epsilons.horizon();
  std::vector<Region> all;
  for (int n = 1; n <= N; ++n) {
    const auto& fam = w.families[static_cast<std::size_t>(n - 1)];
    const Rational& eps = w.epsilons.at(n);
    o.expect(oracle::sample_disjoint(s, fam.regions), tag + ": H_" + std::to_string(n) + " overlaps");
    o.expect(pairwise_disjoint_check(s, fam.regions, fam.separation).disjoint, tag + ": H_" + std::to_string(n) + " not separated");
    for (const auto& r : fam.regions) {
      o.expect(oracle::diameter2(s, oracle::region_points(s, r)) < eps * eps,
               tag + ": a member of H_" + std::to_string(n) + " has diameter >= eps_n");
      all.push_back(r);
    }
  }
  o.expect(oracle::first_uncovered(s, all) == -1, tag + ": the H_n leave a point uncovered");
  o.expect(w.traces.size() == s.size(), tag + ": Claim replay incomplete");
  for (const auto& t : w.traces) {
    int entry = 0;
    for (int n = N; n >= 1; --n) {
      if (w.covers.chain[static_cast<std::size_t>(n - 1)].test(t.point)) entry = n;
    }
    const int lo = w.blocks.at(static_cast<std::size_t>(t.k - 1));
    const int hi = w.blocks.at(static_cast<std::size_t>(t.k));
    bool ok = t.entry == entry && lo >= t.n_bound && t.n_bound >= entry && lo <= t.j && t.j < hi &&
              oracle::in_region(s, w.families[static_cast<std::size_t>(t.j - 1)].regions.at(t.kept_index), t.point);
    if (!ok) o.fail(tag + ": Claim replay trace of point " + std::to_string(t.point) + " does not check");
  }
}

Outcome c7_haver() {
  Outcome o;
  const int N = 8;
  auto eps = normalize_epsilons(quarters_from(1, N));
  for (int n = 1; n <= N; ++n) o.expect(eps.at(n) == quarters_from(1, N)[static_cast<std::size_t>(n - 1)], "schedule was altered");
  auto deltas = Schedule::delta_haver(eps);
  o.expect(deltas.at(1) == Rational(3, 4) * (eps.at(1) / 2), "delta_1 != (3/4)(eps_1/2)");
  o.expect(deltas.at(2) == Rational(15, 16) * (eps.at(2) / 2), "delta_2 != (15/16)(eps_2/2)");

  auto cantor = build_cantor_space(10);
  auto wc = build_haver_witness(cantor, {full_subset(cantor)}, eps);
  o.expect(wc.deltas.at(1) == Rational(3, 32) && wc.deltas.at(2) == Rational(15, 512), "witness delta spot values");
  o.expect(check_haver_witness(cantor, wc).ok(), "Cantor: " + check_haver_witness(cantor, wc).problem);
  oracle_haver(o, cantor, wc, "Cantor depth 10");

  auto line = build_grid_space(1, Rational(1, 256), MetricKind::euclidean);
  auto stair = staircase_chain(line, N, 4);
  for (int n = 1; n <= N; ++n) {
    for (PointIndex p = 0; p < line.size(); ++p) {
      bool want = line.coordinate(p, 0) <= std::min(Rational(1), Rational(n, 4));
      if (stair[static_cast<std::size_t>(n - 1)].test(p) != want) o.fail("staircase chain is wrong");
    }
  }
  auto wl = build_haver_witness(line, stair, eps);
  o.expect(check_haver_witness(line, wl).ok(), "staircase: " + check_haver_witness(line, wl).problem);
  oracle_haver(o, line, wl, "staircase");
  if (o.pass) {
    o.detail = "Claim replay 100% on " + std::to_string(cantor.size()) + " + " + std::to_string(line.size()) + " points";
  }
  return o;
}

Outcome c8_checker_coherence() {
  Outcome o;
  std::mt19937_64 rng(1008);
  auto s = build_grid_space(1, Rational(1, 16), MetricKind::euclidean);
  int hurewicz_passes = 0;
  for (int t = 0; t < 200; ++t) {
    auto covers = random_covers(rng, s, 4);
    Picks picks(4);
    std::bernoulli_distribution coin(t % 2 == 0 ? 0.9 : 0.5);
    for (int n = 1; n <= 4; ++n) {
      for (std::size_t i = 0; i < covers.at(n).regions.size(); ++i) {
        if (coin(rng)) picks[static_cast<std::size_t>(n - 1)].push_back(i);
      }
    }
    auto h = hurewicz_selection_check(s, covers, picks);
    auto m = menger_selection_check(s, covers, picks);
    bool menger_oracle = true, hurewicz_oracle = true;
    for (PointIndex p = 0; p < s.size(); ++p) {
      bool any = false, last = false;
      for (int n = 1; n <= 4; ++n) {
        for (std::size_t i : picks[static_cast<std::size_t>(n - 1)]) {
          bool in = oracle::in_region(s, covers.at(n).regions[i], p);
          any = any || in;
          if (n == 4) last = last || in;
        }
      }
      menger_oracle = menger_oracle && any;
      hurewicz_oracle = hurewicz_oracle && last;
    }
    o.expect(h.ok == hurewicz_oracle, "instance " + std::to_string(t) + ": Hurewicz verdict disagrees with the oracle");
    o.expect(m.covers == menger_oracle, "instance " + std::to_string(t) + ": Menger verdict disagrees with the oracle");
    if (h.ok) {
      ++hurewicz_passes;
      o.expect(m.covers, "instance " + std::to_string(t) + ": Hurewicz passes but Menger fails");
    }
  }
  o.expect(hurewicz_passes > 0, "no generated instance passes the Hurewicz check");
  std::vector<Region> halves{Box{{Rational(-1)}, {Rational(3, 5)}}, Box{{Rational(2, 5)}, {Rational(2)}}};
  CoverSeq seq{std::vector<Cover>(4, make_cover(s, halves))};
  Picks once{{0}, {1}, {}, {}};
  o.expect(menger_selection_check(s, seq, once).covers, "constructed instance fails Menger");
  o.expect(!hurewicz_selection_check(s, seq, once).ok, "constructed instance passes Hurewicz");
  if (o.pass) o.detail = std::to_string(hurewicz_passes) + " of 200 instances pass Hurewicz, all pass Menger";
  return o;
}

void write_json(const std::filesystem::path& p, const io::Json& j) { std::ofstream(p) << j.dump(2) << "\n"; }

std::string strip_wall_time(const std::string& text) {
  auto j = io::Json::parse(text);
  j.erase("wall_time_ms");
  return j.dump();
}

Outcome c9_determinism() {
  Outcome o;
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "cover_games_acceptance";
  fs::create_directories(dir);
  std::mt19937_64 rng(1009);
  auto s = build_grid_space(1, Rational(1, 32), MetricKind::euclidean);
  auto covers = random_covers(rng, s, 8);
  write_json(dir / "space.json", io::space_to_json(s));
  write_json(dir / "cover.json", io::cover_to_json(s, covers.at(1)));
  write_json(dir / "covers.json", io::covers_to_json(s, covers));
  write_json(dir / "chain.json", io::chain_to_json(staircase_chain(s, 8, 4)));
  write_json(dir / "selections.json", io::selections_to_json(greedy_hurewicz_selections(s, 4)));
  Picks picks(8);
  for (int n = 1; n <= 8; ++n) {
    for (std::size_t i = 0; i < covers.at(n).regions.size(); ++i) picks[static_cast<std::size_t>(n - 1)].push_back(i);
  }
  write_json(dir / "picks.json", io::picks_to_json(picks));
  write_json(dir / "run.json", io::Json{{"horizon", 6}, {"tail_slack", 1}});

  const std::string S = (dir / "space.json").string(), CS = (dir / "covers.json").string();
  const std::vector<std::vector<std::string>> commands{
      {"net", "--space", S, "--epsilon", "1/4", "--oracle"},
      {"decompose", "--space", S, "--selections", (dir / "selections.json").string(), "--horizon", "4"},
      {"select", "--space", S, "--chain", (dir / "chain.json").string(), "--covers", CS},
      {"refine", "--space", S, "--cover", (dir / "cover.json").string()},
      {"scfin", "--space", S, "--covers", CS},
      {"fincspace", "--space", S, "--covers", CS},
      {"haver", "--space", S, "--chain", (dir / "chain.json").string(), "--epsilons", "1,1/4,1/16", "--horizon", "8"},
      {"game", "--space", S, "--covers", CS, "--two", "covering", "--horizon", "8"},
      {"game", "--space", S, "--covers", CS, "--two", "adversarial:5"},
      {"scplus", "--space", S, "--covers", CS, "--config", (dir / "run.json").string()},
      {"check", "--kind", "menger", "--space", S, "--covers", CS, "--picks", (dir / "picks.json").string()},
      {"check", "--kind", "hurewicz", "--space", S, "--covers", CS, "--picks", (dir / "picks.json").string()},
      {"demo", "--label", "cantor_d4", "--horizon", "6"},
  };
  for (const auto& args : commands) {
    std::ostringstream out1, err1, out2, err2;
    int c1 = cli::run(args, out1, err1);
    int c2 = cli::run(args, out2, err2);
    const std::string tag = args[0] + (args[0] == "game" || args[0] == "check" ? " " + args[args[0] == "game" ? 6 : 2] : "");
    o.expect(c1 == 0, tag + ": exit " + std::to_string(c1) + " " + err1.str());
    o.expect(c1 == c2, tag + ": exit codes differ");
    if (c1 == 0 && c2 == 0) {
      o.expect(strip_wall_time(out1.str()) == strip_wall_time(out2.str()), tag + ": reports differ");
      o.expect(out1.str().find("wall_time_ms") != std::string::npos, tag + ": no wall time field");
    }
  }
  if (o.pass) o.detail = std::to_string(commands.size()) + " invocations byte-identical modulo wall time";
  return o;
}

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "metric axioms", 5, c1_metric_axioms},
      {2, "net oracle equivalence", 60, c2_net_oracle},
      {3, "sigma-decomposition loop", 120, c3_theorem1_loop},
      {4, "screenability engine", 120, c4_screenability},
      {5, "finite C-space witness", 60, c5_finite_c},
      {6, "S_c^+ via the game", 120, c6_sc_plus},
      {7, "Haver pipeline", 180, c7_haver},
      {8, "checker coherence", 60, c8_checker_coherence},
      {9, "CLI determinism", 1e9, c9_determinism},
  };
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::stoi(argv[i]));
  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_s) out.fail("time limit exceeded");
    char timing[64];
    if (c.limit_s < 1e8) {
      std::snprintf(timing, sizeof timing, "%.2f s / %.0f s", secs, c.limit_s);
    } else {
      std::snprintf(timing, sizeof timing, "%.2f s", secs);
    }
    std::cout << (out.pass ? "PASS" : "FAIL") << "  criterion " << c.id << " (" << c.name << ", " << timing
              << "): " << out.detail << std::endl;
    if (!out.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
