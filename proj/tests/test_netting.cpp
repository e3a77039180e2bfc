#include <doctest.h>

#include <random>

#include "cover_games/errors.hpp"
#include "cover_games/netting.hpp"
#include "oracles.hpp"

using namespace cover_games;

namespace {

bool oracle_net_valid(const SampledSpace& s, const NetCertificate& net) {
  for (auto p = net.covered.find_first(); p != Subset::npos; p = net.covered.find_next(p)) {
    bool hit = false;
    for (PointIndex c : net.centers) hit = hit || oracle::in_open_ball(s, c, net.epsilon, p);
    if (!hit) return false;
  }
  return true;
}

Subset interval_subset(const SampledSpace& s, const Rational& lo, const Rational& hi) {
  Subset out(s.size());
  for (PointIndex p = 0; p < s.size(); ++p) out[p] = lo <= s.coordinate(p, 0) && s.coordinate(p, 0) <= hi;
  return out;
}

}  // namespace

TEST_CASE("greedy nets") {
  auto s = build_grid_space(1, Rational(1, 64), MetricKind::euclidean);
  auto all = full_subset(s);
  auto big = greedy_net(s, all, Rational(3, 2));
  CHECK(big.centers.size() == 1);

  auto net = greedy_net(s, all, Rational(3, 10));
  CHECK(validate_net(s, net));
  CHECK(oracle_net_valid(s, net));
  CHECK(net.centers.front() == 0);

  auto c3 = build_cantor_space(3);
  auto cn = greedy_net(c3, full_subset(c3), Rational(1, 3));
  CHECK(oracle_net_valid(c3, cn));
  bool left = false, right = false;
  for (PointIndex c : cn.centers) {
    left = left || c3.coordinate(c, 0) < Rational(1, 3);
    right = right || c3.coordinate(c, 0) > Rational(2, 3) - Rational(1, 100);
  }
  CHECK(left);
  CHECK(right);
  CHECK(minimal_net_bruteforce(c3, full_subset(c3), Rational(1, 3), 100000).centers.size() == 2);

  CHECK_THROWS_AS(greedy_net(s, all, Rational(0)), InputError);
  CHECK_THROWS_AS(greedy_net(s, Subset(s.size()), Rational(1)), InputError);
}

TEST_CASE("minimal nets") {
  auto s = build_grid_space(1, Rational(1, 8), MetricKind::euclidean);
  CHECK(minimal_net_bruteforce(s, subset_of(s, {3}), Rational(1, 8), 100).centers.size() == 1);
  CHECK(minimal_net_bruteforce(s, subset_of(s, {0, 8}), Rational(1, 4), 100).centers.size() == 2);
  auto m = minimal_net_bruteforce(s, full_subset(s), Rational(3, 10), 100000);
  REQUIRE_FALSE(m.exceeded_cap);
  CHECK(m.centers.size() == 2);
  CHECK(oracle_net_valid(s, NetCertificate{Rational(3, 10), m.centers, full_subset(s)}));
  CHECK(minimal_net_bruteforce(s, full_subset(s), Rational(1, 100), 5).exceeded_cap);
}

TEST_CASE("greedy is never smaller than the minimum") {
  std::mt19937_64 rng(17);
  for (const char* label : {"interval_h32", "square_h8", "cantor_d4", "cantor2adic_d4"}) {
    auto s = builtin_space(label);
    CAPTURE(label);
    std::bernoulli_distribution coin(0.4);
    std::uniform_int_distribution<int> num(1, 12);
    for (int t = 0; t < 20; ++t) {
      Subset sub(s.size());
      for (PointIndex p = 0; p < s.size() && sub.count() < 18; ++p) sub[p] = coin(rng);
      if (sub.none()) sub[0] = true;
      Rational eps(num(rng), 24);
      auto g = greedy_net(s, sub, eps);
      CHECK(oracle_net_valid(s, g));
      auto m = minimal_net_bruteforce(s, sub, eps, 2000000);
      REQUIRE_FALSE(m.exceeded_cap);
      CHECK(oracle_net_valid(s, NetCertificate{eps, m.centers, sub}));
      CHECK(g.centers.size() >= m.centers.size());
    }
  }
}

TEST_CASE("decompose from hurewicz selections") {
  auto pt = builtin_space("point");
  HurewiczSelections whole;
  for (int m = 1; m <= 4; ++m) whole.push_back({Ball{0, Schedule::delta_netting(4).at(m)}});
  auto d = decompose_from_hurewicz(pt, whole, 4, {Rational(1, 10)});
  for (int n = 1; n <= 4; ++n) CHECK(d.at(n).all());

  auto s = build_grid_space(1, Rational(1, 256), MetricKind::euclidean);
  auto sel = greedy_hurewicz_selections(s, 3, 2);
  CHECK(sel[0].empty());
  auto dec = decompose_from_hurewicz(s, sel, 3, {Rational(1, 16)});
  CHECK(dec.at(1).none());
  CHECK(dec.at(2).all());
  CHECK(dec.at(3).all());
  CHECK(check_chain(s, dec.chain).ok());
  REQUIRE(dec.certificates.size() == 3);
  CHECK(dec.certificates[1].n == 2);
  CHECK(dec.certificates[1].source == 2);
  for (const auto& c : dec.certificates) CHECK(oracle_net_valid(s, c.net));

  // chain agrees with the intersection written out pointwise
  for (PointIndex p = 0; p < s.size(); ++p) {
    for (int n = 1; n <= 3; ++n) {
      bool in_all = true;
      for (int m = n; m <= 3; ++m) {
        bool hit = false;
        for (const auto& b : sel[static_cast<std::size_t>(m - 1)]) hit = hit || oracle::in_region(s, b, p);
        in_all = in_all && hit;
      }
      CHECK(dec.at(n).test(p) == in_all);
    }
  }

  HurewiczSelections wrong = sel;
  wrong[1].push_back(Ball{0, Rational(1, 5)});
  CHECK_THROWS_AS(decompose_from_hurewicz(s, wrong, 3, {}), InputError);

  HurewiczSelections missing = sel;
  missing[2].pop_back();
  CHECK_THROWS_AS(decompose_from_hurewicz(s, missing, 3, {}), ContractError);
}

TEST_CASE("select from decomposition") {
  auto s = build_grid_space(1, Rational(1, 64), MetricKind::euclidean);
  SigmaDecomposition trivial;
  trivial.chain = {full_subset(s)};
  CoverSeq one{{make_cover(s, {Ball{0, Rational(2)}}), make_cover(s, {Ball{0, Rational(2)}})}};
  auto t = select_from_decomposition(s, trivial, one);
  CHECK(t.chosen == std::vector<std::vector<std::size_t>>{{0}, {0}});

  SigmaDecomposition stair;
  for (int n = 1; n <= 4; ++n) stair.chain.push_back(interval_subset(s, Rational(0), Rational(n, 4)));
  CoverSeq covers;
  std::vector<Region> balls;
  for (int k = 0; k <= 8; ++k) balls.push_back(Ball{static_cast<PointIndex>(8 * k), Rational(1, 4)});
  for (int n = 1; n <= 4; ++n) covers.covers.push_back(make_cover(s, balls));
  auto sel = select_from_decomposition(s, stair, covers);
  for (PointIndex p = 0; p < s.size(); ++p) {
    int k = *stair.entry(p);
    for (int n = k; n <= 4; ++n) {
      bool hit = false;
      for (std::size_t i : sel.chosen[static_cast<std::size_t>(n - 1)]) hit = hit || oracle::in_region(s, balls[i], p);
      CHECK(hit);
    }
    CHECK(sel.tail_start[p] <= k);
  }
  for (int n = 1; n <= 4; ++n) {
    std::vector<Region> f;
    for (PointIndex c : sel.net_centers[static_cast<std::size_t>(n - 1)]) {
      f.push_back(Ball{c, sel.lebesgue[static_cast<std::size_t>(n - 1)] / 2});
    }
    std::vector<Region> v;
    for (std::size_t i : sel.chosen[static_cast<std::size_t>(n - 1)]) v.push_back(balls[i]);
    auto r = refines_check(s, f, make_cover(s, v));
    CHECK(r.refines);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(oracle::sample_subset(s, f[i], v[r.witness[i]]));
  }

  SigmaDecomposition orphan;
  orphan.chain = {interval_subset(s, Rational(0), Rational(1, 2))};
  CHECK_THROWS_AS(select_from_decomposition(s, orphan, covers), ContractError);
}

TEST_CASE("round trip through delta-ball covers") {
  auto s = build_grid_space(1, Rational(1, 64), MetricKind::euclidean);
  const int horizon = 3;
  auto delta = Schedule::delta_netting(horizon);
  CoverSeq covers;
  for (int n = 1; n <= horizon; ++n) {
    std::vector<Region> regs;
    for (PointIndex p = 0; p < s.size(); ++p) regs.push_back(Ball{p, delta.at(n)});
    covers.covers.push_back(make_cover(s, regs));
  }
  SigmaDecomposition start;
  start.chain = {full_subset(s)};
  auto sel = select_from_decomposition(s, start, covers);
  HurewiczSelections back(horizon);
  for (int n = 1; n <= horizon; ++n) {
    for (std::size_t i : sel.chosen[static_cast<std::size_t>(n - 1)]) {
      back[static_cast<std::size_t>(n - 1)].push_back(std::get<Ball>(covers.at(n).regions[i]));
    }
  }
  auto dec = decompose_from_hurewicz(s, back, horizon, {Rational(1, 4)});
  auto check = check_chain(s, dec.chain);
  CHECK(check.monotone);
  CHECK(check.exhausts);
}
