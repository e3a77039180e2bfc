#include "cover_games/haver.hpp"

#include <algorithm>

#include "cover_games/errors.hpp"

namespace cover_games {

Schedule normalize_epsilons(const std::vector<Rational>& raw) {
  if (raw.empty()) throw InputError("epsilon schedule is empty");
  std::vector<Rational> out;
  for (const auto& r : raw) {
    if (r <= 0) throw InputError("epsilon values must be positive");
    if (out.empty()) {
      out.push_back(r);
    } else if (r < out.back() / 2) {
      out.push_back(r);
    } else {
      out.push_back(out.back() / 4);
    }
  }
  return Schedule::epsilon(std::move(out));
}

HaverCovers haver_covers(const SampledSpace& space, const std::vector<Subset>& chain, const Schedule& epsilons) {
  if (chain.empty()) throw InputError("chain is empty");
  for (const auto& x : chain) {
    if (x.size() != space.size()) throw InputError("chain subset has the wrong size");
  }
  ChainCheck cc = check_chain(space, chain);
  if (!cc.monotone) throw InputError("chain is not increasing at index " + std::to_string(*cc.bad_index));
  if (!cc.exhausts) throw InputError("chain misses point " + std::to_string(*cc.orphan));
  const int horizon = epsilons.horizon();
  for (int n = 1; n < horizon; ++n) {
    if (!(epsilons.at(n + 1) < epsilons.at(n) / 2)) {
      throw InputError("epsilon schedule must satisfy eps_{n+1} < eps_n / 2 (normalize it first)");
    }
  }
  HaverCovers out{epsilons, Schedule::delta_haver(epsilons), {}, {}, {}};
  for (int n = 1; n <= horizon; ++n) {
    const Subset& xn = chain[static_cast<std::size_t>(std::min(n, static_cast<int>(chain.size())) - 1)];
    out.chain.push_back(xn);
    const Rational& eps = epsilons.at(n);
    const Rational& delta = out.deltas.at(n);
    if (!(delta < eps / 2)) throw ContractError("delta_" + std::to_string(n) + " is not below eps_n / 2");
    std::vector<PointIndex> net;
    if (xn.any()) net = greedy_net(space, xn, delta).centers;
    std::vector<Region> regions;
    CoClosedBalls rest;
    const KeyBounds db = space.bounds(delta);
    const KeyBounds eb = space.bounds(eps);
    for (PointIndex f : net) {
      regions.push_back(Ball{f, Rational(eps / 2)});
      rest.balls.push_back(ClosedBall{f, delta});
      for (PointIndex q = 0; q < space.size(); ++q) {
        if (space.key(f, q) <= db.closed && space.key(f, q) > eb.open) {
          throw ContractError("closed delta ball escapes the eps ball at point " + std::to_string(q), q);
        }
      }
    }
    regions.push_back(rest);
    Cover cover = make_cover(space, regions);
    auto cov = covers_check(space, cover);
    if (!cov.covers) throw ContractError("cover " + std::to_string(n) + " misses a point", cov.uncovered);
    Subset leak = members(space, regions.back()) & xn;
    if (leak.any()) {
      throw ContractError("complement piece meets X_" + std::to_string(n), static_cast<PointIndex>(leak.find_first()));
    }
    out.nets.push_back(std::move(net));
    out.covers.covers.push_back(std::move(cover));
  }
  return out;
}

HaverWitness build_haver_witness(const SampledSpace& space, const std::vector<Subset>& chain, const Schedule& epsilons,
                                 int tail_slack) {
  HaverCovers t = haver_covers(space, chain, epsilons);
  HaverWitness w{t.epsilons, t.deltas, {}, {}, {}, {}, {}, {}, std::move(t), {}};
  const CoverSeq& covers = w.covers.covers;
  const int horizon = covers.horizon();
  w.scplus = sc_plus_select(space, covers, tail_slack);
  w.blocks = w.scplus.blocks;

  // filter H'_n down to H_n, remembering where each survivor went
  std::vector<std::vector<std::optional<std::size_t>>> kept(static_cast<std::size_t>(horizon));
  for (int n = 1; n <= horizon; ++n) {
    auto un = static_cast<std::size_t>(n - 1);
    const DisjointFamily& hp = w.scplus.families[un];
    const Cover& cover = covers.at(n);
    const std::size_t balls = complement_index(w.covers, n);
    std::vector<Subset> ball_members = members_of(space, cover.regions);
    DisjointFamily h{{}, {}, hp.separation};
    std::vector<Containment> how;
    Diameter worst;
    kept[un].assign(hp.regions.size(), std::nullopt);
    for (std::size_t i = 0; i < hp.regions.size(); ++i) {
      Subset vm = members(space, hp.regions[i]);
      std::optional<std::size_t> inside;
      Containment c = Containment::none;
      std::vector<std::size_t> order;
      if (hp.witness[i] < balls) order.push_back(hp.witness[i]);
      for (std::size_t b = 0; b < balls; ++b) {
        if (b != hp.witness[i]) order.push_back(b);
      }
      for (std::size_t b : order) {
        c = contained_in(space, hp.regions[i], vm, cover.regions[b], ball_members[b]);
        if (c != Containment::none) {
          inside = b;
          break;
        }
      }
      if (!inside) continue;
      kept[un][i] = h.regions.size();
      h.regions.push_back(hp.regions[i]);
      h.witness.push_back(*inside);
      how.push_back(c);
      Diameter d = diameter(space, vm);
      if (!d.empty && (worst.empty || d.squared > worst.squared)) worst = d;
    }
    w.families.push_back(std::move(h));
    w.filter_how.push_back(std::move(how));
    w.diam_bounds.push_back(worst);
  }

  // replay the Claim point by point
  const auto& blocks = w.blocks;
  const int K = static_cast<int>(blocks.size());
  for (PointIndex p = 0; p < space.size(); ++p) {
    ClaimTrace tr;
    tr.point = p;
    tr.entry = 0;
    for (int n = 1; n <= horizon; ++n) {
      if (w.covers.chain[static_cast<std::size_t>(n - 1)].test(p)) {
        tr.entry = n;
        break;
      }
    }
    if (tr.entry == 0) throw ContractError("point " + std::to_string(p) + " lies in no X_n", p);
    int tail = w.scplus.tail_index[p];
    tr.n_bound = std::max(tr.entry, tail <= K ? blocks[static_cast<std::size_t>(tail - 1)] : horizon + 1);
    tr.k = 0;
    for (int k = 1; k <= K - 1; ++k) {
      if (blocks[static_cast<std::size_t>(k - 1)] >= tr.n_bound) {
        tr.k = k;
        break;
      }
    }
    if (tr.k == 0) {
      throw ContractError("horizon exhausted: no complete block starts at or after N = " + std::to_string(tr.n_bound) +
                              " for point " + std::to_string(p),
                          p);
    }
    bool found = false;
    for (int j = blocks[static_cast<std::size_t>(tr.k - 1)]; j < blocks[static_cast<std::size_t>(tr.k)] && !found; ++j) {
      const DisjointFamily& hp = w.scplus.families[static_cast<std::size_t>(j - 1)];
      for (std::size_t i = 0; i < hp.regions.size(); ++i) {
        if (!contains(space, hp.regions[i], p)) continue;
        if (!w.covers.chain[static_cast<std::size_t>(j - 1)].test(p)) {
          throw ContractError("Claim replay: point " + std::to_string(p) + " is not in X_" + std::to_string(j), p);
        }
        auto kept_at = kept[static_cast<std::size_t>(j - 1)][i];
        if (!kept_at) {
          throw ContractError("Claim replay: the region holding point " + std::to_string(p) + " in H'_" +
                                  std::to_string(j) + " was filtered out",
                              p);
        }
        tr.j = j;
        tr.member = i;
        tr.kept_index = *kept_at;
        found = true;
        break;
      }
    }
    if (!found) {
      throw ContractError("Claim replay: point " + std::to_string(p) + " is in no H'_j of block " + std::to_string(tr.k), p);
    }
    w.traces.push_back(tr);
  }
  std::optional<PointIndex> uncovered;
  w.covering_witness = family_assignment(space, w.families, uncovered);
  if (uncovered) throw ContractError("Haver families leave a point uncovered", uncovered);
  return w;
}

HaverCheck check_haver_witness(const SampledSpace& space, const HaverWitness& witness) {
  HaverCheck out;
  auto note = [&](bool& flag, const std::string& why) {
    flag = false;
    if (out.problem.empty()) out.problem = why;
  };
  Subset all(space.size());
  for (std::size_t n = 0; n < witness.families.size(); ++n) {
    const auto& fam = witness.families[n];
    const std::string tag = "H_" + std::to_string(n + 1);
    if (!pairwise_disjoint_check(space, fam.regions, fam.separation).disjoint) note(out.disjoint, tag + " is not disjoint");
    const Rational& eps = witness.epsilons.at(static_cast<int>(n + 1));
    for (const auto& r : fam.regions) {
      Subset m = members(space, r);
      if (!diameter(space, m).less_than(eps)) note(out.small, tag + " has a member of diameter >= eps");
      all |= m;
    }
  }
  if (!all.all()) note(out.covers, "point " + std::to_string((~all).find_first()) + " is uncovered");
  return out;
}

std::vector<Subset> staircase_chain(const SampledSpace& space, int horizon, int steps) {
  std::vector<Subset> out;
  for (int n = 1; n <= horizon; ++n) {
    Rational top = std::min(Rational(1), Rational(n, steps));
    Subset x(space.size());
    for (PointIndex p = 0; p < space.size(); ++p) x[p] = space.coordinate(p, 0) <= top;
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace cover_games
