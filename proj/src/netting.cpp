#include "cover_games/netting.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "cover_games/errors.hpp"

namespace cover_games {

std::optional<PointIndex> net_violation(const SampledSpace& space, const NetCertificate& net) {
  const std::int64_t bound = space.bounds(net.epsilon).open;
  for (auto p = net.covered.find_first(); p != Subset::npos; p = net.covered.find_next(p)) {
    bool hit = std::any_of(net.centers.begin(), net.centers.end(),
                           [&](PointIndex c) { return space.key(c, p) <= bound; });
    if (!hit) return p;
  }
  return std::nullopt;
}

NetCertificate greedy_net(const SampledSpace& space, const Subset& subset, const Rational& epsilon) {
  if (epsilon <= 0) throw InputError("net radius must be positive");
  if (subset.none()) throw InputError("net subset is empty");
  NetCertificate out{epsilon, {}, subset};
  const std::int64_t bound = space.bounds(epsilon).open;
  std::vector<PointIndex> pts = indices_of(subset);
  std::vector<std::int64_t> near(pts.size(), std::numeric_limits<std::int64_t>::max());
  std::size_t next = 0;
  for (;;) {
    PointIndex c = pts[next];
    out.centers.push_back(c);
    std::int64_t worst = -1;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      near[i] = std::min(near[i], space.key(c, pts[i]));
      if (near[i] > worst) {
        worst = near[i];
        next = i;
      }
    }
    if (worst <= bound) break;
  }
  return out;
}

MinimalNet minimal_net_bruteforce(const SampledSpace& space, const Subset& subset, const Rational& epsilon,
                                  std::size_t cap) {
  if (epsilon <= 0) throw InputError("net radius must be positive");
  MinimalNet out;
  std::vector<PointIndex> pts = indices_of(subset);
  const std::size_t m = pts.size();
  if (m == 0) return out;
  const std::int64_t bound = space.bounds(epsilon).open;
  std::vector<boost::dynamic_bitset<>> reach(m, boost::dynamic_bitset<>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) reach[i][j] = space.key(pts[i], pts[j]) <= bound;
  }
  for (std::size_t k = 1; k <= m; ++k) {
    std::vector<std::size_t> combo(k);
    for (std::size_t i = 0; i < k; ++i) combo[i] = i;
    for (;;) {
      if (++out.combinations > cap) {
        out.exceeded_cap = true;
        return out;
      }
      boost::dynamic_bitset<> u(m);
      for (std::size_t i : combo) u |= reach[i];
      if (u.all()) {
        for (std::size_t i : combo) out.centers.push_back(pts[i]);
        return out;
      }
      std::size_t i = k;
      while (i > 0 && combo[i - 1] == m - k + (i - 1)) --i;
      if (i == 0) break;
      ++combo[i - 1];
      for (std::size_t j = i; j < k; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
  return out;
}

std::optional<int> SigmaDecomposition::entry(PointIndex p) const {
  for (std::size_t n = 0; n < chain.size(); ++n) {
    if (chain[n].test(p)) return static_cast<int>(n + 1);
  }
  return std::nullopt;
}

ChainCheck check_chain(const SampledSpace& space, const std::vector<Subset>& chain) {
  ChainCheck out;
  for (std::size_t n = 1; n < chain.size(); ++n) {
    if (!chain[n - 1].is_subset_of(chain[n])) {
      out.monotone = false;
      out.bad_index = static_cast<int>(n);
      break;
    }
  }
  Subset all(space.size());
  for (const auto& x : chain) all |= x;
  if (!all.all()) {
    out.exhausts = false;
    out.orphan = (~all).find_first();
  }
  return out;
}

SigmaDecomposition decompose_from_hurewicz(const SampledSpace& space, const HurewiczSelections& selections,
                                           int horizon, const std::vector<Rational>& epsilons) {
  if (horizon < 1) throw InputError("horizon must be at least 1");
  if (static_cast<int>(selections.size()) < horizon) {
    throw InputError("selections shorter than the horizon");
  }
  Schedule delta = Schedule::delta_netting(horizon);
  std::vector<Subset> unions;
  for (int m = 1; m <= horizon; ++m) {
    Subset u(space.size());
    for (const auto& b : selections[static_cast<std::size_t>(m - 1)]) {
      if (b.radius != delta.at(m)) {
        throw InputError("selection " + std::to_string(m) + " has a ball of radius " + to_string(b.radius) +
                         ", expected " + to_string(delta.at(m)));
      }
      validate_region(space, b);
      u |= members(space, b);
    }
    unions.push_back(std::move(u));
  }

  SigmaDecomposition out;
  out.chain.assign(static_cast<std::size_t>(horizon), Subset());
  Subset running = full_subset(space);
  for (int n = horizon; n >= 1; --n) {
    running &= unions[static_cast<std::size_t>(n - 1)];
    out.chain[static_cast<std::size_t>(n - 1)] = running;
  }
  const Subset& top = out.chain.back();
  if (!top.all()) {
    PointIndex p = (~top).find_first();
    throw ContractError("point " + std::to_string(p) + " is not in the selection at the horizon", p);
  }

  for (const auto& eps : epsilons) {
    if (eps <= 0) throw InputError("certificate radius must be positive");
    for (int n = 1; n <= horizon; ++n) {
      const Subset& xn = out.at(n);
      ChainCertificate cert;
      cert.n = n;
      for (int m = n; m <= horizon; ++m) {
        if (delta.at(m) <= eps) {
          cert.source = m;
          break;
        }
      }
      if (xn.none()) {
        cert.net = NetCertificate{eps, {}, xn};
      } else if (cert.source > 0) {
        cert.net.epsilon = eps;
        cert.net.covered = xn;
        for (const auto& b : selections[static_cast<std::size_t>(cert.source - 1)]) {
          cert.net.centers.push_back(b.center);
        }
      } else {
        cert.net = greedy_net(space, xn, eps);
      }
      if (auto bad = net_violation(space, cert.net)) {
        throw ContractError("net certificate for X_" + std::to_string(n) + " misses point " +
                                std::to_string(*bad),
                            *bad);
      }
      out.certificates.push_back(std::move(cert));
    }
  }
  return out;
}

HurewiczSelections greedy_hurewicz_selections(const SampledSpace& space, int horizon, int first) {
  Schedule delta = Schedule::delta_netting(horizon);
  HurewiczSelections out(static_cast<std::size_t>(horizon));
  Subset all = full_subset(space);
  for (int m = std::max(first, 1); m <= horizon; ++m) {
    for (PointIndex c : greedy_net(space, all, delta.at(m)).centers) {
      out[static_cast<std::size_t>(m - 1)].push_back(Ball{c, delta.at(m)});
    }
  }
  return out;
}

const Subset& chain_at(const SigmaDecomposition& decomposition, int n) {
  if (decomposition.chain.empty()) throw InputError("decomposition chain is empty");
  return decomposition.chain[static_cast<std::size_t>(std::min(n, decomposition.horizon()) - 1)];
}

std::vector<int> tail_starts(const SampledSpace& space, const CoverSeq& covers,
                             const std::vector<std::vector<std::size_t>>& chosen) {
  const int horizon = covers.horizon();
  std::vector<int> out(space.size(), 1);
  std::vector<bool> alive(space.size(), true);
  for (int n = horizon; n >= 1; --n) {
    Subset u(space.size());
    const Cover& c = covers.at(n);
    for (std::size_t idx : chosen[static_cast<std::size_t>(n - 1)]) u |= members(space, c.regions.at(idx));
    for (PointIndex p = 0; p < space.size(); ++p) {
      if (alive[p] && !u.test(p)) {
        alive[p] = false;
        out[p] = n + 1;
      }
    }
  }
  return out;
}

HurewiczSelection select_from_decomposition(const SampledSpace& space, const SigmaDecomposition& decomposition,
                                            const CoverSeq& covers) {
  ChainCheck chain = check_chain(space, decomposition.chain);
  if (!chain.exhausts) {
    throw ContractError("decomposition misses point " + std::to_string(*chain.orphan), chain.orphan);
  }
  if (!chain.monotone) throw InputError("decomposition chain is not increasing");
  HurewiczSelection out;
  for (int m = 1; m <= covers.horizon(); ++m) {
    const Cover& cover = covers.at(m);
    Rational lambda = lebesgue_number(space, cover);
    out.lebesgue.push_back(lambda);
    const Subset& xm = chain_at(decomposition, m);
    std::vector<std::size_t> picked;
    std::vector<PointIndex> centers;
    if (xm.any()) {
      Rational half = lambda / 2;
      centers = greedy_net(space, xm, half).centers;
      std::vector<Subset> inside = members_of(space, cover.regions);
      for (PointIndex c : centers) {
        std::optional<std::size_t> best;
        Rational best_radius(0);
        for (std::size_t i = 0; i < cover.regions.size(); ++i) {
          if (!inside[i].test(c)) continue;
          Rational r = containment_radius(space, cover.regions[i], c);
          if (!best || r > best_radius) {
            best = i;
            best_radius = r;
          }
        }
        Region ball = Ball{c, half};
        if (!best || contained_in(space, ball, members(space, ball), cover.regions[*best], inside[*best]) ==
                         Containment::none) {
          throw ContractError("net ball at point " + std::to_string(c) + " fits in no region of cover " +
                                  std::to_string(m),
                              c);
        }
        picked.push_back(*best);
      }
    }
    std::sort(picked.begin(), picked.end());
    picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
    out.chosen.push_back(std::move(picked));
    out.net_centers.push_back(std::move(centers));
  }
  out.tail_start = tail_starts(space, covers, out.chosen);
  for (PointIndex p = 0; p < space.size(); ++p) {
    int k = decomposition.entry(p).value_or(decomposition.horizon());
    if (out.tail_start[static_cast<std::size_t>(p)] > std::min(k, covers.horizon() + 1)) {
      throw ContractError("point " + std::to_string(p) + " leaves the selection after entering the chain", p);
    }
  }
  return out;
}

}  // namespace cover_games
