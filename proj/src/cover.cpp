#include "cover_games/cover.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include "cover_games/errors.hpp"

namespace cover_games {

namespace {

// Containment radius reported for regions that are the whole space.
const Rational kUnbounded(1 << 16);

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

class CompiledRegion {
 public:
  CompiledRegion(const SampledSpace& space, const Region& region) : space_(&space) {
    std::visit(Overloaded{
                   [&](const Ball& b) {
                     kind_ = Kind::ball;
                     center_ = b.center;
                     bound_ = space.bounds(b.radius).open;
                   },
                   [&](const Box& b) {
                     kind_ = Kind::box;
                     Integer s(static_cast<long>(space.scale()));
                     for (std::size_t a = 0; a < b.lo.size(); ++a) {
                       lo_.push_back(saturate_int64(floor(b.lo[a] * Rational(s))));
                       hi_.push_back(saturate_int64(ceil(b.hi[a] * Rational(s))));
                     }
                   },
                   [&](const CoClosedBalls& c) {
                     kind_ = Kind::coballs;
                     for (const auto& b : c.balls) {
                       balls_.emplace_back(b.center, space.bounds(b.radius).closed);
                     }
                   },
               },
               region);
  }

  bool contains(PointIndex p) const {
    switch (kind_) {
      case Kind::ball:
        return space_->key(center_, p) <= bound_;
      case Kind::box:
        for (std::size_t a = 0; a < lo_.size(); ++a) {
          std::int64_t x = space_->scaled_coordinate(p, static_cast<int>(a));
          if (x <= lo_[a] || x >= hi_[a]) return false;
        }
        return true;
      case Kind::coballs:
        for (const auto& [c, bound] : balls_) {
          if (space_->key(c, p) <= bound) return false;
        }
        return true;
    }
    return false;
  }

 private:
  enum class Kind { ball, box, coballs };
  const SampledSpace* space_;
  Kind kind_ = Kind::ball;
  PointIndex center_ = 0;
  std::int64_t bound_ = 0;
  std::vector<std::int64_t> lo_;
  std::vector<std::int64_t> hi_;
  std::vector<std::pair<PointIndex, std::int64_t>> balls_;
};

// Closed balls grouped by radius so a point's distance to the union of
// balls needs one integer scan per distinct radius.
struct GroupedBalls {
  std::vector<Rational> radii;
  std::vector<std::int64_t> closed_bounds;
  std::vector<std::vector<PointIndex>> centers;

  GroupedBalls(const SampledSpace& space, const CoClosedBalls& c) {
    std::map<Rational, std::size_t> slot;
    for (const auto& b : c.balls) {
      auto [it, inserted] = slot.emplace(b.radius, radii.size());
      if (inserted) {
        radii.push_back(b.radius);
        closed_bounds.push_back(space.bounds(b.radius).closed);
        centers.emplace_back();
      }
      centers[it->second].push_back(b.center);
    }
  }
};

Rational ball_radius_at(const SampledSpace& space, const Ball& b, PointIndex p) {
  Rational d2 = space.distance_squared(b.center, p);
  Rational r2 = b.radius * b.radius;
  if (d2 >= r2) return Rational(0);
  Rational via_sqrt = b.radius - sqrt_upper(d2);
  Rational via_difference = (r2 - d2) / (2 * b.radius);
  return std::max(via_sqrt, via_difference);
}

Rational box_radius_at(const SampledSpace& space, const Box& b, PointIndex p) {
  Rational best = kUnbounded;
  for (std::size_t a = 0; a < b.lo.size(); ++a) {
    Rational x = space.coordinate(p, static_cast<int>(a));
    if (x <= b.lo[a] || x >= b.hi[a]) return Rational(0);
    best = std::min(best, std::min(Rational(x - b.lo[a]), Rational(b.hi[a] - x)));
  }
  return best;
}

Rational coballs_radius_at(const SampledSpace& space, const GroupedBalls& g, PointIndex p) {
  Rational best = kUnbounded;
  for (std::size_t i = 0; i < g.radii.size(); ++i) {
    std::int64_t nearest = std::numeric_limits<std::int64_t>::max();
    for (PointIndex c : g.centers[i]) nearest = std::min(nearest, space.key(c, p));
    if (nearest <= g.closed_bounds[i]) return Rational(0);
    Rational d2 = space.key_to_distance_squared(nearest);
    const Rational& r = g.radii[i];
    Rational via_sqrt = sqrt_lower(d2) - r;
    Rational via_difference = (d2 - r * r) / (sqrt_upper(d2) + r);
    best = std::min(best, std::max(via_sqrt, via_difference));
  }
  return best;
}

// Sample-based radius for metrics without coordinate geometry.
Rational sample_radius_at(const SampledSpace& space, const Subset& inside, PointIndex p) {
  std::int64_t nearest = std::numeric_limits<std::int64_t>::max();
  for (PointIndex q = 0; q < space.size(); ++q) {
    if (!inside.test(q)) nearest = std::min(nearest, space.key(p, q));
  }
  if (nearest == std::numeric_limits<std::int64_t>::max()) return Rational(2);
  return sqrt_lower(space.key_to_distance_squared(nearest));
}

Rational outside_amount(const Rational& x, const Rational& lo, const Rational& hi) {
  if (x < lo) return lo - x;
  if (x > hi) return x - hi;
  return Rational(0);
}

// Squared distance from a point to the closed box [lo, hi].
Rational distance_squared_to_box(const SampledSpace& space, const std::vector<Rational>& x,
                                 const Box& b) {
  Rational acc(0);
  for (std::size_t a = 0; a < x.size(); ++a) {
    Rational o = outside_amount(x[a], b.lo[a], b.hi[a]);
    Rational o2 = o * o;
    if (space.metric() == MetricKind::chebyshev) {
      acc = std::max(acc, o2);
    } else {
      acc += o2;
    }
  }
  return acc;
}

// Squared distance from a point to the farthest point of the closed box.
Rational farthest_squared_in_box(const SampledSpace& space, const std::vector<Rational>& x,
                                 const Box& b) {
  Rational acc(0);
  for (std::size_t a = 0; a < x.size(); ++a) {
    Rational far = std::max(Rational(abs(x[a] - b.lo[a])), Rational(abs(b.hi[a] - x[a])));
    Rational f2 = far * far;
    if (space.metric() == MetricKind::chebyshev) {
      acc = std::max(acc, f2);
    } else {
      acc += f2;
    }
  }
  return acc;
}

bool analytically_contained(const SampledSpace& space, const Region& fine, const Region& coarse) {
  if (const auto* fb = std::get_if<Box>(&fine)) {
    if (const auto* cb = std::get_if<Box>(&coarse)) {
      for (std::size_t a = 0; a < fb->lo.size(); ++a) {
        if (fb->lo[a] < cb->lo[a] || fb->hi[a] > cb->hi[a]) return false;
      }
      return true;
    }
  }
  if (const auto* fb = std::get_if<Ball>(&fine)) {
    if (const auto* cb = std::get_if<Ball>(&coarse)) {
      if (fb->center == cb->center && fb->radius <= cb->radius) return true;
    }
  }
  if (!space.coordinate_metric()) return false;
  return std::visit(
      Overloaded{
          [&](const Ball& f, const Ball& c) {
            Rational slack = c.radius - f.radius;
            if (slack < 0) return false;
            return space.distance_squared(f.center, c.center) <= slack * slack;
          },
          [&](const Box& f, const Ball& c) {
            return farthest_squared_in_box(space, space.point(c.center), f) <= c.radius * c.radius;
          },
          [&](const Ball& f, const Box& c) {
            for (std::size_t a = 0; a < c.lo.size(); ++a) {
              Rational x = space.coordinate(f.center, static_cast<int>(a));
              if (x - f.radius < c.lo[a] || x + f.radius > c.hi[a]) return false;
            }
            return true;
          },
          [&](const Box& f, const CoClosedBalls& c) {
            for (const auto& b : c.balls) {
              if (distance_squared_to_box(space, space.point(b.center), f) < b.radius * b.radius) {
                return false;
              }
            }
            return true;
          },
          [&](const Ball& f, const CoClosedBalls& c) {
            for (const auto& b : c.balls) {
              Rational reach = f.radius + b.radius;
              if (space.distance_squared(f.center, b.center) < reach * reach) return false;
            }
            return true;
          },
          [&](const auto&, const auto&) { return false; },
      },
      fine, coarse);
}

// nullopt when the shapes or metric admit no exact gap computation.
std::optional<bool> analytically_separated(const SampledSpace& space, const Region& a,
                                           const Region& b, const Rational& margin) {
  if (!space.coordinate_metric()) return std::nullopt;
  bool cheb = space.metric() == MetricKind::chebyshev;
  return std::visit(
      Overloaded{
          [&](const Box& x, const Box& y) -> std::optional<bool> {
            bool some_gap = false;
            Rational acc(0);
            for (std::size_t i = 0; i < x.lo.size(); ++i) {
              Rational g = std::max(Rational(y.lo[i] - x.hi[i]), Rational(x.lo[i] - y.hi[i]));
              if (g >= 0) {
                some_gap = true;
                Rational g2 = g * g;
                acc = cheb ? std::max(acc, g2) : acc + g2;
              }
            }
            if (margin == 0) return some_gap;
            return some_gap && acc >= margin * margin;
          },
          [&](const Ball& x, const Ball& y) -> std::optional<bool> {
            Rational reach = x.radius + y.radius + margin;
            return space.distance_squared(x.center, y.center) >= reach * reach;
          },
          [&](const Ball& x, const Box& y) -> std::optional<bool> {
            Rational reach = x.radius + margin;
            return distance_squared_to_box(space, space.point(x.center), y) >= reach * reach;
          },
          [&](const Box& x, const Ball& y) -> std::optional<bool> {
            Rational reach = y.radius + margin;
            return distance_squared_to_box(space, space.point(y.center), x) >= reach * reach;
          },
          [&](const auto&, const auto&) -> std::optional<bool> { return std::nullopt; },
      },
      a, b);
}

// Projection of a bounded region onto axis 0; nullopt for unbounded shapes.
std::optional<std::pair<Rational, Rational>> axis0_extent(const SampledSpace& space,
                                                          const Region& r) {
  if (const auto* b = std::get_if<Box>(&r)) return std::make_pair(b->lo[0], b->hi[0]);
  if (const auto* b = std::get_if<Ball>(&r)) {
    Rational c = space.coordinate(b->center, 0);
    return std::make_pair(c - b->radius, c + b->radius);
  }
  return std::nullopt;
}

}  // namespace

void validate_region(const SampledSpace& space, const Region& region) {
  auto check_center = [&](PointIndex c) {
    if (c >= space.size()) throw InputError("region center " + std::to_string(c) + " out of range");
  };
  std::visit(Overloaded{
                 [&](const Ball& b) {
                   check_center(b.center);
                   if (b.radius <= 0) throw InputError("ball radius must be positive");
                 },
                 [&](const Box& b) {
                   if (static_cast<int>(b.lo.size()) != space.dim() ||
                       static_cast<int>(b.hi.size()) != space.dim()) {
                     throw InputError("box dimension does not match space");
                   }
                   for (std::size_t a = 0; a < b.lo.size(); ++a) {
                     if (!(b.lo[a] < b.hi[a])) throw InputError("box needs lo < hi on every axis");
                   }
                 },
                 [&](const CoClosedBalls& c) {
                   for (const auto& b : c.balls) {
                     check_center(b.center);
                     if (b.radius <= 0) throw InputError("closed ball radius must be positive");
                   }
                 },
             },
             region);
}

bool contains(const SampledSpace& space, const Region& region, PointIndex p) {
  return CompiledRegion(space, region).contains(p);
}

Subset members(const SampledSpace& space, const Region& region) {
  CompiledRegion compiled(space, region);
  Subset out(space.size());
  for (PointIndex p = 0; p < space.size(); ++p) {
    if (compiled.contains(p)) out.set(p);
  }
  return out;
}

std::vector<Subset> members_of(const SampledSpace& space, const std::vector<Region>& regions) {
  std::vector<Subset> out;
  out.reserve(regions.size());
  for (const auto& r : regions) out.push_back(members(space, r));
  return out;
}

Cover make_cover(const SampledSpace& space, std::vector<Region> regions) {
  for (const auto& r : regions) validate_region(space, r);
  return Cover{std::move(regions), full_subset(space)};
}

CoverSeq CoverSeq::slice(int first, int last) const {
  if (first < 1 || last > horizon() || first > last) {
    throw InputError("cover slice [" + std::to_string(first) + "," + std::to_string(last) +
                     "] outside horizon " + std::to_string(horizon()));
  }
  CoverSeq out;
  out.covers.assign(covers.begin() + (first - 1), covers.begin() + last);
  return out;
}

CoverCheck covers_check(const SampledSpace& space, const std::vector<Region>& regions,
                        const Subset& target) {
  std::vector<CompiledRegion> compiled;
  compiled.reserve(regions.size());
  for (const auto& r : regions) compiled.emplace_back(space, r);
  CoverCheck out;
  out.assignment.assign(space.size(), std::nullopt);
  for (auto p = target.find_first(); p != Subset::npos; p = target.find_next(p)) {
    for (std::size_t i = 0; i < compiled.size(); ++i) {
      if (compiled[i].contains(p)) {
        out.assignment[p] = i;
        break;
      }
    }
    if (!out.assignment[p] && !out.uncovered) out.uncovered = p;
  }
  out.covers = !out.uncovered.has_value();
  return out;
}

CoverCheck covers_check(const SampledSpace& space, const Cover& cover) {
  return covers_check(space, cover.regions, cover.target);
}

Containment contained_in(const SampledSpace& space, const Region& fine, const Subset& fine_members,
                         const Region& coarse, const Subset& coarse_members) {
  if (analytically_contained(space, fine, coarse)) return Containment::analytic;
  if (fine_members.is_subset_of(coarse_members)) return Containment::sample;
  return Containment::none;
}

Containment contained_in(const SampledSpace& space, const Region& fine, const Region& coarse) {
  if (analytically_contained(space, fine, coarse)) return Containment::analytic;
  return members(space, fine).is_subset_of(members(space, coarse)) ? Containment::sample
                                                                    : Containment::none;
}

RefineCheck refines_check(const SampledSpace& space, const std::vector<Region>& fine,
                          const Cover& coarse) {
  RefineCheck out;
  out.refines = true;
  std::vector<Subset> coarse_members = members_of(space, coarse.regions);
  for (std::size_t i = 0; i < fine.size(); ++i) {
    Subset fm = members(space, fine[i]);
    std::optional<std::size_t> found;
    Containment how = Containment::none;
    for (std::size_t j = 0; j < coarse.regions.size() && !found; ++j) {
      how = contained_in(space, fine[i], fm, coarse.regions[j], coarse_members[j]);
      if (how != Containment::none) found = j;
    }
    if (found) {
      out.witness.push_back(*found);
      out.how.push_back(how);
      continue;
    }
    out.witness.push_back(0);
    out.how.push_back(Containment::none);
    if (out.refines) {
      out.refines = false;
      std::size_t best = 0;
      std::size_t best_overlap = 0;
      for (std::size_t j = 0; j < coarse_members.size(); ++j) {
        std::size_t overlap = (fm & coarse_members[j]).count();
        if (overlap > best_overlap) {
          best_overlap = overlap;
          best = j;
        }
      }
      Subset missing = coarse_members.empty() ? fm : (fm - coarse_members[best]);
      PointIndex p = missing.any() ? missing.find_first() : fm.find_first();
      out.counterexample = std::make_pair(i, p);
    }
  }
  return out;
}

DisjointCheck pairwise_disjoint_check(const SampledSpace& space, const std::vector<Region>& regions,
                                      const Rational& margin) {
  if (margin < 0) throw InputError("disjointness margin must be nonnegative");
  DisjointCheck out;
  std::vector<std::ptrdiff_t> owner(space.size(), -1);
  for (std::size_t i = 0; i < regions.size() && out.disjoint; ++i) {
    Subset m = members(space, regions[i]);
    for (auto p = m.find_first(); p != Subset::npos; p = m.find_next(p)) {
      if (owner[p] >= 0) {
        out.disjoint = false;
        out.violating_pair = std::make_pair(static_cast<std::size_t>(owner[p]), i);
        out.shared_point = p;
        break;
      }
      owner[p] = static_cast<std::ptrdiff_t>(i);
    }
  }
  if (!out.disjoint) return out;

  struct Item {
    std::size_t index;
    Rational lo;
    Rational hi;
  };
  std::vector<Item> items;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (auto e = axis0_extent(space, regions[i])) items.push_back({i, e->first, e->second});
  }
  if (!space.coordinate_metric()) items.clear();
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return a.lo != b.lo ? a.lo < b.lo : a.index < b.index;
  });
  std::optional<std::pair<std::size_t, std::size_t>> worst;
  for (std::size_t x = 0; x < items.size(); ++x) {
    for (std::size_t y = x + 1; y < items.size(); ++y) {
      Rational gap = items[y].lo - items[x].hi;
      if (margin == 0 ? gap >= 0 : gap >= margin) break;
      auto sep = analytically_separated(space, regions[items[x].index], regions[items[y].index], margin);
      if (sep && !*sep) {
        std::pair<std::size_t, std::size_t> pair(std::min(items[x].index, items[y].index),
                                                std::max(items[x].index, items[y].index));
        if (!worst || pair < *worst) worst = pair;
      }
    }
  }
  if (worst) {
    out.disjoint = false;
    out.violating_pair = worst;
  }
  return out;
}

Rational containment_radius(const SampledSpace& space, const Region& region, PointIndex p) {
  if (!contains(space, region, p)) return Rational(0);
  if (!space.coordinate_metric()) return sample_radius_at(space, members(space, region), p);
  return std::visit(Overloaded{
                        [&](const Ball& b) { return ball_radius_at(space, b, p); },
                        [&](const Box& b) { return box_radius_at(space, b, p); },
                        [&](const CoClosedBalls& c) {
                          return coballs_radius_at(space, GroupedBalls(space, c), p);
                        },
                    },
                    region);
}

Rational lebesgue_number(const SampledSpace& space, const Cover& cover) {
  CoverCheck check = covers_check(space, cover);
  if (!check.covers) {
    throw ContractError("cover does not cover point " + std::to_string(*check.uncovered),
                        check.uncovered);
  }
  std::vector<Subset> inside = members_of(space, cover.regions);
  std::vector<std::optional<GroupedBalls>> grouped(cover.regions.size());
  for (std::size_t i = 0; i < cover.regions.size(); ++i) {
    if (const auto* c = std::get_if<CoClosedBalls>(&cover.regions[i])) grouped[i].emplace(space, *c);
  }
  std::optional<Rational> lambda;
  for (auto p = cover.target.find_first(); p != Subset::npos; p = cover.target.find_next(p)) {
    Rational best(0);
    for (std::size_t i = 0; i < cover.regions.size(); ++i) {
      if (!inside[i].test(p)) continue;
      Rational r;
      if (!space.coordinate_metric()) {
        r = sample_radius_at(space, inside[i], p);
      } else if (const auto* b = std::get_if<Ball>(&cover.regions[i])) {
        r = ball_radius_at(space, *b, p);
      } else if (const auto* b = std::get_if<Box>(&cover.regions[i])) {
        r = box_radius_at(space, *b, p);
      } else {
        r = coballs_radius_at(space, *grouped[i], p);
      }
      if (r > best) best = r;
    }
    if (!lambda || best < *lambda) lambda = best;
  }
  if (!lambda) throw ContractError("cover target is empty");
  return *lambda;
}

FamilyCheck validate_family(const SampledSpace& space, const DisjointFamily& family,
                            const Cover& parent, const Rational& margin) {
  FamilyCheck out;
  out.disjoint = pairwise_disjoint_check(space, family.regions, margin);
  std::vector<Subset> parent_members = members_of(space, parent.regions);
  for (std::size_t i = 0; i < family.regions.size(); ++i) {
    std::size_t w = i < family.witness.size() ? family.witness[i] : parent.regions.size();
    if (w >= parent.regions.size() ||
        contained_in(space, family.regions[i], members(space, family.regions[i]), parent.regions[w],
                     parent_members[w]) == Containment::none) {
      out.bad_witness = i;
      break;
    }
  }
  out.ok = out.disjoint.disjoint && !out.bad_witness;
  return out;
}

}  // namespace cover_games
