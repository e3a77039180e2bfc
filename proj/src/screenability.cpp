#include "cover_games/screenability.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "cover_games/errors.hpp"

namespace cover_games {

namespace {

long floor_long(const Rational& q) { return floor(q).get_si(); }

long mod(long a, long m) { return ((a % m) + m) % m; }

Rational diameter_of_widths(const SampledSpace& space, const std::vector<Rational>& widths) {
  if (space.metric() == MetricKind::chebyshev) {
    Rational best(0);
    for (const auto& w : widths) best = std::max(best, w);
    return best;
  }
  Rational sum(0);
  for (const auto& w : widths) sum += w * w;
  return sqrt_upper(sum);
}

struct Building {
  std::vector<std::map<std::vector<long>, std::pair<Box, PointIndex>>> classes;
};

BrickLayout finish(const SampledSpace& space, BrickLayout layout, Building& b) {
  (void)space;
  layout.classes.assign(b.classes.size(), {});
  layout.anchors.assign(b.classes.size(), {});
  for (std::size_t c = 0; c < b.classes.size(); ++c) {
    for (auto& [key, entry] : b.classes[c]) {
      layout.classes[c].push_back(std::move(entry.first));
      layout.anchors[c].push_back(entry.second);
    }
  }
  return layout;
}

BrickLayout layout_dim0(const SampledSpace& space, const Rational& lambda) {
  const bool ultra = space.metric() == MetricKind::cantor_2adic;
  int k = 0;
  Rational side(1);
  Rational diam;
  for (;; ++k, side /= 3) {
    diam = ultra ? half_power(static_cast<unsigned long>(k + 1)) : Rational(side * 5 / 3);
    if (diam < lambda) break;
    if (k > 200) throw ResourceError("Lebesgue number too small for a Cantor layout");
  }
  BrickLayout layout;
  layout.dim = 0;
  layout.cell_side = side;
  layout.gap = side / 3;
  layout.separation = side / 3;
  layout.diameter_bound = diam;
  Building b;
  b.classes.resize(1);
  for (PointIndex p = 0; p < space.size(); ++p) {
    std::vector<long> key;
    Box box;
    for (int a = 0; a < space.dim(); ++a) {
      long c = floor_long(space.coordinate(p, a) / side);
      key.push_back(c);
      Rational lo = side * c;
      box.lo.push_back(lo - side / 3);
      box.hi.push_back(lo + side + side / 3);
    }
    b.classes[0].try_emplace(key, std::move(box), p);
  }
  return finish(space, std::move(layout), b);
}

/// Largest power of 1/2 strictly below lambda / (2d).
Rational cell_side_below(const Rational& lambda, int d) {
  Rational s(1);
  while (s >= lambda / (2 * d)) s /= 2;
  return s;
}

Rational brick_gap(const SampledSpace& space, const Rational& s) { return std::min(Rational(s / 4), space.mesh()); }

BrickLayout layout_dim1(const SampledSpace& space, const Rational& lambda) {
  Rational s = cell_side_below(lambda, 1);
  Rational g = brick_gap(space, s);
  BrickLayout layout{1, s, g, Rational(s - 2 * g), Rational(s + 2 * g), {}, {}};
  Rational origin = -s / 2;
  Building b;
  b.classes.resize(2);
  for (PointIndex p = 0; p < space.size(); ++p) {
    long c = floor_long((space.coordinate(p, 0) - origin) / s);
    Rational lo = origin + s * c;
    b.classes[static_cast<std::size_t>(mod(c, 2))].try_emplace(
        std::vector<long>{c}, Box{{Rational(lo - g)}, {Rational(lo + s + g)}}, p);
  }
  return finish(space, std::move(layout), b);
}

BrickLayout layout_dim2(const SampledSpace& space, const Rational& lambda) {
  Rational s = cell_side_below(lambda, 2);
  Rational g = brick_gap(space, s);
  Rational diam = diameter_of_widths(space, {Rational(2 * s + 2 * g), Rational(s + 2 * g)});
  BrickLayout layout{2, s, g, Rational(s - 2 * g), diam, {}, {}};
  Rational origin = -s / 2;
  Building b;
  b.classes.resize(3);
  for (PointIndex p = 0; p < space.size(); ++p) {
    long r = floor_long((space.coordinate(p, 1) - origin) / s);
    Rational shift = s * mod(r, 2);
    long c = floor_long((space.coordinate(p, 0) - origin - shift) / (2 * s));
    Rational x0 = origin + shift + 2 * s * c;
    Rational y0 = origin + s * r;
    long color = mod(c + 2 * mod(r, 2), 3);
    b.classes[static_cast<std::size_t>(color)].try_emplace(
        std::vector<long>{r, c},
        Box{{Rational(x0 - g), Rational(y0 - g)}, {Rational(x0 + 2 * s + g), Rational(y0 + s + g)}}, p);
  }
  return finish(space, std::move(layout), b);
}

/// Class j holds boxes around the (d-j)-faces of the cubical lattice:
/// j fixed axes within alpha_j of a lattice value, d-j free axes kept
/// beta_j away from the lattice.
BrickLayout layout_skeleton(const SampledSpace& space, const Rational& lambda) {
  const int d = space.dim();
  auto widths_for = [&](const Rational& s, int j) {
    Rational u = s / (4 * d + 2);
    std::vector<Rational> w;
    for (int i = 0; i < j; ++i) w.push_back(4 * j * u);
    for (int i = j; i < d; ++i) w.push_back(s - 2 * (2 * j + 1) * u);
    return w;
  };
  Rational s = cell_side_below(lambda, d);
  Rational diam(0);
  for (int j = 0; j <= d; ++j) diam = std::max(diam, diameter_of_widths(space, widths_for(s, j)));
  Rational u = s / (4 * d + 2);
  BrickLayout layout{d, s, u, u, diam, {}, {}};
  Building b;
  b.classes.resize(static_cast<std::size_t>(d + 1));
  for (PointIndex p = 0; p < space.size(); ++p) {
    std::vector<Rational> t(static_cast<std::size_t>(d));
    std::vector<long> nearest(static_cast<std::size_t>(d)), cell(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
      Rational x = space.coordinate(p, a) / s;
      long f = floor_long(x);
      Rational frac = x - f;
      cell[static_cast<std::size_t>(a)] = f;
      if (frac * 2 <= 1) {
        nearest[static_cast<std::size_t>(a)] = f;
        t[static_cast<std::size_t>(a)] = frac * s;
      } else {
        nearest[static_cast<std::size_t>(a)] = f + 1;
        t[static_cast<std::size_t>(a)] = (1 - frac) * s;
      }
    }
    std::vector<int> order(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) order[static_cast<std::size_t>(a)] = a;
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
      return t[static_cast<std::size_t>(x)] < t[static_cast<std::size_t>(y)];
    });
    int j = -1;
    for (int k = 0; k <= d; ++k) {
      bool low = k == 0 || t[static_cast<std::size_t>(order[static_cast<std::size_t>(k - 1)])] < 2 * k * u;
      bool high = k == d || t[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] > (2 * k + 1) * u;
      if (low && high) {
        j = k;
        break;
      }
    }
    if (j < 0) throw ContractError("skeleton layout left point " + std::to_string(p) + " unclassified", p);
    std::vector<bool> fixed(static_cast<std::size_t>(d), false);
    for (int k = 0; k < j; ++k) fixed[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = true;
    std::vector<long> key;
    Box box;
    Rational alpha = 2 * j * u, beta = (2 * j + 1) * u;
    for (int a = 0; a < d; ++a) {
      auto ua = static_cast<std::size_t>(a);
      if (fixed[ua]) {
        key.push_back(1);
        key.push_back(nearest[ua]);
        Rational g = s * nearest[ua];
        box.lo.push_back(g - alpha);
        box.hi.push_back(g + alpha);
      } else {
        key.push_back(0);
        key.push_back(cell[ua]);
        Rational lo = s * cell[ua];
        box.lo.push_back(lo + beta);
        box.hi.push_back(lo + s - beta);
      }
    }
    b.classes[static_cast<std::size_t>(j)].try_emplace(key, std::move(box), p);
  }
  return finish(space, std::move(layout), b);
}

void check_layout(const SampledSpace& space, const BrickLayout& layout, const Rational& lambda) {
  if (layout.diameter_bound >= lambda) throw ContractError("brick diameter is not below the Lebesgue number");
  std::vector<Region> all;
  for (std::size_t c = 0; c < layout.classes.size(); ++c) {
    std::vector<Region> regs(layout.classes[c].begin(), layout.classes[c].end());
    auto dj = pairwise_disjoint_check(space, regs, layout.separation);
    if (!dj.disjoint) {
      throw ContractError("brick class " + std::to_string(c) + " is not separated", dj.shared_point);
    }
    all.insert(all.end(), regs.begin(), regs.end());
  }
  auto cov = covers_check(space, all, full_subset(space));
  if (!cov.covers) throw ContractError("brick layout misses a sample point", cov.uncovered);
}

}  // namespace

int brick_dimension(const SampledSpace& space) {
  switch (space.structure().kind) {
    case Structure::Kind::grid:
      return space.structure().dim;
    case Structure::Kind::cantor:
      return 0;
    case Structure::Kind::generic:
      break;
  }
  return space.coordinate_metric() ? space.dim() : 0;
}

BrickLayout brick_layout(const SampledSpace& space, const Rational& lambda) {
  if (lambda <= 0) throw InputError("Lebesgue number must be positive");
  int d = brick_dimension(space);
  if (d > 0 && d != space.dim()) throw InputError("grid dimension does not match the coordinates");
  BrickLayout layout;
  switch (d) {
    case 0:
      layout = layout_dim0(space, lambda);
      break;
    case 1:
      layout = layout_dim1(space, lambda);
      break;
    case 2:
      layout = layout_dim2(space, lambda);
      break;
    default:
      layout = layout_skeleton(space, lambda);
      break;
  }
  check_layout(space, layout, lambda);
  return layout;
}

DisjointFamily witness_class(const SampledSpace& space, const BrickLayout& layout, std::size_t cls,
                             const Cover& cover) {
  DisjointFamily fam;
  fam.separation = layout.separation;
  std::vector<Subset> inside = members_of(space, cover.regions);
  const auto& boxes = layout.classes.at(cls);
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    PointIndex p = layout.anchors[cls][i];
    std::optional<std::size_t> best;
    Rational best_radius(0);
    for (std::size_t r = 0; r < cover.regions.size(); ++r) {
      if (!inside[r].test(p)) continue;
      Rational rad = containment_radius(space, cover.regions[r], p);
      if (!best || rad > best_radius) {
        best = r;
        best_radius = rad;
      }
    }
    if (!best || contained_in(space, boxes[i], members(space, boxes[i]), cover.regions[*best], inside[*best]) ==
                     Containment::none) {
      throw ContractError("brick at point " + std::to_string(p) + " fits in no cover region", p);
    }
    fam.regions.push_back(boxes[i]);
    fam.witness.push_back(*best);
  }
  return fam;
}

std::vector<DisjointFamily> brick_refinement(const SampledSpace& space, const Cover& cover) {
  Rational lambda = lebesgue_number(space, cover);
  BrickLayout layout = brick_layout(space, lambda);
  std::vector<DisjointFamily> out;
  for (std::size_t c = 0; c < layout.classes.size(); ++c) out.push_back(witness_class(space, layout, c, cover));
  for (std::size_t c = 0; c < out.size(); ++c) {
    auto check = validate_family(space, out[c], cover, layout.separation);
    if (!check.ok) throw ContractError("brick class " + std::to_string(c) + " failed validation");
  }
  return out;
}

std::vector<std::optional<MemberRef>> family_assignment(const SampledSpace& space,
                                                        const std::vector<DisjointFamily>& families,
                                                        std::optional<PointIndex>& uncovered) {
  std::vector<std::optional<MemberRef>> out(space.size());
  for (std::size_t f = 0; f < families.size(); ++f) {
    for (std::size_t m = 0; m < families[f].regions.size(); ++m) {
      Subset s = members(space, families[f].regions[m]);
      for (auto p = s.find_first(); p != Subset::npos; p = s.find_next(p)) {
        if (!out[p]) out[p] = MemberRef(f, m);
      }
    }
  }
  uncovered.reset();
  for (PointIndex p = 0; p < space.size(); ++p) {
    if (!out[p]) {
      uncovered = p;
      break;
    }
  }
  return out;
}

ScSelection sc_fin_select(const SampledSpace& space, const CoverSeq& covers, bool require_full) {
  const int d = brick_dimension(space);
  const int block = d + 1;
  const int horizon = covers.horizon();
  if (require_full && horizon < block) {
    throw InputError("horizon " + std::to_string(horizon) + " is shorter than dimension + 1 = " +
                     std::to_string(block));
  }
  ScSelection out;
  for (int first = 1; first <= horizon; first += block) {
    int last = std::min(horizon, first + block - 1);
    Rational lambda;
    for (int n = first; n <= last; ++n) {
      Rational l = lebesgue_number(space, covers.at(n));
      if (n == first || l < lambda) lambda = l;
    }
    BrickLayout layout = brick_layout(space, lambda);
    for (int n = first; n <= last; ++n) {
      DisjointFamily fam = witness_class(space, layout, static_cast<std::size_t>(n - first), covers.at(n));
      auto check = validate_family(space, fam, covers.at(n), fam.separation);
      if (!check.ok) throw ContractError("family " + std::to_string(n) + " failed validation");
      out.families.push_back(std::move(fam));
      out.cell_sides.push_back(layout.cell_side);
    }
  }
  out.covering_witness = family_assignment(space, out.families, out.uncovered);
  if (require_full && out.uncovered) {
    throw ContractError("selection leaves point " + std::to_string(*out.uncovered) + " uncovered", out.uncovered);
  }
  return out;
}

FiniteCResult finite_c_search(const SampledSpace& space, const CoverSeq& covers) {
  FiniteCResult out;
  for (int n = 1; n <= covers.horizon(); ++n) {
    ScSelection sel = sc_fin_select(space, covers.slice(1, n), false);
    if (sel.covers()) {
      out.found = true;
      out.n = n;
      out.selection = std::move(sel);
      return out;
    }
    out.failures.emplace_back(n, *sel.uncovered);
  }
  return out;
}

}  // namespace cover_games
