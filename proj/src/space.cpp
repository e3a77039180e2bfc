#include "cover_games/space.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "cover_games/errors.hpp"

namespace cover_games {

namespace {

constexpr std::int64_t kMaxScale = std::int64_t{1} << 30;
constexpr std::int64_t kKeyLimit = std::int64_t{1} << 62;
constexpr int kCantorKeyBase = 64;

using i128 = __int128;

std::int64_t floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return static_cast<std::int64_t>(q);
}

// Least k >= 0 with 2^-k < r (strict) or 2^-k <= r.
int least_half_power_below(const Rational& r, bool strict) {
  Rational p(1);
  int k = 0;
  while (k <= kCantorKeyBase + 1) {
    if (strict ? (p < r) : (p <= r)) return k;
    p /= 2;
    ++k;
  }
  return k;
}

}  // namespace

std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::euclidean:
      return "euclidean";
    case MetricKind::chebyshev:
      return "chebyshev";
    case MetricKind::cantor_2adic:
      return "cantor_2adic";
  }
  return "euclidean";
}

MetricKind parse_metric_kind(const std::string& text) {
  if (text == "euclidean") return MetricKind::euclidean;
  if (text == "chebyshev") return MetricKind::chebyshev;
  if (text == "cantor_2adic") return MetricKind::cantor_2adic;
  throw InputError("unknown metric '" + text + "'");
}

SampledSpace::SampledSpace(std::string label, MetricKind metric, Rational mesh,
                           const std::vector<std::vector<Rational>>& points, Structure structure)
    : label_(std::move(label)),
      metric_(metric),
      mesh_(std::move(mesh)),
      structure_(std::move(structure)) {
  if (points.empty()) throw InputError("space '" + label_ + "' has no points");
  if (mesh_ <= 0) throw InputError("space '" + label_ + "' mesh must be positive");
  dim_ = static_cast<int>(points.front().size());
  if (dim_ < 1) throw InputError("space '" + label_ + "' points need at least one coordinate");
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != dim_) {
      throw InputError("space '" + label_ + "' mixes point dimensions");
    }
  }
  if (metric_ == MetricKind::cantor_2adic) {
    if (dim_ != 1) throw InputError("cantor_2adic metric needs one coordinate per point");
    for (const auto& p : points) {
      if (p[0] < 0 || p[0] > 1) throw InputError("cantor_2adic coordinates must lie in [0,1]");
    }
  }

  Integer common(1);
  for (const auto& p : points) {
    for (const auto& c : p) {
      mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), c.get_den_mpz_t());
      if (common > kMaxScale) {
        throw InputError("space '" + label_ + "' coordinate denominators exceed 2^30");
      }
    }
  }
  scale_ = common.get_si();

  size_ = points.size();
  coords_.reserve(size_ * static_cast<std::size_t>(dim_));
  std::int64_t max_abs = 0;
  for (const auto& p : points) {
    for (const auto& c : p) {
      Rational scaled = c * Rational(common);
      Integer v = scaled.get_num();
      if (!v.fits_slong_p() || abs(v) > kMaxScale * 4) {
        throw InputError("space '" + label_ + "' coordinates too large for exact representation");
      }
      coords_.push_back(v.get_si());
      max_abs = std::max(max_abs, std::abs(coords_.back()));
    }
  }
  i128 span = 2 * static_cast<i128>(max_abs);
  if (static_cast<i128>(dim_) * span * span >= kKeyLimit) {
    throw InputError("space '" + label_ + "' coordinates too large for exact representation");
  }

  std::vector<std::size_t> order(size_);
  std::iota(order.begin(), order.end(), 0);
  auto row = [&](std::size_t i) { return coords_.begin() + static_cast<std::ptrdiff_t>(i * dim_); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(row(a), row(a) + dim_, row(b), row(b) + dim_);
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (std::equal(row(order[i - 1]), row(order[i - 1]) + dim_, row(order[i]))) {
      throw InputError("space '" + label_ + "' has duplicate point at index " +
                       std::to_string(std::max(order[i - 1], order[i])));
    }
  }
}

Rational SampledSpace::coordinate(PointIndex p, int axis) const {
  Rational q(Integer(static_cast<long>(scaled_coordinate(p, axis))), Integer(static_cast<long>(scale_)));
  q.canonicalize();
  return q;
}

std::vector<Rational> SampledSpace::point(PointIndex p) const {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(dim_));
  for (int a = 0; a < dim_; ++a) out.push_back(coordinate(p, a));
  return out;
}

int SampledSpace::first_ternary_difference(PointIndex p, PointIndex q) const {
  i128 a = scaled_coordinate(p, 0);
  i128 b = scaled_coordinate(q, 0);
  i128 pow3 = 1;
  for (int k = 0; k < kCantorKeyBase; ++k) {
    if (floor_div(a * pow3, scale_) != floor_div(b * pow3, scale_)) return k;
    pow3 *= 3;
  }
  return kCantorKeyBase - 1;
}

std::int64_t SampledSpace::key(PointIndex p, PointIndex q) const {
  if (p == q) return 0;
  const std::int64_t* a = &coords_[p * static_cast<std::size_t>(dim_)];
  const std::int64_t* b = &coords_[q * static_cast<std::size_t>(dim_)];
  switch (metric_) {
    case MetricKind::euclidean: {
      std::int64_t sum = 0;
      for (int i = 0; i < dim_; ++i) {
        std::int64_t d = a[i] - b[i];
        sum += d * d;
      }
      return sum;
    }
    case MetricKind::chebyshev: {
      std::int64_t best = 0;
      for (int i = 0; i < dim_; ++i) {
        std::int64_t d = a[i] - b[i];
        best = std::max(best, d * d);
      }
      return best;
    }
    case MetricKind::cantor_2adic:
      return kCantorKeyBase - first_ternary_difference(p, q);
  }
  return 0;
}

Rational SampledSpace::key_to_distance_squared(std::int64_t key) const {
  if (key == 0) return Rational(0);
  if (metric_ == MetricKind::cantor_2adic) {
    unsigned long k = static_cast<unsigned long>(kCantorKeyBase - key);
    return half_power(2 * k);
  }
  Integer s(static_cast<long>(scale_));
  Rational q(Integer(static_cast<long>(key)), s * s);
  q.canonicalize();
  return q;
}

KeyBounds SampledSpace::bounds(const Rational& radius) const {
  KeyBounds out;
  if (radius <= 0) {
    out.open = -1;
    out.closed = radius == 0 ? 0 : -1;
    return out;
  }
  if (metric_ == MetricKind::cantor_2adic) {
    out.open = std::max(0, kCantorKeyBase - least_half_power_below(radius, true));
    out.closed = std::max(0, kCantorKeyBase - least_half_power_below(radius, false));
    return out;
  }
  Integer s(static_cast<long>(scale_));
  Rational threshold = radius * radius * Rational(s * s);
  out.open = saturate_int64(ceil(threshold) - 1);
  out.closed = saturate_int64(floor(threshold));
  return out;
}

bool SampledSpace::triangle_holds(PointIndex a, PointIndex b, PointIndex c) const {
  if (metric_ == MetricKind::cantor_2adic) {
    if (a == c) return true;
    if (a == b || b == c) return true;
    int kab = first_ternary_difference(a, b);
    int kbc = first_ternary_difference(b, c);
    int kac = first_ternary_difference(a, c);
    int m = std::min(kab, kbc);
    return kac >= m || (kac == m - 1 && kab == m && kbc == m);
  }
  i128 x = key(a, b);
  i128 y = key(b, c);
  i128 z = key(a, c);
  i128 w = z - x - y;
  if (w <= 0) return true;
  return w * w <= 4 * x * y;
}

Rational SampledSpace::distance_squared_to(PointIndex p, const std::vector<Rational>& x) const {
  Rational acc(0);
  for (int i = 0; i < dim_; ++i) {
    Rational d = coordinate(p, i) - x[static_cast<std::size_t>(i)];
    Rational d2 = d * d;
    if (metric_ == MetricKind::chebyshev) {
      if (d2 > acc) acc = d2;
    } else {
      acc += d2;
    }
  }
  return acc;
}

bool Diameter::less_than(const Rational& bound) const {
  if (empty) return true;
  if (bound <= 0) return false;
  return squared < bound * bound;
}

std::optional<Rational> Diameter::exact() const {
  Rational root;
  if (exact_sqrt(squared, root)) return root;
  return std::nullopt;
}

Diameter diameter(const SampledSpace& space, const Subset& subset) {
  Diameter out;
  std::vector<PointIndex> members = indices_of(subset);
  if (members.empty()) return out;
  out.empty = false;
  std::int64_t best = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      best = std::max(best, space.key(members[i], members[j]));
    }
  }
  out.squared = space.key_to_distance_squared(best);
  return out;
}

Subset full_subset(const SampledSpace& space) {
  Subset s(space.size());
  s.set();
  return s;
}

Subset subset_of(const SampledSpace& space, const std::vector<PointIndex>& members) {
  Subset s(space.size());
  for (PointIndex p : members) {
    if (p >= space.size()) throw InputError("point index " + std::to_string(p) + " out of range");
    s.set(p);
  }
  return s;
}

std::vector<PointIndex> indices_of(const Subset& subset) {
  std::vector<PointIndex> out;
  out.reserve(subset.count());
  for (auto i = subset.find_first(); i != Subset::npos; i = subset.find_next(i)) out.push_back(i);
  return out;
}

Schedule::Schedule(Kind kind, std::vector<Rational> values) : kind_(kind), values_(std::move(values)) {
  if (values_.empty()) throw InputError("schedule must have at least one value");
  for (const auto& v : values_) {
    if (v <= 0) throw InputError("schedule values must be positive");
  }
}

Schedule Schedule::epsilon(std::vector<Rational> values) {
  return Schedule(Kind::epsilon, std::move(values));
}

Schedule Schedule::delta_netting(int horizon) {
  if (horizon < 1) throw InputError("horizon must be at least 1");
  std::vector<Rational> values;
  for (int n = 1; n <= horizon; ++n) {
    values.emplace_back(Integer(1), two_pow_two_pow(static_cast<unsigned>(n)));
  }
  return Schedule(Kind::delta_netting, std::move(values));
}

Schedule Schedule::delta_haver(const Schedule& epsilons) {
  std::vector<Rational> values;
  for (int n = 1; n <= epsilons.horizon(); ++n) {
    Integer big = two_pow_two_pow(static_cast<unsigned>(n));
    Rational factor(big - 1, big);
    factor.canonicalize();
    values.push_back(factor * (epsilons.at(n) / 2));
  }
  return Schedule(Kind::delta_haver, std::move(values));
}

const Rational& Schedule::at(int n) const {
  if (n < 1 || n > horizon()) throw InputError("schedule index " + std::to_string(n) + " out of range");
  return values_[static_cast<std::size_t>(n - 1)];
}

std::size_t default_point_cap() {
  if (const char* env = std::getenv("COVER_GAMES_POINT_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::size_t{1} << 20;
}

SampledSpace build_grid_space(int dim, const Rational& h, MetricKind metric, std::size_t point_cap) {
  if (dim < 1 || dim > 3) throw InputError("grid dimension must be 1..3");
  if (h <= 0 || h > Rational(1, 2)) throw InputError("grid resolution must satisfy 0 < h <= 1/2");
  if (metric == MetricKind::cantor_2adic) throw InputError("grid spaces use euclidean or chebyshev metrics");
  Rational inverse = 1 / h;
  if (inverse.get_den() != 1) throw InputError("grid resolution must have integral 1/h");
  long steps = inverse.get_num().get_si();
  long double count = 1;
  for (int i = 0; i < dim; ++i) count *= static_cast<long double>(steps + 1);
  if (count > static_cast<long double>(point_cap)) {
    throw ResourceError("grid would have " + std::to_string(static_cast<unsigned long long>(count)) +
                        " points, above cap " + std::to_string(point_cap));
  }
  std::size_t n = static_cast<std::size_t>(count);
  std::vector<std::vector<Rational>> points;
  points.reserve(n);
  std::vector<long> idx(static_cast<std::size_t>(dim), 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> p;
    for (int a = 0; a < dim; ++a) p.push_back(h * idx[static_cast<std::size_t>(a)]);
    points.push_back(std::move(p));
    for (int a = dim - 1; a >= 0; --a) {
      if (++idx[static_cast<std::size_t>(a)] <= steps) break;
      idx[static_cast<std::size_t>(a)] = 0;
    }
  }
  Rational factor = metric == MetricKind::euclidean ? sqrt_upper(Rational(dim)) : Rational(1);
  Rational mesh = h * factor / 2;
  std::string label = "grid" + std::to_string(dim) + "_h" + inverse.get_num().get_str();
  if (metric != MetricKind::euclidean) label += "_" + to_string(metric);
  Structure structure{Structure::Kind::grid, dim, h};
  return SampledSpace(label, metric, mesh, points, structure);
}

SampledSpace build_cantor_space(int depth, MetricKind metric, std::size_t point_cap) {
  if (depth < 1) throw InputError("cantor depth must be positive");
  if (depth > 16) throw ResourceError("cantor depth above cap 16");
  std::size_t n = std::size_t{1} << depth;
  if (n > point_cap) throw ResourceError("cantor sample above point cap");
  if (metric == MetricKind::chebyshev) metric = MetricKind::euclidean;  // identical in one dimension
  std::vector<std::vector<Rational>> points;
  points.reserve(n);
  for (std::size_t mask = 0; mask < n; ++mask) {
    Rational x(0);
    Rational third(1, 3);
    Rational place = third;
    for (int i = depth - 1; i >= 0; --i) {
      if ((mask >> i) & 1U) x += 2 * place;
      place *= third;
    }
    points.push_back({x});
  }
  Integer pow3;
  mpz_ui_pow_ui(pow3.get_mpz_t(), 3, static_cast<unsigned long>(depth));
  Rational mesh(Integer(1), pow3);
  std::string label = "cantor_d" + std::to_string(depth);
  if (metric == MetricKind::cantor_2adic) label = "cantor2adic_d" + std::to_string(depth);
  Structure structure{Structure::Kind::cantor, 0, mesh};
  return SampledSpace(label, metric, mesh, points, structure);
}

std::vector<std::string> builtin_space_labels() {
  std::vector<std::string> out{"point"};
  for (int k : {2, 4, 8, 16, 32, 64, 128, 256, 512, 1024}) out.push_back("interval_h" + std::to_string(k));
  for (int k : {4, 8, 16, 32, 64}) out.push_back("square_h" + std::to_string(k));
  for (int k : {8, 16}) out.push_back("square_euclid_h" + std::to_string(k));
  for (int k : {4, 8}) out.push_back("cube_h" + std::to_string(k));
  for (int d = 1; d <= 10; ++d) out.push_back("cantor_d" + std::to_string(d));
  for (int d = 1; d <= 8; ++d) out.push_back("cantor2adic_d" + std::to_string(d));
  return out;
}

SampledSpace builtin_space(const std::string& label, std::size_t point_cap) {
  auto number_after = [&](const std::string& prefix) -> std::optional<int> {
    if (label.rfind(prefix, 0) != 0) return std::nullopt;
    std::string rest = label.substr(prefix.size());
    if (rest.empty() || !std::all_of(rest.begin(), rest.end(), ::isdigit) || rest.size() > 6) {
      return std::nullopt;
    }
    return std::stoi(rest);
  };
  const auto labels = builtin_space_labels();
  if (std::find(labels.begin(), labels.end(), label) == labels.end()) {
    throw InputError("unknown built-in space '" + label + "'");
  }
  if (label == "point") {
    Structure structure{Structure::Kind::cantor, 0, Rational(1)};
    return SampledSpace("point", MetricKind::euclidean, Rational(1, 2), {{Rational(0)}}, structure);
  }
  auto relabel = [&](const SampledSpace& s) {
    std::vector<std::vector<Rational>> pts;
    pts.reserve(s.size());
    for (PointIndex p = 0; p < s.size(); ++p) pts.push_back(s.point(p));
    return SampledSpace(label, s.metric(), s.mesh(), pts, s.structure());
  };
  if (auto k = number_after("interval_h")) {
    return relabel(build_grid_space(1, Rational(1, *k), MetricKind::euclidean, point_cap));
  }
  if (auto k = number_after("square_euclid_h")) {
    return relabel(build_grid_space(2, Rational(1, *k), MetricKind::euclidean, point_cap));
  }
  if (auto k = number_after("square_h")) {
    return relabel(build_grid_space(2, Rational(1, *k), MetricKind::chebyshev, point_cap));
  }
  if (auto k = number_after("cube_h")) {
    return relabel(build_grid_space(3, Rational(1, *k), MetricKind::chebyshev, point_cap));
  }
  if (auto d = number_after("cantor2adic_d")) {
    return build_cantor_space(*d, MetricKind::cantor_2adic, point_cap);
  }
  if (auto d = number_after("cantor_d")) {
    return build_cantor_space(*d, MetricKind::euclidean, point_cap);
  }
  throw InputError("unknown built-in space '" + label + "'");
}

}  // namespace cover_games
