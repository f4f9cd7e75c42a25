#include "horo/horoball.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

namespace horo {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const std::vector<std::int64_t>& coords(const GroupElement& x, std::size_t dim, const char* what) {
  const auto* v = std::get_if<IntVector>(&x);
  if (v == nullptr || v->coords.size() != dim) {
    throw InputError(std::string(what) + " expects a vector of dimension " + std::to_string(dim) + ", got " +
                     to_string(x));
  }
  return v->coords;
}

std::int64_t shape_l1(std::int64_t a, std::int64_t b, int h1, int h2) {
  auto term = [](std::int64_t d, int h) { return h != 0 ? -h * d : (d < 0 ? -d : d); };
  return term(a, h1) + term(b, h2);
}

int sign(std::int64_t v) { return (v > 0) - (v < 0); }

__int128 dot(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  __int128 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<__int128>(a[i]) * b[i];
  return s;
}

std::int64_t norm_sq(const std::vector<std::int64_t>& a) { return static_cast<std::int64_t>(dot(a, a)); }

const ZdLp& require_zd(const MetricGroup& group, Norm norm, const char* what) {
  const auto* z = std::get_if<ZdLp>(&group.descriptor());
  if (z == nullptr || z->norm != norm) {
    throw InputError(std::string(what) + " requires Z^d with the " + std::string(to_string(norm)) + " norm");
  }
  return *z;
}

// a < b + c with a, b, c >= 0 given by a^2 = s, b^2 = t; exact for dyadic c.
bool sqrt_below_sum(std::int64_t s, std::int64_t t, long double c) {
  long double d = static_cast<long double>(s) - static_cast<long double>(t) - c * c;
  if (d < 0) return true;
  return d * d < 4.0L * c * c * static_cast<long double>(t);
}

// a^2 < b with b given as a square of a nonnegative real.
bool sq_below(std::int64_t s, long double r) { return static_cast<long double>(s) < r * r; }

template <class F>
void for_box(std::size_t dim, std::int64_t reach, F&& f) {
  std::vector<std::int64_t> p(dim, -reach);
  while (true) {
    f(p);
    std::size_t i = 0;
    while (i < p.size() && p[i] == reach) p[i++] = -reach;
    if (i == p.size()) break;
    ++p[i];
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// PolyhedralZ2

std::string_view to_string(PolyhedralKind k) {
  switch (k) {
    case PolyhedralKind::HalfplaneDiagonal: return "halfplane-diagonal";
    case PolyhedralKind::HalfplaneAntidiagonal: return "halfplane-antidiagonal";
    case PolyhedralKind::HalfplaneAxis: return "halfplane-axis";
    case PolyhedralKind::QuarterSpace: return "quarter-space";
  }
  return "?";
}

std::int64_t PolyhedralZ2::twice_value(std::int64_t x, std::int64_t y) const {
  std::int64_t a = x - apex[0];
  std::int64_t b = y - apex[1];
  if (norm == Norm::L1) return 2 * shape_l1(a, b, heading[0], heading[1]);
  return shape_l1(a + b, a - b, sign(heading[0] + heading[1]), sign(heading[0] - heading[1]));
}

PolyhedralKind PolyhedralZ2::kind() const {
  bool diagonal = heading[0] != 0 && heading[1] != 0;
  if (norm == Norm::L1) {
    if (!diagonal) return PolyhedralKind::QuarterSpace;
    return heading[0] == heading[1] ? PolyhedralKind::HalfplaneAntidiagonal : PolyhedralKind::HalfplaneDiagonal;
  }
  return diagonal ? PolyhedralKind::QuarterSpace : PolyhedralKind::HalfplaneAxis;
}

PolyhedralZ2 PolyhedralZ2::translated(std::int64_t dx, std::int64_t dy) const {
  PolyhedralZ2 out = *this;
  out.apex = {apex[0] + dx, apex[1] + dy};
  return out;
}

PolyhedralZ2 PolyhedralZ2::from_ray(Norm norm, std::array<int, 2> heading, std::array<std::int64_t, 2> offset) {
  for (int h : heading) {
    if (h < -1 || h > 1) throw InputError("polyhedral heading entries must lie in {-1, 0, 1}");
  }
  if (heading[0] == 0 && heading[1] == 0) throw InputError("polyhedral heading must be nonzero");
  if (norm != Norm::L1 && norm != Norm::Linf) throw InputError("polyhedral horofunctions need the l1 or linf norm");
  PolyhedralZ2 out{norm, heading, {0, 0}};
  bool diagonal = heading[0] != 0 && heading[1] != 0;
  if (norm == Norm::L1 && !diagonal) {
    int axis = heading[0] != 0 ? 0 : 1;
    int other = 1 - axis;
    std::int64_t q = offset[static_cast<std::size_t>(other)];
    out.apex[static_cast<std::size_t>(other)] = q;
    out.apex[static_cast<std::size_t>(axis)] = -heading[static_cast<std::size_t>(axis)] * (q < 0 ? -q : q);
  } else if (norm == Norm::Linf && diagonal) {
    std::int64_t m = std::max(heading[0] * offset[0], heading[1] * offset[1]);
    out.apex = {offset[0] - m * heading[0], offset[1] - m * heading[1]};
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sequences

SequenceRule SequenceRule::ray(std::vector<std::int64_t> direction, std::vector<std::int64_t> offset) {
  if (std::all_of(direction.begin(), direction.end(), [](std::int64_t c) { return c == 0; })) {
    throw InputError("ray direction must be nonzero");
  }
  if (offset.empty()) offset.assign(direction.size(), 0);
  if (offset.size() != direction.size()) throw InputError("ray offset and direction differ in dimension");
  return SequenceRule{Kind::Ray, std::move(direction), std::move(offset), {}};
}

SequenceRule SequenceRule::list(std::vector<GroupElement> elements) {
  if (elements.empty()) throw InputError("explicit sequence must be nonempty");
  return SequenceRule{Kind::Explicit, {}, {}, std::move(elements)};
}

GroupElement SequenceRule::at(std::int64_t n, const MetricGroup& group) const {
  if (n < 1) throw InputError("sequence indices start at 1");
  switch (kind) {
    case Kind::Ray: {
      std::vector<std::int64_t> p(direction.size());
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = offset[i] + n * direction[i];
      GroupElement g = vec(std::move(p));
      group.check(g);
      return g;
    }
    case Kind::Basis: {
      if (auto d = group.lattice_dimension()) {
        if (n > *d) throw InputError("basis sequence exhausted at index " + std::to_string(n));
        std::vector<std::int64_t> p(static_cast<std::size_t>(*d), 0);
        p[static_cast<std::size_t>(n - 1)] = 1;
        return vec(std::move(p));
      }
      GroupElement g = sparse({{n, 1}});
      group.check(g);
      return g;
    }
    case Kind::Explicit:
      if (n > static_cast<std::int64_t>(elements.size())) {
        throw InputError("explicit sequence has only " + std::to_string(elements.size()) + " terms");
      }
      return elements[static_cast<std::size_t>(n - 1)];
  }
  throw InputError("unknown sequence kind");
}

std::optional<std::int64_t> SequenceRule::length() const {
  if (kind == Kind::Explicit) return static_cast<std::int64_t>(elements.size());
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Evaluation

HoroValue eval(const Horofunction& j, const GroupElement& x) {
  return std::visit(
      overloaded{
          [&](const Linear& l) {
            const auto& p = coords(x, l.v.size(), "linear horofunction");
            HoroValue out;
            if (l.integer_direction) {
              const auto& d = *l.integer_direction;
              out.value = static_cast<double>(dot(p, d)) / std::sqrt(static_cast<double>(norm_sq(d)));
            } else {
              double s = 0;
              for (std::size_t i = 0; i < p.size(); ++i) s += static_cast<double>(p[i]) * l.v[i];
              out.value = s;
            }
            return out;
          },
          [&](const PolyhedralZ2& h) {
            const auto& p = coords(x, 2, "polyhedral horofunction");
            return HoroValue{h.value(p[0], p[1]), std::nullopt, false};
          },
          [&](const Sampled& s) {
            if (!s.group) throw InputError("sampled horofunction has no group");
            if (s.truncation < 1) throw InputError("truncation index must be >= 1");
            s.group->check(x);
            HoroValue out;
            out.value = s.group->busemann(s.rule.at(s.truncation, *s.group), x);
            std::int64_t first = s.truncation - s.truncation / 4;
            std::int64_t count = s.truncation - first + 1;
            std::int64_t stride = std::max<std::int64_t>(1, (count + 1023) / 1024);
            double lo = out.value;
            double hi = out.value;
            for (std::int64_t n = first; n < s.truncation; n += stride) {
              double b = s.group->busemann(s.rule.at(n, *s.group), x);
              lo = std::min(lo, b);
              hi = std::max(hi, b);
            }
            out.span = hi - lo;
            out.unstable = *out.span > s.tolerance;
            return out;
          },
      },
      j);
}

std::string describe(const Horofunction& j) {
  return std::visit(overloaded{
                        [](const Linear& l) {
                          std::string s = "linear v=(";
                          for (std::size_t i = 0; i < l.v.size(); ++i) {
                            if (i) s += ",";
                            s += std::to_string(l.v[i]);
                          }
                          return s + ")";
                        },
                        [](const PolyhedralZ2& h) {
                          return std::string(to_string(h.kind())) + " " + std::string(to_string(h.norm)) +
                                 " heading=(" + std::to_string(h.heading[0]) + "," + std::to_string(h.heading[1]) +
                                 ") apex=(" + std::to_string(h.apex[0]) + "," + std::to_string(h.apex[1]) + ")";
                        },
                        [](const Sampled& s) {
                          return "sampled on " + (s.group ? s.group->describe() : std::string("?")) +
                                 " n*=" + std::to_string(s.truncation);
                        },
                    },
                    j);
}

bool Horoball::contains(const GroupElement& x) const {
  if (const auto* l = std::get_if<Linear>(&j_); l && l->integer_direction) {
    return dot(coords(x, l->v.size(), "linear horofunction"), *l->integer_direction) < 0;
  }
  if (const auto* h = std::get_if<PolyhedralZ2>(&j_)) {
    const auto& p = coords(x, 2, "polyhedral horofunction");
    return h->twice_value(p[0], p[1]) < 0;
  }
  return eval(j_, x).value < 0;
}

bool Horoball::contains(std::int64_t x, std::int64_t y) const {
  if (const auto* l = std::get_if<Linear>(&j_)) {
    if (l->v.size() != 2) throw InputError("planar membership on a horofunction of dimension " +
                                           std::to_string(l->v.size()));
    if (l->integer_direction) {
      const auto& d = *l->integer_direction;
      return static_cast<__int128>(x) * d[0] + static_cast<__int128>(y) * d[1] < 0;
    }
    return static_cast<double>(x) * l->v[0] + static_cast<double>(y) * l->v[1] < 0;
  }
  if (const auto* h = std::get_if<PolyhedralZ2>(&j_)) return h->twice_value(x, y) < 0;
  return eval(j_, vec({x, y})).value < 0;
}

Linear linear_horofunction(std::vector<std::int64_t> direction) {
  if (direction.empty()) throw InputError("direction must have dimension >= 1");
  std::int64_t n2 = norm_sq(direction);
  if (n2 == 0) throw InputError("horoball normal must be nonzero");
  double n = std::sqrt(static_cast<double>(n2));
  Linear l;
  for (auto c : direction) l.v.push_back(static_cast<double>(c) / n);
  l.integer_direction = std::move(direction);
  return l;
}

Horoball l2_horoball(std::vector<double> v) {
  double n2 = 0;
  for (double c : v) {
    if (!std::isfinite(c)) throw InputError("horoball normal must be finite");
    n2 += c * c;
  }
  if (v.empty() || n2 == 0) throw InputError("horoball normal must be nonzero");
  // Integral inputs (after normalization or not) keep an exact direction.
  bool integral = std::all_of(v.begin(), v.end(), [](double c) { return c == std::trunc(c) && std::abs(c) < 1e15; });
  if (integral) {
    std::vector<std::int64_t> d;
    for (double c : v) d.push_back(static_cast<std::int64_t>(c));
    return Horoball(linear_horofunction(std::move(d)));
  }
  double n = std::sqrt(n2);
  for (double& c : v) c /= n;
  return Horoball(Linear{std::move(v), std::nullopt});
}

Horoball l2_horoball(std::vector<std::int64_t> direction) { return Horoball(linear_horofunction(std::move(direction))); }

Linear l2_limit_of_ray(std::vector<std::int64_t> u) {
  for (auto& c : u) c = -c;
  return linear_horofunction(std::move(u));
}

std::vector<PolyhedralZ2> enumerate_polyhedral_horoballs_z2(int radius, Norm norm) {
  if (radius < 0) throw InputError("window radius must be >= 0");
  std::vector<PolyhedralZ2> candidates;
  const std::array<std::array<int, 2>, 4> diagonal{{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}};
  const std::array<std::array<int, 2>, 4> axis{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
  std::int64_t reach = 2 * static_cast<std::int64_t>(radius) + 2;
  const auto& single = norm == Norm::L1 ? diagonal : axis;
  const auto& families = norm == Norm::L1 ? axis : diagonal;
  for (const auto& h : single) candidates.push_back(PolyhedralZ2::from_ray(norm, h, {0, 0}));
  for (const auto& h : families) {
    for (std::int64_t q = -reach; q <= reach; ++q) {
      std::array<std::int64_t, 2> offset{q, 0};
      if (h[1] == 0) offset = {0, q};
      candidates.push_back(PolyhedralZ2::from_ray(norm, h, offset));
    }
  }
  std::set<std::vector<std::uint8_t>> seen;
  std::vector<PolyhedralZ2> out;
  for (const auto& c : candidates) {
    if (seen.insert(raster(Horoball(c), radius)).second) out.push_back(c);
  }
  return out;
}

std::vector<std::uint8_t> raster(const Horoball& h, int radius) {
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(2 * radius + 1) * static_cast<std::size_t>(2 * radius + 1));
  for (std::int64_t y = radius; y >= -radius; --y) {
    for (std::int64_t x = -radius; x <= radius; ++x) out.push_back(h.contains(x, y) ? 255 : 0);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Largeness

bool ball_inside(const MetricGroup& group, const Horoball& h, const GroupElement& center, double radius) {
  for (const auto& x : group.ball(center, radius, false)) {
    if (!h.contains(x)) return false;
  }
  return true;
}

LargenessResult largeness_certificate(const MetricGroup& group, const Horoball& h, double radius,
                                      double search_bound) {
  if (!(radius > 0)) throw InputError("largeness radius must be > 0");
  LargenessResult out;
  out.radius = radius;
  auto candidates = group.ball(group.identity(), search_bound, true);
  std::vector<std::pair<Distance, GroupElement>> ordered;
  ordered.reserve(candidates.size());
  for (auto& g : candidates) ordered.emplace_back(group.norm(g), std::move(g));
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  double threshold = -4.0 * radius;
  for (const auto& [n, g] : ordered) {
    ++out.candidates_examined;
    double value = eval(h.horofunction(), g).value;
    if (!(value < threshold)) continue;
    if (!ball_inside(group, h, g, radius)) continue;
    out.found = true;
    out.center = g;
    out.center_value = value;
    return out;
  }
  out.note = "not found within bound " + std::to_string(search_bound) +
             ": no element with value below -4R; bounded search, not a proof that the horoball is small";
  return out;
}

// ---------------------------------------------------------------------------
// Meeting radius

MeetingRadiusReport meeting_radius(const MetricGroup& group, const std::vector<std::vector<double>>& directions) {
  const auto& z = require_zd(group, Norm::L2, "meeting_radius");
  auto dim = static_cast<std::size_t>(z.dimension);
  MeetingRadiusReport out;
  for (const auto& v : directions) {
    if (v.size() != dim) throw InputError("grid direction has the wrong dimension");
    if (std::all_of(v.begin(), v.end(), [](double c) { return c == 0; })) {
      throw InputError("grid direction must be nonzero");
    }
    std::optional<std::vector<std::int64_t>> best;
    std::int64_t best_sq = 0;
    for (std::int64_t r = 1;; ++r) {
      for_box(dim, r, [&](const std::vector<std::int64_t>& p) {
        long double s = 0;
        for (std::size_t i = 0; i < dim; ++i) s += static_cast<long double>(p[i]) * v[i];
        if (!(s < 0)) return;
        std::int64_t n2 = norm_sq(p);
        if (!best || n2 < best_sq || (n2 == best_sq && p < *best)) {
          best = p;
          best_sq = n2;
        }
      });
      if (best && best_sq <= r * r) break;
    }
    std::int64_t n = 1;
    while (n * n <= best_sq) ++n;
    out.radius = std::max(out.radius, n);
    out.witnesses.push_back(MeetingWitness{v, vec(*best), n});
  }
  return out;
}

std::vector<std::vector<double>> circle_grid(std::size_t count) {
  std::vector<std::vector<double>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(count);
    out.push_back({std::cos(a), std::sin(a)});
  }
  return out;
}

std::vector<std::vector<double>> sphere_grid(std::size_t count) {
  std::vector<std::vector<double>> out;
  out.reserve(count);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < count; ++i) {
    double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double a = golden * static_cast<double>(i);
    out.push_back({r * std::cos(a), r * std::sin(a), z});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tangency

TangencyCheck tangency_check(const MetricGroup& group, double m, double eps, const GroupElement& g) {
  const auto& z = require_zd(group, Norm::L2, "tangency check");
  auto dim = static_cast<std::size_t>(z.dimension);
  if (!(m >= 0) || !(eps > 0)) throw InputError("tangency check needs M >= 0 and eps > 0");
  const auto& gc = coords(g, dim, "tangency check");
  TangencyCheck out;
  std::int64_t t = norm_sq(gc);
  if (t == 0) {
    out.reason = "no direction: g is the identity";
    return out;
  }
  out.horofunction = linear_horofunction(gc);
  auto reach = static_cast<std::int64_t>(std::floor(m));
  std::optional<std::vector<std::int64_t>> bad;
  for_box(dim, reach, [&](const std::vector<std::int64_t>& p) {
    if (bad) return;
    if (dot(p, gc) > 0 || static_cast<long double>(norm_sq(p)) > static_cast<long double>(m) * m) return;
    std::vector<std::int64_t> q(dim);
    for (std::size_t i = 0; i < dim; ++i) q[i] = p[i] + gc[i];
    if (!sqrt_below_sum(norm_sq(q), t, eps)) bad = p;
  });
  if (bad) {
    out.offending = vec(*bad);
    out.reason = "translate of " + to_string(*out.offending) + " leaves the enlarged ball";
    return out;
  }
  out.passed = true;
  return out;
}

TangencyReport verify_tangency(const MetricGroup& group, double m, double eps, const std::vector<std::int64_t>& ray,
                               std::int64_t n_max) {
  if (n_max < 1) throw InputError("n_max must be >= 1");
  if (norm_sq(ray) == 0) throw InputError("tangency ray must be nonzero");
  TangencyReport out;
  out.n_max = n_max;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    std::vector<std::int64_t> g(ray.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = n * ray[i];
    auto check = tangency_check(group, m, eps, vec(g));
    if (!check.passed) {
      out.failing.push_back(n);
      out.last_offending = check.offending;
    }
  }
  std::int64_t start = out.failing.empty() ? 1 : out.failing.back() + 1;
  if (start <= n_max) {
    out.n0 = start;
    out.n0_norm = static_cast<double>(start) * std::sqrt(static_cast<double>(norm_sq(ray)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cone shift

bool RationalCone::contains(std::int64_t x, std::int64_t y) const {
  auto cross = [](std::int64_t a0, std::int64_t a1, std::int64_t b0, std::int64_t b1) {
    return static_cast<__int128>(a0) * b1 - static_cast<__int128>(a1) * b0;
  };
  __int128 span = cross(from[0], from[1], to[0], to[1]);
  bool after_from = cross(from[0], from[1], x, y) > 0;
  if (span == 0) return after_from;
  return after_from && cross(x, y, to[0], to[1]) > 0;
}

ConeShiftReport verify_cone_shift(const RationalCone& cone, double eta, const GroupElement& g, std::int64_t r_max,
                                  bool check_precondition) {
  if (!(eta >= 0)) throw InputError("eta must be >= 0");
  if (r_max < 1) throw InputError("r_max must be >= 1");
  for (const auto& u : {cone.from, cone.to}) {
    if (u[0] == 0 && u[1] == 0) throw InputError("cone extreme directions must be nonzero");
  }
  __int128 span = static_cast<__int128>(cone.from[0]) * cone.to[1] - static_cast<__int128>(cone.from[1]) * cone.to[0];
  __int128 along = static_cast<__int128>(cone.from[0]) * cone.to[0] + static_cast<__int128>(cone.from[1]) * cone.to[1];
  if (span < 0 || (span == 0 && along > 0)) throw InputError("cone must open counterclockwise by at most a half-turn");
  const auto& gc = coords(g, 2, "cone shift");

  ConeShiftReport out;
  out.r_max = r_max;
  out.precondition_checked = check_precondition;
  out.precondition_value = -std::numeric_limits<double>::infinity();
  for (const auto& u : {cone.from, cone.to}) {
    std::vector<std::int64_t> uu{u[0], u[1]};
    __int128 d = dot(gc, uu);
    long double n2 = static_cast<long double>(norm_sq(uu));
    out.precondition_value =
        std::max(out.precondition_value, static_cast<double>(static_cast<long double>(d) / std::sqrt(n2)));
    bool ok = d < 0 && static_cast<long double>(d) * static_cast<long double>(d) > static_cast<long double>(eta) * eta * n2;
    if (check_precondition && !ok) {
      throw InputError("precondition fails on extreme direction (" + std::to_string(u[0]) + "," +
                       std::to_string(u[1]) + "): <g,u>/|u| must be below -eta");
    }
  }

  for (std::int64_t r = 1; r <= r_max; ++r) {
    long double outer = static_cast<long double>(r) + eta;
    auto reach = static_cast<std::int64_t>(std::ceil(outer));
    std::optional<std::vector<std::int64_t>> bad;
    for (std::int64_t x = -reach; x <= reach && !bad; ++x) {
      for (std::int64_t y = -reach; y <= reach; ++y) {
        if (!cone.contains(x, y) || !sq_below(x * x + y * y, outer)) continue;
        std::int64_t qx = x + gc[0];
        std::int64_t qy = y + gc[1];
        if (qx * qx + qy * qy >= r * r) {
          bad = std::vector<std::int64_t>{x, y};
          break;
        }
      }
    }
    if (bad) {
      out.failing.push_back(r);
      out.last_offending = vec(*bad);
    }
  }
  std::int64_t start = out.failing.empty() ? 1 : out.failing.back() + 1;
  if (start <= r_max) out.n1 = start;
  return out;
}

}  // namespace horo
