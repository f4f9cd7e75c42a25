#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace oracle {

double norm(Lp p, std::int64_t x, std::int64_t y) {
  double ax = std::fabs(static_cast<double>(x));
  double ay = std::fabs(static_cast<double>(y));
  switch (p) {
    case Lp::L1:
      return ax + ay;
    case Lp::L2:
      return std::sqrt(ax * ax + ay * ay);
    case Lp::Linf:
      return std::max(ax, ay);
  }
  return 0;
}

std::vector<Point> ball_z2(Lp p, Point c, double r, bool closed) {
  std::vector<Point> out;
  auto b = static_cast<std::int64_t>(std::ceil(r)) + 1;
  for (std::int64_t x = c[0] - b; x <= c[0] + b; ++x) {
    for (std::int64_t y = c[1] - b; y <= c[1] + b; ++y) {
      double d = norm(p, x - c[0], y - c[1]);
      if (closed ? d <= r : d < r) out.push_back({x, y});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double busemann_z2(Lp p, Point g, Point x) { return norm(p, g[0] - x[0], g[1] - x[1]) - norm(p, g[0], g[1]); }

std::vector<std::uint32_t> ledrappier_fillings(int n) {
  const int side = 2 * n + 1;
  const int cells = side * side;
  auto bit = [&](std::uint32_t m, int x, int y) { return (m >> ((y + n) * side + (x + n))) & 1U; };
  std::vector<std::uint32_t> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << cells); ++m) {
    auto mm = static_cast<std::uint32_t>(m);
    bool ok = true;
    for (int y = -n; y < n && ok; ++y) {
      for (int x = -n; x < n && ok; ++x) ok = ((bit(mm, x, y) ^ bit(mm, x + 1, y) ^ bit(mm, x, y + 1)) == 0);
    }
    if (ok) out.push_back(mm);
  }
  return out;
}

Split halfplane_split(int n, int k, std::int64_t a, std::int64_t b) {
  const int side = 2 * n + 1;
  Split s;
  s.known.assign(static_cast<std::size_t>(side * side), false);
  s.target.assign(static_cast<std::size_t>(side * side), false);
  for (int y = -n; y <= n; ++y) {
    for (int x = -n; x <= n; ++x) {
      bool in_d = false;
      for (int tx = -(k - 1); tx <= k - 1 && !in_d; ++tx) {
        for (int ty = -(k - 1); ty <= k - 1 && !in_d; ++ty) in_d = (x - tx) * a + (y - ty) * b < 0;
      }
      auto i = static_cast<std::size_t>((y + n) * side + (x + n));
      s.known[i] = in_d;
      s.target[i] = !in_d && std::abs(x) <= k - 1 && std::abs(y) <= k - 1;
    }
  }
  return s;
}

Verdict halfplane_verdict(const std::vector<std::uint32_t>& fillings, int n, int k, std::int64_t a, std::int64_t b) {
  auto s = halfplane_split(n, k, a, b);
  std::uint32_t known = 0;
  std::uint32_t target = 0;
  for (std::size_t i = 0; i < s.known.size(); ++i) {
    if (s.known[i]) known |= std::uint32_t{1} << i;
    if (s.target[i]) target |= std::uint32_t{1} << i;
  }
  std::map<std::uint32_t, std::uint32_t> first_target;
  for (auto f : fillings) {
    auto [it, fresh] = first_target.emplace(f & known, f & target);
    if (!fresh && it->second != (f & target)) return Verdict::Witness;
  }
  return Verdict::Deterministic;
}

bool origin_in_hull_z2(const std::vector<Point>& v) {
  auto cross = [](Point p, Point q) { return p[0] * q[1] - p[1] * q[0]; };
  auto dot = [](Point p, Point q) { return p[0] * q[0] + p[1] * q[1]; };
  for (const auto& p : v) {
    if (p[0] == 0 && p[1] == 0) return true;
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (cross(v[i], v[j]) == 0 && dot(v[i], v[j]) < 0) return true;
      for (std::size_t l = j + 1; l < v.size(); ++l) {
        auto c1 = cross(v[i], v[j]);
        auto c2 = cross(v[j], v[l]);
        auto c3 = cross(v[l], v[i]);
        if ((c1 > 0 && c2 > 0 && c3 > 0) || (c1 < 0 && c2 < 0 && c3 < 0)) return true;
      }
    }
  }
  return false;
}

double max_gap_degrees(const std::vector<std::array<double, 2>>& v) {
  std::vector<double> a;
  for (const auto& p : v) a.push_back(std::atan2(p[1], p[0]) * 180.0 / std::numbers::pi);
  std::sort(a.begin(), a.end());
  double gap = a.front() + 360.0 - a.back();
  for (std::size_t i = 1; i < a.size(); ++i) gap = std::max(gap, a[i] - a[i - 1]);
  return gap;
}

double least_negative_norm(std::array<double, 2> v, int r) {
  double best = INFINITY;
  for (int x = -r; x <= r; ++x) {
    for (int y = -r; y <= r; ++y) {
      if (x * v[0] + y * v[1] < 0) best = std::min(best, std::hypot(x, y));
    }
  }
  return best;
}

std::optional<std::int64_t> cone_shift_threshold(double eta, Point g, std::int64_t r_max) {
  std::optional<std::int64_t> threshold;
  for (std::int64_t r = r_max; r >= 1; --r) {
    bool ok = true;
    double outer = static_cast<double>(r) + eta;
    auto b = static_cast<std::int64_t>(outer) + 1;
    for (std::int64_t x = 1; x <= b && ok; ++x) {
      for (std::int64_t y = -b; y <= b && ok; ++y) {
        if (std::abs(y) >= x || std::hypot(static_cast<double>(x), static_cast<double>(y)) >= outer) continue;
        double sx = static_cast<double>(x + g[0]);
        double sy = static_cast<double>(y + g[1]);
        ok = sx * sx + sy * sy < static_cast<double>(r * r);
      }
    }
    if (!ok) break;
    threshold = r;
  }
  return threshold;
}

std::optional<std::int64_t> tangency_threshold(double m, double eps, std::int64_t n_max) {
  std::optional<std::int64_t> threshold;
  auto b = static_cast<std::int64_t>(m) + 1;
  for (std::int64_t n = n_max; n >= 1; --n) {
    bool ok = true;
    for (std::int64_t x = -b; x <= 0 && ok; ++x) {
      for (std::int64_t y = -b; y <= b && ok; ++y) {
        if (std::hypot(static_cast<double>(x), static_cast<double>(y)) > m) continue;
        ok = std::hypot(static_cast<double>(x + n), static_cast<double>(y)) < static_cast<double>(n) + eps;
      }
    }
    if (!ok) break;
    threshold = n;
  }
  return threshold;
}

}  // namespace oracle
