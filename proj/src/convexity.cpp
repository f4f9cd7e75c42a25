#include "horo/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "horo/metric_group.hpp"

namespace horo {

namespace {

using Int = boost::multiprecision::cpp_int;

struct Planar {
  Int x;
  Int y;
  std::size_t index;
};

Int cross(const Planar& a, const Planar& b) { return a.x * b.y - a.y * b.x; }
Int dot(const Planar& a, const Planar& b) { return a.x * b.x + a.y * b.y; }
int half(const Planar& v) { return (v.y < 0 || (v.y == 0 && v.x < 0)) ? 1 : 0; }

std::size_t check_inputs(const std::vector<ExactVector>& vectors) {
  if (vectors.empty()) throw InputError("vector set must be nonempty");
  std::size_t d = vectors.front().coords.size();
  if (d == 0) throw InputError("vectors must have dimension >= 1");
  for (const auto& v : vectors) {
    if (v.coords.size() != d) throw InputError("vectors differ in dimension");
    if (v.sqrt_normalized && std::all_of(v.coords.begin(), v.coords.end(), [](const Rational& c) { return c == 0; })) {
      throw InputError("cannot normalize the zero vector");
    }
  }
  return d;
}

bool is_zero(const ExactVector& v) {
  return std::all_of(v.coords.begin(), v.coords.end(), [](const Rational& c) { return c == 0; });
}

// Positive integer multiple of a rational vector.
std::vector<Int> integer_direction(const std::vector<Rational>& c) {
  Int l = 1;
  for (const auto& r : c) {
    Int den = boost::multiprecision::denominator(r);
    l = l / boost::multiprecision::gcd(l, den) * den;
  }
  std::vector<Int> out;
  for (const auto& r : c) out.push_back(boost::multiprecision::numerator(r) * (l / boost::multiprecision::denominator(r)));
  return out;
}

// s > 0 with integer_direction(v.coords) = s * v.coords.
Rational direction_scale(const ExactVector& v) {
  auto dir = integer_direction(v.coords);
  for (std::size_t k = 0; k < dir.size(); ++k) {
    if (v.coords[k] != 0) return Rational(dir[k]) / v.coords[k];
  }
  return Rational(1);
}

std::optional<Rational> rational_sqrt(const Rational& r) {
  Int n = boost::multiprecision::numerator(r);
  Int d = boost::multiprecision::denominator(r);
  Int sn = boost::multiprecision::sqrt(n);
  Int sd = boost::multiprecision::sqrt(d);
  if (sn * sn != n || sd * sd != d) return std::nullopt;
  return Rational(sn, sd);
}

Rational norm_sq(const std::vector<Rational>& c) {
  Rational s = 0;
  for (const auto& x : c) s += x * x;
  return s;
}

Rational inner(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

InHull build_in_hull(const std::vector<ExactVector>& vectors, std::vector<Rational> mu) {
  InHull out;
  Rational total = 0;
  for (const auto& m : mu) total += m;
  for (auto& m : mu) m /= total;
  out.exact = true;
  std::vector<long double> weight(vectors.size(), 0);
  long double sum = 0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (mu[i] == 0) continue;
    long double w = static_cast<long double>(to_double(mu[i]));
    if (vectors[i].sqrt_normalized) {
      auto root = rational_sqrt(norm_sq(vectors[i].coords));
      if (!root) out.exact = false;
      w *= std::sqrt(static_cast<long double>(to_double(norm_sq(vectors[i].coords))));
    }
    weight[i] = w;
    sum += w;
  }
  out.lambda.resize(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) out.lambda[i] = static_cast<double>(weight[i] / sum);
  std::size_t d = vectors.front().coords.size();
  long double residual = 0;
  for (std::size_t k = 0; k < d; ++k) {
    long double s = 0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      s += static_cast<long double>(out.lambda[i]) * static_cast<long double>(vectors[i].approx()[k]);
    }
    residual += s * s;
  }
  out.residual = static_cast<double>(std::sqrt(residual));
  out.mu = std::move(mu);
  return out;
}

HullCertificate planar(const std::vector<ExactVector>& vectors) {
  std::size_t n = vectors.size();
  std::vector<Planar> dirs;
  for (std::size_t i = 0; i < n; ++i) {
    auto c = integer_direction(vectors[i].coords);
    dirs.push_back({c[0], c[1], i});
  }
  std::sort(dirs.begin(), dirs.end(), [](const Planar& a, const Planar& b) {
    int ha = half(a);
    int hb = half(b);
    if (ha != hb) return ha < hb;
    Int c = cross(a, b);
    if (c != 0) return c > 0;
    return a.index < b.index;
  });

  auto separated_by = [&](const Planar& b, const Planar& a) {
    // Every vector lies on the arc from b counterclockwise to a, of angle < pi.
    Rational cx(-b.y + a.y);
    Rational cy(b.x - a.x);
    return Separated{{cx, cy}};
  };

  bool one_direction = std::all_of(dirs.begin(), dirs.end(), [&](const Planar& v) {
    return cross(dirs.front(), v) == 0 && dot(dirs.front(), v) > 0;
  });
  if (one_direction) return Separated{{Rational(dirs.front().x), Rational(dirs.front().y)}};

  for (std::size_t i = 0; i < n; ++i) {
    const Planar& a = dirs[i];
    const Planar& b = dirs[(i + 1) % n];
    if (cross(a, b) < 0) return separated_by(b, a);
  }
  std::vector<Rational> mu(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (cross(dirs[i], dirs[j]) != 0 || dot(dirs[i], dirs[j]) >= 0) continue;
      const Planar& u = dirs[i];
      const Planar& w = dirs[j];
      // w = -s u on the integer directions.
      Rational s = u.x != 0 ? Rational(-w.x) / Rational(u.x) : Rational(-w.y) / Rational(u.y);
      mu[u.index] = s * direction_scale(vectors[u.index]);
      mu[w.index] = direction_scale(vectors[w.index]);
      return build_in_hull(vectors, std::move(mu));
    }
  }

  const Planar& a = dirs[0];
  std::size_t j = 0;
  for (std::size_t t = 1; t < n; ++t) {
    Int c = cross(a, dirs[t]);
    if (c > 0 || (c == 0 && dot(a, dirs[t]) > 0)) j = t;
  }
  if (j + 1 >= n) throw std::logic_error("angular sweep found no enclosing triangle");
  const Planar& b = dirs[j];
  const Planar& c = dirs[j + 1];
  std::vector<std::pair<std::size_t, Int>> weights{{a.index, cross(b, c)}, {b.index, cross(c, a)},
                                                   {c.index, cross(a, b)}};
  for (const auto& [idx, w] : weights) mu[idx] += Rational(w) * direction_scale(vectors[idx]);
  return build_in_hull(vectors, std::move(mu));
}

}  // namespace

Rational exact_rational(double v) {
  if (!std::isfinite(v)) throw InputError("coordinates must be finite");
  if (v == 0) return Rational(0);
  int e = 0;
  double m = std::frexp(v, &e);
  auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
  int shift = e - 53;
  Int num(mant);
  if (shift >= 0) return Rational(num << shift);
  Int den = Int(1) << (-shift);
  return Rational(num, den);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

ExactVector ExactVector::from_doubles(const std::vector<double>& c) {
  ExactVector out;
  for (double x : c) out.coords.push_back(exact_rational(x));
  return out;
}

std::vector<double> ExactVector::approx() const {
  std::vector<double> out;
  for (const auto& c : coords) out.push_back(to_double(c));
  if (sqrt_normalized) {
    double n = std::sqrt(to_double(norm_sq(coords)));
    for (auto& x : out) x /= n;
  }
  return out;
}

std::string ExactVector::label() const {
  std::string s = sqrt_normalized ? "sqrt-normalized(" : "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) s += ",";
    s += coords[i].str();
  }
  return s + ")";
}

std::optional<std::vector<Rational>> feasible_point(const std::vector<std::vector<Rational>>& a,
                                                    const std::vector<Rational>& b) {
  std::size_t m = a.size();
  if (b.size() != m) throw InputError("constraint matrix and right-hand side differ in length");
  std::size_t n = m == 0 ? 0 : a.front().size();
  std::size_t cols = n + m;
  // Tableau rows [A | I | b] with rows negated where b < 0.
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols + 1, 0));
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].size() != n) throw InputError("ragged constraint matrix");
    int s = b[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j] * s;
    t[i][n + i] = 1;
    t[i][cols] = b[i] * s;
  }
  std::vector<std::size_t> basis(m);
  std::iota(basis.begin(), basis.end(), n);
  // Reduced costs of minimizing the artificial sum.
  std::vector<Rational> obj(cols + 1, 0);
  for (std::size_t j = n; j < cols; ++j) obj[j] = 1;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= cols; ++j) obj[j] -= t[i][j];
  }
  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][cols] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) throw std::logic_error("phase-one simplex is unbounded");
    Rational p = t[leave][enter];
    for (auto& x : t[leave]) x /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    if (obj[enter] != 0) {
      Rational f = obj[enter];
      for (std::size_t j = 0; j <= cols; ++j) obj[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  if (obj[cols] != 0) return std::nullopt;
  std::vector<Rational> x(n, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) x[basis[i]] = t[i][cols];
  }
  return x;
}

HullCertificate origin_in_hull_lp(const std::vector<ExactVector>& vectors) {
  std::size_t d = check_inputs(vectors);
  std::size_t n = vectors.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (is_zero(vectors[i])) {
      std::vector<Rational> mu(n, 0);
      mu[i] = 1;
      return build_in_hull(vectors, std::move(mu));
    }
  }
  std::vector<std::vector<Rational>> a(d + 1, std::vector<Rational>(n, 0));
  std::vector<Rational> b(d + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) a[k][i] = vectors[i].coords[k];
    a[d][i] = 1;
  }
  b[d] = 1;
  if (auto mu = feasible_point(a, b)) return build_in_hull(vectors, std::move(*mu));

  // <v_i, c+ - c-> - s_i = 1 with c+, c-, s >= 0.
  std::vector<std::vector<Rational>> a2(n, std::vector<Rational>(2 * d + n, 0));
  std::vector<Rational> b2(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      a2[i][k] = vectors[i].coords[k];
      a2[i][d + k] = -vectors[i].coords[k];
    }
    a2[i][2 * d + i] = -1;
  }
  auto x = feasible_point(a2, b2);
  if (!x) throw std::logic_error("neither Gordan alternative is feasible");
  std::vector<Rational> c(d);
  for (std::size_t k = 0; k < d; ++k) c[k] = (*x)[k] - (*x)[d + k];
  return Separated{std::move(c)};
}

HullCertificate origin_in_hull(const std::vector<ExactVector>& vectors) {
  std::size_t d = check_inputs(vectors);
  if (d != 2) return origin_in_hull_lp(vectors);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (is_zero(vectors[i])) {
      std::vector<Rational> mu(vectors.size(), 0);
      mu[i] = 1;
      return build_in_hull(vectors, std::move(mu));
    }
  }
  return planar(vectors);
}

bool verify(const std::vector<ExactVector>& vectors, const HullCertificate& cert, double tolerance) {
  std::size_t d = check_inputs(vectors);
  if (const auto* s = std::get_if<Separated>(&cert)) {
    if (s->c.size() != d) return false;
    return std::all_of(vectors.begin(), vectors.end(), [&](const ExactVector& v) { return inner(v.coords, s->c) > 0; });
  }
  const auto& h = std::get<InHull>(cert);
  if (h.mu.size() != vectors.size() || h.lambda.size() != vectors.size()) return false;
  Rational total = 0;
  std::vector<Rational> sum(d, 0);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (h.mu[i] < 0 || h.lambda[i] < -tolerance) return false;
    total += h.mu[i];
    for (std::size_t k = 0; k < d; ++k) sum[k] += h.mu[i] * vectors[i].coords[k];
  }
  if (total <= 0) return false;
  if (std::any_of(sum.begin(), sum.end(), [](const Rational& r) { return r != 0; })) return false;
  double lambda_total = std::accumulate(h.lambda.begin(), h.lambda.end(), 0.0);
  return std::abs(lambda_total - 1.0) <= tolerance && h.residual <= tolerance;
}

CoverageReport halfspace_coverage(const std::vector<ExactVector>& vectors,
                                  const std::vector<std::vector<double>>& probes) {
  std::size_t d = check_inputs(vectors);
  CoverageReport out;
  out.covered = true;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    if (probes[p].size() != d) throw InputError("probe dimension does not match the vectors");
    auto c = ExactVector::from_doubles(probes[p]);
    if (is_zero(c)) throw InputError("probes must be nonzero");
    bool pass = std::any_of(vectors.begin(), vectors.end(), [&](const ExactVector& v) { return inner(v.coords, c.coords) >= 0; });
    out.probe_passed.push_back(pass);
    if (!pass && out.covered) {
      out.covered = false;
      out.first_failing_probe = p;
    }
  }
  if (d == 2) {
    std::vector<double> angles;
    for (const auto& v : vectors) {
      if (is_zero(v)) continue;
      auto a = v.approx();
      double t = std::atan2(a[1], a[0]) * 180.0 / std::numbers::pi;
      if (t < 0) t += 360.0;
      angles.push_back(t);
    }
    std::sort(angles.begin(), angles.end());
    double gap = angles.empty() ? 360.0 : angles.front() + 360.0 - angles.back();
    for (std::size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
    out.max_gap_degrees = gap;
    out.gap_at_most_half_turn = std::holds_alternative<InHull>(origin_in_hull(vectors));
  }
  return out;
}

IntersectionResult intersection_empty(const std::vector<ExactVector>& vectors) {
  IntersectionResult out;
  out.certificate = origin_in_hull(vectors);
  out.empty = std::holds_alternative<InHull>(out.certificate);
  if (const auto* s = std::get_if<Separated>(&out.certificate)) {
    std::vector<Rational> y;
    for (const auto& c : s->c) y.push_back(-c);
    out.witness = std::move(y);
  }
  return out;
}

}  // namespace horo
