#include "horo/expansivity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>

#include "horo/gf2.hpp"

namespace horo {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::int64_t parse_int(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) throw InputError("expected an integer");
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(std::string(s), &used);
  } catch (const std::exception&) {
    throw InputError("expected an integer, got '" + std::string(s) + "'");
  }
  if (used != s.size()) throw InputError("expected an integer, got '" + std::string(s) + "'");
  return v;
}

int half(const std::array<std::int64_t, 2>& v) { return (v[1] < 0 || (v[1] == 0 && v[0] < 0)) ? 1 : 0; }

bool angle_less(const std::array<std::int64_t, 2>& u, const std::array<std::int64_t, 2>& w) {
  int hu = half(u);
  int hw = half(w);
  if (hu != hw) return hu < hw;
  return static_cast<__int128>(u[0]) * w[1] - static_cast<__int128>(u[1]) * w[0] > 0;
}

// Linear constraints of a GF(2) spec on a window, one row per translate.
void add_linear_constraints(gf2::LinearSystem& sys, const LinearGF2& lin, const Window& w) {
  const Site& first = lin.support.front();
  for (std::size_t a = 0; a < w.size(); ++a) {
    Site anchor = w.site(a);
    gf2::BitVector row(w.size());
    bool inside = true;
    for (const auto& s : lin.support) {
      std::int64_t x = s[0] - first[0] + anchor[0];
      std::int64_t y = s[1] - first[1] + anchor[1];
      if (!w.contains(x, y)) {
        inside = false;
        break;
      }
      row.set(w.index(x, y));
    }
    if (inside) sys.add(std::move(row));
  }
}

gf2::BitVector unit(std::size_t size, std::size_t i) {
  gf2::BitVector v(size);
  v.set(i);
  return v;
}

// Value of the horofunction used to rank target sites (larger is farther from H).
long double rank_value(const Horoball& h, std::int64_t x, std::int64_t y) {
  const auto& j = h.horofunction();
  if (const auto* l = std::get_if<Linear>(&j); l && l->integer_direction) {
    const auto& d = *l->integer_direction;
    return static_cast<long double>(x * d[0] + y * d[1]);
  }
  if (const auto* p = std::get_if<PolyhedralZ2>(&j)) return static_cast<long double>(p->twice_value(x, y));
  return eval(j, vec({x, y})).value;
}

// Whether the difference z on the window of radius n extends to a GF(2)
// solution on radius n + 2 vanishing on the dilated horoball there.
bool linear_difference_extends(const LinearGF2& lin, const Horoball& h, int k, std::int64_t n,
                               const std::vector<std::uint8_t>& z) {
  WindowGeometry big = window_geometry(h, k, n + 2);
  Window inner{n};
  gf2::LinearSystem sys(big.window.size());
  add_linear_constraints(sys, lin, big.window);
  for (auto i : big.known) sys.add(unit(big.window.size(), i));
  for (std::size_t i = 0; i < inner.size(); ++i) {
    Site s = inner.site(i);
    if (!sys.add(unit(big.window.size(), big.window.index(s[0], s[1])), z[i] & 1)) return false;
  }
  return sys.consistent();
}

std::vector<std::uint8_t> restrict_to(const std::vector<std::uint8_t>& symbols, const Window& from, const Window& to) {
  std::vector<std::uint8_t> out(to.size());
  for (std::size_t i = 0; i < to.size(); ++i) {
    Site s = to.site(i);
    out[i] = symbols[from.index(s[0], s[1])];
  }
  return out;
}

// Joint extension of an SFT pair to radius n + 2 keeping agreement on the
// dilated horoball. Bounded search.
bool sft_pair_extends(const SubshiftSpec& spec, const Horoball& h, int k, std::int64_t n, const WindowFilling& x,
                      const WindowFilling& y, std::uint64_t budget) {
  WindowGeometry big = window_geometry(h, k, n + 2);
  const Window& outer = big.window;
  Window inner{n};
  std::vector<std::size_t> order;
  std::vector<int> clamp_x(outer.size(), -1);
  for (std::size_t i = 0; i < inner.size(); ++i) {
    Site s = inner.site(i);
    std::size_t j = outer.index(s[0], s[1]);
    order.push_back(j);
    clamp_x[j] = x.symbols[i];
  }
  for (std::size_t j = 0; j < outer.size(); ++j) {
    Site s = outer.site(j);
    if (!inner.contains(s[0], s[1])) order.push_back(j);
  }
  FillingEnumerator e(spec, n + 2, order);
  bool found = false;
  std::uint64_t inner_budget = std::max<std::uint64_t>(1, budget / 16);
  try {
    e.run(
        clamp_x,
        [&](const std::vector<std::uint8_t>& xs) {
          std::vector<int> clamp_y(outer.size(), -1);
          for (std::size_t i = 0; i < inner.size(); ++i) {
            Site s = inner.site(i);
            clamp_y[outer.index(s[0], s[1])] = y.symbols[i];
          }
          for (auto j : big.known) {
            Site s = outer.site(j);
            if (!inner.contains(s[0], s[1])) clamp_y[j] = xs[j];
          }
          try {
            e.run(
                clamp_y,
                [&](const std::vector<std::uint8_t>&) {
                  found = true;
                  return false;
                },
                inner_budget);
          } catch (const ResourceError&) {
          }
          return !found;
        },
        budget);
  } catch (const ResourceError&) {
  }
  return found;
}

bool pair_extends(const SubshiftSpec& spec, const Horoball& h, int k, std::int64_t n, const WindowFilling& x,
                  const WindowFilling& y, std::uint64_t budget) {
  if (std::holds_alternative<FullShift>(spec)) return true;
  if (const auto* lin = std::get_if<LinearGF2>(&spec)) {
    std::vector<std::uint8_t> z(x.symbols.size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = x.symbols[i] ^ y.symbols[i];
    return linear_difference_extends(*lin, h, k, n, z);
  }
  return sft_pair_extends(spec, h, k, n, x, y, budget);
}

Certificate full_shift_status(const FullShift& f, const Horoball& h, const WindowGeometry& g) {
  if (f.alphabet < 2) return WindowDeterministic{g.window.radius, g.k};
  std::size_t best = g.target.front();
  long double best_value = 0;
  bool first = true;
  for (auto t : g.target) {
    Site s = g.window.site(t);
    long double v = rank_value(h, s[0], s[1]);
    if (first || v > best_value) {
      best = t;
      best_value = v;
      first = false;
    }
  }
  Witness w;
  w.window = g.window.radius;
  w.k = g.k;
  w.x = WindowFilling{g.window.radius, std::vector<std::uint8_t>(g.window.size(), 0), true, true};
  w.y = w.x;
  w.y.symbols[best] = 1;
  w.extendable = true;
  return w;
}

std::optional<std::vector<std::uint8_t>> linear_difference(const LinearGF2& lin, const WindowGeometry& g,
                                                           const std::vector<std::size_t>& target) {
  gf2::LinearSystem sys(g.window.size());
  add_linear_constraints(sys, lin, g.window);
  for (auto i : g.known) sys.add(unit(g.window.size(), i));
  for (const auto& z : sys.nullspace()) {
    if (std::any_of(target.begin(), target.end(), [&](std::size_t t) { return z.get(t); })) {
      std::vector<std::uint8_t> out(g.window.size());
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = z.get(i) ? 1 : 0;
      return out;
    }
  }
  return std::nullopt;
}

Certificate linear_status(const LinearGF2& lin, const Horoball& h, const WindowGeometry& g) {
  auto z = linear_difference(lin, g, g.target);
  if (!z) return WindowDeterministic{g.window.radius, g.k};
  Witness w;
  w.window = g.window.radius;
  w.k = g.k;
  bool proven = extension_proven(SubshiftSpec{lin});
  w.x = WindowFilling{g.window.radius, std::vector<std::uint8_t>(g.window.size(), 0), true, proven ? std::optional<bool>(true) : std::nullopt};

  WindowGeometry big = window_geometry(h, g.k, g.window.radius + 2);
  std::vector<std::size_t> big_target;
  for (auto t : g.target) {
    Site s = g.window.site(t);
    big_target.push_back(big.window.index(s[0], s[1]));
  }
  if (auto zb = linear_difference(lin, big, big_target)) {
    w.y = WindowFilling{g.window.radius, restrict_to(*zb, big.window, g.window), true, w.x.extendable};
    w.extendable = true;
  } else {
    w.y = WindowFilling{g.window.radius, *z, true, w.x.extendable};
    w.extendable = false;
  }
  return w;
}

Certificate exhaustive_status(const SubshiftSpec& spec, const Horoball& h, const WindowGeometry& g,
                              std::uint64_t budget) {
  std::vector<std::size_t> order = g.known;
  std::vector<bool> placed(g.window.size(), false);
  for (auto i : order) placed[i] = true;
  for (auto t : g.target) {
    order.push_back(t);
    placed[t] = true;
  }
  for (std::size_t i = 0; i < g.window.size(); ++i) {
    if (!placed[i]) order.push_back(i);
  }
  FillingEnumerator e(spec, g.window.radius, order);
  bool proven = extension_proven(spec);
  auto filling = [&](const std::vector<std::uint8_t>& s) {
    return WindowFilling{g.window.radius, s, true, proven ? std::optional<bool>(true) : std::nullopt};
  };

  std::vector<std::uint8_t> class_key;
  std::vector<std::vector<std::uint8_t>> class_members;  // distinct target restrictions seen, with their fillings
  std::vector<std::vector<std::uint8_t>> class_fillings;
  std::optional<Witness> fallback;
  std::optional<Witness> found;
  int attempts = 0;
  const int max_attempts = 64;

  auto key_of = [&](const std::vector<std::uint8_t>& s) {
    std::vector<std::uint8_t> key;
    key.reserve(g.known.size());
    for (auto i : g.known) key.push_back(s[i]);
    return key;
  };
  auto target_of = [&](const std::vector<std::uint8_t>& s) {
    std::vector<std::uint8_t> t;
    t.reserve(g.target.size());
    for (auto i : g.target) t.push_back(s[i]);
    return t;
  };

  try {
    e.run(
        {},
        [&](const std::vector<std::uint8_t>& s) {
          auto key = key_of(s);
          if (key != class_key || class_fillings.empty()) {
            class_key = std::move(key);
            class_members.clear();
            class_fillings.clear();
          }
          auto t = target_of(s);
          if (std::find(class_members.begin(), class_members.end(), t) != class_members.end()) return true;
          if (!class_fillings.empty() && (attempts < max_attempts || !fallback)) {
            Witness w;
            w.window = g.window.radius;
            w.k = g.k;
            w.x = filling(class_fillings.front());
            w.y = filling(s);
            ++attempts;
            w.extendable = pair_extends(spec, h, g.k, g.window.radius, w.x, w.y, 200'000);
            if (w.extendable) {
              found = std::move(w);
              return false;
            }
            if (!fallback) fallback = std::move(w);
          }
          class_members.push_back(std::move(t));
          class_fillings.push_back(s);
          return true;
        },
        budget);
  } catch (const ResourceError&) {
    if (found) return *found;
    Inconclusive out{g.window.radius, g.k, "budget"};
    return out;
  }
  if (found) return *found;
  if (fallback) return *fallback;
  return WindowDeterministic{g.window.radius, g.k};
}

}  // namespace

// ---------------------------------------------------------------------------
// Directions

std::array<double, 2> Direction::unit() const {
  double n = std::hypot(static_cast<double>(integer[0]), static_cast<double>(integer[1]));
  return {static_cast<double>(integer[0]) / n, static_cast<double>(integer[1]) / n};
}

std::string Direction::label() const {
  std::string base = "(" + std::to_string(integer[0]) + "," + std::to_string(integer[1]) + ")";
  return special ? *special + base : base;
}

std::vector<Direction> farey_grid(std::int64_t q, bool diag) {
  if (q < 1) throw InputError("Farey order must be >= 1");
  std::vector<std::array<std::int64_t, 2>> dirs;
  for (std::int64_t a = -q; a <= q; ++a) {
    for (std::int64_t b = -q; b <= q; ++b) {
      if (std::gcd(a, b) == 1) dirs.push_back({a, b});
    }
  }
  std::sort(dirs.begin(), dirs.end(), angle_less);
  std::vector<Direction> out;
  for (const auto& d : dirs) {
    Direction dir{d, std::nullopt};
    if (diag && d[0] == 1 && d[1] == 1) dir.special = "sqrt-normalized";
    out.push_back(dir);
  }
  return out;
}

std::vector<Direction> parse_grid(std::string_view text) {
  if (text.rfind("farey:", 0) == 0) {
    std::string_view rest = text.substr(6);
    bool diag = false;
    if (auto plus = rest.find('+'); plus != std::string_view::npos) {
      if (rest.substr(plus + 1) != "diag") throw InputError("unknown grid suffix '" + std::string(rest.substr(plus)) + "'");
      diag = true;
      rest = rest.substr(0, plus);
    }
    return farey_grid(parse_int(rest), diag);
  }
  std::vector<Direction> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    if (item == "diag") {
      out.push_back(Direction{{1, 1}, "sqrt-normalized"});
    } else {
      auto comma = item.find(',');
      if (comma == std::string_view::npos) throw InputError("grid entries look like 'a,b' or 'diag'");
      std::array<std::int64_t, 2> d{parse_int(item.substr(0, comma)), parse_int(item.substr(comma + 1))};
      if (d[0] == 0 && d[1] == 0) throw InputError("grid directions must be nonzero");
      std::int64_t g = std::gcd(d[0], d[1]);
      out.push_back(Direction{{d[0] / g, d[1] / g}, std::nullopt});
    }
    start = end + 1;
  }
  if (out.empty()) throw InputError("grid is empty");
  std::vector<Direction> unique;
  for (auto& d : out) {
    auto it = std::find(unique.begin(), unique.end(), d);
    if (it == unique.end()) {
      unique.push_back(d);
    } else if (d.special) {
      it->special = d.special;
    }
  }
  return unique;
}

int k_from_epsilon(double eps) {
  if (!(eps > 0) || eps > 1) throw InputError("epsilon must lie in (0, 1]");
  int e = 0;
  std::frexp(eps, &e);
  return 1 - e;
}

std::string_view kind(const Certificate& c) {
  return std::visit(overloaded{
                        [](const WindowDeterministic&) { return std::string_view("WindowDeterministic"); },
                        [](const Witness&) { return std::string_view("Witness"); },
                        [](const Inconclusive&) { return std::string_view("Inconclusive"); },
                    },
                    c);
}

// ---------------------------------------------------------------------------
// Geometry and status

WindowGeometry window_geometry(const Horoball& h, int k, std::int64_t n) {
  if (k < 1) throw InputError("k must be >= 1");
  if (n < k) throw InputError("window radius N must be >= k");
  WindowGeometry g;
  g.window = Window{n};
  g.k = k;
  g.in_known.assign(g.window.size(), false);
  std::int64_t r = k - 1;
  std::int64_t outer = n + r;
  // Membership of [-(N+r), N+r]^2, then dilation by the box of radius r.
  std::int64_t side = 2 * outer + 1;
  std::vector<bool> in_h(static_cast<std::size_t>(side * side));
  bool any_in_window = false;
  for (std::int64_t y = -outer; y <= outer; ++y) {
    for (std::int64_t x = -outer; x <= outer; ++x) {
      bool in = h.contains(x, y);
      in_h[static_cast<std::size_t>((y + outer) * side + (x + outer))] = in;
      if (in && g.window.contains(x, y)) any_in_window = true;
    }
  }
  g.misses_window = !any_in_window;
  for (std::size_t i = 0; i < g.window.size(); ++i) {
    Site s = g.window.site(i);
    bool hit = false;
    for (std::int64_t dy = -r; dy <= r && !hit; ++dy) {
      for (std::int64_t dx = -r; dx <= r; ++dx) {
        if (in_h[static_cast<std::size_t>((s[1] + dy + outer) * side + (s[0] + dx + outer))]) {
          hit = true;
          break;
        }
      }
    }
    if (hit) {
      g.in_known[i] = true;
      g.known.push_back(i);
    }
  }
  for (std::size_t i = 0; i < g.window.size(); ++i) {
    Site s = g.window.site(i);
    if (!g.in_known[i] && std::max(std::abs(s[0]), std::abs(s[1])) <= r) g.target.push_back(i);
  }
  if (g.target.empty()) {
    std::optional<std::int64_t> least;
    for (std::size_t i = 0; i < g.window.size(); ++i) {
      if (g.in_known[i]) continue;
      Site s = g.window.site(i);
      std::int64_t d = std::max(std::abs(s[0]), std::abs(s[1]));
      if (!least || d < *least) least = d;
    }
    if (least) {
      g.target_fallback = true;
      for (std::size_t i = 0; i < g.window.size(); ++i) {
        Site s = g.window.site(i);
        if (!g.in_known[i] && std::max(std::abs(s[0]), std::abs(s[1])) == *least) g.target.push_back(i);
      }
    }
  }
  return g;
}

Certificate horoball_status(const SubshiftSpec& spec, const Horoball& h, int k, std::int64_t n,
                            const StatusOptions& options) {
  check(spec);
  WindowGeometry g = window_geometry(h, k, n);
  if (g.misses_window) return Inconclusive{n, k, "horoball misses window"};
  if (g.target.empty()) return WindowDeterministic{n, k};
  if (options.method == Method::Auto) {
    if (const auto* f = std::get_if<FullShift>(&spec)) return full_shift_status(*f, h, g);
    if (const auto* lin = std::get_if<LinearGF2>(&spec)) return linear_status(*lin, h, g);
  }
  return exhaustive_status(spec, h, g, options.budget);
}

Certificate direction_status(const SubshiftSpec& spec, const Direction& v, int k, std::int64_t n,
                             const StatusOptions& options) {
  return horoball_status(spec, v.horoball(), k, n, options);
}

bool verify_witness(const SubshiftSpec& spec, const Horoball& h, const Witness& w) {
  WindowGeometry g = window_geometry(h, w.k, w.window);
  if (w.x.radius != w.window || w.y.radius != w.window) return false;
  if (w.x.symbols.size() != g.window.size() || w.y.symbols.size() != g.window.size()) return false;
  if (!locally_admissible(spec, w.x) || !locally_admissible(spec, w.y)) return false;
  for (std::size_t i = 0; i < g.window.size(); ++i) {
    if (g.in_known[i] && w.x.symbols[i] != w.y.symbols[i]) return false;
  }
  bool differs = std::any_of(g.target.begin(), g.target.end(),
                             [&](std::size_t t) { return w.x.symbols[t] != w.y.symbols[t]; });
  if (!differs) return false;
  if (w.extendable && !pair_extends(spec, h, w.k, w.window, w.x, w.y, default_filling_budget)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// ND sets

std::vector<Direction> NDReport::witnesses() const {
  std::vector<Direction> out;
  for (const auto& e : entries) {
    if (std::holds_alternative<Witness>(e.certificate)) out.push_back(e.direction);
  }
  return out;
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

NDReport nd_set(const SubshiftSpec& spec, int k, std::int64_t n, const std::vector<Direction>& grid,
                const StatusOptions& options, std::string grid_description) {
  if (grid.empty()) throw InputError("direction grid must be nonempty");
  check(spec);
  NDReport report;
  report.k = k;
  report.window = n;
  std::string spec_text = describe(spec);
  report.metadata["spec"] = spec_text;
  report.metadata["spec_hash"] = fnv1a_hex(spec_text);
  report.metadata["grid"] = grid_description.empty() ? std::to_string(grid.size()) + " directions" : grid_description;
  report.metadata["metric"] = "2^-r, r = least l_inf norm of a disagreement site";
  report.metadata["epsilon"] = "2^-" + std::to_string(k);
  report.metadata["scope"] = "window-scale certificates at (k, N); not a claim about the limit set";
  for (const auto& d : grid) {
    Certificate c = Inconclusive{n, k, "budget"};
    try {
      c = direction_status(spec, d, k, n, options);
    } catch (const ResourceError&) {
    }
    report.entries.push_back(NDEntry{d, std::move(c)});
  }
  return report;
}

// ---------------------------------------------------------------------------
// Skew actions

ExponentImage exponent_image(const SkewActionSpec& spec, const Horoball& h, std::int64_t n) {
  check(spec);
  if (n < 1) throw InputError("window radius N must be >= 1");
  ExponentImage out;
  std::set<std::int64_t> realized;
  for (int i = 0; i <= 4; ++i) {
    ExponentStep step;
    step.bound = n << i;
    for (std::int64_t y = -step.bound; y <= step.bound; ++y) {
      for (std::int64_t x = -step.bound; x <= step.bound; ++x) {
        if (!h.contains(x, y)) continue;
        std::int64_t e = skew_exponent(spec, x, y);
        ++step.sites;
        if (!step.min || e < *step.min) step.min = e;
        if (!step.max || e > *step.max) step.max = e;
        if (i == 4 && e >= -n && e <= n) realized.insert(e);
      }
    }
    out.steps.push_back(step);
  }
  auto stable = [&](auto field) {
    for (std::size_t i = out.steps.size() - 3; i < out.steps.size(); ++i) {
      if (!(out.steps[i].*field) || *(out.steps[i].*field) != *(out.steps.back().*field)) return false;
    }
    return true;
  };
  out.bounded_below = stable(&ExponentStep::min);
  out.bounded_above = stable(&ExponentStep::max);
  for (std::int64_t e = -n; e <= n; ++e) {
    if (!realized.count(e)) out.missing.push_back(e);
  }
  out.covers_window = out.missing.empty();
  return out;
}

namespace {

// Two distinct admissible words on [-L, L] of a Z-SFT that agree on every
// index > p. Explores words from the left keeping at most two per end state.
std::optional<std::pair<std::vector<int>, std::vector<int>>> sft_pair_left_of(const ZSubshift& base, std::int64_t L,
                                                                              std::int64_t p) {
  std::size_t memory = 0;
  for (const auto& w : base.forbidden_words) memory = std::max(memory, w.size() - 1);
  auto admissible_tail = [&](const std::vector<int>& word) {
    for (const auto& f : base.forbidden_words) {
      if (f.size() > word.size()) continue;
      if (std::equal(f.begin(), f.end(), word.end() - static_cast<std::ptrdiff_t>(f.size()))) return false;
    }
    return true;
  };
  auto state_of = [&](const std::vector<int>& word) {
    std::size_t m = std::min(memory, word.size());
    return std::vector<int>(word.end() - static_cast<std::ptrdiff_t>(m), word.end());
  };
  std::int64_t left_len = p + L + 1;
  if (left_len < 1) return std::nullopt;
  std::map<std::vector<int>, std::vector<std::vector<int>>> layer{{{}, {{}}}};
  for (std::int64_t i = 0; i < left_len; ++i) {
    std::map<std::vector<int>, std::vector<std::vector<int>>> next;
    for (const auto& [state, words] : layer) {
      for (const auto& w : words) {
        for (int a = 0; a < base.alphabet; ++a) {
          auto e = w;
          e.push_back(a);
          if (!admissible_tail(e)) continue;
          auto& slot = next[state_of(e)];
          if (slot.size() < 2) slot.push_back(std::move(e));
        }
      }
    }
    layer = std::move(next);
  }
  std::int64_t right_len = L - p;
  for (const auto& [state, words] : layer) {
    if (words.size() < 2) continue;
    // Greedy continuation to the right, shared by both words.
    std::vector<int> a = words[0];
    std::vector<int> b = words[1];
    std::function<bool(std::int64_t)> grow = [&](std::int64_t left) {
      if (left == 0) return true;
      for (int s = 0; s < base.alphabet; ++s) {
        a.push_back(s);
        b.push_back(s);
        if (admissible_tail(a) && admissible_tail(b) && grow(left - 1)) return true;
        a.pop_back();
        b.pop_back();
      }
      return false;
    };
    if (grow(right_len)) return std::make_pair(a, b);
  }
  return std::nullopt;
}

}  // namespace

SkewReport skew_horoball_status(const SkewActionSpec& spec, const Horoball& h, int k, std::int64_t n) {
  check(spec);
  if (k < 1 || n < k) throw InputError("skew status needs N >= k >= 1");
  SkewReport out;
  out.image = exponent_image(spec, h, n);
  out.certificate = Inconclusive{n, k, "exponent image neither one-sided nor covering [-N, N]"};
  if (!out.image.steps.back().min) {
    out.certificate = Inconclusive{n, k, "horoball misses window"};
    return out;
  }
  if (!spec.base.expansivity_level) {
    out.certificate = Inconclusive{n, k, "unknown base expansivity constant"};
    return out;
  }
  if (out.image.bounded_below || out.image.bounded_above) {
    std::int64_t p = out.image.bounded_below ? *out.image.steps.back().min - k : *out.image.steps.back().max + k;
    std::int64_t L = std::max(n, p < 0 ? -p : p) + k;
    out.base_radius = L;
    out.difference_site = p;
    Witness w;
    w.window = n;
    w.k = k;
    if (spec.base.forbidden_words.empty()) {
      out.base_x.assign(static_cast<std::size_t>(2 * L + 1), 0);
      out.base_y = out.base_x;
      out.base_y[static_cast<std::size_t>(p + L)] = 1;
      w.extendable = true;
    } else {
      // Agreement is needed on one side of p only; mirror for the upper case.
      ZSubshift mirrored = spec.base;
      bool upper = !out.image.bounded_below;
      if (upper) {
        for (auto& f : mirrored.forbidden_words) std::reverse(f.begin(), f.end());
      }
      auto pair = sft_pair_left_of(mirrored, L, upper ? -p : p);
      if (!pair) {
        out.certificate = Inconclusive{n, k, "no asymptotic pair of the base found on the window"};
        return out;
      }
      out.base_x = pair->first;
      out.base_y = pair->second;
      if (upper) {
        std::reverse(out.base_x.begin(), out.base_x.end());
        std::reverse(out.base_y.begin(), out.base_y.end());
      }
      w.extendable = false;
    }
    out.certificate = std::move(w);
    return out;
  }
  if (out.image.covers_window) {
    if (k >= *spec.base.expansivity_level) {
      out.certificate = WindowDeterministic{n, k};
    } else {
      out.certificate = Inconclusive{n, k, "k below the base expansivity level"};
    }
  }
  return out;
}

std::vector<std::pair<std::string, PolyhedralZ2>> apex_cones(std::int64_t t) {
  return {
      {"down", PolyhedralZ2{Norm::L1, {0, -1}, {t, t}}},
      {"up", PolyhedralZ2{Norm::L1, {0, 1}, {t, t}}},
      {"right", PolyhedralZ2{Norm::L1, {1, 0}, {t, t}}},
      {"left", PolyhedralZ2{Norm::L1, {-1, 0}, {t, t}}},
  };
}

}  // namespace horo
