#include "horo/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "horo/gf2.hpp"

namespace horo {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_symbols(const SubshiftSpec& spec, const Pattern& p) {
  int a = alphabet_size(spec);
  for (const auto& [s, v] : p.symbols) {
    if (v < 0 || v >= a) {
      throw InputError("symbol " + std::to_string(v) + " at (" + std::to_string(s[0]) + "," + std::to_string(s[1]) +
                       ") is outside the alphabet");
    }
  }
}

}  // namespace

LinearGF2 ledrappier() { return LinearGF2{{{0, 0}, {1, 0}, {0, 1}}}; }

bool extension_proven(const SubshiftSpec& spec) {
  if (std::holds_alternative<FullShift>(spec)) return true;
  if (const auto* lin = std::get_if<LinearGF2>(&spec)) {
    std::vector<Site> s = lin->support;
    std::sort(s.begin(), s.end());
    auto l = ledrappier().support;
    std::sort(l.begin(), l.end());
    return s == l;
  }
  return false;
}

int alphabet_size(const SubshiftSpec& spec) {
  return std::visit(overloaded{
                        [](const SFT& s) { return s.alphabet; },
                        [](const LinearGF2&) { return 2; },
                        [](const FullShift& f) { return f.alphabet; },
                    },
                    spec);
}

void check(const SubshiftSpec& spec) {
  std::visit(overloaded{
                 [](const SFT& s) {
                   if (s.alphabet < 1) throw InputError("alphabet must be nonempty");
                   for (const auto& f : s.forbidden) {
                     if (f.symbols.empty()) throw InputError("forbidden patterns need a nonempty support");
                     for (const auto& [site, v] : f.symbols) {
                       if (v < 0 || v >= s.alphabet) throw InputError("forbidden pattern symbol outside the alphabet");
                     }
                   }
                 },
                 [](const LinearGF2& l) {
                   std::vector<Site> sorted = l.support;
                   std::sort(sorted.begin(), sorted.end());
                   if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
                     throw InputError("linear support sites must be distinct");
                   }
                   if (sorted.size() < 2) throw InputError("linear support needs at least two sites");
                 },
                 [](const FullShift& f) {
                   if (f.alphabet < 1) throw InputError("alphabet must be nonempty");
                 },
             },
             spec);
}

std::string describe(const SubshiftSpec& spec) {
  return std::visit(overloaded{
                        [](const SFT& s) {
                          return "sft alphabet=" + std::to_string(s.alphabet) +
                                 " forbidden=" + std::to_string(s.forbidden.size());
                        },
                        [](const LinearGF2& l) {
                          std::string out = "linear-gf2 support=";
                          for (const auto& s : l.support) {
                            out += "(" + std::to_string(s[0]) + "," + std::to_string(s[1]) + ")";
                          }
                          return out;
                        },
                        [](const FullShift& f) { return "full-shift alphabet=" + std::to_string(f.alphabet); },
                    },
                    spec);
}

bool validate(const SubshiftSpec& spec, const Pattern& p) {
  check(spec);
  check_symbols(spec, p);
  auto lookup = [&](const Site& s) -> std::optional<int> {
    auto it = p.symbols.find(s);
    if (it == p.symbols.end()) return std::nullopt;
    return it->second;
  };
  if (const auto* sft = std::get_if<SFT>(&spec)) {
    for (const auto& f : sft->forbidden) {
      const Site& first = f.symbols.begin()->first;
      for (const auto& [anchor, unused] : p.symbols) {
        Site t{anchor[0] - first[0], anchor[1] - first[1]};
        bool match = true;
        for (const auto& [s, v] : f.symbols) {
          auto got = lookup({s[0] + t[0], s[1] + t[1]});
          if (!got || *got != v) {
            match = false;
            break;
          }
        }
        if (match) return false;
      }
    }
    return true;
  }
  if (const auto* lin = std::get_if<LinearGF2>(&spec)) {
    const Site& first = lin->support.front();
    for (const auto& [anchor, unused] : p.symbols) {
      Site t{anchor[0] - first[0], anchor[1] - first[1]};
      int parity = 0;
      bool inside = true;
      for (const auto& s : lin->support) {
        auto got = lookup({s[0] + t[0], s[1] + t[1]});
        if (!got) {
          inside = false;
          break;
        }
        parity ^= *got & 1;
      }
      if (inside && parity != 0) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Fillings

Pattern WindowFilling::pattern() const {
  Pattern p;
  Window w = window();
  for (std::size_t i = 0; i < symbols.size(); ++i) p.symbols[w.site(i)] = symbols[i];
  return p;
}

bool locally_admissible(const SubshiftSpec& spec, const WindowFilling& f) {
  if (f.symbols.size() != f.window().size()) throw InputError("filling size does not match its window");
  return validate(spec, f.pattern());
}

FillingEnumerator::FillingEnumerator(const SubshiftSpec& spec, std::int64_t radius, std::vector<std::size_t> order)
    : window_{radius}, alphabet_(alphabet_size(spec)), order_(std::move(order)) {
  check(spec);
  if (radius < 0) throw InputError("window radius must be >= 0");
  std::size_t n = window_.size();
  if (order_.empty()) {
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
  }
  {
    std::vector<std::size_t> sorted = order_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n; ++i) {
      if (sorted.size() != n || sorted[i] != i) throw InputError("site order must be a permutation of the window");
    }
  }
  std::vector<std::size_t> position(n);
  for (std::size_t i = 0; i < n; ++i) position[order_[i]] = i;

  auto add_instances = [&](const std::vector<Site>& shape, const std::vector<std::uint8_t>& symbols) {
    const Site& first = shape.front();
    for (std::size_t a = 0; a < n; ++a) {
      Site anchor = window_.site(a);
      Constraint c;
      c.symbols = symbols;
      bool inside = true;
      for (const auto& s : shape) {
        std::int64_t x = s[0] - first[0] + anchor[0];
        std::int64_t y = s[1] - first[1] + anchor[1];
        if (!window_.contains(x, y)) {
          inside = false;
          break;
        }
        c.sites.push_back(window_.index(x, y));
      }
      if (inside) constraints_.push_back(std::move(c));
    }
  };
  if (const auto* sft = std::get_if<SFT>(&spec)) {
    for (const auto& f : sft->forbidden) {
      std::vector<Site> shape;
      std::vector<std::uint8_t> symbols;
      for (const auto& [s, v] : f.symbols) {
        shape.push_back(s);
        symbols.push_back(static_cast<std::uint8_t>(v));
      }
      add_instances(shape, symbols);
    }
  } else if (const auto* lin = std::get_if<LinearGF2>(&spec)) {
    add_instances(lin->support, {});
  }

  completes_at_.resize(n);
  for (std::size_t c = 0; c < constraints_.size(); ++c) {
    std::size_t last = 0;
    for (auto s : constraints_[c].sites) last = std::max(last, position[s]);
    completes_at_[last].push_back(c);
  }
}

std::uint64_t FillingEnumerator::run(const std::vector<int>& clamp,
                                     const std::function<bool(const std::vector<std::uint8_t>&)>& visit,
                                     std::uint64_t budget) const {
  std::size_t n = window_.size();
  if (!clamp.empty() && clamp.size() != n) throw InputError("clamp size does not match the window");
  std::vector<std::uint8_t> current(n, 0);
  std::uint64_t count = 0;
  bool stop = false;

  auto satisfied = [&](std::size_t pos) {
    for (auto ci : completes_at_[pos]) {
      const auto& c = constraints_[ci];
      if (c.symbols.empty()) {
        int parity = 0;
        for (auto s : c.sites) parity ^= current[s] & 1;
        if (parity != 0) return false;
      } else {
        bool match = true;
        for (std::size_t i = 0; i < c.sites.size(); ++i) {
          if (current[c.sites[i]] != c.symbols[i]) {
            match = false;
            break;
          }
        }
        if (match) return false;
      }
    }
    return true;
  };

  std::function<void(std::size_t)> step = [&](std::size_t pos) {
    if (stop) return;
    if (pos == n) {
      if (++count > budget) {
        throw ResourceError("filling enumeration stopped after " + std::to_string(count - 1) + " fillings", budget);
      }
      if (!visit(current)) stop = true;
      return;
    }
    std::size_t site = order_[pos];
    int lo = 0;
    int hi = alphabet_ - 1;
    if (!clamp.empty() && clamp[site] >= 0) {
      if (clamp[site] >= alphabet_) throw InputError("clamp symbol outside the alphabet");
      lo = hi = clamp[site];
    }
    for (int v = lo; v <= hi && !stop; ++v) {
      current[site] = static_cast<std::uint8_t>(v);
      if (satisfied(pos)) step(pos + 1);
    }
  };
  step(0);
  return count;
}

std::vector<WindowFilling> enumerate_fillings(const SubshiftSpec& spec, std::int64_t radius, const Pattern& clamp,
                                              std::uint64_t budget) {
  FillingEnumerator e(spec, radius);
  const Window& w = e.window();
  std::vector<int> c(w.size(), -1);
  for (const auto& [s, v] : clamp.symbols) {
    if (!w.contains(s[0], s[1])) throw InputError("clamp site lies outside the window");
    c[w.index(s[0], s[1])] = v;
  }
  std::vector<WindowFilling> out;
  bool proven = extension_proven(spec);
  e.run(
      c,
      [&](const std::vector<std::uint8_t>& s) {
        WindowFilling f{radius, s, true, std::nullopt};
        if (proven) f.extendable = true;
        out.push_back(std::move(f));
        return true;
      },
      budget);
  return out;
}

std::optional<WindowFilling> extend(const SubshiftSpec& spec, const WindowFilling& f, std::int64_t new_radius,
                                    std::uint64_t budget) {
  if (new_radius < f.radius) throw InputError("extension radius must not shrink the window");
  Window inner = f.window();
  Window outer{new_radius};
  if (std::holds_alternative<FullShift>(spec)) {
    WindowFilling out{new_radius, std::vector<std::uint8_t>(outer.size(), 0), true, true};
    for (std::size_t i = 0; i < inner.size(); ++i) {
      Site s = inner.site(i);
      out.symbols[outer.index(s[0], s[1])] = f.symbols[i];
    }
    return out;
  }
  if (const auto* lin = std::get_if<LinearGF2>(&spec)) {
    gf2::LinearSystem sys(outer.size());
    const Site& first = lin->support.front();
    for (std::size_t a = 0; a < outer.size(); ++a) {
      Site anchor = outer.site(a);
      gf2::BitVector row(outer.size());
      bool inside = true;
      for (const auto& s : lin->support) {
        std::int64_t x = s[0] - first[0] + anchor[0];
        std::int64_t y = s[1] - first[1] + anchor[1];
        if (!outer.contains(x, y)) {
          inside = false;
          break;
        }
        row.set(outer.index(x, y));
      }
      if (inside) sys.add(std::move(row));
    }
    for (std::size_t i = 0; i < inner.size(); ++i) {
      Site s = inner.site(i);
      gf2::BitVector row(outer.size());
      row.set(outer.index(s[0], s[1]));
      if (!sys.add(std::move(row), f.symbols[i] & 1)) return std::nullopt;
    }
    auto x = sys.solution();
    if (!x) return std::nullopt;
    WindowFilling out{new_radius, std::vector<std::uint8_t>(outer.size(), 0), true, true};
    for (std::size_t i = 0; i < outer.size(); ++i) out.symbols[i] = x->get(i) ? 1 : 0;
    return out;
  }
  // SFT: inner sites first so the clamp prunes early.
  std::vector<std::size_t> order;
  std::vector<int> clamp(outer.size(), -1);
  for (std::size_t i = 0; i < inner.size(); ++i) {
    Site s = inner.site(i);
    std::size_t j = outer.index(s[0], s[1]);
    order.push_back(j);
    clamp[j] = f.symbols[i];
  }
  for (std::size_t j = 0; j < outer.size(); ++j) {
    Site s = outer.site(j);
    if (!inner.contains(s[0], s[1])) order.push_back(j);
  }
  FillingEnumerator e(spec, new_radius, order);
  std::optional<WindowFilling> out;
  try {
    e.run(
        clamp,
        [&](const std::vector<std::uint8_t>& s) {
          out = WindowFilling{new_radius, s, true, std::nullopt};
          return false;
        },
        budget);
  } catch (const ResourceError&) {
    return std::nullopt;
  }
  return out;
}

Pattern complete_upward(const std::vector<std::vector<int>>& rows) {
  if (rows.empty() || rows.front().empty()) throw InputError("completion needs a nonempty initial row");
  std::vector<std::vector<int>> all;
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (int v : rows[j]) {
      if (v != 0 && v != 1) throw InputError("Ledrappier rows are binary");
    }
    if (j > 0) {
      const auto& prev = all.back();
      if (rows[j].size() + 1 != prev.size()) throw InputError("each supplied row must be one shorter than the last");
      for (std::size_t i = 0; i < rows[j].size(); ++i) {
        if (rows[j][i] != (prev[i] ^ prev[i + 1])) throw InputError("supplied rows violate the recurrence");
      }
    }
    all.push_back(rows[j]);
  }
  while (all.back().size() > 1) {
    const auto& prev = all.back();
    std::vector<int> next(prev.size() - 1);
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = prev[i] ^ prev[i + 1];
    all.push_back(std::move(next));
  }
  Pattern p;
  for (std::size_t j = 0; j < all.size(); ++j) {
    for (std::size_t i = 0; i < all[j].size(); ++i) {
      p.symbols[{static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)}] = all[j][i];
    }
  }
  return p;
}

ConfigDistance config_distance(const WindowFilling& x, const WindowFilling& y) {
  if (x.radius != y.radius || x.symbols.size() != y.symbols.size()) {
    throw InputError("fillings live on different windows");
  }
  Window w = x.window();
  ConfigDistance out;
  std::optional<std::int64_t> best;
  for (std::size_t i = 0; i < x.symbols.size(); ++i) {
    if (x.symbols[i] == y.symbols[i]) continue;
    Site s = w.site(i);
    std::int64_t r = std::max(std::abs(s[0]), std::abs(s[1]));
    if (!best || r < *best) {
      best = r;
      out.first_disagreement = s;
    }
  }
  if (!best) {
    out.truncated = true;
    out.bound = std::ldexp(1.0, static_cast<int>(-(x.radius + 1)));
    return out;
  }
  out.value = std::ldexp(1.0, static_cast<int>(-*best));
  out.bound = out.value;
  return out;
}

// ---------------------------------------------------------------------------
// Skew actions

void check(const SkewActionSpec& spec) {
  if (spec.base.alphabet < 1) throw InputError("base alphabet must be nonempty");
  for (const auto& w : spec.base.forbidden_words) {
    if (w.empty()) throw InputError("forbidden words must be nonempty");
    for (int v : w) {
      if (v < 0 || v >= spec.base.alphabet) throw InputError("forbidden word symbol outside the alphabet");
    }
  }
  if (std::gcd(spec.alpha, spec.beta) != 1) throw InputError("exponent map must be onto Z (gcd(alpha, beta) = 1)");
}

std::int64_t skew_exponent(const SkewActionSpec& spec, std::int64_t n, std::int64_t m) {
  return spec.alpha * n + spec.beta * m;
}

}  // namespace horo
