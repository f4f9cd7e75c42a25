#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "horo/metric_group.hpp"

namespace horo {

using Site = std::array<std::int64_t, 2>;

/// Finite pattern: symbols on a finite support of Z^2.
struct Pattern {
  std::map<Site, int> symbols;

  bool operator==(const Pattern&) const = default;
};

/// Z^2 subshift of finite type given by forbidden patterns.
struct SFT {
  int alphabet = 2;
  std::vector<Pattern> forbidden;
};

/// Binary subshift defined by sum_{s in support} x_{z+s} = 0 mod 2 for all z.
struct LinearGF2 {
  std::vector<Site> support;
};

struct FullShift {
  int alphabet = 2;
};

using SubshiftSpec = std::variant<SFT, LinearGF2, FullShift>;

LinearGF2 ledrappier();
/// Whether every locally admissible window filling extends to any larger
/// window: full shifts, and the Ledrappier rule through its row recurrences.
bool extension_proven(const SubshiftSpec& spec);
int alphabet_size(const SubshiftSpec& spec);
/// Throws InputError on invalid specs (empty forbidden supports, alphabet < 1,
/// fewer than two linear support sites).
void check(const SubshiftSpec& spec);
std::string describe(const SubshiftSpec& spec);

/// True iff no forbidden pattern (or violated linear constraint) lies fully
/// inside the support of p.
bool validate(const SubshiftSpec& spec, const Pattern& p);

// ---------------------------------------------------------------------------
// Windows

/// The box [-N, N]^2 with sites indexed in raster order (y outer, x inner,
/// both ascending).
struct Window {
  std::int64_t radius = 0;

  std::int64_t side() const { return 2 * radius + 1; }
  std::size_t size() const { return static_cast<std::size_t>(side() * side()); }
  bool contains(std::int64_t x, std::int64_t y) const {
    return x >= -radius && x <= radius && y >= -radius && y <= radius;
  }
  std::size_t index(std::int64_t x, std::int64_t y) const {
    return static_cast<std::size_t>((y + radius) * side() + (x + radius));
  }
  Site site(std::size_t i) const {
    auto s = static_cast<std::int64_t>(i);
    return {s % side() - radius, s / side() - radius};
  }
};

struct WindowFilling {
  std::int64_t radius = 0;
  std::vector<std::uint8_t> symbols;  // raster order of Window{radius}
  bool valid = false;
  /// Set when extension to a larger window is known (proven or found).
  std::optional<bool> extendable;

  Window window() const { return Window{radius}; }
  int at(std::int64_t x, std::int64_t y) const { return symbols[window().index(x, y)]; }
  Pattern pattern() const;
};

/// Local admissibility: no forbidden pattern fully inside the window.
bool locally_admissible(const SubshiftSpec& spec, const WindowFilling& f);

/// Backtracking enumerator of locally admissible fillings of [-N, N]^2.
/// Sites are assigned in the given order (raster order by default), symbols
/// in ascending order, so the output order is deterministic and fillings
/// sharing an assignment of a prefix of the order come out consecutively.
class FillingEnumerator {
 public:
  FillingEnumerator(const SubshiftSpec& spec, std::int64_t radius, std::vector<std::size_t> order = {});

  const Window& window() const { return window_; }
  const std::vector<std::size_t>& order() const { return order_; }

  /// Calls visit for each filling extending the clamp (entries < 0 are free).
  /// visit returns false to stop. Throws ResourceError once more than budget
  /// fillings have been produced. Returns the number visited.
  std::uint64_t run(const std::vector<int>& clamp, const std::function<bool(const std::vector<std::uint8_t>&)>& visit,
                    std::uint64_t budget) const;

 private:
  struct Constraint {
    std::vector<std::size_t> sites;
    std::vector<std::uint8_t> symbols;  // forbidden symbols (SFT) or empty (parity)
  };

  Window window_;
  int alphabet_;
  std::vector<std::size_t> order_;
  std::vector<Constraint> constraints_;
  // constraints completed when the site at each order position is assigned
  std::vector<std::vector<std::size_t>> completes_at_;
};

inline constexpr std::uint64_t default_filling_budget = 2'000'000;

/// All locally admissible fillings of [-N, N]^2 extending clamp, in raster
/// backtracking order.
std::vector<WindowFilling> enumerate_fillings(const SubshiftSpec& spec, std::int64_t radius, const Pattern& clamp,
                                              std::uint64_t budget = default_filling_budget);

/// Extends a filling to a larger window. Exact: GF(2) elimination for linear
/// specs, padding for full shifts, bounded backtracking for SFTs (nullopt
/// when no extension exists or the budget runs out).
std::optional<WindowFilling> extend(const SubshiftSpec& spec, const WindowFilling& f, std::int64_t new_radius,
                                    std::uint64_t budget = default_filling_budget);

/// Ledrappier completion x_{i,j+1} = x_{i,j} + x_{i+1,j} mod 2. Row j of the
/// input sits at y = j starting at x = 0; later rows continue the recurrence
/// until width 1. Supplied rows must already satisfy the recurrence.
Pattern complete_upward(const std::vector<std::vector<int>>& rows);

struct ConfigDistance {
  double value = 0;
  /// True when the fillings agree on the whole window; the distance is then
  /// only known to be at most `bound`.
  bool truncated = false;
  double bound = 0;
  std::optional<Site> first_disagreement;
};

/// 2^{-r}, r the least l_inf norm of a disagreement site.
ConfigDistance config_distance(const WindowFilling& x, const WindowFilling& y);

// ---------------------------------------------------------------------------
// Skew actions

/// One-dimensional subshift (full shift when no words are forbidden).
struct ZSubshift {
  int alphabet = 2;
  std::vector<std::vector<int>> forbidden_words;
  /// Least k such that 2^{-k}-closeness under every power forces equality;
  /// 1 for every Z-subshift under the configuration metric.
  std::optional<int> expansivity_level = 1;
};

/// Z^2 action (n, m) -> sigma^{alpha n + beta m} on a Z-subshift.
struct SkewActionSpec {
  ZSubshift base;
  std::int64_t alpha = 1;
  std::int64_t beta = -2;
};

void check(const SkewActionSpec& spec);
std::int64_t skew_exponent(const SkewActionSpec& spec, std::int64_t n, std::int64_t m);

}  // namespace horo
