#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "horo/dynamics.hpp"
#include "horo/horoball.hpp"

namespace horo {

/// A direction v in S^1, carried as a positive multiple of an integer vector so
/// that every half-plane test is exact. `special` names registered irrational
/// representatives, e.g. "sqrt-normalized" for (1,1)/sqrt(2).
struct Direction {
  std::array<std::int64_t, 2> integer{1, 0};
  std::optional<std::string> special;

  std::array<double, 2> unit() const;
  std::string label() const;
  Horoball horoball() const { return l2_horoball(std::vector<std::int64_t>{integer[0], integer[1]}); }
  bool operator==(const Direction& o) const { return integer == o.integer; }
};

/// Primitive (a, b) with max(|a|, |b|) <= q, sorted counterclockwise from
/// (1, 0). With `diag`, the special (1,1)/sqrt(2) is registered on (1, 1).
std::vector<Direction> farey_grid(std::int64_t q, bool diag = false);
/// "farey:Q", "farey:Q+diag", or an explicit list "a,b;c,d;diag".
std::vector<Direction> parse_grid(std::string_view text);

/// k with 2^{-k} <= eps < 2^{-k+1}, eps in (0, 1].
int k_from_epsilon(double eps);

// ---------------------------------------------------------------------------
// Certificates

struct WindowDeterministic {
  std::int64_t window = 0;
  int k = 0;
};

struct Witness {
  WindowFilling x;
  WindowFilling y;
  std::int64_t window = 0;
  int k = 0;
  /// The pair extends to the window of radius N + 2 keeping its agreement on
  /// the dilated horoball.
  bool extendable = false;
};

struct Inconclusive {
  std::int64_t window = 0;
  int k = 0;
  std::string reason;
};

using Certificate = std::variant<WindowDeterministic, Witness, Inconclusive>;

std::string_view kind(const Certificate& c);

/// Sites of [-N, N]^2 split by a horoball at scale k.
///   known:  D cap W, D = H + [-(k-1), k-1]^2 (the sites where an
///           (eps, H)-asymptotic pair must agree)
///   target: [-(k-1), k-1]^2 minus D (a disagreement there puts the pair at
///           distance > 2^{-k}); when empty, the sites of W minus D of least
///           l_inf norm.
struct WindowGeometry {
  Window window;
  int k = 0;
  std::vector<std::size_t> known;
  std::vector<std::size_t> target;
  std::vector<bool> in_known;
  bool target_fallback = false;
  bool misses_window = false;
};

WindowGeometry window_geometry(const Horoball& h, int k, std::int64_t n);

enum class Method { Auto, Exhaustive };

struct StatusOptions {
  Method method = Method::Auto;
  std::uint64_t budget = default_filling_budget;
};

Certificate horoball_status(const SubshiftSpec& spec, const Horoball& h, int k, std::int64_t n,
                            const StatusOptions& options = {});
Certificate direction_status(const SubshiftSpec& spec, const Direction& v, int k, std::int64_t n,
                             const StatusOptions& options = {});

/// Independent re-check of a certificate's defining conditions: validity of
/// both fillings, agreement on the known sites, a disagreement on the target,
/// and (when flagged) an extension to N + 2 that keeps the agreement.
bool verify_witness(const SubshiftSpec& spec, const Horoball& h, const Witness& w);

// ---------------------------------------------------------------------------
// ND sets

struct NDEntry {
  Direction direction;
  Certificate certificate;
};

struct NDReport {
  int k = 0;
  std::int64_t window = 0;
  std::vector<NDEntry> entries;
  std::map<std::string, std::string> metadata;

  std::vector<Direction> witnesses() const;
};

std::string fnv1a_hex(std::string_view text);

NDReport nd_set(const SubshiftSpec& spec, int k, std::int64_t n, const std::vector<Direction>& grid,
                const StatusOptions& options = {}, std::string grid_description = "");

// ---------------------------------------------------------------------------
// Skew actions

struct ExponentStep {
  std::int64_t bound = 0;  // B of the box [-B, B]^2
  std::uint64_t sites = 0;
  std::optional<std::int64_t> min;
  std::optional<std::int64_t> max;
};

struct ExponentImage {
  std::vector<ExponentStep> steps;
  bool bounded_below = false;
  bool bounded_above = false;
  /// Whether E contains every integer of [-N, N] (at the largest box).
  bool covers_window = false;
  std::vector<std::int64_t> missing;  // integers of [-N, N] not realized
};

/// E = {alpha n + beta m : (n, m) in H cap [-B, B]^2}, B = N 2^i, i = 0..4.
/// A side counts as bounded when its extreme value is constant over the
/// last three boxes.
ExponentImage exponent_image(const SkewActionSpec& spec, const Horoball& h, std::int64_t n);

struct SkewReport {
  Certificate certificate;
  ExponentImage image;
  /// Witness pair of base configurations on [-L, L], first index -L.
  std::int64_t base_radius = 0;
  std::vector<int> base_x;
  std::vector<int> base_y;
  std::optional<std::int64_t> difference_site;
};

SkewReport skew_horoball_status(const SkewActionSpec& spec, const Horoball& h, int k, std::int64_t n);

/// The four l1 cones with apex (t, t): heading (0,-1), (0,1), (1,0), (-1,0).
std::vector<std::pair<std::string, PolyhedralZ2>> apex_cones(std::int64_t t);

}  // namespace horo
