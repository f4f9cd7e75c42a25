#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "horo/metric_group.hpp"

namespace horo {

// ---------------------------------------------------------------------------
// Horofunctions

/// l2 horofunction x -> <x, v> on Z^d with ||v||_2 = 1. When v is a positive
/// multiple of an integer vector, that vector is kept for tie-free signs.
struct Linear {
  std::vector<double> v;
  std::optional<std::vector<std::int64_t>> integer_direction;
};

enum class PolyhedralKind { HalfplaneDiagonal, HalfplaneAntidiagonal, HalfplaneAxis, QuarterSpace };

std::string_view to_string(PolyhedralKind k);

/// l1 (or l_inf) horofunction on Z^2, the limit of b_{g_t} along
/// g_t = offset + t * heading with heading in {-1,0,1}^2 \ {0}.
///
/// For l1 the value is  sum_{h_i != 0} -h_i (x_i - c_i) + sum_{h_i = 0} |x_i - c_i|
/// where c is the apex. Diagonal headings give half-planes bounded by a
/// diagonal or antidiagonal line, axis headings give quarter spaces. The l_inf
/// case is evaluated through the rotation (x1, x2) -> (x1 + x2, x1 - x2), which
/// carries l_inf to l1 / 2.
///
/// The apex is free, so translated horoballs are representable; the value
/// vanishes at the origin exactly when `normalized()` holds.
struct PolyhedralZ2 {
  Norm norm = Norm::L1;
  std::array<int, 2> heading{1, 0};
  std::array<std::int64_t, 2> apex{0, 0};

  /// Twice the value, an integer in both norms.
  std::int64_t twice_value(std::int64_t x, std::int64_t y) const;
  double value(std::int64_t x, std::int64_t y) const { return static_cast<double>(twice_value(x, y)) / 2.0; }
  PolyhedralKind kind() const;
  bool normalized() const { return twice_value(0, 0) == 0; }
  PolyhedralZ2 translated(std::int64_t dx, std::int64_t dy) const;

  /// The normalized limit along offset + t * heading.
  static PolyhedralZ2 from_ray(Norm norm, std::array<int, 2> heading, std::array<std::int64_t, 2> offset);

  bool operator==(const PolyhedralZ2&) const = default;
};

/// Explicit generating sequence g_1, g_2, ... for Sampled horofunctions.
struct SequenceRule {
  enum class Kind { Ray, Basis, Explicit };
  Kind kind = Kind::Ray;
  std::vector<std::int64_t> direction;  // Ray: g_n = offset + n * direction
  std::vector<std::int64_t> offset;
  std::vector<GroupElement> elements;  // Explicit: g_n = elements[n - 1]

  static SequenceRule ray(std::vector<std::int64_t> direction, std::vector<std::int64_t> offset = {});
  static SequenceRule basis() { return SequenceRule{Kind::Basis, {}, {}, {}}; }
  static SequenceRule list(std::vector<GroupElement> elements);

  GroupElement at(std::int64_t n, const MetricGroup& group) const;
  std::optional<std::int64_t> length() const;
};

/// Truncated limit b_{g_{n*}} with stabilization evidence. Never a claim of
/// convergence.
struct Sampled {
  std::shared_ptr<const MetricGroup> group;
  SequenceRule rule;
  std::int64_t truncation = 1000;
  double tolerance = 1e-4;
};

using Horofunction = std::variant<Linear, PolyhedralZ2, Sampled>;

struct HoroValue {
  double value = 0;
  /// max - min of b_{g_n}(x) over the last quarter of indices (Sampled only).
  std::optional<double> span;
  bool unstable = false;
};

HoroValue eval(const Horofunction& j, const GroupElement& x);

std::string describe(const Horofunction& j);

/// H = {x : j(x) < 0}, strict.
class Horoball {
 public:
  explicit Horoball(Horofunction j) : j_(std::move(j)) {}

  const Horofunction& horofunction() const { return j_; }
  bool contains(const GroupElement& x) const;
  /// Fast path for Z^2 horofunctions. Exact for Linear with an integer
  /// direction and for PolyhedralZ2.
  bool contains(std::int64_t x, std::int64_t y) const;

 private:
  Horofunction j_;
};

/// Horoball {<x, v> < 0}; v is normalized. Zero vectors are rejected.
Horoball l2_horoball(std::vector<double> v);
/// Exact variant for v proportional to an integer vector.
Horoball l2_horoball(std::vector<std::int64_t> direction);
Linear linear_horofunction(std::vector<std::int64_t> direction);

/// The l2 limit of b_{g_n} for g_n / ||g_n|| -> u is <x, -u>; returns that
/// Linear horofunction (v = -u, the outgoing normal of the horoball).
Linear l2_limit_of_ray(std::vector<std::int64_t> u);

/// Every distinct l1 (or l_inf) horoball of Z^2 as seen on [-radius, radius]^2,
/// one normalized representative per distinct restriction, in a fixed order.
std::vector<PolyhedralZ2> enumerate_polyhedral_horoballs_z2(int radius, Norm norm = Norm::L1);

/// Membership raster on [-radius, radius]^2, rows from y = radius down.
std::vector<std::uint8_t> raster(const Horoball& h, int radius);

// ---------------------------------------------------------------------------
// Finite verifiers

struct LargenessResult {
  bool found = false;
  std::optional<GroupElement> center;
  double center_value = 0;
  double radius = 0;
  std::size_t candidates_examined = 0;
  std::string note;
};

/// Searches the closed ball of radius search_bound for g with j(g) < -4R and
/// certifies B_R(g) inside H by exact enumeration.
LargenessResult largeness_certificate(const MetricGroup& group, const Horoball& h, double radius,
                                      double search_bound);

/// Exact check that every element of the open ball B_R(center) lies in H.
bool ball_inside(const MetricGroup& group, const Horoball& h, const GroupElement& center, double radius);

struct MeetingWitness {
  std::vector<double> direction;
  GroupElement point;
  std::int64_t radius = 0;  // least integer N with ||point|| < N
};

struct MeetingRadiusReport {
  std::int64_t radius = 0;
  std::vector<MeetingWitness> witnesses;
};

/// Least integer N such that every l2 horoball {<x,v> < 0}, v on the grid,
/// meets the open ball B_N(0) of Z^d. Witnesses are lattice points of least
/// norm with <p, v> < 0.
MeetingRadiusReport meeting_radius(const MetricGroup& group, const std::vector<std::vector<double>>& directions);

std::vector<std::vector<double>> circle_grid(std::size_t count);
std::vector<std::vector<double>> sphere_grid(std::size_t count);

struct TangencyCheck {
  bool passed = false;
  std::optional<GroupElement> offending;
  std::optional<Linear> horofunction;
  std::string reason;
};

/// For l2 on Z^d with H = {<p, g> < 0}: checks that every lattice p with
/// <p, g> <= 0 and ||p|| <= M satisfies ||p + g|| < ||g|| + eps, i.e. that
/// [cl(H) cap cl(B_M)] g lies in B_eps B_{||g||} of the ambient R^d.
TangencyCheck tangency_check(const MetricGroup& group, double m, double eps, const GroupElement& g);

struct TangencyReport {
  std::optional<std::int64_t> n0;  // least n with passes for all n..n_max
  std::optional<double> n0_norm;   // ||n0 * ray||
  std::int64_t n_max = 0;
  std::vector<std::int64_t> failing;
  std::optional<GroupElement> last_offending;
};

TangencyReport verify_tangency(const MetricGroup& group, double m, double eps, const std::vector<std::int64_t>& ray,
                               std::int64_t n_max);

/// Open cone of Z^2 swept counterclockwise from `from` to `to` (at most a
/// half-turn; exactly a half-turn is an open half-plane).
struct RationalCone {
  std::array<std::int64_t, 2> from;
  std::array<std::int64_t, 2> to;

  bool contains(std::int64_t x, std::int64_t y) const;
};

struct ConeShiftReport {
  std::optional<std::int64_t> n1;  // least r0 with the inclusion for all r0..r_max
  std::int64_t r_max = 0;
  std::vector<std::int64_t> failing;
  std::optional<GroupElement> last_offending;
  /// max over the extreme directions u of <g, u/||u||>, i.e. of j(g^{-1}).
  double precondition_value = 0;
  bool precondition_checked = true;
};

/// Checks [G0 cap B_{r+eta}(0)] + g inside B_r(0) in l2 for r = 1..r_max.
/// Requires <g, u> < -eta ||u|| on both extreme directions of the cone;
/// otherwise throws InputError naming the offending direction (unless
/// check_precondition is false).
ConeShiftReport verify_cone_shift(const RationalCone& cone, double eta, const GroupElement& g, std::int64_t r_max,
                                  bool check_precondition = true);

}  // namespace horo
