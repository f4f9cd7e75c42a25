#pragma once

// Brute-force reference implementations. Nothing here calls into the library.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace oracle {

using Point = std::array<std::int64_t, 2>;

enum class Lp { L1, L2, Linf };

/// Squared l2 norm, or the l1 / l_inf norm, of (x, y).
double norm(Lp p, std::int64_t x, std::int64_t y);

/// Lattice points p of Z^2 with ||p - c|| < r (or <= r), by scanning the box.
std::vector<Point> ball_z2(Lp p, Point c, double r, bool closed);

double busemann_z2(Lp p, Point g, Point x);

/// All Ledrappier fillings of [-n, n]^2 (n <= 2) as bitmasks in raster order
/// (y outer ascending, x inner ascending), by testing every binary filling.
std::vector<std::uint32_t> ledrappier_fillings(int n);

enum class Verdict { Deterministic, Witness };

/// Decides the window certificate for the half-plane {<p, (a, b)> < 0} at
/// scale k by grouping fillings by their restriction to the known sites.
Verdict halfplane_verdict(const std::vector<std::uint32_t>& fillings, int n, int k, std::int64_t a, std::int64_t b);

/// Known sites (H + [-(k-1), k-1]^2) and target sites inside [-n, n]^2.
struct Split {
  std::vector<bool> known;
  std::vector<bool> target;
};
Split halfplane_split(int n, int k, std::int64_t a, std::int64_t b);

/// 0 in conv(V) for integer vectors of Z^2, by Caratheodory over pairs and
/// triples.
bool origin_in_hull_z2(const std::vector<Point>& v);

/// Largest circular gap between the directions, in degrees.
double max_gap_degrees(const std::vector<std::array<double, 2>>& v);

/// Least lattice norm among p with <p, v> < 0, over the box [-r, r]^2.
double least_negative_norm(std::array<double, 2> v, int r);

/// Least r0 with [C cap B_{r+eta}(0)] + g inside the open ball B_r(0) for all
/// r0 <= r <= r_max, where C is the open cone {|y| < x}.
std::optional<std::int64_t> cone_shift_threshold(double eta, Point g, std::int64_t r_max);

/// Least n0 such that for every n in [n0, n_max], every lattice p with
/// p_x <= 0 and ||p|| <= m satisfies ||p + (n, 0)|| < n + eps.
std::optional<std::int64_t> tangency_threshold(double m, double eps, std::int64_t n_max);

}  // namespace oracle
