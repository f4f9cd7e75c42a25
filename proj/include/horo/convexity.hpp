#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace horo {

using Rational = boost::multiprecision::cpp_rational;

/// Exact binary value of a finite double.
Rational exact_rational(double v);
double to_double(const Rational& r);

/// A vector of R^d given exactly: rational coordinates, or the unit vector
/// w / ||w|| of a rational direction w ("sqrt-normalized").
struct ExactVector {
  std::vector<Rational> coords;
  bool sqrt_normalized = false;

  static ExactVector rational(std::vector<Rational> c) { return {std::move(c), false}; }
  static ExactVector from_doubles(const std::vector<double>& c);
  static ExactVector normalized(std::vector<Rational> direction) { return {std::move(direction), true}; }

  std::vector<double> approx() const;
  std::string label() const;
};

/// Convex coefficients with sum lambda_i v_i = 0.
struct InHull {
  std::vector<double> lambda;
  /// Exact coefficients on the stored coordinates (the directions w_i for
  /// sqrt-normalized inputs); lambda_i is proportional to mu_i ||w_i||.
  std::vector<Rational> mu;
  /// lambda itself is exact (no sqrt-normalized vector carries weight).
  bool exact = false;
  double residual = 0;
};

/// <v_i, c> > 0 for every input vector, decided exactly.
struct Separated {
  std::vector<Rational> c;
};

using HullCertificate = std::variant<InHull, Separated>;

/// Gordan dichotomy: exactly one of "0 in conv(V)" and "some c with
/// <v, c> > 0 on V". Exact angular sweep for d = 2, exact simplex otherwise.
HullCertificate origin_in_hull(const std::vector<ExactVector>& vectors);
/// Same question by the exact simplex in every dimension.
HullCertificate origin_in_hull_lp(const std::vector<ExactVector>& vectors);

/// Re-verifies a certificate against the inputs by substitution.
bool verify(const std::vector<ExactVector>& vectors, const HullCertificate& cert, double tolerance = 1e-9);

struct CoverageReport {
  bool covered = false;
  std::vector<bool> probe_passed;
  std::optional<std::size_t> first_failing_probe;
  /// Largest angle between circularly consecutive inputs (d = 2 only).
  std::optional<double> max_gap_degrees;
  /// The exact criterion for every closed half-plane: gap <= 180 degrees.
  std::optional<bool> gap_at_most_half_turn;
};

/// For each probe c: does {x : <x, c> >= 0} contain an input vector.
CoverageReport halfspace_coverage(const std::vector<ExactVector>& vectors, const std::vector<std::vector<double>>& probes);

struct IntersectionResult {
  bool empty = false;
  HullCertificate certificate;
  /// A common point of every open half-space {<y, v> < 0} when nonempty.
  std::optional<std::vector<Rational>> witness;
};

IntersectionResult intersection_empty(const std::vector<ExactVector>& vectors);

// ---------------------------------------------------------------------------
// Linear programming

/// Exact phase-one simplex with Bland's rule: some x >= 0 with A x = b, or
/// nullopt when infeasible.
std::optional<std::vector<Rational>> feasible_point(const std::vector<std::vector<Rational>>& a,
                                                    const std::vector<Rational>& b);

}  // namespace horo
