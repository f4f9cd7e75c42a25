#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace horo {

/// Raised for malformed input: dimension mismatches, invalid descriptors,
/// violated preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an enumeration would exceed its configured budget.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::uint64_t budget)
      : std::runtime_error(what + " (budget " + std::to_string(budget) + ")"), budget_(budget) {}
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t budget_;
};

// ---------------------------------------------------------------------------
// Group elements

/// Dense integer vector, used for Z^d.
struct IntVector {
  std::vector<std::int64_t> coords;
  auto operator<=>(const IntVector&) const = default;
};

/// Finitely supported vector over generator indices 1, 2, ...; never stores
/// a zero coefficient.
struct SparseVector {
  std::map<std::int64_t, std::int64_t> coeffs;
  auto operator<=>(const SparseVector&) const = default;
};

/// Freely reduced word. Letter +i is generator i (1-based), -i its inverse.
struct Word {
  std::vector<int> letters;
  auto operator<=>(const Word&) const = default;
};

using GroupElement = std::variant<IntVector, SparseVector, Word>;

GroupElement vec(std::vector<std::int64_t> coords);
GroupElement sparse(std::map<std::int64_t, std::int64_t> coeffs);
/// Reduces on construction.
GroupElement word(std::vector<int> letters);

std::string to_string(const GroupElement& g);

// ---------------------------------------------------------------------------
// Distances

/// A distance value that keeps exactness: either an integer or the square root
/// of an integer (the l2 case).
struct Distance {
  std::int64_t magnitude = 0;
  bool is_sqrt = false;

  static Distance exact(std::int64_t v) { return {v, false}; }
  static Distance sqrt_of(std::int64_t squared) { return {squared, true}; }

  double value() const;
  /// d < r (or d <= r when inclusive), decided without rounding the distance.
  bool below(double r, bool inclusive = false) const;
  bool operator==(const Distance& o) const;
  std::partial_ordering operator<=>(const Distance& o) const;
};

// ---------------------------------------------------------------------------
// Group descriptors

enum class Norm { L1, L2, Linf };

std::string_view to_string(Norm n);

/// Generator weights i -> w(i) >= 1. Either a finite explicit table (finitely
/// many generators) or the affine rule w(i) = slope * i + intercept over all
/// i >= 1, which must grow.
struct WeightFunction {
  std::vector<std::int64_t> table;
  std::int64_t slope = 0;
  std::int64_t intercept = 0;
  bool affine = false;

  static WeightFunction explicit_weights(std::vector<std::int64_t> w);
  static WeightFunction linear(std::int64_t slope, std::int64_t intercept = 0);

  std::int64_t operator()(std::int64_t index) const;
  /// Generator indices with weight <= bound, ascending. Finite by properness.
  std::vector<std::int64_t> indices_with_weight_at_most(std::int64_t bound) const;
  std::optional<std::int64_t> generator_count() const;
  std::string describe() const;
};

struct ZdLp {
  int dimension = 2;
  Norm norm = Norm::L1;
};

struct WeightedFreeAbelian {
  WeightFunction weights;
};

struct DirectSumZ2 {
  WeightFunction weights;
};

/// Metric induced by a finite nested ball sequence B_0, ..., B_cutoff over an
/// ambient integer lattice Z^d (dimension > 0) or the sparse direct sum
/// (dimension == 0).
struct BallSequence {
  int ambient_dimension = 1;
  std::vector<std::vector<GroupElement>> sets;
};

/// Free group of the given rank with its word metric.
struct FreeGroup {
  int rank = 2;
};

using GroupDescriptor = std::variant<ZdLp, WeightedFreeAbelian, DirectSumZ2, BallSequence, FreeGroup>;

inline constexpr std::uint64_t default_enumeration_budget = 5'000'000;

/// A group together with a proper right-invariant distance. Immutable.
class MetricGroup {
 public:
  explicit MetricGroup(GroupDescriptor descriptor);

  static MetricGroup zd(int dimension, Norm norm) { return MetricGroup(ZdLp{dimension, norm}); }

  const GroupDescriptor& descriptor() const { return descriptor_; }
  std::string describe() const;

  /// Dimension for lattice groups, nullopt otherwise.
  std::optional<int> lattice_dimension() const;

  GroupElement identity() const;
  GroupElement multiply(const GroupElement& g, const GroupElement& h) const;
  GroupElement inverse(const GroupElement& g) const;
  /// Throws InputError if g is not an element of this group.
  void check(const GroupElement& g) const;

  Distance dist(const GroupElement& g, const GroupElement& h) const;
  Distance norm(const GroupElement& g) const { return dist(g, identity()); }

  /// Exact enumeration of the open (or closed) ball, sorted.
  std::vector<GroupElement> ball(const GroupElement& center, double radius, bool closed = false,
                                 std::uint64_t budget = default_enumeration_budget) const;

  /// b_g(x) = d(g, x) - d(g, 1).
  double busemann(const GroupElement& g, const GroupElement& x) const;

 private:
  std::vector<GroupElement> ball_at_identity(double radius, bool closed, std::uint64_t budget) const;

  GroupDescriptor descriptor_;
  // BallSequence lookup: element -> least n with element in B_n.
  std::shared_ptr<const std::map<GroupElement, int>> levels_;
};

/// Parses descriptors such as "z2-l1", "z3-l2", "z2-linf", "weighted",
/// "sum-z2", "free:2". `weights` is a comma list, optionally ending in "..."
/// to continue it as an arithmetic progression ("1,2,3,...").
MetricGroup parse_group(std::string_view descriptor, std::string_view weights = "");
WeightFunction parse_weights(std::string_view text);

// ---------------------------------------------------------------------------
// Ball-sequence construction

struct BallSequenceViolation {
  std::string axiom;  // "identity", "symmetric", "product"
  int n = 0;
  int m = 0;
  GroupElement element;
};

struct BallSequenceReport {
  bool ok = false;
  std::optional<BallSequenceViolation> violation;
  /// Whether every standard generator (and inverse) appears in some B_n. Only
  /// meaningful for Z^d; the union axiom is not finitely checkable otherwise.
  std::optional<bool> generators_covered;
  std::optional<MetricGroup> induced;
};

/// Checks B_0 = {1}, B_n = B_n^{-1} and B_n B_m within B_{n+m} for
/// n + m <= cutoff. Sets are scanned in the order given. On success the
/// induced metric d(g,h) = min{n : g h^{-1} in B_n} is returned.
BallSequenceReport ball_sequence_check(std::vector<std::vector<GroupElement>> sets, int cutoff,
                                       int ambient_dimension);

}  // namespace horo
