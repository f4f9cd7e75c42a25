#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace horo::gf2 {

/// Dense bit vector.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i, bool v = true) {
    if (v) {
      words_[i / 64] |= std::uint64_t{1} << (i % 64);
    } else {
      words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
    }
  }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
  BitVector& operator^=(const BitVector& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
  }
  bool any() const;
  /// Index of the lowest set bit at or after `from`, or size() if none.
  std::size_t next_set(std::size_t from) const;
  bool operator==(const BitVector&) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Row-reduced system of linear equations a . x = b over GF(2).
class LinearSystem {
 public:
  explicit LinearSystem(std::size_t variables) : variables_(variables) {}

  std::size_t variables() const { return variables_; }
  /// Adds one equation; returns false if it contradicts the system.
  bool add(BitVector row, bool rhs = false);
  bool consistent() const { return consistent_; }
  std::size_t rank() const { return rows_.size(); }

  /// One solution with every free variable set to 0.
  std::optional<BitVector> solution() const;
  /// Basis of the homogeneous solution space.
  std::vector<BitVector> nullspace() const;

 private:
  std::size_t variables_;
  bool consistent_ = true;
  // Reduced rows, each with a distinct pivot cleared from every other row.
  std::vector<BitVector> rows_;
  std::vector<bool> rhs_;
  std::vector<std::size_t> pivots_;
};

}  // namespace horo::gf2
