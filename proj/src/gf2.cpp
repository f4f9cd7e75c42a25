#include "horo/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace horo::gf2 {

bool BitVector::any() const {
  for (auto w : words_) {
    if (w != 0) return true;
  }
  return false;
}

std::size_t BitVector::next_set(std::size_t from) const {
  if (from >= size_) return size_;
  std::size_t w = from / 64;
  std::uint64_t word = words_[w] & (~std::uint64_t{0} << (from % 64));
  while (true) {
    if (word != 0) {
      std::size_t i = w * 64 + static_cast<std::size_t>(std::countr_zero(word));
      return i < size_ ? i : size_;
    }
    if (++w == words_.size()) return size_;
    word = words_[w];
  }
}

bool LinearSystem::add(BitVector row, bool rhs) {
  if (row.size() != variables_) throw std::invalid_argument("equation width does not match the system");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (row.get(pivots_[r])) {
      row ^= rows_[r];
      rhs ^= rhs_[r];
    }
  }
  std::size_t pivot = row.next_set(0);
  if (pivot == variables_) {
    if (rhs) consistent_ = false;
    return !rhs;
  }
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].get(pivot)) {
      rows_[r] ^= row;
      rhs_[r] = rhs_[r] ^ rhs;
    }
  }
  rows_.push_back(std::move(row));
  rhs_.push_back(rhs);
  pivots_.push_back(pivot);
  return true;
}

std::optional<BitVector> LinearSystem::solution() const {
  if (!consistent_) return std::nullopt;
  BitVector x(variables_);
  for (std::size_t r = 0; r < rows_.size(); ++r) x.set(pivots_[r], rhs_[r]);
  return x;
}

std::vector<BitVector> LinearSystem::nullspace() const {
  std::vector<bool> is_pivot(variables_, false);
  for (auto p : pivots_) is_pivot[p] = true;
  std::vector<BitVector> basis;
  for (std::size_t f = 0; f < variables_; ++f) {
    if (is_pivot[f]) continue;
    BitVector v(variables_);
    v.set(f);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r].get(f)) v.set(pivots_[r]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace horo::gf2
