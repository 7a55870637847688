#include "indexcode/gf2.h"

#include <bit>
#include <stdexcept>

namespace indexcode {

BitVector::BitVector(size_t num_bits)
    : num_bits_(num_bits), words_((num_bits + 63) / 64, 0) {}

BitVector BitVector::unit(size_t num_bits, size_t index) {
  BitVector v(num_bits);
  v.set(index);
  return v;
}

bool BitVector::test(size_t i) const {
  return (words_[i / 64] >> (i % 64)) & 1u;
}

void BitVector::set(size_t i, bool value) {
  if (i >= num_bits_) throw std::out_of_range("BitVector::set");
  const uint64_t mask = uint64_t{1} << (i % 64);
  if (value) {
    words_[i / 64] |= mask;
  } else {
    words_[i / 64] &= ~mask;
  }
}

void BitVector::flip(size_t i) {
  if (i >= num_bits_) throw std::out_of_range("BitVector::flip");
  words_[i / 64] ^= uint64_t{1} << (i % 64);
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.num_bits_ != num_bits_) {
    throw std::invalid_argument("BitVector length mismatch");
  }
  for (size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

bool BitVector::none() const {
  for (uint64_t w : words_) {
    if (w) return false;
  }
  return true;
}

size_t BitVector::count() const {
  size_t c = 0;
  for (uint64_t w : words_) c += std::popcount(w);
  return c;
}

std::optional<size_t> BitVector::highest() const {
  for (size_t w = words_.size(); w-- > 0;) {
    if (words_[w]) return w * 64 + (63 - std::countl_zero(words_[w]));
  }
  return std::nullopt;
}

std::string BitVector::to_string() const {
  std::string s;
  s.reserve(num_bits_);
  for (size_t i = num_bits_; i-- > 0;) s += test(i) ? '1' : '0';
  return s;
}

Gf2Basis::Gf2Basis(size_t dimension) : pivots_(dimension) {}

bool Gf2Basis::insert(BitVector v) {
  v = reduce(std::move(v));
  const auto lead = v.highest();
  if (!lead) return false;
  pivots_[*lead] = std::move(v);
  ++rank_;
  return true;
}

// A pivot row led by bit i has no bits above i, so a single high-to-low
// sweep leaves a residue that is zero exactly when v is in the span.
BitVector Gf2Basis::reduce(BitVector v) const {
  const auto lead = v.highest();
  if (!lead) return v;
  for (size_t i = *lead + 1; i-- > 0;) {
    if (v.test(i) && pivots_[i]) v ^= *pivots_[i];
  }
  return v;
}

}  // namespace indexcode
