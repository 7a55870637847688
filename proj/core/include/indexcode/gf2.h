#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace indexcode {

// Fixed-length bit string; addition is XOR.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(size_t num_bits);

  static BitVector unit(size_t num_bits, size_t index);

  size_t size() const { return num_bits_; }
  bool test(size_t i) const;
  void set(size_t i, bool value = true);
  void flip(size_t i);

  BitVector& operator^=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) {
    a ^= b;
    return a;
  }

  bool none() const;
  size_t count() const;
  // Index of the highest set bit, or nullopt when all zero.
  std::optional<size_t> highest() const;

  // Most significant bit first, e.g. "0110".
  std::string to_string() const;

  std::vector<uint64_t>& words() { return words_; }
  const std::vector<uint64_t>& words() const { return words_; }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  size_t num_bits_ = 0;
  std::vector<uint64_t> words_;
};

// Row-echelon basis of a GF(2) subspace, keyed by leading bit.
class Gf2Basis {
 public:
  explicit Gf2Basis(size_t dimension);

  // Returns true when v was independent of the current basis.
  bool insert(BitVector v);
  BitVector reduce(BitVector v) const;
  bool in_span(const BitVector& v) const { return reduce(v).none(); }
  size_t rank() const { return rank_; }
  size_t dimension() const { return pivots_.size(); }

 private:
  std::vector<std::optional<BitVector>> pivots_;
  size_t rank_ = 0;
};

}  // namespace indexcode
