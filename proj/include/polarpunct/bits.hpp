#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace polarpunct {

/// Raw bits, one per byte (values 0 or 1). Carrier for u, x and transmit masks.
using BitVector = std::vector<std::uint8_t>;

/// Sorted, duplicate-free list of indices in [0, N).
using IndexSet = std::vector<std::size_t>;

/// Largest stage count accepted anywhere in the library (N = 2^30).
inline constexpr unsigned kMaxStages = 30;

/// Digits of an index, most significant first: value = sum bits[k] * 2^(n-1-k).
struct BinaryExpansion {
  std::vector<std::uint8_t> bits;
  std::size_t value = 0;

  friend bool operator==(const BinaryExpansion&, const BinaryExpansion&) = default;
};

BinaryExpansion binary_expansion(std::size_t index, unsigned n);

/// Inverse of binary_expansion (MSB-first digits).
std::size_t index_of(std::span<const std::uint8_t> msb_first_bits);

unsigned hamming_weight(std::size_t index);

/// i ⪰₁ j: every one-digit of j is also a one-digit of i.
bool dominates_ones(std::size_t i, std::size_t j);

/// i ⪰₀ j: every zero-digit of j is also a zero-digit of i.
bool dominates_zeros(std::size_t i, std::size_t j);

/// Permutation of the n digit positions (0-based, MSB-first): output digit k
/// is input digit perm[k].
using BitPermutation = std::vector<unsigned>;

BitPermutation identity_permutation(unsigned n);
BitPermutation bit_reverse_permutation(unsigned n);

/// Throws RangeError unless perm is a permutation of {0, ..., n-1}.
void validate_permutation(const BitPermutation& perm, unsigned n);

std::size_t bit_permute(std::size_t index, const BitPermutation& perm, unsigned n);

std::size_t bit_reverse(std::size_t index, unsigned n);

constexpr bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

/// log2 of a power of two.
unsigned stage_count(std::size_t length);

/// Sorts and removes duplicates.
IndexSet normalized(IndexSet set);

bool contains(const IndexSet& sorted_set, std::size_t value);

}  // namespace polarpunct
