#include "polarpunct/bits.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "polarpunct/errors.hpp"

namespace polarpunct {

namespace {

void check_stages(unsigned n) {
  if (n > kMaxStages) {
    throw RangeError("stage count " + std::to_string(n) + " exceeds " +
                     std::to_string(kMaxStages));
  }
}

}  // namespace

BinaryExpansion binary_expansion(std::size_t index, unsigned n) {
  check_stages(n);
  if (index >= (std::size_t{1} << n)) {
    throw RangeError("index " + std::to_string(index) + " out of range for n = " +
                     std::to_string(n));
  }
  BinaryExpansion out;
  out.value = index;
  out.bits.resize(n);
  for (unsigned k = 0; k < n; ++k) {
    out.bits[k] = static_cast<std::uint8_t>((index >> (n - 1 - k)) & 1U);
  }
  return out;
}

std::size_t index_of(std::span<const std::uint8_t> msb_first_bits) {
  std::size_t value = 0;
  for (auto b : msb_first_bits) {
    value = (value << 1) | (b & 1U);
  }
  return value;
}

unsigned hamming_weight(std::size_t index) {
  return static_cast<unsigned>(std::popcount(index));
}

bool dominates_ones(std::size_t i, std::size_t j) { return (j & ~i) == 0; }

bool dominates_zeros(std::size_t i, std::size_t j) { return (i & ~j) == 0; }

BitPermutation identity_permutation(unsigned n) {
  BitPermutation perm(n);
  for (unsigned k = 0; k < n; ++k) perm[k] = k;
  return perm;
}

BitPermutation bit_reverse_permutation(unsigned n) {
  BitPermutation perm(n);
  for (unsigned k = 0; k < n; ++k) perm[k] = n - 1 - k;
  return perm;
}

void validate_permutation(const BitPermutation& perm, unsigned n) {
  if (perm.size() != n) {
    throw RangeError("permutation has " + std::to_string(perm.size()) +
                     " entries, expected " + std::to_string(n));
  }
  std::vector<bool> seen(n, false);
  for (unsigned p : perm) {
    if (p >= n || seen[p]) throw RangeError("malformed bit permutation");
    seen[p] = true;
  }
}

std::size_t bit_permute(std::size_t index, const BitPermutation& perm, unsigned n) {
  validate_permutation(perm, n);
  if (n < kMaxStages && index >= (std::size_t{1} << n)) {
    throw RangeError("index " + std::to_string(index) + " out of range for n = " +
                     std::to_string(n));
  }
  std::size_t out = 0;
  for (unsigned k = 0; k < n; ++k) {
    // MSB-first digit k sits at bit position n-1-k.
    const std::size_t digit = (index >> (n - 1 - perm[k])) & 1U;
    out |= digit << (n - 1 - k);
  }
  return out;
}

std::size_t bit_reverse(std::size_t index, unsigned n) {
  std::size_t out = 0;
  for (unsigned k = 0; k < n; ++k) {
    out = (out << 1) | ((index >> k) & 1U);
  }
  return out;
}

unsigned stage_count(std::size_t length) {
  if (!is_power_of_two(length)) {
    throw RangeError("length " + std::to_string(length) + " is not a power of two");
  }
  return static_cast<unsigned>(std::countr_zero(length));
}

IndexSet normalized(IndexSet set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

bool contains(const IndexSet& sorted_set, std::size_t value) {
  return std::binary_search(sorted_set.begin(), sorted_set.end(), value);
}

}  // namespace polarpunct
