#include "polarpunct/analysis.hpp"

#include <string>

#include "polarpunct/errors.hpp"

namespace polarpunct {

bool z_capacity(std::size_t channel, const PuncturingPattern& p) {
  const std::size_t length = p.length();
  if (channel >= length) {
    throw RangeError("channel " + std::to_string(channel) + " out of range for N = " +
                     std::to_string(length));
  }
  // Bottom-up: the digit of `channel` at bit k selects the operator pairing
  // positions that differ in bit k; the most significant digit acts first.
  BitVector v = p.mask();
  const unsigned n = p.stages();
  std::size_t len = length;
  for (unsigned k = n; k-- > 0;) {
    const std::size_t half = len / 2;
    const bool is_or = (channel >> k) & 1U;
    for (std::size_t j = 0; j < half; ++j) {
      v[j] = is_or ? (v[j] | v[j + half]) : (v[j] & v[j + half]);
    }
    len = half;
  }
  return v[0] != 0;
}

BitVector z_capacities(const PuncturingPattern& p) {
  BitVector v = p.mask();
  const std::size_t length = v.size();
  for (std::size_t half = length / 2; half >= 1; half /= 2) {
    for (std::size_t base = 0; base < length; base += 2 * half) {
      for (std::size_t j = base; j < base + half; ++j) {
        const std::uint8_t a = v[j];
        const std::uint8_t b = v[j + half];
        v[j] = a & b;
        v[j + half] = a | b;
      }
    }
  }
  return v;
}

IndexSet ucm_zero_set(const PuncturingPattern& p) {
  const BitVector z = z_capacities(p);
  IndexSet out;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!z[i]) out.push_back(i);
  }
  return out;
}

IndexSet dcm_frozen_set(const PuncturingPattern& p) {
  const BitVector z = z_capacities(p.complement());
  IndexSet out;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i]) out.push_back(i);
  }
  return out;
}

IndexSet forced_frozen_set(const PuncturingPattern& p, ChannelModel model) {
  return model == ChannelModel::Ucm ? ucm_zero_set(p) : dcm_frozen_set(p);
}

bool is_reciprocal(const PuncturingPattern& p, ChannelModel model) {
  const IndexSet zeros = p.zero_set();
  if (zeros.empty()) return true;
  const std::size_t length = p.length();
  const std::size_t anchor = model == ChannelModel::Ucm ? 0 : length - 1;
  if (p.transmitted(anchor)) return false;
  // Closure under the covering relation: it suffices to check the immediate
  // neighbours (one digit flipped), since the relations are generated by them.
  for (std::size_t i : zeros) {
    for (std::size_t bit = 1; bit < length; bit <<= 1) {
      std::size_t j = 0;
      if (model == ChannelModel::Ucm) {
        if (!(i & bit)) continue;
        j = i & ~bit;
      } else {
        if (i & bit) continue;
        j = i | bit;
      }
      if (p.transmitted(j)) return false;
    }
  }
  return true;
}

PuncturingPattern permuted_pattern(const PuncturingPattern& p, const BitPermutation& perm) {
  const unsigned n = p.stages();
  validate_permutation(perm, n);
  IndexSet zeros;
  for (std::size_t i : p.zero_set()) zeros.push_back(bit_permute(i, perm, n));
  return PuncturingPattern::from_zero_set(n, zeros);
}

namespace {

void check_puncture_count(unsigned n, std::size_t punctured) {
  if (n > kMaxStages || punctured > (std::size_t{1} << n)) {
    throw RangeError("puncture count " + std::to_string(punctured) + " out of range");
  }
}

}  // namespace

PuncturingPattern qup_pattern(unsigned n, std::size_t punctured) {
  check_puncture_count(n, punctured);
  IndexSet zeros;
  for (std::size_t i = 0; i < punctured; ++i) zeros.push_back(bit_reverse(i, n));
  return PuncturingPattern::from_zero_set(n, zeros);
}

PuncturingPattern rqup_pattern(unsigned n, std::size_t punctured) {
  check_puncture_count(n, punctured);
  const std::size_t length = std::size_t{1} << n;
  IndexSet zeros;
  for (std::size_t i = length - punctured; i < length; ++i) zeros.push_back(bit_reverse(i, n));
  return PuncturingPattern::from_zero_set(n, zeros);
}

}  // namespace polarpunct
