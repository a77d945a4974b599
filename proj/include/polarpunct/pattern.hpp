#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "polarpunct/bits.hpp"

namespace polarpunct {

/// How punctured coordinates are modelled at the receiver.
///   Ucm: useless channel, LLR 0 (classical puncturing).
///   Dcm: deterministic channel carrying a pre-agreed zero, LLR +inf (shortening).
enum class ChannelModel { Ucm, Dcm };

std::string_view to_string(ChannelModel model);
ChannelModel parse_channel_model(std::string_view text);

/// Transmit mask over the N = 2^n coded bits; p_i = 0 marks a punctured bit.
class PuncturingPattern {
 public:
  PuncturingPattern() = default;

  static PuncturingPattern all_ones(unsigned n);
  static PuncturingPattern from_mask(unsigned n, BitVector mask);
  static PuncturingPattern from_zero_set(unsigned n, std::span<const std::size_t> zeros);
  /// Bit i of word is p_i. Requires n <= 6.
  static PuncturingPattern from_word(unsigned n, std::uint64_t word);

  /// Accepts either an index-0-first bit string ("1010") or a zeros list
  /// ("0,2", "[0,2]", "[]"). A string made only of '0'/'1' without commas or
  /// brackets is always read as a bit string.
  static PuncturingPattern parse(unsigned n, std::string_view text);

  unsigned stages() const { return n_; }
  std::size_t length() const { return mask_.size(); }
  const BitVector& mask() const { return mask_; }
  bool transmitted(std::size_t i) const { return mask_[i] != 0; }

  /// B: the punctured positions, ascending.
  IndexSet zero_set() const;
  IndexSet transmitted_set() const;
  /// N_p = w_h(p).
  std::size_t transmitted_length() const;
  std::size_t punctured_count() const { return length() - transmitted_length(); }

  PuncturingPattern complement() const;
  /// Bit i of the result is p_i. Requires n <= 6.
  std::uint64_t to_word() const;
  /// Index-0-first string of '0'/'1'.
  std::string to_string() const;

  friend bool operator==(const PuncturingPattern&, const PuncturingPattern&) = default;

 private:
  PuncturingPattern(unsigned n, BitVector mask) : n_(n), mask_(std::move(mask)) {}

  unsigned n_ = 0;
  BitVector mask_ = BitVector(1, 1);
};

/// {"n": n, "zeros": [sorted B]}
void to_json(nlohmann::json& j, const PuncturingPattern& p);
void from_json(const nlohmann::json& j, PuncturingPattern& p);

}  // namespace polarpunct
