#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "polarpunct/bits.hpp"
#include "polarpunct/pattern.hpp"

namespace polarpunct {

using BigCount = boost::multiprecision::cpp_int;

/// Generating polynomial sum_s d(s) z^s counting catastrophic patterns of a
/// block of `block_length` positions by their number s of zeros.
class ZeroWeightPolynomial {
 public:
  ZeroWeightPolynomial() = default;
  ZeroWeightPolynomial(std::vector<BigCount> coeffs, std::size_t block_length);

  /// The constant 1 over an empty block.
  static ZeroWeightPolynomial one();
  /// z over a single position: the lone catastrophic pattern is "0".
  static ZeroWeightPolynomial single_zero();
  static ZeroWeightPolynomial zero(std::size_t block_length);

  const std::vector<BigCount>& coeffs() const { return coeffs_; }
  std::size_t block_length() const { return block_length_; }
  BigCount coeff(std::size_t s) const;
  bool is_zero() const;
  BigCount total() const;
  /// Smallest s with d(s) != 0; block_length + 1 when the polynomial is zero.
  std::size_t lowest_degree() const;
  /// (s, d(s)) for every nonzero coefficient, ascending in s.
  std::vector<std::pair<std::size_t, BigCount>> terms() const;

  friend bool operator==(const ZeroWeightPolynomial&, const ZeroWeightPolynomial&) = default;

 private:
  void trim();

  std::vector<BigCount> coeffs_;
  std::size_t block_length_ = 0;
};

/// OR-node combination: both halves must be catastrophic, D_a * D_b.
ZeroWeightPolynomial poly_or(const ZeroWeightPolynomial& a, const ZeroWeightPolynomial& b);

/// AND-node combination: either half catastrophic, the other free,
///   D_a (1+z)^{|b|} + D_b (1+z)^{|a|} - D_a D_b.
/// Throws RangeError unless both halves have equal block length.
ZeroWeightPolynomial poly_and(const ZeroWeightPolynomial& a, const ZeroWeightPolynomial& b);

inline constexpr unsigned kMaxDistributionStages = 20;

/// Catastrophic-pattern weight distribution of one channel, by recursion on
/// the channel's digits.
ZeroWeightPolynomial weight_distribution(std::size_t channel, unsigned n);

/// 2^{wt(i)}: every pattern with fewer zeros is non-catastrophic for channel i.
std::size_t min_catastrophic_zeros(std::size_t channel);

enum class CatastrophicRule {
  AnyDead,  ///< some information channel has Z = 0
  AllDead,  ///< every information channel has Z = 0
};

bool is_catastrophic(const PuncturingPattern& p, const IndexSet& info_set,
                     CatastrophicRule rule = CatastrophicRule::AnyDead);

/// Rank-increment test on G_N(rows i.., cols B^c); true certifies that
/// channel i survives the puncturing.
bool rank_noncatastrophic_check(std::size_t channel, const PuncturingPattern& p);

/// All patterns killing one channel, packed as words (bit i = p_i), ascending.
struct CatastrophicSet {
  std::size_t channel = 0;
  unsigned n = 0;
  std::vector<std::uint64_t> patterns;

  bool contains(std::uint64_t word) const;
  bool contains(const PuncturingPattern& p) const;
  std::size_t size() const { return patterns.size(); }
  /// Pattern strings (index 0 first), lexicographically sorted.
  std::vector<std::string> pattern_strings() const;
};

inline constexpr unsigned kDefaultEnumerationCap = 4;
inline constexpr unsigned kHardEnumerationCap = 5;
/// Refuse enumerations whose result would exceed this many patterns.
inline constexpr std::uint64_t kMaxEnumeratedPatterns = 50'000'000;

/// Set-level recursion: combine the child set of channel i>>1 on the even and
/// odd positions; an odd channel (OR node) needs both halves catastrophic, an
/// even channel (AND node) needs one.
CatastrophicSet enumerate_catastrophic(std::size_t channel, unsigned n,
                                       unsigned cap = kDefaultEnumerationCap);

}  // namespace polarpunct
