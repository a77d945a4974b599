#include "polarpunct/catastrophic.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "polarpunct/analysis.hpp"
#include "polarpunct/errors.hpp"
#include "polarpunct/gf2.hpp"

namespace polarpunct {

ZeroWeightPolynomial::ZeroWeightPolynomial(std::vector<BigCount> coeffs,
                                           std::size_t block_length)
    : coeffs_(std::move(coeffs)), block_length_(block_length) {
  if (coeffs_.size() > block_length_ + 1) {
    for (std::size_t s = block_length_ + 1; s < coeffs_.size(); ++s) {
      if (coeffs_[s] != 0) throw RangeError("polynomial degree exceeds block length");
    }
  }
  trim();
}

ZeroWeightPolynomial ZeroWeightPolynomial::one() { return ZeroWeightPolynomial({1}, 0); }

ZeroWeightPolynomial ZeroWeightPolynomial::single_zero() {
  return ZeroWeightPolynomial({0, 1}, 1);
}

ZeroWeightPolynomial ZeroWeightPolynomial::zero(std::size_t block_length) {
  return ZeroWeightPolynomial({}, block_length);
}

void ZeroWeightPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigCount ZeroWeightPolynomial::coeff(std::size_t s) const {
  return s < coeffs_.size() ? coeffs_[s] : BigCount{0};
}

bool ZeroWeightPolynomial::is_zero() const { return coeffs_.empty(); }

BigCount ZeroWeightPolynomial::total() const {
  BigCount sum = 0;
  for (const auto& c : coeffs_) sum += c;
  return sum;
}

std::size_t ZeroWeightPolynomial::lowest_degree() const {
  for (std::size_t s = 0; s < coeffs_.size(); ++s) {
    if (coeffs_[s] != 0) return s;
  }
  return block_length_ + 1;
}

std::vector<std::pair<std::size_t, BigCount>> ZeroWeightPolynomial::terms() const {
  std::vector<std::pair<std::size_t, BigCount>> out;
  for (std::size_t s = 0; s < coeffs_.size(); ++s) {
    if (coeffs_[s] != 0) out.emplace_back(s, coeffs_[s]);
  }
  return out;
}

namespace {

std::vector<BigCount> multiply(const std::vector<BigCount>& a, const std::vector<BigCount>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<BigCount> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] != 0) out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

std::vector<BigCount> binomial_row(std::size_t m) {
  std::vector<BigCount> row(m + 1);
  row[0] = 1;
  for (std::size_t k = 1; k <= m; ++k) row[k] = row[k - 1] * (m - k + 1) / k;
  return row;
}

}  // namespace

ZeroWeightPolynomial poly_or(const ZeroWeightPolynomial& a, const ZeroWeightPolynomial& b) {
  return ZeroWeightPolynomial(multiply(a.coeffs(), b.coeffs()),
                              a.block_length() + b.block_length());
}

ZeroWeightPolynomial poly_and(const ZeroWeightPolynomial& a, const ZeroWeightPolynomial& b) {
  if (a.block_length() != b.block_length()) {
    throw RangeError("poly_and requires halves of equal block length");
  }
  // The free half ranges over all patterns of the sibling's length.
  auto left = multiply(a.coeffs(), binomial_row(b.block_length()));
  auto right = multiply(b.coeffs(), binomial_row(a.block_length()));
  const auto both = multiply(a.coeffs(), b.coeffs());
  const std::size_t size = std::max({left.size(), right.size(), both.size()});
  std::vector<BigCount> out(size, 0);
  for (std::size_t s = 0; s < left.size(); ++s) out[s] += left[s];
  for (std::size_t s = 0; s < right.size(); ++s) out[s] += right[s];
  for (std::size_t s = 0; s < both.size(); ++s) out[s] -= both[s];
  return ZeroWeightPolynomial(std::move(out), a.block_length() + b.block_length());
}

ZeroWeightPolynomial weight_distribution(std::size_t channel, unsigned n) {
  if (n > kMaxDistributionStages) {
    throw CapExceeded("weight_distribution limited to n <= " +
                      std::to_string(kMaxDistributionStages));
  }
  if (channel >= (std::size_t{1} << n)) {
    throw RangeError("channel " + std::to_string(channel) + " out of range for n = " +
                     std::to_string(n));
  }
  // Level k holds the distribution of channel (channel >> (n-k)) at length 2^k.
  ZeroWeightPolynomial d = ZeroWeightPolynomial::single_zero();
  for (unsigned k = 1; k <= n; ++k) {
    const std::size_t sub = channel >> (n - k);
    d = (sub & 1U) ? poly_or(d, d) : poly_and(d, d);
  }
  return d;
}

std::size_t min_catastrophic_zeros(std::size_t channel) {
  return std::size_t{1} << hamming_weight(channel);
}

bool is_catastrophic(const PuncturingPattern& p, const IndexSet& info_set,
                     CatastrophicRule rule) {
  for (std::size_t i : info_set) {
    if (i >= p.length()) throw RangeError("information index out of range");
  }
  if (info_set.empty()) return false;
  const BitVector z = z_capacities(p);
  if (rule == CatastrophicRule::AnyDead) {
    return std::any_of(info_set.begin(), info_set.end(), [&](std::size_t i) { return !z[i]; });
  }
  return std::all_of(info_set.begin(), info_set.end(), [&](std::size_t i) { return !z[i]; });
}

bool rank_noncatastrophic_check(std::size_t channel, const PuncturingPattern& p) {
  const std::size_t length = p.length();
  if (channel >= length) throw RangeError("channel out of range");
  const IndexSet cols = p.transmitted_set();
  IndexSet rows;
  for (std::size_t r = channel; r < length; ++r) rows.push_back(r);
  const std::size_t with_row = gf2_rank(generator_submatrix(rows, cols));
  const std::size_t without_row =
      gf2_rank(generator_submatrix(std::span(rows).subspan(1), cols));
  return with_row - without_row == 1;
}

bool CatastrophicSet::contains(std::uint64_t word) const {
  return std::binary_search(patterns.begin(), patterns.end(), word);
}

bool CatastrophicSet::contains(const PuncturingPattern& p) const {
  return p.stages() == n && contains(p.to_word());
}

std::vector<std::string> CatastrophicSet::pattern_strings() const {
  std::vector<std::string> out;
  out.reserve(patterns.size());
  for (auto w : patterns) out.push_back(PuncturingPattern::from_word(n, w).to_string());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Interleave: even positions from `even`, odd positions from `odd`, each of
// `half` bits.
std::uint64_t interleave(std::uint64_t even, std::uint64_t odd, std::size_t half) {
  std::uint64_t out = 0;
  for (std::size_t j = 0; j < half; ++j) {
    out |= ((even >> j) & 1U) << (2 * j);
    out |= ((odd >> j) & 1U) << (2 * j + 1);
  }
  return out;
}

}  // namespace

CatastrophicSet enumerate_catastrophic(std::size_t channel, unsigned n, unsigned cap) {
  if (cap > kHardEnumerationCap) cap = kHardEnumerationCap;
  if (n > cap) {
    throw CapExceeded("enumeration limited to n <= " + std::to_string(cap) +
                      " (override the cap to go further)");
  }
  if (channel >= (std::size_t{1} << n)) {
    throw RangeError("channel " + std::to_string(channel) + " out of range for n = " +
                     std::to_string(n));
  }
  if (weight_distribution(channel, n).total() > kMaxEnumeratedPatterns) {
    throw CapExceeded("catastrophic set too large to enumerate");
  }

  std::unordered_set<std::uint64_t> current{0};  // length 1: only "0" kills channel 0
  for (unsigned k = 1; k <= n; ++k) {
    const std::size_t half = std::size_t{1} << (k - 1);
    const bool or_node = (channel >> (n - k)) & 1U;
    std::unordered_set<std::uint64_t> next;
    if (or_node) {
      for (auto a : current) {
        for (auto b : current) next.insert(interleave(a, b, half));
      }
    } else {
      const std::uint64_t free_count = std::uint64_t{1} << half;
      for (auto a : current) {
        for (std::uint64_t b = 0; b < free_count; ++b) {
          next.insert(interleave(a, b, half));
          next.insert(interleave(b, a, half));
        }
      }
    }
    current = std::move(next);
  }

  CatastrophicSet out{channel, n, {current.begin(), current.end()}};
  std::sort(out.patterns.begin(), out.patterns.end());
  return out;
}

}  // namespace polarpunct
