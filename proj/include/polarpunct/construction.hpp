#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "polarpunct/bits.hpp"
#include "polarpunct/pattern.hpp"

namespace polarpunct {

/// Channel indices sorted most reliable first.
struct ReliabilityOrder {
  unsigned n = 0;
  std::vector<std::size_t> order;
};

/// Mean LLR of every polarized channel under Gaussian-approximation density
/// evolution on a BPSK/AWGN channel with the given design SNR (Es/N0, dB).
std::vector<double> ga_llr_means(unsigned n, double design_snr_db);

/// Channels by descending GA mean; ties broken by ascending index.
ReliabilityOrder reliability_order(unsigned n, double design_snr_db);

/// The k best-ranked indices that are not excluded, returned ascending.
IndexSet info_set(const ReliabilityOrder& order, std::size_t k, const IndexSet& excluded = {});

enum class GreedyFallback {
  /// After a random one is added, the same channel is scanned again until it
  /// is satisfied.
  RetrySameChannel,
  /// Algorithm as printed: the random addition advances to the next channel.
  PaperLiteral,
};

/// Low-weight pattern with Z^(i)(p) = 1 for every i in info_set.
PuncturingPattern greedy_base_pattern(const IndexSet& info_set, unsigned n, std::uint64_t seed,
                                      GreedyFallback fallback = GreedyFallback::RetrySameChannel);

enum class ConstructionMethod { Greedy, Reciprocal };

std::string_view to_string(ConstructionMethod method);
ConstructionMethod parse_construction_method(std::string_view text);

/// Nested patterns sharing one information set, highest rate first: every
/// zero set contains the zero sets of all later (lower-rate) patterns.
struct RcFamily {
  unsigned n = 0;
  IndexSet info_set;
  ChannelModel model = ChannelModel::Ucm;
  ConstructionMethod method = ConstructionMethod::Greedy;
  std::uint64_t seed = 0;
  std::vector<PuncturingPattern> patterns;

  std::size_t k() const { return info_set.size(); }
};

/// Base pattern from greedy_base_pattern, then grown by ones at uniformly
/// random zero locations to each requested transmit length. Lengths may be
/// given in any order; the family is returned highest rate (shortest) first.
RcFamily greedy_rc_family(const IndexSet& info_set, unsigned n,
                          std::span<const std::size_t> transmit_lengths, std::uint64_t seed);

/// M ⊞ Q: XOR of every support-disjoint pair (i in Q, j in M).
IndexSet boxplus(const IndexSet& m, const IndexSet& q);

/// Seed sequence: level 0 = {0}, level 1 = weight-1 indices not in A, level j
/// = (level j-1 ⊞ level 1) minus A; each level ascending, duplicates dropped.
struct SeedSequence {
  std::vector<std::size_t> entries;
  std::vector<std::size_t> level_sizes;  // level_sizes[j] = |L^(j)| after dedup
};

SeedSequence seed_sequence(const IndexSet& info_set, unsigned n);

/// Zero sets are prefixes of the seed sequence. Under Dcm the construction is
/// mirrored through i -> N-1-i. Every pattern is verified before return.
RcFamily reciprocal_rc_family(const IndexSet& info_set, unsigned n,
                              std::span<const std::size_t> zero_counts,
                              ChannelModel model = ChannelModel::Ucm);

struct PatternCheck {
  std::size_t transmitted = 0;
  /// Ucm: Z^(i) = 1 on the whole information set. Dcm: A and E are disjoint.
  bool non_catastrophic = false;
  bool reciprocal = false;
};

PatternCheck check_pattern(const PuncturingPattern& p, const IndexSet& info_set,
                           ChannelModel model);

/// True when zero sets are nested with the first pattern the most punctured.
bool is_nested(const std::vector<PuncturingPattern>& patterns);

void to_json(nlohmann::json& j, const RcFamily& family);
void from_json(const nlohmann::json& j, RcFamily& family);

RcFamily read_family_file(const std::string& path);
void write_family_file(const std::string& path, const RcFamily& family);

}  // namespace polarpunct
