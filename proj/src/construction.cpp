#include "polarpunct/construction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "polarpunct/analysis.hpp"
#include "polarpunct/errors.hpp"

namespace polarpunct {

namespace {

void check_stages(unsigned n) {
  if (n > kMaxStages) throw RangeError("stage count " + std::to_string(n) + " too large");
}

void check_info_set(const IndexSet& info_set, std::size_t length) {
  if (!std::is_sorted(info_set.begin(), info_set.end()) ||
      std::adjacent_find(info_set.begin(), info_set.end()) != info_set.end()) {
    throw RangeError("information set must be sorted and duplicate-free");
  }
  if (!info_set.empty() && info_set.back() >= length) {
    throw RangeError("information index " + std::to_string(info_set.back()) +
                     " out of range for N = " + std::to_string(length));
  }
}

// Two-piece approximation of the phi function used by GA density evolution,
// evaluated in the log domain so that large means do not underflow.
constexpr double kPieceBoundary = 10.0;

double log_phi_low(double x) { return std::min(0.0, -0.4527 * std::pow(x, 0.86) + 0.0218); }

double log_phi_high(double x) {
  return 0.5 * std::log(std::numbers::pi / x) - x / 4.0 + std::log1p(-10.0 / (7.0 * x));
}

double log_phi(double x) {
  if (x <= 0.0) return 0.0;
  return x < kPieceBoundary ? log_phi_low(x) : log_phi_high(x);
}

double inverse_log_phi(double log_y) {
  if (log_y >= 0.0) return 0.0;
  if (log_y >= log_phi_low(kPieceBoundary)) {
    return std::pow((0.0218 - log_y) / 0.4527, 1.0 / 0.86);
  }
  double lo = kPieceBoundary;
  double hi = 2.0 * kPieceBoundary;
  while (log_phi_high(hi) > log_y) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (log_phi_high(mid) > log_y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Check-node side: 1 - (1 - phi(m))^2 = phi(m) (2 - phi(m)).
double ga_minus(double mean) {
  const double lp = log_phi(mean);
  return inverse_log_phi(lp + std::log(2.0 - std::exp(lp)));
}

std::vector<std::size_t> random_fill(BitVector& mask, std::size_t count, std::mt19937_64& rng) {
  std::vector<std::size_t> zeros;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) zeros.push_back(i);
  }
  std::vector<std::size_t> added;
  for (std::size_t k = 0; k < count; ++k) {
    std::uniform_int_distribution<std::size_t> pick(0, zeros.size() - 1);
    const std::size_t at = pick(rng);
    mask[zeros[at]] = 1;
    added.push_back(zeros[at]);
    zeros.erase(zeros.begin() + static_cast<std::ptrdiff_t>(at));
  }
  return added;
}

}  // namespace

std::vector<double> ga_llr_means(unsigned n, double design_snr_db) {
  check_stages(n);
  // BPSK over AWGN: LLR mean 2/sigma^2 = 4 Es/N0.
  std::vector<double> level{4.0 * std::pow(10.0, design_snr_db / 10.0)};
  // Level k is indexed by the channel's top k digits; the most significant
  // digit transforms the raw channel first.
  for (unsigned k = 1; k <= n; ++k) {
    std::vector<double> next(level.size() * 2);
    for (std::size_t idx = 0; idx < next.size(); ++idx) {
      const double parent = level[idx >> 1];
      next[idx] = (idx & 1U) ? 2.0 * parent : ga_minus(parent);
    }
    level = std::move(next);
  }
  return level;
}

ReliabilityOrder reliability_order(unsigned n, double design_snr_db) {
  const auto means = ga_llr_means(n, design_snr_db);
  ReliabilityOrder out{n, std::vector<std::size_t>(means.size())};
  for (std::size_t i = 0; i < means.size(); ++i) out.order[i] = i;
  std::stable_sort(out.order.begin(), out.order.end(),
                   [&](std::size_t a, std::size_t b) { return means[a] > means[b]; });
  return out;
}

IndexSet info_set(const ReliabilityOrder& order, std::size_t k, const IndexSet& excluded) {
  IndexSet chosen;
  for (std::size_t idx : order.order) {
    if (chosen.size() == k) break;
    if (!contains(excluded, idx)) chosen.push_back(idx);
  }
  if (chosen.size() < k) {
    throw RangeError("requested " + std::to_string(k) + " information indices but only " +
                     std::to_string(chosen.size()) + " are available");
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

PuncturingPattern greedy_base_pattern(const IndexSet& info_set, unsigned n, std::uint64_t seed,
                                      GreedyFallback fallback) {
  check_stages(n);
  const std::size_t length = std::size_t{1} << n;
  check_info_set(info_set, length);
  if (info_set.empty()) throw RangeError("greedy construction needs a nonempty information set");

  std::vector<std::size_t> ordered = info_set;
  std::stable_sort(ordered.begin(), ordered.end(), [](std::size_t a, std::size_t b) {
    return hamming_weight(a) < hamming_weight(b);
  });

  std::mt19937_64 rng(seed);
  BitVector mask(length, 0);
  auto satisfied_with = [&](std::size_t channel, std::size_t extra) {
    mask[extra] = 1;
    const bool ok = z_capacity(channel, PuncturingPattern::from_mask(n, mask));
    mask[extra] = 0;
    return ok;
  };
  auto has_zero = [&] { return std::find(mask.begin(), mask.end(), 0) != mask.end(); };

  for (std::size_t channel : ordered) {
    for (;;) {
      if (fallback == GreedyFallback::RetrySameChannel &&
          z_capacity(channel, PuncturingPattern::from_mask(n, mask))) {
        break;
      }
      bool placed = false;
      for (std::size_t j = 0; j < length && !placed; ++j) {
        if (!mask[j] && satisfied_with(channel, j)) {
          mask[j] = 1;
          placed = true;
        }
      }
      if (placed || !has_zero()) break;
      random_fill(mask, 1, rng);
      if (fallback == GreedyFallback::PaperLiteral) break;
    }
  }
  return PuncturingPattern::from_mask(n, std::move(mask));
}

std::string_view to_string(ConstructionMethod method) {
  return method == ConstructionMethod::Greedy ? "greedy" : "reciprocal";
}

ConstructionMethod parse_construction_method(std::string_view text) {
  if (text == "greedy") return ConstructionMethod::Greedy;
  if (text == "reciprocal") return ConstructionMethod::Reciprocal;
  throw FormatError("unknown construction method '" + std::string(text) +
                    "' (expected greedy or reciprocal)");
}

RcFamily greedy_rc_family(const IndexSet& info_set, unsigned n,
                          std::span<const std::size_t> transmit_lengths, std::uint64_t seed) {
  check_stages(n);
  const std::size_t length = std::size_t{1} << n;
  check_info_set(info_set, length);
  if (transmit_lengths.empty()) throw RangeError("at least one transmit length is required");

  std::vector<std::size_t> lengths(transmit_lengths.begin(), transmit_lengths.end());
  std::sort(lengths.begin(), lengths.end());
  if (std::adjacent_find(lengths.begin(), lengths.end()) != lengths.end()) {
    throw RangeError("transmit lengths must be distinct");
  }
  if (lengths.back() > length) {
    throw RangeError("transmit length " + std::to_string(lengths.back()) + " exceeds N = " +
                     std::to_string(length));
  }
  if (lengths.front() < info_set.size()) {
    throw InfeasibleRate("transmit length " + std::to_string(lengths.front()) +
                         " is below the information set size " +
                         std::to_string(info_set.size()));
  }

  const PuncturingPattern base = greedy_base_pattern(info_set, n, seed);
  if (base.transmitted_length() > lengths.front()) {
    throw InfeasibleRate("greedy base pattern needs " + std::to_string(base.transmitted_length()) +
                         " transmitted bits, more than the highest-rate length " +
                         std::to_string(lengths.front()));
  }

  RcFamily family;
  family.n = n;
  family.info_set = info_set;
  family.model = ChannelModel::Ucm;
  family.method = ConstructionMethod::Greedy;
  family.seed = seed;

  std::seed_seq growth_seed{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                            1U};
  std::mt19937_64 rng(growth_seed);
  BitVector mask = base.mask();
  std::size_t weight = base.transmitted_length();
  for (std::size_t target : lengths) {
    random_fill(mask, target - weight, rng);
    weight = target;
    family.patterns.push_back(PuncturingPattern::from_mask(n, mask));
  }
  return family;
}

IndexSet boxplus(const IndexSet& m, const IndexSet& q) {
  IndexSet out;
  for (std::size_t i : q) {
    for (std::size_t j : m) {
      if ((i & j) == 0) out.push_back(i ^ j);
    }
  }
  return normalized(std::move(out));
}

SeedSequence seed_sequence(const IndexSet& info_set, unsigned n) {
  check_stages(n);
  const std::size_t length = std::size_t{1} << n;
  check_info_set(info_set, length);
  if (contains(info_set, 0)) {
    throw ZeroInInfoSet("channel 0 cannot belong to the information set of a seed sequence");
  }

  auto minus_info = [&](const IndexSet& s) {
    IndexSet out;
    std::set_difference(s.begin(), s.end(), info_set.begin(), info_set.end(),
                        std::back_inserter(out));
    return out;
  };

  SeedSequence seq;
  std::vector<bool> seen(length, false);
  auto append_level = [&](const IndexSet& level) {
    std::size_t added = 0;
    for (std::size_t idx : level) {
      if (seen[idx]) continue;
      seen[idx] = true;
      seq.entries.push_back(idx);
      ++added;
    }
    seq.level_sizes.push_back(added);
  };

  append_level({0});
  IndexSet unit;
  for (unsigned k = 0; k < n; ++k) unit.push_back(std::size_t{1} << k);
  const IndexSet level1 = minus_info(unit);
  append_level(level1);
  IndexSet previous = level1;
  for (unsigned j = 2; j <= n; ++j) {
    previous = minus_info(boxplus(previous, level1));
    append_level(previous);
  }
  return seq;
}

RcFamily reciprocal_rc_family(const IndexSet& info_set, unsigned n,
                              std::span<const std::size_t> zero_counts, ChannelModel model) {
  check_stages(n);
  const std::size_t length = std::size_t{1} << n;
  check_info_set(info_set, length);
  if (zero_counts.empty()) throw RangeError("at least one puncture count is required");

  std::vector<std::size_t> counts(zero_counts.begin(), zero_counts.end());
  std::sort(counts.begin(), counts.end(), std::greater<>());
  if (std::adjacent_find(counts.begin(), counts.end()) != counts.end()) {
    throw RangeError("puncture counts must be distinct");
  }
  if (counts.front() > length) {
    throw RangeError("puncture count " + std::to_string(counts.front()) + " exceeds N = " +
                     std::to_string(length));
  }

  // Dcm is the image of Ucm under index complement i -> N-1-i.
  auto mirror = [&](std::size_t i) { return model == ChannelModel::Ucm ? i : length - 1 - i; };
  IndexSet seed_info;
  for (std::size_t i : info_set) seed_info.push_back(mirror(i));
  seed_info = normalized(std::move(seed_info));
  const SeedSequence seq = seed_sequence(seed_info, n);
  if (counts.front() > seq.entries.size()) {
    throw InfeasibleRate("seed sequence has only " + std::to_string(seq.entries.size()) +
                         " entries; cannot puncture " + std::to_string(counts.front()) + " bits");
  }

  RcFamily family;
  family.n = n;
  family.info_set = info_set;
  family.model = model;
  family.method = ConstructionMethod::Reciprocal;
  for (std::size_t count : counts) {
    IndexSet zeros;
    for (std::size_t k = 0; k < count; ++k) zeros.push_back(mirror(seq.entries[k]));
    auto pattern = PuncturingPattern::from_zero_set(n, zeros);
    if (!check_pattern(pattern, info_set, model).non_catastrophic) {
      throw ConstructionViolation("prefix of length " + std::to_string(count) +
                                  " is catastrophic for the information set");
    }
    family.patterns.push_back(std::move(pattern));
  }
  return family;
}

PatternCheck check_pattern(const PuncturingPattern& p, const IndexSet& info_set,
                           ChannelModel model) {
  PatternCheck check;
  check.transmitted = p.transmitted_length();
  check.reciprocal = is_reciprocal(p, model);
  if (model == ChannelModel::Ucm) {
    const BitVector z = z_capacities(p);
    check.non_catastrophic =
        std::all_of(info_set.begin(), info_set.end(), [&](std::size_t i) { return z[i] != 0; });
  } else {
    const IndexSet e = dcm_frozen_set(p);
    check.non_catastrophic = std::none_of(info_set.begin(), info_set.end(),
                                          [&](std::size_t i) { return contains(e, i); });
  }
  return check;
}

bool is_nested(const std::vector<PuncturingPattern>& patterns) {
  for (std::size_t k = 1; k < patterns.size(); ++k) {
    const auto& wider = patterns[k - 1];
    const auto& narrower = patterns[k];
    if (wider.length() != narrower.length()) return false;
    for (std::size_t i = 0; i < wider.length(); ++i) {
      if (!narrower.transmitted(i) && wider.transmitted(i)) return false;
    }
  }
  return true;
}

void to_json(nlohmann::json& j, const RcFamily& family) {
  nlohmann::json patterns = nlohmann::json::array();
  for (const auto& p : family.patterns) {
    patterns.push_back({{"np", p.transmitted_length()}, {"zeros", p.zero_set()}});
  }
  j = nlohmann::json{{"n", family.n},
                     {"K", family.k()},
                     {"info_set", family.info_set},
                     {"model", to_string(family.model)},
                     {"method", to_string(family.method)},
                     {"seed", family.seed},
                     {"patterns", patterns}};
}

void from_json(const nlohmann::json& j, RcFamily& family) {
  try {
    RcFamily out;
    out.n = j.at("n").get<unsigned>();
    check_stages(out.n);
    out.info_set = j.at("info_set").get<IndexSet>();
    if (normalized(out.info_set) != out.info_set) {
      throw FormatError("info_set must be sorted and duplicate-free");
    }
    check_info_set(out.info_set, std::size_t{1} << out.n);
    if (j.at("K").get<std::size_t>() != out.info_set.size()) {
      throw FormatError("K does not match the size of info_set");
    }
    out.model = parse_channel_model(j.at("model").get<std::string>());
    out.method = parse_construction_method(j.at("method").get<std::string>());
    out.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& entry : j.at("patterns")) {
      auto zeros = entry.at("zeros").get<IndexSet>();
      const auto count = zeros.size();
      zeros = normalized(std::move(zeros));
      if (zeros.size() != count) throw FormatError("duplicate index in zeros list");
      auto p = PuncturingPattern::from_zero_set(out.n, zeros);
      if (entry.at("np").get<std::size_t>() != p.transmitted_length()) {
        throw FormatError("np does not match the zeros list");
      }
      out.patterns.push_back(std::move(p));
    }
    family = std::move(out);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed family JSON: ") + e.what());
  } catch (const RangeError& e) {
    throw FormatError(std::string("invalid family: ") + e.what());
  }
}

RcFamily read_family_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open family file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("family file '" + path + "' is not valid JSON: " + e.what());
  }
  return j.get<RcFamily>();
}

void write_family_file(const std::string& path, const RcFamily& family) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write family file '" + path + "'");
  out << nlohmann::json(family).dump(2) << '\n';
}

}  // namespace polarpunct
