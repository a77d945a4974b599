#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "polarpunct/codec.hpp"
#include "polarpunct/construction.hpp"

namespace polarpunct {

/// BPSK over AWGN at a given Eb/N0; rate counts message bits per transmitted bit.
struct ChannelConfig {
  double ebn0_db = 0.0;
  double rate = 1.0;

  /// sigma^2 = 1 / (2 R 10^{Eb/N0 / 10}).
  double noise_variance() const;
  double noise_sigma() const;

  /// Rate (|A| - crc) / N_p of the given code.
  static ChannelConfig for_code(const PolarCodeSpec& spec, double ebn0_db);
};

/// SplitMix64 counter stream; satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) : state_(key) {}

  /// Key for one trial, mixed from every coordinate of the trial.
  static std::uint64_t stream_key(std::uint64_t master_seed, std::uint64_t pattern_id,
                                  std::uint64_t snr_index, std::uint64_t trial);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

 private:
  std::uint64_t state_;
};

/// Channel LLRs 2y/sigma^2 with y = (1 - 2b) + noise.
void transmit(std::span<const std::uint8_t> codeword, const ChannelConfig& cfg, CounterRng& rng,
              std::span<double> llrs);
std::vector<double> transmit(std::span<const std::uint8_t> codeword, const ChannelConfig& cfg,
                             CounterRng& rng);

struct StopRule {
  std::uint64_t max_trials = 10000;
  std::uint64_t target_frame_errors = 100;
};

struct SimResult {
  double ebn0_db = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t frame_errors = 0;
  std::uint64_t bit_errors = 0;
  std::size_t bits_per_frame = 0;
  std::uint64_t seed = 0;
  std::chrono::duration<double> wall_time{0};

  double fer() const;
  double ber() const;
};

struct SimOptions {
  DecoderConfig decoder;
  unsigned threads = 1;
  /// Trials are evaluated in windows of this size before the stop rule is
  /// applied in trial order, so the result never depends on threads.
  std::size_t window = 256;
  std::uint64_t pattern_id = 0;
  std::uint64_t snr_index = 0;
};

SimResult run_fer(const PolarCodeSpec& spec, const ChannelConfig& cfg, const StopRule& stop,
                  std::uint64_t seed, const SimOptions& options = {});

/// a, a+step, ... up to b inclusive.
std::vector<double> snr_grid(double first, double last, double step);
/// "a:b:step" or a single value.
std::vector<double> parse_snr_grid(std::string_view text);

struct SweepRow {
  unsigned n = 0;
  std::size_t np = 0;
  std::size_t k = 0;
  ChannelModel model = ChannelModel::Ucm;
  ConstructionMethod method = ConstructionMethod::Greedy;
  std::size_t pattern_id = 0;
  SimResult result;
};

struct SweepOptions {
  DecoderConfig decoder;
  unsigned crc_width = 8;
  unsigned threads = 1;
  std::size_t window = 256;
};

/// One row per (pattern, SNR), pattern-major.
std::vector<SweepRow> sweep(const RcFamily& family, std::span<const double> grid,
                            const StopRule& stop, std::uint64_t seed,
                            const SweepOptions& options = {});

PolarCodeSpec family_member_spec(const RcFamily& family, std::size_t pattern_id, unsigned crc_width);

void write_csv(std::ostream& out, std::span<const SweepRow> rows);
/// One data block per pattern (ebn0 fer ber), blocks separated by blank lines.
void write_gnuplot(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace polarpunct
