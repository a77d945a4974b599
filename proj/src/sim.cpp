#include "polarpunct/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <string>
#include <thread>

#include "polarpunct/errors.hpp"

namespace polarpunct {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string format_number(const char* fmt, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, value);
  return buf;
}

struct TrialOutcome {
  bool frame_error = false;
  std::uint32_t bit_errors = 0;
};

// Per-thread encoder, decoder and buffers.
class Worker {
 public:
  Worker(const PolarCodeSpec& spec, const ChannelConfig& cfg, const DecoderConfig& decoder)
      : spec_(spec),
        cfg_(cfg),
        encoder_(spec),
        decoder_(spec, decoder),
        saturation_(decoder.saturation),
        message_(spec.message_length()),
        codeword_(spec.transmitted_length()),
        received_(spec.transmitted_length()),
        llrs_(spec.length()) {}

  TrialOutcome run(std::uint64_t key) {
    CounterRng rng(key);
    for (std::size_t k = 0; k < message_.size(); k += 64) {
      const std::uint64_t word = rng();
      for (std::size_t b = k; b < std::min(message_.size(), k + 64); ++b) {
        message_[b] = (word >> (b - k)) & 1U;
      }
    }
    encoder_.encode(message_, codeword_);
    transmit(codeword_, cfg_, rng, received_);
    assign_llrs(received_, spec_.pattern, spec_.model, llrs_, saturation_);
    const DecodeResult decoded = decoder_.decode(llrs_);
    TrialOutcome out;
    for (std::size_t k = 0; k < message_.size(); ++k) {
      out.bit_errors += decoded.info_bits[k] != message_[k];
    }
    out.frame_error = decoded.erased || out.bit_errors > 0;
    return out;
  }

 private:
  const PolarCodeSpec& spec_;
  ChannelConfig cfg_;
  Encoder encoder_;
  SclDecoder decoder_;
  double saturation_;
  BitVector message_;
  BitVector codeword_;
  std::vector<double> received_;
  std::vector<double> llrs_;
};

}  // namespace

double ChannelConfig::noise_variance() const {
  return 1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0));
}

double ChannelConfig::noise_sigma() const { return std::sqrt(noise_variance()); }

ChannelConfig ChannelConfig::for_code(const PolarCodeSpec& spec, double ebn0_db) {
  if (spec.transmitted_length() == 0 || spec.message_length() == 0) {
    throw InvalidCode("code carries no message bits or transmits nothing");
  }
  return {ebn0_db, static_cast<double>(spec.message_length()) /
                       static_cast<double>(spec.transmitted_length())};
}

std::uint64_t CounterRng::stream_key(std::uint64_t master_seed, std::uint64_t pattern_id,
                                     std::uint64_t snr_index, std::uint64_t trial) {
  std::uint64_t h = mix64(master_seed ^ 0x6A09E667F3BCC909ULL);
  h = mix64(h ^ pattern_id);
  h = mix64(h ^ snr_index);
  return mix64(h ^ trial);
}

CounterRng::result_type CounterRng::operator()() {
  state_ += 0x9E3779B97F4A7C15ULL;
  return mix64(state_);
}

void transmit(std::span<const std::uint8_t> codeword, const ChannelConfig& cfg, CounterRng& rng,
              std::span<double> llrs) {
  if (llrs.size() != codeword.size()) throw RangeError("LLR buffer length mismatch");
  const double variance = cfg.noise_variance();
  std::normal_distribution<double> noise(0.0, std::sqrt(variance));
  for (std::size_t j = 0; j < codeword.size(); ++j) {
    const double y = (codeword[j] ? -1.0 : 1.0) + noise(rng);
    llrs[j] = 2.0 * y / variance;
  }
}

std::vector<double> transmit(std::span<const std::uint8_t> codeword, const ChannelConfig& cfg,
                             CounterRng& rng) {
  std::vector<double> out(codeword.size());
  transmit(codeword, cfg, rng, out);
  return out;
}

double SimResult::fer() const {
  return trials == 0 ? 0.0 : static_cast<double>(frame_errors) / static_cast<double>(trials);
}

double SimResult::ber() const {
  const double bits = static_cast<double>(trials) * static_cast<double>(bits_per_frame);
  return bits == 0.0 ? 0.0 : static_cast<double>(bit_errors) / bits;
}

SimResult run_fer(const PolarCodeSpec& spec, const ChannelConfig& cfg, const StopRule& stop,
                  std::uint64_t seed, const SimOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  const unsigned threads = std::max(1U, options.threads);
  const std::size_t window = std::max<std::size_t>(1, options.window);

  std::vector<Worker> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) workers.emplace_back(spec, cfg, options.decoder);

  SimResult result;
  result.ebn0_db = cfg.ebn0_db;
  result.seed = seed;
  result.bits_per_frame = spec.message_length();

  std::vector<TrialOutcome> outcomes(window);
  bool done = stop.max_trials == 0 || stop.target_frame_errors == 0;
  std::uint64_t next = 0;
  while (!done) {
    const std::size_t batch =
        static_cast<std::size_t>(std::min<std::uint64_t>(window, stop.max_trials - next));
    auto work = [&](unsigned t) {
      for (std::size_t j = t; j < batch; j += threads) {
        outcomes[j] = workers[t].run(
            CounterRng::stream_key(seed, options.pattern_id, options.snr_index, next + j));
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(threads);
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }
    for (std::size_t j = 0; j < batch && !done; ++j) {
      ++result.trials;
      result.bit_errors += outcomes[j].bit_errors;
      result.frame_errors += outcomes[j].frame_error;
      done = result.frame_errors >= stop.target_frame_errors;
    }
    next += batch;
    done = done || next >= stop.max_trials;
  }
  result.wall_time = std::chrono::steady_clock::now() - started;
  return result;
}

std::vector<double> snr_grid(double first, double last, double step) {
  if (!std::isfinite(first) || !std::isfinite(last) || !std::isfinite(step)) {
    throw RangeError("SNR grid values must be finite");
  }
  if (last < first) return {};
  if (step <= 0.0) {
    if (first == last) return {first};
    throw RangeError("SNR step must be positive");
  }
  std::vector<double> out;
  for (std::size_t k = 0;; ++k) {
    const double v = first + static_cast<double>(k) * step;
    if (v > last + 1e-9 * step) break;
    out.push_back(v);
  }
  return out;
}

std::vector<double> parse_snr_grid(std::string_view text) {
  std::vector<double> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t colon = text.find(':', start);
    const std::string piece(text.substr(start, colon - start));
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(piece, &used);
    } catch (const std::exception&) {
      throw FormatError("bad SNR grid '" + std::string(text) + "' (expected a:b:step)");
    }
    if (used != piece.size()) {
      throw FormatError("bad SNR grid '" + std::string(text) + "' (expected a:b:step)");
    }
    parts.push_back(value);
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() == 1) return snr_grid(parts[0], parts[0], 1.0);
  if (parts.size() != 3) {
    throw FormatError("bad SNR grid '" + std::string(text) + "' (expected a:b:step)");
  }
  return snr_grid(parts[0], parts[1], parts[2]);
}

PolarCodeSpec family_member_spec(const RcFamily& family, std::size_t pattern_id,
                                 unsigned crc_width) {
  if (pattern_id >= family.patterns.size()) throw RangeError("pattern id out of range");
  PolarCodeSpec spec;
  spec.n = family.n;
  spec.info_set = family.info_set;
  spec.model = family.model;
  spec.pattern = family.patterns[pattern_id];
  spec.crc = Crc::for_width(crc_width);
  return spec;
}

std::vector<SweepRow> sweep(const RcFamily& family, std::span<const double> grid,
                            const StopRule& stop, std::uint64_t seed,
                            const SweepOptions& options) {
  std::vector<SweepRow> rows;
  for (std::size_t pid = 0; pid < family.patterns.size(); ++pid) {
    const PolarCodeSpec spec = family_member_spec(family, pid, options.crc_width);
    for (std::size_t si = 0; si < grid.size(); ++si) {
      SimOptions sim;
      sim.decoder = options.decoder;
      sim.threads = options.threads;
      sim.window = options.window;
      sim.pattern_id = pid;
      sim.snr_index = si;
      SweepRow row;
      row.n = family.n;
      row.np = spec.transmitted_length();
      row.k = family.k();
      row.model = family.model;
      row.method = family.method;
      row.pattern_id = pid;
      row.result = run_fer(spec, ChannelConfig::for_code(spec, grid[si]), stop, seed, sim);
      rows.push_back(row);
    }
  }
  return rows;
}

void write_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "n,np,k,model,method,pattern_id,ebn0_db,trials,frame_errors,fer,ber,seed\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.np << ',' << r.k << ',' << to_string(r.model) << ','
        << to_string(r.method) << ',' << r.pattern_id << ','
        << format_number("%.6g", r.result.ebn0_db) << ',' << r.result.trials << ','
        << r.result.frame_errors << ',' << format_number("%.6e", r.result.fer()) << ','
        << format_number("%.6e", r.result.ber()) << ',' << r.result.seed << '\n';
  }
}

void write_gnuplot(std::ostream& out, std::span<const SweepRow> rows) {
  std::size_t current = static_cast<std::size_t>(-1);
  for (const auto& r : rows) {
    if (r.pattern_id != current) {
      if (current != static_cast<std::size_t>(-1)) out << "\n\n";
      current = r.pattern_id;
      out << "# pattern " << r.pattern_id << " np=" << r.np << " k=" << r.k << " model "
          << to_string(r.model) << "\n# ebn0_db fer ber\n";
    }
    out << format_number("%.6g", r.result.ebn0_db) << ' ' << format_number("%.6e", r.result.fer())
        << ' ' << format_number("%.6e", r.result.ber()) << '\n';
  }
}

}  // namespace polarpunct
