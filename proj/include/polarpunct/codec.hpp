#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "polarpunct/bits.hpp"
#include "polarpunct/gf2.hpp"
#include "polarpunct/pattern.hpp"

namespace polarpunct {

/// Bitwise CRC, MSB-first shift register, zero initial value, no final XOR.
class Crc {
 public:
  Crc() = default;
  Crc(unsigned width, std::uint32_t poly);

  /// 0 -> no CRC, 5 -> x^5+x^2+1, 8 -> x^8+x^2+x+1.
  static Crc for_width(unsigned width);

  unsigned width() const { return width_; }
  std::uint32_t poly() const { return poly_; }

  BitVector remainder(std::span<const std::uint8_t> message) const;
  BitVector attach(std::span<const std::uint8_t> message) const;
  /// True when the last width() bits are the remainder of the rest.
  bool check(std::span<const std::uint8_t> word) const;

 private:
  unsigned width_ = 0;
  std::uint32_t poly_ = 0;
};

struct PolarCodeSpec {
  unsigned n = 0;
  /// A, ascending. Includes the CRC positions, which are the last crc.width() entries.
  IndexSet info_set;
  ChannelModel model = ChannelModel::Ucm;
  PuncturingPattern pattern;
  Crc crc;

  std::size_t length() const { return std::size_t{1} << n; }
  std::size_t transmitted_length() const { return pattern.transmitted_length(); }
  std::size_t message_length() const { return info_set.size() - crc.width(); }
  IndexSet frozen_set() const;
};

/// Throws InvalidCode when the spec is inconsistent. Catastrophic Ucm specs
/// (A meets D) are accepted only when allow_catastrophic is set.
void validate(const PolarCodeSpec& spec, bool allow_catastrophic = false);

/// Solves the frozen bits on E so that the codeword vanishes on B:
///   u_E = u_{E^c} G(E^c, B) G(E, B)^{-1}.
class DcmConstraintSolver {
 public:
  DcmConstraintSolver() = default;
  DcmConstraintSolver(unsigned n, IndexSet e, IndexSet b);
  explicit DcmConstraintSolver(const PuncturingPattern& p);

  const IndexSet& e() const { return e_; }
  const IndexSet& b() const { return b_; }

  /// Overwrites u on E. Entries of u on E are ignored on input.
  void apply(std::span<std::uint8_t> u);
  BitVector frozen_values(std::span<const std::uint8_t> u);

 private:
  unsigned n_ = 0;
  IndexSet e_;
  IndexSet b_;
  Gf2Matrix inverse_;
  BitVector scratch_;
  BitVector rhs_;
  std::vector<Gf2Matrix::Word> acc_;
};

/// Values on E for the given full-length u (its E entries are ignored).
BitVector dcm_frozen_values(std::span<const std::uint8_t> u, const IndexSet& e, const IndexSet& b,
                            unsigned n);

class Encoder {
 public:
  explicit Encoder(const PolarCodeSpec& spec);

  const PolarCodeSpec& spec() const { return spec_; }

  /// u with message, CRC and frozen values in place.
  BitVector input_vector(std::span<const std::uint8_t> message);
  /// x = u G_N before projection.
  BitVector codeword(std::span<const std::uint8_t> message);
  /// x restricted to the transmitted positions, ascending.
  BitVector encode(std::span<const std::uint8_t> message);
  void encode(std::span<const std::uint8_t> message, std::span<std::uint8_t> out);

 private:
  void fill_input(std::span<const std::uint8_t> message);

  PolarCodeSpec spec_;
  IndexSet transmitted_;
  bool solve_dcm_ = false;
  DcmConstraintSolver solver_;
  BitVector u_;
};

BitVector encode(const PolarCodeSpec& spec, std::span<const std::uint8_t> message);

inline constexpr double kDefaultSaturation = 300.0;

/// Expands N_p received LLRs to N: punctured positions get 0 (Ucm) or
/// +saturation (Dcm).
std::vector<double> assign_llrs(std::span<const double> received, const PuncturingPattern& p,
                                ChannelModel model, double saturation = kDefaultSaturation);
void assign_llrs(std::span<const double> received, const PuncturingPattern& p, ChannelModel model,
                 std::span<double> out, double saturation = kDefaultSaturation);

enum class CheckNodeRule { MinSum, Exact };

struct DecoderConfig {
  std::size_t list_size = 1;
  CheckNodeRule rule = CheckNodeRule::MinSum;
  double saturation = kDefaultSaturation;
};

struct DecodeResult {
  /// Decisions over A, ascending (message followed by CRC).
  BitVector info_bits;
  double metric = 0.0;
  bool crc_pass = true;
  /// An information bit was decided on an LLR of exactly zero: the decoder
  /// had no evidence at all for it, so the frame counts as lost.
  bool erased = false;
};

double check_node(double a, double b, CheckNodeRule rule);

/// Plain recursive SC decoder, kept simple as a reference. Frozen bits are 0.
BitVector sc_decode(std::span<const double> llrs, const PolarCodeSpec& spec,
                    CheckNodeRule rule = CheckNodeRule::MinSum);

/// CRC-aided SC list decoder with preallocated per-path buffers. One instance
/// must not be used from two threads at once.
class SclDecoder {
 public:
  SclDecoder(const PolarCodeSpec& spec, DecoderConfig config = {});

  DecodeResult decode(std::span<const double> llrs);

 private:
  struct Path {
    std::vector<double> alpha;  // node of size s keeps its input at [s, 2s)
    BitVector partial;          // node [off, off+s) writes its codeword there
    BitVector u;
    double metric = 0.0;
    bool erased = false;
  };

  void decode_node(std::size_t off, std::size_t size);
  void decide_leaf(std::size_t index);
  void clone_path(std::size_t from, std::size_t to);

  PolarCodeSpec spec_;
  DecoderConfig config_;
  BitVector is_info_;
  std::vector<Path> paths_;
  std::vector<std::size_t> active_;
  std::vector<std::size_t> free_;

  struct Candidate {
    double metric;
    std::uint8_t bit;
    std::size_t path;
  };
  std::vector<Candidate> candidates_;
};

DecodeResult scl_decode(std::span<const double> llrs, const PolarCodeSpec& spec,
                        DecoderConfig config = {});

}  // namespace polarpunct
