#include "polarpunct/codec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "polarpunct/analysis.hpp"
#include "polarpunct/errors.hpp"

namespace polarpunct {

namespace {

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

IndexSet intersection(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string join(const IndexSet& s) {
  std::string out;
  for (std::size_t i : s) out += (out.empty() ? "" : ",") + std::to_string(i);
  return "{" + out + "}";
}

}  // namespace

Crc::Crc(unsigned width, std::uint32_t poly) : width_(width), poly_(poly) {
  if (width > 31) throw RangeError("CRC width must be at most 31");
  if (width > 0 && (poly >> width) != 0) throw RangeError("CRC polynomial wider than its width");
}

Crc Crc::for_width(unsigned width) {
  switch (width) {
    case 0: return Crc{};
    case 5: return Crc{5, 0x05};
    case 8: return Crc{8, 0x07};
    default: throw RangeError("unsupported CRC width " + std::to_string(width) + " (use 0, 5 or 8)");
  }
}

BitVector Crc::remainder(std::span<const std::uint8_t> message) const {
  if (width_ == 0) return {};
  const std::uint32_t mask = (std::uint32_t{1} << width_) - 1;
  std::uint32_t reg = 0;
  for (std::uint8_t b : message) {
    const std::uint32_t feedback = ((reg >> (width_ - 1)) ^ b) & 1U;
    reg = (reg << 1) & mask;
    if (feedback) reg ^= poly_;
  }
  BitVector out(width_);
  for (unsigned k = 0; k < width_; ++k) out[k] = (reg >> (width_ - 1 - k)) & 1U;
  return out;
}

BitVector Crc::attach(std::span<const std::uint8_t> message) const {
  BitVector out(message.begin(), message.end());
  const BitVector r = remainder(message);
  out.insert(out.end(), r.begin(), r.end());
  return out;
}

bool Crc::check(std::span<const std::uint8_t> word) const {
  if (width_ == 0) return true;
  if (word.size() < width_) return false;
  const auto body = word.first(word.size() - width_);
  const BitVector r = remainder(body);
  return std::equal(r.begin(), r.end(), word.begin() + static_cast<std::ptrdiff_t>(body.size()));
}

IndexSet PolarCodeSpec::frozen_set() const {
  IndexSet out;
  for (std::size_t i = 0; i < length(); ++i) {
    if (!contains(info_set, i)) out.push_back(i);
  }
  return out;
}

void validate(const PolarCodeSpec& spec, bool allow_catastrophic) {
  if (spec.n > kMaxStages) throw InvalidCode("stage count too large");
  if (spec.pattern.length() != spec.length()) {
    throw InvalidCode("pattern length " + std::to_string(spec.pattern.length()) +
                      " does not match N = " + std::to_string(spec.length()));
  }
  const auto& a = spec.info_set;
  if (normalized(a) != a) throw InvalidCode("information set must be sorted and duplicate-free");
  if (!a.empty() && a.back() >= spec.length()) throw InvalidCode("information index out of range");
  if (spec.crc.width() > a.size()) throw InvalidCode("CRC wider than the information set");
  if (a.size() > spec.transmitted_length()) {
    throw InvalidCode("information set of size " + std::to_string(a.size()) +
                      " exceeds the transmitted length " + std::to_string(spec.transmitted_length()));
  }
  if (spec.model == ChannelModel::Ucm) {
    const IndexSet dead = intersection(a, ucm_zero_set(spec.pattern));
    if (!dead.empty() && !allow_catastrophic) {
      throw InvalidCode("pattern is catastrophic: information channels " + join(dead) +
                        " have zero capacity");
    }
  } else {
    const IndexSet clash = intersection(a, dcm_frozen_set(spec.pattern));
    if (!clash.empty()) {
      throw InvalidCode("information channels " + join(clash) +
                        " must carry dependent frozen bits under dcm");
    }
  }
}

DcmConstraintSolver::DcmConstraintSolver(unsigned n, IndexSet e, IndexSet b)
    : n_(n), e_(std::move(e)), b_(std::move(b)) {
  if (e_.size() != b_.size()) {
    throw RangeError("frozen set and zero set sizes differ (" + std::to_string(e_.size()) +
                     " vs " + std::to_string(b_.size()) + ")");
  }
  const std::size_t length = std::size_t{1} << n_;
  for (const IndexSet* s : {&e_, &b_}) {
    if (!s->empty() && s->back() >= length) throw RangeError("index out of range for N");
  }
  if (!e_.empty()) inverse_ = gf2_inverse(generator_submatrix(e_, b_));
  scratch_.resize(length);
  rhs_.resize(b_.size());
}

DcmConstraintSolver::DcmConstraintSolver(const PuncturingPattern& p)
    : DcmConstraintSolver(p.stages(), dcm_frozen_set(p), p.zero_set()) {}

void DcmConstraintSolver::apply(std::span<std::uint8_t> u) {
  if (u.size() != scratch_.size()) throw RangeError("input vector length does not match N");
  if (e_.empty()) return;
  for (std::size_t i : e_) u[i] = 0;
  std::copy(u.begin(), u.end(), scratch_.begin());
  polar_encode_in_place(scratch_);
  for (std::size_t k = 0; k < b_.size(); ++k) rhs_[k] = scratch_[b_[k]];
  // rhs * inverse, accumulated a row at a time.
  const std::size_t words = inverse_.row(0).size();
  acc_.assign(words, 0);
  for (std::size_t k = 0; k < rhs_.size(); ++k) {
    if (!rhs_[k]) continue;
    const auto row = inverse_.row(k);
    for (std::size_t w = 0; w < words; ++w) acc_[w] ^= row[w];
  }
  for (std::size_t k = 0; k < e_.size(); ++k) {
    u[e_[k]] = (acc_[k / Gf2Matrix::kWordBits] >> (k % Gf2Matrix::kWordBits)) & 1U;
  }
}

BitVector DcmConstraintSolver::frozen_values(std::span<const std::uint8_t> u) {
  BitVector full(u.begin(), u.end());
  apply(full);
  BitVector out;
  for (std::size_t i : e_) out.push_back(full[i]);
  return out;
}

BitVector dcm_frozen_values(std::span<const std::uint8_t> u, const IndexSet& e, const IndexSet& b,
                            unsigned n) {
  if (u.size() != (std::size_t{1} << n)) throw RangeError("input vector length does not match N");
  DcmConstraintSolver solver(n, e, b);
  return solver.frozen_values(u);
}

Encoder::Encoder(const PolarCodeSpec& spec) : spec_(spec) {
  validate(spec_, true);
  transmitted_ = spec_.pattern.transmitted_set();
  if (spec_.model == ChannelModel::Dcm && spec_.pattern.punctured_count() > 0) {
    solve_dcm_ = true;
    solver_ = DcmConstraintSolver(spec_.pattern);
  }
  u_.resize(spec_.length());
}

void Encoder::fill_input(std::span<const std::uint8_t> message) {
  if (message.size() != spec_.message_length()) {
    throw RangeError("message has " + std::to_string(message.size()) + " bits, expected " +
                     std::to_string(spec_.message_length()));
  }
  std::fill(u_.begin(), u_.end(), 0);
  const auto& a = spec_.info_set;
  for (std::size_t k = 0; k < message.size(); ++k) u_[a[k]] = message[k] & 1U;
  if (spec_.crc.width() > 0) {
    const BitVector r = spec_.crc.remainder(message);
    for (std::size_t k = 0; k < r.size(); ++k) u_[a[message.size() + k]] = r[k];
  }
  if (solve_dcm_) solver_.apply(u_);
}

BitVector Encoder::input_vector(std::span<const std::uint8_t> message) {
  fill_input(message);
  return u_;
}

BitVector Encoder::codeword(std::span<const std::uint8_t> message) {
  fill_input(message);
  BitVector x = u_;
  polar_encode_in_place(x);
  return x;
}

BitVector Encoder::encode(std::span<const std::uint8_t> message) {
  BitVector out(transmitted_.size());
  encode(message, out);
  return out;
}

void Encoder::encode(std::span<const std::uint8_t> message, std::span<std::uint8_t> out) {
  if (out.size() != transmitted_.size()) throw RangeError("output length does not match N_p");
  fill_input(message);
  polar_encode_in_place(u_);
  for (std::size_t k = 0; k < transmitted_.size(); ++k) out[k] = u_[transmitted_[k]];
}

BitVector encode(const PolarCodeSpec& spec, std::span<const std::uint8_t> message) {
  Encoder enc(spec);
  return enc.encode(message);
}

void assign_llrs(std::span<const double> received, const PuncturingPattern& p, ChannelModel model,
                 std::span<double> out, double saturation) {
  if (received.size() != p.transmitted_length()) {
    throw RangeError("received " + std::to_string(received.size()) + " values, expected N_p = " +
                     std::to_string(p.transmitted_length()));
  }
  if (out.size() != p.length()) throw RangeError("output length does not match N");
  const double fill = model == ChannelModel::Ucm ? 0.0 : saturation;
  std::size_t k = 0;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p.transmitted(i) ? received[k++] : fill;
}

std::vector<double> assign_llrs(std::span<const double> received, const PuncturingPattern& p,
                                ChannelModel model, double saturation) {
  std::vector<double> out(p.length());
  assign_llrs(received, p, model, out, saturation);
  return out;
}

double check_node(double a, double b, CheckNodeRule rule) {
  const double mag = std::min(std::abs(a), std::abs(b));
  const double hard = ((a < 0) != (b < 0)) ? -mag : mag;
  if (rule == CheckNodeRule::MinSum) return hard;
  // Exact box-plus in a form that stays finite for large inputs.
  return hard + std::log1p(std::exp(-std::abs(a + b))) - std::log1p(std::exp(-std::abs(a - b)));
}

namespace {

BitVector sc_node(const std::vector<double>& llr, std::size_t off, const BitVector& is_info,
                  BitVector& u, CheckNodeRule rule) {
  const std::size_t s = llr.size();
  if (s == 1) {
    u[off] = is_info[off] && llr[0] < 0.0;
    return {u[off]};
  }
  const std::size_t h = s / 2;
  std::vector<double> child(h);
  for (std::size_t j = 0; j < h; ++j) child[j] = check_node(llr[j], llr[j + h], rule);
  const BitVector left = sc_node(child, off, is_info, u, rule);
  for (std::size_t j = 0; j < h; ++j) child[j] = llr[j + h] + (left[j] ? -llr[j] : llr[j]);
  const BitVector right = sc_node(child, off + h, is_info, u, rule);
  BitVector x(s);
  for (std::size_t j = 0; j < h; ++j) {
    x[j] = left[j] ^ right[j];
    x[j + h] = right[j];
  }
  return x;
}

}  // namespace

BitVector sc_decode(std::span<const double> llrs, const PolarCodeSpec& spec, CheckNodeRule rule) {
  if (llrs.size() != spec.length()) throw RangeError("LLR frame length does not match N");
  BitVector is_info(spec.length(), 0);
  for (std::size_t i : spec.info_set) is_info.at(i) = 1;
  BitVector u(spec.length(), 0);
  sc_node(std::vector<double>(llrs.begin(), llrs.end()), 0, is_info, u, rule);
  BitVector out;
  for (std::size_t i : spec.info_set) out.push_back(u[i]);
  return out;
}

SclDecoder::SclDecoder(const PolarCodeSpec& spec, DecoderConfig config)
    : spec_(spec), config_(config) {
  validate(spec_, true);
  if (config_.list_size == 0) throw RangeError("list size must be at least 1");
  if (spec_.model == ChannelModel::Dcm && spec_.pattern.punctured_count() > 0) {
    // The decoder assumes every frozen bit is zero, which under dcm holds for
    // all messages exactly when no information row of G_N touches B.
    const Gf2Matrix coupling = generator_submatrix(spec_.info_set, spec_.pattern.zero_set());
    if (coupling != Gf2Matrix(coupling.rows(), coupling.cols())) {
      throw InvalidCode(
          "dcm decoding needs message-independent zero frozen bits; this pattern couples the "
          "information set to punctured positions (use a dcm-reciprocal pattern)");
    }
  }
  const std::size_t length = spec_.length();
  is_info_.assign(length, 0);
  for (std::size_t i : spec_.info_set) is_info_[i] = 1;
  paths_.resize(config_.list_size);
  for (auto& p : paths_) {
    p.alpha.assign(2 * length, 0.0);
    p.partial.assign(length, 0);
    p.u.assign(length, 0);
  }
  active_.reserve(config_.list_size);
  free_.reserve(config_.list_size);
  candidates_.reserve(2 * config_.list_size);
}

void SclDecoder::clone_path(std::size_t from, std::size_t to) {
  Path& dst = paths_[to];
  const Path& src = paths_[from];
  std::copy(src.alpha.begin(), src.alpha.end(), dst.alpha.begin());
  std::copy(src.partial.begin(), src.partial.end(), dst.partial.begin());
  std::copy(src.u.begin(), src.u.end(), dst.u.begin());
  dst.metric = src.metric;
  dst.erased = src.erased;
}

void SclDecoder::decide_leaf(std::size_t index) {
  auto set_bit = [&](Path& p, std::uint8_t bit, double llr) {
    p.u[index] = bit;
    p.partial[index] = bit;
    p.metric += softplus(bit ? llr : -llr);
  };

  if (!is_info_[index]) {
    for (std::size_t id : active_) set_bit(paths_[id], 0, paths_[id].alpha[1]);
    return;
  }

  candidates_.clear();
  for (std::size_t id : active_) {
    const double llr = paths_[id].alpha[1];
    const double m = paths_[id].metric;
    candidates_.push_back({m + softplus(-llr), 0, id});
    candidates_.push_back({m + softplus(llr), 1, id});
  }
  auto better = [](const Candidate& x, const Candidate& y) {
    if (x.metric != y.metric) return x.metric < y.metric;
    if (x.bit != y.bit) return x.bit < y.bit;
    return x.path < y.path;
  };
  if (candidates_.size() > config_.list_size) {
    std::sort(candidates_.begin(), candidates_.end(), better);
    candidates_.resize(config_.list_size);
  }

  // keep[id] bit 0 / bit 1: which continuations of path id survive.
  std::vector<std::uint8_t> keep(paths_.size(), 0);
  for (const auto& c : candidates_) keep[c.path] |= static_cast<std::uint8_t>(1U << c.bit);

  std::vector<std::size_t> survivors;
  survivors.reserve(active_.size());
  for (std::size_t id : active_) {
    if (keep[id]) {
      survivors.push_back(id);
    } else {
      free_.push_back(id);
    }
  }
  active_ = survivors;
  for (std::size_t id : survivors) {
    Path& p = paths_[id];
    const double llr = p.alpha[1];
    const bool zero_evidence = llr == 0.0;
    if (keep[id] == 3) {
      const std::size_t twin = free_.back();
      free_.pop_back();
      clone_path(id, twin);
      set_bit(paths_[twin], 1, llr);
      paths_[twin].erased |= zero_evidence;
      active_.push_back(twin);
      set_bit(p, 0, llr);
    } else {
      set_bit(p, keep[id] == 2 ? 1 : 0, llr);
    }
    p.erased |= zero_evidence;
  }
}

void SclDecoder::decode_node(std::size_t off, std::size_t size) {
  if (size == 1) {
    decide_leaf(off);
    return;
  }
  const std::size_t h = size / 2;
  const auto rule = config_.rule;
  for (std::size_t id : active_) {
    double* a = paths_[id].alpha.data();
    for (std::size_t j = 0; j < h; ++j) a[h + j] = check_node(a[size + j], a[size + h + j], rule);
  }
  decode_node(off, h);
  for (std::size_t id : active_) {
    double* a = paths_[id].alpha.data();
    const std::uint8_t* left = paths_[id].partial.data() + off;
    for (std::size_t j = 0; j < h; ++j) {
      a[h + j] = a[size + h + j] + (left[j] ? -a[size + j] : a[size + j]);
    }
  }
  decode_node(off + h, h);
  for (std::size_t id : active_) {
    std::uint8_t* x = paths_[id].partial.data() + off;
    for (std::size_t j = 0; j < h; ++j) x[j] ^= x[h + j];
  }
}

DecodeResult SclDecoder::decode(std::span<const double> llrs) {
  const std::size_t length = spec_.length();
  if (llrs.size() != length) throw RangeError("LLR frame length does not match N");
  active_.assign(1, 0);
  free_.clear();
  for (std::size_t id = paths_.size(); id-- > 1;) free_.push_back(id);
  Path& root = paths_[0];
  const double sat = config_.saturation;
  for (std::size_t j = 0; j < length; ++j) root.alpha[length + j] = std::clamp(llrs[j], -sat, sat);
  root.metric = 0.0;
  root.erased = false;

  decode_node(0, length);

  std::vector<std::size_t> ranked = active_;
  std::sort(ranked.begin(), ranked.end(), [&](std::size_t x, std::size_t y) {
    if (paths_[x].metric != paths_[y].metric) return paths_[x].metric < paths_[y].metric;
    return x < y;
  });
  auto info_bits = [&](std::size_t id) {
    BitVector out;
    out.reserve(spec_.info_set.size());
    for (std::size_t i : spec_.info_set) out.push_back(paths_[id].u[i]);
    return out;
  };
  std::size_t chosen = ranked.front();
  bool pass = false;
  for (std::size_t id : ranked) {
    if (spec_.crc.check(info_bits(id))) {
      chosen = id;
      pass = true;
      break;
    }
  }
  return DecodeResult{info_bits(chosen), paths_[chosen].metric, pass, paths_[chosen].erased};
}

DecodeResult scl_decode(std::span<const double> llrs, const PolarCodeSpec& spec,
                        DecoderConfig config) {
  SclDecoder decoder(spec, config);
  return decoder.decode(llrs);
}

}  // namespace polarpunct
