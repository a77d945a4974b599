#include "polarpunct/pattern.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "polarpunct/errors.hpp"

namespace polarpunct {

namespace {

std::size_t checked_length(unsigned n) {
  if (n > kMaxStages) throw RangeError("stage count " + std::to_string(n) + " too large");
  return std::size_t{1} << n;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view to_string(ChannelModel model) {
  return model == ChannelModel::Ucm ? "ucm" : "dcm";
}

ChannelModel parse_channel_model(std::string_view text) {
  if (text == "ucm" || text == "UCM") return ChannelModel::Ucm;
  if (text == "dcm" || text == "DCM") return ChannelModel::Dcm;
  throw FormatError("unknown channel model '" + std::string(text) + "' (expected ucm or dcm)");
}

PuncturingPattern PuncturingPattern::all_ones(unsigned n) {
  return PuncturingPattern(n, BitVector(checked_length(n), 1));
}

PuncturingPattern PuncturingPattern::from_mask(unsigned n, BitVector mask) {
  if (mask.size() != checked_length(n)) {
    throw RangeError("pattern length " + std::to_string(mask.size()) + " does not match N = " +
                     std::to_string(checked_length(n)));
  }
  for (auto& b : mask) {
    if (b > 1) throw RangeError("pattern entries must be 0 or 1");
  }
  return PuncturingPattern(n, std::move(mask));
}

PuncturingPattern PuncturingPattern::from_zero_set(unsigned n,
                                                   std::span<const std::size_t> zeros) {
  BitVector mask(checked_length(n), 1);
  for (std::size_t z : zeros) {
    if (z >= mask.size()) {
      throw RangeError("punctured index " + std::to_string(z) + " out of range");
    }
    mask[z] = 0;
  }
  return PuncturingPattern(n, std::move(mask));
}

PuncturingPattern PuncturingPattern::from_word(unsigned n, std::uint64_t word) {
  if (n > 6) throw RangeError("word-packed patterns require n <= 6");
  BitVector mask(std::size_t{1} << n);
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = (word >> i) & 1U;
  return PuncturingPattern(n, std::move(mask));
}

PuncturingPattern PuncturingPattern::parse(unsigned n, std::string_view text) {
  const std::size_t length = checked_length(n);
  text = trim(text);
  const bool bit_string =
      !text.empty() && std::all_of(text.begin(), text.end(), [](char c) {
        return c == '0' || c == '1';
      });
  if (bit_string) {
    if (text.size() != length) {
      throw FormatError("pattern string has length " + std::to_string(text.size()) +
                        ", expected N = " + std::to_string(length));
    }
    BitVector mask(length);
    for (std::size_t i = 0; i < length; ++i) mask[i] = text[i] == '1';
    return PuncturingPattern(n, std::move(mask));
  }

  std::string_view body = text;
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') throw FormatError("unterminated zeros list");
    body = trim(body.substr(1, body.size() - 2));
  }
  IndexSet zeros;
  while (!body.empty()) {
    const auto comma = body.find(',');
    const std::string_view item = trim(body.substr(0, comma));
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      throw FormatError("malformed pattern '" + std::string(text) + "'");
    }
    if (value >= length) {
      throw FormatError("punctured index " + std::to_string(value) + " out of range for N = " +
                        std::to_string(length));
    }
    zeros.push_back(value);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
    if (trim(body).empty()) throw FormatError("trailing comma in zeros list");
  }
  const std::size_t count = zeros.size();
  zeros = normalized(std::move(zeros));
  if (zeros.size() != count) throw FormatError("duplicate index in zeros list");
  return from_zero_set(n, zeros);
}

IndexSet PuncturingPattern::zero_set() const {
  IndexSet out;
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (!mask_[i]) out.push_back(i);
  }
  return out;
}

IndexSet PuncturingPattern::transmitted_set() const {
  IndexSet out;
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i]) out.push_back(i);
  }
  return out;
}

std::size_t PuncturingPattern::transmitted_length() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), std::uint8_t{1}));
}

PuncturingPattern PuncturingPattern::complement() const {
  BitVector mask(mask_.size());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = mask_[i] ^ 1U;
  return PuncturingPattern(n_, std::move(mask));
}

std::uint64_t PuncturingPattern::to_word() const {
  if (n_ > 6) throw RangeError("word-packed patterns require n <= 6");
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < mask_.size(); ++i) word |= std::uint64_t{mask_[i]} << i;
  return word;
}

std::string PuncturingPattern::to_string() const {
  std::string s(mask_.size(), '0');
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i]) s[i] = '1';
  }
  return s;
}

void to_json(nlohmann::json& j, const PuncturingPattern& p) {
  j = nlohmann::json{{"n", p.stages()}, {"zeros", p.zero_set()}};
}

void from_json(const nlohmann::json& j, PuncturingPattern& p) {
  try {
    const auto n = j.at("n").get<unsigned>();
    const auto zeros = j.at("zeros").get<IndexSet>();
    const auto sorted = normalized(zeros);
    if (sorted.size() != zeros.size()) throw FormatError("duplicate index in zeros list");
    p = PuncturingPattern::from_zero_set(n, sorted);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed pattern JSON: ") + e.what());
  }
}

}  // namespace polarpunct
