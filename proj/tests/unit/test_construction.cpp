#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "polarpunct/analysis.hpp"
#include "polarpunct/catastrophic.hpp"
#include "polarpunct/construction.hpp"
#include "polarpunct/errors.hpp"

using namespace polarpunct;

namespace {

IndexSet random_info_set(std::mt19937_64& rng, unsigned n, std::size_t k) {
  std::vector<std::size_t> all(std::size_t{1} << n);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(k);
  return normalized(all);
}

}  // namespace

TEST_CASE("GA means") {
  const auto m0 = ga_llr_means(0, 3.0);
  REQUIRE(m0.size() == 1);
  CHECK(m0[0] == doctest::Approx(4.0 * std::pow(10.0, 0.3)));
  const auto m1 = ga_llr_means(1, 3.0);
  CHECK(m1[1] == doctest::Approx(2.0 * m0[0]));
  CHECK(m1[0] < m0[0]);
  CHECK(m1[0] > 0.0);
  // Means never decrease when a zero digit of the index becomes a one.
  for (double snr : {-2.0, 0.0, 3.0, 8.0}) {
    const auto m = ga_llr_means(7, snr);
    for (std::size_t i = 0; i < m.size(); ++i) {
      CHECK(std::isfinite(m[i]));
      for (unsigned b = 0; b < 7; ++b) {
        const std::size_t j = i | (std::size_t{1} << b);
        if (j != i) CHECK(m[j] >= m[i]);
      }
    }
  }
  const auto large = ga_llr_means(10, 10.0);
  CHECK(std::all_of(large.begin(), large.end(), [](double v) { return std::isfinite(v) && v > 0; }));
}

TEST_CASE("reliability order") {
  CHECK(reliability_order(1, 0.0).order == std::vector<std::size_t>{1, 0});
  const auto o2 = reliability_order(2, 0.0).order;
  CHECK(o2.front() == 3);
  CHECK(o2.back() == 0);
  CHECK(reliability_order(3, 2.0).order == std::vector<std::size_t>{7, 6, 5, 3, 4, 2, 1, 0});
  for (unsigned n = 1; n <= 9; ++n) {
    const auto o = reliability_order(n, 1.0);
    auto sorted = o.order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == i);
    const auto pos_last = std::find(o.order.begin(), o.order.end(), sorted.size() - 1);
    const auto pos_zero = std::find(o.order.begin(), o.order.end(), 0);
    CHECK(pos_last < pos_zero);
    CHECK(reliability_order(n, 1.0).order == o.order);
  }
}

TEST_CASE("info set selection") {
  const auto o = reliability_order(2, 0.0);
  CHECK(info_set(o, 0).empty());
  CHECK(info_set(o, 1) == IndexSet{3});
  CHECK(info_set(o, 1, IndexSet{3}) == IndexSet{o.order[1]});
  CHECK(info_set(o, 4) == IndexSet{0, 1, 2, 3});
  CHECK_THROWS_AS(info_set(o, 4, IndexSet{0}), RangeError);
}

TEST_CASE("greedy base pattern") {
  CHECK(greedy_base_pattern(IndexSet{3}, 2, 1).to_string() == "1000");
  for (std::uint64_t seed : {0, 1, 2, 99}) {
    CHECK(greedy_base_pattern(IndexSet{0}, 1, seed).to_string() == "11");
  }
  for (unsigned n = 0; n <= 4; ++n) {
    IndexSet all;
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) all.push_back(i);
    CHECK(greedy_base_pattern(all, n, 3) == PuncturingPattern::all_ones(n));
  }
  CHECK_THROWS_AS(greedy_base_pattern({}, 2, 0), RangeError);
  CHECK_THROWS_AS(greedy_base_pattern(IndexSet{4}, 2, 0), RangeError);
}

TEST_CASE("greedy construction validity") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 120; ++t) {
    const unsigned n = 1 + static_cast<unsigned>(rng() % 6);
    const std::size_t len = std::size_t{1} << n;
    const IndexSet a = random_info_set(rng, n, len / 2);
    const std::uint64_t seed = rng();
    const auto base = greedy_base_pattern(a, n, seed);
    CHECK(base.transmitted_length() >= a.size());
    const auto z = z_capacities(base);
    for (std::size_t i : a) {
      CHECK(z[i]);
      CHECK(rank_noncatastrophic_check(i, base));
    }
    CHECK(greedy_base_pattern(a, n, seed) == base);

    std::vector<std::size_t> lengths{len, base.transmitted_length()};
    if (base.transmitted_length() + 1 < len) lengths.push_back(base.transmitted_length() + 1);
    lengths = normalized(lengths);
    const auto fam = greedy_rc_family(a, n, lengths, seed);
    CHECK(fam.patterns.front() == base);
    CHECK(is_nested(fam.patterns));
    for (const auto& p : fam.patterns) CHECK(check_pattern(p, a, ChannelModel::Ucm).non_catastrophic);
    for (std::size_t k = 1; k < fam.patterns.size(); ++k) {
      CHECK(fam.patterns[k].transmitted_length() > fam.patterns[k - 1].transmitted_length());
    }
  }
}

TEST_CASE("paper-literal fallback may leave channels unsatisfied but still terminates") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    const IndexSet a = random_info_set(rng, 5, 16);
    const auto p = greedy_base_pattern(a, 5, rng(), GreedyFallback::PaperLiteral);
    CHECK(p.length() == 32);
  }
}

TEST_CASE("greedy family") {
  const std::vector<std::size_t> one{1}, both{1, 4}, reversed{4, 1};
  const auto fam = greedy_rc_family(IndexSet{3}, 2, one, 5);
  REQUIRE(fam.patterns.size() == 1);
  CHECK(fam.patterns[0].to_string() == "1000");
  const auto grown = greedy_rc_family(IndexSet{3}, 2, reversed, 5);
  REQUIRE(grown.patterns.size() == 2);
  CHECK(grown.patterns[0].to_string() == "1000");
  CHECK(grown.patterns[1].to_string() == "1111");
  CHECK(greedy_rc_family(IndexSet{3}, 2, both, 5).patterns == grown.patterns);
  CHECK_THROWS_AS(greedy_rc_family(IndexSet{2, 3}, 2, one, 5), InfeasibleRate);
  const std::vector<std::size_t> too_long{9};
  CHECK_THROWS_AS(greedy_rc_family(IndexSet{3}, 2, too_long, 5), RangeError);
  // Base pattern for channel 0 needs everything.
  const std::vector<std::size_t> three{3};
  CHECK_THROWS_AS(greedy_rc_family(IndexSet{0}, 2, three, 5), InfeasibleRate);
}

TEST_CASE("boxplus") {
  CHECK(boxplus(IndexSet{1, 2, 4}, IndexSet{1, 2, 4}) == IndexSet{3, 5, 6});
  CHECK(boxplus(IndexSet{}, IndexSet{1, 2}).empty());
  CHECK(boxplus(IndexSet{3}, IndexSet{3}).empty());
  CHECK(boxplus(IndexSet{0}, IndexSet{5}) == IndexSet{5});
}

TEST_CASE("seed sequence") {
  CHECK(seed_sequence(IndexSet{5, 7}, 3).entries == std::vector<std::size_t>{0, 1, 2, 4, 3, 6});
  CHECK(seed_sequence(IndexSet{4, 6}, 3).entries == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(seed_sequence(IndexSet{}, 1).entries == std::vector<std::size_t>{0, 1});
  CHECK_THROWS_AS(seed_sequence(IndexSet{0, 3}, 2), ZeroInInfoSet);

  std::mt19937_64 rng(17);
  for (int t = 0; t < 200; ++t) {
    const unsigned n = 1 + static_cast<unsigned>(rng() % 7);
    IndexSet a = random_info_set(rng, n, rng() % (std::size_t{1} << n));
    a.erase(std::remove(a.begin(), a.end(), 0), a.end());
    const auto seq = seed_sequence(a, n);
    REQUIRE(!seq.entries.empty());
    CHECK(seq.entries[0] == 0);
    std::size_t pos = 0;
    for (std::size_t level = 0; level < seq.level_sizes.size(); ++level) {
      for (std::size_t k = 0; k < seq.level_sizes[level]; ++k, ++pos) {
        CHECK(hamming_weight(seq.entries[pos]) == level);
        CHECK_FALSE(contains(a, seq.entries[pos]));
        if (k > 0) CHECK(seq.entries[pos - 1] < seq.entries[pos]);
      }
    }
    CHECK(pos == seq.entries.size());
  }
}

TEST_CASE("unconstrained seed prefixes are reciprocal") {
  for (unsigned n = 1; n <= 4; ++n) {
    const auto seq = seed_sequence({}, n);
    CHECK(seq.entries.size() == (std::size_t{1} << n));
    for (std::size_t s = 0; s <= seq.entries.size(); ++s) {
      const IndexSet prefix(seq.entries.begin(), seq.entries.begin() + static_cast<std::ptrdiff_t>(s));
      CHECK(is_reciprocal(PuncturingPattern::from_zero_set(n, normalized(prefix)), ChannelModel::Ucm));
    }
  }
}

TEST_CASE("reciprocal family") {
  const std::vector<std::size_t> counts{2, 4};
  const auto fam = reciprocal_rc_family(IndexSet{5, 7}, 3, counts);
  REQUIRE(fam.patterns.size() == 2);
  CHECK(fam.patterns[0].zero_set() == IndexSet{0, 1, 2, 4});
  CHECK(fam.patterns[1].zero_set() == IndexSet{0, 1});
  CHECK(is_nested(fam.patterns));
  const std::vector<std::size_t> five{5}, none{0};
  CHECK_THROWS_AS(reciprocal_rc_family(IndexSet{4, 6}, 3, five), InfeasibleRate);
  const auto trivial = reciprocal_rc_family(IndexSet{4, 6}, 3, none);
  REQUIRE(trivial.patterns.size() == 1);
  CHECK(trivial.patterns[0] == PuncturingPattern::all_ones(3));

  // Dcm mirror: top-index blocks, never touching A.
  const auto dcm = reciprocal_rc_family(IndexSet{0, 2}, 3, counts, ChannelModel::Dcm);
  CHECK(dcm.patterns[0].zero_set() == IndexSet{3, 5, 6, 7});
  CHECK(dcm.patterns[1].zero_set() == IndexSet{6, 7});
  for (const auto& p : dcm.patterns) {
    const auto c = check_pattern(p, dcm.info_set, ChannelModel::Dcm);
    CHECK(c.non_catastrophic);
    CHECK(c.reciprocal);
  }
  CHECK_THROWS_AS(reciprocal_rc_family(IndexSet{7}, 3, counts, ChannelModel::Dcm), ZeroInInfoSet);
}

TEST_CASE("check pattern") {
  const auto p = PuncturingPattern::parse(2, "1010");
  const auto ucm = check_pattern(p, IndexSet{2}, ChannelModel::Ucm);
  CHECK(ucm.transmitted == 2);
  CHECK_FALSE(ucm.non_catastrophic);
  CHECK_FALSE(ucm.reciprocal);
  const auto dcm = check_pattern(p, IndexSet{0, 2}, ChannelModel::Dcm);
  CHECK(dcm.non_catastrophic);
  CHECK(dcm.reciprocal);
  CHECK_FALSE(check_pattern(p, IndexSet{1}, ChannelModel::Dcm).non_catastrophic);
}

TEST_CASE("family JSON") {
  const std::vector<std::size_t> counts{2, 4};
  auto fam = reciprocal_rc_family(IndexSet{5, 7}, 3, counts);
  fam.seed = 42;
  const nlohmann::json j = fam;
  CHECK(j.at("K") == 2);
  CHECK(j.at("model") == "ucm");
  CHECK(j.at("method") == "reciprocal");
  CHECK(j.at("patterns")[0].at("np") == 4);
  const auto back = j.get<RcFamily>();
  CHECK(back.patterns == fam.patterns);
  CHECK(back.info_set == fam.info_set);
  CHECK(back.seed == 42);

  auto bad = j;
  bad["K"] = 3;
  CHECK_THROWS_AS(bad.get<RcFamily>(), FormatError);
  bad = j;
  bad["patterns"][0]["np"] = 5;
  CHECK_THROWS_AS(bad.get<RcFamily>(), FormatError);
  bad = j;
  bad["model"] = "xyz";
  CHECK_THROWS_AS(bad.get<RcFamily>(), FormatError);
  bad = j;
  bad.erase("info_set");
  CHECK_THROWS_AS(bad.get<RcFamily>(), FormatError);

  const std::string path = "test_construction_family.json";
  write_family_file(path, fam);
  CHECK(read_family_file(path).patterns == fam.patterns);
  std::ofstream(path) << "{not json";
  CHECK_THROWS_AS(read_family_file(path), FormatError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_family_file("does/not/exist.json"), Error);
}
