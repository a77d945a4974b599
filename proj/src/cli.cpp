#include "polarpunct/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "polarpunct/analysis.hpp"
#include "polarpunct/catastrophic.hpp"
#include "polarpunct/codec.hpp"
#include "polarpunct/construction.hpp"
#include "polarpunct/errors.hpp"
#include "polarpunct/sim.hpp"

namespace polarpunct {

namespace {

using nlohmann::json;

// Usage errors surface as exit code 2.
struct UsageError : Error {
  using Error::Error;
};

void check_stage_arg(unsigned n) {
  if (n > kMaxStages) throw RangeError("--n must be at most " + std::to_string(kMaxStages));
}

IndexSet parse_index_list(const std::string& text, std::size_t length, const char* what) {
  std::string body = text;
  if (!body.empty() && body.front() == '[' && body.back() == ']') {
    body = body.substr(1, body.size() - 2);
  }
  IndexSet out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = item.find_last_not_of(" \t");
    item = item.substr(first, last - first + 1);
    if (item.find_first_not_of("0123456789") != std::string::npos) {
      throw FormatError(std::string("bad entry '") + item + "' in " + what);
    }
    const std::size_t v = std::stoull(item);
    if (v >= length) throw RangeError(std::string(what) + " entry " + item + " out of range");
    out.push_back(v);
  }
  const auto count = out.size();
  out = normalized(std::move(out));
  if (out.size() != count) throw FormatError(std::string("duplicate entry in ") + what);
  return out;
}

json count_json(const BigCount& c) {
  if (c <= std::numeric_limits<std::uint64_t>::max()) return c.convert_to<std::uint64_t>();
  return c.str();
}

unsigned resolve_threads(int flag) {
  if (flag > 0) return static_cast<unsigned>(flag);
  if (const char* env = std::getenv("POLARPUNCT_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("POLARPUNCT_THREADS must be a positive integer, got '") + env +
                     "'");
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

struct AnalyzeArgs {
  unsigned n = 0;
  std::string pattern;
  std::string model = "ucm";
  bool verbose = false;
  bool pretty = false;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  check_stage_arg(a.n);
  const ChannelModel model = parse_channel_model(a.model);
  const auto p = PuncturingPattern::parse(a.n, a.pattern);
  const IndexSet forced = forced_frozen_set(p, model);
  const bool reciprocal = is_reciprocal(p, model);
  const char* key = model == ChannelModel::Ucm ? "D" : "E";
  if (a.pretty) {
    auto list = [](const IndexSet& s) {
      std::string t;
      for (std::size_t i : s) t += (t.empty() ? "" : " ") + std::to_string(i);
      return t.empty() ? std::string("-") : t;
    };
    out << "pattern     " << p.to_string() << "\n"
        << "model       " << to_string(model) << "\n"
        << "N / N_p     " << p.length() << " / " << p.transmitted_length() << "\n"
        << "B           " << list(p.zero_set()) << "\n"
        << key << "           " << list(forced) << "\n"
        << "reciprocal  " << (reciprocal ? "yes" : "no") << "\n";
    if (a.verbose) {
      const BitVector z = model == ChannelModel::Ucm ? z_capacities(p) : z_capacities(p.complement());
      out << "channel  Z" << (model == ChannelModel::Dcm ? "(complement)" : "") << "\n";
      for (std::size_t i = 0; i < z.size(); ++i) out << std::setw(7) << i << "  " << int(z[i]) << "\n";
    }
    return 0;
  }
  json j{{"n", a.n},
         {"pattern", p.to_string()},
         {"model", to_string(model)},
         {"N", p.length()},
         {"np", p.transmitted_length()},
         {"B", p.zero_set()},
         {key, forced},
         {"reciprocal", reciprocal}};
  if (a.verbose) {
    const BitVector z = z_capacities(p);
    const BitVector zc = z_capacities(p.complement());
    j["z"] = std::vector<int>(z.begin(), z.end());
    j["z_complement"] = std::vector<int>(zc.begin(), zc.end());
  }
  out << j.dump(2) << "\n";
  return 0;
}

struct CatastrophicArgs {
  unsigned n = 0;
  std::optional<std::size_t> channel;
  bool enumerate = false;
  bool weights = false;
  bool force = false;
  std::string info_set;
  std::string pattern;
  bool all_dead = false;
};

int cmd_catastrophic(const CatastrophicArgs& a, std::ostream& out) {
  check_stage_arg(a.n);
  const std::size_t length = std::size_t{1} << a.n;
  if (!a.info_set.empty() || !a.pattern.empty()) {
    if (a.info_set.empty() || a.pattern.empty()) {
      throw UsageError("--info-set and --pattern must be given together");
    }
    const IndexSet info = parse_index_list(a.info_set, length, "--info-set");
    const auto p = PuncturingPattern::parse(a.n, a.pattern);
    const auto rule = a.all_dead ? CatastrophicRule::AllDead : CatastrophicRule::AnyDead;
    IndexSet dead;
    const BitVector z = z_capacities(p);
    for (std::size_t i : info) {
      if (!z[i]) dead.push_back(i);
    }
    out << json{{"n", a.n},
                {"pattern", p.to_string()},
                {"info_set", info},
                {"rule", a.all_dead ? "all-dead" : "any-dead"},
                {"dead_channels", dead},
                {"catastrophic", is_catastrophic(p, info, rule)}}
               .dump(2)
        << "\n";
    return 0;
  }
  if (!a.channel) throw UsageError("--channel is required unless --info-set/--pattern are given");
  const std::size_t ch = *a.channel;
  if (ch >= length) {
    throw RangeError("--channel " + std::to_string(ch) + " out of range for N = " +
                     std::to_string(length));
  }
  const bool weights = a.weights || !a.enumerate;
  json j{{"channel", ch}, {"n", a.n}, {"min_zeros", min_catastrophic_zeros(ch)}};
  if (weights) {
    const auto poly = weight_distribution(ch, a.n);
    json coeffs = json::array();
    for (const auto& [s, d] : poly.terms()) coeffs.push_back(json::array({s, count_json(d)}));
    j["coeffs"] = coeffs;
    j["total"] = count_json(poly.total());
  }
  if (a.enumerate) {
    const auto set = enumerate_catastrophic(ch, a.n, a.force ? kHardEnumerationCap
                                                             : kDefaultEnumerationCap);
    j["count"] = set.size();
    j["patterns"] = set.pattern_strings();
  }
  out << j.dump(2) << "\n";
  return 0;
}

struct ConstructArgs {
  unsigned n = 0;
  std::size_t k = 0;
  std::string method;
  std::string model = "ucm";
  std::vector<std::size_t> np;
  double design_snr = 0.0;
  std::uint64_t seed = 1;
  std::string info_set;
  std::string out_path;
};

int cmd_construct(const ConstructArgs& a, std::ostream& out, std::ostream& err) {
  check_stage_arg(a.n);
  const std::size_t length = std::size_t{1} << a.n;
  const ChannelModel model = parse_channel_model(a.model);
  const ConstructionMethod method = parse_construction_method(a.method);
  if (method == ConstructionMethod::Greedy && model == ChannelModel::Dcm) {
    throw UsageError("the greedy construction is defined for the ucm model only");
  }
  for (std::size_t np : a.np) {
    if (np > length) {
      throw RangeError("--np " + std::to_string(np) + " exceeds N = " + std::to_string(length));
    }
  }
  if (a.k > length) throw RangeError("--k exceeds N = " + std::to_string(length));

  auto explicit_info = [&] {
    IndexSet info = parse_index_list(a.info_set, length, "--info-set");
    if (info.size() != a.k) {
      throw UsageError("--info-set has " + std::to_string(info.size()) + " entries but --k is " +
                       std::to_string(a.k));
    }
    return info;
  };
  const ReliabilityOrder order = reliability_order(a.n, a.design_snr);
  RcFamily family;
  if (method == ConstructionMethod::Greedy) {
    const IndexSet info = a.info_set.empty() ? info_set(order, a.k) : explicit_info();
    family = greedy_rc_family(info, a.n, a.np, a.seed);
  } else {
    std::vector<std::size_t> zero_counts;
    for (std::size_t np : a.np) zero_counts.push_back(length - np);
    IndexSet info;
    if (!a.info_set.empty()) {
      info = explicit_info();
    } else {
      // Keep A clear of the largest puncture set, which for an unconstrained
      // seed sequence is a prefix of the (weight, index) order.
      const std::size_t most = *std::max_element(zero_counts.begin(), zero_counts.end());
      const SeedSequence free_seq = seed_sequence({}, a.n);
      IndexSet excluded;
      for (std::size_t k = 0; k < most; ++k) {
        const std::size_t i = free_seq.entries[k];
        excluded.push_back(model == ChannelModel::Ucm ? i : length - 1 - i);
      }
      info = info_set(order, a.k, normalized(std::move(excluded)));
    }
    family = reciprocal_rc_family(info, a.n, zero_counts, model);
  }
  family.seed = a.seed;

  json verification = json::array();
  for (const auto& p : family.patterns) {
    const PatternCheck c = check_pattern(p, family.info_set, family.model);
    verification.push_back({{"np", c.transmitted},
                            {"non_catastrophic", c.non_catastrophic},
                            {"reciprocal", c.reciprocal}});
  }
  json report{{"nested", is_nested(family.patterns)}, {"patterns", verification}};
  if (a.out_path.empty()) {
    out << json(family).dump(2) << "\n";
    err << report.dump(2) << "\n";
  } else {
    write_family_file(a.out_path, family);
    out << report.dump(2) << "\n";
  }
  return 0;
}

struct SimulateArgs {
  std::string family;
  std::string snr;
  std::uint64_t max_trials = 10000;
  std::uint64_t target_errors = 100;
  std::size_t list = 8;
  std::uint64_t seed = 1;
  unsigned crc = 8;
  int threads = 0;
  std::string out_path;
  std::string gnuplot;
  bool exact = false;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const std::vector<double> grid = parse_snr_grid(a.snr);
  if (a.list == 0) throw UsageError("--list must be at least 1");
  if (a.crc != 0 && a.crc != 5 && a.crc != 8) throw UsageError("--crc must be 0, 5 or 8");
  const RcFamily family = read_family_file(a.family);
  SweepOptions options;
  options.decoder.list_size = a.list;
  options.decoder.rule = a.exact ? CheckNodeRule::Exact : CheckNodeRule::MinSum;
  options.crc_width = a.crc;
  options.threads = resolve_threads(a.threads);
  const auto rows = sweep(family, grid, StopRule{a.max_trials, a.target_errors}, a.seed, options);
  if (a.out_path.empty()) {
    write_csv(out, rows);
  } else {
    std::ofstream file(a.out_path);
    if (!file) throw Error("cannot write '" + a.out_path + "'");
    write_csv(file, rows);
  }
  if (!a.gnuplot.empty()) {
    std::ofstream file(a.gnuplot);
    if (!file) throw Error("cannot write '" + a.gnuplot + "'");
    write_gnuplot(file, rows);
  }
  return 0;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analysis and construction of punctured polar codes", "polarpunct"};
  app.require_subcommand(1);

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Frozen sets and reciprocity of a pattern");
  analyze->add_option("--n", an.n, "Stage count, N = 2^n")->required();
  analyze->add_option("--pattern", an.pattern, "Bit string (index 0 first) or zeros list")
      ->required();
  analyze->add_option("--model", an.model, "ucm or dcm")->capture_default_str();
  analyze->add_flag("--verbose", an.verbose, "Include per-channel Z values");
  analyze->add_flag("--pretty", an.pretty, "Human-readable table instead of JSON");

  CatastrophicArgs ca;
  auto* catastrophic = app.add_subcommand("catastrophic", "Catastrophic patterns of a channel");
  catastrophic->add_option("--n", ca.n, "Stage count")->required();
  catastrophic->add_option("--channel", ca.channel, "Channel index");
  catastrophic->add_flag("--enumerate", ca.enumerate, "List every catastrophic pattern");
  catastrophic->add_flag("--weights", ca.weights, "Zero-weight distribution (default)");
  catastrophic->add_flag("--force", ca.force, "Raise the enumeration cap to n <= 5");
  catastrophic->add_option("--info-set", ca.info_set, "Test a pattern against this set, e.g. 5,7");
  catastrophic->add_option("--pattern", ca.pattern, "Pattern tested with --info-set");
  catastrophic->add_flag("--all-dead", ca.all_dead, "Require every information channel dead");

  ConstructArgs co;
  auto* construct = app.add_subcommand("construct", "Build a rate-compatible pattern family");
  construct->add_option("--n", co.n, "Stage count")->required();
  construct->add_option("--k", co.k, "Information set size |A| (CRC included)")->required();
  construct->add_option("--method", co.method, "greedy or reciprocal")->required();
  construct->add_option("--model", co.model, "ucm or dcm")->capture_default_str();
  construct->add_option("--np", co.np, "Transmit lengths, e.g. 96,112")
      ->required()
      ->delimiter(',');
  construct->add_option("--design-snr", co.design_snr, "GA design SNR (Es/N0, dB)")
      ->capture_default_str();
  construct->add_option("--seed", co.seed, "RNG seed")->capture_default_str();
  construct->add_option("--info-set", co.info_set, "Explicit information set instead of GA");
  construct->add_option("--out", co.out_path, "Family file to write (default: stdout)");

  SimulateArgs si;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo FER/BER of a family");
  simulate->add_option("--family", si.family, "Family JSON file")->required();
  simulate->add_option("--snr", si.snr, "Eb/N0 grid a:b:step (dB)")->required();
  simulate->add_option("--max-trials", si.max_trials, "Trial cap per point")->capture_default_str();
  simulate->add_option("--target-errors", si.target_errors, "Stop after this many frame errors")
      ->capture_default_str();
  simulate->add_option("--list", si.list, "SCL list size")->capture_default_str();
  simulate->add_option("--seed", si.seed, "Master seed")->capture_default_str();
  simulate->add_option("--crc", si.crc, "CRC width: 0, 5 or 8")->capture_default_str();
  simulate->add_option("--threads", si.threads,
                       "Worker threads (default: POLARPUNCT_THREADS, then all cores)");
  simulate->add_option("--out", si.out_path, "CSV output file (default: stdout)");
  simulate->add_option("--gnuplot", si.gnuplot, "Also write a gnuplot data file");
  simulate->add_flag("--exact", si.exact, "Exact check-node rule instead of min-sum");

  std::vector<const char*> argv{"polarpunct"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(an, out);
    if (catastrophic->parsed()) return cmd_catastrophic(ca, out);
    if (construct->parsed()) return cmd_construct(co, out, err);
    if (simulate->parsed()) return cmd_simulate(si, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace polarpunct
