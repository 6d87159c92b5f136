#include "pcorr/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pcorr/errors.hpp"
#include "pcorr/rational.hpp"

namespace pcorr {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    auto pos = s.find(sep);
    out.push_back(trim(s.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

std::uint64_t parse_count(std::string_view key, std::string_view text) {
  BigRational v;
  try {
    v = parse_rational(text);
  } catch (const ParseError&) {
    throw ParseError(std::string(key) + ": expected a non-negative integer, got '" +
                     std::string(text) + "'");
  }
  if (v < 0 || boost::multiprecision::denominator(v) != 1 ||
      boost::multiprecision::numerator(v) > BigInt(UINT64_MAX)) {
    throw ParseError(std::string(key) + ": expected a non-negative integer, got '" +
                     std::string(text) + "'");
  }
  return static_cast<std::uint64_t>(boost::multiprecision::numerator(v));
}

double parse_real(std::string_view key, std::string_view text) {
  try {
    return to_double(parse_rational(text));
  } catch (const ParseError&) {
    throw ParseError(std::string(key) + ": expected a number, got '" + std::string(text) + "'");
  }
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  throw ParseError(std::string(key) + ": expected true/false, got '" + std::string(text) + "'");
}

std::string join(const std::vector<std::string>& parts, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string fmt(double x) { return format_sig(x); }

}  // namespace

AlphaSpec AlphaSpec::main_theorem_preset() {
  AlphaSpec a;
  a.kind = Kind::kContinuedFraction;
  a.text = "main-theorem";
  a.a0 = 0;
  a.quotients.assign(11, BigInt(2));
  a.quotients.emplace_back(1'000'000'000);
  return a;
}

AlphaSpec AlphaSpec::parse(std::string_view text) {
  text = trim(text);
  AlphaSpec a;
  a.text = std::string(text);
  if (text == "golden") {
    a.kind = Kind::kGolden;
  } else if (text == "sqrt2") {
    a.kind = Kind::kSqrt2;
  } else if (text == "e") {
    a.kind = Kind::kE;
  } else if (text == "random") {
    a.kind = Kind::kRandom;
  } else if (text == "main-theorem") {
    a = main_theorem_preset();
  } else if (text.substr(0, 3) == "cf:") {
    std::string_view body = trim(text.substr(3));
    if (!body.empty() && body.front() == '[' && body.back() == ']') {
      body = trim(body.substr(1, body.size() - 2));
    }
    auto semi = body.find(';');
    if (semi == std::string_view::npos) throw ParseError("cf alpha must look like cf:A0;A1,A2,...");
    a.kind = Kind::kContinuedFraction;
    a.a0 = parse_count("alpha a0", trim(body.substr(0, semi)));
    for (std::string_view q : split(body.substr(semi + 1), ',')) {
      if (q.empty()) continue;
      BigRational v = parse_rational(q);
      if (v < 1 || boost::multiprecision::denominator(v) != 1) {
        throw ParseError("partial quotients must be integers >= 1, got '" + std::string(q) + "'");
      }
      a.quotients.push_back(boost::multiprecision::numerator(v));
    }
    if (a.quotients.empty()) throw ParseError("cf alpha needs at least one partial quotient");
  } else {
    a.kind = Kind::kRational;
    a.value = parse_rational(text);
    if (a.value < 0) throw ParseError("alpha must be non-negative");
  }
  return a;
}

ResolvedAlpha resolve_alpha(const AlphaSpec& spec, unsigned frac_bits) {
  ResolvedAlpha r{FixedReal(frac_bits), std::nullopt, spec.text};
  switch (spec.kind) {
    case AlphaSpec::Kind::kGolden:
      r.value = FixedReal::golden_ratio(frac_bits);
      break;
    case AlphaSpec::Kind::kSqrt2:
      r.value = FixedReal::sqrt2(frac_bits);
      break;
    case AlphaSpec::Kind::kE:
      r.value = FixedReal::e(frac_bits);
      break;
    case AlphaSpec::Kind::kContinuedFraction: {
      AlphaWithCf a = alpha_from_cf(spec.a0, spec.quotients, frac_bits);
      r.value = std::move(a.alpha);
      r.cf = std::move(a.cf);
      if (spec.text.substr(0, 3) == "cf:") r.descriptor = "cf:" + r.cf->to_string();
      return r;
    }
    case AlphaSpec::Kind::kRational:
      r.value = FixedReal::from_rational(spec.value, frac_bits);
      break;
    case AlphaSpec::Kind::kRandom:
      throw InvalidArgument("random alpha must be drawn from a seeded generator");
  }
  r.cf = cf_expand(r.value, 4096);
  return r;
}

std::string normalize_key(std::string_view key) {
  std::string out(trim(key));
  for (char& ch : out) {
    if (ch == '-') ch = '_';
  }
  return out;
}

KeyValues parse_key_values(std::string_view text) {
  KeyValues kv;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key = value", line_no);
    std::string key = normalize_key(line.substr(0, eq));
    if (key.empty()) throw ParseError("empty key", line_no);
    if (kv.count(key)) throw ParseError("duplicate key '" + key + "'", line_no);
    kv[key] = std::string(trim(line.substr(eq + 1)));
  }
  return kv;
}

KeyValues read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_key_values(buf.str());
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "experiment", "sequence", "alpha",     "s",         "N",         "seed",
      "trials",     "c",        "factor",    "output",    "plot_data", "precision_bits",
      "X",          "n",        "n_min",     "n_max",     "m_report",  "epsilon",
      "tolerance",  "max_density", "min_pairs", "psi",    "subset",    "threads",
      "exhaustive", "naive",    "intervals"};
  return keys;
}

ExperimentConfig default_config(std::string_view experiment) {
  ExperimentConfig cfg;
  cfg.experiment = std::string(experiment);
  if (const char* env = std::getenv(kPrecisionEnvVar); env && *env) {
    apply_key_value(cfg, "precision_bits", env);
  }
  auto set_s = [&](std::initializer_list<const char*> values) {
    cfg.s_text.clear();
    cfg.s_values.clear();
    for (const char* v : values) {
      cfg.s_text.emplace_back(v);
      cfg.s_values.push_back(parse_rational(v));
    }
  };
  set_s({"1"});
  cfg.N_values = {1000};

  if (experiment == "poisson-baseline") {
    set_s({"0.5", "1", "2"});
    cfg.N_values = {100'000};
    cfg.trials = 10;
    cfg.tolerance = 0.03;
    cfg.alpha = AlphaSpec::parse("random");
  } else if (experiment == "poissonian-sequence") {
    cfg.sequence = SequenceSpec::kth_powers(2);
    cfg.alpha = AlphaSpec::parse("random");
    cfg.N_values = {10'000};
    cfg.trials = 5;
    cfg.tolerance = 0.15;
  } else if (experiment == "naturals-failure") {
    cfg.sequence = SequenceSpec::naturals();
    cfg.alpha = AlphaSpec::parse("golden");
    // Fibonacci numbers and a few round values up to 10^5.
    cfg.N_values = {89, 100, 144, 233, 377, 610, 987, 1000, 1597, 2584, 4181, 6765,
                    10'000, 10'946, 17'711, 28'657, 46'368, 50'000, 75'025, 100'000};
    cfg.tolerance = 0.5;
  } else if (experiment == "main-theorem") {
    cfg.sequence = SequenceSpec::primes();
    cfg.alpha = AlphaSpec::main_theorem_preset();
    set_s({"0.01"});
    cfg.n_min = 1000;
    cfg.n_max = 1'000'000;
  } else if (experiment == "goldbach-scan") {
    cfg.X = 100'000;
    cfg.n_max = 10'000;
    cfg.tolerance = 0.10;
  } else if (experiment == "energy-scaling") {
    cfg.sequence = SequenceSpec::primes();
    cfg.N_values = {2000, 8000, 32'000};
    cfg.tolerance = 0.25;
  } else if (experiment == "scales" || experiment == "certify") {
    cfg.alpha = AlphaSpec::main_theorem_preset();
    set_s({"0.01"});
    cfg.n_max = 1'000'000;
    if (experiment == "certify") cfg.n = 13'860;
  } else if (experiment == "harman-count") {
    cfg.alpha = AlphaSpec::parse("random");
    cfg.N_values = {100'000};
    cfg.trials = 100;
    cfg.tolerance = 0.10;
  }
  return cfg;
}

void apply_key_value(ExperimentConfig& cfg, std::string_view raw_key, std::string_view raw_value) {
  const std::string key = normalize_key(raw_key);
  const std::string_view value = trim(raw_value);
  if (key == "experiment") {
    cfg.experiment = std::string(value);
  } else if (key == "sequence") {
    cfg.sequence = SequenceSpec::parse(value);
  } else if (key == "alpha") {
    cfg.alpha = AlphaSpec::parse(value);
  } else if (key == "s") {
    cfg.s_text.clear();
    cfg.s_values.clear();
    for (std::string_view part : split(value, ',')) {
      BigRational s = parse_rational(part);
      if (s < 0) throw ParseError("s values must be non-negative");
      cfg.s_text.emplace_back(part);
      cfg.s_values.push_back(std::move(s));
    }
  } else if (key == "N") {
    cfg.N_values.clear();
    for (std::string_view part : split(value, ',')) {
      cfg.N_values.push_back(static_cast<std::size_t>(parse_count(key, part)));
    }
  } else if (key == "seed") {
    cfg.seed = parse_count(key, value);
  } else if (key == "trials") {
    cfg.trials = static_cast<unsigned>(parse_count(key, value));
    if (cfg.trials == 0) throw ParseError("trials must be >= 1");
  } else if (key == "c") {
    cfg.c = parse_real(key, value);
  } else if (key == "factor") {
    cfg.factor = parse_real(key, value);
  } else if (key == "output") {
    cfg.output_path = std::string(value);
  } else if (key == "plot_data") {
    cfg.plot_path = std::string(value);
  } else if (key == "precision_bits") {
    const std::uint64_t bits = parse_count(key, value);
    if (bits < 64 || bits > 65536) throw ParseError("precision_bits must be in [64, 65536]");
    cfg.precision_bits = static_cast<unsigned>(bits);
  } else if (key == "X") {
    cfg.X = parse_count(key, value);
  } else if (key == "n") {
    cfg.n = parse_count(key, value);
  } else if (key == "n_min") {
    cfg.n_min = parse_count(key, value);
  } else if (key == "n_max") {
    cfg.n_max = parse_count(key, value);
  } else if (key == "m_report") {
    cfg.m_report = parse_count(key, value);
  } else if (key == "epsilon") {
    cfg.epsilon = parse_real(key, value);
  } else if (key == "tolerance") {
    cfg.tolerance = parse_real(key, value);
  } else if (key == "max_density") {
    cfg.max_density = parse_real(key, value);
  } else if (key == "min_pairs") {
    cfg.min_pairs = parse_count(key, value);
  } else if (key == "psi") {
    cfg.psi = std::string(value);
  } else if (key == "subset") {
    if (value != "all" && value != "odd" && value != "even" && value != "primes") {
      throw ParseError("subset must be all, odd, even or primes");
    }
    cfg.subset = std::string(value);
  } else if (key == "threads") {
    cfg.threads = static_cast<unsigned>(parse_count(key, value));
  } else if (key == "exhaustive") {
    cfg.exhaustive = parse_bool(key, value);
  } else if (key == "naive") {
    cfg.naive = parse_bool(key, value);
  } else if (key == "intervals") {
    cfg.intervals.clear();
    for (std::string_view part : split(value, ',')) cfg.intervals.emplace_back(part);
  } else {
    throw ParseError("unknown config key '" + key + "'");
  }
}

void apply_key_values(ExperimentConfig& cfg, const KeyValues& kv) {
  for (const auto& [k, v] : kv) apply_key_value(cfg, k, v);
}

std::vector<std::pair<std::string, std::string>> echo_config(const ExperimentConfig& cfg) {
  std::vector<std::string> n_text;
  for (std::size_t n : cfg.N_values) n_text.push_back(std::to_string(n));
  return {
      {"experiment", cfg.experiment},
      {"sequence", cfg.sequence.name()},
      {"alpha", cfg.alpha.text},
      {"s", join(cfg.s_text)},
      {"N", join(n_text)},
      {"seed", cfg.seed ? std::to_string(*cfg.seed) : ""},
      {"trials", std::to_string(cfg.trials)},
      {"c", fmt(cfg.c)},
      {"factor", fmt(cfg.factor)},
      {"precision_bits", std::to_string(cfg.precision_bits)},
      {"X", std::to_string(cfg.X)},
      {"n", std::to_string(cfg.n)},
      {"n_min", std::to_string(cfg.n_min)},
      {"n_max", std::to_string(cfg.n_max)},
      {"m_report", std::to_string(cfg.m_report)},
      {"epsilon", fmt(cfg.epsilon)},
      {"tolerance", fmt(cfg.tolerance)},
      {"max_density", fmt(cfg.max_density)},
      {"min_pairs", std::to_string(cfg.min_pairs)},
      {"psi", cfg.psi},
      {"subset", cfg.subset},
  };
}

}  // namespace pcorr
