#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcorr/bigint.hpp"
#include "pcorr/continued_fraction.hpp"
#include "pcorr/fixed_real.hpp"
#include "pcorr/sequences.hpp"

namespace pcorr {

// Environment variable holding the default fractional precision.
inline constexpr const char* kPrecisionEnvVar = "PCORR_PRECISION_BITS";

// How alpha is chosen:
//   golden | sqrt2 | e               named constants
//   main-theorem                     preset [0; 2 x 11, 10^9] (q_11 = 13860)
//   cf:A0;A1,A2,...                  finite continued fraction
//   P/Q or a decimal                 exact rational
//   random                           uniform, drawn from the seeded generator
struct AlphaSpec {
  enum class Kind { kGolden, kSqrt2, kE, kContinuedFraction, kRational, kRandom };

  Kind kind = Kind::kGolden;
  std::string text = "golden";
  BigInt a0 = 0;                 // kContinuedFraction
  std::vector<BigInt> quotients;  // kContinuedFraction
  BigRational value;             // kRational

  static AlphaSpec parse(std::string_view text);
  static AlphaSpec main_theorem_preset();
  bool random() const { return kind == Kind::kRandom; }
};

// Resolved alpha: value, its continued fraction when known, and a label.
struct ResolvedAlpha {
  FixedReal value;
  std::optional<ContinuedFraction> cf;
  std::string descriptor;
};

// Deterministic kinds only; kRandom throws InvalidArgument.
ResolvedAlpha resolve_alpha(const AlphaSpec& spec, unsigned frac_bits);

// Flat key = value text: one pair per line, '#' comments, blank lines
// ignored. Keys are case sensitive; '-' and '_' are interchangeable.
using KeyValues = std::map<std::string, std::string>;
KeyValues parse_key_values(std::string_view text);
KeyValues read_key_values(const std::filesystem::path& path);
std::string normalize_key(std::string_view key);

struct ExperimentConfig {
  std::string experiment;
  SequenceSpec sequence;
  AlphaSpec alpha;
  std::vector<std::string> s_text;  // as given, for echoing
  std::vector<BigRational> s_values;
  std::vector<std::size_t> N_values;
  std::optional<std::uint64_t> seed;
  unsigned trials = 1;
  double c = 0.05;
  double factor = 5.0;
  std::string output_path;
  std::string plot_path;
  unsigned precision_bits = FixedReal::kDefaultFracBits;
  std::uint64_t X = 100'000;
  std::uint64_t n = 0;  // certify
  std::uint64_t n_min = 2;
  std::uint64_t n_max = 10'000;
  std::uint64_t m_report = 0;  // 0: derive from the scale
  double epsilon = 0.25;
  double tolerance = 0.0;
  double max_density = 0.05;
  std::uint64_t min_pairs = 1000;
  std::string psi = "power:1/2,1/2";
  std::string subset = "all";
  unsigned threads = 1;
  bool exhaustive = false;
  bool naive = false;
  std::vector<std::string> intervals;
};

// Every setting as (key, value) text in a fixed order.
std::vector<std::pair<std::string, std::string>> echo_config(const ExperimentConfig& cfg);

// Defaults for a named experiment (or a plain subcommand when name is empty),
// including the precision from PCORR_PRECISION_BITS when set.
ExperimentConfig default_config(std::string_view experiment);

// Applies key/value pairs on top of cfg. Unknown keys and malformed values
// throw ParseError.
void apply_key_values(ExperimentConfig& cfg, const KeyValues& kv);
void apply_key_value(ExperimentConfig& cfg, std::string_view key, std::string_view value);

// Every key apply_key_value accepts.
const std::vector<std::string>& config_keys();

}  // namespace pcorr
