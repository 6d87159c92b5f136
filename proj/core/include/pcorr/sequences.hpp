#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcorr/bigint.hpp"

namespace pcorr {

inline constexpr std::size_t kMaxLacunaryTerms = 10'000;

// Which arithmetic sequence A to take initial segments A_N of.
struct SequenceSpec {
  enum class Kind { kPrimes, kNaturals, kKthPowers, kLacunary, kFile };

  Kind kind = Kind::kPrimes;
  unsigned k = 2;     // kKthPowers exponent, >= 1
  unsigned base = 2;  // kLacunary base, >= 2
  std::filesystem::path path;  // kFile

  static SequenceSpec primes() { return {}; }
  static SequenceSpec naturals() {
    SequenceSpec s;
    s.kind = Kind::kNaturals;
    return s;
  }
  static SequenceSpec kth_powers(unsigned k);
  static SequenceSpec lacunary(unsigned base = 2);
  static SequenceSpec file(std::filesystem::path path);

  // "primes", "naturals", "squares", "powers:3", "lacunary", "lacunary:3",
  // "file:<path>". Throws ParseError.
  static SequenceSpec parse(std::string_view text);
  std::string name() const;
};

// The first N terms, strictly increasing positive integers.
// Throws InvalidArgument for N = 0 or bad parameters, BudgetExceeded for
// lacunary N > kMaxLacunaryTerms and ParseError for bad files.
std::vector<BigInt> generate(const SequenceSpec& spec, std::size_t n);

// Same terms as generate() when they all fit in 64 bits.
std::optional<std::vector<std::uint64_t>> generate_u64(const SequenceSpec& spec, std::size_t n);

// One integer per line, '#' starts a comment, blank lines ignored. Values must
// be positive and strictly increasing; errors carry the line number.
std::vector<BigInt> read_sequence_file(const std::filesystem::path& path);
std::vector<BigInt> parse_sequence_text(std::string_view text);

// p_N / (N ln N), N >= 2.
double nth_prime_ratio(std::size_t n);

// The first n primes (n >= 1).
std::vector<std::uint64_t> first_primes(std::size_t n);

}  // namespace pcorr
