#include "pcorr/sequences.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "pcorr/errors.hpp"
#include "pcorr/primes.hpp"
#include "support.hpp"

namespace pcorr {
namespace {

std::vector<BigInt> ints(std::initializer_list<long long> xs) { return {xs.begin(), xs.end()}; }

TEST(Generate, Examples) {
  EXPECT_EQ(generate(SequenceSpec::primes(), 5), ints({2, 3, 5, 7, 11}));
  EXPECT_EQ(generate(SequenceSpec::kth_powers(2), 4), ints({1, 4, 9, 16}));
  EXPECT_EQ(generate(SequenceSpec::naturals(), 3), ints({1, 2, 3}));
  EXPECT_EQ(generate(SequenceSpec::lacunary(3), 4), ints({1, 3, 9, 27}));
  EXPECT_EQ(generate(SequenceSpec::primes(), 10'000).back(), 104'729);
}

TEST(Generate, Errors) {
  EXPECT_THROW(generate(SequenceSpec::primes(), 0), InvalidArgument);
  EXPECT_THROW(generate(SequenceSpec::lacunary(), kMaxLacunaryTerms + 1), BudgetExceeded);
  EXPECT_THROW(SequenceSpec::kth_powers(0), InvalidArgument);
  EXPECT_THROW(SequenceSpec::lacunary(1), InvalidArgument);
}

TEST(Generate, IncreasingAndPrimeProperty) {
  testing::Gen g(51);
  const SequenceSpec specs[] = {SequenceSpec::primes(), SequenceSpec::naturals(),
                                SequenceSpec::kth_powers(2), SequenceSpec::kth_powers(5),
                                SequenceSpec::lacunary(2), SequenceSpec::lacunary(7)};
  for (int i = 0; i < testing::kPropertyCases; ++i) {
    const SequenceSpec& spec = specs[i % 6];
    const std::size_t n = static_cast<std::size_t>(g.range(1, 300));
    const auto terms = generate(spec, n);
    ASSERT_EQ(terms.size(), n);
    EXPECT_GT(terms.front(), 0);
    for (std::size_t k = 1; k < n; ++k) ASSERT_LT(terms[k - 1], terms[k]);
    if (spec.kind == SequenceSpec::Kind::kPrimes) {
      for (const BigInt& p : terms) ASSERT_TRUE(testing::trial_division_prime(static_cast<std::uint64_t>(p)));
    }
    if (auto small = generate_u64(spec, n)) {
      for (std::size_t k = 0; k < n; ++k) ASSERT_EQ(BigInt((*small)[k]), terms[k]);
    }
  }
}

TEST(Generate, PrimePrefixConsistency) {
  const auto primes = generate(SequenceSpec::primes(), 5000);
  const PrimeTable t = primes_up_to(30'000);
  std::size_t k = 0;
  while (k < primes.size() && primes[k] <= 30'000) ++k;
  ASSERT_EQ(k, t.count());
  for (std::size_t i = 0; i < k; ++i) EXPECT_EQ(primes[i], t.primes()[i]);
}

TEST(SequenceSpec, ParseAndName) {
  EXPECT_EQ(SequenceSpec::parse("squares").name(), "squares");
  EXPECT_EQ(SequenceSpec::parse("powers:3").k, 3u);
  EXPECT_EQ(SequenceSpec::parse("lacunary").base, 2u);
  EXPECT_EQ(SequenceSpec::parse("lacunary:5").base, 5u);
  EXPECT_EQ(SequenceSpec::parse("naturals").kind, SequenceSpec::Kind::kNaturals);
  EXPECT_THROW(SequenceSpec::parse("evens"), ParseError);
  EXPECT_THROW(SequenceSpec::parse("powers:x"), ParseError);
}

TEST(SequenceFile, ParsesWithComments) {
  EXPECT_EQ(parse_sequence_text("# header\n3\n\n 5 # five\n100000000000000000000000\n"),
            (std::vector<BigInt>{3, 5, BigInt("100000000000000000000000")}));
}

TEST(SequenceFile, ErrorsCarryLineNumbers) {
  try {
    parse_sequence_text("1\n2\n2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    parse_sequence_text("1\nx\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_sequence_text("0\n"), ParseError);
  EXPECT_THROW(parse_sequence_text("-4\n"), ParseError);
  EXPECT_THROW(read_sequence_file("/nonexistent/file"), ParseError);
}

TEST(SequenceFile, GenerateFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "pcorr_seq_test.txt";
  {
    std::ofstream f(path);
    f << "2\n4\n8\n";
  }
  EXPECT_EQ(generate(SequenceSpec::file(path), 2), ints({2, 4}));
  EXPECT_THROW(generate(SequenceSpec::file(path), 4), InvalidArgument);
  std::filesystem::remove(path);
}

TEST(NthPrimeRatio, Examples) {
  EXPECT_NEAR(nth_prime_ratio(2), 3 / (2 * std::log(2.0)), 1e-12);
  EXPECT_NEAR(nth_prime_ratio(10'000), 1.1371, 1e-4);
  const double r = nth_prime_ratio(1'000'000);
  EXPECT_GT(r, 1.0);
  EXPECT_LT(r, 1.2);
  EXPECT_THROW(nth_prime_ratio(1), InvalidArgument);
}

}  // namespace
}  // namespace pcorr
