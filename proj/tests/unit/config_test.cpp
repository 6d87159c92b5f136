#include "pcorr/config.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <set>

#include "pcorr/errors.hpp"
#include "pcorr/rational.hpp"
#include "support.hpp"

namespace pcorr {
namespace {

std::size_t error_line(std::string_view text) {
  try {
    parse_key_values(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

TEST(KeyValues, ParsesCommentsAndBlanks) {
  const KeyValues kv = parse_key_values(
      "# header\n\nexperiment = goldbach-scan\n  X=5000   # inline\nn-max = 100\n");
  ASSERT_EQ(kv.size(), 3u);
  EXPECT_EQ(kv.at("experiment"), "goldbach-scan");
  EXPECT_EQ(kv.at("X"), "5000");
  EXPECT_EQ(kv.at("n_max"), "100");
}

TEST(KeyValues, ReportsLineNumbers) {
  EXPECT_EQ(error_line("a = 1\n\nno equals sign\n"), 3u);
  EXPECT_EQ(error_line("= 1\n"), 1u);
  EXPECT_EQ(error_line("s = 1\nX = 2\nn-max = 1\nn_max = 2\n"), 4u);
}

TEST(KeyValues, ReadsFile) {
  const auto path = std::filesystem::temp_directory_path() / "pcorr_config_test.cfg";
  {
    std::ofstream out(path);
    out << "seed = 5\ntrials = 2\n";
  }
  const KeyValues kv = read_key_values(path);
  EXPECT_EQ(kv.at("seed"), "5");
  std::filesystem::remove(path);
  EXPECT_THROW(read_key_values(path), ParseError);
}

TEST(AlphaSpec, Parses) {
  EXPECT_EQ(AlphaSpec::parse("golden").kind, AlphaSpec::Kind::kGolden);
  EXPECT_EQ(AlphaSpec::parse("sqrt2").kind, AlphaSpec::Kind::kSqrt2);
  EXPECT_EQ(AlphaSpec::parse("e").kind, AlphaSpec::Kind::kE);
  EXPECT_TRUE(AlphaSpec::parse("random").random());
  const AlphaSpec cf = AlphaSpec::parse("cf:[0; 1, 2,3]");
  EXPECT_EQ(cf.kind, AlphaSpec::Kind::kContinuedFraction);
  EXPECT_EQ(cf.quotients, (std::vector<BigInt>{1, 2, 3}));
  const AlphaSpec r = AlphaSpec::parse("3/7");
  EXPECT_EQ(r.kind, AlphaSpec::Kind::kRational);
  EXPECT_EQ(r.value, BigRational(3, 7));
  EXPECT_EQ(AlphaSpec::parse("0.25").value, BigRational(1, 4));
  for (const char* bad : {"cf:0", "cf:0;", "cf:0;1,0", "cf:0;1.5", "-1/2", "pi", ""}) {
    EXPECT_THROW(AlphaSpec::parse(bad), ParseError) << bad;
  }
}

TEST(AlphaSpec, PresetResolves) {
  const ResolvedAlpha a = resolve_alpha(AlphaSpec::parse("main-theorem"), 256);
  ASSERT_TRUE(a.cf.has_value());
  ASSERT_EQ(a.cf->quotients().size(), 12u);
  EXPECT_EQ(a.cf->convergents()[11].q, 13'860);
  EXPECT_EQ(a.cf->convergents()[12].q, BigInt(1'000'000'000) * 13'860 + 5'741);
  EXPECT_EQ(a.descriptor, "main-theorem");
}

TEST(AlphaSpec, ResolveOthers) {
  const ResolvedAlpha cf = resolve_alpha(AlphaSpec::parse("cf:0;2"), 64);
  EXPECT_EQ(cf.descriptor, "cf:[0; 2]");
  EXPECT_EQ(cf.value.to_rational(), BigRational(1, 2));
  const ResolvedAlpha g = resolve_alpha(AlphaSpec::parse("golden"), 192);
  ASSERT_TRUE(g.cf.has_value());
  EXPECT_GT(g.cf->quotients().size(), 50u);
  for (const BigInt& q : g.cf->quotients()) EXPECT_EQ(q, 1);
  const ResolvedAlpha r = resolve_alpha(AlphaSpec::parse("3/8"), 64);
  EXPECT_EQ(r.value.to_rational(), BigRational(3, 8));
  EXPECT_THROW(resolve_alpha(AlphaSpec::parse("random"), 64), InvalidArgument);
}

TEST(Config, DefaultsPerExperiment) {
  ::unsetenv(kPrecisionEnvVar);
  const ExperimentConfig p = default_config("poisson-baseline");
  EXPECT_EQ(p.s_values, (std::vector<BigRational>{BigRational(1, 2), 1, 2}));
  EXPECT_EQ(p.N_values, (std::vector<std::size_t>{100'000}));
  EXPECT_TRUE(p.alpha.random());
  EXPECT_FALSE(p.seed.has_value());
  const ExperimentConfig m = default_config("main-theorem");
  EXPECT_EQ(m.s_values, (std::vector<BigRational>{BigRational(1, 100)}));
  EXPECT_EQ(m.alpha.text, "main-theorem");
  EXPECT_EQ(m.precision_bits, FixedReal::kDefaultFracBits);
  EXPECT_EQ(default_config("certify").n, 13'860u);
}

TEST(Config, PrecisionFromEnvironment) {
  ::setenv(kPrecisionEnvVar, "320", 1);
  EXPECT_EQ(default_config("").precision_bits, 320u);
  ::setenv(kPrecisionEnvVar, "12", 1);
  EXPECT_THROW(default_config(""), ParseError);
  ::unsetenv(kPrecisionEnvVar);
}

TEST(Config, AppliesEveryKey) {
  ExperimentConfig cfg = default_config("");
  const KeyValues kv = parse_key_values(
      "experiment = energy-scaling\nsequence = squares\nalpha = 1/3\ns = 0.5, 2\nN = 10,20\n"
      "seed = 9\ntrials = 4\nc = 0.1\nfactor = 3\noutput = out.csv\nplot-data = plot.csv\n"
      "precision_bits = 256\nX = 777\nn = 12\nn_min = 3\nn_max = 99\nm_report = 5\n"
      "epsilon = 0.5\ntolerance = 0.2\nmax_density = 0.01\nmin_pairs = 7\npsi = constant:1/4\n"
      "subset = odd\nthreads = 3\nexhaustive = true\nnaive = yes\nintervals = 0:1/2,1/2:1\n");
  EXPECT_EQ(kv.size(), config_keys().size());
  apply_key_values(cfg, kv);
  EXPECT_EQ(cfg.experiment, "energy-scaling");
  EXPECT_EQ(cfg.alpha.value, BigRational(1, 3));
  EXPECT_EQ(cfg.s_text, (std::vector<std::string>{"0.5", "2"}));
  EXPECT_EQ(cfg.N_values, (std::vector<std::size_t>{10, 20}));
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.trials, 4u);
  EXPECT_EQ(cfg.c, 0.1);
  EXPECT_EQ(cfg.factor, 3.0);
  EXPECT_EQ(cfg.output_path, "out.csv");
  EXPECT_EQ(cfg.plot_path, "plot.csv");
  EXPECT_EQ(cfg.precision_bits, 256u);
  EXPECT_EQ(cfg.X, 777u);
  EXPECT_EQ(cfg.n, 12u);
  EXPECT_EQ(cfg.n_min, 3u);
  EXPECT_EQ(cfg.n_max, 99u);
  EXPECT_EQ(cfg.m_report, 5u);
  EXPECT_EQ(cfg.epsilon, 0.5);
  EXPECT_EQ(cfg.tolerance, 0.2);
  EXPECT_EQ(cfg.max_density, 0.01);
  EXPECT_EQ(cfg.min_pairs, 7u);
  EXPECT_EQ(cfg.psi, "constant:1/4");
  EXPECT_EQ(cfg.subset, "odd");
  EXPECT_EQ(cfg.threads, 3u);
  EXPECT_TRUE(cfg.exhaustive);
  EXPECT_TRUE(cfg.naive);
  EXPECT_EQ(cfg.intervals.size(), 2u);
  std::set<std::string> keys(config_keys().begin(), config_keys().end());
  for (const auto& [k, v] : kv) EXPECT_TRUE(keys.count(k)) << k;
}

TEST(Config, RejectsBadValues) {
  ExperimentConfig cfg = default_config("");
  const std::vector<std::pair<const char*, const char*>> bad = {
      {"bogus", "1"},         {"seed", "-1"},      {"seed", "1.5"},
      {"trials", "0"},        {"N", "10,x"},       {"s", "-1"},
      {"precision_bits", "63"}, {"precision_bits", "70000"}, {"subset", "squares"},
      {"exhaustive", "maybe"}, {"c", "abc"},     {"alpha", "cf:1;0"},
      {"sequence", "cubes?"}, {"X", "1e"}};
  for (const auto& [k, v] : bad) EXPECT_THROW(apply_key_value(cfg, k, v), ParseError) << k << "=" << v;
}

TEST(Config, EchoIsOrderedAndComplete) {
  ExperimentConfig cfg = default_config("goldbach-scan");
  apply_key_value(cfg, "seed", "3");
  const auto echo = echo_config(cfg);
  EXPECT_EQ(echo.front().first, "experiment");
  EXPECT_EQ(echo.front().second, "goldbach-scan");
  bool saw_seed = false;
  for (const auto& [k, v] : echo) {
    if (k == "seed") {
      saw_seed = true;
      EXPECT_EQ(v, "3");
    }
    if (k == "X") EXPECT_EQ(v, "100000");
  }
  EXPECT_TRUE(saw_seed);
  EXPECT_EQ(echo_config(cfg), echo);
}

TEST(Config, SValuesRoundTripProperty) {
  testing::Gen g(301);
  for (int i = 0; i < testing::kPropertyCases; ++i) {
    std::vector<BigRational> expect;
    std::string text;
    const int k = static_cast<int>(g.range(1, 5));
    for (int j = 0; j < k; ++j) {
      const BigRational r = g.small_rational(1000, 1000);
      expect.push_back(r);
      if (j) text += g.coin() ? "," : " , ";
      text += to_string(r);
    }
    ExperimentConfig cfg = default_config("");
    apply_key_value(cfg, "s", text);
    ASSERT_EQ(cfg.s_values, expect) << text;
  }
}

}  // namespace
}  // namespace pcorr
