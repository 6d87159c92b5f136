#include "pcorr/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "pcorr/circle.hpp"
#include "pcorr/diophantine.hpp"
#include "pcorr/energy.hpp"
#include "pcorr/equidistribution.hpp"
#include "pcorr/errors.hpp"
#include "pcorr/goldbach.hpp"
#include "pcorr/numeric.hpp"
#include "pcorr/pair_correlation.hpp"
#include "pcorr/primes.hpp"
#include "pcorr/rational.hpp"
#include "pcorr/rng.hpp"
#include "pcorr/sequences.hpp"

namespace pcorr {

namespace {

inline constexpr std::size_t kMaxPoissonN = 1'000'000;
inline constexpr std::size_t kMaxPairCorrN = 1'000'000;
inline constexpr std::size_t kMaxNaiveN = 20'000;
inline constexpr double kNaturalsEnergyBand = 0.02;

class StageTimer {
 public:
  StageTimer(ExperimentReport& report, std::string name)
      : report_(report), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}
  ~StageTimer() {
    const std::chrono::duration<double> d = std::chrono::steady_clock::now() - start_;
    report_.stage_seconds.emplace_back(name_, d.count());
  }
  StageTimer(const StageTimer&) = delete;
  StageTimer& operator=(const StageTimer&) = delete;

 private:
  ExperimentReport& report_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

ExperimentReport start_report(const ExperimentConfig& cfg, std::string name) {
  ExperimentReport r;
  r.experiment = std::move(name);
  r.config = echo_config(cfg);
  return r;
}

void require_seed(const ExperimentConfig& cfg, std::string_view what) {
  if (!cfg.seed) throw InvalidArgument(std::string(what) + " draws random numbers: set seed");
}

void require_s(const ExperimentConfig& cfg) {
  if (cfg.s_values.empty()) throw InvalidArgument("at least one s value is required");
}

void require_n(const ExperimentConfig& cfg, std::size_t lo, std::size_t hi) {
  if (cfg.N_values.empty()) throw InvalidArgument("at least one N value is required");
  for (std::size_t n : cfg.N_values) {
    if (n < lo) throw InvalidArgument("N = " + std::to_string(n) + " is below " + std::to_string(lo));
    if (n > hi) {
      throw BudgetExceeded("N = " + std::to_string(n) + " exceeds the budget " + std::to_string(hi));
    }
  }
}

void add_verdict(ExperimentReport& r, std::string name, bool passed, std::string detail) {
  r.verdicts.push_back({std::move(name), passed, std::move(detail)});
}

std::string s_cell(const BigRational& s) { return to_string(s); }

struct Terms {
  std::vector<BigInt> big;
  std::optional<std::vector<std::uint64_t>> small;
  unsigned bitlen = 1;
};

Terms make_terms(const SequenceSpec& spec, std::size_t n) {
  Terms t;
  t.big = generate(spec, n);
  const BigInt& last = t.big.back();
  t.bitlen = static_cast<unsigned>(boost::multiprecision::msb(last)) + 1;
  if (t.bitlen <= 64) {
    t.small.emplace();
    t.small->reserve(n);
    for (const BigInt& x : t.big) t.small->push_back(static_cast<std::uint64_t>(x));
  }
  return t;
}

PairCorrResult pair_corr_prefix(const Terms& t, std::size_t n, const FixedReal& alpha,
                                const BigRational& s, const std::string& desc, unsigned threads) {
  PairCorrOptions opt{threads};
  if (t.small) {
    return pair_correlation_fast(std::span<const std::uint64_t>(*t.small).first(n), alpha, s,
                                 desc, opt);
  }
  return pair_correlation_fast(std::span<const BigInt>(t.big).first(n), alpha, s, desc, opt);
}

struct AlphaDraw {
  FixedReal value;
  std::string descriptor;
  std::optional<ContinuedFraction> cf;
};

// Precision grows with the size of the terms so that {alpha x} keeps
// precision_bits significant bits after the integer part of alpha x is removed.
unsigned working_bits(const ExperimentConfig& cfg, unsigned term_bits) {
  return cfg.precision_bits + term_bits;
}

AlphaDraw draw_alpha(const ExperimentConfig& cfg, unsigned bits, std::uint64_t trial) {
  if (cfg.alpha.random()) {
    const std::uint64_t seed = trial_seed(*cfg.seed, trial);
    Xoshiro256 rng(seed);
    return {random_unit(rng, bits), "random(seed=" + std::to_string(seed) + ")", std::nullopt};
  }
  ResolvedAlpha r = resolve_alpha(cfg.alpha, bits);
  return {std::move(r.value), std::move(r.descriptor), std::move(r.cf)};
}

unsigned alpha_trials(const ExperimentConfig& cfg, ExperimentReport& r) {
  if (cfg.alpha.random()) {
    require_seed(cfg, "random alpha");
    r.rng = std::string(kRngName);
    return cfg.trials;
  }
  if (cfg.trials > 1) r.notes.push_back("alpha is deterministic: one trial run");
  return 1;
}

double mean_of(const std::vector<double>& xs) {
  CompensatedSum sum;
  for (double x : xs) sum += x;
  return xs.empty() ? std::nan("") : sum.value() / static_cast<double>(xs.size());
}

bool within_rel(double value, double target, double tol) {
  if (target == 0) return value == 0;
  return std::fabs(value - target) <= tol * std::fabs(target);
}

std::string rel_detail(double value, double target, double tol) {
  return "value " + format_sig(value) + ", target " + format_sig(target) + ", tolerance " +
         format_sig(tol) + " relative";
}

bool is_fibonacci(std::uint64_t n) {
  std::uint64_t a = 1, b = 2;
  if (n == 1) return true;
  while (b < n) {
    const std::uint64_t c = a + b;
    a = b;
    b = c;
  }
  return b == n;
}

std::vector<Interval01> parse_intervals(const std::vector<std::string>& texts, unsigned bits) {
  std::vector<std::string> src = texts;
  if (src.empty()) src = {"0:1/2", "1/2:1", "0:1/10"};
  std::vector<Interval01> out;
  for (const std::string& t : src) {
    const auto colon = t.find(':');
    if (colon == std::string::npos) throw ParseError("interval must look like LEFT:RIGHT, got '" + t + "'");
    out.emplace_back(FixedReal::parse(t.substr(0, colon), bits),
                     FixedReal::parse(t.substr(colon + 1), bits));
  }
  return out;
}

std::string interval_name(const Interval01& iv) {
  return "[" + format_sig(iv.left().to_double()) + "," +
         (iv.wraps() && iv.right().is_zero() ? std::string("1") : format_sig(iv.right().to_double())) +
         ")";
}

}  // namespace

bool ExperimentReport::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

std::vector<std::pair<std::string, std::string>> ExperimentReport::metadata() const {
  std::vector<std::pair<std::string, std::string>> meta;
  meta.emplace_back("experiment", experiment);
  if (!rng.empty()) meta.emplace_back("rng", rng);
  for (const auto& [k, v] : config) meta.emplace_back("config." + k, v);
  for (const std::string& note : notes) meta.emplace_back("note", note);
  for (const Verdict& v : verdicts) {
    meta.emplace_back("verdict." + v.name, std::string(v.passed ? "PASS" : "FAIL") + ": " + v.detail);
  }
  if (!verdicts.empty()) meta.emplace_back("result", passed() ? "PASS" : "FAIL");
  return meta;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "poisson-baseline", "poissonian-sequence", "naturals-failure", "main-theorem",
      "goldbach-scan",    "energy-scaling",      "harman-count"};
  return names;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  const std::string& e = cfg.experiment;
  if (e == "poisson-baseline") return run_poisson_baseline(cfg);
  if (e == "poissonian-sequence") return run_poissonian_sequence(cfg);
  if (e == "naturals-failure") return run_naturals_failure(cfg);
  if (e == "main-theorem") return run_main_theorem(cfg);
  if (e == "goldbach-scan") return run_goldbach_scan(cfg);
  if (e == "energy-scaling") return run_energy_scaling(cfg);
  if (e == "harman-count") return run_harman_count(cfg);
  throw InvalidArgument("unknown experiment '" + e + "'");
}

ExperimentReport run_poisson_baseline(const ExperimentConfig& cfg) {
  require_seed(cfg, "poisson-baseline");
  require_s(cfg);
  require_n(cfg, 2, kMaxPoissonN);
  ExperimentReport r = start_report(cfg, "poisson-baseline");
  r.rng = std::string(kRngName);
  r.rows = {"runs", {"N", "trial", "seed", "s", "ordered_pairs", "F"}, {}};
  const std::size_t limbs = CirclePoints::limbs_for(cfg.precision_bits);

  std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> by_ns;
  {
    StageTimer timer(r, "pair counts");
    for (std::size_t N : cfg.N_values) {
      for (unsigned t = 0; t < cfg.trials; ++t) {
        const std::uint64_t seed = trial_seed(*cfg.seed, t);
        Xoshiro256 rng(seed);
        const CirclePoints points = random_points(rng, N, limbs);
        for (std::size_t si = 0; si < cfg.s_values.size(); ++si) {
          const PairCorrResult pc = pair_correlation_points(points, cfg.s_values[si], "uniform",
                                                            PairCorrOptions{cfg.threads});
          r.rows.add_row({cell(N), cell(t), cell(seed), cfg.s_text[si], cell(pc.ordered_pair_count),
                          cell(pc.F)});
          by_ns[{N, si}].push_back(pc.F);
        }
      }
    }
  }

  Table summary{"summary", {"N", "s", "trials", "mean_F", "target_2s", "rel_deviation"}, {}};
  for (const auto& [key, fs] : by_ns) {
    const auto [N, si] = key;
    const double mean = mean_of(fs);
    const double target = 2 * to_double(cfg.s_values[si]);
    const double dev = target == 0 ? std::fabs(mean) : std::fabs(mean - target) / target;
    summary.add_row({cell(N), cfg.s_text[si], cell(fs.size()), cell(mean), cell(target), cell(dev)});
    add_verdict(r, "mean_F_N" + std::to_string(N) + "_s" + cfg.s_text[si],
                within_rel(mean, target, cfg.tolerance), rel_detail(mean, target, cfg.tolerance));
    r.plot.add_row({cfg.s_text[si], cell(mean), "mean_F_N" + std::to_string(N)});
    r.plot.add_row({cfg.s_text[si], cell(target), "2s"});
  }
  r.extra.push_back(std::move(summary));
  return r;
}

ExperimentReport run_poissonian_sequence(const ExperimentConfig& cfg) {
  using K = SequenceSpec::Kind;
  if (cfg.sequence.kind == K::kNaturals || cfg.sequence.kind == K::kPrimes) {
    throw InvalidArgument("poissonian-sequence does not take " + cfg.sequence.name() +
                          ": that sequence is not metric Poissonian; use naturals-failure or "
                          "main-theorem");
  }
  if (cfg.sequence.kind == K::kKthPowers && cfg.sequence.k < 2) {
    throw InvalidArgument("poissonian-sequence needs powers with k >= 2");
  }
  require_s(cfg);
  require_n(cfg, 2, kMaxPairCorrN);
  ExperimentReport r = start_report(cfg, "poissonian-sequence");
  const unsigned trials = alpha_trials(cfg, r);
  const std::size_t n_max = *std::max_element(cfg.N_values.begin(), cfg.N_values.end());

  Terms terms;
  {
    StageTimer timer(r, "generate");
    terms = make_terms(cfg.sequence, n_max);
  }
  const unsigned bits = working_bits(cfg, terms.bitlen);
  r.rows = {"runs", {"N", "trial", "alpha", "s", "ordered_pairs", "F"}, {}};
  std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> by_ns;
  {
    StageTimer timer(r, "pair counts");
    for (unsigned t = 0; t < trials; ++t) {
      const AlphaDraw a = draw_alpha(cfg, bits, t);
      for (std::size_t N : cfg.N_values) {
        for (std::size_t si = 0; si < cfg.s_values.size(); ++si) {
          const PairCorrResult pc =
              pair_corr_prefix(terms, N, a.value, cfg.s_values[si], a.descriptor, cfg.threads);
          r.rows.add_row({cell(N), cell(t), a.descriptor, cfg.s_text[si],
                          cell(pc.ordered_pair_count), cell(pc.F)});
          by_ns[{N, si}].push_back(pc.F);
        }
      }
    }
  }

  Table summary{"summary", {"N", "s", "trials", "mean_F", "target_2s", "rel_deviation"}, {}};
  for (const auto& [key, fs] : by_ns) {
    const auto [N, si] = key;
    const double mean = mean_of(fs);
    const double target = 2 * to_double(cfg.s_values[si]);
    const double dev = target == 0 ? std::fabs(mean) : std::fabs(mean - target) / target;
    summary.add_row({cell(N), cfg.s_text[si], cell(fs.size()), cell(mean), cell(target), cell(dev)});
    r.plot.add_row({cell(N), cell(mean), "mean_F_s" + cfg.s_text[si]});
    if (N == n_max) {
      add_verdict(r, "terminal_mean_F_s" + cfg.s_text[si], within_rel(mean, target, cfg.tolerance),
                  rel_detail(mean, target, cfg.tolerance));
    }
  }
  r.extra.push_back(std::move(summary));
  return r;
}

std::optional<std::uint64_t> naturals_rational_count(std::uint64_t N, const BigRational& alpha,
                                                     const BigRational& s) {
  const BigInt q = boost::multiprecision::denominator(alpha);
  if (s / BigRational(N) >= BigRational(1, q)) return std::nullopt;
  BigInt total = 0;
  for (BigInt d = q; d < N; d += q) total += BigInt(N) - d;
  total *= 2;
  return to_u64(total);
}

BigInt naturals_energy(std::uint64_t N) {
  const BigInt n = N;
  return (2 * n * n * n + n) / 3;
}

ExperimentReport run_naturals_failure(const ExperimentConfig& cfg) {
  if (cfg.sequence.kind != SequenceSpec::Kind::kNaturals) {
    throw InvalidArgument("naturals-failure runs on the naturals only");
  }
  require_s(cfg);
  require_n(cfg, 2, kMaxPairCorrN);
  ExperimentReport r = start_report(cfg, "naturals-failure");
  const unsigned trials = alpha_trials(cfg, r);
  const std::size_t n_max = *std::max_element(cfg.N_values.begin(), cfg.N_values.end());
  const Terms terms = make_terms(cfg.sequence, n_max);
  const unsigned bits = working_bits(cfg, terms.bitlen);
  const bool rational = cfg.alpha.kind == AlphaSpec::Kind::kRational;

  r.rows = {"runs",
            {"N", "trial", "alpha", "s", "fibonacci_N", "ordered_pairs", "F", "abs_F_minus_2s",
             "closed_form_pairs"},
            {}};
  double max_dev = 0;
  std::size_t arg_n = 0;
  bool closed_ok = true;
  std::size_t closed_checked = 0;
  {
    StageTimer timer(r, "pair counts");
    for (unsigned t = 0; t < trials; ++t) {
      const AlphaDraw a = draw_alpha(cfg, bits, t);
      for (std::size_t N : cfg.N_values) {
        for (std::size_t si = 0; si < cfg.s_values.size(); ++si) {
          const BigRational& s = cfg.s_values[si];
          const PairCorrResult pc = pair_corr_prefix(terms, N, a.value, s, a.descriptor, cfg.threads);
          const double dev = std::fabs(pc.F - 2 * to_double(s));
          if (dev > max_dev) {
            max_dev = dev;
            arg_n = N;
          }
          std::string closed;
          if (rational) {
            if (auto c = naturals_rational_count(N, cfg.alpha.value, s)) {
              closed = cell(*c);
              ++closed_checked;
              closed_ok = closed_ok && *c == pc.ordered_pair_count;
            }
          }
          r.rows.add_row({cell(N), cell(t), a.descriptor, cfg.s_text[si], cell(is_fibonacci(N)),
                          cell(pc.ordered_pair_count), cell(pc.F), cell(dev), closed});
          r.plot.add_row({cell(N), cell(pc.F), "F_s" + cfg.s_text[si]});
        }
      }
    }
  }
  add_verdict(r, "max_abs_F_minus_2s", max_dev > cfg.tolerance,
              "max |F - 2s| = " + format_sig(max_dev) + " at N = " + std::to_string(arg_n) +
                  ", failure threshold " + format_sig(cfg.tolerance));
  if (closed_checked > 0) {
    add_verdict(r, "closed_form_even_difference", closed_ok,
                std::to_string(closed_checked) + " runs compared with the closed-form count");
  }
  return r;
}

ExperimentReport run_main_theorem(const ExperimentConfig& cfg) {
  require_s(cfg);
  const BigRational& s = cfg.s_values.front();
  ExperimentReport r = start_report(cfg, "main-theorem");
  if (cfg.s_values.size() > 1) r.notes.push_back("only the first s value is used");
  if (cfg.alpha.random()) {
    require_seed(cfg, "random alpha");
    r.rng = std::string(kRngName);
  }
  if (cfg.c <= 0 || cfg.factor <= 0) {
    r.notes.push_back("degenerate: c = 0 or factor = 0 makes the thresholds trivial");
  }

  // alpha needs enough bits for ||q alpha|| at the largest admissible scale.
  const unsigned n_bits = static_cast<unsigned>(boost::multiprecision::msb(BigInt(std::max<std::uint64_t>(cfg.n_max, 2)))) + 1;
  const unsigned bits = working_bits(cfg, 2 * n_bits);
  AlphaDraw a = draw_alpha(cfg, bits, 0);
  if (!a.cf) a.cf = cf_expand(a.value, 4096);

  GoodScales scales;
  {
    StageTimer timer(r, "find scales");
    scales = find_good_scales(a.value, *a.cf, s, BigInt(cfg.n_min), BigInt(cfg.n_max), cfg.exhaustive);
  }
  Table scale_table{"scales",
                    {"n", "convergent_index", "dist", "bound", "qualifies", "sufficient_by_quotient"},
                    {}};
  for (const ScaleCandidate& c : scales.examined) {
    scale_table.add_row({to_string(c.n), cell(c.convergent_index), cell(c.dist.to_double()),
                         cell(c.bound), cell(c.qualifies), cell(c.sufficient_by_quotient)});
  }
  r.extra.push_back(std::move(scale_table));

  std::optional<std::uint64_t> chosen;
  for (const ScaleCandidate& c : scales.scales) {
    const std::uint64_t n = static_cast<std::uint64_t>(c.n);
    if (cfg.n == 0 || cfg.n == n) {
      chosen = n;
      break;
    }
  }
  r.rows = {"certificate", {"m", "mn", "reps", "pairs", "in_short_range", "in_extended_range",
                            "meets_threshold"}, {}};
  if (!chosen) {
    std::string detail = "no qualifying scale in [" + std::to_string(cfg.n_min) + ", " +
                         std::to_string(cfg.n_max) + "]";
    for (const ScaleCandidate& c : scales.examined) {
      r.notes.push_back("q_" + std::to_string(c.convergent_index) + " = " + to_string(c.n) +
                        ": dist " + format_sig(c.dist.to_double()) + " vs bound " +
                        format_sig(c.bound));
    }
    add_verdict(r, "scale_found", false, detail);
    return r;
  }
  const std::uint64_t N = *chosen;
  add_verdict(r, "scale_found", true, "N = " + std::to_string(N));

  const std::uint64_t X = certificate_bound(N);
  const std::uint64_t m_report =
      cfg.m_report > 0 ? cfg.m_report
                       : std::max<std::uint64_t>(
                             static_cast<std::uint64_t>(std::floor(std::log(static_cast<double>(N)) / 10)),
                             X / N);
  ScaleCertificate cert;
  {
    StageTimer timer(r, "certify");
    const PrimeTable table = primes_up_to(X);
    cert = certify_scale(N, a.value, s, cfg.c, m_report, table, a.descriptor,
                         CertifyOptions{cfg.threads});
  }
  for (std::uint64_t m = 1; m <= m_report; ++m) {
    const std::uint64_t reps = cert.reps[m - 1];
    r.rows.add_row({cell(m), cell(m * N), cell(reps), cell(2 * reps), cell(m <= cert.short_range),
                    cell(m <= cert.extended_range),
                    cell(static_cast<double>(reps) >= cert.threshold)});
    r.plot.add_row({cell(m), cell(reps), "reps"});
  }
  r.notes.push_back("N = " + std::to_string(N) + ", X = " + std::to_string(X) + ", ||alpha N|| = " +
                    format_sig(cert.dist.to_double()) + ", m_limit = " +
                    (cert.m_unbounded ? std::string("unbounded") : std::to_string(cert.m_limit)));
  r.notes.push_back("short range m <= " + std::to_string(cert.short_range) + ": " +
                    std::to_string(cert.short_qualifying) + " multiples meet c N / ln N" +
                    (cert.short_range_compliant ? "" : " (below c ln N)"));

  std::vector<std::uint64_t> primes;
  PairCorrResult pc;
  {
    StageTimer timer(r, "pair correlation");
    primes = first_primes(N);
    pc = pair_correlation_fast(std::span<const std::uint64_t>(primes), a.value, s, a.descriptor,
                               PairCorrOptions{cfg.threads});
  }
  const double lower = static_cast<double>(cert.extended_pairs) / static_cast<double>(N);
  const double target = cfg.factor * 2 * to_double(s);
  Table summary{"summary",
                {"N", "X", "p_N", "s", "extended_range", "extended_pairs", "lower_bound_F",
                 "ordered_pairs", "F", "target"},
                {}};
  summary.add_row({cell(N), cell(X), cell(primes.back()), s_cell(s), cell(cert.extended_range),
                   cell(cert.extended_pairs), cell(lower), cell(pc.ordered_pair_count), cell(pc.F),
                   cell(target)});
  r.extra.push_back(std::move(summary));

  add_verdict(r, "primes_cover_X", primes.back() >= X,
              "p_N = " + std::to_string(primes.back()) + ", X = " + std::to_string(X));
  add_verdict(r, "certified_pairs", cert.extended_pairs >= cfg.min_pairs,
              std::to_string(cert.extended_pairs) + " pairs over m <= " +
                  std::to_string(cert.extended_range) + ", required " +
                  std::to_string(cfg.min_pairs));
  add_verdict(r, "F_at_least_factor_2s", pc.F >= target,
              "F = " + format_sig(pc.F) + ", factor * 2s = " + format_sig(target));
  add_verdict(r, "F_at_least_lower_bound", pc.ordered_pair_count >= cert.extended_pairs,
              "F = " + format_sig(pc.F) + ", certified lower bound " + format_sig(lower));
  add_verdict(r, "lower_bound_at_least_factor_2s", lower >= target,
              "lower bound " + format_sig(lower) + ", factor * 2s = " + format_sig(target));
  return r;
}

ExperimentReport run_goldbach_scan(const ExperimentConfig& cfg) {
  ExperimentReport r = start_report(cfg, "goldbach-scan");
  const std::uint64_t X = cfg.X;
  if (X < 3) throw InvalidArgument("goldbach-scan requires X >= 3");
  const std::uint64_t n_max = std::min(cfg.n_max, X - 1);
  GoldbachProfile profile;
  {
    StageTimer timer(r, "profile");
    profile = goldbach_profile(X, n_max, GoldbachOptions{cfg.threads, kDefaultSeriesTruncation});
  }
  r.rows = {"profile",
            {"n", "r_count", "r_weighted", "singular_series", "singular_integral", "prediction",
             "rel_error", "exceptional"},
            {}};
  for (const GoldbachRow& row : profile.rows) {
    const bool exc = row.n % 2 == 0 && row.rel_error && *row.rel_error > cfg.epsilon;
    r.rows.add_row({cell(row.n), cell(row.r_count), cell(row.r_weighted), cell(row.singular_series),
                    cell(row.singular_integral), cell(row.prediction),
                    row.rel_error ? cell(*row.rel_error) : std::string(), cell(exc)});
    if (row.n % 2 == 0) {
      r.plot.add_row({cell(row.n), cell(row.r_weighted), "r_weighted"});
      r.plot.add_row({cell(row.n), cell(row.prediction), "prediction"});
    }
  }

  const double median = median_rel_error(profile);
  const ExceptionalScan scan = exceptional_scan(profile, cfg.epsilon);

  // Every unordered pair of primes <= X has exactly one positive difference.
  std::vector<std::uint64_t> counts(X, 0);
  {
    StageTimer timer(r, "pair conservation");
    const PrimeTable table = primes_up_to(X);
    for (const GoldbachRow& row : profile.rows) counts[row.n] = row.r_count;
    parallel_blocks(X - 1 - n_max, cfg.threads, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        const std::uint64_t n = n_max + 1 + i;
        counts[n] = r_count(n, X, table);
      }
    });
  }
  Table pairs{"pair_counts", {"n", "r_count"}, {}};
  BigInt total = 0;
  for (std::uint64_t n = 1; n < X; ++n) {
    total += counts[n];
    if (counts[n] > 0) pairs.add_row({cell(n), cell(counts[n])});
  }
  r.extra.push_back(std::move(pairs));
  const BigInt pi = profile.prime_count;
  const BigInt expected = pi * (pi - 1) / 2;

  add_verdict(r, "median_rel_error", median <= cfg.tolerance,
              "median " + format_sig(median) + " over " + std::to_string(scan.even_count) +
                  " even n, tolerance " + format_sig(cfg.tolerance));
  add_verdict(r, "exceptional_density", scan.density <= cfg.max_density,
              std::to_string(scan.exceptional.size()) + " of " + std::to_string(scan.even_count) +
                  " even n exceed epsilon " + format_sig(cfg.epsilon) + ": density " +
                  format_sig(scan.density) + ", limit " + format_sig(cfg.max_density));
  add_verdict(r, "pair_conservation", total == expected,
              "sum r_count = " + to_string(total) + ", pi(X)(pi(X)-1)/2 = " + to_string(expected));
  return r;
}

ExperimentReport run_energy_scaling(const ExperimentConfig& cfg) {
  require_n(cfg, 2, kMaxEnergyN);
  ExperimentReport r = start_report(cfg, "energy-scaling");
  std::vector<std::size_t> ns = cfg.N_values;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

  const bool naturals = cfg.sequence.kind == SequenceSpec::Kind::kNaturals;
  std::vector<EnergyResult> profile;
  {
    StageTimer timer(r, "energy");
    profile = energy_scaling_profile(cfg.sequence, ns);
  }
  r.rows = {"energy", {"sequence", "N", "E", "E_over_N3", "E_lnN_over_N3", "ratio_to_previous"}, {}};
  const auto stat = [&](const EnergyResult& e) { return naturals ? e.normalized : e.log_normalized; };
  bool band_ok = true;
  std::string band_detail;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const EnergyResult& e = profile[i];
    std::string ratio;
    if (i > 0) {
      const double q = stat(e) / stat(profile[i - 1]);
      ratio = cell(q);
      band_ok = band_ok && std::fabs(q - 1) <= cfg.tolerance;
      band_detail += (band_detail.empty() ? "" : " ") + format_sig(q);
    }
    r.rows.add_row({cfg.sequence.name(), cell(e.N), to_string(e.E), cell(e.normalized),
                    cell(e.log_normalized), ratio});
    r.plot.add_row({cell(e.N), cell(stat(e)), cfg.sequence.name()});
  }
  if (profile.size() > 1) {
    add_verdict(r, "consecutive_ratios", band_ok,
                "ratios of " + std::string(naturals ? "E/N^3" : "E ln N/N^3") + ": " + band_detail +
                    ", band 1 +- " + format_sig(cfg.tolerance));
  }

  // Reference run on the naturals at the largest N with its closed form.
  const std::size_t n_ref = ns.back();
  EnergyResult ref;
  {
    StageTimer timer(r, "naturals reference");
    const std::vector<BigInt> nat = generate(SequenceSpec::naturals(), n_ref);
    ref = additive_energy(nat);
  }
  const BigInt closed = naturals_energy(n_ref);
  Table ref_table{"naturals_reference", {"N", "E", "closed_form", "E_over_N3"}, {}};
  ref_table.add_row({cell(n_ref), to_string(ref.E), to_string(closed), cell(ref.normalized)});
  r.extra.push_back(std::move(ref_table));
  add_verdict(r, "naturals_closed_form", ref.E == closed,
              "E({1..N}) = " + to_string(ref.E) + ", (2N^3+N)/3 = " + to_string(closed));
  add_verdict(r, "naturals_two_thirds", within_rel(ref.normalized, 2.0 / 3.0, kNaturalsEnergyBand),
              rel_detail(ref.normalized, 2.0 / 3.0, kNaturalsEnergyBand));
  return r;
}

ExperimentReport run_harman_count(const ExperimentConfig& cfg) {
  require_n(cfg, 2, 100'000'000);
  ExperimentReport r = start_report(cfg, "harman-count");
  const unsigned trials = alpha_trials(cfg, r);
  const ApproxFunction psi = ApproxFunction::parse(cfg.psi);
  std::function<bool(std::uint64_t)> in_set;
  if (cfg.subset == "odd") {
    in_set = [](std::uint64_t n) { return n % 2 == 1; };
  } else if (cfg.subset == "even") {
    in_set = [](std::uint64_t n) { return n % 2 == 0; };
  } else if (cfg.subset == "primes") {
    in_set = [](std::uint64_t n) { return is_prime_u64(n); };
  }

  r.rows = {"runs", {"N", "trial", "alpha", "S", "Psi_N", "Psi_N_B", "ratio_S_over_2Psi"}, {}};
  std::map<std::size_t, std::vector<double>> by_n;
  {
    StageTimer timer(r, "counts");
    for (unsigned t = 0; t < trials; ++t) {
      const AlphaDraw a = draw_alpha(cfg, cfg.precision_bits, t);
      for (std::size_t N : cfg.N_values) {
        const HarmanResult h = harman_count(in_set, a.value, N, psi);
        const double ratio = static_cast<double>(h.S) / (2 * h.Psi_N_B);
        r.rows.add_row({cell(N), cell(t), a.descriptor, cell(h.S), cell(h.Psi_N), cell(h.Psi_N_B),
                        cell(ratio)});
        by_n[N].push_back(ratio);
      }
    }
  }
  for (const auto& [N, ratios] : by_n) {
    const double mean = mean_of(ratios);
    r.plot.add_row({cell(N), cell(mean), "mean_S_over_2Psi"});
    add_verdict(r, "mean_ratio_N" + std::to_string(N), within_rel(mean, 1.0, cfg.tolerance),
                rel_detail(mean, 1.0, cfg.tolerance));
  }
  return r;
}

ExperimentReport command_paircorr(const ExperimentConfig& cfg) {
  require_s(cfg);
  require_n(cfg, 2, kMaxPairCorrN);
  ExperimentReport r = start_report(cfg, "paircorr");
  const unsigned trials = alpha_trials(cfg, r);
  const std::size_t n_max = *std::max_element(cfg.N_values.begin(), cfg.N_values.end());
  if (cfg.naive && n_max > kMaxNaiveN) {
    throw BudgetExceeded("the naive cross-check is limited to N <= " + std::to_string(kMaxNaiveN));
  }
  const Terms terms = make_terms(cfg.sequence, n_max);
  const unsigned bits = working_bits(cfg, terms.bitlen);
  r.rows = {"paircorr",
            {"sequence", "N", "trial", "alpha", "s", "window", "ordered_pairs", "F", "degenerate",
             "naive_pairs"},
            {}};
  StageTimer timer(r, "pair counts");
  for (unsigned t = 0; t < trials; ++t) {
    const AlphaDraw a = draw_alpha(cfg, bits, t);
    for (std::size_t N : cfg.N_values) {
      for (std::size_t si = 0; si < cfg.s_values.size(); ++si) {
        const BigRational& s = cfg.s_values[si];
        const PairCorrResult pc = pair_corr_prefix(terms, N, a.value, s, a.descriptor, cfg.threads);
        std::string naive;
        if (cfg.naive) {
          naive = cell(pair_correlation_naive(std::span<const BigInt>(terms.big).first(N), a.value, s)
                           .ordered_pair_count);
        }
        r.rows.add_row({cfg.sequence.name(), cell(N), cell(t), a.descriptor, cfg.s_text[si],
                        pc.window.to_string(20), cell(pc.ordered_pair_count), cell(pc.F),
                        cell(pc.degenerate), naive});
        r.plot.add_row({cell(N), cell(pc.F), "F_s" + cfg.s_text[si]});
      }
    }
  }
  return r;
}

ExperimentReport command_energy(const ExperimentConfig& cfg) {
  require_n(cfg, 1, kMaxEnergyN);
  ExperimentReport r = start_report(cfg, "energy");
  std::vector<std::size_t> ns = cfg.N_values;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  StageTimer timer(r, "energy");
  r.rows = {"energy", {"sequence", "N", "E", "E_over_N3", "E_lnN_over_N3"}, {}};
  for (const EnergyResult& e : energy_scaling_profile(cfg.sequence, ns)) {
    r.rows.add_row({cfg.sequence.name(), cell(e.N), to_string(e.E), cell(e.normalized),
                    cell(e.log_normalized)});
    r.plot.add_row({cell(e.N), cell(e.log_normalized), "E_lnN_over_N3"});
  }
  return r;
}

ExperimentReport command_equidist(const ExperimentConfig& cfg) {
  require_n(cfg, 1, kMaxPairCorrN);
  ExperimentReport r = start_report(cfg, "equidist");
  const unsigned trials = alpha_trials(cfg, r);
  const std::size_t n_max = *std::max_element(cfg.N_values.begin(), cfg.N_values.end());
  const Terms terms = make_terms(cfg.sequence, n_max);
  const unsigned bits = working_bits(cfg, terms.bitlen);
  const std::vector<Interval01> intervals = parse_intervals(cfg.intervals, cfg.precision_bits);
  r.rows = {"equidist",
            {"N", "trial", "alpha", "interval", "hits", "frequency", "length", "deviation"},
            {}};
  Table disc{"discrepancy", {"N", "trial", "alpha", "star_discrepancy"}, {}};
  StageTimer timer(r, "counts");
  for (unsigned t = 0; t < trials; ++t) {
    const AlphaDraw a = draw_alpha(cfg, bits, t);
    for (std::size_t N : cfg.N_values) {
      const auto prefix = std::span<const BigInt>(terms.big).first(N);
      const auto rows = equidistribution_counts(prefix, a.value, intervals);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        r.rows.add_row({cell(N), cell(t), a.descriptor, interval_name(intervals[i]),
                        cell(rows[i].hits), cell(rows[i].frequency), cell(rows[i].length),
                        cell(rows[i].deviation)});
      }
      const Discrepancy d = star_discrepancy(prefix, a.value);
      disc.add_row({cell(N), cell(t), a.descriptor, cell(d.value)});
      r.plot.add_row({cell(N), cell(d.value), "star_discrepancy"});
    }
  }
  r.extra.push_back(std::move(disc));
  return r;
}

ExperimentReport command_goldbach(const ExperimentConfig& cfg) {
  ExperimentReport r = start_report(cfg, "goldbach");
  if (cfg.X < 2) throw InvalidArgument("goldbach requires X >= 2");
  const std::uint64_t n_max = std::min(cfg.n_max, cfg.X);
  GoldbachProfile profile;
  {
    StageTimer timer(r, "profile");
    profile = goldbach_profile(cfg.X, n_max, GoldbachOptions{cfg.threads, kDefaultSeriesTruncation});
  }
  r.rows = {"profile",
            {"n", "r_count", "r_weighted", "singular_series", "singular_integral", "prediction",
             "rel_error"},
            {}};
  for (const GoldbachRow& row : profile.rows) {
    r.rows.add_row({cell(row.n), cell(row.r_count), cell(row.r_weighted), cell(row.singular_series),
                    cell(row.singular_integral), cell(row.prediction),
                    row.rel_error ? cell(*row.rel_error) : std::string()});
    if (row.n % 2 == 0) r.plot.add_row({cell(row.n), cell(row.r_weighted), "r_weighted"});
  }
  const ExceptionalScan scan = exceptional_scan(profile, cfg.epsilon);
  r.notes.push_back("pi(X) = " + std::to_string(profile.prime_count));
  r.notes.push_back("median relative error " + format_sig(median_rel_error(profile)));
  r.notes.push_back("exceptional density at epsilon " + format_sig(cfg.epsilon) + ": " +
                    format_sig(scan.density));
  return r;
}

ExperimentReport command_scales(const ExperimentConfig& cfg) {
  require_s(cfg);
  ExperimentReport r = start_report(cfg, "scales");
  if (cfg.alpha.random()) {
    require_seed(cfg, "random alpha");
    r.rng = std::string(kRngName);
  }
  const unsigned n_bits =
      static_cast<unsigned>(boost::multiprecision::msb(BigInt(std::max<std::uint64_t>(cfg.n_max, 2)))) + 1;
  AlphaDraw a = draw_alpha(cfg, working_bits(cfg, 2 * n_bits), 0);
  if (!a.cf) a.cf = cf_expand(a.value, 4096);
  const BigRational& s = cfg.s_values.front();
  StageTimer timer(r, "scan");
  const GoodScales g = find_good_scales(a.value, *a.cf, s, BigInt(cfg.n_min), BigInt(cfg.n_max),
                                        cfg.exhaustive);
  r.rows = {"scales",
            {"n", "convergent_index", "dist", "bound", "qualifies", "sufficient_by_quotient"},
            {}};
  std::set<BigInt> listed;
  for (const ScaleCandidate& c : g.examined) {
    listed.insert(c.n);
    r.rows.add_row({to_string(c.n), cell(c.convergent_index), cell(c.dist.to_double()),
                    cell(c.bound), cell(c.qualifies), cell(c.sufficient_by_quotient)});
  }
  for (const ScaleCandidate& c : g.scales) {
    if (listed.count(c.n)) continue;
    r.rows.add_row({to_string(c.n), cell(c.convergent_index), cell(c.dist.to_double()),
                    cell(c.bound), cell(c.qualifies), cell(c.sufficient_by_quotient)});
  }
  r.notes.push_back("alpha " + a.descriptor + ", " + std::to_string(g.scales.size()) +
                    " qualifying scales");
  if (g.partial) r.notes.push_back("partial: the convergents stop below n_max");
  if (g.degenerate) r.notes.push_back("degenerate: some scale has ||alpha n|| = 0");
  return r;
}

ExperimentReport command_certify(const ExperimentConfig& cfg) {
  require_s(cfg);
  if (cfg.n < 2) throw InvalidArgument("certify requires n >= 2");
  ExperimentReport r = start_report(cfg, "certify");
  if (cfg.alpha.random()) {
    require_seed(cfg, "random alpha");
    r.rng = std::string(kRngName);
  }
  const unsigned n_bits = static_cast<unsigned>(boost::multiprecision::msb(BigInt(cfg.n))) + 1;
  const AlphaDraw a = draw_alpha(cfg, working_bits(cfg, 2 * n_bits), 0);
  const BigRational& s = cfg.s_values.front();
  const std::uint64_t X = certificate_bound(cfg.n);
  const std::uint64_t m_report =
      cfg.m_report > 0 ? cfg.m_report
                       : std::max<std::uint64_t>(
                             static_cast<std::uint64_t>(std::floor(std::log(static_cast<double>(cfg.n)) / 10)),
                             X / cfg.n);
  StageTimer timer(r, "certify");
  const PrimeTable table = primes_up_to(X);
  const ScaleCertificate cert =
      certify_scale(cfg.n, a.value, s, cfg.c, m_report, table, a.descriptor, CertifyOptions{cfg.threads});
  r.rows = {"certificate", {"m", "mn", "reps", "pairs", "in_short_range", "in_extended_range",
                            "meets_threshold"}, {}};
  for (std::uint64_t m = 1; m <= m_report; ++m) {
    const std::uint64_t reps = cert.reps[m - 1];
    r.rows.add_row({cell(m), cell(m * cfg.n), cell(reps), cell(2 * reps),
                    cell(m <= cert.short_range), cell(m <= cert.extended_range),
                    cell(static_cast<double>(reps) >= cert.threshold)});
    r.plot.add_row({cell(m), cell(reps), "reps"});
  }
  r.notes.push_back("X = " + std::to_string(cert.X) + ", ||alpha n|| = " +
                    format_sig(cert.dist.to_double()) + ", bound = " + format_sig(cert.bound));
  r.notes.push_back("m_limit = " +
                    (cert.m_unbounded ? std::string("unbounded") : std::to_string(cert.m_limit)) +
                    ", threshold c n / ln n = " + format_sig(cert.threshold));
  r.notes.push_back("short range m <= " + std::to_string(cert.short_range) + ": " +
                    std::to_string(cert.short_qualifying) + " qualifying, compliant " +
                    cell(cert.short_range_compliant));
  r.notes.push_back("extended range m <= " + std::to_string(cert.extended_range) + ": " +
                    std::to_string(cert.extended_pairs) + " ordered pairs");
  return r;
}

void write_report(std::ostream& out, const ExperimentReport& report) {
  write_report_csv(out, report.metadata(), report.rows);
}

std::vector<std::filesystem::path> write_report_files(const ExperimentReport& report,
                                                      const std::string& output,
                                                      const std::string& plot,
                                                      std::ostream& stdout_stream) {
  std::vector<std::filesystem::path> written;
  auto open = [&](const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error("cannot write " + p.string());
    written.push_back(p);
    return f;
  };
  if (output.empty()) {
    write_report(stdout_stream, report);
  } else {
    std::ofstream main = open(output);
    write_report(main, report);
    for (const Table& t : report.extra) {
      std::ofstream f = open(sibling_path(output, t.name));
      write_table(f, t);
    }
  }
  if (!plot.empty()) {
    std::ofstream f = open(plot);
    write_table(f, report.plot);
  }
  return written;
}

int exit_code(const ExperimentReport& report) { return report.passed() ? 0 : 1; }

}  // namespace pcorr
