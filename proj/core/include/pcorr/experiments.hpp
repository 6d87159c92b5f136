#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "pcorr/config.hpp"
#include "pcorr/csv.hpp"

namespace pcorr {

struct Verdict {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExperimentReport {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> config;
  std::string rng;  // empty when no random numbers were drawn
  Table rows;
  std::vector<Table> extra;
  std::vector<Verdict> verdicts;
  std::vector<std::string> notes;
  std::vector<std::pair<std::string, double>> stage_seconds;
  Table plot{"plot", {"x", "y", "series"}, {}};

  bool passed() const;
  // Metadata lines of the CSV. Timings are left out so that reports with the
  // same config and seed are byte-identical.
  std::vector<std::pair<std::string, std::string>> metadata() const;
};

// Names accepted by run_experiment.
const std::vector<std::string>& experiment_names();

// Dispatches on cfg.experiment. Throws InvalidArgument for unknown names or
// missing seeds, BudgetExceeded for oversized runs.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

ExperimentReport run_poisson_baseline(const ExperimentConfig& cfg);
ExperimentReport run_poissonian_sequence(const ExperimentConfig& cfg);
ExperimentReport run_naturals_failure(const ExperimentConfig& cfg);
ExperimentReport run_main_theorem(const ExperimentConfig& cfg);
ExperimentReport run_goldbach_scan(const ExperimentConfig& cfg);
ExperimentReport run_energy_scaling(const ExperimentConfig& cfg);
ExperimentReport run_harman_count(const ExperimentConfig& cfg);

// Single-computation subcommands; reports without verdicts.
ExperimentReport command_paircorr(const ExperimentConfig& cfg);
ExperimentReport command_energy(const ExperimentConfig& cfg);
ExperimentReport command_equidist(const ExperimentConfig& cfg);
ExperimentReport command_goldbach(const ExperimentConfig& cfg);
ExperimentReport command_scales(const ExperimentConfig& cfg);
ExperimentReport command_certify(const ExperimentConfig& cfg);

// Metadata and main table.
void write_report(std::ostream& out, const ExperimentReport& report);
// Main table to `output` (stdout when empty), extra tables next to it and
// the plot table to `plot` when given. Returns the files written.
std::vector<std::filesystem::path> write_report_files(const ExperimentReport& report,
                                                      const std::string& output,
                                                      const std::string& plot,
                                                      std::ostream& stdout_stream);

// 0 when every verdict passed, 1 otherwise.
int exit_code(const ExperimentReport& report);

// Ordered pairs of 1..N with ||alpha (i - j)|| <= s/N for alpha = p/q in
// lowest terms, when s/N < 1/q so only multiples of q count:
// 2 sum_{d = q, 2q, ... < N} (N - d). Empty when s/N >= 1/q.
std::optional<std::uint64_t> naturals_rational_count(std::uint64_t N, const BigRational& alpha,
                                                     const BigRational& s);

// E({1..N}) = (2 N^3 + N) / 3.
BigInt naturals_energy(std::uint64_t N);

}  // namespace pcorr
