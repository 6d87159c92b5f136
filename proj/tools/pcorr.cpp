#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pcorr/config.hpp"
#include "pcorr/errors.hpp"
#include "pcorr/experiments.hpp"
#include "pcorr/rational.hpp"

namespace {

enum Exit { kPass = 0, kVerdictFail = 1, kUsage = 2, kBudget = 3 };

struct Invocation {
  std::string config_path;
  std::string experiment_name;
  std::map<std::string, std::string> flags;
  bool exhaustive = false;
  bool naive = false;
};

// Flag spellings for every config key: --n-min for n_max style keys.
std::string flag_name(const std::string& key) {
  std::string out = key;
  for (char& ch : out) {
    if (ch == '_') ch = '-';
  }
  return "--" + out;
}

void add_config_flags(CLI::App* app, Invocation& inv) {
  app->add_option("--config", inv.config_path, "key = value config file; flags override it");
  for (const std::string& key : pcorr::config_keys()) {
    if (key == "experiment" || key == "exhaustive" || key == "naive") continue;
    std::string names = flag_name(key);
    if (key == "plot_data") names += ",--emit-plot-data";
    if (key == "output") names += ",-o";
    app->add_option_function<std::string>(
        names, [&inv, key](const std::string& v) { inv.flags[key] = v; }, "config key " + key);
  }
  app->add_flag("--exhaustive", inv.exhaustive, "scan every n, not only convergent denominators");
  app->add_flag("--naive", inv.naive, "cross-check with the quadratic counter");
}

pcorr::ExperimentConfig build_config(const std::string& command, Invocation& inv) {
  pcorr::KeyValues kv;
  if (!inv.config_path.empty()) kv = pcorr::read_key_values(inv.config_path);
  std::string name = command;
  if (command == "experiment") {
    name = inv.experiment_name;
    if (name.empty() && kv.count("experiment")) name = kv["experiment"];
    if (name.empty()) throw pcorr::ParseError("experiment name missing");
  }
  kv.erase("experiment");
  pcorr::ExperimentConfig cfg = pcorr::default_config(name);
  pcorr::apply_key_values(cfg, kv);
  for (const auto& [k, v] : inv.flags) pcorr::apply_key_value(cfg, k, v);
  if (inv.exhaustive) cfg.exhaustive = true;
  if (inv.naive) cfg.naive = true;
  return cfg;
}

pcorr::ExperimentReport dispatch(const std::string& command, const pcorr::ExperimentConfig& cfg) {
  if (command == "experiment") return pcorr::run_experiment(cfg);
  if (command == "paircorr") return pcorr::command_paircorr(cfg);
  if (command == "energy") return pcorr::command_energy(cfg);
  if (command == "equidist") return pcorr::command_equidist(cfg);
  if (command == "goldbach") return pcorr::command_goldbach(cfg);
  if (command == "scales") return pcorr::command_scales(cfg);
  return pcorr::command_certify(cfg);
}

void print_summary(const pcorr::ExperimentReport& report) {
  for (const auto& [stage, seconds] : report.stage_seconds) {
    std::cerr << "stage " << stage << ": " << pcorr::format_sig(seconds, 4) << " s\n";
  }
  for (const std::string& note : report.notes) std::cerr << "note: " << note << '\n';
  for (const pcorr::Verdict& v : report.verdicts) {
    std::cerr << (v.passed ? "PASS " : "FAIL ") << v.name << ": " << v.detail << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pair correlation of dilated integer sequences modulo one"};
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"paircorr", "pair correlation F of alpha A_N mod 1"},
      {"energy", "additive energy of initial segments"},
      {"equidist", "interval counts and star discrepancy"},
      {"goldbach", "prime-pair counts against the singular series"},
      {"scales", "good scales ||alpha n|| < s/(n ln n)"},
      {"certify", "prime-pair certificate at one scale"},
      {"experiment", "run a named experiment"},
  };
  std::map<std::string, Invocation> invocations;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    Invocation& inv = invocations[name];
    add_config_flags(sub, inv);
    if (name == "experiment") {
      std::string choices;
      for (const std::string& e : pcorr::experiment_names()) choices += (choices.empty() ? "" : ", ") + e;
      sub->add_option("name", inv.experiment_name, "one of: " + choices);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Invocation& inv = invocations[command];
  try {
    const pcorr::ExperimentConfig cfg = build_config(command, inv);
    const pcorr::ExperimentReport report = dispatch(command, cfg);
    pcorr::write_report_files(report, cfg.output_path, cfg.plot_path, std::cout);
    print_summary(report);
    return pcorr::exit_code(report);
  } catch (const pcorr::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const pcorr::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
