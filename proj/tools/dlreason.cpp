// dlreason: command-line front end.
//
//   dlreason sat --tbox FILE --concept EXPR [--absorption MODE] [--stats]
//   dlreason classify --tbox FILE [--absorption MODE] [--out FILE]
//   dlreason absorb --tbox FILE [--absorption MODE]
//   dlreason bench --generator cyclic|galen --sizes 2,4,6 [--csv PATH]
//   dlreason check [--instances N] [--mutant]
//
// Exit codes: 0 success, 1 error or failed check, 10 sat, 20 unsat,
// 30 resource limit hit (sat, classify).

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "dlr/absorption.hpp"
#include "dlr/bench.hpp"
#include "dlr/check_suite.hpp"
#include "dlr/classifier.hpp"
#include "dlr/parser.hpp"
#include "dlr/tableau.hpp"

namespace {

constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;
constexpr int kExitExhausted = 30;

dlr::TBox load_tbox(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream text;
  text << in.rdbuf();
  try {
    return dlr::parse_tbox(text.str());
  } catch (const dlr::ParseError& e) {
    throw std::runtime_error(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " +
                             e.what());
  }
}

std::uint64_t seed_override(std::uint64_t fallback) {
  const char* env = std::getenv("DLREASON_SEED");
  if (!env || !*env) return fallback;
  return std::stoull(env);
}

// nodes,branch_points,clashes,blocked,unfold_firings,internalisation_insertions
void print_stats(const dlr::TableauStats& s) {
  std::cout << s.nodes_created << "," << s.branch_points << "," << s.clashes << "," << s.blocked_nodes << ","
            << s.unfold_firings << "," << s.internalisation_insertions << "\n";
}

const CLI::IsMember kModeNames({"none", "basic", "enhanced"});

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Description logic reasoner with TBox absorption"};
  app.require_subcommand(1);

  std::string tbox_path;
  std::string mode_name = "enhanced";
  auto add_tbox = [&](CLI::App* cmd) {
    cmd->add_option("--tbox", tbox_path, "TBox file (s-expressions)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--absorption", mode_name, "none, basic or enhanced")->check(kModeNames);
  };

  // sat
  auto* sat = app.add_subcommand("sat", "Decide satisfiability of a concept w.r.t. a TBox");
  add_tbox(sat);
  std::string concept_text;
  dlr::ReasonerConfig cfg;
  bool show_stats = false, show_model = false, subset_blocking = false;
  sat->add_option("--concept", concept_text, "Concept expression")->required();
  sat->add_option("--max-nodes", cfg.max_nodes, "Completion graph node limit")->check(CLI::PositiveNumber);
  sat->add_option("--max-branches", cfg.max_branches, "Branch point limit")->check(CLI::PositiveNumber);
  sat->add_option("--timeout", cfg.timeout_ms, "Time limit in ms (0: none)")->check(CLI::NonNegativeNumber);
  sat->add_flag("--subset-blocking", subset_blocking, "Subset instead of equality blocking (no inverse roles)");
  sat->add_flag("--stats", show_stats,
                "Print nodes,branch_points,clashes,blocked,unfold_firings,internalisation_insertions as one CSV row");
  sat->add_flag("--model", show_model, "Print the extracted model");

  // classify
  auto* cls = app.add_subcommand("classify", "Compute the subsumption hierarchy of the named concepts");
  add_tbox(cls);
  std::string out_path;
  std::int64_t classify_timeout = 0;
  bool show_digest = false;
  cls->add_option("--out", out_path, "Write the hierarchy here instead of stdout");
  cls->add_option("--timeout-ms", classify_timeout, "Time limit in ms (0: none)")->check(CLI::NonNegativeNumber);
  cls->add_flag("--digest", show_digest, "Also print the hierarchy digest");

  // absorb
  auto* abs = app.add_subcommand("absorb", "Show the absorbed TBox and the disposition log");
  add_tbox(abs);
  bool print_axioms = false;
  abs->add_flag("--print", print_axioms, "Print the absorbed TBox as plain axioms instead");

  // bench
  auto* bench = app.add_subcommand("bench", "Classification timing sweep, CSV output");
  std::string generator = "cyclic", csv_path;
  dlr::BenchSpec spec;
  spec.sizes = {2, 4, 6};
  std::vector<std::string> modes;
  bench->add_option("--generator", generator, "cyclic or galen")->check(CLI::IsMember({"cyclic", "galen"}));
  bench->add_option("--sizes", spec.sizes, "Pair counts (cyclic) or general axiom counts (galen)")->delimiter(',');
  bench->add_option("--modes", modes, "Absorption modes")
      ->delimiter(',')
      ->check(kModeNames);
  bench->add_option("--timeout-ms", spec.timeout_ms, "Per-classification time limit")->check(CLI::PositiveNumber);
  bench->add_option("--reps", spec.repetitions, "Repetitions")->check(CLI::PositiveNumber);
  bench->add_option("--defs", spec.galen_definitions, "Definitions for the galen generator")
      ->check(CLI::NonNegativeNumber);
  bench->add_option("--seed", spec.seed, "Generator seed (DLREASON_SEED overrides)");
  bench->add_option("--csv", csv_path, "Write rows here as well as to stdout");

  // check
  auto* check = app.add_subcommand("check", "Run the property suites against the brute-force semantics");
  dlr::CheckBudget budget;
  check->add_option("--instances", budget.instances, "Instances per property")->check(CLI::PositiveNumber);
  check->add_option("--max-domain", budget.max_domain, "Largest domain enumerated")->check(CLI::Range(1, 4));
  check->add_option("--bits", budget.oracle.interpretation_bits, "Enumeration budget in bits")
      ->check(CLI::Range(1, 40));
  check->add_option("--seed", budget.seed, "Seed (DLREASON_SEED overrides)");
  check->add_flag("--mutant", budget.mutant, "Absorb without the definition check (negative control)");

  CLI11_PARSE(app, argc, argv);

  try {
    const dlr::AbsorptionMode mode = dlr::parse_absorption_mode(mode_name);
    if (sat->parsed()) {
      const dlr::TBox t = load_tbox(tbox_path);
      const dlr::Concept c = dlr::parse_concept(concept_text);
      if (subset_blocking) cfg.blocking = dlr::Blocking::Subset;
      cfg.extract_model = show_model;
      const dlr::SatResult r = dlr::check_sat(c, dlr::absorb(t, mode), cfg);
      std::cout << dlr::to_string(r.status);
      if (r.status == dlr::SatStatus::ResourceExhausted) std::cout << " (" << r.exhausted << ")";
      std::cout << "\n";
      if (show_stats) print_stats(r.stats);
      if (show_model) {
        if (r.model)
          std::cout << dlr::render(*r.model);
        else if (r.status == dlr::SatStatus::Sat)
          std::cout << "no model extracted (blocking with inverse roles)\n";
      }
      switch (r.status) {
        case dlr::SatStatus::Sat: return kExitSat;
        case dlr::SatStatus::Unsat: return kExitUnsat;
        case dlr::SatStatus::ResourceExhausted: return kExitExhausted;
      }
    }

    if (cls->parsed()) {
      const dlr::TBox t = load_tbox(tbox_path);
      dlr::ClassifyOptions opts;
      opts.timeout_ms = classify_timeout;
      opts.reasoner.extract_model = false;
      const dlr::Hierarchy h = dlr::classify(t, mode, opts);
      std::string text = dlr::render(h);
      if (show_digest) text += "digest " + dlr::digest(h) + "\n";
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(out_path);
        if (!(out << text)) throw std::runtime_error("cannot write " + out_path);
      }
      std::cerr << h.tests << " tests, " << std::fixed << std::setprecision(3) << h.classify_ms << " ms\n";
      if (!h.complete()) {
        std::cerr << h.unknown.size() << " undecided pairs" << (h.timed_out ? ", timed out" : "") << "\n";
        return kExitExhausted;
      }
      return 0;
    }

    if (abs->parsed()) {
      const dlr::Absorption a = dlr::absorb(load_tbox(tbox_path), mode);
      std::cout << (print_axioms ? dlr::render(dlr::reconstruct_axioms(a)) : dlr::render(a));
      return 0;
    }

    if (bench->parsed()) {
      spec.generator = dlr::parse_generator(generator);
      if (!modes.empty()) {
        spec.modes.clear();
        for (const auto& m : modes) spec.modes.push_back(dlr::parse_absorption_mode(m));
      }
      spec.seed = seed_override(spec.seed);
      std::ofstream csv;
      if (!csv_path.empty()) {
        csv.open(csv_path);
        if (!csv) throw std::runtime_error("cannot write " + csv_path);
        csv << dlr::csv_header() << "\n";
      }
      std::cout << dlr::csv_header() << std::endl;
      dlr::run_bench(spec, [&](const dlr::BenchRow& row) {
        const std::string line = dlr::to_csv(row);
        std::cout << line << std::endl;
        if (csv.is_open()) csv << line << std::endl;
      });
      return 0;
    }

    if (check->parsed()) {
      budget.seed = seed_override(budget.seed);
      const dlr::CheckReport report = dlr::run_check_suite(budget);
      std::cout << dlr::render(report);
      return report.passed() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
