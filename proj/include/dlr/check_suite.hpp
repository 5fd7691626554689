// Property suites backed by the brute-force semantics.
//
// Each property draws seeded random instances, checks one invariant against
// the bounded oracle and counts what happened. Instances the oracle could
// not decide within its budget are counted as truncated and skipped;
// instances where the reasoner ran out of resources are counted as skipped.

#ifndef DLR_CHECK_SUITE_HPP
#define DLR_CHECK_SUITE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dlr/semantics.hpp"
#include "dlr/tableau.hpp"

namespace dlr {

struct CheckBudget {
  int instances = 500;
  int max_domain = 3;
  std::uint64_t seed = 1;
  OracleBudget oracle;
  // Per check_sat call.
  ReasonerConfig reasoner{.max_nodes = 20'000, .max_branches = 2'000'000, .timeout_ms = 5'000};
  // Negative control: absorb with AbsorbOptions::skip_definition_check.
  bool mutant = false;
};

struct PropertyResult {
  std::string name;
  std::uint64_t instances = 0;
  std::uint64_t failures = 0;
  std::uint64_t truncated = 0;
  std::uint64_t skipped = 0;
  // Instances where the property's premise held (others pass vacuously).
  std::uint64_t nontrivial = 0;
  std::vector<std::string> messages;  // first few failures
  double ms = 0;

  bool passed() const { return failures == 0; }
};

struct CheckReport {
  std::vector<PropertyResult> properties;
  bool passed() const;
};

// equivalent_bounded(t, reconstruct_axioms(absorb(t, m))) for every mode.
PropertyResult check_absorption_equivalence(const CheckBudget& b);
// check_sat verdicts agree across modes, extracted models are models, and a
// bounded model found by brute force is never answered Unsat.
PropertyResult check_mode_agreement(const CheckBudget& b);
// repair_model_primitive yields a stemming model of the definitions.
PropertyResult check_repair_primitive(const CheckBudget& b);
// repair_model_stratified yields a stemming model; iteration counts stay
// within (defined atoms of the stratum) x domain size.
PropertyResult check_repair_stratified(const CheckBudget& b);
// A == ~A and A == (all R (all (inv R) (not A))) never reach the definition
// part, and classification matches brute force on both.
PropertyResult check_pitfall_guards(const CheckBudget& b);
// syntactically_monotone implies monotone_bounded.
PropertyResult check_monotonicity(const CheckBudget& b);
// nnf and complement preserve (negate) extensions.
PropertyResult check_nnf(const CheckBudget& b);
// parse(render(t)) == t
PropertyResult check_round_trip(const CheckBudget& b);
// Canonical witnesses are witnesses, and unfolded iff the interpretation is
// a model.
PropertyResult check_canonical_witness(const CheckBudget& b);
// Every unfolded pre-witness has a stemming model of t.
PropertyResult check_correct_absorption(const CheckBudget& b);
// Labels holding all internalisation concepts of t admit a stemming model.
PropertyResult check_internalised_witness(const CheckBudget& b);
// Hierarchies agree across modes and between pruned and exhaustive testing.
PropertyResult check_classification(const CheckBudget& b);

CheckReport run_check_suite(const CheckBudget& b);

std::string render(const PropertyResult& p);
std::string render(const CheckReport& r);

}  // namespace dlr

#endif  // DLR_CHECK_SUITE_HPP
