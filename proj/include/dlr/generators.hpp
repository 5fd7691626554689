// Synthetic terminologies and random instances.
//
// gen_cyclic_pairs and gen_galen_like feed the benchmark; the rest feed the
// property suites. Every generator is a deterministic function of its
// arguments (std::mt19937_64 with explicit seeds, no global state).

#ifndef DLR_GENERATORS_HPP
#define DLR_GENERATORS_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dlr/absorption.hpp"
#include "dlr/concept.hpp"
#include "dlr/semantics.hpp"

namespace dlr {

// k copies of the orthopaedic-procedure pattern with names suffixed _i:
//   procedure_i  == Procedure and (some uses_i Instrument)
//   surgeon_i    == Surgeon and (some performs_i procedure_i)
//   specialist_i == Surgeon and (some performs_i Procedure)
//   o-procedure_i == procedure_i and (some (inv performs_i) o-surgeon_i)
//   o-surgeon_i  == surgeon_i and (all performs_i o-procedure_i)
TBox gen_cyclic_pairs(int k);

// d acyclic definitions (a forest of depth <= 4, fan-in <= 3, over 3 roles
// and a pool of base atoms) followed by g axioms (A and (some R B)) [= C over
// already introduced names. Throws std::invalid_argument on negative sizes.
TBox gen_galen_like(int d, int g, std::uint64_t seed);

using Rng = std::mt19937_64;

struct ConceptShape {
  std::vector<std::string> atoms;
  std::vector<std::string> roles;
  int max_depth = 3;
  bool inverse_roles = true;
  // Atoms that may only occur positively (no negation above them in NNF).
  std::vector<std::string> positive_only;
};

Concept random_concept(Rng& rng, const ConceptShape& shape);

struct TBoxShape {
  int max_axioms = 5;
  int max_atoms = 5;
  int max_roles = 2;
  int max_depth = 3;
  // Upper bound on |atoms| * 3 + |roles| * 9, so that domain-3 enumeration
  // fits the oracle budget.
  int max_bits = 24;
};

// Mixes atomic definitions (some cyclic, some negative), atomic inclusions
// and general axioms.
TBox random_tbox(Rng& rng, const TBoxShape& shape);

// Signature-compatible query concept for t.
Concept random_query(Rng& rng, const TBox& t, const TBoxShape& shape);

// Acyclic definitions A0 == D0, A1 == D1, ... where Di only uses Aj for
// j < i, listed in that (uses-first) order.
std::vector<Axiom> random_primitive_definitions(Rng& rng, int defs, int base_atoms, int roles, int depth);

// Definitions with at least one cycle that still stratify: defined atoms
// occur only positively in right-hand sides.
std::vector<Axiom> random_stratified_definitions(Rng& rng, int defs, int base_atoms, int roles, int depth);

// Clash-free labeled structure with <= max_nodes elements that is unfolded
// w.r.t. the definitions and satisfies the witness conditions. Built from a
// random model J of defs: labels are random concepts true in J, closed under
// unfolding, plus literals of J until every stemming interpretation makes
// the labels true. nullopt if the random J has no model extension.
std::optional<LabeledStructure> random_unfolded_witness(Rng& rng, const std::vector<Axiom>& defs, int max_nodes);

}  // namespace dlr

#endif  // DLR_GENERATORS_HPP
