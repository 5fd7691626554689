// Brute-force semantics on small finite structures.
//
// Everything here is ground truth for the rest of the library: concept
// evaluation, TBox satisfaction, exhaustive enumeration of interpretations up
// to a domain bound, witness conditions, and the two model-repair
// constructions that turn an unfolded witness into a model.
//
// Bounded answers are one-sided: a disagreement or a model found is a
// definite result, agreement or absence within the bound is evidence only.
// Enumeration budgets are configuration; exceeding one throws BudgetExceeded
// rather than silently searching less.

#ifndef DLR_SEMANTICS_HPP
#define DLR_SEMANTICS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dlr/absorption.hpp"
#include "dlr/concept.hpp"

namespace dlr {

using ElementSet = std::set<int>;
using EdgeSet = std::set<std::pair<int, int>>;

// Elements are 0..domain_size-1. Atoms and roles that are absent from the
// maps have empty extensions.
struct FiniteInterpretation {
  int domain_size = 1;
  std::map<std::string, ElementSet> atom_ext;
  std::map<std::string, EdgeSet> role_ext;

  const ElementSet& atom(const std::string& name) const;
  const EdgeSet& role(const std::string& name) const;
  // Throws std::invalid_argument when an element index is out of range.
  void validate() const;

  // Equality ignores atoms/roles mapped to the empty set.
  friend bool operator==(const FiniteInterpretation& a, const FiniteInterpretation& b);
};

std::string render(const FiniteInterpretation& i);

struct LabeledStructure {
  int domain_size = 1;
  std::map<std::string, EdgeSet> role_ext;
  std::vector<std::set<Concept>> labels;  // one per element

  // Structure with n elements, no edges and empty labels.
  static LabeledStructure empty(int n);
  bool clash_free() const;
  // {x | c in labels(x)}
  ElementSet carrying(const Concept& c) const;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleBudget {
  // Bits of interpretation state per enumeration:
  // |atoms| * max_domain + |roles| * max_domain^2.
  int interpretation_bits = 24;
  // Stemming completions examined by is_witness.
  std::uint64_t completions = std::uint64_t{1} << 20;
};

ElementSet eval(const FiniteInterpretation& i, const Concept& c);
bool satisfies(const FiniteInterpretation& i, const Axiom& ax);
bool satisfies(const FiniteInterpretation& i, const TBox& t);

// Number of interpretations enumerate_interpretations visits.
std::uint64_t interpretation_count(const Signature& sig, int max_domain);

// Every interpretation over sig with domain 1..max_domain, each exactly once,
// in a fixed order. The visitor returns false to stop early. Returns the
// number visited.
std::uint64_t enumerate_interpretations(const Signature& sig, int max_domain,
                                        const std::function<bool(const FiniteInterpretation&)>& visit,
                                        const OracleBudget& budget = {});

struct EquivalenceResult {
  bool equivalent = true;
  std::optional<FiniteInterpretation> counterexample;
  std::uint64_t checked = 0;

  explicit operator bool() const { return equivalent; }
};

EquivalenceResult equivalent_bounded(const TBox& t1, const TBox& t2, const Signature& sig, int max_domain,
                                     const OracleBudget& budget = {});

// Several candidates against one reference in a single sweep; one result per
// candidate.
std::vector<EquivalenceResult> equivalent_bounded_all(const TBox& reference, const std::vector<TBox>& candidates,
                                                      const Signature& sig, int max_domain,
                                                      const OracleBudget& budget = {});

// Some I |= t with c^I non-empty and domain <= max_domain, over sig(c) u sig(t).
std::optional<FiniteInterpretation> sat_bruteforce(const Concept& c, const TBox& t, int max_domain,
                                                   const OracleBudget& budget = {});

// X1 subset X2 implies c^{I[a->X1]} subset c^{I[a->X2]}, for every enumerated I.
bool monotone_bounded(const Concept& c, const std::string& atom, const Signature& sig, int max_domain,
                      const OracleBudget& budget = {});

bool stems_from(const FiniteInterpretation& i, const LabeledStructure& w);

// W1: c labels some element. W2: some interpretation stems from w (here:
// clash-freeness). W3: every stemming interpretation makes every label true
// where it is placed.
bool is_witness(const LabeledStructure& w, const Concept& c, const OracleBudget& budget = {});
// W2 and W3 only.
bool is_pre_witness(const LabeledStructure& w, const OracleBudget& budget = {});

// Condition (*): Tu entries fire wherever their literal is present, Tg
// concepts are everywhere.
bool is_unfolded(const LabeledStructure& w, const Absorption& absorption);

// Some interpretation stemming from w satisfies t (exhaustive over the free
// literal choices).
std::optional<FiniteInterpretation> admissible_completion(const LabeledStructure& w, const TBox& t,
                                                          const OracleBudget& budget = {});

// labels(x) = {D in closure | x in D^I}
LabeledStructure canonical_witness(const FiniteInterpretation& i, const std::vector<Concept>& closure);

// Every concept a downstream check may look at for (t, query): subconcepts of
// the TBox and query, NNFs and complements of those, Tu right-hand sides,
// literals, and Tg concepts.
std::vector<Concept> oracle_closure(const TBox& t, const Absorption& a, const std::vector<Concept>& extra = {});

enum class RepairErrorKind { Cyclic, NotLinearised, NotUnfolded, Clash, InvalidStratification, Malformed };

class RepairError : public std::runtime_error {
 public:
  RepairError(RepairErrorKind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  RepairErrorKind kind() const { return kind_; }

 private:
  RepairErrorKind kind_;
};

// Interpretation read off the positive literals of w.
FiniteInterpretation initial_interpretation(const LabeledStructure& w, const std::vector<Axiom>& defs = {});

// Topological order of a primitive definition list (used atoms first).
std::vector<Axiom> linearise(std::span<const Axiom> tprim);

// Iterative repair for a primitive TBox given in "uses" order: starting from
// initial_interpretation(w), set A_i := D_i one definition at a time.
FiniteInterpretation repair_model_primitive(const LabeledStructure& w, const std::vector<Axiom>& tprim);

struct RepairStats {
  // Strictly increasing fixed-point steps per stratum.
  std::vector<int> iterations;
};

// Per stratum, the least fixed point of
//   (X_1..X_m) -> ((A_j)^W u D_j^{I[A->X]}) \ (~A_j)^W
// reached by Kleene iteration from the empty tuple.
FiniteInterpretation repair_model_stratified(const LabeledStructure& w,
                                             const std::vector<std::vector<Axiom>>& strata,
                                             RepairStats* stats = nullptr);

}  // namespace dlr

#endif  // DLR_SEMANTICS_HPP
