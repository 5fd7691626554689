// TBox absorption.
//
// A TBox T is rewritten into a pair (Tu, Tg) with T equivalent to Tu u Tg:
// Tu only holds literal-guarded axioms A [= D and ~A [= D, which a tableau can
// unfold lazily (deterministically, and only when the literal shows up in a
// label); Tg holds the residue, which has to be internalised into every node.
//
// The pipeline runs in two phases:
//
//   1. distribute: walk the axioms in order and route each one into Tprim
//      (unique, acyclic -- or in enhanced mode, stratified -- atomic
//      definitions), Tinc (atomic inclusions whose atom Tprim does not define)
//      or Tg.
//   2. absorb_clause: view every Tg axiom C [= D as the clause {D, ~C} and try
//      to turn it into an inclusion A [= (G \ {~A}) for some undefined atom A,
//      simplifying and unfolding Tprim definitions along the way.
//
// Tu is then {A [= D, ~A [= ~D | A == D in Tprim} u Tinc.

#ifndef DLR_ABSORPTION_HPP
#define DLR_ABSORPTION_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dlr/concept.hpp"

namespace dlr {

enum class AbsorptionMode : std::uint8_t { None, Basic, Enhanced };

std::string_view to_string(AbsorptionMode mode);
// Accepts "none", "basic" and "enhanced"; throws std::invalid_argument otherwise.
AbsorptionMode parse_absorption_mode(std::string_view text);

// The universal axiom top [= (d1 | ... | dn). Disjuncts are kept in insertion
// order without duplicates.
struct Clause {
  std::vector<Concept> disjuncts;

  // Splits a top-level disjunction into its arguments.
  static Clause from_concept(const Concept& c);
  // Clause for C [= D: {nnf(D), complement(C)}.
  static Clause from_inclusion(const Concept& lhs, const Concept& rhs);

  Concept as_concept() const { return Concept::disjunction(disjuncts); }
  bool contains(const Concept& c) const;
  // Adds c unless already present.
  void add(Concept c);

  friend bool operator==(const Clause&, const Clause&) = default;
};

struct LiteralKey {
  std::string atom;
  bool negative = false;

  static LiteralKey pos(std::string a) { return {std::move(a), false}; }
  static LiteralKey neg(std::string a) { return {std::move(a), true}; }
  Concept as_concept() const;

  friend bool operator==(const LiteralKey&, const LiteralKey&) = default;
  friend std::strong_ordering operator<=>(const LiteralKey&, const LiteralKey&) = default;
};

enum class AtomOrigin : std::uint8_t { Definitional, InclusionOnly };

// Tu. Right-hand sides are stored in NNF and read conjunctively.
class UnfoldTable {
 public:
  // A == D: PosAtom(A) -> [D], NegAtom(A) -> [complement(D)].
  void add_definition(const std::string& atom, const Concept& definition);
  // A [= D for an atom without a definition.
  void add_inclusion(const std::string& atom, const Concept& rhs);

  const std::map<LiteralKey, std::vector<Concept>>& entries() const { return entries_; }
  const std::map<std::string, AtomOrigin>& origins() const { return origin_; }
  // Empty when the literal has no entry.
  std::span<const Concept> lookup(const LiteralKey& key) const;
  bool is_definitional(const std::string& atom) const;
  // The defining concept of a definitional atom.
  const Concept& definition(const std::string& atom) const;
  // Definitions as A == D, in insertion order.
  std::vector<Axiom> definitions() const;
  bool empty() const { return entries_.empty(); }

 private:
  std::map<LiteralKey, std::vector<Concept>> entries_;
  std::map<std::string, AtomOrigin> origin_;
  std::vector<std::string> definition_order_;
};

enum class Disposition : std::uint8_t { Tprim, Tinc, AbsorbedIntoTinc, ResidualTg, SplitThenProcessed };

std::string_view to_string(Disposition d);

// What phase 2 did with one GCI that phase 1 routed to Tg.
struct PartRecord {
  Axiom part;
  Disposition outcome = Disposition::ResidualTg;  // AbsorbedIntoTinc or ResidualTg
  std::string absorbed_on;                        // the guarding atom, when absorbed
};

struct LogRecord {
  Axiom original;
  Disposition disposition = Disposition::ResidualTg;
  std::vector<PartRecord> parts;  // non-empty exactly when the axiom went through Tg
};

struct Absorption {
  AbsorptionMode mode = AbsorptionMode::None;
  UnfoldTable tu;
  std::vector<Clause> tg;
  // Definitional atoms grouped into strata (enhanced mode only).
  std::optional<std::vector<std::vector<std::string>>> strata;
  std::vector<LogRecord> log;
  // Clauses whose phase-2 rewriting ran out of fuel.
  int fuel_exhausted = 0;

  // Internalisation concepts of Tg, one per clause.
  std::vector<Concept> tg_concepts() const;
};

// Unique atomic left-hand sides and an acyclic "uses" relation (no self-use).
bool is_primitive(std::span<const Axiom> defs);

// Strongly connected components of the "uses" graph in dependency order
// (callees first), provided every definition of a component is syntactically
// monotone in every atom that component defines. Requires unique atomic
// left-hand sides; returns nullopt otherwise or when the monotonicity test
// fails.
std::optional<std::vector<std::vector<Axiom>>> stratify(std::span<const Axiom> defs);

struct Distribution {
  std::vector<Axiom> tprim;
  std::vector<Axiom> tinc;
  std::vector<Axiom> tg;
  // For each input axiom: where it went, plus the indices into tg it produced.
  std::vector<Disposition> routing;
  std::vector<std::vector<std::size_t>> tg_parts;
};

struct AbsorbOptions {
  // Upper bound on rewrite steps per clause in phase 2.
  int fuel = 10'000;
  // Negative control only: accept every atomic definition into Tprim without
  // the primitivity/stratification test. Produces incorrect absorptions.
  bool skip_definition_check = false;
};

Distribution distribute(const TBox& t, AbsorptionMode mode, const AbsorbOptions& options = {});

struct ClauseOutcome {
  bool absorbed = false;
  std::string atom;     // guarding atom when absorbed
  Axiom inclusion;      // atom [= disjunction of the rest, when absorbed
  Clause residual;      // rewritten clause when absorption failed
  int steps = 0;
  bool fuel_exhausted = false;
};

ClauseOutcome absorb_clause(Clause g, std::span<const Axiom> tprim, int fuel = 10'000);

Absorption absorb(const TBox& t, AbsorptionMode mode, const AbsorbOptions& options = {});

// Tu u Tg as plain axioms: definitional atoms give A == D, the remaining Tu
// entries A [= D, and each Tg clause top [= (d1 | ... | dn).
TBox reconstruct_axioms(const Absorption& a);

// Human-readable dump: Tu definitions, Tu inclusions, Tg, disposition log.
std::string render(const Absorption& a);

}  // namespace dlr

#endif  // DLR_ABSORPTION_HPP
