// Concept and axiom syntax for ALC with inverse roles.
//
// Concepts are immutable, structurally compared values. Each value holds a
// shared pointer to a node with a cached hash, so copies are cheap and equal
// subtrees compare in O(1) when their hashes differ.
//
// The n-ary constructors normalise eagerly: nested conjunctions (disjunctions)
// are flattened, duplicates are removed keeping the first occurrence, the
// neutral element is dropped, the absorbing element wins, and a singleton
// collapses to its argument. Every And/Or value therefore has >= 2 arguments.

#ifndef DLR_CONCEPT_HPP
#define DLR_CONCEPT_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace dlr {

// A role name, possibly inverted. Inversion only ever applies to a named role.
class RoleExpr {
 public:
  RoleExpr() = default;
  static RoleExpr named(std::string name) { return RoleExpr(std::move(name), false); }
  static RoleExpr inverse_of(std::string name) { return RoleExpr(std::move(name), true); }

  const std::string& name() const { return name_; }
  bool is_inverse() const { return inverse_; }
  // inv(inv(R)) == R
  RoleExpr inverse() const { return RoleExpr(name_, !inverse_); }

  friend bool operator==(const RoleExpr&, const RoleExpr&) = default;
  friend std::strong_ordering operator<=>(const RoleExpr&, const RoleExpr&) = default;

 private:
  RoleExpr(std::string name, bool inverse) : name_(std::move(name)), inverse_(inverse) {}
  std::string name_;
  bool inverse_ = false;
};

enum class ConceptKind : std::uint8_t { Top, Bottom, Atom, Not, And, Or, Exists, Forall };

class Concept {
 public:
  // Default-constructed concepts are Top.
  Concept();

  static Concept top();
  static Concept bottom();
  static Concept atom(std::string name);
  static Concept negation(Concept operand);
  static Concept conjunction(std::vector<Concept> args);
  static Concept disjunction(std::vector<Concept> args);
  static Concept exists(RoleExpr role, Concept filler);
  static Concept forall(RoleExpr role, Concept filler);

  ConceptKind kind() const { return node_->kind; }
  // Atom name; empty for every other kind.
  const std::string& name() const { return node_->name; }
  // Role of an Exists/Forall.
  const RoleExpr& role() const { return node_->role; }
  // And/Or arguments; the single operand of Not; the filler of Exists/Forall.
  std::span<const Concept> args() const { return node_->args; }
  const Concept& operand() const { return node_->args.front(); }
  const Concept& filler() const { return node_->args.front(); }

  bool is_atom() const { return kind() == ConceptKind::Atom; }
  bool is_negated_atom() const {
    return kind() == ConceptKind::Not && operand().kind() == ConceptKind::Atom;
  }
  bool is_literal() const { return is_atom() || is_negated_atom(); }
  // Name of the atom under a literal.
  const std::string& literal_atom() const { return is_atom() ? name() : operand().name(); }

  std::size_t hash() const { return node_->hash; }
  // Constructor nesting; literals have depth 0.
  std::size_t depth() const;

  friend bool operator==(const Concept& a, const Concept& b);
  friend std::strong_ordering operator<=>(const Concept& a, const Concept& b);

 private:
  struct Node {
    ConceptKind kind;
    std::string name;
    RoleExpr role;
    std::vector<Concept> args;
    std::size_t hash;
  };
  explicit Concept(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Concept make(ConceptKind kind, std::string name, RoleExpr role, std::vector<Concept> args);
  static Concept nary(ConceptKind kind, std::vector<Concept> args);

  std::shared_ptr<const Node> node_;
};

struct ConceptHash {
  std::size_t operator()(const Concept& c) const { return c.hash(); }
};

enum class AxiomKind : std::uint8_t { Sub, Eq };

struct Axiom {
  AxiomKind kind = AxiomKind::Sub;
  Concept lhs;
  Concept rhs;

  static Axiom sub(Concept lhs, Concept rhs) { return {AxiomKind::Sub, std::move(lhs), std::move(rhs)}; }
  static Axiom eq(Concept lhs, Concept rhs) { return {AxiomKind::Eq, std::move(lhs), std::move(rhs)}; }

  friend bool operator==(const Axiom&, const Axiom&) = default;
};

struct Signature {
  std::set<std::string> atoms;
  std::set<std::string> roles;

  void merge(const Signature& other);
  friend bool operator==(const Signature&, const Signature&) = default;
};

// Ordered list of axioms; order is significant for absorption.
struct TBox {
  std::vector<Axiom> axioms;

  Signature signature() const;
  bool empty() const { return axioms.empty(); }
  std::size_t size() const { return axioms.size(); }
  friend bool operator==(const TBox&, const TBox&) = default;
};

Signature signature_of(const Concept& c);
Signature signature_of(const Axiom& ax);
bool uses_inverse_roles(const Concept& c);
bool uses_inverse_roles(const TBox& t);

// Negation normal form: Not only ever applied directly to an Atom.
Concept nnf(const Concept& c);
// nnf(Not c)
Concept complement(const Concept& c);
bool is_nnf(const Concept& c);

// Sub(C1, C2) -> [nnf(~C1 | C2)]; Eq(C1, C2) adds nnf(~C2 | C1).
std::vector<Concept> axiom_internalisation_concepts(const Axiom& ax);
std::vector<Concept> internalisation_concepts(const TBox& t);

// Atoms A with an axiom Sub(A, _) or Eq(A, _).
std::set<std::string> defined_atoms(const TBox& t);

// True iff Not(Atom a) does not occur in nnf(c).
bool syntactically_monotone(const Concept& c, const std::string& atom);

// Every subconcept of c (including c), each exactly once, children first.
std::vector<Concept> subconcepts(const Concept& c);

// S-expression rendering in the TBox text syntax.
std::string render(const RoleExpr& r);
std::string render(const Concept& c);
std::string render(const Axiom& ax);
std::string render(const TBox& t);

}  // namespace dlr

template <>
struct std::hash<dlr::Concept> {
  std::size_t operator()(const dlr::Concept& c) const noexcept { return c.hash(); }
};

#endif  // DLR_CONCEPT_HPP
