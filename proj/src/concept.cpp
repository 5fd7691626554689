#include "dlr/concept.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace dlr {
namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

bool is_keyword(const std::string& name) { return name == "top" || name == "bottom"; }

}  // namespace

Concept::Concept() : Concept(top()) {}

Concept Concept::make(ConceptKind kind, std::string name, RoleExpr role, std::vector<Concept> args) {
  std::size_t h = mix(0, static_cast<std::size_t>(kind));
  h = mix(h, std::hash<std::string>{}(name));
  h = mix(h, std::hash<std::string>{}(role.name()));
  h = mix(h, role.is_inverse() ? 1 : 2);
  for (const auto& a : args) h = mix(h, a.hash());
  return Concept(std::make_shared<const Node>(
      Node{kind, std::move(name), std::move(role), std::move(args), h}));
}

Concept Concept::top() {
  static const Concept t = make(ConceptKind::Top, {}, {}, {});
  return t;
}

Concept Concept::bottom() {
  static const Concept b = make(ConceptKind::Bottom, {}, {}, {});
  return b;
}

Concept Concept::atom(std::string name) { return make(ConceptKind::Atom, std::move(name), {}, {}); }

Concept Concept::negation(Concept operand) {
  return make(ConceptKind::Not, {}, {}, {std::move(operand)});
}

Concept Concept::nary(ConceptKind kind, std::vector<Concept> args) {
  const ConceptKind neutral = kind == ConceptKind::And ? ConceptKind::Top : ConceptKind::Bottom;
  const ConceptKind absorbing = kind == ConceptKind::And ? ConceptKind::Bottom : ConceptKind::Top;

  std::vector<Concept> flat;
  std::unordered_set<Concept, ConceptHash> seen;
  std::function<void(const Concept&)> push = [&](const Concept& c) {
    if (c.kind() == kind) {
      for (const auto& a : c.args()) push(a);
      return;
    }
    if (c.kind() == neutral) return;
    if (seen.insert(c).second) flat.push_back(c);
  };
  for (const auto& a : args) push(a);

  for (const auto& a : flat)
    if (a.kind() == absorbing) return a;
  if (flat.empty()) return kind == ConceptKind::And ? top() : bottom();
  if (flat.size() == 1) return flat.front();
  return make(kind, {}, {}, std::move(flat));
}

Concept Concept::conjunction(std::vector<Concept> args) { return nary(ConceptKind::And, std::move(args)); }
Concept Concept::disjunction(std::vector<Concept> args) { return nary(ConceptKind::Or, std::move(args)); }

Concept Concept::exists(RoleExpr role, Concept filler) {
  return make(ConceptKind::Exists, {}, std::move(role), {std::move(filler)});
}

Concept Concept::forall(RoleExpr role, Concept filler) {
  return make(ConceptKind::Forall, {}, std::move(role), {std::move(filler)});
}

std::size_t Concept::depth() const {
  if (is_literal()) return 0;
  std::size_t d = 0;
  for (const auto& a : args()) d = std::max(d, a.depth());
  return args().empty() ? 0 : d + 1;
}

bool operator==(const Concept& a, const Concept& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.name() != b.name() || a.role() != b.role())
    return false;
  return std::ranges::equal(a.args(), b.args());
}

std::strong_ordering operator<=>(const Concept& a, const Concept& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.name().compare(b.name()); c != 0) return c <=> 0;
  if (auto c = a.role() <=> b.role(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.args().begin(), a.args().end(),
                                                b.args().begin(), b.args().end());
}

void Signature::merge(const Signature& other) {
  atoms.insert(other.atoms.begin(), other.atoms.end());
  roles.insert(other.roles.begin(), other.roles.end());
}

Signature signature_of(const Concept& c) {
  Signature sig;
  std::function<void(const Concept&)> walk = [&](const Concept& x) {
    if (x.is_atom()) sig.atoms.insert(x.name());
    if (x.kind() == ConceptKind::Exists || x.kind() == ConceptKind::Forall)
      sig.roles.insert(x.role().name());
    for (const auto& a : x.args()) walk(a);
  };
  walk(c);
  return sig;
}

Signature signature_of(const Axiom& ax) {
  Signature sig = signature_of(ax.lhs);
  sig.merge(signature_of(ax.rhs));
  return sig;
}

Signature TBox::signature() const {
  Signature sig;
  for (const auto& ax : axioms) sig.merge(signature_of(ax));
  return sig;
}

bool uses_inverse_roles(const Concept& c) {
  if ((c.kind() == ConceptKind::Exists || c.kind() == ConceptKind::Forall) && c.role().is_inverse())
    return true;
  return std::ranges::any_of(c.args(), [](const Concept& a) { return uses_inverse_roles(a); });
}

bool uses_inverse_roles(const TBox& t) {
  return std::ranges::any_of(t.axioms, [](const Axiom& ax) {
    return uses_inverse_roles(ax.lhs) || uses_inverse_roles(ax.rhs);
  });
}

namespace {

Concept negate_nnf(const Concept& c);

Concept to_nnf(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::Top:
    case ConceptKind::Bottom:
    case ConceptKind::Atom:
      return c;
    case ConceptKind::Not:
      return negate_nnf(c.operand());
    case ConceptKind::And:
    case ConceptKind::Or: {
      std::vector<Concept> args;
      args.reserve(c.args().size());
      for (const auto& a : c.args()) args.push_back(to_nnf(a));
      return c.kind() == ConceptKind::And ? Concept::conjunction(std::move(args))
                                          : Concept::disjunction(std::move(args));
    }
    case ConceptKind::Exists:
      return Concept::exists(c.role(), to_nnf(c.filler()));
    case ConceptKind::Forall:
      return Concept::forall(c.role(), to_nnf(c.filler()));
  }
  return c;
}

// nnf(Not c)
Concept negate_nnf(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::Top:
      return Concept::bottom();
    case ConceptKind::Bottom:
      return Concept::top();
    case ConceptKind::Atom:
      return Concept::negation(c);
    case ConceptKind::Not:
      return to_nnf(c.operand());
    case ConceptKind::And:
    case ConceptKind::Or: {
      std::vector<Concept> args;
      args.reserve(c.args().size());
      for (const auto& a : c.args()) args.push_back(negate_nnf(a));
      return c.kind() == ConceptKind::And ? Concept::disjunction(std::move(args))
                                          : Concept::conjunction(std::move(args));
    }
    case ConceptKind::Exists:
      return Concept::forall(c.role(), negate_nnf(c.filler()));
    case ConceptKind::Forall:
      return Concept::exists(c.role(), negate_nnf(c.filler()));
  }
  return c;
}

}  // namespace

Concept nnf(const Concept& c) { return to_nnf(c); }
Concept complement(const Concept& c) { return negate_nnf(c); }

bool is_nnf(const Concept& c) {
  if (c.kind() == ConceptKind::Not) return c.operand().is_atom();
  return std::ranges::all_of(c.args(), [](const Concept& a) { return is_nnf(a); });
}

std::vector<Concept> axiom_internalisation_concepts(const Axiom& ax) {
  auto implication = [](const Concept& a, const Concept& b) {
    return nnf(Concept::disjunction({Concept::negation(a), b}));
  };
  if (ax.kind == AxiomKind::Sub) return {implication(ax.lhs, ax.rhs)};
  return {implication(ax.lhs, ax.rhs), implication(ax.rhs, ax.lhs)};
}

std::vector<Concept> internalisation_concepts(const TBox& t) {
  std::vector<Concept> out;
  for (const auto& ax : t.axioms)
    for (auto& c : axiom_internalisation_concepts(ax)) out.push_back(std::move(c));
  return out;
}

std::set<std::string> defined_atoms(const TBox& t) {
  std::set<std::string> out;
  for (const auto& ax : t.axioms)
    if (ax.lhs.is_atom()) out.insert(ax.lhs.name());
  return out;
}

bool syntactically_monotone(const Concept& c, const std::string& atom) {
  const Concept forbidden = Concept::negation(Concept::atom(atom));
  std::function<bool(const Concept&)> occurs = [&](const Concept& x) {
    if (x == forbidden) return true;
    return std::ranges::any_of(x.args(), occurs);
  };
  return !occurs(nnf(c));
}

std::vector<Concept> subconcepts(const Concept& c) {
  std::vector<Concept> out;
  std::unordered_set<Concept, ConceptHash> seen;
  std::function<void(const Concept&)> walk = [&](const Concept& x) {
    if (seen.contains(x)) return;
    for (const auto& a : x.args()) walk(a);
    if (seen.insert(x).second) out.push_back(x);
  };
  walk(c);
  return out;
}

std::string render(const RoleExpr& r) {
  return r.is_inverse() ? "(inv " + r.name() + ")" : r.name();
}

std::string render(const Concept& c) {
  auto nary = [&](const char* op) {
    std::string s = std::string("(") + op;
    for (const auto& a : c.args()) s += " " + render(a);
    return s + ")";
  };
  switch (c.kind()) {
    case ConceptKind::Top:
      return "top";
    case ConceptKind::Bottom:
      return "bottom";
    case ConceptKind::Atom:
      return c.name();
    case ConceptKind::Not:
      return "(not " + render(c.operand()) + ")";
    case ConceptKind::And:
      return nary("and");
    case ConceptKind::Or:
      return nary("or");
    case ConceptKind::Exists:
      return "(some " + render(c.role()) + " " + render(c.filler()) + ")";
    case ConceptKind::Forall:
      return "(all " + render(c.role()) + " " + render(c.filler()) + ")";
  }
  return {};
}

std::string render(const Axiom& ax) {
  const bool atomic = ax.lhs.is_atom() && !is_keyword(ax.lhs.name());
  if (ax.kind == AxiomKind::Eq)
    return (atomic ? "(define-concept " : "(equal ") + render(ax.lhs) + " " + render(ax.rhs) + ")";
  return (atomic ? "(define-primitive-concept " : "(implies ") + render(ax.lhs) + " " +
         render(ax.rhs) + ")";
}

std::string render(const TBox& t) {
  std::string out;
  for (const auto& ax : t.axioms) out += render(ax) + "\n";
  return out;
}

}  // namespace dlr
