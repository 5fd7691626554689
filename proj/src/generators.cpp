#include "dlr/generators.hpp"

#include <algorithm>
#include <stdexcept>

namespace dlr {

namespace {

Concept atom(const std::string& a) { return Concept::atom(a); }
Concept neg(const Concept& c) { return Concept::negation(c); }

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::vector<std::string> names(const std::string& prefix, int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

TBox gen_cyclic_pairs(int k) {
  if (k < 0) throw std::invalid_argument("pair count must be non-negative");
  TBox t;
  for (int i = 1; i <= k; ++i) {
    const std::string s = "_" + std::to_string(i);
    const RoleExpr performs = RoleExpr::named("performs" + s);
    const RoleExpr uses = RoleExpr::named("uses" + s);
    t.axioms.push_back(Axiom::eq(atom("procedure" + s),
                                 Concept::conjunction({atom("Procedure"), Concept::exists(uses, atom("Instrument"))})));
    t.axioms.push_back(Axiom::eq(atom("surgeon" + s),
                                 Concept::conjunction({atom("Surgeon"), Concept::exists(performs, atom("procedure" + s))})));
    t.axioms.push_back(Axiom::eq(atom("specialist" + s),
                                 Concept::conjunction({atom("Surgeon"), Concept::exists(performs, atom("Procedure"))})));
    t.axioms.push_back(Axiom::eq(
        atom("o-procedure" + s),
        Concept::conjunction({atom("procedure" + s), Concept::exists(performs.inverse(), atom("o-surgeon" + s))})));
    t.axioms.push_back(Axiom::eq(
        atom("o-surgeon" + s),
        Concept::conjunction({atom("surgeon" + s), Concept::forall(performs, atom("o-procedure" + s))})));
  }
  return t;
}

TBox gen_galen_like(int d, int g, std::uint64_t seed) {
  if (d < 0 || g < 0) throw std::invalid_argument("generator sizes must be non-negative");
  Rng rng(seed);
  const std::vector<std::string> roles = {"has-part", "located-in", "acts-on"};
  const auto base = names("base", std::max(6, d / 2));
  std::vector<std::string> defined;
  std::vector<int> depth;     // longest uses-chain below each definition
  std::vector<int> children;  // tree children per definition

  // A name usable at depth < 4, or a base atom.
  auto operand = [&](bool allow_defined) {
    if (allow_defined && !defined.empty() && chance(rng, 0.5)) {
      for (int tries = 0; tries < 8; ++tries) {
        const auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(defined.size()) - 1));
        if (depth[j] < 4) return std::pair{defined[j], depth[j] + 1};
      }
    }
    return std::pair{pick(rng, base), 1};
  };

  TBox t;
  for (int i = 0; i < d; ++i) {
    // Every definition carries its own primitive marker, the usual encoding
    // of a primitive concept as a definition.
    std::vector<Concept> parts{atom("p" + std::to_string(i))};
    int deep = 1;
    // Tree parent: an earlier definition with room for another child.
    std::vector<std::size_t> open;
    for (std::size_t j = 0; j < defined.size(); ++j)
      if (children[j] < 3 && depth[j] < 4) open.push_back(j);
    if (!open.empty() && chance(rng, 0.7)) {
      const std::size_t p = pick(rng, open);
      ++children[p];
      parts.push_back(atom(defined[p]));
      deep = std::max(deep, depth[p] + 1);
    }
    // One or two restrictions; with the parent at most three named operands.
    const int extra = uniform(rng, 1, 2);
    for (int k = 0; k < extra; ++k) {
      auto [name, dd] = operand(true);
      deep = std::max(deep, dd);
      const RoleExpr r = RoleExpr::named(pick(rng, roles));
      parts.push_back(chance(rng, 0.7) ? Concept::exists(r, atom(name)) : Concept::forall(r, atom(name)));
    }
    const std::string name = "c" + std::to_string(i);
    t.axioms.push_back(Axiom::eq(atom(name), Concept::conjunction(parts)));
    defined.push_back(name);
    depth.push_back(deep);
    children.push_back(0);
  }

  std::vector<std::string> introduced = defined;
  introduced.insert(introduced.end(), base.begin(), base.end());
  for (int i = 0; i < g; ++i) {
    const std::string a = defined.empty() ? pick(rng, base) : pick(rng, defined);
    const std::string b = pick(rng, introduced);
    const std::string c = pick(rng, base);
    const RoleExpr r = RoleExpr::named(pick(rng, roles));
    t.axioms.push_back(Axiom::sub(Concept::conjunction({atom(a), Concept::exists(r, atom(b))}), atom(c)));
  }
  return t;
}

Concept random_concept(Rng& rng, const ConceptShape& shape) {
  auto positive_only = [&](const std::string& a) {
    return std::ranges::find(shape.positive_only, a) != shape.positive_only.end();
  };
  // positive: the concept ends up under an even number of negations.
  auto gen = [&](auto& self, int depth, bool positive) -> Concept {
    const bool leaf = depth == 0 || chance(rng, 0.3);
    if (leaf || shape.atoms.empty()) {
      if (shape.atoms.empty() || chance(rng, 0.05)) return chance(rng, 0.5) ? Concept::top() : Concept::bottom();
      const std::string& a = pick(rng, shape.atoms);
      const bool negate = chance(rng, 0.35);
      if (positive_only(a)) return positive ? atom(a) : neg(atom(a));
      return negate ? neg(atom(a)) : atom(a);
    }
    const int op = uniform(rng, 0, shape.roles.empty() ? 2 : 4);
    switch (op) {
      case 0: {
        if (!shape.positive_only.empty()) return self(self, depth - 1, positive);
        return neg(self(self, depth - 1, !positive));
      }
      case 1:
      case 2: {
        std::vector<Concept> args;
        const int n = uniform(rng, 2, 3);
        for (int k = 0; k < n; ++k) args.push_back(self(self, depth - 1, positive));
        return op == 1 ? Concept::conjunction(std::move(args)) : Concept::disjunction(std::move(args));
      }
      default: {
        RoleExpr r = RoleExpr::named(pick(rng, shape.roles));
        if (shape.inverse_roles && chance(rng, 0.3)) r = r.inverse();
        Concept f = self(self, depth - 1, positive);
        return op == 3 ? Concept::exists(std::move(r), std::move(f)) : Concept::forall(std::move(r), std::move(f));
      }
    }
  };
  return gen(gen, shape.max_depth, true);
}

TBox random_tbox(Rng& rng, const TBoxShape& shape) {
  // Signature first, within the enumeration budget.
  int roles = uniform(rng, 0, shape.max_roles);
  while (roles > 0 && 9 * roles + 3 > shape.max_bits) --roles;
  const int max_atoms = std::max(1, std::min(shape.max_atoms, (shape.max_bits - 9 * roles) / 3));
  const int atoms = uniform(rng, 1, max_atoms);
  ConceptShape cs;
  cs.atoms = {"A", "B", "C", "D", "E"};
  cs.atoms.resize(static_cast<std::size_t>(std::min(atoms, 5)));
  cs.roles = {"R", "S"};
  cs.roles.resize(static_cast<std::size_t>(roles));
  cs.max_depth = shape.max_depth;

  auto small = [&](int depth) {
    ConceptShape s = cs;
    s.max_depth = depth;
    return random_concept(rng, s);
  };

  TBox t;
  const int n = uniform(rng, 1, shape.max_axioms);
  for (int i = 0; i < n; ++i) {
    const Concept a = atom(pick(rng, cs.atoms));
    const int kind = uniform(rng, 0, 99);
    if (kind < 35) {
      t.axioms.push_back(Axiom::eq(a, small(uniform(rng, 0, shape.max_depth))));
    } else if (kind < 55) {
      t.axioms.push_back(Axiom::sub(a, small(uniform(rng, 0, shape.max_depth))));
    } else if (kind < 80) {
      t.axioms.push_back(Axiom::sub(small(uniform(rng, 1, shape.max_depth)), small(uniform(rng, 0, shape.max_depth))));
    } else if (kind < 90) {
      t.axioms.push_back(Axiom::eq(small(uniform(rng, 1, shape.max_depth)), small(uniform(rng, 0, shape.max_depth))));
    } else if (cs.roles.empty() || chance(rng, 0.5)) {
      t.axioms.push_back(Axiom::eq(a, neg(a)));
    } else {
      const RoleExpr r = RoleExpr::named(pick(rng, cs.roles));
      t.axioms.push_back(Axiom::eq(a, Concept::forall(r, Concept::forall(r.inverse(), neg(a)))));
    }
  }
  return t;
}

Concept random_query(Rng& rng, const TBox& t, const TBoxShape& shape) {
  const Signature sig = t.signature();
  ConceptShape cs;
  cs.atoms.assign(sig.atoms.begin(), sig.atoms.end());
  cs.roles.assign(sig.roles.begin(), sig.roles.end());
  if (cs.atoms.empty()) cs.atoms = {"A"};
  cs.max_depth = std::min(2, shape.max_depth);
  return random_concept(rng, cs);
}

std::vector<Axiom> random_primitive_definitions(Rng& rng, int defs, int base_atoms, int roles, int depth) {
  const auto base = names("P", base_atoms);
  const auto defined = names("A", defs);
  std::vector<Axiom> out;
  for (int i = 0; i < defs; ++i) {
    ConceptShape cs;
    cs.atoms = base;
    cs.atoms.insert(cs.atoms.end(), defined.begin(), defined.begin() + i);
    cs.roles = names("R", roles);
    cs.max_depth = depth;
    out.push_back(Axiom::eq(atom(defined[static_cast<std::size_t>(i)]), random_concept(rng, cs)));
  }
  return out;
}

std::vector<Axiom> random_stratified_definitions(Rng& rng, int defs, int base_atoms, int roles, int depth) {
  const auto base = names("P", base_atoms);
  const auto defined = names("A", defs);
  for (;;) {
    std::vector<Axiom> out;
    for (int i = 0; i < defs; ++i) {
      ConceptShape cs;
      cs.atoms = base;
      cs.atoms.insert(cs.atoms.end(), defined.begin(), defined.end());
      cs.positive_only = defined;
      cs.roles = names("R", roles);
      cs.max_depth = depth;
      out.push_back(Axiom::eq(atom(defined[static_cast<std::size_t>(i)]), random_concept(rng, cs)));
    }
    if (!is_primitive(out) && stratify(out)) return out;
  }
}

std::optional<LabeledStructure> random_unfolded_witness(Rng& rng, const std::vector<Axiom>& defs, int max_nodes) {
  TBox t{defs};
  const Signature sig = t.signature();
  std::vector<std::string> defined, base;
  for (const auto& d : defs) defined.push_back(d.lhs.name());
  for (const auto& a : sig.atoms)
    if (std::ranges::find(defined, a) == defined.end()) base.push_back(a);

  const int n = uniform(rng, 1, max_nodes);
  FiniteInterpretation j;
  j.domain_size = n;
  for (const auto& r : sig.roles)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (chance(rng, 0.35)) j.role_ext[r].emplace(x, y);
  for (const auto& a : base)
    for (int x = 0; x < n; ++x)
      if (chance(rng, 0.5)) j.atom_ext[a].insert(x);

  // Models of defs extending the random base: brute force over defined atoms.
  const std::size_t bits = defined.size() * static_cast<std::size_t>(n);
  if (bits > 20) throw BudgetExceeded("too many defined atoms for witness generation");
  std::vector<FiniteInterpretation> models;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
    FiniteInterpretation m = j;
    for (std::size_t a = 0; a < defined.size(); ++a) {
      ElementSet& ext = m.atom_ext[defined[a]];
      for (int x = 0; x < n; ++x)
        if ((code >> (a * static_cast<std::size_t>(n) + static_cast<std::size_t>(x))) & 1) ext.insert(x);
    }
    if (satisfies(m, t)) models.push_back(std::move(m));
  }
  if (models.empty()) return std::nullopt;
  const FiniteInterpretation& model = pick(rng, models);

  Absorption tu;
  for (const auto& d : defs) tu.tu.add_definition(d.lhs.name(), d.rhs);
  LabeledStructure w = canonical_witness(model, oracle_closure(t, tu));
  // Thin the canonical labels out, keeping every base literal.
  for (auto& label : w.labels)
    std::erase_if(label, [&](const Concept& c) {
      if (c.is_literal() && std::ranges::find(base, c.literal_atom()) != base.end()) return false;
      return !chance(rng, 0.3);
    });

  auto unfold = [&] {
    for (auto& label : w.labels)
      for (bool grew = true; grew;) {
        grew = false;
        std::vector<Concept> add;
        for (const auto& c : label)
          if (c.is_literal())
            for (const auto& d : tu.tu.lookup({c.literal_atom(), c.is_negated_atom()}))
              if (!label.contains(d)) add.push_back(d);
        for (auto& c : add) grew = label.insert(std::move(c)).second || grew;
      }
  };
  unfold();
  while (!is_pre_witness(w)) {
    // Pin one more defined literal to its value in the model.
    std::vector<std::pair<int, std::string>> free;
    for (int x = 0; x < n; ++x)
      for (const auto& a : defined) {
        const auto& label = w.labels[static_cast<std::size_t>(x)];
        if (!label.contains(atom(a)) && !label.contains(neg(atom(a)))) free.emplace_back(x, a);
      }
    if (free.empty()) throw std::logic_error("fully pinned structure is not a witness");
    const auto& [x, a] = pick(rng, free);
    const bool in = model.atom(a).contains(x);
    w.labels[static_cast<std::size_t>(x)].insert(in ? atom(a) : neg(atom(a)));
    unfold();
  }
  return w;
}

}  // namespace dlr
