#include "dlr/absorption.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace dlr {

std::string_view to_string(AbsorptionMode mode) {
  switch (mode) {
    case AbsorptionMode::None:
      return "none";
    case AbsorptionMode::Basic:
      return "basic";
    case AbsorptionMode::Enhanced:
      return "enhanced";
  }
  return "?";
}

AbsorptionMode parse_absorption_mode(std::string_view text) {
  if (text == "none") return AbsorptionMode::None;
  if (text == "basic") return AbsorptionMode::Basic;
  if (text == "enhanced") return AbsorptionMode::Enhanced;
  throw std::invalid_argument("unknown absorption mode '" + std::string(text) + "'");
}

std::string_view to_string(Disposition d) {
  switch (d) {
    case Disposition::Tprim:
      return "Tprim";
    case Disposition::Tinc:
      return "Tinc";
    case Disposition::AbsorbedIntoTinc:
      return "AbsorbedIntoTinc";
    case Disposition::ResidualTg:
      return "ResidualTg";
    case Disposition::SplitThenProcessed:
      return "SplitThenProcessed";
  }
  return "?";
}

Clause Clause::from_concept(const Concept& c) {
  Clause g;
  if (c.kind() == ConceptKind::Or) {
    for (const auto& a : c.args()) g.add(a);
  } else {
    g.add(c);
  }
  return g;
}

Clause Clause::from_inclusion(const Concept& lhs, const Concept& rhs) {
  Clause g;
  g.add(nnf(rhs));
  g.add(complement(lhs));
  return g;
}

bool Clause::contains(const Concept& c) const {
  return std::ranges::find(disjuncts, c) != disjuncts.end();
}

void Clause::add(Concept c) {
  if (!contains(c)) disjuncts.push_back(std::move(c));
}

Concept LiteralKey::as_concept() const {
  Concept a = Concept::atom(atom);
  return negative ? Concept::negation(std::move(a)) : a;
}

void UnfoldTable::add_definition(const std::string& atom, const Concept& definition) {
  if (origin_.contains(atom)) throw std::logic_error("atom '" + atom + "' already has Tu entries");
  origin_[atom] = AtomOrigin::Definitional;
  entries_[LiteralKey::pos(atom)] = {nnf(definition)};
  entries_[LiteralKey::neg(atom)] = {complement(definition)};
  definition_order_.push_back(atom);
}

void UnfoldTable::add_inclusion(const std::string& atom, const Concept& rhs) {
  auto [it, inserted] = origin_.try_emplace(atom, AtomOrigin::InclusionOnly);
  if (!inserted && it->second == AtomOrigin::Definitional)
    throw std::logic_error("atom '" + atom + "' is definitional; cannot add an inclusion");
  entries_[LiteralKey::pos(atom)].push_back(nnf(rhs));
}

std::span<const Concept> UnfoldTable::lookup(const LiteralKey& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return {};
  return it->second;
}

bool UnfoldTable::is_definitional(const std::string& atom) const {
  auto it = origin_.find(atom);
  return it != origin_.end() && it->second == AtomOrigin::Definitional;
}

const Concept& UnfoldTable::definition(const std::string& atom) const {
  if (!is_definitional(atom)) throw std::out_of_range("atom '" + atom + "' is not definitional");
  return entries_.at(LiteralKey::pos(atom)).front();
}

std::vector<Axiom> UnfoldTable::definitions() const {
  std::vector<Axiom> out;
  for (const auto& a : definition_order_) out.push_back(Axiom::eq(Concept::atom(a), definition(a)));
  return out;
}

std::vector<Concept> Absorption::tg_concepts() const {
  std::vector<Concept> out;
  out.reserve(tg.size());
  for (const auto& g : tg) out.push_back(g.as_concept());
  return out;
}

namespace {

// "uses" digraph restricted to defined atoms. Index i is defs[i].
struct UsesGraph {
  std::vector<std::vector<std::size_t>> edges;
  std::vector<bool> self_loop;
};

std::optional<UsesGraph> uses_graph(std::span<const Axiom> defs) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < defs.size(); ++i) {
    const Axiom& d = defs[i];
    if (d.kind != AxiomKind::Eq || !d.lhs.is_atom()) return std::nullopt;
    if (!index.emplace(d.lhs.name(), i).second) return std::nullopt;
  }
  UsesGraph g;
  g.edges.resize(defs.size());
  g.self_loop.assign(defs.size(), false);
  for (std::size_t i = 0; i < defs.size(); ++i) {
    for (const auto& a : signature_of(defs[i].rhs).atoms) {
      auto it = index.find(a);
      if (it == index.end()) continue;
      if (it->second == i) g.self_loop[i] = true;
      g.edges[i].push_back(it->second);
    }
  }
  return g;
}

// Tarjan; components come out callees first.
std::vector<std::vector<std::size_t>> components(const UsesGraph& g) {
  const std::size_t n = g.edges.size();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  int counter = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (auto w : g.edges[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      std::ranges::sort(comp);
      out.push_back(std::move(comp));
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  return out;
}

}  // namespace

bool is_primitive(std::span<const Axiom> defs) {
  auto g = uses_graph(defs);
  if (!g) return false;
  for (const auto& comp : components(*g))
    if (comp.size() > 1 || g->self_loop[comp.front()]) return false;
  return true;
}

std::optional<std::vector<std::vector<Axiom>>> stratify(std::span<const Axiom> defs) {
  auto g = uses_graph(defs);
  if (!g) return std::nullopt;
  std::vector<std::vector<Axiom>> strata;
  for (const auto& comp : components(*g)) {
    std::vector<Axiom> stratum;
    for (auto i : comp) stratum.push_back(defs[i]);
    for (const auto& d : stratum)
      for (const auto& defined : stratum)
        if (!syntactically_monotone(d.rhs, defined.lhs.name())) return std::nullopt;
    strata.push_back(std::move(stratum));
  }
  return strata;
}

Distribution distribute(const TBox& t, AbsorptionMode mode, const AbsorbOptions& options) {
  Distribution out;
  std::set<std::string> in_tprim, in_tinc;

  auto to_tg = [&](Axiom ax) {
    out.tg_parts.back().push_back(out.tg.size());
    out.tg.push_back(std::move(ax));
  };
  auto accepts = [&](const Axiom& x) {
    if (options.skip_definition_check) return true;
    std::vector<Axiom> candidate = out.tprim;
    candidate.push_back(x);
    return mode == AbsorptionMode::Enhanced ? stratify(candidate).has_value() : is_primitive(candidate);
  };

  for (const auto& x : t.axioms) {
    out.tg_parts.emplace_back();
    const bool atomic = x.lhs.is_atom();
    if (x.kind == AxiomKind::Sub) {
      if (atomic && !in_tprim.contains(x.lhs.name())) {
        in_tinc.insert(x.lhs.name());
        out.tinc.push_back(x);
        out.routing.push_back(Disposition::Tinc);
      } else {
        to_tg(x);
        out.routing.push_back(Disposition::ResidualTg);
      }
      continue;
    }
    if (atomic && !in_tprim.contains(x.lhs.name()) && !in_tinc.contains(x.lhs.name()) && accepts(x)) {
      in_tprim.insert(x.lhs.name());
      out.tprim.push_back(x);
      out.routing.push_back(Disposition::Tprim);
      continue;
    }
    to_tg(Axiom::sub(x.lhs, x.rhs));
    to_tg(Axiom::sub(x.rhs, x.lhs));
    out.routing.push_back(Disposition::SplitThenProcessed);
  }
  return out;
}

ClauseOutcome absorb_clause(Clause g, std::span<const Axiom> tprim, int fuel) {
  std::unordered_map<std::string, const Axiom*> defs;
  for (const auto& d : tprim) defs.emplace(d.lhs.name(), &d);

  ClauseOutcome out;
  for (;;) {
    if (out.steps >= fuel) {
      out.fuel_exhausted = true;
      out.residual = std::move(g);
      return out;
    }
    ++out.steps;

    // 1. absorb on the least negated atom that Tprim does not define
    const Concept* pick = nullptr;
    for (const auto& d : g.disjuncts)
      if (d.is_negated_atom() && !defs.contains(d.operand().name()) &&
          (!pick || d.operand().name() < pick->operand().name()))
        pick = &d;
    if (pick) {
      out.absorbed = true;
      out.atom = pick->operand().name();
      std::vector<Concept> rest;
      for (const auto& d : g.disjuncts)
        if (&d != pick) rest.push_back(d);
      out.inclusion = Axiom::sub(Concept::atom(out.atom), Concept::disjunction(std::move(rest)));
      return out;
    }

    // 2. simplify. Disjuncts are kept in NNF, so a negated conjunction is
    // already a disjunction of negations; what remains is flattening.
    auto nested = std::ranges::find_if(g.disjuncts, [](const Concept& d) { return d.kind() == ConceptKind::Or; });
    if (nested != g.disjuncts.end()) {
      const std::size_t at = static_cast<std::size_t>(nested - g.disjuncts.begin());
      const Concept flat = *nested;
      Clause next;
      for (std::size_t i = 0; i < g.disjuncts.size(); ++i) {
        if (i == at) {
          for (const auto& a : flat.args()) next.add(a);
        } else {
          next.add(g.disjuncts[i]);
        }
      }
      g = std::move(next);
      continue;
    }

    // 3. unfold one defined literal, negative literals first
    auto defined_literal = [&](bool negative) {
      return std::ranges::find_if(g.disjuncts, [&](const Concept& d) {
        return (negative ? d.is_negated_atom() : d.is_atom()) && defs.contains(d.literal_atom());
      });
    };
    auto lit = defined_literal(true);
    if (lit == g.disjuncts.end()) lit = defined_literal(false);
    if (lit != g.disjuncts.end()) {
      const Concept& body = defs.at(lit->literal_atom())->rhs;
      const Concept replacement = lit->is_atom() ? nnf(body) : complement(body);
      const std::size_t at = static_cast<std::size_t>(lit - g.disjuncts.begin());
      Clause next;
      for (std::size_t i = 0; i < g.disjuncts.size(); ++i) next.add(i == at ? replacement : g.disjuncts[i]);
      g = std::move(next);
      continue;
    }

    // 4. give up
    out.residual = std::move(g);
    return out;
  }
}

Absorption absorb(const TBox& t, AbsorptionMode mode, const AbsorbOptions& options) {
  Absorption a;
  a.mode = mode;

  if (mode == AbsorptionMode::None) {
    for (const auto& ax : t.axioms) {
      LogRecord rec{ax, Disposition::ResidualTg, {}};
      for (const auto& c : axiom_internalisation_concepts(ax)) {
        a.tg.push_back(Clause::from_concept(c));
        rec.parts.push_back({Axiom::sub(Concept::top(), c), Disposition::ResidualTg, {}});
      }
      a.log.push_back(std::move(rec));
    }
    return a;
  }

  Distribution dist = distribute(t, mode, options);
  std::vector<Axiom> tinc = dist.tinc;
  std::vector<PartRecord> part_records(dist.tg.size());
  for (std::size_t i = 0; i < dist.tg.size(); ++i) {
    const Axiom& ax = dist.tg[i];
    ClauseOutcome res = absorb_clause(Clause::from_inclusion(ax.lhs, ax.rhs), dist.tprim, options.fuel);
    if (res.fuel_exhausted) ++a.fuel_exhausted;
    if (res.absorbed) {
      tinc.push_back(res.inclusion);
      part_records[i] = {ax, Disposition::AbsorbedIntoTinc, res.atom};
    } else {
      a.tg.push_back(std::move(res.residual));
      part_records[i] = {ax, Disposition::ResidualTg, {}};
    }
  }

  for (const auto& d : dist.tprim) a.tu.add_definition(d.lhs.name(), d.rhs);
  for (const auto& inc : tinc) a.tu.add_inclusion(inc.lhs.name(), inc.rhs);

  if (mode == AbsorptionMode::Enhanced) {
    std::vector<std::vector<std::string>> groups;
    if (auto strata = stratify(dist.tprim)) {
      for (const auto& s : *strata) {
        std::vector<std::string> names;
        for (const auto& d : s) names.push_back(d.lhs.name());
        groups.push_back(std::move(names));
      }
    }
    a.strata = std::move(groups);
  }

  for (std::size_t i = 0; i < t.axioms.size(); ++i) {
    LogRecord rec{t.axioms[i], dist.routing[i], {}};
    for (auto p : dist.tg_parts[i]) rec.parts.push_back(part_records[p]);
    if (rec.disposition == Disposition::ResidualTg && rec.parts.size() == 1)
      rec.disposition = rec.parts.front().outcome;
    a.log.push_back(std::move(rec));
  }
  return a;
}

TBox reconstruct_axioms(const Absorption& a) {
  TBox t;
  for (const auto& [key, rhs] : a.tu.entries()) {
    const auto origin = a.tu.origins().find(key.atom);
    if (origin == a.tu.origins().end()) throw std::logic_error("Tu entry without origin: " + key.atom);
    if (origin->second == AtomOrigin::Definitional) {
      if (key.negative) continue;
      const auto neg = a.tu.lookup(LiteralKey::neg(key.atom));
      if (rhs.size() != 1 || neg.size() != 1 || neg.front() != complement(rhs.front()))
        throw std::logic_error("malformed definitional Tu entry for '" + key.atom + "'");
      t.axioms.push_back(Axiom::eq(Concept::atom(key.atom), rhs.front()));
      continue;
    }
    if (key.negative) throw std::logic_error("negative inclusion entry for '" + key.atom + "'");
    for (const auto& d : rhs) t.axioms.push_back(Axiom::sub(Concept::atom(key.atom), d));
  }
  for (const auto& g : a.tg) t.axioms.push_back(Axiom::sub(Concept::top(), g.as_concept()));
  return t;
}

std::string render(const Absorption& a) {
  std::string out = "; absorption mode: " + std::string(to_string(a.mode)) + "\n";
  out += "; Tu definitional\n";
  for (const auto& d : a.tu.definitions()) out += render(d) + "\n";
  out += "; Tu inclusions\n";
  for (const auto& [key, rhs] : a.tu.entries()) {
    if (a.tu.is_definitional(key.atom)) continue;
    for (const auto& d : rhs) out += render(Axiom::sub(key.as_concept(), d)) + "\n";
  }
  out += "; Tg residual clauses\n";
  for (const auto& g : a.tg) out += render(Axiom::sub(Concept::top(), g.as_concept())) + "\n";
  if (a.strata) {
    out += "; strata\n";
    for (const auto& s : *a.strata) {
      out += ";  ";
      for (const auto& n : s) out += " " + n;
      out += "\n";
    }
  }
  out += "; disposition log\n";
  for (const auto& rec : a.log) {
    out += ";   " + std::string(to_string(rec.disposition)) + "  " + render(rec.original) + "\n";
    for (const auto& p : rec.parts) {
      out += ";     -> " + std::string(to_string(p.outcome));
      if (!p.absorbed_on.empty()) out += " on " + p.absorbed_on;
      out += "  " + render(p.part) + "\n";
    }
  }
  return out;
}

}  // namespace dlr
