#include "dlr/semantics.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace dlr {

namespace {

const ElementSet kNoElements;
const EdgeSet kNoEdges;

// Adjacency view of a FiniteInterpretation for the generic evaluator.
class Structure {
 public:
  explicit Structure(const FiniteInterpretation& i) : i_(i) {
    for (const auto& [role, edges] : i.role_ext) {
      auto& fwd = succ_[role];
      auto& bwd = pred_[role];
      fwd.resize(static_cast<std::size_t>(i.domain_size));
      bwd.resize(static_cast<std::size_t>(i.domain_size));
      for (auto [x, y] : edges) {
        fwd[static_cast<std::size_t>(x)].push_back(y);
        bwd[static_cast<std::size_t>(y)].push_back(x);
      }
    }
  }

  // Membership vector over 0..n-1.
  std::vector<char> eval(const Concept& c) const {
    const auto n = static_cast<std::size_t>(i_.domain_size);
    std::vector<char> out(n, 0);
    switch (c.kind()) {
      case ConceptKind::Top:
        std::ranges::fill(out, 1);
        break;
      case ConceptKind::Bottom:
        break;
      case ConceptKind::Atom:
        for (int x : i_.atom(c.name())) out[static_cast<std::size_t>(x)] = 1;
        break;
      case ConceptKind::Not: {
        auto v = eval(c.operand());
        for (std::size_t x = 0; x < n; ++x) out[x] = !v[x];
        break;
      }
      case ConceptKind::And:
      case ConceptKind::Or: {
        const bool conj = c.kind() == ConceptKind::And;
        std::ranges::fill(out, conj ? 1 : 0);
        for (const auto& a : c.args()) {
          auto v = eval(a);
          for (std::size_t x = 0; x < n; ++x) out[x] = conj ? (out[x] && v[x]) : (out[x] || v[x]);
        }
        break;
      }
      case ConceptKind::Exists:
      case ConceptKind::Forall: {
        const bool some = c.kind() == ConceptKind::Exists;
        auto f = eval(c.filler());
        const auto* adj = neighbours(c.role());
        for (std::size_t x = 0; x < n; ++x) {
          bool hit = false, all = true;
          if (adj)
            for (int y : (*adj)[x]) {
              if (f[static_cast<std::size_t>(y)]) hit = true;
              else all = false;
            }
          out[x] = some ? hit : all;
        }
        break;
      }
    }
    return out;
  }

 private:
  const std::vector<std::vector<int>>* neighbours(const RoleExpr& r) const {
    const auto& table = r.is_inverse() ? pred_ : succ_;
    auto it = table.find(r.name());
    return it == table.end() ? nullptr : &it->second;
  }

  const FiniteInterpretation& i_;
  std::map<std::string, std::vector<std::vector<int>>> succ_, pred_;
};

ElementSet to_set(const std::vector<char>& v) {
  ElementSet s;
  for (std::size_t x = 0; x < v.size(); ++x)
    if (v[x]) s.insert(static_cast<int>(x));
  return s;
}

// --- bitmask evaluation for small domains (n <= 64) -------------------------

struct MaskModel {
  int n = 0;
  std::uint64_t all = 0;
  std::vector<std::uint64_t> atoms;  // by atom index
  std::vector<std::uint64_t> succ;   // role * n + x
  std::vector<std::uint64_t> pred;

  void resize(int domain, std::size_t atom_count, std::size_t role_count) {
    n = domain;
    all = domain == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << domain) - 1;
    atoms.assign(atom_count, 0);
    succ.assign(role_count * static_cast<std::size_t>(domain), 0);
    pred.assign(role_count * static_cast<std::size_t>(domain), 0);
  }

  void rebuild_pred(std::size_t role_count) {
    std::ranges::fill(pred, 0);
    const auto un = static_cast<std::size_t>(n);
    for (std::size_t r = 0; r < role_count; ++r)
      for (std::size_t x = 0; x < un; ++x)
        for (std::uint64_t s = succ[r * un + x]; s; s &= s - 1)
          pred[r * un + static_cast<std::size_t>(std::countr_zero(s))] |= std::uint64_t{1} << x;
  }
};

// Straight-line program over a fixed signature. Concepts are compiled once;
// run() evaluates every register against a model.
class Program {
 public:
  Program(std::vector<std::string> atoms, std::vector<std::string> roles)
      : atoms_(std::move(atoms)), roles_(std::move(roles)) {
    for (std::size_t i = 0; i < atoms_.size(); ++i) atom_index_[atoms_[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < roles_.size(); ++i) role_index_[roles_[i]] = static_cast<int>(i);
  }

  int add(const Concept& c) {
    if (auto it = memo_.find(c); it != memo_.end()) return it->second;
    Instr ins{c.kind(), -1, -1, false, {}};
    for (const auto& a : c.args()) ins.args.push_back(add(a));
    if (c.is_atom()) {
      auto it = atom_index_.find(c.name());
      ins.index = it == atom_index_.end() ? -1 : it->second;
    }
    if (c.kind() == ConceptKind::Exists || c.kind() == ConceptKind::Forall) {
      auto it = role_index_.find(c.role().name());
      ins.role = it == role_index_.end() ? -1 : it->second;
      ins.inverse = c.role().is_inverse();
    }
    const int id = static_cast<int>(code_.size());
    code_.push_back(std::move(ins));
    memo_.emplace(c, id);
    return id;
  }

  void run(const MaskModel& m, std::vector<std::uint64_t>& regs) const {
    regs.resize(code_.size());
    const auto un = static_cast<std::size_t>(m.n);
    for (std::size_t k = 0; k < code_.size(); ++k) {
      const Instr& ins = code_[k];
      std::uint64_t v = 0;
      switch (ins.kind) {
        case ConceptKind::Top:
          v = m.all;
          break;
        case ConceptKind::Bottom:
          v = 0;
          break;
        case ConceptKind::Atom:
          v = ins.index < 0 ? 0 : m.atoms[static_cast<std::size_t>(ins.index)];
          break;
        case ConceptKind::Not:
          v = ~regs[static_cast<std::size_t>(ins.args[0])] & m.all;
          break;
        case ConceptKind::And:
          v = m.all;
          for (int a : ins.args) v &= regs[static_cast<std::size_t>(a)];
          break;
        case ConceptKind::Or:
          for (int a : ins.args) v |= regs[static_cast<std::size_t>(a)];
          break;
        case ConceptKind::Exists:
        case ConceptKind::Forall: {
          const std::uint64_t f = regs[static_cast<std::size_t>(ins.args[0])];
          const bool some = ins.kind == ConceptKind::Exists;
          if (ins.role < 0) {
            v = some ? 0 : m.all;
            break;
          }
          const auto& rel = ins.inverse ? m.pred : m.succ;
          const std::size_t base = static_cast<std::size_t>(ins.role) * un;
          for (std::size_t x = 0; x < un; ++x) {
            const std::uint64_t nb = rel[base + x];
            const bool holds = some ? (nb & f) != 0 : (nb & ~f) == 0;
            if (holds) v |= std::uint64_t{1} << x;
          }
          break;
        }
      }
      regs[k] = v;
    }
  }

  int atom_index(const std::string& a) const {
    auto it = atom_index_.find(a);
    return it == atom_index_.end() ? -1 : it->second;
  }
  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::vector<std::string>& roles() const { return roles_; }

 private:
  struct Instr {
    ConceptKind kind;
    int index;
    int role;
    bool inverse;
    std::vector<int> args;
  };
  std::vector<std::string> atoms_, roles_;
  std::unordered_map<std::string, int> atom_index_, role_index_;
  std::unordered_map<Concept, int, ConceptHash> memo_;
  std::vector<Instr> code_;
};

// Axioms compiled to (kind, lhs register, rhs register).
struct CompiledTBox {
  std::vector<std::tuple<AxiomKind, int, int>> axioms;

  CompiledTBox(Program& p, const TBox& t) {
    for (const auto& ax : t.axioms) axioms.emplace_back(ax.kind, p.add(ax.lhs), p.add(ax.rhs));
  }

  bool holds(const std::vector<std::uint64_t>& regs) const {
    for (auto [kind, l, r] : axioms) {
      const auto lv = regs[static_cast<std::size_t>(l)];
      const auto rv = regs[static_cast<std::size_t>(r)];
      if (kind == AxiomKind::Sub ? (lv & ~rv) != 0 : lv != rv) return false;
    }
    return true;
  }
};

FiniteInterpretation materialise(const MaskModel& m, const std::vector<std::string>& atoms,
                                 const std::vector<std::string>& roles) {
  FiniteInterpretation i;
  i.domain_size = m.n;
  const auto un = static_cast<std::size_t>(m.n);
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    ElementSet s;
    for (std::uint64_t v = m.atoms[a]; v; v &= v - 1) s.insert(std::countr_zero(v));
    i.atom_ext[atoms[a]] = std::move(s);
  }
  for (std::size_t r = 0; r < roles.size(); ++r) {
    EdgeSet e;
    for (std::size_t x = 0; x < un; ++x)
      for (std::uint64_t v = m.succ[r * un + x]; v; v &= v - 1) e.emplace(static_cast<int>(x), std::countr_zero(v));
    i.role_ext[roles[r]] = std::move(e);
  }
  return i;
}

std::uint64_t bits_for(std::size_t atoms, std::size_t roles, int n) {
  const auto un = static_cast<std::uint64_t>(n);
  return atoms * un + roles * un * un;
}

void check_budget(const Signature& sig, int max_domain, const OracleBudget& budget) {
  if (max_domain < 1) throw std::invalid_argument("max_domain must be positive");
  const auto bits = bits_for(sig.atoms.size(), sig.roles.size(), max_domain);
  if (bits > static_cast<std::uint64_t>(budget.interpretation_bits) || bits >= 63)
    throw BudgetExceeded("enumeration needs " + std::to_string(bits) + " bits, budget is " +
                         std::to_string(budget.interpretation_bits));
}

// Visits mask models over (atoms, roles) for n = 1..max_domain.
template <class Visit>
std::uint64_t enumerate_masks(std::size_t atom_count, std::size_t role_count, int max_domain, Visit&& visit) {
  std::uint64_t visited = 0;
  MaskModel m;
  for (int n = 1; n <= max_domain; ++n) {
    m.resize(n, atom_count, role_count);
    const auto un = static_cast<std::size_t>(n);
    const std::uint64_t row = (std::uint64_t{1} << n) - 1;
    const std::uint64_t total = std::uint64_t{1} << bits_for(atom_count, role_count, n);
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t c = code;
      for (std::size_t a = 0; a < atom_count; ++a, c >>= n) m.atoms[a] = c & row;
      for (std::size_t k = 0; k < role_count * un; ++k, c >>= n) m.succ[k] = c & row;
      m.rebuild_pred(role_count);
      ++visited;
      if (!visit(m)) return visited;
    }
  }
  return visited;
}

std::vector<std::string> as_vector(const std::set<std::string>& s) { return {s.begin(), s.end()}; }

Signature structure_signature(const LabeledStructure& w) {
  Signature sig;
  for (const auto& [r, _] : w.role_ext) sig.roles.insert(r);
  for (const auto& label : w.labels)
    for (const auto& c : label) sig.merge(signature_of(c));
  return sig;
}

// Every interpretation stemming from w over the atoms of sig: fixed literals
// are pinned, every unlabeled (element, atom) pair is enumerated.
template <class Visit>
void enumerate_completions(const LabeledStructure& w, const Program& p, const OracleBudget& budget, Visit&& visit) {
  if (w.domain_size < 1 || w.domain_size > 64)
    throw BudgetExceeded("completion enumeration supports 1..64 elements");
  if (static_cast<int>(w.labels.size()) != w.domain_size)
    throw std::invalid_argument("labels must have one entry per element");
  const std::size_t atom_count = p.atoms().size();
  MaskModel m;
  m.resize(w.domain_size, atom_count, p.roles().size());
  const auto un = static_cast<std::size_t>(w.domain_size);
  for (std::size_t r = 0; r < p.roles().size(); ++r) {
    auto it = w.role_ext.find(p.roles()[r]);
    if (it == w.role_ext.end()) continue;
    for (auto [x, y] : it->second) m.succ[r * un + static_cast<std::size_t>(x)] |= std::uint64_t{1} << y;
  }
  m.rebuild_pred(p.roles().size());

  std::vector<std::uint64_t> fixed(atom_count, 0);
  std::vector<std::pair<std::size_t, int>> free;  // (atom, element)
  for (std::size_t a = 0; a < atom_count; ++a) {
    const Concept pos = Concept::atom(p.atoms()[a]);
    const Concept neg = Concept::negation(pos);
    for (int x = 0; x < w.domain_size; ++x) {
      const auto& label = w.labels[static_cast<std::size_t>(x)];
      if (label.contains(pos)) fixed[a] |= std::uint64_t{1} << x;
      else if (!label.contains(neg)) free.emplace_back(a, x);
    }
  }
  if (free.size() >= 63 || (std::uint64_t{1} << free.size()) > budget.completions)
    throw BudgetExceeded("stemming completions: 2^" + std::to_string(free.size()) + " exceeds budget");
  const std::uint64_t total = std::uint64_t{1} << free.size();
  for (std::uint64_t code = 0; code < total; ++code) {
    m.atoms = fixed;
    for (std::size_t k = 0; k < free.size(); ++k)
      if ((code >> k) & 1) m.atoms[free[k].first] |= std::uint64_t{1} << free[k].second;
    if (!visit(m)) return;
  }
}

}  // namespace

const ElementSet& FiniteInterpretation::atom(const std::string& name) const {
  auto it = atom_ext.find(name);
  return it == atom_ext.end() ? kNoElements : it->second;
}

const EdgeSet& FiniteInterpretation::role(const std::string& name) const {
  auto it = role_ext.find(name);
  return it == role_ext.end() ? kNoEdges : it->second;
}

void FiniteInterpretation::validate() const {
  if (domain_size < 1) throw std::invalid_argument("domain must be non-empty");
  auto ok = [&](int x) { return x >= 0 && x < domain_size; };
  for (const auto& [a, ext] : atom_ext)
    for (int x : ext)
      if (!ok(x)) throw std::invalid_argument("atom '" + a + "' has out-of-range element");
  for (const auto& [r, ext] : role_ext)
    for (auto [x, y] : ext)
      if (!ok(x) || !ok(y)) throw std::invalid_argument("role '" + r + "' has out-of-range element");
}

bool operator==(const FiniteInterpretation& a, const FiniteInterpretation& b) {
  if (a.domain_size != b.domain_size) return false;
  auto same = [](const auto& m1, const auto& m2) {
    for (const auto& [k, v] : m1) {
      auto it = m2.find(k);
      if (it == m2.end() ? !v.empty() : it->second != v) return false;
    }
    for (const auto& [k, v] : m2)
      if (!m1.contains(k) && !v.empty()) return false;
    return true;
  };
  return same(a.atom_ext, b.atom_ext) && same(a.role_ext, b.role_ext);
}

std::string render(const FiniteInterpretation& i) {
  std::string out = "domain " + std::to_string(i.domain_size) + "\n";
  for (const auto& [a, ext] : i.atom_ext) {
    out += "  " + a + " = {";
    bool first = true;
    for (int x : ext) {
      out += (first ? "" : ",") + std::to_string(x);
      first = false;
    }
    out += "}\n";
  }
  for (const auto& [r, ext] : i.role_ext) {
    out += "  " + r + " = {";
    bool first = true;
    for (auto [x, y] : ext) {
      out += (first ? "" : ",") + std::string("(") + std::to_string(x) + "," + std::to_string(y) + ")";
      first = false;
    }
    out += "}\n";
  }
  return out;
}

LabeledStructure LabeledStructure::empty(int n) {
  LabeledStructure w;
  w.domain_size = n;
  w.labels.resize(static_cast<std::size_t>(n));
  return w;
}

bool LabeledStructure::clash_free() const {
  for (const auto& label : labels)
    for (const auto& c : label) {
      if (c.kind() == ConceptKind::Bottom) return false;
      if (c.is_atom() && label.contains(Concept::negation(c))) return false;
    }
  return true;
}

ElementSet LabeledStructure::carrying(const Concept& c) const {
  ElementSet s;
  for (std::size_t x = 0; x < labels.size(); ++x)
    if (labels[x].contains(c)) s.insert(static_cast<int>(x));
  return s;
}

ElementSet eval(const FiniteInterpretation& i, const Concept& c) { return to_set(Structure(i).eval(c)); }

bool satisfies(const FiniteInterpretation& i, const Axiom& ax) {
  Structure s(i);
  auto l = s.eval(ax.lhs);
  auto r = s.eval(ax.rhs);
  for (std::size_t x = 0; x < l.size(); ++x) {
    if (l[x] && !r[x]) return false;
    if (ax.kind == AxiomKind::Eq && r[x] && !l[x]) return false;
  }
  return true;
}

bool satisfies(const FiniteInterpretation& i, const TBox& t) {
  return std::ranges::all_of(t.axioms, [&](const Axiom& ax) { return satisfies(i, ax); });
}

std::uint64_t interpretation_count(const Signature& sig, int max_domain) {
  std::uint64_t total = 0;
  for (int n = 1; n <= max_domain; ++n) total += std::uint64_t{1} << bits_for(sig.atoms.size(), sig.roles.size(), n);
  return total;
}

std::uint64_t enumerate_interpretations(const Signature& sig, int max_domain,
                                        const std::function<bool(const FiniteInterpretation&)>& visit,
                                        const OracleBudget& budget) {
  check_budget(sig, max_domain, budget);
  const auto atoms = as_vector(sig.atoms);
  const auto roles = as_vector(sig.roles);
  return enumerate_masks(atoms.size(), roles.size(), max_domain,
                         [&](const MaskModel& m) { return visit(materialise(m, atoms, roles)); });
}

std::vector<EquivalenceResult> equivalent_bounded_all(const TBox& reference, const std::vector<TBox>& candidates,
                                                      const Signature& sig, int max_domain,
                                                      const OracleBudget& budget) {
  check_budget(sig, max_domain, budget);
  Program p(as_vector(sig.atoms), as_vector(sig.roles));
  const CompiledTBox ref(p, reference);
  std::vector<CompiledTBox> cands;
  for (const auto& c : candidates) cands.emplace_back(p, c);

  std::vector<EquivalenceResult> out(candidates.size());
  std::size_t open = candidates.size();
  std::vector<std::uint64_t> regs;
  std::uint64_t checked = 0;
  enumerate_masks(p.atoms().size(), p.roles().size(), max_domain, [&](const MaskModel& m) {
    ++checked;
    p.run(m, regs);
    const bool r = ref.holds(regs);
    for (std::size_t k = 0; k < cands.size(); ++k) {
      if (!out[k].equivalent) continue;
      if (cands[k].holds(regs) != r) {
        out[k].equivalent = false;
        out[k].counterexample = materialise(m, p.atoms(), p.roles());
        out[k].checked = checked;
        --open;
      }
    }
    return open > 0;
  });
  for (auto& r : out)
    if (r.equivalent) r.checked = checked;
  return out;
}

EquivalenceResult equivalent_bounded(const TBox& t1, const TBox& t2, const Signature& sig, int max_domain,
                                     const OracleBudget& budget) {
  return equivalent_bounded_all(t1, {t2}, sig, max_domain, budget).front();
}

std::optional<FiniteInterpretation> sat_bruteforce(const Concept& c, const TBox& t, int max_domain,
                                                   const OracleBudget& budget) {
  Signature sig = t.signature();
  sig.merge(signature_of(c));
  check_budget(sig, max_domain, budget);
  Program p(as_vector(sig.atoms), as_vector(sig.roles));
  const CompiledTBox tbox(p, t);
  const auto query = static_cast<std::size_t>(p.add(c));
  std::optional<FiniteInterpretation> found;
  std::vector<std::uint64_t> regs;
  enumerate_masks(p.atoms().size(), p.roles().size(), max_domain, [&](const MaskModel& m) {
    p.run(m, regs);
    if (regs[query] != 0 && tbox.holds(regs)) {
      found = materialise(m, p.atoms(), p.roles());
      return false;
    }
    return true;
  });
  return found;
}

bool monotone_bounded(const Concept& c, const std::string& atom, const Signature& sig, int max_domain,
                      const OracleBudget& budget) {
  Signature full = sig;
  full.merge(signature_of(c));
  full.atoms.insert(atom);
  check_budget(full, max_domain, budget);
  Signature rest = full;
  rest.atoms.erase(atom);

  // The varied atom sits in the last slot and is overwritten per subset.
  auto atoms = as_vector(rest.atoms);
  atoms.push_back(atom);
  Program p(atoms, as_vector(rest.roles));
  const auto reg = static_cast<std::size_t>(p.add(c));
  const std::size_t slot = atoms.size() - 1;

  bool monotone = true;
  std::vector<std::uint64_t> regs;
  std::vector<std::uint64_t> value;
  enumerate_masks(atoms.size() - 1, p.roles().size(), max_domain, [&](const MaskModel& base) {
    MaskModel m = base;
    m.atoms.push_back(0);
    const std::uint64_t subsets = std::uint64_t{1} << m.n;
    value.assign(subsets, 0);
    for (std::uint64_t x = 0; x < subsets; ++x) {
      m.atoms[slot] = x;
      p.run(m, regs);
      value[x] = regs[reg];
    }
    // Covering pairs X, X + {e} suffice: inclusion is transitive.
    for (std::uint64_t x = 0; x < subsets && monotone; ++x)
      for (int e = 0; e < m.n; ++e) {
        const std::uint64_t bit = std::uint64_t{1} << e;
        if (!(x & bit) && (value[x] & ~value[x | bit]) != 0) {
          monotone = false;
          break;
        }
      }
    return monotone;
  });
  return monotone;
}

bool stems_from(const FiniteInterpretation& i, const LabeledStructure& w) {
  if (i.domain_size != w.domain_size) return false;
  std::set<std::string> roles;
  for (const auto& [r, _] : i.role_ext) roles.insert(r);
  for (const auto& [r, _] : w.role_ext) roles.insert(r);
  for (const auto& r : roles) {
    auto it = w.role_ext.find(r);
    if (i.role(r) != (it == w.role_ext.end() ? kNoEdges : it->second)) return false;
  }
  for (std::size_t x = 0; x < w.labels.size(); ++x)
    for (const auto& c : w.labels[x]) {
      if (c.is_atom() && !i.atom(c.name()).contains(static_cast<int>(x))) return false;
      if (c.is_negated_atom() && i.atom(c.operand().name()).contains(static_cast<int>(x))) return false;
    }
  return true;
}

bool is_pre_witness(const LabeledStructure& w, const OracleBudget& budget) {
  if (w.domain_size < 1 || !w.clash_free()) return false;
  const Signature sig = structure_signature(w);
  Program p(as_vector(sig.atoms), as_vector(sig.roles));
  std::vector<std::vector<std::size_t>> wanted(w.labels.size());
  for (std::size_t x = 0; x < w.labels.size(); ++x)
    for (const auto& c : w.labels[x]) wanted[x].push_back(static_cast<std::size_t>(p.add(c)));

  bool ok = true;
  std::vector<std::uint64_t> regs;
  enumerate_completions(w, p, budget, [&](const MaskModel& m) {
    p.run(m, regs);
    for (std::size_t x = 0; x < wanted.size() && ok; ++x)
      for (auto r : wanted[x])
        if (!((regs[r] >> x) & 1)) {
          ok = false;
          break;
        }
    return ok;
  });
  return ok;
}

bool is_witness(const LabeledStructure& w, const Concept& c, const OracleBudget& budget) {
  const bool w1 = std::ranges::any_of(w.labels, [&](const std::set<Concept>& l) { return l.contains(c); });
  return w1 && is_pre_witness(w, budget);
}

bool is_unfolded(const LabeledStructure& w, const Absorption& absorption) {
  const auto tg = absorption.tg_concepts();
  for (const auto& label : w.labels) {
    for (const auto& c : tg)
      if (!label.contains(c)) return false;
    for (const auto& c : label) {
      if (!c.is_literal()) continue;
      const LiteralKey key{c.literal_atom(), c.is_negated_atom()};
      for (const auto& d : absorption.tu.lookup(key))
        if (!label.contains(d)) return false;
    }
  }
  return true;
}

std::optional<FiniteInterpretation> admissible_completion(const LabeledStructure& w, const TBox& t,
                                                          const OracleBudget& budget) {
  if (!w.clash_free()) return std::nullopt;
  Signature sig = structure_signature(w);
  sig.merge(t.signature());
  Program p(as_vector(sig.atoms), as_vector(sig.roles));
  const CompiledTBox tbox(p, t);
  std::optional<FiniteInterpretation> found;
  std::vector<std::uint64_t> regs;
  enumerate_completions(w, p, budget, [&](const MaskModel& m) {
    p.run(m, regs);
    if (tbox.holds(regs)) {
      found = materialise(m, p.atoms(), p.roles());
      return false;
    }
    return true;
  });
  return found;
}

LabeledStructure canonical_witness(const FiniteInterpretation& i, const std::vector<Concept>& closure) {
  LabeledStructure w = LabeledStructure::empty(i.domain_size);
  w.role_ext = i.role_ext;
  Structure s(i);
  for (const auto& c : closure) {
    auto v = s.eval(c);
    for (std::size_t x = 0; x < v.size(); ++x)
      if (v[x]) w.labels[x].insert(c);
  }
  return w;
}

std::vector<Concept> oracle_closure(const TBox& t, const Absorption& a, const std::vector<Concept>& extra) {
  std::vector<Concept> out;
  std::set<Concept> seen;
  auto add = [&](const Concept& c) {
    if (seen.insert(c).second) out.push_back(c);
  };
  auto add_tree = [&](const Concept& root) {
    for (const auto& s : subconcepts(root)) {
      add(s);
      add(nnf(s));
      add(complement(s));
    }
  };
  Signature sig = t.signature();
  for (const auto& ax : t.axioms) {
    add_tree(ax.lhs);
    add_tree(ax.rhs);
  }
  for (const auto& c : extra) {
    add_tree(c);
    sig.merge(signature_of(c));
  }
  for (const auto& [key, rhs] : a.tu.entries()) {
    sig.atoms.insert(key.atom);
    for (const auto& d : rhs) add(d);
  }
  for (const auto& c : a.tg_concepts()) add(c);
  for (const auto& atom : sig.atoms) {
    add(Concept::atom(atom));
    add(Concept::negation(Concept::atom(atom)));
  }
  return out;
}

FiniteInterpretation initial_interpretation(const LabeledStructure& w, const std::vector<Axiom>& defs) {
  FiniteInterpretation i;
  i.domain_size = w.domain_size;
  i.role_ext = w.role_ext;
  for (const auto& d : defs) i.atom_ext[d.lhs.name()];
  for (std::size_t x = 0; x < w.labels.size(); ++x)
    for (const auto& c : w.labels[x])
      if (c.is_atom()) i.atom_ext[c.name()].insert(static_cast<int>(x));
  return i;
}

std::vector<Axiom> linearise(std::span<const Axiom> tprim) {
  if (!is_primitive(tprim)) throw RepairError(RepairErrorKind::Cyclic, "definitions are not primitive");
  // Singleton components come out of stratify callees first.
  const auto strata = stratify(tprim);
  std::vector<Axiom> out;
  for (const auto& s : *strata) out.push_back(s.front());
  return out;
}

namespace {

Absorption definitional_absorption(const std::vector<Axiom>& defs) {
  Absorption a;
  for (const auto& d : defs) a.tu.add_definition(d.lhs.name(), d.rhs);
  return a;
}

void check_witness_preconditions(const LabeledStructure& w, const std::vector<Axiom>& defs) {
  if (static_cast<int>(w.labels.size()) != w.domain_size)
    throw RepairError(RepairErrorKind::Malformed, "labels must have one entry per element");
  if (!w.clash_free()) throw RepairError(RepairErrorKind::Clash, "labeled structure has a clash");
  if (!is_unfolded(w, definitional_absorption(defs)))
    throw RepairError(RepairErrorKind::NotUnfolded, "labeled structure is not unfolded");
}

}  // namespace

FiniteInterpretation repair_model_primitive(const LabeledStructure& w, const std::vector<Axiom>& tprim) {
  if (!is_primitive(tprim)) throw RepairError(RepairErrorKind::Cyclic, "definitions are not primitive");
  std::set<std::string> defined, seen;
  for (const auto& d : tprim) defined.insert(d.lhs.name());
  for (const auto& d : tprim) {
    for (const auto& a : signature_of(d.rhs).atoms)
      if (defined.contains(a) && !seen.contains(a))
        throw RepairError(RepairErrorKind::NotLinearised,
                          "'" + d.lhs.name() + "' uses '" + a + "', which is defined later");
    seen.insert(d.lhs.name());
  }
  check_witness_preconditions(w, tprim);

  FiniteInterpretation i = initial_interpretation(w, tprim);
  for (const auto& d : tprim) i.atom_ext[d.lhs.name()] = eval(i, d.rhs);
  return i;
}

FiniteInterpretation repair_model_stratified(const LabeledStructure& w,
                                             const std::vector<std::vector<Axiom>>& strata,
                                             RepairStats* stats) {
  std::vector<Axiom> all;
  std::set<std::string> defined;
  for (const auto& s : strata)
    for (const auto& d : s) {
      if (d.kind != AxiomKind::Eq || !d.lhs.is_atom())
        throw RepairError(RepairErrorKind::Malformed, "stratum entries must be atomic definitions");
      if (!defined.insert(d.lhs.name()).second)
        throw RepairError(RepairErrorKind::Malformed, "'" + d.lhs.name() + "' is defined twice");
      all.push_back(d);
    }
  for (std::size_t i = 0; i < strata.size(); ++i) {
    for (const auto& d : strata[i])
      for (const auto& other : strata[i])
        if (!syntactically_monotone(d.rhs, other.lhs.name()))
          throw RepairError(RepairErrorKind::InvalidStratification,
                            "definition of '" + d.lhs.name() + "' is not monotone in '" + other.lhs.name() + "'");
    for (std::size_t j = 0; j < i; ++j)
      for (const auto& earlier : strata[j]) {
        Signature used = signature_of(earlier);
        for (const auto& d : strata[i])
          if (used.atoms.contains(d.lhs.name()))
            throw RepairError(RepairErrorKind::InvalidStratification,
                              "'" + d.lhs.name() + "' occurs in an earlier stratum");
      }
  }
  check_witness_preconditions(w, all);

  FiniteInterpretation interp = initial_interpretation(w, all);
  if (stats) stats->iterations.clear();
  for (const auto& stratum : strata) {
    std::vector<ElementSet> pos, neg, x(stratum.size());
    for (const auto& d : stratum) {
      pos.push_back(w.carrying(d.lhs));
      neg.push_back(w.carrying(Concept::negation(d.lhs)));
    }
    int steps = 0;
    for (;;) {
      FiniteInterpretation probe = interp;
      for (std::size_t j = 0; j < stratum.size(); ++j) probe.atom_ext[stratum[j].lhs.name()] = x[j];
      std::vector<ElementSet> next(stratum.size());
      for (std::size_t j = 0; j < stratum.size(); ++j) {
        ElementSet v = eval(probe, stratum[j].rhs);
        v.insert(pos[j].begin(), pos[j].end());
        for (int e : neg[j]) v.erase(e);
        next[j] = std::move(v);
      }
      if (next == x) break;
      x = std::move(next);
      ++steps;
    }
    for (std::size_t j = 0; j < stratum.size(); ++j) interp.atom_ext[stratum[j].lhs.name()] = x[j];
    if (stats) stats->iterations.push_back(steps);
  }
  return interp;
}

}  // namespace dlr
