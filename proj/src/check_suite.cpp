#include "dlr/check_suite.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>

#include "dlr/absorption.hpp"
#include "dlr/classifier.hpp"
#include "dlr/generators.hpp"
#include "dlr/parser.hpp"

namespace dlr {

namespace {

constexpr AbsorptionMode kModes[] = {AbsorptionMode::None, AbsorptionMode::Basic, AbsorptionMode::Enhanced};

Rng instance_rng(const CheckBudget& b, std::uint64_t salt, int i) {
  std::seed_seq seq{b.seed, salt, static_cast<std::uint64_t>(i)};
  return Rng(seq);
}

AbsorbOptions absorb_options(const CheckBudget& b) {
  AbsorbOptions o;
  o.skip_definition_check = b.mutant;
  return o;
}

void fail(PropertyResult& p, std::string message) {
  ++p.failures;
  if (p.messages.size() < 3) p.messages.push_back(std::move(message));
}

// Runs body once per instance, timing the whole property. Oracle budget
// overruns count as truncations.
template <class Body>
PropertyResult run_property(const char* name, int instances, Body body) {
  PropertyResult p;
  p.name = name;
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < instances; ++i) {
    ++p.instances;
    try {
      body(i, p);
    } catch (const BudgetExceeded&) {
      ++p.truncated;
    }
  }
  p.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return p;
}

FiniteInterpretation random_interpretation(Rng& rng, const Signature& sig, int max_domain) {
  FiniteInterpretation i;
  i.domain_size = std::uniform_int_distribution<int>(1, std::max(1, max_domain))(rng);
  std::bernoulli_distribution coin(0.5), edge(0.35);
  for (const auto& a : sig.atoms)
    for (int x = 0; x < i.domain_size; ++x)
      if (coin(rng)) i.atom_ext[a].insert(x);
  for (const auto& r : sig.roles)
    for (int x = 0; x < i.domain_size; ++x)
      for (int y = 0; y < i.domain_size; ++y)
        if (edge(rng)) i.role_ext[r].emplace(x, y);
  return i;
}

AbsorptionMode random_mode(Rng& rng) { return kModes[std::uniform_int_distribution<int>(0, 2)(rng)]; }

TBoxShape shape_with_bits(int bits) {
  TBoxShape s;
  s.max_bits = bits;
  return s;
}

// Adds Tu right-hand sides for every literal and all Tg concepts.
void unfold_labels(LabeledStructure& w, const Absorption& a) {
  const auto tg = a.tg_concepts();
  for (auto& label : w.labels) {
    label.insert(tg.begin(), tg.end());
    for (bool grew = true; grew;) {
      grew = false;
      std::vector<Concept> add;
      for (const auto& c : label)
        if (c.is_literal())
          for (const auto& d : a.tu.lookup({c.literal_atom(), c.is_negated_atom()}))
            if (!label.contains(d)) add.push_back(d);
      for (auto& c : add) grew = label.insert(std::move(c)).second || grew;
    }
  }
}

void thin(LabeledStructure& w, Rng& rng, double keep) {
  std::bernoulli_distribution coin(keep);
  for (auto& label : w.labels) std::erase_if(label, [&](const Concept&) { return !coin(rng); });
}

// Does h claim sub [= super?
bool claims_subsumption(const Hierarchy& h, const std::string& sub, const std::string& super) {
  const int from = h.class_of(sub), to = h.class_of(super);
  if (from == to || from == 1 || to == 0) return true;
  std::vector<int> stack{from};
  std::set<int> seen{from};
  while (!stack.empty()) {
    const int c = stack.back();
    stack.pop_back();
    for (const auto& [lo, hi] : h.direct_edges)
      if (lo == c && seen.insert(hi).second) {
        if (hi == to) return true;
        stack.push_back(hi);
      }
  }
  return false;
}

// Every subsumption the hierarchy claims between atoms (and top/bottom) has
// no bounded counterexample. Returns a description of the first violation.
std::optional<std::string> refute_hierarchy(const Hierarchy& h, const TBox& t, const CheckBudget& b) {
  const Signature sig = t.signature();
  std::vector<std::string> names(sig.atoms.begin(), sig.atoms.end());
  const bool inconsistent = h.class_of("top") == h.class_of("bottom");
  if (inconsistent && sat_bruteforce(Concept::top(), t, b.max_domain, b.oracle))
    return std::string("hierarchy says inconsistent, but a model exists");
  for (const auto& x : names) {
    const Concept cx = Concept::atom(x);
    if (claims_subsumption(h, x, "bottom") && sat_bruteforce(cx, t, b.max_domain, b.oracle))
      return x + " claimed unsatisfiable, but has a model";
    if (claims_subsumption(h, "top", x) && sat_bruteforce(Concept::negation(cx), t, b.max_domain, b.oracle))
      return x + " claimed equivalent to top, but (not " + x + ") has a model";
    for (const auto& y : names)
      if (x != y && claims_subsumption(h, x, y) &&
          sat_bruteforce(Concept::conjunction({cx, Concept::negation(Concept::atom(y))}), t, b.max_domain, b.oracle))
        return x + " [= " + y + " claimed, but refuted by a model";
  }
  return std::nullopt;
}

}  // namespace

bool CheckReport::passed() const {
  return std::ranges::all_of(properties, [](const PropertyResult& p) { return p.passed(); });
}

PropertyResult check_absorption_equivalence(const CheckBudget& b) {
  return run_property("absorption-equivalence", b.instances, [&](int i, PropertyResult& p) {
    Rng rng = instance_rng(b, 1, i);
    const TBox t = random_tbox(rng, shape_with_bits(b.oracle.interpretation_bits));
    std::vector<TBox> candidates;
    for (AbsorptionMode m : kModes) candidates.push_back(reconstruct_axioms(absorb(t, m, absorb_options(b))));
    const auto results = equivalent_bounded_all(t, candidates, t.signature(), b.max_domain, b.oracle);
    ++p.nontrivial;
    for (std::size_t k = 0; k < results.size(); ++k)
      if (!results[k])
        fail(p, "mode " + std::string(to_string(kModes[k])) + " not equivalent on\n" + render(t) +
                    "counterexample:\n" + render(*results[k].counterexample));
  });
}

PropertyResult check_mode_agreement(const CheckBudget& b) {
  return run_property("mode-agreement", b.instances, [&](int i, PropertyResult& p) {
    Rng rng = instance_rng(b, 2, i);
    const TBoxShape shape = shape_with_bits(b.oracle.interpretation_bits);
    const TBox t = random_tbox(rng, shape);
    const Concept c = random_query(rng, t, shape);
    const std::string where = "query " + render(c) + " on\n" + render(t);

    std::optional<SatStatus> verdict;
    bool exhausted = false;
    for (AbsorptionMode m : kModes) {
      const Absorption a = absorb(t, m, absorb_options(b));
      SatResult r = check_sat(c, a, b.reasoner);
      if (r.status == SatStatus::ResourceExhausted) {
        exhausted = true;
        continue;
      }
      if (verdict && *verdict != r.status)
        fail(p, "verdicts differ (" + std::string(to_string(m)) + " says " + std::string(to_string(r.status)) +
                    ") for " + where);
      verdict = r.status;
      if (r.model) {
        if (!satisfies(*r.model, t)) fail(p, "extracted model violates the TBox (" + std::string(to_string(m)) + ") for " + where);
        if (eval(*r.model, c).empty())
          fail(p, "extracted model misses the query (" + std::string(to_string(m)) + ") for " + where);
      }
    }
    if (exhausted) ++p.skipped;
    if (!verdict) return;
    ++p.nontrivial;
    if (*verdict == SatStatus::Unsat && sat_bruteforce(c, t, b.max_domain, b.oracle))
      fail(p, "answered unsat although a bounded model exists for " + where);
  });
}

PropertyResult check_repair_primitive(const CheckBudget& b) {
  return run_property("repair-primitive", b.instances, [&](int i, PropertyResult& p) {
    Rng rng = instance_rng(b, 3, i);
    std::uniform_int_distribution<int> defs(1, 4), base(1, 3), roles(0, 1), depth(0, 3);
    for (int attempt = 0; attempt < 50; ++attempt) {
      const auto tprim = random_primitive_definitions(rng, defs(rng), base(rng), roles(rng), depth(rng));
      const auto w = random_unfolded_witness(rng, tprim, std::min(3, b.max_domain));
      if (!w) continue;
      ++p.nontrivial;
      const FiniteInterpretation model = repair_model_primitive(*w, tprim);
      if (!stems_from(model, *w)) fail(p, "repair does not stem from the structure for\n" + render(TBox{tprim}));
      if (!satisfies(model, TBox{tprim})) fail(p, "repair is not a model of\n" + render(TBox{tprim}));
      return;
    }
    ++p.skipped;
  });
}

PropertyResult check_repair_stratified(const CheckBudget& b) {
  return run_property("repair-stratified", b.instances, [&](int i, PropertyResult& p) {
    Rng rng = instance_rng(b, 4, i);
    std::uniform_int_distribution<int> defs(1, 4), base(1, 3), roles(0, 1), depth(1, 3);
    for (int attempt = 0; attempt < 50; ++attempt) {
      const auto tdef = random_stratified_definitions(rng, defs(rng), base(rng), roles(rng), depth(rng));
      const auto strata = stratify(tdef);
      const auto w = random_unfolded_witness(rng, tdef, std::min(3, b.max_domain));
      if (!w) continue;
      ++p.nontrivial;
      RepairStats stats;
      const FiniteInterpretation model = repair_model_stratified(*w, *strata, &stats);
      if (!stems_from(model, *w)) fail(p, "repair does not stem from the structure for\n" + render(TBox{tdef}));
      if (!satisfies(model, TBox{tdef})) fail(p, "repair is not a model of\n" + render(TBox{tdef}));
      for (std::size_t s = 0; s < strata->size(); ++s)
        if (stats.iterations.at(s) > static_cast<int>((*strata)[s].size()) * w->domain_size)
          fail(p, "fixed-point iteration exceeded its ceiling for\n" + render(TBox{tdef}));
      return;
    }
    ++p.skipped;
  });
}

PropertyResult check_pitfall_guards(const CheckBudget& b) {
  const Concept a = Concept::atom("A");
  const RoleExpr r = RoleExpr::named("R");
  const Axiom self_negation = Axiom::eq(a, Concept::negation(a));
  const Axiom inverse_loop = Axiom::eq(a, Concept::forall(r, Concept::forall(r.inverse(), Concept::negation(a))));

  // Two fixed TBoxes, then each pitfall mixed into random ones.
  return run_property("pitfall-guards", std::max(2, b.instances / 5), [&](int i, PropertyResult& p) {
    Rng rng = instance_rng(b, 5, i);
    const Axiom& pitfall = i % 2 == 0 ? self_negation : inverse_loop;
    TBox t{{pitfall}};
    if (i >= 2) {
      // At most A, B, C and R once the pitfall is in: 18 bits at domain 3.
      TBoxShape shape = shape_with_bits(18);
      shape.max_axioms = 3;
      shape.max_atoms = 3;
      shape.max_roles = 1;
      t = random_tbox(rng, shape);
      const auto at = std::uniform_int_distribution<std::size_t>(0, t.axioms.size())(rng);
      t.axioms.insert(t.axioms.begin() + static_cast<std::ptrdiff_t>(at), pitfall);
    }
    ++p.nontrivial;
    if (stratify(std::vector<Axiom>{pitfall})) fail(p, "stratify accepted " + render(pitfall));
    std::set<std::string> refuted;
    for (AbsorptionMode m : kModes) {
      const Distribution d = distribute(t, m, absorb_options(b));
      if (std::ranges::find(d.tprim, pitfall) != d.tprim.end())
        fail(p, render(pitfall) + " placed among the definitions in mode " + std::string(to_string(m)));
      ClassifyOptions opts;
      opts.reasoner = b.reasoner;
      opts.reasoner.extract_model = false;
      opts.timeout_ms = 20'000;
      const Hierarchy h = classify(t, m, opts);
      if (!h.complete()) {
        ++p.skipped;
        continue;
      }
      if (refuted.insert(digest(h)).second)
        if (auto why = refute_hierarchy(h, t, b))
          fail(p, "mode " + std::string(to_string(m)) + ": " + *why + " for\n" + render(t));
      if (i == 0 && h.class_of("top") != h.class_of("bottom"))
        fail(p, "mode " + std::string(to_string(m)) + " misses the inconsistency of " + render(pitfall));
      if (i == 1 && h.class_of("A") != h.class_of("top"))
        fail(p, "mode " + std::string(to_string(m)) + " misses that A is equivalent to top in " + render(pitfall));
    }
  });
}

PropertyResult check_monotonicity(const CheckBudget& b) {
  return run_property("monotonicity", b.instances, [&](int i, PropertyResult& p) {
    Rng rng = instance_rng(b, 6, i);
    ConceptShape shape;
    shape.atoms = {"A", "B"};
    shape.roles = {"R"};
    shape.max_depth = std::uniform_int_distribution<int>(1, 3)(rng);
    // Half of the draws keep A positive so that the premise holds often.
    if (std::bernoulli_distribution(0.5)(rng)) shape.positive_only = {"A"};
    const Concept c = random_concept(rng, shape);
    const Signature sig{{"A", "B"}, {"R"}};
    if (!syntactically_monotone(c, "A")) return;
    ++p.nontrivial;
    if (!monotone_bounded(c, "A", sig, b.max_domain, b.oracle))
      fail(p, render(c) + " is syntactically monotone in A but not semantically");
  });
}

PropertyResult check_nnf(const CheckBudget& b) {
  return run_property("nnf", b.instances, [&](int i, PropertyResult& p) {
    Rng rng = instance_rng(b, 7, i);
    ConceptShape shape;
    shape.atoms = {"A", "B", "C"};
    shape.roles = {"R"};
    shape.max_depth = 4;
    const Concept c = random_concept(rng, shape);
    const Concept n = nnf(c), neg = complement(c);
    ++p.nontrivial;
    if (!is_nnf(n) || !is_nnf(neg)) fail(p, "not in negation normal form: " + render(c));
    const Signature sig{{"A", "B", "C"}, {"R"}};
    enumerate_interpretations(
        sig, std::min(2, b.max_domain),
        [&](const FiniteInterpretation& in) {
          const ElementSet ext = eval(in, c);
          const ElementSet next = eval(in, neg);
          bool ok = eval(in, n) == ext && ext.size() + next.size() == static_cast<std::size_t>(in.domain_size);
          for (int x : next) ok = ok && !ext.contains(x);
          if (!ok) fail(p, "nnf/complement changes the extension of " + render(c));
          return ok;
        },
        b.oracle);
  });
}

PropertyResult check_round_trip(const CheckBudget& b) {
  return run_property("parse-render", b.instances, [&](int i, PropertyResult& p) {
    Rng rng = instance_rng(b, 8, i);
    const TBox t = random_tbox(rng, {});
    ++p.nontrivial;
    try {
      if (parse_tbox(render(t)) != t) fail(p, "round trip changes\n" + render(t));
    } catch (const ParseError& e) {
      fail(p, std::string("rendered TBox does not parse: ") + e.what());
    }
  });
}

PropertyResult check_canonical_witness(const CheckBudget& b) {
  return run_property("canonical-witness", b.instances, [&](int i, PropertyResult& p) {
    Rng rng = instance_rng(b, 9, i);
    const TBoxShape shape = shape_with_bits(15);
    const TBox t = random_tbox(rng, shape);
    const Concept c = random_query(rng, t, shape);
    const AbsorptionMode m = random_mode(rng);
    const Absorption a = absorb(t, m, absorb_options(b));
    Signature sig = t.signature();
    sig.merge(signature_of(c));
    const FiniteInterpretation in = random_interpretation(rng, sig, b.max_domain);
    const LabeledStructure w = canonical_witness(in, oracle_closure(t, a, {c}));
    ++p.nontrivial;
    if (!eval(in, c).empty() && !is_witness(w, c, b.oracle))
      fail(p, "canonical structure is not a witness for " + render(c) + " in\n" + render(in));
    if (is_unfolded(w, a) != satisfies(in, t))
      fail(p, "unfoldedness (mode " + std::string(to_string(m)) + ") disagrees with satisfaction of\n" + render(t) +
                  "in\n" + render(in));
  });
}

PropertyResult check_correct_absorption(const CheckBudget& b) {
  return run_property("correct-absorption", 4 * b.instances, [&](int i, PropertyResult& p) {
    Rng rng = instance_rng(b, 10, i);
    const TBox t = random_tbox(rng, shape_with_bits(15));
    const AbsorptionMode m = random_mode(rng);
    const Absorption a = absorb(t, m, absorb_options(b));
    const FiniteInterpretation in = random_interpretation(rng, t.signature(), b.max_domain);
    LabeledStructure w = canonical_witness(in, oracle_closure(t, a));
    thin(w, rng, 0.3);
    unfold_labels(w, a);
    if (!w.clash_free()) return;
    if (!is_unfolded(w, a)) {
      fail(p, "closing labels under unfolding did not unfold them");
      return;
    }
    if (!is_pre_witness(w, b.oracle)) return;
    ++p.nontrivial;
    if (!admissible_completion(w, t, b.oracle))
      fail(p, "unfolded witness without a stemming model (mode " + std::string(to_string(m)) + ") for\n" + render(t));
  });
}

PropertyResult check_internalised_witness(const CheckBudget& b) {
  return run_property("internalised-witness", 4 * b.instances, [&](int i, PropertyResult& p) {
    Rng rng = instance_rng(b, 11, i);
    const TBox t = random_tbox(rng, shape_with_bits(15));
    const FiniteInterpretation in = random_interpretation(rng, t.signature(), b.max_domain);
    const Absorption none = absorb(t, AbsorptionMode::None);
    LabeledStructure w = canonical_witness(in, oracle_closure(t, none));
    thin(w, rng, 0.3);
    const auto ic = internalisation_concepts(t);
    for (auto& label : w.labels) label.insert(ic.begin(), ic.end());
    if (!w.clash_free() || !is_pre_witness(w, b.oracle)) return;
    ++p.nontrivial;
    if (!admissible_completion(w, t, b.oracle)) fail(p, "internalised witness without a stemming model for\n" + render(t));
  });
}

PropertyResult check_classification(const CheckBudget& b) {
  return run_property("classification", std::max(1, b.instances / 5), [&](int i, PropertyResult& p) {
    Rng rng = instance_rng(b, 12, i);
    const TBox t = random_tbox(rng, shape_with_bits(15));
    const std::size_t n = t.signature().atoms.size();
    ClassifyOptions opts;
    opts.reasoner = b.reasoner;
    opts.reasoner.extract_model = false;
    opts.timeout_ms = 20'000;
    std::map<std::string, std::string> digests;
    for (AbsorptionMode m : kModes) {
      const Hierarchy h = classify(t, m, opts);
      if (!h.complete()) continue;
      digests[std::string(to_string(m))] = digest(h);
      if (h.tests > n * n + n) fail(p, "more than n^2 + n tests for\n" + render(t));
      if (m == AbsorptionMode::Basic) {
        if (auto why = refute_hierarchy(h, t, b)) fail(p, *why + " for\n" + render(t));
        ClassifyOptions naive = opts;
        naive.prune = false;
        const Hierarchy full = classify(t, m, naive);
        if (full.complete() && digest(full) != digest(h)) fail(p, "pruning changes the hierarchy of\n" + render(t));
      }
    }
    if (digests.size() < 3) ++p.skipped;
    if (digests.empty()) return;
    ++p.nontrivial;
    for (const auto& [mode, d] : digests)
      if (d != digests.begin()->second) fail(p, "hierarchies differ between modes for\n" + render(t));
  });
}

CheckReport run_check_suite(const CheckBudget& b) {
  CheckReport r;
  for (auto* property :
       {check_round_trip, check_nnf, check_monotonicity, check_absorption_equivalence, check_pitfall_guards,
        check_canonical_witness, check_correct_absorption, check_internalised_witness, check_repair_primitive,
        check_repair_stratified, check_mode_agreement, check_classification})
    r.properties.push_back(property(b));
  return r;
}

std::string render(const PropertyResult& p) {
  char head[256];
  std::snprintf(head, sizeof head,
                "%-22s %s  instances=%llu nontrivial=%llu skipped=%llu truncated=%llu failures=%llu  %.0f ms",
                p.name.c_str(), p.passed() ? "PASS" : "FAIL", static_cast<unsigned long long>(p.instances),
                static_cast<unsigned long long>(p.nontrivial), static_cast<unsigned long long>(p.skipped),
                static_cast<unsigned long long>(p.truncated), static_cast<unsigned long long>(p.failures), p.ms);
  std::string out = head;
  for (const auto& m : p.messages) {
    std::istringstream lines(m);
    for (std::string line; std::getline(lines, line);) out += "\n    " + line;
  }
  return out;
}

std::string render(const CheckReport& r) {
  std::string out;
  for (const auto& p : r.properties) out += render(p) + "\n";
  out += r.passed() ? "all properties hold\n" : "some properties FAILED\n";
  return out;
}

}  // namespace dlr
