#include <doctest.h>

#include "dlr/absorption.hpp"
#include "dlr/semantics.hpp"
#include "util.hpp"

using namespace dlr;
using namespace dlr::test;

namespace {

FiniteInterpretation edge_01() {
  FiniteInterpretation i;
  i.domain_size = 2;
  i.role_ext["R"] = {{0, 1}};
  i.atom_ext["A"] = {1};
  return i;
}

LabeledStructure single(std::set<Concept> label) {
  LabeledStructure w = LabeledStructure::empty(1);
  w.labels[0] = std::move(label);
  return w;
}

}  // namespace

TEST_CASE("eval") {
  FiniteInterpretation one;
  CHECK(eval(one, Concept::top()) == ElementSet{0});
  CHECK(eval(one, atom("A")).empty());

  const FiniteInterpretation i = edge_01();
  CHECK(eval(i, C("(some R A)")) == ElementSet{0});
  CHECK(eval(i, C("(all (inv R) bottom)")) == ElementSet{0});
  CHECK(eval(i, C("(some (inv R) (not A))")) == ElementSet{1});
  CHECK(eval(i, C("(all R A)")) == ElementSet{0, 1});
  CHECK(eval(i, C("(or A (not A))")) == ElementSet{0, 1});
}

TEST_CASE("interpretations validate element ranges") {
  FiniteInterpretation i;
  i.domain_size = 1;
  i.atom_ext["A"] = {1};
  CHECK_THROWS_AS(i.validate(), std::invalid_argument);
}

TEST_CASE("satisfies") {
  FiniteInterpretation i;
  CHECK(satisfies(i, TBox{}));
  CHECK(satisfies(i, T("(implies A B)")));
  i.atom_ext["A"] = {0};
  CHECK_FALSE(satisfies(i, T("(implies A B)")));
  CHECK_FALSE(satisfies(i, T("(equal A B)")));
  i.atom_ext["B"] = {0};
  CHECK(satisfies(i, T("(equal A B)")));
}

TEST_CASE("enumeration counts") {
  CHECK(interpretation_count({{"A"}, {}}, 1) == 2);
  CHECK(interpretation_count({{"A", "B"}, {}}, 1) == 4);
  CHECK(interpretation_count({{"A"}, {"R"}}, 2) == 68);

  std::set<std::string> seen;
  const auto visited = enumerate_interpretations({{"A"}, {"R"}}, 2, [&](const FiniteInterpretation& i) {
    seen.insert(render(i));
    return true;
  });
  CHECK(visited == 68);
  CHECK(seen.size() == 68);

  int stopped = 0;
  enumerate_interpretations({{"A"}, {}}, 3, [&](const FiniteInterpretation&) { return ++stopped < 3; });
  CHECK(stopped == 3);
}

TEST_CASE("enumeration budget") {
  OracleBudget tight;
  tight.interpretation_bits = 8;
  CHECK_THROWS_AS(enumerate_interpretations({{"A"}, {"R"}}, 3, [](const FiniteInterpretation&) { return true; }, tight),
                  BudgetExceeded);
  CHECK_THROWS_AS(sat_bruteforce(atom("A"), T("(implies A (some R B))"), 3, tight), BudgetExceeded);
}

TEST_CASE("bounded equivalence") {
  const TBox t = T("(equal A C)");
  const Signature sig = t.signature();
  CHECK(equivalent_bounded(t, t, sig, 2));
  CHECK(equivalent_bounded(t, T("(implies A C) (implies C A)"), sig, 3));

  const auto r = equivalent_bounded(T("(implies A B)"), TBox{}, {{"A", "B"}, {}}, 1);
  CHECK_FALSE(r.equivalent);
  REQUIRE(r.counterexample);
  CHECK(r.counterexample->atom("A") == ElementSet{0});
  CHECK(r.counterexample->atom("B").empty());

  const auto all = equivalent_bounded_all(t, {t, TBox{}, T("(implies C A) (implies A C)")}, sig, 2);
  REQUIRE(all.size() == 3);
  CHECK(all[0]);
  CHECK_FALSE(all[1]);
  CHECK(all[2]);
}

TEST_CASE("bounded satisfiability") {
  auto m = sat_bruteforce(atom("A"), TBox{}, 1);
  REQUIRE(m);
  CHECK(m->domain_size == 1);
  CHECK(m->atom("A") == ElementSet{0});

  CHECK_FALSE(sat_bruteforce(C("(and A (not A))"), TBox{}, 3));

  const TBox loop = T("(implies A (some R A))");
  m = sat_bruteforce(atom("A"), loop, 1);
  REQUIRE(m);
  CHECK(m->role("R") == EdgeSet{{0, 0}});
  CHECK(satisfies(*m, loop));

  // Needs two elements.
  m = sat_bruteforce(C("(and A (some R (not A)))"), TBox{}, 3);
  REQUIRE(m);
  CHECK(m->domain_size == 2);
}

TEST_CASE("bounded monotonicity") {
  const Signature sig{{"a"}, {"R"}};
  CHECK(monotone_bounded(atom("a"), "a", sig, 3));
  CHECK_FALSE(monotone_bounded(neg(atom("a")), "a", sig, 3));
  CHECK_FALSE(monotone_bounded(C("(all R (all (inv R) (not a)))"), "a", sig, 2));
  CHECK(monotone_bounded(C("(and a (some R a))"), "a", sig, 3));
}

TEST_CASE("stemming") {
  FiniteInterpretation i;
  CHECK(stems_from(i, LabeledStructure::empty(1)));
  CHECK_FALSE(stems_from(i, single({atom("A")})));
  i.atom_ext["A"] = {0};
  CHECK(stems_from(i, single({atom("A")})));
  CHECK_FALSE(stems_from(i, single({neg(atom("A"))})));
  CHECK_FALSE(stems_from(i, LabeledStructure::empty(2)));
  i.role_ext["R"] = {{0, 0}};
  CHECK_FALSE(stems_from(i, LabeledStructure::empty(1)));
}

TEST_CASE("witness conditions") {
  CHECK(is_witness(single({atom("A")}), atom("A")));
  CHECK_FALSE(is_witness(single({atom("A"), neg(atom("A"))}), atom("A")));
  CHECK_FALSE(is_witness(single({C("(some R top)")}), C("(some R top)")));
  CHECK_FALSE(is_witness(single({atom("A")}), atom("B")));
  // A is pinned, so (or A B) holds in every completion; (or B D) does not.
  CHECK(is_witness(single({atom("A"), C("(or A B)")}), atom("A")));
  CHECK_FALSE(is_pre_witness(single({C("(or B D)")})));

  LabeledStructure w = LabeledStructure::empty(2);
  w.role_ext["R"] = {{0, 1}};
  w.labels[0] = {C("(some R A)")};
  w.labels[1] = {atom("A")};
  CHECK(is_witness(w, C("(some R A)")));
  CHECK(w.carrying(atom("A")) == ElementSet{1});
}

TEST_CASE("unfoldedness") {
  CHECK(is_unfolded(single({atom("A")}), Absorption{}));
  Absorption a;
  a.tu.add_inclusion("A", atom("B"));
  CHECK_FALSE(is_unfolded(single({atom("A")}), a));
  CHECK(is_unfolded(single({atom("A"), atom("B")}), a));
  CHECK(is_unfolded(single({}), a));

  a.tg.push_back(Clause::from_concept(C("(or C D)")));
  CHECK_FALSE(is_unfolded(single({}), a));
  CHECK(is_unfolded(single({C("(or C D)")}), a));
}

TEST_CASE("canonical witness") {
  FiniteInterpretation i;
  i.atom_ext["A"] = {0};
  CHECK(canonical_witness(i, {}).labels[0].empty());
  CHECK(canonical_witness(i, {atom("A"), neg(atom("A"))}).labels[0] == std::set<Concept>{atom("A")});

  const TBox t = T(kSurgery);
  for (AbsorptionMode m : {AbsorptionMode::None, AbsorptionMode::Basic, AbsorptionMode::Enhanced}) {
    const Absorption a = absorb(t, m);
    const auto closure = oracle_closure(t, a);
    enumerate_interpretations(t.signature(), 2, [&](const FiniteInterpretation& in) {
      CHECK(is_unfolded(canonical_witness(in, closure), a) == satisfies(in, t));
      return true;
    });
  }
}

TEST_CASE("admissible completion") {
  const TBox t = T("(implies A B)");
  CHECK(admissible_completion(single({atom("A")}), t));
  CHECK_FALSE(admissible_completion(single({atom("A"), neg(atom("B"))}), t));
}

TEST_CASE("primitive repair") {
  LabeledStructure w = single({atom("B")});
  const FiniteInterpretation same = repair_model_primitive(w, {});
  CHECK(same == initial_interpretation(w));

  const std::vector<Axiom> ab{Axiom::eq(atom("A"), atom("B"))};
  FiniteInterpretation i = repair_model_primitive(w, ab);
  CHECK(i.atom("A") == ElementSet{0});
  CHECK(i.atom("B") == ElementSet{0});

  LabeledStructure two = LabeledStructure::empty(2);
  two.role_ext["R"] = {{0, 1}};
  two.labels[1] = {atom("B")};
  i = repair_model_primitive(two, {Axiom::eq(atom("A"), C("(some R B)"))});
  CHECK(i.atom("A") == ElementSet{0});
  CHECK(stems_from(i, two));
}

TEST_CASE("primitive repair preconditions") {
  const LabeledStructure w = single({});
  auto kind_of = [](auto&& f) {
    try {
      f();
    } catch (const RepairError& e) {
      return e.kind();
    }
    FAIL("expected RepairError");
    return RepairErrorKind::Malformed;
  };
  CHECK(kind_of([&] { repair_model_primitive(w, {Axiom::eq(atom("A"), neg(atom("A")))}); }) == RepairErrorKind::Cyclic);
  CHECK(kind_of([&] {
          repair_model_primitive(w, {Axiom::eq(atom("A"), atom("B")), Axiom::eq(atom("B"), atom("C"))});
        }) == RepairErrorKind::NotLinearised);
  CHECK(kind_of([&] { repair_model_primitive(single({atom("A"), neg(atom("A"))}), {}); }) == RepairErrorKind::Clash);
  CHECK(kind_of([&] { repair_model_primitive(single({atom("A")}), {Axiom::eq(atom("A"), atom("B"))}); }) ==
        RepairErrorKind::NotUnfolded);

  const auto ordered = linearise(std::vector<Axiom>{Axiom::eq(atom("A"), atom("B")), Axiom::eq(atom("B"), atom("C"))});
  CHECK(ordered[0].lhs == atom("B"));
  CHECK_NOTHROW(repair_model_primitive(w, ordered));
}

TEST_CASE("stratified repair") {
  const LabeledStructure w = single({atom("B")});
  const std::vector<Axiom> ab{Axiom::eq(atom("A"), atom("B"))};
  CHECK(repair_model_stratified(w, {ab}) == repair_model_primitive(w, ab));

  LabeledStructure loop = LabeledStructure::empty(1);
  loop.role_ext["R"] = {{0, 0}};
  RepairStats stats;
  FiniteInterpretation i = repair_model_stratified(loop, {{Axiom::eq(atom("A"), C("(some R A)"))}}, &stats);
  CHECK(i.atom("A").empty());
  REQUIRE(stats.iterations.size() == 1);
  CHECK(stats.iterations[0] <= 1);

  // performs = {(1, 0)}: 1 is a surgeon, 0 a procedure.
  const TBox t = T(kSurgery);
  LabeledStructure ward = LabeledStructure::empty(2);
  ward.role_ext["performs"] = {{1, 0}};
  ward.labels[0] = {atom("procedure"), neg(atom("surgeon"))};
  ward.labels[1] = {atom("surgeon"), neg(atom("procedure"))};
  const auto strata = stratify(t.axioms);
  REQUIRE(strata);
  i = repair_model_stratified(ward, *strata, &stats);
  CHECK(satisfies(i, t));
  CHECK(stems_from(i, ward));
  // The least fixed point leaves the mutually supporting pair empty.
  CHECK(i.atom("o-surgeon").empty());
  CHECK(i.atom("o-procedure").empty());

  // Pinning o-surgeon at 1 forces o-procedure at 0.
  ward.labels[1].insert(atom("o-surgeon"));
  ward.labels[1].insert(C("(and surgeon (all performs o-procedure))"));
  ward.labels[1].insert(C("(all performs o-procedure)"));
  i = repair_model_stratified(ward, *strata);
  CHECK(satisfies(i, t));
  CHECK(i.atom("o-procedure") == ElementSet{0});
  CHECK(i.atom("o-surgeon") == ElementSet{1});
}

TEST_CASE("stratified repair rejects bad strata") {
  const LabeledStructure w = single({});
  const Concept a = atom("A");
  CHECK_THROWS_AS(repair_model_stratified(w, {{Axiom::eq(a, C("(all R (all (inv R) (not A)))"))}}), RepairError);
  CHECK_THROWS_AS(repair_model_stratified(w, {{Axiom::eq(a, atom("B"))}, {Axiom::eq(a, atom("C"))}}), RepairError);
  CHECK_THROWS_AS(repair_model_stratified(w, {{Axiom::eq(a, atom("B"))}, {Axiom::eq(atom("B"), atom("C"))}}),
                  RepairError);
  CHECK_THROWS_AS(repair_model_stratified(w, {{Axiom::sub(a, atom("B"))}}), RepairError);
}
