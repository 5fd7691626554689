#include <doctest.h>

#include <algorithm>

#include "dlr/absorption.hpp"
#include "dlr/generators.hpp"
#include "dlr/semantics.hpp"
#include "util.hpp"

using namespace dlr;
using namespace dlr::test;

namespace {

constexpr AbsorptionMode kModes[] = {AbsorptionMode::None, AbsorptionMode::Basic, AbsorptionMode::Enhanced};

Axiom def(const std::string& a, const std::string& rhs) { return Axiom::eq(atom(a), C(rhs)); }

}  // namespace

TEST_CASE("mode names") {
  CHECK(parse_absorption_mode("basic") == AbsorptionMode::Basic);
  CHECK(to_string(AbsorptionMode::Enhanced) == "enhanced");
  CHECK_THROWS_AS(parse_absorption_mode("full"), std::invalid_argument);
}

TEST_CASE("clauses") {
  Clause g = Clause::from_inclusion(C("(and C A)"), atom("D"));
  CHECK(g.disjuncts == std::vector<Concept>{atom("D"), C("(or (not C) (not A))")});
  g.add(atom("D"));
  CHECK(g.disjuncts.size() == 2);
  CHECK(Clause::from_concept(C("(or A B)")).disjuncts.size() == 2);
}

TEST_CASE("primitivity") {
  CHECK(is_primitive(std::vector<Axiom>{def("A", "B"), def("B", "C")}));
  CHECK_FALSE(is_primitive(std::vector<Axiom>{def("A", "(not A)")}));
  CHECK_FALSE(is_primitive(T(kSurgery).axioms));
  CHECK_FALSE(is_primitive(std::vector<Axiom>{def("A", "B"), def("A", "C")}));
  CHECK_FALSE(is_primitive(std::vector<Axiom>{Axiom::sub(atom("A"), atom("B"))}));
}

TEST_CASE("stratification") {
  auto s = stratify(std::vector<Axiom>{def("A", "B")});
  REQUIRE(s);
  CHECK(*s == std::vector<std::vector<Axiom>>{{def("A", "B")}});

  s = stratify(T(kSurgery).axioms);
  REQUIRE(s);
  REQUIRE(s->size() == 1);
  CHECK((*s)[0].size() == 2);

  CHECK_FALSE(stratify(std::vector<Axiom>{def("A", "(all R (all (inv R) (not A)))")}));
  CHECK_FALSE(stratify(std::vector<Axiom>{def("A", "(not A)")}));

  // Callees first.
  s = stratify(std::vector<Axiom>{def("A", "(and B C)"), def("B", "(some R B)")});
  REQUIRE(s);
  REQUIRE(s->size() == 2);
  CHECK((*s)[0][0].lhs == atom("B"));

  // Each of the three pairs is its own stratum.
  s = stratify(gen_cyclic_pairs(3).axioms);
  REQUIRE(s);
  CHECK(std::ranges::count_if(*s, [](const auto& st) { return st.size() == 2; }) == 3);
}

TEST_CASE("distribution") {
  Distribution d = distribute(T("(implies A C)"), AbsorptionMode::Basic);
  CHECK(d.tinc == std::vector<Axiom>{Axiom::sub(atom("A"), atom("C"))});
  CHECK(d.tprim.empty());
  CHECK(d.tg.empty());

  const TBox pair = T(kSurgery);
  d = distribute(pair, AbsorptionMode::Basic);
  CHECK(d.tprim == std::vector<Axiom>{pair.axioms[0]});
  CHECK(d.tg == std::vector<Axiom>{Axiom::sub(pair.axioms[1].lhs, pair.axioms[1].rhs),
                                   Axiom::sub(pair.axioms[1].rhs, pair.axioms[1].lhs)});
  CHECK(d.routing[1] == Disposition::SplitThenProcessed);

  d = distribute(pair, AbsorptionMode::Enhanced);
  CHECK(d.tprim == pair.axioms);
  CHECK(d.tg.empty());

  // An inclusion on a defined atom, a second definition, and general axioms.
  d = distribute(T("(define-concept A B) (implies A C) (define-concept A D) (implies (some R A) B) (equal (some R A) B)"),
                 AbsorptionMode::Basic);
  CHECK(d.tprim.size() == 1);
  CHECK(d.tinc.empty());
  CHECK(d.tg.size() == 6);
  CHECK(d.routing == std::vector<Disposition>{Disposition::Tprim, Disposition::ResidualTg,
                                              Disposition::SplitThenProcessed, Disposition::ResidualTg,
                                              Disposition::SplitThenProcessed});

  // An atom already used as an inclusion lhs cannot be defined afterwards.
  d = distribute(T("(implies A C) (define-concept A B)"), AbsorptionMode::Enhanced);
  CHECK(d.tprim.empty());
  CHECK(d.tinc.size() == 1);
}

TEST_CASE("pitfall definitions stay out of the definition part") {
  for (AbsorptionMode m : kModes) {
    for (const char* text : {"(define-concept A (not A))", "(define-concept A (all R (all (inv R) (not A))))"}) {
      const TBox t = T(text);
      CHECK(distribute(t, m).tprim.empty());
      CHECK_FALSE(absorb(t, m).tu.is_definitional("A"));
    }
  }
}

TEST_CASE("the definition check can be switched off for negative controls") {
  AbsorbOptions broken;
  broken.skip_definition_check = true;
  const Distribution d = distribute(T("(define-concept A (not A))"), AbsorptionMode::Basic, broken);
  CHECK(d.tprim.size() == 1);
}

TEST_CASE("clause absorption") {
  const std::vector<Axiom> none;
  ClauseOutcome out = absorb_clause(Clause::from_inclusion(C("(and C A)"), atom("D")), none);
  REQUIRE(out.absorbed);
  CHECK(out.atom == "A");
  CHECK(out.inclusion == Axiom::sub(atom("A"), C("(or D (not C))")));

  const std::vector<Axiom> tprim{def("A", "E")};
  out = absorb_clause(Clause{{atom("D"), neg(atom("A"))}}, tprim);
  REQUIRE(out.absorbed);
  CHECK(out.atom == "E");
  CHECK(out.inclusion == Axiom::sub(atom("E"), atom("D")));

  out = absorb_clause(Clause{{C("(some R C)")}}, none);
  CHECK_FALSE(out.absorbed);
  CHECK(out.residual == Clause{{C("(some R C)")}});

  // Unfolding a positive literal of a definition with a negated conjunct.
  out = absorb_clause(Clause{{atom("A"), C("(some R B)")}}, std::vector<Axiom>{def("A", "(not (and P Q))")});
  REQUIRE(out.absorbed);
  CHECK(out.atom == "P");

  out = absorb_clause(Clause{{C("(some R A)")}}, none, 0);
  CHECK(out.fuel_exhausted);
  CHECK_FALSE(out.absorbed);
}

TEST_CASE("absorbing the orthopaedic pair") {
  CHECK(absorb(TBox{}, AbsorptionMode::Basic).tu.empty());
  CHECK(absorb(TBox{}, AbsorptionMode::Basic).tg.empty());

  const TBox pair = T(kSurgery);
  const Absorption basic = absorb(pair, AbsorptionMode::Basic);
  CHECK(basic.tg.empty());
  CHECK(basic.tu.is_definitional("o-procedure"));
  CHECK_FALSE(basic.tu.is_definitional("o-surgeon"));
  REQUIRE(basic.log.size() == 2);
  REQUIRE(basic.log[1].parts.size() == 2);
  for (const auto& part : basic.log[1].parts) CHECK(part.outcome == Disposition::AbsorbedIntoTinc);
  // The converse direction becomes a disjunctive inclusion on surgeon.
  CHECK(basic.tu.lookup(LiteralKey::pos("surgeon")).size() == 1);

  const Absorption enhanced = absorb(pair, AbsorptionMode::Enhanced);
  CHECK(enhanced.tg.empty());
  CHECK(enhanced.tu.is_definitional("o-surgeon"));
  REQUIRE(enhanced.strata);
  CHECK(enhanced.strata->size() == 1);

  const Absorption none = absorb(pair, AbsorptionMode::None);
  CHECK(none.tu.empty());
  CHECK(none.tg.size() == 4);
}

TEST_CASE("reconstruction") {
  CHECK(reconstruct_axioms(Absorption{}).empty());
  Absorption a;
  a.tu.add_definition("A", atom("D"));
  CHECK(reconstruct_axioms(a) == T("(define-concept A D)"));
  a = {};
  a.tg.push_back(Clause{{neg(atom("C")), atom("D")}});
  CHECK(reconstruct_axioms(a) == TBox{{Axiom::sub(Concept::top(), C("(or (not C) D)"))}});
}

TEST_CASE("unfold table shape") {
  UnfoldTable tu;
  tu.add_definition("A", C("(and B C)"));
  tu.add_inclusion("D", atom("B"));
  CHECK(tu.lookup(LiteralKey::neg("A"))[0] == C("(or (not B) (not C))"));
  CHECK(tu.lookup(LiteralKey::neg("D")).empty());
  CHECK(tu.origins().at("D") == AtomOrigin::InclusionOnly);
  CHECK(tu.definitions() == T("(define-concept A (and B C))").axioms);
}

TEST_CASE("absorption preserves models on random terminologies") {
  Rng rng(11);
  TBoxShape shape;
  shape.max_bits = 15;
  for (int i = 0; i < 60; ++i) {
    const TBox t = random_tbox(rng, shape);
    for (AbsorptionMode m : kModes) {
      const Absorption a = absorb(t, m);
      INFO(render(t), to_string(m));
      CHECK(equivalent_bounded(t, reconstruct_axioms(a), t.signature(), 3));
      CHECK(a.log.size() == t.size());
      // Shape: literal keys only, inclusion-only atoms never definitional.
      for (const auto& [atom_name, origin] : a.tu.origins())
        if (origin == AtomOrigin::InclusionOnly) CHECK_FALSE(a.tu.lookup(LiteralKey::neg(atom_name)).size() > 0);
    }
    // Routing is greedy, so enhanced need not keep basic's definitions, but
    // it always accepts basic's set.
    const auto basic = distribute(t, AbsorptionMode::Basic).tprim;
    CHECK(stratify(basic));
  }
}

TEST_CASE("axiom order may change the split but not the meaning") {
  const TBox t = T("(implies A (some R B)) (define-concept A (and B C)) (implies (some R C) A)");
  TBox reversed = t;
  std::ranges::reverse(reversed.axioms);
  const Absorption a = absorb(t, AbsorptionMode::Basic), b = absorb(reversed, AbsorptionMode::Basic);
  CHECK(a.tu.is_definitional("A") != b.tu.is_definitional("A"));
  CHECK(equivalent_bounded(reconstruct_axioms(a), reconstruct_axioms(b), t.signature(), 3));
}

TEST_CASE("render lists the three parts and the log") {
  const std::string text = render(absorb(T(kSurgery), AbsorptionMode::Basic));
  CHECK(text.find("; Tu definitional") != std::string::npos);
  CHECK(text.find("; Tu inclusions") != std::string::npos);
  CHECK(text.find("; Tg residual clauses") != std::string::npos);
  CHECK(text.find("AbsorbedIntoTinc") != std::string::npos);
}
