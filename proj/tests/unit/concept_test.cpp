#include <doctest.h>

#include "dlr/concept.hpp"
#include "util.hpp"

using namespace dlr;
using namespace dlr::test;

TEST_CASE("n-ary constructors normalise") {
  const Concept a = atom("A"), b = atom("B");
  CHECK(Concept::conjunction({a}) == a);
  CHECK(Concept::conjunction({}) == Concept::top());
  CHECK(Concept::disjunction({}) == Concept::bottom());
  CHECK(Concept::conjunction({a, Concept::top(), b}) == Concept::conjunction({a, b}));
  CHECK(Concept::conjunction({a, Concept::bottom()}) == Concept::bottom());
  CHECK(Concept::disjunction({a, Concept::top()}) == Concept::top());
  CHECK(Concept::conjunction({a, Concept::conjunction({b, a})}).args().size() == 2);
  CHECK(Concept::disjunction({b, a, b}).args()[0] == b);
}

TEST_CASE("structural equality and roles") {
  CHECK(C("(some (inv R) A)") == Concept::exists(RoleExpr::inverse_of("R"), atom("A")));
  CHECK(C("(some R A)") != C("(some (inv R) A)"));
  CHECK(RoleExpr::named("R").inverse().inverse() == RoleExpr::named("R"));
  CHECK(C("(and A (all R B))").depth() == 2);
}

TEST_CASE("nnf") {
  CHECK(nnf(neg(C("(and A B)"))) == C("(or (not A) (not B))"));
  CHECK(nnf(neg(C("(some R A)"))) == C("(all R (not A))"));
  CHECK(nnf(neg(neg(atom("A")))) == atom("A"));
  CHECK(nnf(neg(Concept::top())) == Concept::bottom());
  const Concept c = C("(not (and A (or (not B) (all (inv R) (not (some S C))))))");
  CHECK(is_nnf(nnf(c)));
  CHECK(nnf(nnf(c)) == nnf(c));
  CHECK_FALSE(is_nnf(c));
}

TEST_CASE("complement") {
  CHECK(complement(Concept::top()) == Concept::bottom());
  CHECK(complement(atom("A")) == neg(atom("A")));
  CHECK(complement(C("(and A (all R B))")) == C("(or (not A) (some R (not B)))"));
}

TEST_CASE("internalisation concepts") {
  CHECK(axiom_internalisation_concepts(Axiom::sub(atom("A"), atom("B"))) ==
        std::vector<Concept>{C("(or (not A) B)")});
  CHECK(axiom_internalisation_concepts(Axiom::eq(atom("A"), atom("B"))) ==
        std::vector<Concept>{C("(or (not A) B)"), C("(or (not B) A)")});
  CHECK(axiom_internalisation_concepts(Axiom::sub(Concept::top(), C("(some R A)"))) ==
        std::vector<Concept>{C("(some R A)")});
  CHECK(internalisation_concepts(T("(implies A B) (equal C D)")).size() == 3);
}

TEST_CASE("defined atoms") {
  CHECK(defined_atoms(TBox{}).empty());
  CHECK(defined_atoms(T("(implies A C) (define-concept B D)")) == std::set<std::string>{"A", "B"});
  CHECK(defined_atoms(T("(implies (and A B) C)")).empty());
}

TEST_CASE("syntactic monotonicity") {
  CHECK(syntactically_monotone(C("(and a (some R a))"), "a"));
  CHECK_FALSE(syntactically_monotone(C("(not a)"), "a"));
  CHECK_FALSE(syntactically_monotone(C("(all R (all (inv R) (not a)))"), "a"));
  CHECK(syntactically_monotone(C("(not (not a))"), "a"));
  CHECK(syntactically_monotone(C("(not b)"), "a"));
}

TEST_CASE("signatures") {
  const Signature s = signature_of(C("(and A (some (inv R) (all S B)))"));
  CHECK(s.atoms == std::set<std::string>{"A", "B"});
  CHECK(s.roles == std::set<std::string>{"R", "S"});
  CHECK(uses_inverse_roles(T(kSurgery)));
  CHECK_FALSE(uses_inverse_roles(T("(implies A (some R B))")));
}

TEST_CASE("subconcepts lists children first, once each") {
  const auto subs = subconcepts(C("(and A (some R A))"));
  REQUIRE(subs.size() == 3);
  CHECK(subs[0] == atom("A"));
  CHECK(subs.back() == C("(and A (some R A))"));
}

TEST_CASE("render") {
  CHECK(render(C("(and A (some (inv R) (not B)))")) == "(and A (some (inv R) (not B)))");
  CHECK(render(Axiom::eq(atom("A"), atom("B"))) == "(define-concept A B)");
  CHECK(render(Axiom::sub(C("(and A B)"), atom("C"))) == "(implies (and A B) C)");
}
