#include <doctest.h>

#include <algorithm>

#include "dlr/generators.hpp"
#include "dlr/tableau.hpp"
#include "util.hpp"

using namespace dlr;
using namespace dlr::test;

TEST_CASE("cyclic pairs") {
  CHECK(gen_cyclic_pairs(0).empty());
  const TBox one = gen_cyclic_pairs(1);
  CHECK(one.size() == 5);
  CHECK(defined_atoms(one).contains("o-surgeon_1"));
  const auto strata = stratify(one.axioms);
  REQUIRE(strata);
  CHECK(std::ranges::count_if(*strata, [](const auto& s) { return s.size() == 2; }) == 1);
  CHECK(gen_cyclic_pairs(4).size() == 20);
  CHECK_THROWS_AS(gen_cyclic_pairs(-1), std::invalid_argument);
}

TEST_CASE("galen-like terminologies") {
  CHECK(gen_galen_like(0, 0, 1).empty());
  const TBox ten = gen_galen_like(10, 0, 1);
  CHECK(ten.size() == 10);
  const Distribution d = distribute(ten, AbsorptionMode::Basic);
  CHECK(d.tprim.size() == 10);
  CHECK(d.tg.empty());

  const TBox t = gen_galen_like(30, 15, 42);
  CHECK(t.size() == 45);
  for (std::size_t i = 30; i < t.size(); ++i) {
    CHECK(t.axioms[i].kind == AxiomKind::Sub);
    CHECK(t.axioms[i].lhs.kind() == ConceptKind::And);
  }
  CHECK(render(gen_galen_like(30, 15, 42)) == render(t));
  CHECK(render(gen_galen_like(30, 15, 43)) != render(t));
  CHECK_THROWS_AS(gen_galen_like(-1, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_galen_like(1, -1, 1), std::invalid_argument);
}

TEST_CASE("galen-like verdicts agree across modes") {
  const TBox t = gen_galen_like(20, 5, 42);
  const Signature sig = t.signature();
  const std::vector<std::string> names(sig.atoms.begin(), sig.atoms.end());
  Rng rng(42);
  ReasonerConfig cfg;
  cfg.timeout_ms = 10'000;
  const Absorption basic = absorb(t, AbsorptionMode::Basic), enhanced = absorb(t, AbsorptionMode::Enhanced);
  for (int i = 0; i < 10; ++i) {
    const Concept c = atom(names[std::uniform_int_distribution<std::size_t>(0, names.size() - 1)(rng)]);
    const SatResult b = check_sat(c, basic, cfg), e = check_sat(c, enhanced, cfg);
    REQUIRE(b.status != SatStatus::ResourceExhausted);
    CHECK(b.status == e.status);
  }
}

TEST_CASE("random terminologies respect their shape") {
  Rng rng(1);
  TBoxShape shape;
  for (int i = 0; i < 100; ++i) {
    const TBox t = random_tbox(rng, shape);
    const Signature sig = t.signature();
    CHECK(t.size() >= 1);
    CHECK(t.size() <= 5);
    CHECK(sig.atoms.size() <= 5);
    CHECK(sig.roles.size() <= 2);
    CHECK(3 * static_cast<int>(sig.atoms.size()) + 9 * static_cast<int>(sig.roles.size()) <= shape.max_bits);
    for (const auto& ax : t.axioms) CHECK(std::max(ax.lhs.depth(), ax.rhs.depth()) <= 3);
  }
  Rng a(77), b(77);
  CHECK(random_tbox(a, shape) == random_tbox(b, shape));
}

TEST_CASE("random definitions") {
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const auto prim = random_primitive_definitions(rng, 4, 2, 1, 3);
    CHECK(is_primitive(prim));
    CHECK(linearise(prim) == prim);
    const auto strat = random_stratified_definitions(rng, 3, 2, 1, 2);
    CHECK_FALSE(is_primitive(strat));
    CHECK(stratify(strat));
  }
}

TEST_CASE("random unfolded witnesses") {
  Rng rng(4);
  int made = 0;
  for (int i = 0; i < 40; ++i) {
    const auto defs = random_primitive_definitions(rng, 3, 2, 1, 2);
    const auto w = random_unfolded_witness(rng, defs, 3);
    if (!w) continue;
    ++made;
    Absorption a;
    for (const auto& d : defs) a.tu.add_definition(d.lhs.name(), d.rhs);
    CHECK(w->clash_free());
    CHECK(is_unfolded(*w, a));
    CHECK(is_pre_witness(*w));
    CHECK(w->domain_size <= 3);
  }
  CHECK(made > 30);
}
