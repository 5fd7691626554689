#include <doctest.h>

#include "dlr/classifier.hpp"
#include "dlr/generators.hpp"
#include "util.hpp"

using namespace dlr;
using namespace dlr::test;

namespace {

bool edge(const Hierarchy& h, const std::string& sub, const std::string& super) {
  return h.direct_edges.contains({h.class_of(sub), h.class_of(super)});
}

}  // namespace

TEST_CASE("told subsumption") {
  const Hierarchy h = classify(T("(implies A B)"), AbsorptionMode::Basic);
  REQUIRE(h.complete());
  CHECK(edge(h, "A", "B"));
  CHECK(edge(h, "B", "top"));
  CHECK(edge(h, "bottom", "A"));
  CHECK(h.direct_edges.size() == 3);
  CHECK(render(h) == "{top} ⊑\n{B} ⊑ {top}\n{A} ⊑ {B}\n{bottom} ⊑ {A}\n");
}

TEST_CASE("equivalent names share a class") {
  const Hierarchy h = classify(T("(define-concept A B)"), AbsorptionMode::Enhanced);
  CHECK(h.class_of("A") == h.class_of("B"));
  CHECK(h.classes[h.class_of("A")] == std::vector<std::string>{"A", "B"});
  CHECK(h.class_of("nothing") == -1);
}

TEST_CASE("orthopaedic pair") {
  const TBox t = T(kSurgery);
  std::string expected;
  for (AbsorptionMode m : {AbsorptionMode::None, AbsorptionMode::Basic, AbsorptionMode::Enhanced}) {
    const Hierarchy h = classify(t, m);
    REQUIRE(h.complete());
    CHECK(edge(h, "o-procedure", "procedure"));
    CHECK(edge(h, "o-surgeon", "surgeon"));
    if (expected.empty()) expected = digest(h);
    CHECK(digest(h) == expected);
  }
}

TEST_CASE("unsatisfiable names join bottom, inconsistency merges top and bottom") {
  Hierarchy h = classify(T("(implies A (and B (not B)))"), AbsorptionMode::Basic);
  CHECK(h.class_of("A") == h.class_of("bottom"));
  CHECK(h.class_of("top") != h.class_of("bottom"));

  h = classify(T("(define-concept A (not A))"), AbsorptionMode::Enhanced);
  CHECK(h.class_of("top") == h.class_of("bottom"));
  CHECK(h.classes.size() == 1);
}

TEST_CASE("pruning never changes the hierarchy and bounds the test count") {
  Rng rng(3);
  TBoxShape shape;
  shape.max_bits = 15;
  for (int i = 0; i < 40; ++i) {
    const TBox t = random_tbox(rng, shape);
    const std::size_t n = t.signature().atoms.size();
    ClassifyOptions naive;
    naive.prune = false;
    const Hierarchy pruned = classify(t, AbsorptionMode::Basic), full = classify(t, AbsorptionMode::Basic, naive);
    INFO(render(t));
    CHECK(digest(pruned) == digest(full));
    CHECK(pruned.tests <= n * n + n);
    CHECK(pruned.tests <= full.tests);
    CHECK(digest(classify(t, AbsorptionMode::None)) == digest(pruned));
    CHECK(digest(classify(t, AbsorptionMode::Enhanced)) == digest(pruned));

    // No edge is implied by two others.
    for (const auto& [a, b] : pruned.direct_edges)
      for (const auto& [c, d] : pruned.direct_edges)
        if (a == c && b != d) CHECK_FALSE(pruned.direct_edges.contains({d, b}));
  }
}

TEST_CASE("resource exhaustion is reported") {
  ClassifyOptions opts;
  opts.reasoner.max_nodes = 1;
  const Hierarchy h = classify(T("(implies A (some R B)) (implies B C)"), AbsorptionMode::Basic, opts);
  CHECK_FALSE(h.complete());
  CHECK_FALSE(h.unknown.empty());
}

TEST_CASE("cyclic pairs classify alike in both absorbing modes") {
  const TBox t = gen_cyclic_pairs(3);
  const Hierarchy b = classify(t, AbsorptionMode::Basic), e = classify(t, AbsorptionMode::Enhanced);
  REQUIRE(b.complete());
  REQUIRE(e.complete());
  CHECK(digest(b) == digest(e));
  CHECK(edge(e, "o-surgeon_2", "surgeon_2"));
  CHECK(e.tg_residual == 0);
}
