#include <doctest.h>

#include "dlr/check_suite.hpp"

using namespace dlr;

namespace {

CheckBudget small(int instances) {
  CheckBudget b;
  b.instances = instances;
  b.seed = 99;
  return b;
}

}  // namespace

TEST_CASE("small suite passes and reports every property") {
  CheckBudget b = small(10);
  b.oracle.interpretation_bits = 15;
  const CheckReport r = run_check_suite(b);
  CHECK(r.passed());
  CHECK(r.properties.size() == 12);
  for (const auto& p : r.properties) {
    INFO(render(p));
    CHECK(p.instances > 0);
    CHECK(p.failures == 0);
  }
  CHECK(render(r).find("all properties hold") != std::string::npos);
}

TEST_CASE("a single-element domain still passes") {
  CheckBudget b = small(20);
  b.max_domain = 1;
  for (auto* property : {check_absorption_equivalence, check_monotonicity, check_repair_primitive}) {
    const PropertyResult p = property(b);
    INFO(render(p));
    CHECK(p.passed());
  }
}

TEST_CASE("a tiny oracle budget shrinks the instances") {
  CheckBudget b = small(5);
  b.oracle.interpretation_bits = 4;
  const PropertyResult p = check_absorption_equivalence(b);
  CHECK(p.instances == 5);
  CHECK(p.truncated == 0);
  CHECK(p.passed());
}

TEST_CASE("skipping the definition check is caught") {
  CheckBudget b = small(10);
  b.mutant = true;
  const PropertyResult guards = check_pitfall_guards(b);
  CHECK_FALSE(guards.passed());
  CHECK(render(guards).find("(define-concept A (not A))") != std::string::npos);
}
