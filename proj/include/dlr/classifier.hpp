// Subsumption hierarchy over the named concepts of a TBox.
//
// The TBox is absorbed once; then every atom gets a coherence test and a
// top-equivalence test, and the remaining atoms are compared pairwise. A
// pair is not tested when a chain of already known subsumptions implies it.
// At most n^2 + n tests are issued for n atoms.

#ifndef DLR_CLASSIFIER_HPP
#define DLR_CLASSIFIER_HPP

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dlr/absorption.hpp"
#include "dlr/concept.hpp"
#include "dlr/tableau.hpp"

namespace dlr {

struct Hierarchy {
  // Equivalence classes; class 0 holds "top", class 1 holds "bottom" (a
  // single class holds both when the TBox is inconsistent). Members are
  // sorted, sentinels first.
  std::vector<std::vector<std::string>> classes;
  // (subsumee class, subsumer class), transitively reduced.
  std::set<std::pair<int, int>> direct_edges;
  // Atom pairs (sub, super) whose test ran out of resources.
  std::vector<std::pair<std::string, std::string>> unknown;
  bool timed_out = false;

  std::uint64_t tests = 0;
  TableauStats stats;
  double absorb_ms = 0;
  double classify_ms = 0;
  std::size_t tg_residual = 0;

  // Index of the class containing name ("top"/"bottom" for the sentinels);
  // -1 if absent.
  int class_of(const std::string& name) const;
  bool complete() const { return unknown.empty() && !timed_out; }
};

struct ClassifyOptions {
  // Whole-classification limit; 0 disables it.
  std::int64_t timeout_ms = 0;
  // false: test every ordered pair (reference strategy).
  bool prune = true;
  ReasonerConfig reasoner;
};

Hierarchy classify(const TBox& t, AbsorptionMode mode, const ClassifyOptions& options = {});
Hierarchy classify(const Reasoner& reasoner, const std::set<std::string>& names, const ClassifyOptions& options = {});

// One line per class, parents first:
//   {A B} ⊑ {C} {D}
// Bit-stable for equal hierarchies.
std::string render(const Hierarchy& h);

// Stable 64-bit digest of render(h), as 16 hex digits.
std::string digest(const Hierarchy& h);

}  // namespace dlr

#endif  // DLR_CLASSIFIER_HPP
