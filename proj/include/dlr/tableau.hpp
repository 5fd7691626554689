// Tableau satisfiability for ALCI w.r.t. an absorbed TBox.
//
// Tu entries are unfolded lazily: only when their literal enters a label.
// Tg concepts are put into every node when it is created. Disjunctions are
// explored depth-first with chronological backtracking; termination comes
// from (dynamic) ancestor blocking.
//
// Rule order per step: the deterministic closure (and, lazy unfolding, all,
// clash check) runs eagerly whenever a label grows; then the first
// unsatisfied disjunction on an unblocked node (node order, label order) is
// branched on; then the first unsatisfied existential creates a successor.

#ifndef DLR_TABLEAU_HPP
#define DLR_TABLEAU_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dlr/absorption.hpp"
#include "dlr/concept.hpp"
#include "dlr/semantics.hpp"

namespace dlr {

enum class Blocking : std::uint8_t { Equality, Subset };

struct ReasonerConfig {
  int max_nodes = 100'000;
  std::int64_t max_branches = 50'000'000;
  // 0 disables the time limit.
  std::int64_t timeout_ms = 0;
  // Subset blocking is only accepted for inputs without inverse roles.
  Blocking blocking = Blocking::Equality;
  bool extract_model = true;
  // Keep the final completion graph in the result (Sat only).
  bool keep_graph = false;
};

struct TableauStats {
  std::uint64_t nodes_created = 0;
  std::uint64_t branch_points = 0;
  std::uint64_t clashes = 0;
  std::uint64_t blocked_nodes = 0;  // directly blocked nodes in the final graph
  std::uint64_t unfold_firings = 0;
  std::uint64_t internalisation_insertions = 0;

  TableauStats& operator+=(const TableauStats& o);
  friend bool operator==(const TableauStats&, const TableauStats&) = default;
};

struct CompletionNode {
  std::vector<Concept> label;  // insertion order
  // Parent id and the role of the edge parent -> this node.
  std::optional<std::pair<int, RoleExpr>> parent;
  std::optional<int> blocked_by;
  bool indirectly_blocked = false;
};

struct CompletionGraph {
  std::vector<CompletionNode> nodes;  // node 0 is the root
};

enum class SatStatus : std::uint8_t { Sat, Unsat, ResourceExhausted };

std::string_view to_string(SatStatus s);

struct SatResult {
  SatStatus status = SatStatus::Unsat;
  std::optional<FiniteInterpretation> model;
  std::optional<CompletionGraph> graph;
  TableauStats stats;
  std::string exhausted;  // which limit was hit
};

// Model read off a clash-free complete graph: blocked nodes are dropped and
// edges into them redirected to their blocker, atoms come from the labels and
// defined atoms are then repaired per stratum. Absent when inverse roles occur
// and some node is blocked.
std::optional<FiniteInterpretation> extract_model(const CompletionGraph& g, const Absorption& a);

class Reasoner {
 public:
  explicit Reasoner(Absorption absorption);
  ~Reasoner();
  Reasoner(Reasoner&&) noexcept;
  Reasoner& operator=(Reasoner&&) noexcept;

  const Absorption& absorption() const;

  // Safe to call concurrently.
  SatResult check_sat(const Concept& c, const ReasonerConfig& cfg = {}) const;

  struct Subsumption {
    std::optional<bool> holds;  // empty on resource exhaustion
    TableauStats stats;
  };
  // d [= c iff (d and not c) is unsatisfiable.
  Subsumption subsumes(const Concept& c, const Concept& d, const ReasonerConfig& cfg = {}) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

SatResult check_sat(const Concept& c, const Absorption& a, const ReasonerConfig& cfg = {});

}  // namespace dlr

#endif  // DLR_TABLEAU_HPP
