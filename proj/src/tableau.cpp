#include "dlr/tableau.hpp"

#include <chrono>
#include <stdexcept>
#include <unordered_map>

namespace dlr {

TableauStats& TableauStats::operator+=(const TableauStats& o) {
  nodes_created += o.nodes_created;
  branch_points += o.branch_points;
  clashes += o.clashes;
  blocked_nodes += o.blocked_nodes;
  unfold_firings += o.unfold_firings;
  internalisation_insertions += o.internalisation_insertions;
  return *this;
}

std::string_view to_string(SatStatus s) {
  switch (s) {
    case SatStatus::Sat:
      return "sat";
    case SatStatus::Unsat:
      return "unsat";
    case SatStatus::ResourceExhausted:
      return "exhausted";
  }
  return "?";
}

namespace {

// Interned NNF concepts. Ids are dense; literals always have their
// complement interned as well. An index may sit on top of a read-only base
// layer: the reasoner interns the absorption once and each query only adds
// its own concepts.
struct Index {
  struct Entry {
    Concept concept_;
    ConceptKind kind = ConceptKind::Top;
    int role = -1;
    std::vector<int> args;
    int complement = -1;      // literals only
    std::vector<int> unfold;  // literals only: Tu right-hand sides
    std::uint64_t mix = 0;    // contribution to a label hash
  };

  const Absorption* absorption = nullptr;
  const Index* base = nullptr;
  int first = 0;       // id of entries[0]
  int first_role = 0;  // id of roles[0]
  std::vector<Entry> entries;
  std::unordered_map<Concept, int, ConceptHash> ids;
  std::vector<RoleExpr> roles;
  std::map<RoleExpr, int> role_ids;
  bool inverse_roles = false;

  static Index over(const Index& lower) {
    Index idx;
    idx.absorption = lower.absorption;
    idx.base = &lower;
    idx.first = lower.size();
    idx.first_role = lower.first_role + static_cast<int>(lower.roles.size());
    idx.inverse_roles = lower.inverse_roles;
    return idx;
  }

  int size() const { return first + static_cast<int>(entries.size()); }
  const Entry& at(int id) const {
    return id < first ? base->at(id) : entries[static_cast<std::size_t>(id - first)];
  }
  const RoleExpr& role_at(int id) const {
    return id < first_role ? base->role_at(id) : roles[static_cast<std::size_t>(id - first_role)];
  }
  // Roles come in pairs (R, inv R) at ids (2k, 2k + 1).
  static int inverse_role(int id) { return id ^ 1; }

  int find(const Concept& c) const {
    if (base) {
      if (int id = base->find(c); id >= 0) return id;
    }
    auto it = ids.find(c);
    return it == ids.end() ? -1 : it->second;
  }

  int role(const RoleExpr& r) {
    for (const Index* layer = this; layer; layer = layer->base)
      if (auto it = layer->role_ids.find(r); it != layer->role_ids.end()) return it->second;
    const int a = first_role + static_cast<int>(roles.size());
    const RoleExpr fwd = r.is_inverse() ? r.inverse() : r;
    roles.push_back(fwd);
    roles.push_back(fwd.inverse());
    role_ids.emplace(fwd, a);
    role_ids.emplace(fwd.inverse(), a + 1);
    return r.is_inverse() ? a + 1 : a;
  }

  int intern(const Concept& c) {
    if (int id = find(c); id >= 0) return id;
    Entry e;
    e.concept_ = c;
    e.kind = c.kind();
    if (c.kind() == ConceptKind::Not && !c.is_negated_atom())
      throw std::logic_error("tableau input is not in negation normal form");
    if (c.kind() != ConceptKind::Not && c.kind() != ConceptKind::Atom)
      for (const auto& a : c.args()) e.args.push_back(intern(a));
    if (c.kind() == ConceptKind::Exists || c.kind() == ConceptKind::Forall) {
      e.role = role(c.role());
      inverse_roles = inverse_roles || c.role().is_inverse();
    }
    e.mix = static_cast<std::uint64_t>(c.hash()) * 0x9E3779B97F4A7C15ull;
    e.mix ^= e.mix >> 29;
    const int id = size();
    entries.push_back(std::move(e));
    ids.emplace(c, id);
    if (c.is_literal()) {
      const int other = intern(complement(c));
      std::vector<int> unfold;
      for (const auto& d : absorption->tu.lookup({c.literal_atom(), c.is_negated_atom()})) unfold.push_back(intern(d));
      Entry& mine = entries[static_cast<std::size_t>(id - first)];
      mine.complement = other;
      mine.unfold = std::move(unfold);
    }
    return id;
  }
};

class Bitset {
 public:
  void resize(std::size_t n) { words_.assign((n + 63) / 64, 0); }
  bool test(int i) const {
    const auto u = static_cast<std::size_t>(i);
    return u / 64 < words_.size() && ((words_[u / 64] >> (u % 64)) & 1);
  }
  void set(int i) {
    const auto u = static_cast<std::size_t>(i);
    if (u / 64 >= words_.size()) words_.resize(u / 64 + 1, 0);
    words_[u / 64] |= std::uint64_t{1} << (u % 64);
  }
  void reset(int i) {
    const auto u = static_cast<std::size_t>(i);
    words_[u / 64] &= ~(std::uint64_t{1} << (u % 64));
  }
  bool subset_of(const Bitset& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      const std::uint64_t other = k < o.words_.size() ? o.words_[k] : 0;
      if (words_[k] & ~other) return false;
    }
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Node {
  Bitset bits;
  std::vector<int> order;
  std::uint64_t hash = 0;
  int parent = -1;
  int in_role = -1;  // role of the edge parent -> this node
  std::vector<int> children;
};

class ExhaustedError {
 public:
  explicit ExhaustedError(std::string what) : what_(std::move(what)) {}
  const std::string& what() const { return what_; }

 private:
  std::string what_;
};

class Search {
 public:
  Search(Index& idx, const std::vector<int>& tg, const ReasonerConfig& cfg)
      : idx_(idx), tg_(tg), cfg_(cfg), start_(std::chrono::steady_clock::now()) {}

  SatStatus run(int root_concept) {
    new_node(-1, -1);
    add(0, root_concept);
    for (int t : tg_) add(0, t);
    close();
    for (;;) {
      tick();
      if (clash_) {
        ++stats.clashes;
        if (!backtrack()) return SatStatus::Unsat;
        continue;
      }
      compute_blocking();
      if (branch()) continue;
      if (expand_exists()) continue;
      stats.blocked_nodes = 0;
      for (int b : blocked_by_)
        if (b >= 0) ++stats.blocked_nodes;
      return SatStatus::Sat;
    }
  }

  CompletionGraph graph() const {
    CompletionGraph g;
    for (std::size_t n = 0; n < nodes_.size(); ++n) {
      CompletionNode out;
      for (int c : nodes_[n].order) out.label.push_back(idx_.at(c).concept_);
      if (nodes_[n].parent >= 0)
        out.parent.emplace(nodes_[n].parent, idx_.role_at(nodes_[n].in_role));
      if (blocked_by_[n] >= 0) out.blocked_by = blocked_by_[n];
      out.indirectly_blocked = indirect_[n];
      g.nodes.push_back(std::move(out));
    }
    return g;
  }

  TableauStats stats;

 private:
  struct TrailEntry {
    int node;
    int concept_;  // -1: node creation
  };
  struct Choice {
    std::size_t trail;
    int node;
    int disjunction;
    std::size_t next;
  };

  void tick() {
    if (++ticks_ % 128 != 0 || cfg_.timeout_ms <= 0) return;
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    if (elapsed >= std::chrono::milliseconds(cfg_.timeout_ms)) throw ExhaustedError("timeout");
  }

  int new_node(int parent, int role) {
    if (static_cast<int>(nodes_.size()) >= cfg_.max_nodes) throw ExhaustedError("max_nodes");
    const int id = static_cast<int>(nodes_.size());
    Node n;
    n.bits.resize(static_cast<std::size_t>(idx_.size()));
    n.parent = parent;
    n.in_role = role;
    nodes_.push_back(std::move(n));
    if (parent >= 0) nodes_[static_cast<std::size_t>(parent)].children.push_back(id);
    trail_.push_back({id, -1});
    ++stats.nodes_created;
    return id;
  }

  Node& node(int n) { return nodes_[static_cast<std::size_t>(n)]; }
  const Index::Entry& entry(int c) const { return idx_.at(c); }

  void add(int n, int c) { agenda_.emplace_back(n, c); }

  // Deterministic closure of everything on the agenda.
  void close() {
    while (head_ < agenda_.size() && !clash_) {
      auto [n, c] = agenda_[head_++];
      Node& x = node(n);
      if (x.bits.test(c)) continue;
      x.bits.set(c);
      x.order.push_back(c);
      x.hash ^= entry(c).mix;
      trail_.push_back({n, c});
      const auto& e = entry(c);
      switch (e.kind) {
        case ConceptKind::Bottom:
          clash_ = true;
          break;
        case ConceptKind::Atom:
        case ConceptKind::Not:
          if (x.bits.test(e.complement)) {
            clash_ = true;
            break;
          }
          if (!e.unfold.empty()) {
            ++stats.unfold_firings;
            for (int d : e.unfold) add(n, d);
          }
          break;
        case ConceptKind::And:
          for (int a : e.args) add(n, a);
          break;
        case ConceptKind::Forall:
          for_each_neighbour(n, e.role, [&](int y) { add(y, e.args[0]); });
          break;
        default:
          break;
      }
    }
    agenda_.clear();
    head_ = 0;
  }

  template <class F>
  void for_each_neighbour(int n, int role, F&& f) {
    const Node& x = node(n);
    for (int child : x.children)
      if (node(child).in_role == role) f(child);
    if (x.parent >= 0 && Index::inverse_role(x.in_role) == role) f(x.parent);
  }

  bool backtrack() {
    while (!choices_.empty()) {
      Choice& ch = choices_.back();
      const auto& disjuncts = entry(ch.disjunction).args;
      if (ch.next >= disjuncts.size()) {
        choices_.pop_back();
        continue;
      }
      undo_to(ch.trail);
      clash_ = false;
      add(ch.node, disjuncts[ch.next++]);
      close();
      return true;
    }
    return false;
  }

  void undo_to(std::size_t size) {
    while (trail_.size() > size) {
      auto [n, c] = trail_.back();
      trail_.pop_back();
      if (c < 0) {
        const int parent = node(n).parent;
        if (parent >= 0) node(parent).children.pop_back();
        nodes_.pop_back();
      } else {
        Node& x = node(n);
        x.bits.reset(c);
        x.order.pop_back();
        x.hash ^= entry(c).mix;
      }
    }
  }

  bool same_label(const Node& a, const Node& b) const {
    if (a.hash != b.hash || a.order.size() != b.order.size()) return false;
    return a.bits.subset_of(b.bits);
  }

  void compute_blocking() {
    const std::size_t n = nodes_.size();
    blocked_by_.assign(n, -1);
    indirect_.assign(n, false);
    for (std::size_t i = 1; i < n; ++i) {
      const Node& x = nodes_[i];
      const auto p = static_cast<std::size_t>(x.parent);
      if (blocked_by_[p] >= 0 || indirect_[p]) {
        indirect_[i] = true;
        continue;
      }
      for (int a = x.parent; a >= 0; a = node(a).parent) {
        const Node& y = node(a);
        const bool blocks = cfg_.blocking == Blocking::Equality ? same_label(x, y) : x.bits.subset_of(y.bits);
        if (blocks) {
          blocked_by_[i] = a;
          break;
        }
      }
    }
  }

  bool active(std::size_t n) const { return blocked_by_[n] < 0 && !indirect_[n]; }

  bool branch() {
    for (std::size_t n = 0; n < nodes_.size(); ++n) {
      if (!active(n)) continue;
      const Node& x = nodes_[n];
      for (int c : x.order) {
        const auto& e = entry(c);
        if (e.kind != ConceptKind::Or) continue;
        bool satisfied = false;
        for (int d : e.args)
          if (x.bits.test(d)) {
            satisfied = true;
            break;
          }
        if (satisfied) continue;
        if (static_cast<std::int64_t>(++stats.branch_points) > cfg_.max_branches)
          throw ExhaustedError("max_branches");
        choices_.push_back({trail_.size(), static_cast<int>(n), c, 1});
        add(static_cast<int>(n), e.args[0]);
        close();
        return true;
      }
    }
    return false;
  }

  bool expand_exists() {
    for (std::size_t n = 0; n < nodes_.size(); ++n) {
      if (!active(n)) continue;
      // The label may grow while we iterate; index instead of range-for.
      for (std::size_t k = 0; k < nodes_[n].order.size(); ++k) {
        const int c = nodes_[n].order[k];
        const auto& e = entry(c);
        if (e.kind != ConceptKind::Exists) continue;
        const int filler = e.args[0];
        bool satisfied = false;
        for_each_neighbour(static_cast<int>(n), e.role, [&](int y) { satisfied = satisfied || node(y).bits.test(filler); });
        if (satisfied) continue;
        const int y = new_node(static_cast<int>(n), e.role);
        add(y, filler);
        for (int t : tg_) add(y, t);
        stats.internalisation_insertions += tg_.size();
        // Universal restrictions of the parent along the new edge.
        for (int d : node(static_cast<int>(n)).order) {
          const auto& f = entry(d);
          if (f.kind == ConceptKind::Forall && f.role == e.role) add(y, f.args[0]);
        }
        close();
        return true;
      }
    }
    return false;
  }

  Index& idx_;
  const std::vector<int>& tg_;
  const ReasonerConfig& cfg_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t ticks_ = 0;

  std::vector<Node> nodes_;
  std::vector<TrailEntry> trail_;
  std::vector<Choice> choices_;
  std::vector<std::pair<int, int>> agenda_;
  std::size_t head_ = 0;
  bool clash_ = false;
  std::vector<int> blocked_by_;
  std::vector<bool> indirect_;
};

bool graph_uses_inverse(const CompletionGraph& g) {
  for (const auto& n : g.nodes) {
    if (n.parent && n.parent->second.is_inverse()) return true;
    for (const auto& c : n.label)
      if (uses_inverse_roles(c)) return true;
  }
  return false;
}

}  // namespace

std::optional<FiniteInterpretation> extract_model(const CompletionGraph& g, const Absorption& a) {
  if (g.nodes.empty()) return std::nullopt;
  bool any_blocked = false;
  for (const auto& n : g.nodes) any_blocked = any_blocked || n.blocked_by || n.indirectly_blocked;
  if (any_blocked && graph_uses_inverse(g)) return std::nullopt;

  std::vector<int> index(g.nodes.size(), -1);
  LabeledStructure w;
  w.domain_size = 0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& n = g.nodes[i];
    if (n.blocked_by || n.indirectly_blocked) continue;
    index[i] = w.domain_size++;
    w.labels.emplace_back(n.label.begin(), n.label.end());
  }
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& n = g.nodes[i];
    if (!n.parent || n.indirectly_blocked) continue;
    const int from = index[static_cast<std::size_t>(n.parent->first)];
    const int to = index[static_cast<std::size_t>(n.blocked_by ? *n.blocked_by : static_cast<int>(i))];
    if (from < 0 || to < 0) continue;
    const RoleExpr& r = n.parent->second;
    if (r.is_inverse()) w.role_ext[r.name()].emplace(to, from);
    else w.role_ext[r.name()].emplace(from, to);
  }

  const auto defs = a.tu.definitions();
  if (defs.empty()) return initial_interpretation(w);
  auto strata = stratify(defs);
  if (!strata) return std::nullopt;
  return repair_model_stratified(w, *strata);
}

struct Reasoner::Impl {
  Absorption absorption;
  Index base;
  std::vector<int> tg;
};

Reasoner::Reasoner(Absorption absorption) : impl_(std::make_unique<Impl>()) {
  impl_->absorption = std::move(absorption);
  impl_->base.absorption = &impl_->absorption;
  for (const auto& c : impl_->absorption.tg_concepts()) impl_->tg.push_back(impl_->base.intern(c));
  for (const auto& [key, rhs] : impl_->absorption.tu.entries()) {
    impl_->base.intern(key.as_concept());
    for (const auto& d : rhs) impl_->base.intern(d);
  }
}

Reasoner::~Reasoner() = default;
Reasoner::Reasoner(Reasoner&&) noexcept = default;
Reasoner& Reasoner::operator=(Reasoner&&) noexcept = default;

const Absorption& Reasoner::absorption() const { return impl_->absorption; }

SatResult Reasoner::check_sat(const Concept& c, const ReasonerConfig& cfg) const {
  if (cfg.max_nodes < 1 || cfg.max_branches < 0 || cfg.timeout_ms < 0)
    throw std::invalid_argument("reasoner limits must be positive");
  Index idx = Index::over(impl_->base);
  const int root = idx.intern(nnf(c));
  if (cfg.blocking == Blocking::Subset && idx.inverse_roles)
    throw std::invalid_argument("subset blocking requires an input without inverse roles");

  SatResult result;
  Search search(idx, impl_->tg, cfg);
  try {
    result.status = search.run(root);
  } catch (const ExhaustedError& e) {
    result.status = SatStatus::ResourceExhausted;
    result.exhausted = e.what();
  }
  result.stats = search.stats;
  result.stats.internalisation_insertions += impl_->tg.size();  // the root
  if (result.status == SatStatus::Sat && (cfg.extract_model || cfg.keep_graph)) {
    CompletionGraph g = search.graph();
    if (cfg.extract_model) result.model = extract_model(g, impl_->absorption);
    if (cfg.keep_graph) result.graph = std::move(g);
  }
  return result;
}

Reasoner::Subsumption Reasoner::subsumes(const Concept& c, const Concept& d, const ReasonerConfig& cfg) const {
  ReasonerConfig quiet = cfg;
  quiet.extract_model = false;
  quiet.keep_graph = false;
  SatResult r = check_sat(Concept::conjunction({d, complement(c)}), quiet);
  Subsumption out;
  out.stats = r.stats;
  if (r.status != SatStatus::ResourceExhausted) out.holds = r.status == SatStatus::Unsat;
  return out;
}

SatResult check_sat(const Concept& c, const Absorption& a, const ReasonerConfig& cfg) {
  return Reasoner(a).check_sat(c, cfg);
}

}  // namespace dlr
