#include "dlr/classifier.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <ranges>

namespace dlr {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

enum class Rel : std::uint8_t { Untested, Yes, No, Unknown };

}  // namespace

int Hierarchy::class_of(const std::string& name) const {
  for (std::size_t k = 0; k < classes.size(); ++k)
    if (std::ranges::find(classes[k], name) != classes[k].end()) return static_cast<int>(k);
  return -1;
}

Hierarchy classify(const Reasoner& reasoner, const std::set<std::string>& names, const ClassifyOptions& options) {
  const auto t0 = Clock::now();
  Hierarchy h;
  const std::vector<std::string> atoms(names.begin(), names.end());
  const std::size_t n = atoms.size();

  // Returns nullopt when the test could not be decided.
  auto test = [&](const Concept& sup, const Concept& sub) -> std::optional<bool> {
    ReasonerConfig cfg = options.reasoner;
    if (options.timeout_ms > 0) {
      const auto left = options.timeout_ms - static_cast<std::int64_t>(ms_since(t0));
      if (left <= 0) {
        h.timed_out = true;
        return std::nullopt;
      }
      cfg.timeout_ms = cfg.timeout_ms > 0 ? std::min(cfg.timeout_ms, left) : left;
    }
    ++h.tests;
    auto r = reasoner.subsumes(sup, sub, cfg);
    h.stats += r.stats;
    if (!r.holds && options.timeout_ms > 0 && ms_since(t0) >= static_cast<double>(options.timeout_ms))
      h.timed_out = true;
    return r.holds;
  };

  std::vector<Rel> bottom(n, Rel::Untested), top(n, Rel::Untested);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = test(Concept::bottom(), Concept::atom(atoms[i]));
    bottom[i] = r ? (*r ? Rel::Yes : Rel::No) : Rel::Unknown;
    if (!r) h.unknown.emplace_back(atoms[i], "bottom");
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto r = test(Concept::atom(atoms[i]), Concept::top());
    top[i] = r ? (*r ? Rel::Yes : Rel::No) : Rel::Unknown;
    if (!r) h.unknown.emplace_back("top", atoms[i]);
  }
  const bool inconsistent = std::ranges::any_of(
      std::views::iota(std::size_t{0}, n), [&](std::size_t i) { return bottom[i] == Rel::Yes && top[i] == Rel::Yes; });

  // sub[i][j]: atoms[i] [= atoms[j]
  std::vector<std::vector<Rel>> sub(n, std::vector<Rel>(n, Rel::Untested));
  auto is_bottom = [&](std::size_t i) { return bottom[i] == Rel::Yes; };
  auto is_top = [&](std::size_t i) { return top[i] == Rel::Yes; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || is_bottom(i) || is_top(j)) sub[i][j] = Rel::Yes;
      else if (is_top(i) && top[j] == Rel::No) sub[i][j] = Rel::No;
      else if (is_bottom(j) && bottom[i] == Rel::No) sub[i][j] = Rel::No;
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (sub[i][j] != Rel::Untested) continue;
      if (options.prune) {
        bool implied = false;
        for (std::size_t k = 0; k < n && !implied; ++k)
          implied = k != i && k != j && sub[i][k] == Rel::Yes && sub[k][j] == Rel::Yes;
        if (implied) {
          sub[i][j] = Rel::Yes;
          continue;
        }
      }
      auto r = test(Concept::atom(atoms[j]), Concept::atom(atoms[i]));
      sub[i][j] = r ? (*r ? Rel::Yes : Rel::No) : Rel::Unknown;
      if (!r) h.unknown.emplace_back(atoms[i], atoms[j]);
    }

  // Equivalence classes over the "middle" atoms.
  std::vector<int> cls(n, -1);
  h.classes = {{"top"}, {"bottom"}};
  if (inconsistent) h.classes = {{"top", "bottom"}};
  const int top_class = 0, bottom_class = inconsistent ? 0 : 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (inconsistent || is_bottom(i)) cls[i] = bottom_class;
    else if (is_top(i)) cls[i] = top_class;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = static_cast<int>(h.classes.size());
    h.classes.emplace_back();
    for (std::size_t j = i + 1; j < n; ++j)
      if (cls[j] < 0 && sub[i][j] == Rel::Yes && sub[j][i] == Rel::Yes) cls[j] = cls[i];
  }
  for (std::size_t i = 0; i < n; ++i) h.classes[static_cast<std::size_t>(cls[i])].push_back(atoms[i]);

  // Class-level strict order, then its transitive reduction.
  const std::size_t m = h.classes.size();
  std::vector<std::vector<bool>> below(m, std::vector<bool>(m, false));
  for (std::size_t c = 0; c < m; ++c) {
    if (static_cast<int>(c) != top_class) below[c][static_cast<std::size_t>(top_class)] = true;
    if (static_cast<int>(c) != bottom_class) below[static_cast<std::size_t>(bottom_class)][c] = true;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (cls[i] != cls[j] && sub[i][j] == Rel::Yes)
        below[static_cast<std::size_t>(cls[i])][static_cast<std::size_t>(cls[j])] = true;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      if (!below[a][b]) continue;
      bool implied = false;
      for (std::size_t c = 0; c < m && !implied; ++c) implied = c != a && c != b && below[a][c] && below[c][b];
      if (!implied) h.direct_edges.emplace(static_cast<int>(a), static_cast<int>(b));
    }
  h.classify_ms = ms_since(t0);
  return h;
}

Hierarchy classify(const TBox& t, AbsorptionMode mode, const ClassifyOptions& options) {
  const auto t0 = Clock::now();
  Absorption a = absorb(t, mode);
  const double absorb_ms = ms_since(t0);
  const std::size_t residual = a.tg.size();
  Reasoner reasoner(std::move(a));
  Hierarchy h = classify(reasoner, t.signature().atoms, options);
  h.absorb_ms = absorb_ms;
  h.tg_residual = residual;
  return h;
}

std::string render(const Hierarchy& h) {
  const std::size_t m = h.classes.size();
  std::vector<std::vector<int>> parents(m);
  std::vector<int> pending(m, 0);
  std::vector<std::vector<int>> children(m);
  for (auto [a, b] : h.direct_edges) {
    parents[static_cast<std::size_t>(a)].push_back(b);
    children[static_cast<std::size_t>(b)].push_back(a);
    ++pending[static_cast<std::size_t>(a)];
  }
  auto key = [&](int c) { return h.classes[static_cast<std::size_t>(c)]; };
  auto by_name = [&](int x, int y) { return key(x) < key(y); };

  // Kahn's algorithm; ready classes are emitted sorted by member list.
  std::vector<int> ready, order;
  for (std::size_t c = 0; c < m; ++c)
    if (pending[c] == 0) ready.push_back(static_cast<int>(c));
  while (!ready.empty()) {
    std::ranges::sort(ready, by_name);
    const int c = ready.front();
    ready.erase(ready.begin());
    order.push_back(c);
    for (int child : children[static_cast<std::size_t>(c)])
      if (--pending[static_cast<std::size_t>(child)] == 0) ready.push_back(child);
  }

  auto braces = [](const std::vector<std::string>& members) {
    std::string s = "{";
    for (std::size_t k = 0; k < members.size(); ++k) s += (k ? " " : "") + members[k];
    return s + "}";
  };
  std::string out;
  for (int c : order) {
    out += braces(key(c)) + " ⊑";
    auto ps = parents[static_cast<std::size_t>(c)];
    std::ranges::sort(ps, by_name);
    for (int p : ps) out += " " + braces(key(p));
    out += "\n";
  }
  return out;
}

std::string digest(const Hierarchy& h) {
  std::uint64_t x = 1469598103934665603ull;
  for (unsigned char ch : render(h)) {
    x ^= ch;
    x *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

}  // namespace dlr
