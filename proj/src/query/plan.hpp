#pragma once

// Shared by the parallel and serial matchers.

#include <array>
#include <vector>

#include "gopprre/query.hpp"

namespace gopprre::query::detail {

using TermId = TripleStore::TermId;

struct Position {
  bool is_var = false;
  std::uint32_t value = 0;  // variable index or term id
};

struct CompiledTriple {
  std::array<Position, 3> pos;
};

struct Plan {
  std::vector<CompiledTriple> triples;
  std::vector<std::string> variables;   // all, by first appearance
  std::vector<std::uint32_t> select;    // indices into variables
  bool impossible = false;              // a constant is absent from the store
};

Plan compile(const TripleStore& store, const Pattern& pattern);

/// Greedy selectivity order: cheapest constant-only scan first, then prefer
/// patterns joined to already bound variables.
std::vector<std::size_t> selectivity_order(const TripleStore& store, const Plan& plan);

using Binding = std::vector<TermId>;

/// Bound (s, p, o) ids for `t` under `b`; kNoTerm for unbound variables.
inline std::array<TermId, 3> resolve(const CompiledTriple& t, const Binding& b) {
  std::array<TermId, 3> out{};
  for (int i = 0; i < 3; ++i) out[i] = t.pos[i].is_var ? b[t.pos[i].value] : t.pos[i].value;
  return out;
}

/// Binds the unbound variables of `t` to `row`. Returns false (leaving `b`
/// untouched) when a variable repeated inside `t` would need two values.
inline bool bind_row(const CompiledTriple& t, const TripleStore::Row& row, Binding& b,
                     std::array<std::int64_t, 3>& assigned) {
  const std::array<TermId, 3> vals{row.s, row.p, row.o};
  assigned = {-1, -1, -1};
  for (int i = 0; i < 3; ++i) {
    if (!t.pos[i].is_var) continue;
    TermId& slot = b[t.pos[i].value];
    if (slot == TripleStore::kNoTerm) {
      slot = vals[i];
      assigned[i] = t.pos[i].value;
    } else if (slot != vals[i]) {
      for (int j = 0; j < i; ++j) {
        if (assigned[j] >= 0) b[assigned[j]] = TripleStore::kNoTerm;
      }
      return false;
    }
  }
  return true;
}

inline void unbind(Binding& b, const std::array<std::int64_t, 3>& assigned) {
  for (auto v : assigned) {
    if (v >= 0) b[v] = TripleStore::kNoTerm;
  }
}

/// Depth-first nested index join over `order[step..]`, appending projected
/// rows (ids of the selected variables) to `out`.
inline void extend(const TripleStore& store, const Plan& plan, const std::vector<std::size_t>& order,
                   std::size_t step, Binding& b, std::vector<TermId>& out) {
  if (step == order.size()) {
    if (plan.select.empty()) out.push_back(0);  // marker for a boolean hit
    for (auto v : plan.select) out.push_back(b[v]);
    return;
  }
  const CompiledTriple& t = plan.triples[order[step]];
  const auto key = resolve(t, b);
  std::array<std::int64_t, 3> assigned{};
  for (const auto& row : store.scan(key[0], key[1], key[2])) {
    if (!bind_row(t, row, b, assigned)) continue;
    extend(store, plan, order, step + 1, b, out);
    unbind(b, assigned);
  }
}

/// Sorts and deduplicates flattened rows, then materialises terms.
BindingSet finish(const TripleStore& store, const Plan& plan, std::vector<TermId>& flat);

}  // namespace gopprre::query::detail
