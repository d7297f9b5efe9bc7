#include <algorithm>
#include <limits>
#include <omp.h>

#include "plan.hpp"

namespace gopprre::query {
namespace {

bool is_valid_variable(std::string_view name) {
  if (name.empty()) return false;
  auto word = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  };
  const char first = name.front();
  if (first >= '0' && first <= '9') return false;
  return std::all_of(name.begin(), name.end(), word);
}

[[noreturn]] void malformed(const std::string& message) {
  throw Error(ErrorCode::MalformedPattern, "", message);
}

}  // namespace

void check_pattern(const Pattern& pattern) {
  if (pattern.triples.empty()) malformed("pattern has no triple patterns");
  std::vector<std::string> seen;
  for (std::size_t i = 0; i < pattern.triples.size(); ++i) {
    const auto& t = pattern.triples[i];
    const Slot* slots[3] = {&t.subject, &t.predicate, &t.object};
    for (int k = 0; k < 3; ++k) {
      if (const auto* v = std::get_if<Variable>(slots[k])) {
        if (!is_valid_variable(v->name)) malformed("invalid variable name '?" + v->name + "'");
        if (std::find(seen.begin(), seen.end(), v->name) == seen.end()) seen.push_back(v->name);
      } else if (k < 2 && std::get<Term>(*slots[k]).is_literal()) {
        malformed("triple pattern " + std::to_string(i) + " has a literal in " +
                  (k == 0 ? "subject" : "predicate") + " position");
      }
    }
  }
  std::vector<std::string> selected;
  for (const auto& name : pattern.select) {
    if (std::find(seen.begin(), seen.end(), name) == seen.end()) {
      malformed("selected variable '?" + name + "' does not occur in the pattern");
    }
    if (std::find(selected.begin(), selected.end(), name) != selected.end()) {
      malformed("variable '?" + name + "' selected twice");
    }
    selected.push_back(name);
  }
}

namespace detail {

Plan compile(const TripleStore& store, const Pattern& pattern) {
  check_pattern(pattern);
  Plan plan;
  auto var_index = [&](const std::string& name) {
    auto it = std::find(plan.variables.begin(), plan.variables.end(), name);
    if (it != plan.variables.end()) return static_cast<std::uint32_t>(it - plan.variables.begin());
    plan.variables.push_back(name);
    return static_cast<std::uint32_t>(plan.variables.size() - 1);
  };
  for (const auto& t : pattern.triples) {
    CompiledTriple ct;
    const Slot* slots[3] = {&t.subject, &t.predicate, &t.object};
    for (int k = 0; k < 3; ++k) {
      if (const auto* v = std::get_if<Variable>(slots[k])) {
        ct.pos[k] = {true, var_index(v->name)};
      } else {
        const TermId id = store.lookup(std::get<Term>(*slots[k]));
        if (id == TripleStore::kNoTerm) plan.impossible = true;
        ct.pos[k] = {false, id};
      }
    }
    plan.triples.push_back(ct);
  }
  if (pattern.select.empty()) {
    for (std::uint32_t i = 0; i < plan.variables.size(); ++i) plan.select.push_back(i);
  } else {
    for (const auto& name : pattern.select) plan.select.push_back(var_index(name));
  }
  return plan;
}

std::vector<std::size_t> selectivity_order(const TripleStore& store, const Plan& plan) {
  const std::size_t n = plan.triples.size();
  std::vector<std::size_t> base_cost(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& t = plan.triples[i];
    auto c = [&](int k) { return t.pos[k].is_var ? TripleStore::kNoTerm : t.pos[k].value; };
    base_cost[i] = store.scan(c(0), c(1), c(2)).size();
  }

  std::vector<std::size_t> order;
  std::vector<bool> used(n, false), bound(plan.variables.size(), false);
  while (order.size() < n) {
    std::size_t best = n;
    double best_score = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      int joined = 0, free_vars = 0;
      for (const auto& p : plan.triples[i].pos) {
        if (!p.is_var) continue;
        if (bound[p.value]) ++joined;
        else ++free_vars;
      }
      // Each bound variable cuts the expected fan-out; a disconnected
      // pattern (a cross product) is deferred unless nothing else remains.
      double score = static_cast<double>(base_cost[i]);
      for (int j = 0; j < joined; ++j) score /= 16.0;
      if (!order.empty() && joined == 0 && free_vars > 0) score += 1e12;
      if (score < best_score) {
        best_score = score;
        best = i;
      }
    }
    used[best] = true;
    order.push_back(best);
    for (const auto& p : plan.triples[best].pos) {
      if (p.is_var) bound[p.value] = true;
    }
  }
  return order;
}

BindingSet finish(const TripleStore& store, const Plan& plan, std::vector<TermId>& flat) {
  BindingSet out;
  for (auto v : plan.select) out.variables.push_back(plan.variables[v]);
  const std::size_t width = plan.select.size();
  if (width == 0) {
    // Boolean pattern: one empty row if anything matched.
    if (!flat.empty()) out.rows.emplace_back();
    return out;
  }
  const std::size_t count = flat.size() / width;
  std::vector<std::size_t> idx(count);
  for (std::size_t i = 0; i < count; ++i) idx[i] = i;
  auto row_less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(flat.begin() + a * width, flat.begin() + (a + 1) * width,
                                        flat.begin() + b * width, flat.begin() + (b + 1) * width);
  };
  auto row_eq = [&](std::size_t a, std::size_t b) {
    return std::equal(flat.begin() + a * width, flat.begin() + (a + 1) * width, flat.begin() + b * width);
  };
  std::sort(idx.begin(), idx.end(), row_less);
  idx.erase(std::unique(idx.begin(), idx.end(), row_eq), idx.end());
  out.rows.reserve(idx.size());
  for (auto i : idx) {
    std::vector<Term> row;
    row.reserve(width);
    for (std::size_t k = 0; k < width; ++k) row.push_back(store.term(flat[i * width + k]));
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace detail

BindingSet match(const TripleStore& store, const Pattern& pattern) {
  using namespace detail;
  const Plan plan = compile(store, pattern);
  std::vector<TermId> flat;
  if (plan.impossible) return finish(store, plan, flat);

  const auto order = selectivity_order(store, plan);
  const CompiledTriple& first = plan.triples[order.front()];
  const Binding empty(plan.variables.size(), TripleStore::kNoTerm);
  const auto key = resolve(first, empty);
  const auto candidates = store.scan(key[0], key[1], key[2]);
  const auto n = static_cast<std::int64_t>(candidates.size());

  std::vector<std::vector<TermId>> per_thread(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    auto& local = per_thread[static_cast<std::size_t>(omp_get_thread_num())];
    Binding b = empty;
    std::array<std::int64_t, 3> assigned{};
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < n; ++i) {
      if (!bind_row(first, candidates[static_cast<std::size_t>(i)], b, assigned)) continue;
      extend(store, plan, order, 1, b, local);
      unbind(b, assigned);
    }
  }

  for (auto& part : per_thread) flat.insert(flat.end(), part.begin(), part.end());
  return finish(store, plan, flat);
}

BindingSet match(const TripleSet& ts, const Pattern& pattern) { return match(TripleStore(ts), pattern); }

BindingSet match_serial(const TripleStore& store, const Pattern& pattern) {
  using namespace detail;
  const Plan plan = compile(store, pattern);
  std::vector<TermId> flat;
  if (plan.impossible) return finish(store, plan, flat);

  std::vector<std::size_t> order(plan.triples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Binding b(plan.variables.size(), TripleStore::kNoTerm);
  extend(store, plan, order, 0, b, flat);
  return finish(store, plan, flat);
}

}  // namespace gopprre::query
