#include <algorithm>
#include <array>

#include "gopprre/query.hpp"

namespace gopprre::query {
namespace {

using Row = TripleStore::Row;
using TermId = TripleStore::TermId;
using Key = std::array<TermId, 3>;

Key spo_key(const Row& r) { return {r.s, r.p, r.o}; }
Key pos_key(const Row& r) { return {r.p, r.o, r.s}; }
Key osp_key(const Row& r) { return {r.o, r.s, r.p}; }

template <class KeyFn>
void sort_by(std::vector<Row>& rows, KeyFn key) {
  std::sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) { return key(a) < key(b); });
}

// Contiguous range of `rows` whose key starts with the first `n` entries of
// `prefix`.
template <class KeyFn>
std::span<const Row> prefix_range(const std::vector<Row>& rows, KeyFn key, Key prefix, std::size_t n) {
  auto less_row = [&](const Row& r, const Key& k) {
    const Key rk = key(r);
    return std::lexicographical_compare(rk.begin(), rk.begin() + n, k.begin(), k.begin() + n);
  };
  auto less_key = [&](const Key& k, const Row& r) {
    const Key rk = key(r);
    return std::lexicographical_compare(k.begin(), k.begin() + n, rk.begin(), rk.begin() + n);
  };
  auto lo = std::lower_bound(rows.begin(), rows.end(), prefix, less_row);
  auto hi = std::upper_bound(lo, rows.end(), prefix, less_key);
  return {rows.data() + (lo - rows.begin()), static_cast<std::size_t>(hi - lo)};
}

}  // namespace

TripleStore::TripleStore(const TripleSet& ts) {
  // Ids follow N-Triples text order, so comparing ids compares terms.
  std::vector<const Term*> distinct;
  distinct.reserve(ts.size() * 3);
  for (const auto& t : ts) {
    distinct.push_back(&t.subject);
    distinct.push_back(&t.predicate);
    distinct.push_back(&t.object);
  }
  std::sort(distinct.begin(), distinct.end(), [](const Term* a, const Term* b) { return *a < *b; });
  distinct.erase(std::unique(distinct.begin(), distinct.end(),
                             [](const Term* a, const Term* b) { return *a == *b; }),
                 distinct.end());
  terms_.reserve(distinct.size());
  for (const Term* t : distinct) {
    ids_.emplace(t->ntriples(), static_cast<TermId>(terms_.size()));
    terms_.push_back(*t);
  }

  spo_.reserve(ts.size());
  for (const auto& t : ts) {
    spo_.push_back({ids_.at(t.subject.ntriples()), ids_.at(t.predicate.ntriples()),
                    ids_.at(t.object.ntriples())});
  }
  pos_ = spo_;
  osp_ = spo_;
  sort_by(spo_, spo_key);
  sort_by(pos_, pos_key);
  sort_by(osp_, osp_key);
}

TripleStore::TermId TripleStore::lookup(const Term& t) const {
  auto it = ids_.find(t.ntriples());
  return it == ids_.end() ? kNoTerm : it->second;
}

std::span<const TripleStore::Row> TripleStore::scan(TermId s, TermId p, TermId o) const {
  const bool bs = s != kNoTerm, bp = p != kNoTerm, bo = o != kNoTerm;
  if (bs && bp) return prefix_range(spo_, spo_key, {s, p, o}, bo ? 3 : 2);
  if (bs && bo) return prefix_range(osp_, osp_key, {o, s, 0}, 2);
  if (bs) return prefix_range(spo_, spo_key, {s, 0, 0}, 1);
  if (bp) return prefix_range(pos_, pos_key, {p, o, 0}, bo ? 2 : 1);
  if (bo) return prefix_range(osp_, osp_key, {o, 0, 0}, 1);
  return {spo_.data(), spo_.size()};
}

}  // namespace gopprre::query
