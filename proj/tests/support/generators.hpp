#pragma once

// Hand-rolled random generators for meta-models, models and triple stores.
// Everything is seeded so a failing case can be replayed from its seed.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gopprre/core.hpp"
#include "gopprre/kg.hpp"
#include "gopprre/query.hpp"

namespace gen {

using Rng = std::mt19937_64;

struct MetaModelOptions {
  int rules = 8;
  /// When false every connector serves exactly one rule end.
  bool allow_sharing = true;
  int max_objects = 6;
  int max_points = 3;
  int max_properties = 4;
  int graphs = 2;
};

gopprre::MetaModel metamodel(Rng& rng, const MetaModelOptions& opt = {});

/// `rules` rules that all reuse one start connector (one shared role on a
/// text-like object) with distinct end connectors.
gopprre::MetaModel shared_cluster(int rules);

struct ModelOptions {
  int max_elements = 50;  // objects + relationships + points + roles + properties
  int max_connections = 20;
  double self_loop_bias = 0.15;
};

/// A model that validates against `mm` (which must itself be valid).
gopprre::Model model(Rng& rng, const gopprre::MetaModel& mm, const ModelOptions& opt = {});

/// Number of objects, relationships, points, roles and properties.
std::size_t element_count(const gopprre::Model& m);

/// A small store over a handful of subjects, predicates and objects, so
/// random patterns have a fair chance of matching.
gopprre::kg::TripleSet triples(Rng& rng, int count);

/// A random conjunctive pattern of 1..max_triples patterns over the terms
/// of `ts` (plus the odd absent constant).
gopprre::query::Pattern pattern(Rng& rng, const gopprre::kg::TripleSet& ts, int max_triples = 3);

}  // namespace gen
