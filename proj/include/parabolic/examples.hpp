#pragma once

// Built-in example fields and maps, and random maps of a prescribed form.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "parabolic/jet_flow.hpp"
#include "parabolic/normal_form.hpp"

namespace parabolic {

enum class ExampleKind { vector_field, periodic_field, map };

struct Example {
  std::string name;
  ExampleKind kind = ExampleKind::vector_field;
  /// Autonomous vector field or map, in exact arithmetic.
  PolyMap<Rational> polynomial;
  /// Time-periodic field (kind periodic_field).
  PeriodicField periodic;
  /// Generating field of a map example (sitnikov_truncated).
  PolyMap<Rational> generator;
};

using ExampleParams = std::map<std::string, std::string>;

/// claim41_geq, claim41_less, claim42, claim43, sitnikov_truncated.
/// Throws BadParams for unknown names or invalid parameters.
Example builtin_example(const std::string& name, const ExampleParams& params = {});

std::vector<std::string> example_names();

struct RandomMapOptions {
  CaseTag case_tag = CaseTag::m_equal_n;
  int d = 1;
  int d_prime = 1;
  int degree = 6;
  /// Extra random terms per component beyond the structural ones.
  int extra_terms = 3;
};

/// Exact polynomial map of the given case with small rational coefficients;
/// B1 and C are chosen so that every solvability condition holds.
PolyMap<Rational> random_form_map(const RandomMapOptions& opts, std::mt19937_64& rng);

}  // namespace parabolic
