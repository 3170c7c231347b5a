#pragma once

/** \file scenarios.h
 * \brief The three built-in example systems, embedded as canonical config
 * text together with their default run parameters. */

#include <optional>
#include <string_view>
#include <vector>

#include "fracdelay/matrix_analysis.h"

namespace fracdelay {

struct Scenario {
  std::string_view name;
  std::string_view config_json;  // byte-exact canonical config
  double step = 0.01;
  double t_end = 50.0;
  /// Exact suprema of f and g, when the scenario is analyzed in bound mode.
  std::optional<RealVector> sup_f;
  std::optional<RealVector> sup_g;
};

const std::vector<Scenario>& BuiltinScenarios();

/// nullptr for an unknown name.
const Scenario* FindScenario(std::string_view name);

}  // namespace fracdelay
