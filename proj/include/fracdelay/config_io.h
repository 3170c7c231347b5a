#pragma once

/** \file config_io.h
 * \brief JSON system configuration.
 *
 * A config is one JSON object with exactly the keys
 *
 *   order, A, B, E, C, D, f, g, tau1, tau2, tau3, r, psi, phi
 *
 * Matrices are arrays of row arrays; f, g, psi are arrays of expression
 * strings; tau1..tau3 are expression strings; phi is either an array of
 * expression strings or the string "derived", which requests the constant
 * phi = (I - D)^{-1} (C psi(0) + g(0)). Unknown or missing keys are
 * errors. */

#include <string>
#include <string_view>

#include "fracdelay/system_model.h"

namespace fracdelay {

struct SystemConfig {
  MultiOrderSystem system;
  InitialData init;
};

/// Throws ConfigError naming the offending key (e.g. "tau1" or "A[1][2]").
SystemConfig ParseConfig(std::string_view json_text);

/// Reads and parses a file; I/O failures are ConfigErrors as well.
SystemConfig LoadConfigFile(const std::string& path);

/// Canonical text: one top-level key per line in the order above, values in
/// compact JSON with shortest round-trip numbers, expressions verbatim.
std::string SerializeConfig(const SystemConfig& config);

}  // namespace fracdelay
