#pragma once

/** \file commands.h
 * \brief The `fracdelay` command line: simulate, analyze, example, mlf.
 *
 * Exit codes: 0 success; 1 invalid input (usage, config, parse, domain or
 * validation errors); 2 numeric failure at run time. */

#include <ostream>

namespace fracdelay {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitNumeric = 2;

/// Runs one command; never throws. Files are written relative to the
/// current directory.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace fracdelay
