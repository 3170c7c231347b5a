#pragma once

/** \file trajectory_io.h
 * \brief CSV output: header `t,x_1,...,x_d,y_1,...,y_n`, one row per node,
 * %.17g fields, LF line endings. */

#include <ostream>
#include <string>

#include "fracdelay/solver.h"

namespace fracdelay {

void WriteTrajectoryCsv(const Trajectory& traj, std::ostream& out);

/// Throws std::runtime_error if the file cannot be written.
void WriteTrajectoryCsv(const Trajectory& traj, const std::string& path);

}  // namespace fracdelay
