#include "fracdelay/trajectory_io.h"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace fracdelay {
namespace {

void PutNumber(std::ostream& out, double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof(buf), "%.17g", v);
  out.write(buf, len);
}

}  // namespace

void WriteTrajectoryCsv(const Trajectory& traj, std::ostream& out) {
  out << 't';
  for (Eigen::Index i = 0; i < traj.x.cols(); ++i) out << ",x_" << i + 1;
  for (Eigen::Index i = 0; i < traj.y.cols(); ++i) out << ",y_" << i + 1;
  out << '\n';
  for (int k = 0; k < traj.size(); ++k) {
    PutNumber(out, traj.t(k));
    for (Eigen::Index i = 0; i < traj.x.cols(); ++i) {
      out << ',';
      PutNumber(out, traj.x(k, i));
    }
    for (Eigen::Index i = 0; i < traj.y.cols(); ++i) {
      out << ',';
      PutNumber(out, traj.y(k, i));
    }
    out << '\n';
  }
}

void WriteTrajectoryCsv(const Trajectory& traj, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  WriteTrajectoryCsv(traj, file);
  file.flush();
  if (!file) throw std::runtime_error("failed writing " + path);
}

}  // namespace fracdelay
