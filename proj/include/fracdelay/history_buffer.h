#pragma once

/** \file history_buffer.h
 * \brief Stored solution values on a uniform grid plus the initial
 * functions, with lookup anywhere in [-r, t_current]. */

#include <vector>

#include "fracdelay/matrix_analysis.h"
#include "fracdelay/system_model.h"

namespace fracdelay {

class HistoryBuffer {
 public:
  /// `reserve_nodes` is a capacity hint only.
  HistoryBuffer(double h, double r, int d, int n, InitialData init,
                int reserve_nodes = 0);

  int d() const { return d_; }
  int n() const { return n_; }
  double h() const { return h_; }
  /// Number of stored grid nodes; node k sits at t = k h.
  int size() const { return size_; }
  /// Time of the last stored node (of the tentative node when one is set).
  double t_current() const;

  /// Stores the next grid node and clears any tentative node.
  void Append(const RealVector& x, const RealVector& y);
  /// Drops nodes k >= count.
  void Truncate(int count);

  /// Makes node size() visible to lookups without committing it, so that a
  /// lookup reaching into the step being computed can use a predictor.
  void SetTentative(const RealVector& x, const RealVector& y);
  void ClearTentative();

  RealVector NodeX(int k) const;
  RealVector NodeY(int k) const;

  /// Initial functions for s <= 0, stored values at grid nodes (snapped
  /// within 1e-9 of a step), linear interpolation in between. Throws
  /// RangeError outside [-r, t_current()].
  RealVector LookupX(double s) const;
  RealVector LookupY(double s) const;

  const InitialData& init() const { return init_; }

 private:
  int nodes_visible() const { return size_ + (has_tentative_ ? 1 : 0); }
  double NodeValue(const std::vector<double>& store,
                   const std::vector<double>& tentative, int width, int k,
                   int i) const;
  RealVector Lookup(double s, const std::vector<double>& store,
                    const std::vector<double>& tentative, int width,
                    bool is_x) const;

  double h_;
  double r_;
  int d_;
  int n_;
  InitialData init_;
  int size_ = 0;
  std::vector<double> x_;  // size_ * d_, row per node
  std::vector<double> y_;  // size_ * n_
  bool has_tentative_ = false;
  std::vector<double> tentative_x_;
  std::vector<double> tentative_y_;
};

}  // namespace fracdelay
