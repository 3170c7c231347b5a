#include "fracdelay/history_buffer.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

#include "fracdelay/errors.h"

namespace fracdelay {
namespace {

constexpr double kSnapTol = 1e-9;  // in units of h

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

HistoryBuffer::HistoryBuffer(double h, double r, int d, int n,
                             InitialData init, int reserve_nodes)
    : h_(h), r_(r), d_(d), n_(n), init_(std::move(init)) {
  if (!(h > 0.0) || !(r > 0.0)) {
    throw DomainError("HistoryBuffer: h and r must be positive");
  }
  if (static_cast<int>(init_.psi.size()) != d ||
      static_cast<int>(init_.phi.size()) != n) {
    throw DimensionError("HistoryBuffer: initial data has the wrong length");
  }
  if (reserve_nodes > 0) {
    x_.reserve(static_cast<std::size_t>(reserve_nodes) * d);
    y_.reserve(static_cast<std::size_t>(reserve_nodes) * n);
  }
}

double HistoryBuffer::t_current() const {
  const int visible = nodes_visible();
  return visible == 0 ? 0.0 : (visible - 1) * h_;
}

void HistoryBuffer::Append(const RealVector& x, const RealVector& y) {
  if (x.size() != d_ || y.size() != n_) {
    throw DimensionError("HistoryBuffer::Append: wrong state length");
  }
  x_.insert(x_.end(), x.data(), x.data() + d_);
  y_.insert(y_.end(), y.data(), y.data() + n_);
  ++size_;
  has_tentative_ = false;
}

void HistoryBuffer::Truncate(int count) {
  if (count < 0 || count > size_) {
    throw RangeError("HistoryBuffer::Truncate: bad node count");
  }
  size_ = count;
  x_.resize(static_cast<std::size_t>(count) * d_);
  y_.resize(static_cast<std::size_t>(count) * n_);
  has_tentative_ = false;
}

void HistoryBuffer::SetTentative(const RealVector& x, const RealVector& y) {
  tentative_x_.assign(x.data(), x.data() + x.size());
  tentative_y_.assign(y.data(), y.data() + y.size());
  has_tentative_ = true;
}

void HistoryBuffer::ClearTentative() { has_tentative_ = false; }

RealVector HistoryBuffer::NodeX(int k) const {
  if (k < 0 || k >= size_) throw RangeError("HistoryBuffer: node out of range");
  return Eigen::Map<const RealVector>(x_.data() + static_cast<std::size_t>(k) * d_,
                                      d_);
}

RealVector HistoryBuffer::NodeY(int k) const {
  if (k < 0 || k >= size_) throw RangeError("HistoryBuffer: node out of range");
  return Eigen::Map<const RealVector>(y_.data() + static_cast<std::size_t>(k) * n_,
                                      n_);
}

double HistoryBuffer::NodeValue(const std::vector<double>& store,
                                const std::vector<double>& tentative,
                                int width, int k, int i) const {
  if (k < size_) return store[static_cast<std::size_t>(k) * width + i];
  return tentative[static_cast<std::size_t>(i)];
}

RealVector HistoryBuffer::Lookup(double s, const std::vector<double>& store,
                                 const std::vector<double>& tentative,
                                 int width, bool is_x) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(s));
  if (!std::isfinite(s) || s < -r_ - slack) {
    throw RangeError("history lookup at s = " + Num(s) + " is before -r = " +
                     Num(-r_));
  }
  if (s <= 0.0) return is_x ? init_.Psi(s) : init_.Phi(s);
  const int visible = nodes_visible();
  const double t_max = t_current();
  if (visible == 0 || s > t_max + kSnapTol * h_) {
    throw RangeError("history lookup at s = " + Num(s) +
                     " is beyond the computed range (t = " + Num(t_max) + ")");
  }
  RealVector out(width);
  const double u = s / h_;
  const double nearest = std::round(u);
  if (std::abs(u - nearest) <= kSnapTol) {
    const int k = std::min(static_cast<int>(nearest), visible - 1);
    for (int i = 0; i < width; ++i) out(i) = NodeValue(store, tentative, width, k, i);
    return out;
  }
  const int k0 = static_cast<int>(std::floor(u));
  const double w = u - k0;
  for (int i = 0; i < width; ++i) {
    out(i) = (1.0 - w) * NodeValue(store, tentative, width, k0, i) +
             w * NodeValue(store, tentative, width, k0 + 1, i);
  }
  return out;
}

RealVector HistoryBuffer::LookupX(double s) const {
  return Lookup(s, x_, tentative_x_, d_, true);
}

RealVector HistoryBuffer::LookupY(double s) const {
  return Lookup(s, y_, tentative_y_, n_, false);
}

}  // namespace fracdelay
