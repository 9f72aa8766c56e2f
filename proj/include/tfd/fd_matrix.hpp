#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tfd/tensor.hpp"

namespace tfd {

/// Matrix Frequent Directions with a 2*ell row buffer.
///
/// Rows go into the lowest free buffer row. When no free row is left the
/// buffer is shrunk: B = U S V^T, delta = sigma_ell^2 (0 if the buffer has
/// fewer than ell singular values), B <- sqrt(max(S^2 - delta, 0)) V^T. After a
/// shrink rows ell-1 .. 2*ell-1 are exactly zero.
class FrequentDirections {
 public:
  FrequentDirections(Index ell, Index dim);

  void insert(std::span<const double> row);
  void shrink();
  /// Forces a shrink when more than ell rows are occupied, then returns the
  /// first ell rows (ell x dim). The state stays usable.
  Eigen::MatrixXd finalize();

  Index ell() const noexcept { return ell_; }
  Index dim() const noexcept { return dim_; }
  Index fill() const noexcept { return fill_; }
  Index shrinks() const noexcept { return shrinks_; }
  double loss_sum() const noexcept { return loss_sum_; }
  double last_delta() const noexcept { return last_delta_; }
  /// Full 2*ell x dim buffer.
  Eigen::MatrixXd buffer() const;

 private:
  Eigen::Map<RowMatrix<double>> buf();

  Index ell_;
  Index dim_;
  Storage<double> data_;
  std::vector<bool> occupied_;
  Index fill_ = 0;
  Index shrinks_ = 0;
  double loss_sum_ = 0.0;
  double last_delta_ = 0.0;
};

}  // namespace tfd
