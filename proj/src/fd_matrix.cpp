#include "tfd/fd_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tfd/errors.hpp"
#include "tfd/slice_svd.hpp"

namespace tfd {

FrequentDirections::FrequentDirections(Index ell, Index dim)
    : ell_(ell), dim_(dim), data_(2 * ell * dim, 0.0), occupied_(2 * ell, false) {
  if (ell < 1) throw ArgumentError("FrequentDirections: ell must be at least 1");
  if (dim < 1) throw ArgumentError("FrequentDirections: row dimension must be positive");
}

Eigen::Map<RowMatrix<double>> FrequentDirections::buf() {
  return Eigen::Map<RowMatrix<double>>(data_.data(), static_cast<Eigen::Index>(2 * ell_),
                                       static_cast<Eigen::Index>(dim_));
}

Eigen::MatrixXd FrequentDirections::buffer() const {
  return Eigen::Map<const RowMatrix<double>>(data_.data(), static_cast<Eigen::Index>(2 * ell_),
                                             static_cast<Eigen::Index>(dim_));
}

void FrequentDirections::insert(std::span<const double> row) {
  if (row.size() != dim_) {
    throw DimensionError("FrequentDirections::insert: row length " + std::to_string(row.size()) + ", expected " +
                         std::to_string(dim_));
  }
  const auto it = std::find(occupied_.begin(), occupied_.end(), false);
  const auto r = static_cast<Index>(it - occupied_.begin());
  std::copy(row.begin(), row.end(), data_.begin() + static_cast<std::ptrdiff_t>(r * dim_));
  occupied_[r] = true;
  ++fill_;
  if (fill_ == 2 * ell_) shrink();
}

void FrequentDirections::shrink() {
  auto b = buf();
  Eigen::MatrixXd work = b;
  const ShrinkOutcome res = shrink_rows(work, ell_);
  const double delta = res.delta;
  b = work;
  fill_ = res.live_rows;
  for (Index r = 0; r < occupied_.size(); ++r) occupied_[r] = r < fill_;
  loss_sum_ += delta;
  last_delta_ = delta;
  ++shrinks_;
}

Eigen::MatrixXd FrequentDirections::finalize() {
  const bool tail_used = std::any_of(occupied_.begin() + static_cast<std::ptrdiff_t>(ell_), occupied_.end(),
                                     [](bool o) { return o; });
  if (fill_ > ell_ || tail_used) shrink();
  return buffer().topRows(static_cast<Eigen::Index>(ell_));
}

}  // namespace tfd
