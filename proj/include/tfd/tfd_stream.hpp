#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tfd/exec.hpp"
#include "tfd/slice_source.hpp"
#include "tfd/slice_svd.hpp"
#include "tfd/tensor.hpp"

namespace tfd {

struct SketchResult {
  DenseTensor sketch;             // ell x n2 x n3 x ... x np
  std::optional<double> c_value;  // empty when no information was ever removed
  double delta_total = 0.0;       // sum over shrinks of max_i delta_i
  Index shrinks = 0;
};

/// Per-shrink snapshot handed to an observer (tests use it to check the
/// per-slice semidefinite orderings).
struct ShrinkEvent {
  const FourierTensor& before;
  const FourierTensor& after;
  std::span<const double> deltas;  // one per Fourier slice
};

/// Streaming tensor Frequent Directions for order p >= 3 (n3 may be 1).
///
/// State is a 2*ell x n2 x trailing buffer kept both spatially and in the
/// Fourier domain. An inserted slice is transformed on its own and written into
/// the lowest free row of the Fourier buffer; the trailing-mode DFT never mixes
/// horizontal slices, so this equals transforming the whole buffer. When no
/// row is free every Fourier slice is shrunk:
///     B_f = U S V^H,  delta_f = sigma_ell^2,  B_f <- sqrt(max(S^2 - delta_f, 0)) V^H
/// Only representative slices are decomposed; conjugate partners are mirrored.
class TensorFrequentDirections {
 public:
  /// slice_dims = (n2, n3, ..., np), at least two entries.
  TensorFrequentDirections(Index ell, std::vector<Index> slice_dims, Exec exec = Exec::parallel);

  /// Inserts one horizontal slice (n2 * rho values, tensor layout order).
  void insert(std::span<const double> slice);
  void insert(const DenseTensor& slice);
  void shrink();
  /// Forces a shrink when rows past the first ell are in use, then returns the
  /// first ell rows together with Delta and c. The state stays usable.
  SketchResult finalize();

  Index ell() const noexcept { return ell_; }
  Index fill() const noexcept { return fill_; }
  Index seen() const noexcept { return seen_; }
  Index shrinks() const noexcept { return shrinks_; }
  Index rho() const noexcept { return spatial_.rho(); }
  double sum_max_delta() const noexcept { return sum_max_; }
  double sum_all_delta() const noexcept { return sum_all_; }
  /// rho * sum_max / sum_all, empty while sum_all is zero.
  std::optional<double> c_value() const;

  const DenseTensor& spatial_buffer() const noexcept { return spatial_; }
  const FourierTensor& fourier_buffer() const noexcept { return fourier_; }

  void set_shrink_observer(std::function<void(const ShrinkEvent&)> observer) { observer_ = std::move(observer); }

 private:
  void refresh_spatial_rows();

  Index ell_;
  Exec exec_;
  DenseTensor spatial_;
  FourierTensor fourier_;
  FourierPairing pairing_;
  std::vector<bool> occupied_;
  std::vector<double> deltas_;
  Index fill_ = 0;
  Index seen_ = 0;
  Index shrinks_ = 0;
  double sum_max_ = 0.0;
  double sum_all_ = 0.0;
  std::function<void(const ShrinkEvent&)> observer_;
};

/// Single pass over `source`.
SketchResult tfd_stream(SliceSource& source, Index ell, Exec exec = Exec::parallel);
/// Convenience overload streaming an in-memory tensor.
SketchResult tfd_stream(const DenseTensor& a, Index ell, Exec exec = Exec::parallel);

}  // namespace tfd
