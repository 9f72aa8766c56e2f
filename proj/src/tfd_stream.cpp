#include "tfd/tfd_stream.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tfd/errors.hpp"
#include "tfd/parallel.hpp"
#include "tfd/tensor_ops.hpp"

namespace tfd {

namespace {

std::vector<Index> buffer_dims(Index ell, const std::vector<Index>& slice_dims) {
  if (ell < 1) throw ArgumentError("t-FD: ell must be at least 1");
  if (slice_dims.size() < 2) throw DimensionError("t-FD: needs an order >= 3 tensor (slice dims n2, n3, ...)");
  std::vector<Index> dims{2 * ell};
  dims.insert(dims.end(), slice_dims.begin(), slice_dims.end());
  return dims;
}

}  // namespace

TensorFrequentDirections::TensorFrequentDirections(Index ell, std::vector<Index> slice_dims, Exec exec)
    : ell_(ell),
      exec_(exec),
      spatial_(buffer_dims(ell, slice_dims)),
      fourier_(spatial_.dims(), true),
      pairing_(spatial_.trailing_dims()),
      occupied_(2 * ell, false),
      deltas_(spatial_.rho(), 0.0) {}

void TensorFrequentDirections::insert(const DenseTensor& slice) {
  if (slice.order() != spatial_.order() || slice.n1() != 1 ||
      !std::equal(slice.dims().begin() + 1, slice.dims().end(), spatial_.dims().begin() + 1)) {
    throw DimensionError("t-FD insert: slice dims do not match the sketch");
  }
  insert(slice.data());
}

void TensorFrequentDirections::insert(std::span<const double> slice) {
  const Index width = spatial_.n2() * spatial_.rho();
  if (slice.size() != width) {
    throw DimensionError("t-FD insert: slice has " + std::to_string(slice.size()) + " entries, expected " +
                         std::to_string(width));
  }
  const auto it = std::find(occupied_.begin(), occupied_.end(), false);
  const auto r = static_cast<Index>(it - occupied_.begin());

  std::copy(slice.begin(), slice.end(), spatial_.horizontal(r).begin());
  auto dst = fourier_.horizontal(r);
  std::copy(slice.begin(), slice.end(), dst.begin());
  transform_trailing(dst, 1, spatial_.n2(), spatial_.trailing_dims(), FftDirection::forward, exec_);

  occupied_[r] = true;
  ++fill_;
  ++seen_;
  if (fill_ == 2 * ell_) shrink();
}

void TensorFrequentDirections::shrink() {
  std::optional<FourierTensor> before;
  if (observer_) before = fourier_;

  const auto& reps = pairing_.representatives();
  std::vector<Index> live_rows(reps.size(), 0);
  parallel_for(static_cast<std::int64_t>(reps.size()), exec_, [&](std::int64_t i) {
    const Index f = reps[static_cast<Index>(i)];
    auto out = frontal(fourier_, f);
    ShrinkOutcome res;
    if (pairing_.self_conjugate(f)) {
      Eigen::MatrixXd work = out.real();
      res = shrink_rows(work, ell_, f);
      out = work.cast<Complex>();
    } else {
      Eigen::MatrixXcd work = out;
      res = shrink_rows(work, ell_, f);
      out = work;
    }
    const double delta = res.delta;
    const Index live = res.live_rows;
    const Index g = pairing_.partner(f);
    if (g != f) frontal(fourier_, g) = out.conjugate();
    deltas_[f] = delta;
    deltas_[g] = delta;
    live_rows[static_cast<Index>(i)] = live;
  });

  double step_max = 0.0;
  double step_sum = 0.0;
  for (double d : deltas_) {
    step_max = std::max(step_max, d);
    step_sum += d;
  }
  sum_max_ += step_max;
  sum_all_ += step_sum;
  ++shrinks_;

  fill_ = live_rows.empty() ? 0 : *std::max_element(live_rows.begin(), live_rows.end());
  for (Index r = 0; r < occupied_.size(); ++r) occupied_[r] = r < fill_;
  refresh_spatial_rows();

  if (observer_) observer_(ShrinkEvent{*before, fourier_, deltas_});
}

void TensorFrequentDirections::refresh_spatial_rows() {
  const Index n2 = spatial_.n2();
  const auto trailing = spatial_.trailing_dims();
  const Index width = n2 * spatial_.rho();
  parallel_for(static_cast<std::int64_t>(occupied_.size()), exec_, [&](std::int64_t i) {
    const auto r = static_cast<Index>(i);
    auto dst = spatial_.horizontal(r);
    if (!occupied_[r]) {
      std::fill(dst.begin(), dst.end(), 0.0);
      return;
    }
    const auto src = fourier_.horizontal(r);
    Storage<Complex> row(src.begin(), src.end());
    transform_trailing(row, 1, n2, trailing, FftDirection::inverse, Exec::serial);
    for (Index j = 0; j < width; ++j) dst[j] = row[j].real();
  });
}

std::optional<double> TensorFrequentDirections::c_value() const {
  if (sum_all_ <= 0.0) return std::nullopt;
  return static_cast<double>(spatial_.rho()) * sum_max_ / sum_all_;
}

SketchResult TensorFrequentDirections::finalize() {
  const bool tail_used =
      std::any_of(occupied_.begin() + static_cast<std::ptrdiff_t>(ell_), occupied_.end(), [](bool o) { return o; });
  if (fill_ > ell_ || tail_used) shrink();
  const Index width = spatial_.n2() * spatial_.rho();
  const auto src = spatial_.data().first(ell_ * width);
  SketchResult out;
  out.sketch = DenseTensor(with_n1(spatial_.dims(), ell_), Storage<double>(src.begin(), src.end()));
  out.c_value = c_value();
  out.delta_total = sum_max_;
  out.shrinks = shrinks_;
  return out;
}

SketchResult tfd_stream(SliceSource& source, Index ell, Exec exec) {
  const auto& dims = source.dims();
  if (dims.size() < 3) throw DimensionError("tfd_stream: needs an order >= 3 tensor");
  TensorFrequentDirections sketch(ell, std::vector<Index>(dims.begin() + 1, dims.end()), exec);
  Storage<double> slice(source.slice_size());
  while (source.next(slice)) sketch.insert(slice);
  return sketch.finalize();
}

SketchResult tfd_stream(const DenseTensor& a, Index ell, Exec exec) {
  TensorSliceSource source(a);
  return tfd_stream(source, ell, exec);
}

}  // namespace tfd
