#include "tfd/slice_source.hpp"

#include <algorithm>

#include "tfd/errors.hpp"

namespace tfd {

void SliceSource::rewind() { throw ArgumentError("slice source does not support a second pass"); }

Index SliceSource::slice_size() const {
  const auto& d = dims();
  return product(std::span<const Index>(d).subspan(1));
}

std::span<const Index> SliceSource::trailing_dims() const { return std::span<const Index>(dims()).subspan(2); }

bool TensorSliceSource::next(std::span<double> out) {
  if (pos_ >= t_.n1()) return false;
  if (out.size() != slice_size()) throw DimensionError("TensorSliceSource::next: output buffer has the wrong size");
  const auto row = t_.horizontal(pos_++);
  std::copy(row.begin(), row.end(), out.begin());
  return true;
}

bool TimedSource::next(std::span<double> out) {
  const auto t0 = std::chrono::steady_clock::now();
  const bool ok = inner_.next(out);
  seconds_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return ok;
}

void TimedSource::rewind() {
  const auto t0 = std::chrono::steady_clock::now();
  inner_.rewind();
  seconds_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

DenseTensor collect(SliceSource& source) {
  if (source.rewindable()) source.rewind();
  DenseTensor out(source.dims());
  for (Index i = 0; i < out.n1(); ++i) {
    if (!source.next(out.horizontal(i))) throw FormatError("collect: source ended early");
  }
  return out;
}

}  // namespace tfd
