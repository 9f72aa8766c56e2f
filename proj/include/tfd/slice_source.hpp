#pragma once

#include <chrono>
#include <span>
#include <vector>

#include "tfd/tensor.hpp"

namespace tfd {

/// Ordered producer of horizontal slices. Each slice is n2 * rho contiguous
/// values in tensor layout order (the 1 x n2 x n3 x ... block).
class SliceSource {
 public:
  virtual ~SliceSource() = default;

  /// Dims of the whole tensor; dims()[0] is the number of slices.
  virtual const std::vector<Index>& dims() const = 0;
  /// Writes the next slice into `out` (size n2 * rho). Returns false at the end.
  virtual bool next(std::span<double> out) = 0;
  virtual bool rewindable() const { return false; }
  /// Restarts from the first slice. Throws ArgumentError if not rewindable.
  virtual void rewind();

  Index slice_size() const;
  std::span<const Index> trailing_dims() const;
};

/// Streams the horizontal slices of an in-memory tensor. Holds a reference;
/// the tensor must outlive the source.
class TensorSliceSource final : public SliceSource {
 public:
  explicit TensorSliceSource(const DenseTensor& t) : t_(t) {}

  const std::vector<Index>& dims() const override { return t_.dims(); }
  bool next(std::span<double> out) override;
  bool rewindable() const override { return true; }
  void rewind() override { pos_ = 0; }

 private:
  const DenseTensor& t_;
  Index pos_ = 0;
};

/// Wraps a source and accumulates the wall time spent inside next()/rewind().
class TimedSource final : public SliceSource {
 public:
  explicit TimedSource(SliceSource& inner) : inner_(inner) {}

  const std::vector<Index>& dims() const override { return inner_.dims(); }
  bool next(std::span<double> out) override;
  bool rewindable() const override { return inner_.rewindable(); }
  void rewind() override;

  double seconds() const noexcept { return seconds_; }

 private:
  SliceSource& inner_;
  double seconds_ = 0.0;
};

/// Drains a source into a dense tensor (oracle phase only).
DenseTensor collect(SliceSource& source);

}  // namespace tfd
