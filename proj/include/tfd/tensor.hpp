#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tfd/allocation.hpp"

namespace tfd {

using Index = std::size_t;
using Complex = std::complex<double>;

template <class T>
using Storage = std::vector<T, CountingAllocator<T>>;

/// Product of a dimension list; 1 for an empty list.
Index product(std::span<const Index> dims);

// Memory layout shared by every tensor in the library.
//
// For a tensor of dims (n1, n2, n3, ..., np) with rho = n3 * ... * np, the
// trailing indices are folded into a frontal-slice index
//     f = i3 + n3 * (i4 + n4 * (... + n_{p-1} * ip))
// and the element (i1, i2, f) lives at
//     offset = (i1 * rho + f) * n2 + i2.
//
// So i2 is fastest, then i3, ..., ip, and i1 is slowest. Consequences:
//   - a horizontal slice (fixed i1) is one contiguous block of n2 * rho
//     entries, which is what the streaming algorithms consume;
//   - that block is exactly row i1 of the mode-1 unfolding
//     [A^(1) A^(2) ... A^(rho)];
//   - frontal slice f is a row-major n1 x n2 matrix with row stride n2 * rho.
template <class T>
class BasicTensor {
 public:
  using value_type = T;

  BasicTensor() = default;

  /// Zero-filled tensor. Requires at least two dims, all positive.
  explicit BasicTensor(std::vector<Index> dims);
  BasicTensor(std::vector<Index> dims, Storage<T> data);

  const std::vector<Index>& dims() const noexcept { return dims_; }
  Index order() const noexcept { return dims_.size(); }
  Index size() const noexcept { return data_.size(); }
  Index n1() const noexcept { return dims_.empty() ? 0 : dims_[0]; }
  Index n2() const noexcept { return dims_.size() < 2 ? 0 : dims_[1]; }
  /// Number of frontal slices, n3 * ... * np.
  Index rho() const noexcept { return rho_; }
  std::span<const Index> trailing_dims() const noexcept {
    return dims_.size() <= 2 ? std::span<const Index>{} : std::span<const Index>(dims_).subspan(2);
  }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }

  T& operator()(Index i1, Index i2, Index f) noexcept { return data_[(i1 * rho_ + f) * n2() + i2]; }
  const T& operator()(Index i1, Index i2, Index f) const noexcept {
    return data_[(i1 * rho_ + f) * n2() + i2];
  }

  /// Element by full multi-index (i1, i2, i3, ..., ip). Bounds-checked.
  T& at(std::initializer_list<Index> index);
  const T& at(std::initializer_list<Index> index) const;

  /// Contiguous storage of horizontal slice i1 (n2 * rho entries).
  std::span<T> horizontal(Index i1) noexcept {
    return std::span<T>(data_).subspan(i1 * n2() * rho_, n2() * rho_);
  }
  std::span<const T> horizontal(Index i1) const noexcept {
    return std::span<const T>(data_).subspan(i1 * n2() * rho_, n2() * rho_);
  }

 private:
  Index offset_of(std::initializer_list<Index> index) const;

  std::vector<Index> dims_;
  Index rho_ = 1;
  Storage<T> data_;
};

extern template class BasicTensor<double>;
extern template class BasicTensor<Complex>;

/// Real order-p dense tensor.
using DenseTensor = BasicTensor<double>;

/// Complex tensor in the Fourier domain along modes 3..p.
class FourierTensor : public BasicTensor<Complex> {
 public:
  FourierTensor() = default;
  FourierTensor(std::vector<Index> dims, bool real_sourced)
      : BasicTensor<Complex>(std::move(dims)), real_sourced_(real_sourced) {}
  FourierTensor(std::vector<Index> dims, Storage<Complex> data, bool real_sourced)
      : BasicTensor<Complex>(std::move(dims), std::move(data)), real_sourced_(real_sourced) {}

  /// True when the data is the transform of a real tensor, so slice f and its
  /// mode-wise negated partner are complex conjugates.
  bool real_sourced() const noexcept { return real_sourced_; }

 private:
  bool real_sourced_ = false;
};

/// Lateral slice n x 1 x n3 x ... x np.
class TensorColumn {
 public:
  explicit TensorColumn(DenseTensor t);
  const DenseTensor& tensor() const noexcept { return t_; }

 private:
  DenseTensor t_;
};

/// Pairs each frontal-slice index with its conjugate partner (every trailing
/// index negated modulo its dim). Representatives are the f with f <= partner(f);
/// the transform of a real tensor is determined by its representative slices.
class FourierPairing {
 public:
  explicit FourierPairing(std::span<const Index> trailing_dims);

  Index rho() const noexcept { return partner_.size(); }
  Index partner(Index f) const noexcept { return partner_[f]; }
  bool self_conjugate(Index f) const noexcept { return partner_[f] == f; }
  const std::vector<Index>& representatives() const noexcept { return reps_; }

 private:
  std::vector<Index> partner_;
  std::vector<Index> reps_;
};

/// Frontal index of the mode-wise difference (fa - fb) mod dims.
Index frontal_difference(std::span<const Index> trailing_dims, Index fa, Index fb);
/// Frontal index with every trailing index negated mod its dim.
Index frontal_negate(std::span<const Index> trailing_dims, Index f);

template <class T>
using RowMatrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <class T>
using FrontalMap = Eigen::Map<RowMatrix<T>, 0, Eigen::OuterStride<>>;
template <class T>
using ConstFrontalMap = Eigen::Map<const RowMatrix<T>, 0, Eigen::OuterStride<>>;

/// View of frontal slice f as an n1 x n2 matrix (no copy).
template <class T>
FrontalMap<T> frontal(BasicTensor<T>& t, Index f) {
  return FrontalMap<T>(t.data().data() + f * t.n2(), static_cast<Eigen::Index>(t.n1()),
                       static_cast<Eigen::Index>(t.n2()),
                       Eigen::OuterStride<>(static_cast<Eigen::Index>(t.rho() * t.n2())));
}
template <class T>
ConstFrontalMap<T> frontal(const BasicTensor<T>& t, Index f) {
  return ConstFrontalMap<T>(t.data().data() + f * t.n2(), static_cast<Eigen::Index>(t.n1()),
                            static_cast<Eigen::Index>(t.n2()),
                            Eigen::OuterStride<>(static_cast<Eigen::Index>(t.rho() * t.n2())));
}

/// Dims with the first entry replaced.
std::vector<Index> with_n1(std::span<const Index> dims, Index n1);
/// (n1, n2, trailing...) assembled from parts.
std::vector<Index> make_dims(Index n1, Index n2, std::span<const Index> trailing);

}  // namespace tfd
