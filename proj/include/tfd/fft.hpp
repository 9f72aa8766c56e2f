#pragma once

#include <memory>
#include <span>
#include <vector>

#include "tfd/tensor.hpp"

namespace tfd {

/// In-place 1-D DFT of a fixed length.
///
/// forward:  X[k] = sum_j x[j] exp(-2 pi i j k / n)        (unnormalized)
/// inverse:  x[j] = (1/n) sum_k X[k] exp(+2 pi i j k / n)
///
/// Powers of two use an iterative radix-2 transform. Other lengths up to
/// kDirectDftMax use a direct O(n^2) sum over a precomputed root table, and
/// longer ones go through Bluestein's chirp-z reformulation on a power-of-two
/// grid.
inline constexpr Index kDirectDftMax = 64;

class FftPlan {
 public:
  explicit FftPlan(Index n);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  Index size() const noexcept { return n_; }
  void forward(std::span<Complex> x) const;
  void inverse(std::span<Complex> x) const;

 private:
  void radix2(std::span<Complex> x) const;
  void bluestein(std::span<Complex> x) const;
  void direct(std::span<Complex> x) const;

  Index n_;
  bool pow2_;
  std::vector<Index> bitrev_;
  std::vector<Complex> twiddle_;
  std::vector<Complex> roots_;  // exp(-2 pi i k / n), direct path
  // Bluestein state
  std::vector<Complex> chirp_;
  std::vector<Complex> kernel_hat_;
  std::unique_ptr<FftPlan> inner_;
};

/// Shared plan for length n; thread-safe, plans live for the process.
const FftPlan& fft_plan(Index n);

}  // namespace tfd
