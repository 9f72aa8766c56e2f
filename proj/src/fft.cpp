#include "tfd/fft.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "tfd/errors.hpp"

namespace tfd {

namespace {
bool is_pow2(Index n) { return n != 0 && (n & (n - 1)) == 0; }

Index next_pow2(Index n) {
  Index m = 1;
  while (m < n) m <<= 1;
  return m;
}
}  // namespace

FftPlan::FftPlan(Index n) : n_(n), pow2_(is_pow2(n)) {
  if (n == 0) throw ArgumentError("FFT length must be positive");
  if (pow2_) {
    Index bits = 0;
    while ((Index{1} << bits) < n) ++bits;
    bitrev_.resize(n);
    for (Index i = 0; i < n; ++i) {
      Index r = 0;
      for (Index b = 0; b < bits; ++b) r |= ((i >> b) & 1U) << (bits - 1 - b);
      bitrev_[i] = r;
    }
    twiddle_.resize(n / 2);
    for (Index k = 0; k < n / 2; ++k) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      twiddle_[k] = {std::cos(angle), std::sin(angle)};
    }
    return;
  }

  if (n <= kDirectDftMax) {
    roots_.resize(n);
    for (Index k = 0; k < n; ++k) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      roots_[k] = {std::cos(angle), std::sin(angle)};
    }
    return;
  }

  // chirp[k] = exp(-i pi k^2 / n); k^2 reduced mod 2n keeps the angle small.
  chirp_.resize(n);
  for (Index k = 0; k < n; ++k) {
    const Index k2 = (k * k) % (2 * n);
    const double angle = -std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
    chirp_[k] = {std::cos(angle), std::sin(angle)};
  }
  const Index m = next_pow2(2 * n - 1);
  inner_ = std::make_unique<FftPlan>(m);
  kernel_hat_.assign(m, Complex{});
  kernel_hat_[0] = std::conj(chirp_[0]);
  for (Index k = 1; k < n; ++k) {
    kernel_hat_[k] = std::conj(chirp_[k]);
    kernel_hat_[m - k] = std::conj(chirp_[k]);
  }
  inner_->forward(kernel_hat_);
}

FftPlan::~FftPlan() = default;

void FftPlan::radix2(std::span<Complex> x) const {
  const Index n = n_;
  for (Index i = 0; i < n; ++i) {
    if (i < bitrev_[i]) std::swap(x[i], x[bitrev_[i]]);
  }
  for (Index len = 2; len <= n; len <<= 1) {
    const Index half = len / 2;
    const Index step = n / len;
    for (Index start = 0; start < n; start += len) {
      for (Index j = 0; j < half; ++j) {
        const Complex t = twiddle_[j * step] * x[start + j + half];
        x[start + j + half] = x[start + j] - t;
        x[start + j] += t;
      }
    }
  }
}

void FftPlan::bluestein(std::span<Complex> x) const {
  const Index m = inner_->size();
  thread_local std::vector<Complex> work;
  work.assign(m, Complex{});
  for (Index k = 0; k < n_; ++k) work[k] = x[k] * chirp_[k];
  inner_->forward(work);
  for (Index k = 0; k < m; ++k) work[k] *= kernel_hat_[k];
  inner_->inverse(work);
  for (Index k = 0; k < n_; ++k) x[k] = work[k] * chirp_[k];
}

void FftPlan::direct(std::span<Complex> x) const {
  thread_local std::vector<Complex> work;
  work.assign(x.begin(), x.end());
  for (Index k = 0; k < n_; ++k) {
    Complex acc{};
    Index idx = 0;
    for (Index j = 0; j < n_; ++j) {
      acc += work[j] * roots_[idx];
      idx += k;
      if (idx >= n_) idx -= n_;
    }
    x[k] = acc;
  }
}

void FftPlan::forward(std::span<Complex> x) const {
  if (x.size() != n_) throw DimensionError("FFT input length mismatch");
  if (n_ == 1) return;
  if (pow2_) {
    radix2(x);
  } else if (!roots_.empty()) {
    direct(x);
  } else {
    bluestein(x);
  }
}

void FftPlan::inverse(std::span<Complex> x) const {
  if (x.size() != n_) throw DimensionError("FFT input length mismatch");
  if (n_ == 1) return;
  for (auto& v : x) v = std::conj(v);
  forward(x);
  const double scale = 1.0 / static_cast<double>(n_);
  for (auto& v : x) v = std::conj(v) * scale;
}

const FftPlan& fft_plan(Index n) {
  static std::mutex mutex;
  static std::map<Index, std::unique_ptr<FftPlan>> plans;
  std::lock_guard lock(mutex);
  auto& slot = plans[n];
  if (!slot) slot = std::make_unique<FftPlan>(n);
  return *slot;
}

}  // namespace tfd
