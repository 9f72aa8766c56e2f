#include "tfd/tensor.hpp"

#include <algorithm>
#include <atomic>
#include <string>

#include "tfd/errors.hpp"

namespace tfd {

namespace detail {
namespace {
std::atomic<std::int64_t> g_live{0};
std::atomic<std::int64_t> g_peak{0};
}  // namespace

void note_tensor_alloc(std::size_t entries) noexcept {
  const auto now = g_live.fetch_add(static_cast<std::int64_t>(entries)) + static_cast<std::int64_t>(entries);
  auto peak = g_peak.load();
  while (now > peak && !g_peak.compare_exchange_weak(peak, now)) {
  }
}

void note_tensor_free(std::size_t entries) noexcept { g_live.fetch_sub(static_cast<std::int64_t>(entries)); }
}  // namespace detail

std::int64_t live_tensor_entries() noexcept { return detail::g_live.load(); }

AllocationProbe::AllocationProbe() noexcept : baseline_(detail::g_live.load()) { detail::g_peak.store(baseline_); }

std::int64_t AllocationProbe::peak_delta() const noexcept { return detail::g_peak.load() - baseline_; }

Index product(std::span<const Index> dims) {
  Index p = 1;
  for (Index d : dims) p *= d;
  return p;
}

namespace {
void validate_dims(const std::vector<Index>& dims) {
  if (dims.size() < 2) throw DimensionError("tensor order must be at least 2");
  for (Index d : dims) {
    if (d == 0) throw DimensionError("tensor dims must be positive");
  }
}
}  // namespace

template <class T>
BasicTensor<T>::BasicTensor(std::vector<Index> dims) : dims_(std::move(dims)) {
  validate_dims(dims_);
  rho_ = product(trailing_dims());
  data_.assign(product(dims_), T{});
}

template <class T>
BasicTensor<T>::BasicTensor(std::vector<Index> dims, Storage<T> data) : dims_(std::move(dims)), data_(std::move(data)) {
  validate_dims(dims_);
  rho_ = product(trailing_dims());
  if (data_.size() != product(dims_)) {
    throw DimensionError("tensor data length " + std::to_string(data_.size()) + " does not match dims product " +
                         std::to_string(product(dims_)));
  }
}

template <class T>
Index BasicTensor<T>::offset_of(std::initializer_list<Index> index) const {
  if (index.size() != dims_.size()) throw DimensionError("multi-index order mismatch");
  auto it = index.begin();
  const Index i1 = *it++;
  const Index i2 = *it++;
  if (i1 >= dims_[0] || i2 >= dims_[1]) throw DimensionError("multi-index out of range");
  Index f = 0;
  Index stride = 1;
  for (Index m = 2; m < dims_.size(); ++m, ++it) {
    if (*it >= dims_[m]) throw DimensionError("multi-index out of range");
    f += *it * stride;
    stride *= dims_[m];
  }
  return (i1 * rho_ + f) * dims_[1] + i2;
}

template <class T>
T& BasicTensor<T>::at(std::initializer_list<Index> index) {
  return data_[offset_of(index)];
}

template <class T>
const T& BasicTensor<T>::at(std::initializer_list<Index> index) const {
  return data_[offset_of(index)];
}

template class BasicTensor<double>;
template class BasicTensor<Complex>;

TensorColumn::TensorColumn(DenseTensor t) : t_(std::move(t)) {
  if (t_.order() < 2 || t_.n2() != 1) throw DimensionError("tensor column must have second dimension 1");
}

Index frontal_negate(std::span<const Index> trailing_dims, Index f) {
  Index out = 0;
  Index stride = 1;
  for (Index n : trailing_dims) {
    const Index i = f % n;
    f /= n;
    out += ((n - i) % n) * stride;
    stride *= n;
  }
  return out;
}

Index frontal_difference(std::span<const Index> trailing_dims, Index fa, Index fb) {
  Index out = 0;
  Index stride = 1;
  for (Index n : trailing_dims) {
    const Index ia = fa % n;
    const Index ib = fb % n;
    fa /= n;
    fb /= n;
    out += ((ia + n - ib) % n) * stride;
    stride *= n;
  }
  return out;
}

FourierPairing::FourierPairing(std::span<const Index> trailing_dims) {
  const Index rho = product(trailing_dims);
  partner_.resize(rho);
  for (Index f = 0; f < rho; ++f) {
    partner_[f] = frontal_negate(trailing_dims, f);
    if (f <= partner_[f]) reps_.push_back(f);
  }
}

std::vector<Index> with_n1(std::span<const Index> dims, Index n1) {
  std::vector<Index> out(dims.begin(), dims.end());
  out.at(0) = n1;
  return out;
}

std::vector<Index> make_dims(Index n1, Index n2, std::span<const Index> trailing) {
  std::vector<Index> out{n1, n2};
  out.insert(out.end(), trailing.begin(), trailing.end());
  return out;
}

}  // namespace tfd
