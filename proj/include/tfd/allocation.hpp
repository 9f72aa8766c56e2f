#pragma once

#include <atomic>
#include <cstdint>
#include <memory>

namespace tfd {

namespace detail {
void note_tensor_alloc(std::size_t entries) noexcept;
void note_tensor_free(std::size_t entries) noexcept;
}  // namespace detail

/// std::allocator that books every element it hands out in a process-wide
/// counter. Tensor storage uses it so streaming memory can be measured in
/// tensor entries (one entry per real or complex element).
template <class T>
struct CountingAllocator {
  using value_type = T;

  CountingAllocator() noexcept = default;
  template <class U>
  CountingAllocator(const CountingAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    T* p = std::allocator<T>{}.allocate(n);
    detail::note_tensor_alloc(n);
    return p;
  }
  void deallocate(T* p, std::size_t n) noexcept {
    detail::note_tensor_free(n);
    std::allocator<T>{}.deallocate(p, n);
  }

  friend bool operator==(const CountingAllocator&, const CountingAllocator&) { return true; }
};

/// Live tensor entries across the process.
std::int64_t live_tensor_entries() noexcept;

/// Measures the high-water mark of tensor entries allocated after construction.
/// Resets the global peak, so only one probe should be active at a time.
class AllocationProbe {
 public:
  AllocationProbe() noexcept;
  /// Peak live entries above the baseline seen at construction.
  std::int64_t peak_delta() const noexcept;

 private:
  std::int64_t baseline_;
};

}  // namespace tfd
