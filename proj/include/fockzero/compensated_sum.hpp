#pragma once

#include <cmath>

namespace fockzero {

// Neumaier's variant of Kahan summation. The result depends only on the
// order in which terms are added.
template <typename T>
class CompensatedSum {
 public:
  constexpr CompensatedSum() = default;

  constexpr void add(T term) noexcept {
    const T t = sum_ + term;
    if (std::abs(sum_) >= std::abs(term)) {
      carry_ += (sum_ - t) + term;
    } else {
      carry_ += (term - t) + sum_;
    }
    sum_ = t;
  }

  constexpr CompensatedSum& operator+=(T term) noexcept {
    add(term);
    return *this;
  }

  constexpr T value() const noexcept { return sum_ + carry_; }

 private:
  T sum_{0};
  T carry_{0};
};

}  // namespace fockzero
