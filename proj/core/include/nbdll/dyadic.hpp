/*
 * Copyright (c) 2026, the nbdll authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef NBDLL_DYADIC_HPP_
#define NBDLL_DYADIC_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <utility>

namespace nbdll {

// A dyadic rational num / 2^exp. Used only as ghost state: the abstract
// position of a node in the list. Midpoints between adjacent positions halve
// the spacing, so the denominator exponent is unbounded; the numerator is an
// arbitrary-precision integer.
class DyadicRational {
 public:
  using Int = boost::multiprecision::cpp_int;

  DyadicRational() = default;
  explicit DyadicRational(std::int64_t n) : num_(n), exp_(0) {}
  DyadicRational(Int num, std::uint32_t exp) : num_(std::move(num)), exp_(exp) {
    normalize();
  }

  const Int& num() const { return num_; }
  std::uint32_t exp() const { return exp_; }

  // (a + b) / 2, exactly.
  static DyadicRational midpoint(const DyadicRational& a,
                                 const DyadicRational& b) {
    // a.num/2^a.exp + b.num/2^b.exp = (a.num<<b.exp + b.num<<a.exp) / 2^(a.exp+b.exp)
    Int sum = (a.num_ << b.exp_) + (b.num_ << a.exp_);
    return DyadicRational(std::move(sum), a.exp_ + b.exp_ + 1);
  }

  friend bool operator==(const DyadicRational& a, const DyadicRational& b) {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
  }
  friend bool operator!=(const DyadicRational& a, const DyadicRational& b) {
    return !(a == b);
  }
  friend bool operator<(const DyadicRational& a, const DyadicRational& b) {
    // Compare a.num/2^a.exp < b.num/2^b.exp by cross-shifting.
    return (a.num_ << b.exp_) < (b.num_ << a.exp_);
  }
  friend bool operator<=(const DyadicRational& a, const DyadicRational& b) {
    return !(b < a);
  }

  std::string toString() const {
    std::string s = num_.str();
    if (exp_ != 0) s += "/2^" + std::to_string(exp_);
    return s;
  }

 private:
  void normalize() {
    while (exp_ > 0 && num_ != 0 && (num_ & 1) == 0) {
      num_ >>= 1;
      --exp_;
    }
    if (num_ == 0) exp_ = 0;
  }

  Int num_ = 0;
  std::uint32_t exp_ = 0;
};

}  // namespace nbdll

#endif  // NBDLL_DYADIC_HPP_
