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

#include "doctest.h"

#include "nbdll/dyadic.hpp"
#include "nbdll/value.hpp"

using nbdll::DyadicRational;
using nbdll::Value;

TEST_CASE("values order with EOL greater than every ordinary value") {
  Value a(-5), b(0), c(100);
  Value eol = nbdll::detail::ValueFactory::eol();
  CHECK(a < b);
  CHECK(b < c);
  CHECK(c < eol);
  CHECK(a < eol);
  CHECK(eol.isEol());
  CHECK_FALSE(c.isEol());
  CHECK(Value(7) == Value(7));
  CHECK(Value(7) != Value(8));
  CHECK(Value(7).toString() == "7");
  CHECK(eol.toString() == "EOL");
}

TEST_CASE("dyadic rationals normalize and compare across denominators") {
  DyadicRational zero(0), one(1), two(2);
  CHECK(zero < one);
  CHECK(one < two);

  DyadicRational half = DyadicRational::midpoint(zero, one);
  CHECK(zero < half);
  CHECK(half < one);
  CHECK(half.toString() == "1/2^1");

  // 1/2 + 1/2 of the way to 1 is 3/4; midpoint(1/2, 1) = 3/4.
  DyadicRational q = DyadicRational::midpoint(half, one);
  CHECK(q.toString() == "3/2^2");
  CHECK(half < q);
  CHECK(q < one);

  // Midpoint of equal-denominator values normalizes: mid(1/4, 3/4) = 1/2.
  DyadicRational quarter = DyadicRational::midpoint(zero, half);
  DyadicRational mid = DyadicRational::midpoint(quarter, q);
  CHECK(mid == half);
}

TEST_CASE("dyadic midpoints stay strictly ordered under deep nesting") {
  DyadicRational lo(0), hi(1);
  for (int i = 0; i < 200; ++i) {
    DyadicRational mid = DyadicRational::midpoint(lo, hi);
    CHECK(lo < mid);
    CHECK(mid < hi);
    hi = mid;
  }
}
