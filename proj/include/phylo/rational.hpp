// Copyright 2026 The Phylo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <string>
#include <string_view>

namespace Eigen {

// Exact rationals as an Eigen scalar. There is no rounding, so epsilon and
// dummy_precision are zero.
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Literal = mpq_class;
  using Nested = mpq_class;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace phylo {

using Rational = mpq_class;

/// Accepts integers ("-3"), fractions ("7/4") and plain decimals ("0.25",
/// "-.5"). Scientific notation and anything else throws InputError.
Rational parse_rational(std::string_view text);

/// Canonical "p" or "p/q" form.
std::string format_rational(const Rational& value);

/// Reduces a rational to lowest terms; a no-op for other scalars.
inline void canonicalize(Rational& value) { value.canonicalize(); }
template <typename Scalar>
void canonicalize(Scalar&) {}

}  // namespace phylo
