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

#include "phylo/rational.hpp"

#include <cctype>

#include "phylo/error.hpp"

namespace phylo {
namespace {

bool all_digits(std::string_view s) {
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

[[noreturn]] void reject(std::string_view text) {
  throw InputError("not an exact rational: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) reject(text);

  bool negative = false;
  std::string_view body = s;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (body.empty()) reject(text);

  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash), den = body.substr(slash + 1);
    if (num.empty() || den.empty() || !all_digits(num) || !all_digits(den)) reject(text);
    mpz_class d{std::string(den)};
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    value = Rational(mpz_class(std::string(num)), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot), frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || !all_digits(whole) || !all_digits(frac)) reject(text);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class w = whole.empty() ? mpz_class(0) : mpz_class(std::string(whole));
    mpz_class f = frac.empty() ? mpz_class(0) : mpz_class(std::string(frac));
    value = Rational(w * scale + f, scale);
  } else {
    if (!all_digits(body)) reject(text);
    value = Rational(mpz_class(std::string(body)));
  }
  value.canonicalize();
  if (negative) value = -value;
  return value;
}

std::string format_rational(const Rational& value) {
  Rational canonical = value;
  canonical.canonicalize();
  return canonical.get_str();
}

}  // namespace phylo
