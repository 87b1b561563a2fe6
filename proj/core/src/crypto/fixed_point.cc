// Copyright 2026 The FedBoost Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fedboost/crypto/fixed_point.h"

#include <cmath>

#include "fedboost/error.h"

namespace fedboost::crypto {
namespace {

mpz_class FromInt64(std::int64_t v) {
  // mpz_class has no portable int64 constructor; go through the magnitude.
  const auto mag = v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
  mpz_class out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(mag), 0, 0, &mag);
  return v < 0 ? mpz_class(-out) : out;
}

}  // namespace

FixedPoint FixedPoint::FromDouble(double x) {
  if (!std::isfinite(x)) throw RangeError("cannot encode a non-finite value");
  const double scaled = x * static_cast<double>(kMicroScale);
  if (std::abs(scaled) >= 9.2e18) throw RangeError("value overflows fixed-point range");
  return FixedPoint{std::llround(scaled)};
}

mpz_class EncodeRaw(std::int64_t raw, const mpz_class& n) {
  const mpz_class v = FromInt64(raw);
  const mpz_class mag = abs(v);
  if (2 * mag >= n) throw RangeError("fixed-point value exceeds plaintext range");
  return v < 0 ? mpz_class(n - mag) : v;
}

mpz_class EncodeSigned(double x, const mpz_class& n) {
  return EncodeRaw(FixedPoint::FromDouble(x).raw, n);
}

std::int64_t DecodeRaw(const mpz_class& m, const mpz_class& n) {
  if (m < 0 || m >= n) throw RangeError("plaintext outside [0, N)");
  const mpz_class v = 2 * m > n ? mpz_class(m - n) : m;
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 63)
    throw RangeError("decoded fixed-point value overflows int64");
  const mpz_class mag = abs(v);
  std::uint64_t u = 0;
  mpz_export(&u, nullptr, 1, sizeof(u), 0, 0, mag.get_mpz_t());
  return v < 0 ? -static_cast<std::int64_t>(u) : static_cast<std::int64_t>(u);
}

double DecodeSigned(const mpz_class& m, const mpz_class& n) {
  return FixedPoint{DecodeRaw(m, n)}.ToDouble();
}

}  // namespace fedboost::crypto
