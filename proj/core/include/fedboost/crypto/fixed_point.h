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

#ifndef FEDBOOST_CRYPTO_FIXED_POINT_H_
#define FEDBOOST_CRYPTO_FIXED_POINT_H_

#include <cstdint>

#include <gmpxx.h>

namespace fedboost::crypto {

// Reals travel through the plaintext space as signed integer micro-units.
inline constexpr std::int64_t kMicroScale = 1'000'000;

struct FixedPoint {
  std::int64_t raw = 0;

  // Rounds half away from zero. Throws RangeError for non-finite input or
  // values beyond the int64 micro-unit range.
  static FixedPoint FromDouble(double x);
  double ToDouble() const { return static_cast<double>(raw) / kMicroScale; }

  friend bool operator==(FixedPoint, FixedPoint) = default;
};

// Maps raw micro-units into [0, n): negatives become n - |raw|. Throws
// RangeError unless |raw| < n / 2.
mpz_class EncodeRaw(std::int64_t raw, const mpz_class& n);
mpz_class EncodeSigned(double x, const mpz_class& n);

// Inverse of EncodeRaw: values above n / 2 are negative. Throws RangeError for
// m outside [0, n) or results that do not fit int64.
std::int64_t DecodeRaw(const mpz_class& m, const mpz_class& n);
double DecodeSigned(const mpz_class& m, const mpz_class& n);

}  // namespace fedboost::crypto

#endif  // FEDBOOST_CRYPTO_FIXED_POINT_H_
