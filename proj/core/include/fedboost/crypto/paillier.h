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

// Paillier additively homomorphic encryption with generator g = N + 1.

#ifndef FEDBOOST_CRYPTO_PAILLIER_H_
#define FEDBOOST_CRYPTO_PAILLIER_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "fedboost/crypto/random.h"

namespace fedboost::crypto {

using KeyId = std::uint64_t;

struct Ciphertext {
  mpz_class value;
  KeyId key_id = 0;
};

class PublicKey {
 public:
  PublicKey() = default;
  PublicKey(mpz_class n, int bits);

  const mpz_class& n() const { return n_; }
  const mpz_class& n_squared() const { return n2_; }
  mpz_class g() const { return n_ + 1; }
  int bits() const { return bits_; }
  KeyId key_id() const { return key_id_; }
  // Fixed wire width of one ciphertext.
  std::size_t ciphertext_bytes() const { return 2 * static_cast<std::size_t>(bits_) / 8; }

  // Throws ArgumentError unless 0 <= m < N.
  Ciphertext Encrypt(const mpz_class& m, RandomSource& rng) const;
  Ciphertext EncryptZero(RandomSource& rng) const;
  // Throws KeyError when a ciphertext came from another key.
  Ciphertext Add(const Ciphertext& a, const Ciphertext& b) const;
  void AddInPlace(Ciphertext& acc, const Ciphertext& b) const;
  Ciphertext AddPlain(const Ciphertext& c, const mpz_class& m) const;

  void CheckOwned(const Ciphertext& c) const;

 private:
  mpz_class n_;
  mpz_class n2_;
  int bits_ = 0;
  KeyId key_id_ = 0;
};

class PrivateKey {
 public:
  PrivateKey() = default;
  // Without the factors p, q decryption uses the plain lambda/mu formula.
  PrivateKey(PublicKey pub, mpz_class lambda, mpz_class mu);
  PrivateKey(PublicKey pub, mpz_class lambda, mpz_class mu, mpz_class p,
             mpz_class q);

  const PublicKey& public_key() const { return pub_; }
  const mpz_class& lambda() const { return lambda_; }
  const mpz_class& mu() const { return mu_; }
  bool has_factors() const { return static_cast<bool>(crt_); }

  mpz_class Decrypt(const Ciphertext& c) const;
  // Same distribution as PublicKey::Encrypt, several times faster via CRT.
  Ciphertext Encrypt(const mpz_class& m, RandomSource& rng) const;

 private:
  struct Crt;
  PublicKey pub_;
  mpz_class lambda_;
  mpz_class mu_;
  std::shared_ptr<const Crt> crt_;
};

// Encrypts with noise h^a, h = r^N for a secret unit r and a is a random
// 256-bit exponent, using fixed-base comb tables so that each encryption
// costs a few dozen modular multiplications. Copies share the tables.
class Encryptor {
 public:
  static constexpr int kExponentBits = 256;

  Encryptor() = default;
  Encryptor(const PublicKey& key, RandomSource& rng);

  const PublicKey& key() const { return key_; }
  Ciphertext Encrypt(const mpz_class& m, RandomSource& rng) const;
  Ciphertext EncryptZero(RandomSource& rng) const;

 private:
  mpz_class Noise(RandomSource& rng) const;

  PublicKey key_;
  std::shared_ptr<const std::vector<mpz_class>> table_;
};

struct KeyPair {
  PublicKey public_key;
  PrivateKey private_key;
};

// bits must be 512, 1024 or 2048. Primes pass 40 Miller-Rabin rounds.
KeyPair GenerateKeyPair(int bits, RandomSource& rng);

// {n, g, bits} and {n, g, lambda, mu, bits} with decimal integer strings.
std::string PublicKeyToJson(const PublicKey& key);
PublicKey PublicKeyFromJson(std::string_view text);
std::string PrivateKeyToJson(const PrivateKey& key);
PrivateKey PrivateKeyFromJson(std::string_view text);
// Decimal text of the ciphertext value plus its key id.
std::string CiphertextToJson(const Ciphertext& c);
Ciphertext CiphertextFromJson(std::string_view text);

}  // namespace fedboost::crypto

#endif  // FEDBOOST_CRYPTO_PAILLIER_H_
