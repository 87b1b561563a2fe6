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

#include "fedboost/crypto/paillier.h"

#include <array>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>
#include <sodium.h>

#include "fedboost/error.h"

namespace fedboost::crypto {
namespace {

KeyId HashModulus(const mpz_class& n) {
  std::vector<std::uint8_t> bytes((mpz_sizeinbase(n.get_mpz_t(), 2) + 7) / 8);
  std::size_t count = 0;
  mpz_export(bytes.data(), &count, 1, 1, 1, 0, n.get_mpz_t());
  std::array<std::uint8_t, 8> digest{};
  crypto_generichash(digest.data(), digest.size(), bytes.data(), count, nullptr, 0);
  KeyId id = 0;
  for (std::uint8_t b : digest) id = (id << 8) | b;
  return id;
}

mpz_class PowMod(const mpz_class& base, const mpz_class& exp, const mpz_class& mod) {
  mpz_class out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return out;
}

mpz_class InvertMod(const mpz_class& a, const mpz_class& mod) {
  mpz_class out;
  if (mpz_invert(out.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()) == 0)
    throw ArgumentError("value is not invertible");
  return out;
}

mpz_class RandomUnit(const mpz_class& n, RandomSource& rng) {
  for (;;) {
    mpz_class r = rng.Below(n);
    if (r == 0) continue;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
    if (g == 1) return r;
  }
}

// (1 + m N) mod N^2, the g^m factor for g = N + 1.
mpz_class GeneratorPower(const mpz_class& m, const mpz_class& n, const mpz_class& n2) {
  mpz_class out = m * n + 1;
  mpz_mod(out.get_mpz_t(), out.get_mpz_t(), n2.get_mpz_t());
  return out;
}

mpz_class RandomPrime(unsigned bits, RandomSource& rng) {
  for (;;) {
    mpz_class c = rng.Bits(bits);
    mpz_setbit(c.get_mpz_t(), bits - 1);
    mpz_setbit(c.get_mpz_t(), bits - 2);
    mpz_setbit(c.get_mpz_t(), 0);
    mpz_nextprime(c.get_mpz_t(), c.get_mpz_t());
    if (mpz_sizeinbase(c.get_mpz_t(), 2) != bits) continue;
    if (mpz_probab_prime_p(c.get_mpz_t(), 40) == 0) continue;
    return c;
  }
}

mpz_class ParseDecimal(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string())
    throw ArgumentError(std::string("key document lacks decimal field '") + key + "'");
  mpz_class out;
  if (out.set_str(j.at(key).get<std::string>(), 10) != 0)
    throw ArgumentError(std::string("field '") + key + "' is not a decimal integer");
  return out;
}

nlohmann::json ParseJson(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ArgumentError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

PublicKey::PublicKey(mpz_class n, int bits)
    : n_(std::move(n)), n2_(n_ * n_), bits_(bits), key_id_(HashModulus(n_)) {}

void PublicKey::CheckOwned(const Ciphertext& c) const {
  if (c.key_id != key_id_) throw KeyError("ciphertext belongs to a different key");
  if (c.value <= 0 || c.value >= n2_) throw KeyError("ciphertext outside [1, N^2)");
}

Ciphertext PublicKey::Encrypt(const mpz_class& m, RandomSource& rng) const {
  if (m < 0 || m >= n_) throw ArgumentError("plaintext outside [0, N)");
  const mpz_class r = RandomUnit(n_, rng);
  mpz_class c = GeneratorPower(m, n_, n2_) * PowMod(r, n_, n2_);
  mpz_mod(c.get_mpz_t(), c.get_mpz_t(), n2_.get_mpz_t());
  return {std::move(c), key_id_};
}

Ciphertext PublicKey::EncryptZero(RandomSource& rng) const {
  return {PowMod(RandomUnit(n_, rng), n_, n2_), key_id_};
}

Ciphertext PublicKey::Add(const Ciphertext& a, const Ciphertext& b) const {
  Ciphertext out = a;
  AddInPlace(out, b);
  return out;
}

void PublicKey::AddInPlace(Ciphertext& acc, const Ciphertext& b) const {
  CheckOwned(acc);
  CheckOwned(b);
  acc.value *= b.value;
  mpz_mod(acc.value.get_mpz_t(), acc.value.get_mpz_t(), n2_.get_mpz_t());
}

Ciphertext PublicKey::AddPlain(const Ciphertext& c, const mpz_class& m) const {
  CheckOwned(c);
  if (m < 0 || m >= n_) throw ArgumentError("plaintext outside [0, N)");
  mpz_class v = c.value * GeneratorPower(m, n_, n2_);
  mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n2_.get_mpz_t());
  return {std::move(v), key_id_};
}

struct PrivateKey::Crt {
  mpz_class p, q, p2, q2;
  mpz_class p_order, q_order;  // p(p-1), q(q-1): orders of the unit groups
  mpz_class p2_inv_q2;         // (p^2)^-1 mod q^2
  mpz_class hp, hq;            // decryption constants
  mpz_class p_inv_q;           // p^-1 mod q
};

PrivateKey::PrivateKey(PublicKey pub, mpz_class lambda, mpz_class mu)
    : pub_(std::move(pub)), lambda_(std::move(lambda)), mu_(std::move(mu)) {}

PrivateKey::PrivateKey(PublicKey pub, mpz_class lambda, mpz_class mu,
                       mpz_class p, mpz_class q)
    : PrivateKey(std::move(pub), std::move(lambda), std::move(mu)) {
  if (p * q != pub_.n()) throw ArgumentError("p * q does not match the modulus");
  auto crt = std::make_shared<Crt>();
  crt->p = std::move(p);
  crt->q = std::move(q);
  crt->p2 = crt->p * crt->p;
  crt->q2 = crt->q * crt->q;
  crt->p_order = crt->p * (crt->p - 1);
  crt->q_order = crt->q * (crt->q - 1);
  crt->p2_inv_q2 = InvertMod(crt->p2, crt->q2);
  crt->p_inv_q = InvertMod(crt->p, crt->q);
  const mpz_class g = pub_.g();
  // h_p = L_p(g^(p-1) mod p^2)^-1 mod p, with L_p(x) = (x - 1) / p.
  const mpz_class lp = (PowMod(g, crt->p - 1, crt->p2) - 1) / crt->p;
  const mpz_class lq = (PowMod(g, crt->q - 1, crt->q2) - 1) / crt->q;
  crt->hp = InvertMod(lp, crt->p);
  crt->hq = InvertMod(lq, crt->q);
  crt_ = std::move(crt);
}

mpz_class PrivateKey::Decrypt(const Ciphertext& c) const {
  pub_.CheckOwned(c);
  const mpz_class& n = pub_.n();
  if (!crt_) {
    const mpz_class x = PowMod(c.value, lambda_, pub_.n_squared());
    mpz_class m = ((x - 1) / n) * mu_;
    mpz_mod(m.get_mpz_t(), m.get_mpz_t(), n.get_mpz_t());
    return m;
  }
  const Crt& k = *crt_;
  mpz_class mp = (PowMod(c.value, k.p - 1, k.p2) - 1) / k.p * k.hp;
  mpz_mod(mp.get_mpz_t(), mp.get_mpz_t(), k.p.get_mpz_t());
  mpz_class mq = (PowMod(c.value, k.q - 1, k.q2) - 1) / k.q * k.hq;
  mpz_mod(mq.get_mpz_t(), mq.get_mpz_t(), k.q.get_mpz_t());
  // Garner recombination.
  mpz_class t = (mq - mp) * k.p_inv_q;
  mpz_mod(t.get_mpz_t(), t.get_mpz_t(), k.q.get_mpz_t());
  return mp + t * k.p;
}

Ciphertext PrivateKey::Encrypt(const mpz_class& m, RandomSource& rng) const {
  if (!crt_) return pub_.Encrypt(m, rng);
  const mpz_class& n = pub_.n();
  if (m < 0 || m >= n) throw ArgumentError("plaintext outside [0, N)");
  const Crt& k = *crt_;
  const mpz_class r = RandomUnit(n, rng);
  const mpz_class ap = PowMod(r, n % k.p_order, k.p2);
  const mpz_class aq = PowMod(r, n % k.q_order, k.q2);
  mpz_class t = (aq - ap) * k.p2_inv_q2;
  mpz_mod(t.get_mpz_t(), t.get_mpz_t(), k.q2.get_mpz_t());
  mpz_class c = (ap + t * k.p2) * GeneratorPower(m, n, pub_.n_squared());
  mpz_mod(c.get_mpz_t(), c.get_mpz_t(), pub_.n_squared().get_mpz_t());
  return {std::move(c), pub_.key_id()};
}

namespace {
constexpr int kWindowBits = 8;
constexpr int kWindowSize = 1 << kWindowBits;
constexpr int kWindows = Encryptor::kExponentBits / kWindowBits;
}  // namespace

Encryptor::Encryptor(const PublicKey& key, RandomSource& rng) : key_(key) {
  const mpz_class& n2 = key_.n_squared();
  auto table = std::make_shared<std::vector<mpz_class>>(kWindows * kWindowSize);
  // table[i][v] = h^(v * 2^(8 i))
  mpz_class base = PowMod(RandomUnit(key_.n(), rng), key_.n(), n2);
  for (int i = 0; i < kWindows; ++i) {
    mpz_class* row = table->data() + i * kWindowSize;
    row[0] = 1;
    row[1] = base;
    for (int v = 2; v < kWindowSize; ++v) {
      mpz_mul(row[v].get_mpz_t(), row[v - 1].get_mpz_t(), base.get_mpz_t());
      mpz_mod(row[v].get_mpz_t(), row[v].get_mpz_t(), n2.get_mpz_t());
    }
    mpz_mul(base.get_mpz_t(), row[kWindowSize - 1].get_mpz_t(), base.get_mpz_t());
    mpz_mod(base.get_mpz_t(), base.get_mpz_t(), n2.get_mpz_t());
  }
  table_ = std::move(table);
}

mpz_class Encryptor::Noise(RandomSource& rng) const {
  if (!table_) throw ArgumentError("encryptor has no key");
  std::array<std::uint8_t, kWindows> digits{};
  rng.Fill(digits);
  const mpz_class& n2 = key_.n_squared();
  mpz_class out = 1;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] == 0) continue;
    const mpz_class& f = (*table_)[i * kWindowSize + digits[i]];
    mpz_mul(out.get_mpz_t(), out.get_mpz_t(), f.get_mpz_t());
    mpz_mod(out.get_mpz_t(), out.get_mpz_t(), n2.get_mpz_t());
  }
  return out;
}

Ciphertext Encryptor::Encrypt(const mpz_class& m, RandomSource& rng) const {
  const mpz_class& n = key_.n();
  if (m < 0 || m >= n) throw ArgumentError("plaintext outside [0, N)");
  mpz_class c = GeneratorPower(m, n, key_.n_squared()) * Noise(rng);
  mpz_mod(c.get_mpz_t(), c.get_mpz_t(), key_.n_squared().get_mpz_t());
  return {std::move(c), key_.key_id()};
}

Ciphertext Encryptor::EncryptZero(RandomSource& rng) const {
  return {Noise(rng), key_.key_id()};
}

KeyPair GenerateKeyPair(int bits, RandomSource& rng) {
  if (bits != 512 && bits != 1024 && bits != 2048)
    throw ArgumentError("unsupported Paillier key size " + std::to_string(bits));
  const auto half = static_cast<unsigned>(bits / 2);
  for (;;) {
    mpz_class p = RandomPrime(half, rng);
    mpz_class q = RandomPrime(half, rng);
    if (p == q) continue;
    mpz_class n = p * q;
    if (mpz_sizeinbase(n.get_mpz_t(), 2) != static_cast<std::size_t>(bits)) continue;
    mpz_class lambda;
    const mpz_class pm1 = p - 1;
    const mpz_class qm1 = q - 1;
    mpz_lcm(lambda.get_mpz_t(), pm1.get_mpz_t(), qm1.get_mpz_t());
    PublicKey pub(n, bits);
    // With g = N + 1, L(g^lambda mod N^2) = lambda mod N.
    const mpz_class mu = InvertMod(lambda % n, n);
    PrivateKey priv(pub, lambda, mu, std::move(p), std::move(q));
    return {std::move(pub), std::move(priv)};
  }
}

std::string PublicKeyToJson(const PublicKey& key) {
  return nlohmann::json{{"n", key.n().get_str()},
                        {"g", key.g().get_str()},
                        {"bits", key.bits()}}
      .dump();
}

PublicKey PublicKeyFromJson(std::string_view text) {
  const auto j = ParseJson(text);
  mpz_class n = ParseDecimal(j, "n");
  if (ParseDecimal(j, "g") != n + 1) throw ArgumentError("only g = n + 1 is supported");
  if (!j.contains("bits") || !j.at("bits").is_number_integer())
    throw ArgumentError("key document lacks integer field 'bits'");
  return PublicKey(std::move(n), j.at("bits").get<int>());
}

std::string PrivateKeyToJson(const PrivateKey& key) {
  const PublicKey& pub = key.public_key();
  return nlohmann::json{{"n", pub.n().get_str()},
                        {"g", pub.g().get_str()},
                        {"lambda", key.lambda().get_str()},
                        {"mu", key.mu().get_str()},
                        {"bits", pub.bits()}}
      .dump();
}

PrivateKey PrivateKeyFromJson(std::string_view text) {
  const auto j = ParseJson(text);
  PublicKey pub = PublicKeyFromJson(text);
  return PrivateKey(std::move(pub), ParseDecimal(j, "lambda"), ParseDecimal(j, "mu"));
}

std::string CiphertextToJson(const Ciphertext& c) {
  return nlohmann::json{{"value", c.value.get_str()}, {"key_id", c.key_id}}.dump();
}

Ciphertext CiphertextFromJson(std::string_view text) {
  const auto j = ParseJson(text);
  if (!j.contains("key_id") || !j.at("key_id").is_number_unsigned())
    throw ArgumentError("ciphertext lacks 'key_id'");
  return {ParseDecimal(j, "value"), j.at("key_id").get<KeyId>()};
}

}  // namespace fedboost::crypto
