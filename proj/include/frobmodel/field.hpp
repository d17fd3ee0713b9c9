#pragma once

#include <cstdint>
#include <vector>

#include "error.hpp"

namespace frobmodel {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline void require_odd_prime(u64 p) {
  require(is_prime(p) && p != 2, ErrorCode::config, "p must be an odd prime, got " + std::to_string(p));
}

// arithmetic in F_p, elements stored in [0, p)
struct Fp {
  u32 p;

  u32 add(u32 a, u32 b) const { u32 s = a + b; return s >= p ? s - p : s; }
  u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p - b; }
  u32 neg(u32 a) const { return a == 0 ? 0 : p - a; }
  u32 mul(u32 a, u32 b) const { return static_cast<u32>(static_cast<u64>(a) * b % p); }
  u32 pow(u32 a, u64 e) const {
    u64 r = 1 % p, b = a % p;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return static_cast<u32>(r);
  }
  u32 inv(u32 a) const {
    require(a % p != 0, ErrorCode::domain, "inverse of zero in F_p");
    return pow(a, p - 2);
  }
  u32 from_int(long long v) const {
    long long m = v % static_cast<long long>(p);
    return static_cast<u32>(m < 0 ? m + p : m);
  }
  // symmetric representative, used for display
  long long signed_value(u32 a) const { return a > p / 2 ? static_cast<long long>(a) - p : a; }
};

// prime power q = p^k, returns (p, k) or throws
inline std::pair<u32, u32> split_prime_power(u64 q) {
  require(q >= 2, ErrorCode::config, "q must be a prime power");
  for (u64 p = 2; p <= q; ++p) {
    if (q % p) continue;
    require(is_prime(p), ErrorCode::config, "q must be a prime power");
    u64 t = q;
    u32 k = 0;
    while (t % p == 0) { t /= p; ++k; }
    require(t == 1, ErrorCode::config, "q must be a prime power, got " + std::to_string(q));
    return {static_cast<u32>(p), k};
  }
  fail(ErrorCode::config, "q must be a prime power");
}

// GF(p^k) with table arithmetic; element i encodes the coefficient vector of i in base p
class GaloisField {
 public:
  explicit GaloisField(u64 q) {
    auto [p, k] = split_prime_power(q);
    require(q <= 4096, ErrorCode::config, "GF(q) tables limited to q <= 4096");
    p_ = p;
    k_ = k;
    q_ = static_cast<u32>(q);
    modulus_ = find_irreducible();
    add_.assign(static_cast<size_t>(q_) * q_, 0);
    mul_.assign(static_cast<size_t>(q_) * q_, 0);
    for (u32 a = 0; a < q_; ++a)
      for (u32 b = 0; b < q_; ++b) {
        add_[a * q_ + b] = encode(vadd(decode(a), decode(b)));
        mul_[a * q_ + b] = encode(vmul(decode(a), decode(b)));
      }
  }

  u32 q() const { return q_; }
  u32 characteristic() const { return p_; }
  u32 degree() const { return k_; }
  u32 add(u32 a, u32 b) const { return add_[a * q_ + b]; }
  u32 mul(u32 a, u32 b) const { return mul_[a * q_ + b]; }
  u32 embed(u32 c) const { return c % p_; }  // prime field sits at 0..p-1
  u32 pow(u32 a, u64 e) const {
    u32 r = 1, b = a;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }

 private:
  using Vec = std::vector<u32>;

  Vec decode(u32 a) const {
    Vec v(k_);
    for (u32 i = 0; i < k_; ++i) { v[i] = a % p_; a /= p_; }
    return v;
  }
  u32 encode(const Vec& v) const {
    u32 a = 0;
    for (u32 i = k_; i-- > 0;) a = a * p_ + v[i];
    return a;
  }
  Vec vadd(const Vec& a, const Vec& b) const {
    Vec r(k_);
    for (u32 i = 0; i < k_; ++i) r[i] = (a[i] + b[i]) % p_;
    return r;
  }
  Vec vmul(const Vec& a, const Vec& b) const {
    Vec prod(2 * k_, 0);
    for (u32 i = 0; i < k_; ++i)
      for (u32 j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
    // reduce by the monic modulus of degree k
    for (u32 d = 2 * k_; d-- > k_;) {
      u32 c = prod[d];
      if (!c) continue;
      for (u32 i = 0; i <= k_; ++i) prod[d - k_ + i] = (prod[d - k_ + i] + p_ * p_ - c * modulus_[i] % p_) % p_;
    }
    return Vec(prod.begin(), prod.begin() + k_);
  }
  // first monic irreducible of degree k, by brute force
  Vec find_irreducible() const {
    if (k_ == 1) return {0, 1};
    u32 total = 1;
    for (u32 i = 0; i < k_; ++i) total *= p_;
    for (u32 code = 0; code < total; ++code) {
      Vec f(k_ + 1);
      u32 c = code;
      for (u32 i = 0; i < k_; ++i) { f[i] = c % p_; c /= p_; }
      f[k_] = 1;
      if (irreducible(f)) return f;
    }
    fail(ErrorCode::internal, "no irreducible polynomial found");
  }
  // trial division by every monic polynomial of degree 1..k/2
  bool irreducible(const Vec& f) const {
    for (u32 d = 1; 2 * d <= k_; ++d) {
      u32 total = 1;
      for (u32 i = 0; i < d; ++i) total *= p_;
      for (u32 code = 0; code < total; ++code) {
        Vec g(d + 1);
        u32 c = code;
        for (u32 i = 0; i < d; ++i) { g[i] = c % p_; c /= p_; }
        g[d] = 1;
        Vec r = f;
        for (u32 e = static_cast<u32>(r.size()); e-- > d;) {
          u32 lc = r[e];
          if (!lc) continue;
          for (u32 i = 0; i <= d; ++i) r[e - d + i] = (r[e - d + i] + p_ * p_ - lc * g[i] % p_) % p_;
        }
        bool zero = true;
        for (u32 i = 0; i < d; ++i) zero = zero && r[i] == 0;
        if (zero) return false;
      }
    }
    return true;
  }

  u32 p_ = 0, k_ = 0, q_ = 0;
  Vec modulus_;
  std::vector<u32> add_, mul_;
};

}  // namespace frobmodel
