#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "poly.hpp"

namespace frobmodel {

inline u64 default_point_budget() {
  if (const char* env = std::getenv("FROBMODEL_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    require(end && *end == '\0' && v > 0, ErrorCode::config, "FROBMODEL_BUDGET must be a positive integer");
    return v;
  }
  return 10000000ULL;
}

struct PointCountOptions {
  u64 budget = 0;  // 0: default_point_budget()
  unsigned threads = 0;  // 0: hardware concurrency
};

namespace detail {

inline u64 checked_power(u64 q, size_t n, u64 budget) {
  u64 total = 1;
  for (size_t i = 0; i < n; ++i) {
    require(total <= budget / q, ErrorCode::resource,
            "point enumeration of " + std::to_string(q) + "^" + std::to_string(n) + " exceeds the budget " +
                std::to_string(budget));
    total *= q;
  }
  return total;
}

}  // namespace detail

// relations compiled for evaluation over GF(q)
class CompiledSystem {
 public:
  CompiledSystem(const RingPtr& R, const std::vector<Poly>& relations, const GaloisField& F) : F_(&F), n_(R->size()) {
    require(!R->has_odd(), ErrorCode::domain, "point counting needs an even ring");
    require(F.characteristic() == R->p(), ErrorCode::config,
            "q = " + std::to_string(F.q()) + " has characteristic different from p = " + std::to_string(R->p()));
    for (const auto& f : relations) {
      require(f.ring() == R, ErrorCode::domain, "relation lives in a different ring");
      if (f.is_zero()) continue;
      std::vector<Term_> cp;
      for (const auto& t : f.terms()) {
        Term_ ct{F.embed(t.c), {}};
        for (size_t i = 0; i < n_; ++i)
          if (t.e[i]) ct.factors.emplace_back(static_cast<u32>(i), t.e[i]);
        cp.push_back(std::move(ct));
      }
      sys_.push_back(std::move(cp));
    }
  }

  size_t variables() const { return n_; }
  bool vanishes(const std::vector<u32>& x) const {
    const GaloisField& F = *F_;
    for (const auto& cp : sys_) {
      u32 s = 0;
      for (const auto& ct : cp) {
        u32 v = ct.coeff;
        for (auto [i, e] : ct.factors) {
          v = F.mul(v, e == 1 ? x[i] : F.pow(x[i], e));
          if (!v) break;
        }
        s = F.add(s, v);
      }
      if (s) return false;
    }
    return true;
  }

 private:
  struct Term_ {
    u32 coeff;
    std::vector<std::pair<u32, u32>> factors;  // (variable, exponent)
  };
  const GaloisField* F_;
  size_t n_;
  std::vector<std::vector<Term_>> sys_;
};

// number of F_q-points of the zero set of the relations (even variables only)
inline u64 count_points(const RingPtr& R, const std::vector<Poly>& relations, u64 q, PointCountOptions opt = {}) {
  GaloisField F(q);
  CompiledSystem sys(R, relations, F);
  u64 budget = opt.budget ? opt.budget : default_point_budget();
  size_t n = R->size();
  u64 total = detail::checked_power(q, n, budget);
  if (n == 0) return sys.vanishes({}) ? 1 : 0;

  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<u64>(threads, q));
  u64 per_first = total / q;
  std::vector<u64> partial(threads, 0);
  auto worker = [&](unsigned w) {
    std::vector<u32> x(n, 0);
    for (u32 first = w; first < q; first += threads) {
      x.assign(n, 0);
      x[0] = first;
      u64 local = 0;
      for (u64 step = 0; step < per_first; ++step) {
        if (sys.vanishes(x)) ++local;
        for (size_t i = n; i-- > 1;) {
          if (++x[i] < q) break;
          x[i] = 0;
        }
      }
      partial[w] += local;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < threads; ++w) pool.emplace_back(worker, w);
  worker(0);
  for (auto& t : pool) t.join();
  u64 sum = 0;
  for (u64 v : partial) sum += v;
  return sum;
}

// visit every F_q-point, single threaded, in lexicographic order
inline void for_each_point(const RingPtr& R, const std::vector<Poly>& relations, const GaloisField& F,
                           const std::function<void(const std::vector<u32>&)>& visit, u64 budget = 0) {
  CompiledSystem sys(R, relations, F);
  size_t n = R->size();
  u64 total = detail::checked_power(F.q(), n, budget ? budget : default_point_budget());
  std::vector<u32> x(n, 0);
  for (u64 step = 0; step < total; ++step) {
    if (sys.vanishes(x)) visit(x);
    for (size_t i = n; i-- > 0;) {
      if (++x[i] < F.q()) break;
      x[i] = 0;
    }
  }
}

inline u64 count_points(const IdealPresentation& I, u64 q, PointCountOptions opt = {}) {
  return count_points(I.ring, I.relations, q, opt);
}

}  // namespace frobmodel
