#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "field.hpp"

namespace frobmodel {

enum class Parity { even, odd };

using Weight = std::vector<long long>;

struct VariableDescriptor {
  std::string id;
  Parity parity = Parity::even;
  int coh_degree = 2;
  Weight weight;
};

using Exps = std::vector<u32>;

// ambient graded-commutative ring over F_p; variable order is the index order
class Ring {
 public:
  Ring(u32 p, std::vector<VariableDescriptor> vars, size_t weight_dim) : f_{p}, vars_(std::move(vars)), wdim_(weight_dim) {
    require_odd_prime(p);
    for (size_t i = 0; i < vars_.size(); ++i) {
      const auto& v = vars_[i];
      bool odd = v.parity == Parity::odd;
      require(v.coh_degree > 0 && (v.coh_degree % 2 == 1) == odd, ErrorCode::domain,
              "variable " + v.id + ": parity and degree disagree");
      require(v.weight.size() == wdim_, ErrorCode::domain, "variable " + v.id + ": weight dimension");
      require(index_.emplace(v.id, i).second, ErrorCode::domain, "duplicate variable " + v.id);
      if (odd) has_odd_ = true;
    }
  }

  u32 p() const { return f_.p; }
  const Fp& field() const { return f_; }
  size_t size() const { return vars_.size(); }
  size_t weight_dim() const { return wdim_; }
  const VariableDescriptor& var(size_t i) const { return vars_[i]; }
  const std::vector<VariableDescriptor>& vars() const { return vars_; }
  bool odd(size_t i) const { return vars_[i].parity == Parity::odd; }
  bool has_odd() const { return has_odd_; }
  size_t index(const std::string& id) const {
    auto it = index_.find(id);
    require(it != index_.end(), ErrorCode::domain, "unknown variable " + id);
    return it->second;
  }
  bool contains(const std::string& id) const { return index_.count(id) > 0; }

  long long degree(const Exps& e) const {
    long long d = 0;
    for (size_t i = 0; i < e.size(); ++i) d += static_cast<long long>(e[i]) * vars_[i].coh_degree;
    return d;
  }
  Weight weight(const Exps& e) const {
    Weight w(wdim_, 0);
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i])
        for (size_t k = 0; k < wdim_; ++k) w[k] += static_cast<long long>(e[i]) * vars_[i].weight[k];
    return w;
  }
  // degree-weighted degrevlex; true when a > b
  bool greater(const Exps& a, const Exps& b) const {
    long long da = degree(a), db = degree(b);
    if (da != db) return da > db;
    for (size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }

 private:
  Fp f_;
  std::vector<VariableDescriptor> vars_;
  size_t wdim_;
  std::unordered_map<std::string, size_t> index_;
  bool has_odd_ = false;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(u32 p, std::vector<VariableDescriptor> vars, size_t weight_dim) {
  return std::make_shared<const Ring>(p, std::move(vars), weight_dim);
}

// sign of m1*m2 after sorting odd factors; 0 if an odd variable repeats
inline int koszul_sign(const Ring& R, const Exps& a, const Exps& b) {
  int swaps = 0, odd_in_a_after = 0;
  for (size_t i = a.size(); i-- > 0;) {
    if (!R.odd(i)) continue;
    if (b[i]) {
      if (a[i]) return 0;
      swaps += odd_in_a_after;
    }
    if (a[i]) ++odd_in_a_after;
  }
  return swaps % 2 ? -1 : 1;
}

struct Term {
  Exps e;
  u32 c;
};

class Poly {
 public:
  Poly() = default;
  explicit Poly(RingPtr R) : R_(std::move(R)) {}

  static Poly constant(RingPtr R, long long c) {
    Poly f(R);
    u32 v = R->field().from_int(c);
    if (v) f.t_.push_back({Exps(R->size(), 0), v});
    return f;
  }
  static Poly variable(RingPtr R, size_t i) {
    Poly f(R);
    Exps e(R->size(), 0);
    e[i] = 1;
    f.t_.push_back({e, 1});
    return f;
  }
  static Poly variable(RingPtr R, const std::string& id) { return variable(R, R->index(id)); }
  static Poly monomial(RingPtr R, const Exps& e, long long c = 1) {
    Poly f(R);
    for (size_t i = 0; i < e.size(); ++i)
      if (R->odd(i) && e[i] > 1) return f;
    u32 v = R->field().from_int(c);
    if (v) f.t_.push_back({e, v});
    return f;
  }
  // terms in any order, canonicalized here
  static Poly from_terms(RingPtr R, std::vector<Term> terms) {
    Poly f(R);
    f.t_ = std::move(terms);
    f.canonicalize();
    return f;
  }

  const RingPtr& ring() const { return R_; }
  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }
  const Term& leading() const {
    require(!t_.empty(), ErrorCode::domain, "leading term of zero");
    return t_.front();
  }

  bool operator==(const Poly& o) const {
    if (t_.size() != o.t_.size()) return false;
    for (size_t i = 0; i < t_.size(); ++i)
      if (t_[i].c != o.t_[i].c || t_[i].e != o.t_[i].e) return false;
    return true;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly operator+(const Poly& o) const { return combine(o, false); }
  Poly operator-(const Poly& o) const { return combine(o, true); }
  Poly operator-() const {
    Poly f = *this;
    for (auto& t : f.t_) t.c = R_->field().neg(t.c);
    return f;
  }
  Poly scale(long long c) const { return scale_fp(R_->field().from_int(c)); }
  Poly scale_fp(u32 c) const {
    Poly f(R_);
    if (!c) return f;
    f.t_ = t_;
    for (auto& t : f.t_) t.c = R_->field().mul(t.c, c);
    return f;
  }

  Poly operator*(const Poly& o) const {
    same_ring(o);
    const Ring& R = *R_;
    std::map<Exps, u32> acc;
    Exps e(R.size());
    for (const auto& a : t_)
      for (const auto& b : o.t_) {
        int s = koszul_sign(R, a.e, b.e);
        if (!s) continue;
        for (size_t i = 0; i < e.size(); ++i) e[i] = a.e[i] + b.e[i];
        u32 c = R.field().mul(a.c, b.c);
        if (s < 0) c = R.field().neg(c);
        u32& slot = acc[e];
        slot = R.field().add(slot, c);
      }
    Poly f(R_);
    for (auto& [k, v] : acc)
      if (v) f.t_.push_back({k, v});
    f.sort_terms();
    return f;
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly pow(u64 n) const {
    Poly r = constant(R_, 1), b = *this;
    while (n) {
      if (n & 1) r = r * b;
      n >>= 1;
      if (n) b = b * b;
    }
    return r;
  }
  // p-th power; on the even subring this is the additive Frobenius
  Poly frobenius() const { return pow(R_->p()); }

  bool has_odd() const {
    for (const auto& t : t_)
      for (size_t i = 0; i < t.e.size(); ++i)
        if (t.e[i] && R_->odd(i)) return true;
    return false;
  }
  bool is_homogeneous() const {
    for (const auto& t : t_)
      if (R_->degree(t.e) != R_->degree(t_.front().e) || R_->weight(t.e) != R_->weight(t_.front().e)) return false;
    return true;
  }
  // degree of a homogeneous polynomial (0 for zero)
  long long degree() const { return t_.empty() ? 0 : R_->degree(t_.front().e); }
  Weight weight() const { return t_.empty() ? Weight(R_->weight_dim(), 0) : R_->weight(t_.front().e); }

  std::string str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : t_) {
      long long c = R_->field().signed_value(t.c);
      bool unit = true;
      for (u32 x : t.e) unit = unit && x == 0;
      if (c < 0) os << (first ? "-" : " - ");
      else if (!first) os << " + ";
      long long a = c < 0 ? -c : c;
      if (a != 1 || unit) os << a;
      bool need_star = a != 1;
      for (size_t i = 0; i < t.e.size(); ++i) {
        if (!t.e[i]) continue;
        if (need_star) os << "*";
        os << R_->var(i).id;
        if (t.e[i] > 1) os << "^" << t.e[i];
        need_star = true;
      }
      first = false;
    }
    return os.str();
  }

 private:
  void same_ring(const Poly& o) const {
    require(R_ && R_ == o.R_, ErrorCode::domain, "mismatched ambient rings");
  }
  Poly combine(const Poly& o, bool minus) const {
    same_ring(o);
    const Fp& F = R_->field();
    Poly f(R_);
    size_t i = 0, j = 0;
    while (i < t_.size() || j < o.t_.size()) {
      if (j == o.t_.size() || (i < t_.size() && R_->greater(t_[i].e, o.t_[j].e))) {
        f.t_.push_back(t_[i++]);
      } else if (i == t_.size() || R_->greater(o.t_[j].e, t_[i].e)) {
        f.t_.push_back({o.t_[j].e, minus ? F.neg(o.t_[j].c) : o.t_[j].c});
        ++j;
      } else {
        u32 c = minus ? F.sub(t_[i].c, o.t_[j].c) : F.add(t_[i].c, o.t_[j].c);
        if (c) f.t_.push_back({t_[i].e, c});
        ++i, ++j;
      }
    }
    return f;
  }
  void sort_terms() {
    const Ring& R = *R_;
    std::sort(t_.begin(), t_.end(), [&](const Term& a, const Term& b) { return R.greater(a.e, b.e); });
  }
  void canonicalize() {
    const Fp& F = R_->field();
    std::map<Exps, u32> acc;
    for (auto& t : t_) {
      require(t.e.size() == R_->size(), ErrorCode::domain, "exponent vector size");
      bool dead = false;
      for (size_t i = 0; i < t.e.size(); ++i) dead = dead || (R_->odd(i) && t.e[i] > 1);
      if (dead) continue;
      u32& slot = acc[t.e];
      slot = F.add(slot, t.c % F.p);
    }
    t_.clear();
    for (auto& [k, v] : acc)
      if (v) t_.push_back({k, v});
    sort_terms();
  }

  RingPtr R_;
  std::vector<Term> t_;  // descending in the ring order
};

// ring homomorphism given by images of generators; factors are multiplied in variable order
inline Poly substitute(const Poly& f, const RingPtr& target, const std::vector<Poly>& images) {
  const Ring& S = *f.ring();
  require(images.size() == S.size(), ErrorCode::domain, "substitution needs one image per variable");
  Poly out(target);
  std::map<std::pair<size_t, u32>, Poly> cache;
  for (const auto& t : f.terms()) {
    Poly m = Poly::constant(target, 1).scale_fp(t.c);
    for (size_t i = 0; i < t.e.size() && !m.is_zero(); ++i) {
      if (!t.e[i]) continue;
      auto key = std::make_pair(i, t.e[i]);
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, images[i].pow(t.e[i])).first;
      m = m * it->second;
    }
    out += m;
  }
  return out;
}

struct IdealPresentation {
  RingPtr ring;
  std::vector<Poly> relations;

  IdealPresentation() = default;
  IdealPresentation(RingPtr R, std::vector<Poly> rels, bool check_homogeneous = true)
      : ring(std::move(R)), relations(std::move(rels)) {
    for (const auto& f : relations) {
      require(f.ring() == ring, ErrorCode::domain, "relation lives in a different ring");
      if (check_homogeneous)
        require(f.is_homogeneous(), ErrorCode::domain, "relation not homogeneous: " + f.str());
    }
  }
};

}  // namespace frobmodel
