#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "field.hpp"

namespace frobmodel {

// coefficient vector over the simple roots
struct Root {
  std::vector<int> c;

  int height() const {
    int h = 0;
    for (int x : c) h += x;
    return h;
  }
  Root operator+(const Root& o) const {
    Root r = *this;
    for (size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
    return r;
  }
  Root operator-(const Root& o) const {
    Root r = *this;
    for (size_t i = 0; i < c.size(); ++i) r.c[i] -= o.c[i];
    return r;
  }
  bool operator==(const Root& o) const { return c == o.c; }
  bool operator!=(const Root& o) const { return c != o.c; }
  // colex: compare from the last simple root; respects addition
  bool operator<(const Root& o) const {
    for (size_t i = c.size(); i-- > 0;)
      if (c[i] != o.c[i]) return c[i] < o.c[i];
    return false;
  }
};

inline Root simple_root(int rank, int i) {
  Root r{std::vector<int>(rank, 0)};
  r.c[i] = 1;
  return r;
}

inline std::string root_label(const Root& r) {
  std::string s;
  for (size_t i = 0; i < r.c.size(); ++i) {
    if (!r.c[i]) continue;
    if (!s.empty()) s += "+";
    if (r.c[i] != 1) s += std::to_string(r.c[i]);
    s += "a" + std::to_string(i + 1);
  }
  return s.empty() ? "0" : s;
}

struct RootSystemData {
  char family = 'A';
  int rank = 0;
  std::vector<std::string> simple_roots;
  std::vector<Root> positive_roots;  // sorted
  std::vector<std::vector<int>> cartan;  // cartan[i][j] = <a_i^vee, a_j>

  bool is_root(const Root& r) const { return std::binary_search(positive_roots.begin(), positive_roots.end(), r); }
  size_t index_of(const Root& r) const {
    auto it = std::lower_bound(positive_roots.begin(), positive_roots.end(), r);
    require(it != positive_roots.end() && *it == r, ErrorCode::domain, "not a positive root: " + root_label(r));
    return static_cast<size_t>(it - positive_roots.begin());
  }
};

inline long long classical_root_count(char family, int n) {
  switch (family) {
    case 'A': return 1LL * n * (n + 1) / 2;
    case 'B':
    case 'C': return 1LL * n * n;
    case 'D': return 1LL * n * n - n;
  }
  return -1;
}

namespace detail {

// simple roots in epsilon coordinates, doubled so every inner product is an integer
inline std::vector<std::vector<int>> epsilon_simple_roots(char family, int n) {
  std::vector<std::vector<int>> s;
  int dim = family == 'A' ? n + 1 : n;
  auto e = [&](int i, int j, int si, int sj) {
    std::vector<int> v(dim, 0);
    v[i] += si;
    if (j >= 0) v[j] += sj;
    return v;
  };
  for (int i = 0; i + 1 < (family == 'A' ? n + 1 : n); ++i) s.push_back(e(i, i + 1, 1, -1));
  if (family == 'B') s.push_back(e(n - 1, -1, 1, 0));
  if (family == 'C') s.push_back(e(n - 1, -1, 2, 0));
  if (family == 'D') s.push_back(e(n - 2, n - 1, 1, 1));
  return s;
}

inline int dot(const std::vector<int>& a, const std::vector<int>& b) {
  int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace detail

inline RootSystemData build_root_system(char family, int rank) {
  bool ok = (family == 'A' && rank >= 1) || ((family == 'B' || family == 'C') && rank >= 2) ||
            (family == 'D' && rank >= 4);
  require(ok, ErrorCode::config, std::string("unsupported root system ") + family + std::to_string(rank));
  require(rank <= 40, ErrorCode::config, "rank too large");
  RootSystemData sys;
  sys.family = family;
  sys.rank = rank;
  for (int i = 0; i < rank; ++i) sys.simple_roots.push_back("a" + std::to_string(i + 1));

  auto eps = detail::epsilon_simple_roots(family, rank);
  sys.cartan.assign(rank, std::vector<int>(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) sys.cartan[i][j] = 2 * detail::dot(eps[i], eps[j]) / detail::dot(eps[i], eps[i]);

  // root strings: b + a_i is a root iff q - <a_i^vee, b> > 0, q = length of the downward string
  std::set<Root> found;
  std::vector<Root> layer;
  for (int i = 0; i < rank; ++i) {
    layer.push_back(simple_root(rank, i));
    found.insert(layer.back());
  }
  while (!layer.empty()) {
    std::set<Root> next;
    for (const Root& b : layer)
      for (int i = 0; i < rank; ++i) {
        Root ai = simple_root(rank, i);
        int q = 0;
        Root down = b - ai;
        while (found.count(down)) { ++q; down = down - ai; }
        int pairing = 0;
        for (int j = 0; j < rank; ++j) pairing += b.c[j] * sys.cartan[i][j];
        if (q - pairing > 0) {
          Root up = b + ai;
          if (!found.count(up)) next.insert(up);
        }
      }
    layer.assign(next.begin(), next.end());
    found.insert(next.begin(), next.end());
  }
  sys.positive_roots.assign(found.begin(), found.end());
  require(static_cast<long long>(sys.positive_roots.size()) == classical_root_count(family, rank), ErrorCode::internal,
          "positive root count mismatch");
  return sys;
}

struct LevelClass {
  int height = 0;
  int level = 0;
  Root shape;
};

class ParabolicContext {
 public:
  ParabolicContext() = default;
  ParabolicContext(RootSystemData sys, std::vector<int> J) : sys_(std::move(sys)), inJ_(sys_.rank, false) {
    for (int j : J) {
      require(j >= 0 && j < sys_.rank, ErrorCode::config, "J label out of range");
      inJ_[j] = true;
    }
    for (const Root& r : sys_.positive_roots)
      if (level(r) >= 1) roots_.push_back(r);
  }

  const RootSystemData& system() const { return sys_; }
  const std::vector<bool>& J() const { return inJ_; }
  std::vector<int> J_indices() const {
    std::vector<int> out;
    for (int i = 0; i < sys_.rank; ++i)
      if (inJ_[i]) out.push_back(i);
    return out;
  }
  int rank() const { return sys_.rank; }

  int level(const Root& r) const {
    int l = 0;
    for (int i = 0; i < sys_.rank; ++i)
      if (!inJ_[i]) l += r.c[i];
    return l;
  }
  Root shape(const Root& r) const {
    Root s = r;
    for (int i = 0; i < sys_.rank; ++i)
      if (inJ_[i]) s.c[i] = 0;
    return s;
  }
  // roots of the unipotent radical, Sigma+ minus Sigma_J+
  const std::vector<Root>& roots() const { return roots_; }
  bool in_radical(const Root& r) const { return std::binary_search(roots_.begin(), roots_.end(), r); }
  int max_level() const {
    int m = 0;
    for (const Root& r : roots_) m = std::max(m, level(r));
    return m;
  }

  LevelClass classify_root(const Root& b) const {
    require(static_cast<int>(b.c.size()) == sys_.rank && sys_.is_root(b), ErrorCode::domain,
            "not a positive root: " + root_label(b));
    require(level(b) >= 1, ErrorCode::domain, "root lies in the Levi part: " + root_label(b));
    return {b.height(), level(b), shape(b)};
  }

  std::vector<Root> gamma_roots(int v) const {
    std::vector<Root> out;
    for (const Root& r : roots_)
      if (level(r) >= v) out.push_back(r);
    return out;
  }
  std::vector<Root> roots_of_level(int v) const {
    std::vector<Root> out;
    for (const Root& r : roots_)
      if (level(r) == v) out.push_back(r);
    return out;
  }

  std::vector<std::pair<Root, Root>> summand_pairs(const Root& b) const {
    classify_root(b);
    std::vector<std::pair<Root, Root>> out;
    for (const Root& a : roots_) {
      if (!(a < b)) break;
      Root rest = b - a;
      if (a < rest && in_radical(rest)) out.emplace_back(a, rest);
    }
    return out;
  }

 private:
  RootSystemData sys_;
  std::vector<bool> inJ_;
  std::vector<Root> roots_;
};

// accepts "a1,a3", "1,3" or ""
inline std::vector<int> parse_J(const std::string& s, int rank) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (tok.empty()) continue;
    if (tok[0] == 'a' || tok[0] == 'A') tok = tok.substr(1);
    int v = 0;
    try {
      size_t used = 0;
      v = std::stoi(tok, &used);
      require(used == tok.size(), ErrorCode::config, "bad J label: " + tok);
    } catch (const std::logic_error&) {
      fail(ErrorCode::config, "bad J label: " + tok);
    }
    require(v >= 1 && v <= rank, ErrorCode::config, "J label out of range: " + tok);
    out.push_back(v - 1);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct PairingWitness {
  Root beta;
  std::vector<std::pair<Root, Root>> pairs;  // p disjoint decompositions
};

struct PairingReport {
  bool holds = true;
  std::map<Root, bool> per_root;  // level-2 root -> hypothesis holds at that root
  std::vector<PairingWitness> witnesses;
};

// distinct pairs with the same sum never share a root, so 2p distinct roots exist iff #pairs >= p
inline PairingReport check_pairing_hypothesis(const ParabolicContext& ctx, unsigned p) {
  require_odd_prime(p);
  PairingReport rep;
  for (const Root& b : ctx.roots_of_level(2)) {
    auto pairs = ctx.summand_pairs(b);
    bool ok = pairs.size() < p;
    rep.per_root[b] = ok;
    if (!ok) {
      rep.holds = false;
      pairs.resize(p);
      rep.witnesses.push_back({b, pairs});
    }
  }
  return rep;
}

}  // namespace frobmodel
