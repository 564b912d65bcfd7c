// Perfect and near-perfect matchings of complete graphs: enumeration, cycle
// types against a base matching, spheres, the symmetric-group action, and
// canonical t-intersecting families.
#pragma once

#include "zs/numbers.hpp"
#include "zs/partition.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace zs {

// Fixed-point-free involution on vertices 1..2n, stored as a partner array
// (index 0 unused).
class PerfectMatching {
 public:
  static PerfectMatching from_partner(std::vector<int> partner) {
    PerfectMatching m;
    partner[0] = 0;
    m.partner_ = std::move(partner);
    m.validate();
    return m;
  }

  static PerfectMatching from_pairs(const std::vector<std::pair<int, int>>& pairs) {
    std::vector<int> partner(2 * pairs.size() + 1, 0);
    for (const auto& [a, b] : pairs) {
      const int hi = static_cast<int>(partner.size()) - 1;
      if (a < 1 || a > hi || b < 1 || b > hi)
        throw domain_error("PerfectMatching: vertex out of range");
      if (partner[static_cast<std::size_t>(a)] || partner[static_cast<std::size_t>(b)])
        throw domain_error("PerfectMatching: repeated vertex");
      partner[static_cast<std::size_t>(a)] = b;
      partner[static_cast<std::size_t>(b)] = a;
    }
    return from_partner(std::move(partner));
  }

  // The base matching m* = 12|34|...|2n-1 2n.
  static PerfectMatching base(int n) {
    if (n < 1) throw domain_error("PerfectMatching::base: need n >= 1");
    std::vector<int> partner(static_cast<std::size_t>(2 * n + 1));
    for (int i = 1; i <= n; ++i) {
      partner[static_cast<std::size_t>(2 * i - 1)] = 2 * i;
      partner[static_cast<std::size_t>(2 * i)] = 2 * i - 1;
    }
    return from_partner(std::move(partner));
  }

  // "a b|c d|..." with a < b inside each pair and pairs sorted by first vertex.
  static PerfectMatching parse(const std::string& s) {
    std::vector<std::pair<int, int>> pairs;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, '|')) {
      std::istringstream pair(tok);
      int a = 0, b = 0;
      if (!(pair >> a >> b)) throw domain_error("PerfectMatching::parse: bad pair \"" + tok + "\"");
      std::string rest;
      if (pair >> rest) throw domain_error("PerfectMatching::parse: trailing token in \"" + tok + "\"");
      pairs.emplace_back(a, b);
    }
    if (pairs.empty()) throw domain_error("PerfectMatching::parse: empty serialization");
    return from_pairs(pairs);
  }

  int n() const { return static_cast<int>(partner_.size() - 1) / 2; }
  int vertex_count() const { return static_cast<int>(partner_.size() - 1); }
  int partner(int v) const { return partner_[static_cast<std::size_t>(v)]; }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int v = 1; v <= vertex_count(); ++v)
      if (v < partner(v)) out.emplace_back(v, partner(v));
    return out;
  }

  std::string str() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& [a, b] : edges()) {
      if (!first) out << '|';
      out << a << ' ' << b;
      first = false;
    }
    return out.str();
  }

  bool operator==(const PerfectMatching& o) const { return partner_ == o.partner_; }
  bool operator!=(const PerfectMatching& o) const { return partner_ != o.partner_; }
  bool operator<(const PerfectMatching& o) const { return partner_ < o.partner_; }

 private:
  PerfectMatching() = default;

  void validate() const {
    const int v2n = vertex_count();
    if (v2n < 2 || v2n % 2 != 0) throw domain_error("PerfectMatching: vertex count must be even");
    for (int v = 1; v <= v2n; ++v) {
      const int p = partner(v);
      if (p < 1 || p > v2n || p == v || partner(p) != v)
        throw domain_error("PerfectMatching: not a fixed-point-free involution");
    }
  }

  std::vector<int> partner_;
};

// Involution on 1..2n-1 with exactly one fixed point (the unmatched vertex).
class NearPerfectMatching {
 public:
  static NearPerfectMatching from_partner(std::vector<int> partner) {
    NearPerfectMatching m;
    partner[0] = 0;
    m.partner_ = std::move(partner);
    m.validate();
    return m;
  }

  static NearPerfectMatching from_pairs(const std::vector<std::pair<int, int>>& pairs,
                                        int vertices) {
    std::vector<int> partner(static_cast<std::size_t>(vertices + 1), 0);
    for (int v = 1; v <= vertices; ++v) partner[static_cast<std::size_t>(v)] = v;
    for (const auto& [a, b] : pairs) {
      if (a < 1 || a > vertices || b < 1 || b > vertices || a == b)
        throw domain_error("NearPerfectMatching: bad edge");
      if (partner[static_cast<std::size_t>(a)] != a || partner[static_cast<std::size_t>(b)] != b)
        throw domain_error("NearPerfectMatching: repeated vertex");
      partner[static_cast<std::size_t>(a)] = b;
      partner[static_cast<std::size_t>(b)] = a;
    }
    return from_partner(std::move(partner));
  }

  int vertex_count() const { return static_cast<int>(partner_.size() - 1); }
  int partner(int v) const { return partner_[static_cast<std::size_t>(v)]; }

  int unmatched() const {
    for (int v = 1; v <= vertex_count(); ++v)
      if (partner(v) == v) return v;
    throw internal_error("NearPerfectMatching: no unmatched vertex");
  }

  std::string str() const {
    std::ostringstream out;
    bool first = true;
    for (int v = 1; v <= vertex_count(); ++v) {
      if (v < partner(v)) {
        if (!first) out << '|';
        out << v << ' ' << partner(v);
        first = false;
      }
    }
    out << (first ? "" : "|") << unmatched();
    return out.str();
  }

  bool operator==(const NearPerfectMatching& o) const { return partner_ == o.partner_; }
  bool operator<(const NearPerfectMatching& o) const { return partner_ < o.partner_; }

 private:
  NearPerfectMatching() = default;

  void validate() const {
    const int m = vertex_count();
    if (m < 1 || m % 2 != 1)
      throw domain_error("NearPerfectMatching: vertex count must be odd");
    int fixed = 0;
    for (int v = 1; v <= m; ++v) {
      const int p = partner(v);
      if (p < 1 || p > m || partner(p) != v)
        throw domain_error("NearPerfectMatching: not an involution");
      if (p == v) ++fixed;
    }
    if (fixed != 1) throw domain_error("NearPerfectMatching: need exactly one unmatched vertex");
  }

  std::vector<int> partner_;
};

// All (2n-1)!! perfect matchings of K_2n in lexicographic partner-array order;
// generated by always pairing the smallest unmatched vertex first.
inline std::vector<PerfectMatching> enumerate_matchings(int n, int cap = 7) {
  if (n < 1) throw domain_error("enumerate_matchings: need n >= 1");
  if (n > cap) throw resource_error("enumerate_matchings: n exceeds cap");
  std::vector<PerfectMatching> out;
  std::vector<int> partner(static_cast<std::size_t>(2 * n + 1), 0);
  const std::function<void()> gen = [&]() {
    int u = 0;
    for (int v = 1; v <= 2 * n; ++v)
      if (!partner[static_cast<std::size_t>(v)]) {
        u = v;
        break;
      }
    if (!u) {
      out.push_back(PerfectMatching::from_partner(partner));
      return;
    }
    for (int w = u + 1; w <= 2 * n; ++w) {
      if (partner[static_cast<std::size_t>(w)]) continue;
      partner[static_cast<std::size_t>(u)] = w;
      partner[static_cast<std::size_t>(w)] = u;
      gen();
      partner[static_cast<std::size_t>(u)] = 0;
      partner[static_cast<std::size_t>(w)] = 0;
    }
  };
  gen();
  return out;
}

// Cycle type d(m,m'): the multigraph union of two perfect matchings is a
// disjoint set of even cycles; record half the cycle lengths, sorted.
inline Partition cycle_type(const PerfectMatching& m, const PerfectMatching& mp) {
  if (m.vertex_count() != mp.vertex_count()) throw domain_error("cycle_type: size mismatch");
  const int v2n = m.vertex_count();
  std::vector<char> seen(static_cast<std::size_t>(v2n + 1), 0);
  std::vector<int> parts;
  for (int v = 1; v <= v2n; ++v) {
    if (seen[static_cast<std::size_t>(v)]) continue;
    int size = 0;
    int cur = v;
    bool useFirst = true;  // alternate the two involutions around the cycle
    do {
      seen[static_cast<std::size_t>(cur)] = 1;
      ++size;
      cur = useFirst ? m.partner(cur) : mp.partner(cur);
      useFirst = !useFirst;
    } while (cur != v);
    parts.push_back(size / 2);
  }
  std::sort(parts.begin(), parts.end(), std::greater<int>());
  return Partition(std::move(parts));
}

inline int shared_edges(const PerfectMatching& m, const PerfectMatching& mp) {
  if (m.vertex_count() != mp.vertex_count()) throw domain_error("shared_edges: size mismatch");
  int c = 0;
  for (int v = 1; v <= m.vertex_count(); ++v)
    if (m.partner(v) == mp.partner(v)) ++c;
  return c / 2;
}

// |Omega_lambda| = (2n)!! / (2^len * z_lambda).
inline Int sphere_size(const Partition& lam, int n) {
  if (lam.n() != n) throw domain_error("sphere_size: partition is not of n");
  const Int num = double_factorial_even(n);
  Int den = aut_weight(lam);
  for (int i = 0; i < lam.length(); ++i) den *= 2;
  if (num % den != 0) throw internal_error("sphere_size: inexact division");
  return num / den;
}

// sigma as a 1-based image array over 1..2n; edges map to {sigma(u), sigma(v)}.
inline PerfectMatching apply_permutation(const std::vector<int>& sigma,
                                         const PerfectMatching& m) {
  const int v2n = m.vertex_count();
  if (static_cast<int>(sigma.size()) != v2n + 1)
    throw domain_error("apply_permutation: sigma size mismatch");
  std::vector<char> hit(static_cast<std::size_t>(v2n + 1), 0);
  for (int v = 1; v <= v2n; ++v) {
    const int s = sigma[static_cast<std::size_t>(v)];
    if (s < 1 || s > v2n || hit[static_cast<std::size_t>(s)])
      throw domain_error("apply_permutation: sigma is not a bijection on 1..2n");
    hit[static_cast<std::size_t>(s)] = 1;
  }
  std::vector<int> partner(static_cast<std::size_t>(v2n + 1), 0);
  for (int v = 1; v <= v2n; ++v)
    partner[static_cast<std::size_t>(sigma[static_cast<std::size_t>(v)])] =
        sigma[static_cast<std::size_t>(m.partner(v))];
  return PerfectMatching::from_partner(std::move(partner));
}

// A set of pairwise disjoint edges; the fixed part T of a canonical family.
class EdgeSet {
 public:
  EdgeSet() = default;

  explicit EdgeSet(std::vector<std::pair<int, int>> edges) {
    for (auto& [a, b] : edges) {
      if (a == b || a < 1 || b < 1) throw domain_error("EdgeSet: bad edge");
      if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    std::vector<int> used;
    for (const auto& [a, b] : edges) {
      used.push_back(a);
      used.push_back(b);
    }
    std::sort(used.begin(), used.end());
    if (std::adjacent_find(used.begin(), used.end()) != used.end())
      throw domain_error("EdgeSet: edges overlap");
    edges_ = std::move(edges);
  }

  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int size() const { return static_cast<int>(edges_.size()); }

 private:
  std::vector<std::pair<int, int>> edges_;
};

// F_T: all perfect matchings of K_2n containing every edge of T.
inline std::vector<PerfectMatching> canonical_family(const EdgeSet& T, int n) {
  if (n < 1) throw domain_error("canonical_family: need n >= 1");
  std::vector<int> partner(static_cast<std::size_t>(2 * n + 1), 0);
  for (const auto& [a, b] : T.edges()) {
    if (b > 2 * n) throw domain_error("canonical_family: edge vertex exceeds 2n");
    partner[static_cast<std::size_t>(a)] = b;
    partner[static_cast<std::size_t>(b)] = a;
  }
  std::vector<PerfectMatching> out;
  const std::function<void()> gen = [&]() {
    int u = 0;
    for (int v = 1; v <= 2 * n; ++v)
      if (!partner[static_cast<std::size_t>(v)]) {
        u = v;
        break;
      }
    if (!u) {
      out.push_back(PerfectMatching::from_partner(partner));
      return;
    }
    for (int w = u + 1; w <= 2 * n; ++w) {
      if (partner[static_cast<std::size_t>(w)]) continue;
      partner[static_cast<std::size_t>(u)] = w;
      partner[static_cast<std::size_t>(w)] = u;
      gen();
      partner[static_cast<std::size_t>(u)] = 0;
      partner[static_cast<std::size_t>(w)] = 0;
    }
  };
  gen();
  return out;
}

inline bool is_t_intersecting(const std::vector<PerfectMatching>& family, int t) {
  if (t < 1) throw domain_error("is_t_intersecting: need t >= 1");
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      if (shared_edges(family[i], family[j]) < t) return false;
  return true;
}

// All (2n-1) * (2n-3)!! near-perfect matchings of K_{2n-1}, sorted by
// partner array.
inline std::vector<NearPerfectMatching> enumerate_near_matchings(int n, int cap = 7) {
  if (n < 2) throw domain_error("enumerate_near_matchings: need n >= 2");
  if (n > cap) throw resource_error("enumerate_near_matchings: n exceeds cap");
  const int v = 2 * n - 1;
  std::vector<NearPerfectMatching> out;
  for (int u = 1; u <= v; ++u) {
    std::vector<int> partner(static_cast<std::size_t>(v + 1), 0);
    partner[static_cast<std::size_t>(u)] = u;
    const std::function<void()> gen = [&]() {
      int w0 = 0;
      for (int w = 1; w <= v; ++w)
        if (!partner[static_cast<std::size_t>(w)]) {
          w0 = w;
          break;
        }
      if (!w0) {
        out.push_back(NearPerfectMatching::from_partner(partner));
        return;
      }
      for (int w = w0 + 1; w <= v; ++w) {
        if (partner[static_cast<std::size_t>(w)]) continue;
        partner[static_cast<std::size_t>(w0)] = w;
        partner[static_cast<std::size_t>(w)] = w0;
        gen();
        partner[static_cast<std::size_t>(w0)] = 0;
        partner[static_cast<std::size_t>(w)] = 0;
      }
    };
    gen();
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Near cycle type d'(m,m'): the union is even cycles plus exactly one even
// path; parts are component vertex counts, so cycles give even parts and the
// path gives the unique odd part. d'(m,m) = (2^{n-1},1).
inline Partition near_cycle_type(const NearPerfectMatching& m, const NearPerfectMatching& mp) {
  if (m.vertex_count() != mp.vertex_count())
    throw domain_error("near_cycle_type: size mismatch");
  const int v = m.vertex_count();
  std::vector<char> seen(static_cast<std::size_t>(v + 1), 0);
  std::vector<int> parts;
  for (int s = 1; s <= v; ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    int size = 0;
    std::vector<int> stack{s};
    seen[static_cast<std::size_t>(s)] = 1;
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      ++size;
      for (const int nxt : {m.partner(cur), mp.partner(cur)}) {
        if (nxt != cur && !seen[static_cast<std::size_t>(nxt)]) {
          seen[static_cast<std::size_t>(nxt)] = 1;
          stack.push_back(nxt);
        }
      }
    }
    parts.push_back(size);
  }
  std::sort(parts.begin(), parts.end(), std::greater<int>());
  Partition d(std::move(parts));
  int odd = 0;
  for (const int p : d.parts()) odd += p % 2;
  if (odd != 1) throw internal_error("near_cycle_type: expected exactly one odd part");
  return d;
}

// psi: pair the unmatched vertex with the new vertex 2n. A bijection onto
// the perfect matchings of K_2n.
inline PerfectMatching lift_near(const NearPerfectMatching& m) {
  const int v = m.vertex_count();
  std::vector<int> partner(static_cast<std::size_t>(v + 2), 0);
  for (int u = 1; u <= v; ++u) partner[static_cast<std::size_t>(u)] = m.partner(u);
  const int u = m.unmatched();
  partner[static_cast<std::size_t>(u)] = v + 1;
  partner[static_cast<std::size_t>(v + 1)] = u;
  return PerfectMatching::from_partner(std::move(partner));
}

// O(m): partitions of odd m with exactly one odd part; the labels of the
// near-perfect matching scheme.
inline std::vector<Partition> one_odd_part_partitions(int m) {
  if (m < 1 || m % 2 != 1) throw domain_error("one_odd_part_partitions: need odd m >= 1");
  std::vector<Partition> out;
  for (const Partition& lam : enumerate_partitions(m)) {
    int odd = 0;
    for (const int p : lam.parts()) odd += p % 2;
    if (odd == 1) out.push_back(lam);
  }
  return out;
}

}  // namespace zs
