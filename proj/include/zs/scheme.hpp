// The perfect matching association scheme: P-table from the zonal character
// table, explicit associates at small n with axiom verification, primitive
// idempotents, eigenspace projections, Fourier supports, tabloid covers,
// polytabloid functions, and a group-averaging spherical-function oracle.
#pragma once

#include "zs/matching.hpp"
#include "zs/matrix.hpp"
#include "zs/numbers.hpp"
#include "zs/partition.hpp"
#include "zs/symfunc.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace zs {

namespace scheme_detail {
constexpr int kExplicitCap = 5;   // 945 x 945 class matrix
constexpr int kAxiomCheckCap = 4; // full product verification
}  // namespace scheme_detail

struct AssociationScheme {
  int n = 0;
  std::vector<Partition> labels;       // reverse-lex partitions of n
  RationalMatrix omega;                // rows eigenspace lambda, cols sphere rho
  RationalMatrix p_table;              // entry = valency(rho) * omega(lambda,rho)
  std::vector<Int> valencies;          // sphere sizes by label index
  std::vector<Int> dims;               // hook_dim(2 lambda) by label index
  Int matching_count;                  // (2n-1)!!

  // Explicit layer, present only for n <= kExplicitCap.
  std::vector<PerfectMatching> matchings;            // lex order
  std::vector<std::vector<std::uint8_t>> classes;    // label index of d(m_i,m_j)

  bool has_explicit() const { return !matchings.empty(); }

  int matching_index(const PerfectMatching& m) const {
    const auto it = std::lower_bound(matchings.begin(), matchings.end(), m);
    if (it == matchings.end() || !(*it == m))
      throw domain_error("matching_index: matching not in scheme");
    return static_cast<int>(it - matchings.begin());
  }

  int label_index(const Partition& p) const { return index_of(labels, p); }
};

namespace scheme_detail {

// Verify identity associate, valencies, and that every product A_a A_b is
// constant on classes with the same constants in both orders.
inline void verify_axioms(const AssociationScheme& s) {
  const int N = static_cast<int>(s.matchings.size());
  const int p = static_cast<int>(s.labels.size());
  const int idIdx = p - 1;  // (1^n) is reverse-lex last
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const int c = s.classes[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (c != s.classes[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
        throw internal_error("scheme axioms: class matrix not symmetric");
      if ((i == j) != (c == idIdx))
        throw internal_error("scheme axioms: identity associate mismatch");
    }
  std::vector<long> rowCount(static_cast<std::size_t>(p), 0);
  for (int j = 0; j < N; ++j) ++rowCount[s.classes[0][static_cast<std::size_t>(j)]];
  for (int a = 0; a < p; ++a)
    if (Int(rowCount[static_cast<std::size_t>(a)]) != s.valencies[static_cast<std::size_t>(a)])
      throw internal_error("scheme axioms: valency mismatch");
  for (int a = 0; a < p; ++a)
    for (int b = a; b < p; ++b) {
      std::vector<long> cAB(static_cast<std::size_t>(p), -1), cBA(static_cast<std::size_t>(p), -1);
      for (int i = 0; i < N; ++i) {
        const auto& rowI = s.classes[static_cast<std::size_t>(i)];
        for (int j = 0; j < N; ++j) {
          long eAB = 0, eBA = 0;
          for (int k = 0; k < N; ++k) {
            const auto& rowK = s.classes[static_cast<std::size_t>(k)];
            if (rowI[static_cast<std::size_t>(k)] == a && rowK[static_cast<std::size_t>(j)] == b) ++eAB;
            if (rowI[static_cast<std::size_t>(k)] == b && rowK[static_cast<std::size_t>(j)] == a) ++eBA;
          }
          long& slotAB = cAB[rowI[static_cast<std::size_t>(j)]];
          long& slotBA = cBA[rowI[static_cast<std::size_t>(j)]];
          if (slotAB < 0) slotAB = eAB;
          else if (slotAB != eAB) throw internal_error("scheme axioms: product not in span");
          if (slotBA < 0) slotBA = eBA;
          else if (slotBA != eBA) throw internal_error("scheme axioms: product not in span");
        }
      }
      if (cAB != cBA) throw internal_error("scheme axioms: associates do not commute");
    }
}

}  // namespace scheme_detail

inline AssociationScheme build_scheme(int n) {
  if (n < 2) throw domain_error("build_scheme: need n >= 2");
  if (n > symfunc_detail::kMatrixCap) throw resource_error("build_scheme: n exceeds cap");
  static std::map<int, AssociationScheme> memo;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (const auto it = memo.find(n); it != memo.end()) return it->second;
  }
  AssociationScheme s;
  s.n = n;
  s.labels = enumerate_partitions(n);
  s.omega = zonal_character_table(n);
  s.matching_count = double_factorial_odd(n);
  const int p = static_cast<int>(s.labels.size());
  for (const Partition& lam : s.labels) {
    s.valencies.push_back(sphere_size(lam, n));
    s.dims.push_back(hook_dim(lam.doubled()));
  }
  s.p_table = RationalMatrix(s.labels, s.labels);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      const Rat e = Rat(s.valencies[static_cast<std::size_t>(j)]) * s.omega.at(i, j);
      if (boost::multiprecision::denominator(e) != 1)
        throw internal_error("build_scheme: P-table entry not an integer");
      s.p_table.at(i, j) = e;
    }
  if (n <= scheme_detail::kExplicitCap) {
    s.matchings = enumerate_matchings(n);
    const int N = static_cast<int>(s.matchings.size());
    s.classes.assign(static_cast<std::size_t>(N),
                     std::vector<std::uint8_t>(static_cast<std::size_t>(N), 0));
    for (int i = 0; i < N; ++i)
      for (int j = i; j < N; ++j) {
        const int c = s.label_index(cycle_type(s.matchings[static_cast<std::size_t>(i)],
                                               s.matchings[static_cast<std::size_t>(j)]));
        s.classes[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            static_cast<std::uint8_t>(c);
        s.classes[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
            static_cast<std::uint8_t>(c);
      }
    if (n <= scheme_detail::kAxiomCheckCap) scheme_detail::verify_axioms(s);
  }
  std::lock_guard<std::mutex> lock(mu);
  return memo.emplace(n, std::move(s)).first->second;
}

// E_lambda = (dim 2lambda / (2n-1)!!) Sum_rho omega^lambda_rho A_rho,
// materialized densely; requires the explicit layer.
inline std::vector<std::vector<Rat>> idempotent(const AssociationScheme& s, const Partition& lam) {
  if (!s.has_explicit()) throw resource_error("idempotent: explicit matchings unavailable");
  const int li = s.label_index(lam);
  const int N = static_cast<int>(s.matchings.size());
  const Rat scale = Rat(s.dims[static_cast<std::size_t>(li)]) / Rat(s.matching_count);
  std::vector<Rat> byClass(s.labels.size());
  for (std::size_t c = 0; c < s.labels.size(); ++c)
    byClass[c] = scale * s.omega.at(li, static_cast<int>(c));
  std::vector<std::vector<Rat>> e(static_cast<std::size_t>(N),
                                  std::vector<Rat>(static_cast<std::size_t>(N)));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          byClass[s.classes[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]];
  return e;
}

// A rational function on all of M_2n, indexed like scheme.matchings.
struct MatchingFunction {
  std::vector<Rat> values;

  bool is_zero() const {
    for (const Rat& v : values)
      if (v != 0) return false;
    return true;
  }
};

inline MatchingFunction indicator_function(const AssociationScheme& s,
                                           const std::vector<PerfectMatching>& members) {
  if (!s.has_explicit()) throw resource_error("indicator_function: explicit matchings unavailable");
  MatchingFunction f;
  f.values.assign(s.matchings.size(), Rat(0));
  for (const PerfectMatching& m : members)
    f.values[static_cast<std::size_t>(s.matching_index(m))] = 1;
  return f;
}

// [E_mu f](m) = (dim 2mu/(2n-1)!!) Sum_{m'} f(m') omega^mu_{d(m,m')}.
// Accumulates in scaled integers (int64 when bounds allow) and divides once.
inline MatchingFunction project(const AssociationScheme& s, const MatchingFunction& f,
                                const Partition& mu) {
  if (!s.has_explicit()) throw resource_error("project: explicit matchings unavailable");
  const int N = static_cast<int>(s.matchings.size());
  if (static_cast<int>(f.values.size()) != N) throw domain_error("project: function size mismatch");
  const int mi = s.label_index(mu);

  Int wDen = 1;
  for (std::size_t c = 0; c < s.labels.size(); ++c)
    wDen = boost::multiprecision::lcm(wDen, boost::multiprecision::denominator(s.omega.at(mi, static_cast<int>(c))));
  std::vector<Int> w(s.labels.size());
  for (std::size_t c = 0; c < s.labels.size(); ++c)
    w[c] = boost::multiprecision::numerator(s.omega.at(mi, static_cast<int>(c))) *
           (wDen / boost::multiprecision::denominator(s.omega.at(mi, static_cast<int>(c))));

  std::vector<int> support;
  Int fDen = 1;
  for (int j = 0; j < N; ++j)
    if (f.values[static_cast<std::size_t>(j)] != 0) {
      support.push_back(j);
      fDen = boost::multiprecision::lcm(fDen, boost::multiprecision::denominator(f.values[static_cast<std::size_t>(j)]));
    }
  MatchingFunction out;
  out.values.assign(static_cast<std::size_t>(N), Rat(0));
  if (support.empty()) return out;
  std::vector<Int> fs(support.size());
  Int fMax = 0, wMax = 0;
  for (std::size_t k = 0; k < support.size(); ++k) {
    const Rat& v = f.values[static_cast<std::size_t>(support[k])];
    fs[k] = boost::multiprecision::numerator(v) * (fDen / boost::multiprecision::denominator(v));
    fMax = std::max(fMax, Int(boost::multiprecision::abs(fs[k])));
  }
  for (const Int& v : w) wMax = std::max(wMax, Int(boost::multiprecision::abs(v)));

  const Rat scale = Rat(s.dims[static_cast<std::size_t>(mi)]) /
                    (Rat(s.matching_count) * Rat(wDen) * Rat(fDen));
  const bool narrow =
      fMax * wMax * static_cast<long>(support.size()) < (Int(1) << 62) && fMax < (Int(1) << 31);
  if (narrow) {
    std::vector<long long> wi(w.size()), fi(fs.size());
    for (std::size_t c = 0; c < w.size(); ++c) wi[c] = w[c].convert_to<long long>();
    for (std::size_t k = 0; k < fs.size(); ++k) fi[k] = fs[k].convert_to<long long>();
    for (int i = 0; i < N; ++i) {
      const auto& row = s.classes[static_cast<std::size_t>(i)];
      long long acc = 0;
      for (std::size_t k = 0; k < support.size(); ++k)
        acc += fi[k] * wi[row[static_cast<std::size_t>(support[k])]];
      if (acc) out.values[static_cast<std::size_t>(i)] = scale * acc;
    }
  } else {
    for (int i = 0; i < N; ++i) {
      const auto& row = s.classes[static_cast<std::size_t>(i)];
      Int acc = 0;
      for (std::size_t k = 0; k < support.size(); ++k)
        acc += fs[k] * w[row[static_cast<std::size_t>(support[k])]];
      if (acc != 0) out.values[static_cast<std::size_t>(i)] = scale * Rat(acc);
    }
  }
  return out;
}

// Labels mu with E_mu f nonzero, in reverse-lex order.
inline std::vector<Partition> fourier_support(const AssociationScheme& s,
                                              const MatchingFunction& f) {
  std::vector<Partition> out;
  for (const Partition& mu : s.labels)
    if (!project(s, f, mu).is_zero()) out.push_back(mu);
  return out;
}

// Row-unordered filling of an even shape 2lambda; rows partition 1..2n.
class Tabloid {
 public:
  Tabloid(const Partition& evenShape, const std::vector<std::vector<int>>& rows)
      : shape_(evenShape) {
    for (const int p : shape_.parts())
      if (p % 2) throw domain_error("Tabloid: shape must be even");
    if (static_cast<int>(rows.size()) != shape_.length())
      throw domain_error("Tabloid: row count mismatch");
    row_of_.assign(static_cast<std::size_t>(shape_.n() + 1), 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(rows[i].size()) != shape_[static_cast<int>(i)])
        throw domain_error("Tabloid: row size mismatch");
      for (const int v : rows[i]) {
        if (v < 1 || v > shape_.n() || row_of_[static_cast<std::size_t>(v)])
          throw domain_error("Tabloid: rows must partition 1..2n");
        row_of_[static_cast<std::size_t>(v)] = static_cast<int>(i) + 1;
      }
    }
  }

  const Partition& shape() const { return shape_; }
  int vertex_count() const { return shape_.n(); }
  int row_of(int v) const { return row_of_[static_cast<std::size_t>(v)]; }

 private:
  Partition shape_;
  std::vector<int> row_of_;
};

// True when every edge of m lies inside one row of the tabloid.
inline bool covers(const Tabloid& tab, const PerfectMatching& m) {
  if (tab.vertex_count() != m.vertex_count()) throw domain_error("covers: size mismatch");
  for (int v = 1; v <= m.vertex_count(); ++v)
    if (tab.row_of(v) != tab.row_of(m.partner(v))) return false;
  return true;
}

// Ordered filling of an even shape with distinct entries 1..2n.
class Tableau {
 public:
  Tableau(const Partition& evenShape, std::vector<std::vector<int>> rows)
      : shape_(evenShape), rows_(std::move(rows)) {
    for (const int p : shape_.parts())
      if (p % 2) throw domain_error("Tableau: shape must be even");
    if (static_cast<int>(rows_.size()) != shape_.length())
      throw domain_error("Tableau: row count mismatch");
    std::vector<char> seen(static_cast<std::size_t>(shape_.n() + 1), 0);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (static_cast<int>(rows_[i].size()) != shape_[static_cast<int>(i)])
        throw domain_error("Tableau: row size mismatch");
      for (const int v : rows_[i]) {
        if (v < 1 || v > shape_.n() || seen[static_cast<std::size_t>(v)])
          throw domain_error("Tableau: entries must be distinct in 1..2n");
        seen[static_cast<std::size_t>(v)] = 1;
      }
    }
  }

  // The base-aligned tableau of shape 2lambda: rows filled consecutively, so
  // every base pair {2i-1,2i} occupies columns {2j-1,2j} of one row.
  static Tableau aligned(const Partition& lam) {
    const Partition shape = lam.doubled();
    std::vector<std::vector<int>> rows;
    int next = 1;
    for (int i = 0; i < shape.length(); ++i) {
      std::vector<int> row;
      for (int j = 0; j < shape[i]; ++j) row.push_back(next++);
      rows.push_back(std::move(row));
    }
    return Tableau(shape, std::move(rows));
  }

  const Partition& shape() const { return shape_; }
  int vertex_count() const { return shape_.n(); }
  const std::vector<std::vector<int>>& rows() const { return rows_; }

  // Values in column j (1-based), top to bottom.
  std::vector<int> column(int j) const {
    std::vector<int> col;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (static_cast<int>(rows_[i].size()) >= j) col.push_back(rows_[i][static_cast<std::size_t>(j - 1)]);
    return col;
  }

 private:
  Partition shape_;
  std::vector<std::vector<int>> rows_;
};

namespace scheme_detail {

// Sign-weighted tabloids sigma T for sigma in a product of per-column value
// permutations; collapsed by the row assignment they induce. Key is the
// row-of-vertex string, value is the signed multiplicity.
inline std::map<std::string, long> signed_tabloids(const Tableau& t,
                                                   const std::vector<int>& columns) {
  const int v2n = t.vertex_count();
  std::string base(static_cast<std::size_t>(v2n + 1), '\0');
  for (std::size_t i = 0; i < t.rows().size(); ++i)
    for (const int v : t.rows()[i]) base[static_cast<std::size_t>(v)] = static_cast<char>(i + 1);
  std::map<std::string, long> out;
  std::vector<std::vector<int>> cols;
  for (const int j : columns) {
    std::vector<int> col = t.column(j);
    if (col.size() > 1) cols.push_back(std::move(col));
  }
  std::string assign = base;
  const std::function<void(std::size_t, int)> walk = [&](std::size_t ci, int sign) {
    if (ci == cols.size()) {
      out[assign] += sign;
      return;
    }
    std::vector<int> perm = cols[ci];
    std::sort(perm.begin(), perm.end());
    do {
      // parity of the arrangement relative to the sorted column
      int s = 1;
      for (std::size_t a = 0; a < perm.size(); ++a)
        for (std::size_t b = a + 1; b < perm.size(); ++b)
          if (perm[a] > perm[b]) s = -s;
      for (std::size_t a = 0; a < perm.size(); ++a)
        assign[static_cast<std::size_t>(perm[a])] =
            base[static_cast<std::size_t>(cols[ci][a])];
      walk(ci + 1, sign * s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (const int v : cols[ci]) assign[static_cast<std::size_t>(v)] = base[static_cast<std::size_t>(v)];
  };
  walk(0, 1);
  return out;
}

inline bool assignment_covers(const std::string& rowOf, const PerfectMatching& m) {
  for (int v = 1; v <= m.vertex_count(); ++v)
    if (rowOf[static_cast<std::size_t>(v)] != rowOf[static_cast<std::size_t>(m.partner(v))])
      return false;
  return true;
}

}  // namespace scheme_detail

// f_T = Sum_{sigma in C_T} sign(sigma) 1_{sigma T covers}, the polytabloid
// cover function over the full column stabilizer.
inline MatchingFunction polytabloid_function(const AssociationScheme& s, const Tableau& t) {
  if (!s.has_explicit()) throw resource_error("polytabloid_function: explicit matchings unavailable");
  if (t.vertex_count() != 2 * s.n) throw domain_error("polytabloid_function: shape is not of 2n");
  std::vector<int> allColumns;
  for (int j = 1; j <= t.shape().part_or_zero(1); ++j) allColumns.push_back(j);
  const auto tabloids = scheme_detail::signed_tabloids(t, allColumns);
  MatchingFunction f;
  f.values.assign(s.matchings.size(), Rat(0));
  for (std::size_t i = 0; i < s.matchings.size(); ++i) {
    long acc = 0;
    for (const auto& [rowOf, coeff] : tabloids) {
      if (!coeff) continue;
      if (scheme_detail::assignment_covers(rowOf, s.matchings[i])) acc += coeff;
    }
    if (acc) f.values[i] = acc;
  }
  return f;
}

namespace scheme_detail {

// The stabilizer of the base matching: all signed permutations, i.e. permute
// the n base pairs and optionally swap within each pair. Returned as 1-based
// image arrays.
inline const std::vector<std::vector<int>>& base_stabilizer(int n) {
  static std::map<int, std::vector<std::vector<int>>> memo;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (const auto it = memo.find(n); it != memo.end()) return it->second;
  std::vector<std::vector<int>> group;
  std::vector<int> pairPerm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pairPerm[static_cast<std::size_t>(i)] = i;
  do {
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> sigma(static_cast<std::size_t>(2 * n + 1), 0);
      for (int i = 0; i < n; ++i) {
        const int target = pairPerm[static_cast<std::size_t>(i)];
        const bool flip = (mask >> i) & 1;
        sigma[static_cast<std::size_t>(2 * i + 1)] = 2 * target + (flip ? 2 : 1);
        sigma[static_cast<std::size_t>(2 * i + 2)] = 2 * target + (flip ? 1 : 2);
      }
      group.push_back(std::move(sigma));
    }
  } while (std::next_permutation(pairPerm.begin(), pairPerm.end()));
  return memo.emplace(n, std::move(group)).first->second;
}

}  // namespace scheme_detail

// Group-averaging oracle for omega^lambda_rho: average the signed cover count
// of the aligned 2lambda-tableau (odd columns permuted) over the base-matching
// stabilizer applied to a sphere representative, normalized at sphere (1^n).
inline Rat spherical_oracle(const Partition& lam, const Partition& rho, int n) {
  if (lam.n() != n || rho.n() != n)
    throw domain_error("spherical_oracle: labels must be partitions of n");
  if (n > 4) throw resource_error("spherical_oracle: n exceeds cap");
  if (n < 1) throw domain_error("spherical_oracle: need n >= 1");

  struct OracleTable {
    std::vector<Partition> labels;
    std::vector<PerfectMatching> reps;
    std::map<Partition, std::vector<Rat>, RevLexPrecedes> rows;
  };
  static std::map<int, OracleTable> memo;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  OracleTable& tab = memo[n];
  if (tab.labels.empty()) {
    tab.labels = enumerate_partitions(n);
    const PerfectMatching base = PerfectMatching::base(n);
    const auto all = enumerate_matchings(n);
    for (const Partition& r : tab.labels)
      for (const PerfectMatching& m : all)
        if (cycle_type(base, m) == r) {
          tab.reps.push_back(m);
          break;
        }
  }
  if (const auto it = tab.rows.find(lam); it == tab.rows.end()) {
    const Tableau aligned = Tableau::aligned(lam);
    std::vector<int> oddColumns;
    for (int j = 1; j <= aligned.shape().part_or_zero(1); j += 2) oddColumns.push_back(j);
    const auto tabloids = scheme_detail::signed_tabloids(aligned, oddColumns);
    const auto& stab = scheme_detail::base_stabilizer(n);
    const auto averaged = [&](const PerfectMatching& m) {
      long acc = 0;
      for (const auto& sigma : stab) {
        const PerfectMatching moved = apply_permutation(sigma, m);
        for (const auto& [rowOf, coeff] : tabloids) {
          if (!coeff) continue;
          if (scheme_detail::assignment_covers(rowOf, moved)) acc += coeff;
        }
      }
      return acc;
    };
    const long baseValue = averaged(tab.reps.back());  // sphere (1^n) holds m*
    if (!baseValue) throw internal_error("spherical_oracle: vanishing base value");
    std::vector<Rat> row;
    for (const PerfectMatching& rep : tab.reps) row.push_back(Rat(averaged(rep), baseValue));
    tab.rows.emplace(lam, std::move(row));
  }
  return tab.rows.at(lam)[static_cast<std::size_t>(index_of(tab.labels, rho))];
}

}  // namespace zs
