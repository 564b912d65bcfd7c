// Spectral layer: the t-derangement graph, the pseudo-adjacency weight solve
// on the fat associate classes, exact eigenvalue tables, the ratio-bound
// certificate, threshold scans, and the cross-intersecting ratio value.
#pragma once

#include "zs/matrix.hpp"
#include "zs/numbers.hpp"
#include "zs/partition.hpp"
#include "zs/scheme.hpp"
#include "zs/symfunc.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace zs {

// Associate classes carrying an edge of the t-derangement graph: cycle types
// with fewer than t unit parts. (1^n) is excluded automatically since it has
// n >= t unit parts.
struct DerangementGraph {
  int n = 0;
  int t = 0;
  std::vector<Partition> edge_labels;  // reverse-lex order
  Int valency_sum = 0;                 // = derangement_count(n, t)
};

inline DerangementGraph derangement_graph(int n, int t) {
  if (n < 1) throw domain_error("derangement_graph: need n >= 1");
  if (t < 1 || t > n) throw domain_error("derangement_graph: need 1 <= t <= n");
  DerangementGraph g;
  g.n = n;
  g.t = t;
  for (const Partition& rho : enumerate_partitions(n))
    if (rho.unit_parts() < t) {
      g.edge_labels.push_back(rho);
      g.valency_sum += sphere_size(rho, n);
    }
  return g;
}

// zeta = -1/(((2n-1))_t - 1), the designed eta_min/eta_1 ratio.
inline Rat zeta(int n, int t) {
  if (t < 1) throw domain_error("zeta: need t >= 1");
  const Int falling = falling_odd(n, t);
  if (falling <= 1) throw domain_error("zeta: degenerate denominator");
  return Rat(-1, falling - 1);
}

struct Weights {
  std::vector<Partition> labels;  // the F fat labels below (n-t,1^t)
  std::vector<Rat> values;

  Rat at(const Partition& p) const { return values[static_cast<std::size_t>(index_of(labels, p))]; }
};

struct EigenTable {
  std::vector<Partition> labels;  // all partitions of n, reverse-lex
  std::vector<Rat> values;

  Rat at(const Partition& p) const { return values[static_cast<std::size_t>(index_of(labels, p))]; }
};

// Solve M x = b with M the leading F x F principal minor of the P-table
// (fat labels minus the fattest) and b = (1, zeta, ..., zeta).
inline Weights solve_weights(int n, int t) {
  const Rat z = zeta(n, t);
  if (2 * t >= n) throw domain_error("solve_weights: need t < n/2");
  const AssociationScheme& s = build_scheme(n);
  const RationalMatrix m = leading_minor(s.p_table, n, t);
  std::vector<Rat> b(m.row_labels.size(), z);
  b[0] = 1;
  Weights w;
  w.labels = m.row_labels;
  w.values = solve_linear(m, b);
  return w;
}

// eta_lambda = Sum_j x_j P(lambda, j) over the weighted sphere labels.
inline EigenTable eigen_table(const Weights& w, int n) {
  const AssociationScheme& s = build_scheme(n);
  EigenTable e;
  e.labels = s.labels;
  for (std::size_t i = 0; i < s.labels.size(); ++i) {
    Rat acc = 0;
    for (std::size_t j = 0; j < w.labels.size(); ++j)
      acc += w.values[j] * s.p_table.at(static_cast<int>(i),
                                        s.label_index(w.labels[j]));
    e.values.push_back(acc);
  }
  return e;
}

struct Certificate {
  int n = 0;
  int t = 0;
  Rat zeta;
  Weights weights;
  EigenTable eigen;
  Rat fattest_eig;       // eigenvalue at (n-t,1^t), excluded from the solve
  Rat min_eigenvalue;
  std::vector<Partition> minimizers;
  bool min_is_zeta = false;
  bool minimizers_all_fat = false;
  Rat hoffman_value;     // (2n-1)!! * (-zeta)/(1-zeta)
  bool valid = false;
};

inline Partition fattest_label(int n, int t) {
  std::vector<int> parts{n - t};
  parts.insert(parts.end(), static_cast<std::size_t>(t), 1);
  return Partition(parts);
}

// Assemble and verify the ratio-bound certificate: the fat non-trivial
// eigenvalues equal zeta, the excluded fattest one does too, and zeta is the
// unique minimum attained only on fat classes.
inline Certificate certify(int n, int t) {
  Certificate c;
  c.n = n;
  c.t = t;
  c.zeta = zeta(n, t);
  c.weights = solve_weights(n, t);
  c.eigen = eigen_table(c.weights, n);
  c.fattest_eig = c.eigen.at(fattest_label(n, t));
  c.min_eigenvalue = c.eigen.values[0];
  for (const Rat& v : c.eigen.values) c.min_eigenvalue = std::min(c.min_eigenvalue, v);
  bool fatEqual = true;
  for (std::size_t i = 0; i < c.eigen.labels.size(); ++i) {
    const FatClass fc = classify_fat(c.eigen.labels[i], n, t);
    if (fc.fat && i > 0 && c.eigen.values[i] != c.zeta) fatEqual = false;
    if (c.eigen.values[i] == c.min_eigenvalue) c.minimizers.push_back(c.eigen.labels[i]);
  }
  c.min_is_zeta = (c.min_eigenvalue == c.zeta);
  c.minimizers_all_fat = true;
  for (const Partition& p : c.minimizers)
    if (!classify_fat(p, n, t).fat) c.minimizers_all_fat = false;
  c.hoffman_value = Rat(double_factorial_odd(n)) * (-c.zeta) / (1 - c.zeta);
  c.valid = c.min_is_zeta && c.minimizers_all_fat && fatEqual &&
            c.fattest_eig == c.zeta;
  return c;
}

struct ScanRow {
  int n = 0;
  bool valid = false;
  Rat zeta;
  Rat min_eigenvalue;
  std::vector<Partition> minimizers;
  Rat fattest_eig;
  Rat hoffman_value;
};

struct ScanResult {
  int t = 0;
  int n_min = 0;
  int n_max = 0;
  std::vector<ScanRow> rows;
  // Smallest n in range from which validity holds for every larger scanned n;
  // 0 when even the last row is invalid.
  int first_contiguous_valid_n = 0;
};

inline ScanResult threshold_scan(int t, int n_min, int n_max) {
  if (n_min > n_max) throw domain_error("threshold_scan: empty range");
  if (n_min <= 2 * t) throw domain_error("threshold_scan: need t < n/2 across the range");
  ScanResult r;
  r.t = t;
  r.n_min = n_min;
  r.n_max = n_max;
  for (int n = n_min; n <= n_max; ++n) {
    const Certificate c = certify(n, t);
    ScanRow row;
    row.n = n;
    row.valid = c.valid;
    row.zeta = c.zeta;
    row.min_eigenvalue = c.min_eigenvalue;
    row.minimizers = c.minimizers;
    row.fattest_eig = c.fattest_eig;
    row.hoffman_value = c.hoffman_value;
    r.rows.push_back(std::move(row));
  }
  for (auto it = r.rows.rbegin(); it != r.rows.rend(); ++it) {
    if (!it->valid) break;
    r.first_contiguous_valid_n = it->n;
  }
  return r;
}

// (2n-1)!!*|zeta|/(1+|zeta|); squared it bounds |F||G| for cross-intersecting
// pairs. Applicable only with a valid certificate whose zeta dominates every
// non-trivial eigenvalue in absolute value.
struct CrossRatio {
  bool applicable = false;
  Rat value;
  Rat product_bound;  // value squared
};

inline CrossRatio cross_ratio_value(int n, int t) {
  const Certificate c = certify(n, t);
  CrossRatio out;
  bool dominant = true;
  for (std::size_t i = 1; i < c.eigen.labels.size(); ++i)
    if (Rat(boost::multiprecision::abs(c.eigen.values[i])) > Rat(boost::multiprecision::abs(c.zeta)))
      dominant = false;
  out.applicable = c.valid && dominant;
  const Rat absZ = Rat(boost::multiprecision::abs(c.zeta));
  out.value = Rat(double_factorial_odd(n)) * absZ / (1 + absZ);
  out.product_bound = out.value * out.value;
  return out;
}

}  // namespace zs
