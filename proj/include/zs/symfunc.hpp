// Transition matrices between symmetric-function bases: permutation characters
// D(n) = M(p,m), Kostka K(n) = M(s,m) by tableau enumeration, alpha-Kostka
// K^(alpha)(n) by the Psi chain formula, a Gram-Schmidt oracle for the same,
// and the zonal character table assembled from D and K^(2).
#pragma once

#include "zs/matrix.hpp"
#include "zs/numbers.hpp"
#include "zs/partition.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace zs {

namespace symfunc_detail {

constexpr int kMatrixCap = 14;  // p(14) = 135; tableau enumeration dominates beyond

inline void check_matrix_n(int n, const char* who) {
  if (n < 1) throw domain_error(std::string(who) + ": need n >= 1");
  if (n > kMatrixCap) throw resource_error(std::string(who) + ": n exceeds cap");
}

// Polynomial in the monomial basis, keyed in reverse-lex order.
using MPoly = std::map<Partition, Rat, RevLexPrecedes>;

// p_r * m_mu: either grow one part of mu by r (coefficient = multiplicity of
// the grown part in the result) or append a new part r (coefficient =
// multiplicity of r in the result).
inline MPoly multiply_power_sum(const MPoly& f, int r) {
  MPoly out;
  for (const auto& [mu, coeff] : f) {
    std::vector<int> grow;
    for (const int s : mu.parts())
      if (std::find(grow.begin(), grow.end(), s) == grow.end()) grow.push_back(s);
    for (const int s : grow) {
      std::vector<int> parts = mu.parts();
      parts.erase(std::find(parts.begin(), parts.end(), s));
      parts.push_back(s + r);
      std::sort(parts.begin(), parts.end(), std::greater<int>());
      Partition nu(std::move(parts));
      const int mult = nu.multiplicity(s + r);
      out[nu] += coeff * mult;
    }
    {
      std::vector<int> parts = mu.parts();
      parts.push_back(r);
      std::sort(parts.begin(), parts.end(), std::greater<int>());
      Partition nu(std::move(parts));
      const int mult = nu.multiplicity(r);
      out[nu] += coeff * mult;
    }
  }
  return out;
}

// Count semistandard tableaux of shape lam and weight mu by row-major fill.
inline Int ssyt_count(const Partition& lam, const Partition& mu) {
  const int rows = lam.length();
  const int values = mu.length();
  std::vector<int> remaining(static_cast<std::size_t>(values + 1), 0);
  for (int v = 1; v <= values; ++v) remaining[static_cast<std::size_t>(v)] = mu[v - 1];
  std::vector<std::vector<int>> cell(static_cast<std::size_t>(rows));
  for (int i = 0; i < rows; ++i)
    cell[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(lam[i]), 0);
  Int count = 0;
  const std::function<void(int, int)> fill = [&](int i, int j) {
    if (i == rows) {
      ++count;
      return;
    }
    const int ni = (j + 1 == lam[i]) ? i + 1 : i;
    const int nj = (j + 1 == lam[i]) ? 0 : j + 1;
    const int left = (j > 0) ? cell[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)] : 1;
    const int above =
        (i > 0 && j < lam[i - 1]) ? cell[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] : 0;
    for (int v = std::max(left, above + 1); v <= values; ++v) {
      if (!remaining[static_cast<std::size_t>(v)]) continue;
      --remaining[static_cast<std::size_t>(v)];
      cell[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
      fill(ni, nj);
      ++remaining[static_cast<std::size_t>(v)];
    }
  };
  fill(0, 0);
  return count;
}

// b^(alpha)_shape(s) = (alpha*arm + leg + 1)/(alpha*arm + leg + alpha).
inline Rat b_weight(const Partition& shape, const Partition& shapeT, int i, int j,
                    const Rat& alpha) {
  const int arm = shape[i - 1] - j;
  const int leg = shapeT[j - 1] - i;
  return (alpha * arm + leg + 1) / (alpha * arm + leg + alpha);
}

// Psi_{tau/sigma}: product of b_sigma(s)/b_tau(s) over cells s of sigma lying
// in a row the strip meets but not in a column it meets.
inline Rat psi_strip(const Partition& tau, const Partition& sigma, const Rat& alpha) {
  const Partition tauT = tau.transpose();
  const Partition sigmaT = sigma.transpose();
  Rat prod = 1;
  for (int i = 1; i <= sigma.length(); ++i) {
    if (tau.part_or_zero(i) <= sigma.part_or_zero(i)) continue;  // row misses strip
    for (int j = 1; j <= sigma[i - 1]; ++j) {
      if (tauT.part_or_zero(j) > sigmaT.part_or_zero(j)) continue;  // column meets strip
      prod *= b_weight(sigma, sigmaT, i, j, alpha) / b_weight(tau, tauT, i, j, alpha);
    }
  }
  return prod;
}

// All tau >= sigma with tau/sigma a horizontal strip of size k.
inline std::vector<Partition> horizontal_strips(const Partition& sigma, int k) {
  std::vector<Partition> out;
  const int rows = sigma.length() + 1;
  std::vector<int> tau(static_cast<std::size_t>(rows), 0);
  const std::function<void(int, int)> choose = [&](int i, int rest) {
    if (i == rows) {
      if (rest == 0) {
        std::vector<int> parts;
        for (const int p : tau)
          if (p > 0) parts.push_back(p);
        out.push_back(Partition(std::move(parts)));
      }
      return;
    }
    const int lo = sigma.part_or_zero(i + 1);
    // at most one new cell per column: tau_i <= sigma_{i-1} for i >= 2
    int hi = (i == 0) ? sigma.part_or_zero(1) + rest : sigma.part_or_zero(i);
    hi = std::min(hi, lo + rest);
    if (i > 0) hi = std::min(hi, tau[static_cast<std::size_t>(i - 1)]);
    for (int v = lo; v <= hi; ++v) {
      tau[static_cast<std::size_t>(i)] = v;
      choose(i + 1, rest - (v - lo));
    }
    tau[static_cast<std::size_t>(i)] = 0;
  };
  choose(0, k);
  return out;
}

}  // namespace symfunc_detail

// D(n): row lambda holds the monomial expansion of p_lambda. Entry (lambda,mu)
// counts ordered set partitions of the parts of lambda with block sums mu.
// Lower-triangular with nonzero diagonal in reverse-lex order.
inline RationalMatrix perm_char_matrix(int n) {
  using namespace symfunc_detail;
  check_matrix_n(n, "perm_char_matrix");
  static std::map<int, RationalMatrix> memo;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (const auto it = memo.find(n); it != memo.end()) return it->second;
  }
  const std::vector<Partition> labels = enumerate_partitions(n);
  RationalMatrix d(labels, labels);
  for (int r = 0; r < d.rows(); ++r) {
    MPoly f{{Partition(), Rat(1)}};
    for (const int part : labels[static_cast<std::size_t>(r)].parts())
      f = multiply_power_sum(f, part);
    for (const auto& [m, coeff] : f) d.at(r, d.col_index(m)) = coeff;
  }
  std::lock_guard<std::mutex> lock(mu);
  return memo.emplace(n, std::move(d)).first->second;
}

// K(n): integer Kostka numbers by direct semistandard-tableau enumeration.
// Upper-unitriangular in reverse-lex order.
inline RationalMatrix kostka_matrix(int n) {
  using namespace symfunc_detail;
  check_matrix_n(n, "kostka_matrix");
  static std::map<int, RationalMatrix> memo;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (const auto it = memo.find(n); it != memo.end()) return it->second;
  }
  const std::vector<Partition> labels = enumerate_partitions(n);
  RationalMatrix k(labels, labels);
  for (int r = 0; r < k.rows(); ++r)
    for (int c = 0; c < k.cols(); ++c)
      k.at(r, c) = Rat(ssyt_count(labels[static_cast<std::size_t>(r)],
                                  labels[static_cast<std::size_t>(c)]));
  std::lock_guard<std::mutex> lock(mu);
  return memo.emplace(n, std::move(k)).first->second;
}

// K^(alpha)(n): entry (lambda,mu) sums Psi weights over all horizontal-strip
// chains building lambda with strip sizes mu_1, mu_2, ... At alpha = 1 this
// degenerates to the integer Kostka matrix.
inline RationalMatrix alpha_kostka_matrix(int n, const Rat& alpha) {
  using namespace symfunc_detail;
  check_matrix_n(n, "alpha_kostka_matrix");
  if (alpha <= 0) throw domain_error("alpha_kostka_matrix: need alpha > 0");
  static std::map<std::pair<int, Rat>, RationalMatrix> memo;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (const auto it = memo.find({n, alpha}); it != memo.end()) return it->second;
  }
  const std::vector<Partition> labels = enumerate_partitions(n);
  RationalMatrix k(labels, labels);
  for (int c = 0; c < k.cols(); ++c) {
    const Partition& weight = labels[static_cast<std::size_t>(c)];
    std::map<Partition, Rat, RevLexPrecedes> states{{Partition(), Rat(1)}};
    for (const int step : weight.parts()) {
      std::map<Partition, Rat, RevLexPrecedes> next;
      for (const auto& [sigma, w] : states)
        for (const Partition& tau : horizontal_strips(sigma, step))
          next[tau] += w * psi_strip(tau, sigma, alpha);
      states = std::move(next);
    }
    for (const auto& [shape, w] : states) k.at(k.row_index(shape), c) = w;
  }
  std::lock_guard<std::mutex> lock(mu);
  return memo.emplace(std::make_pair(n, alpha), std::move(k)).first->second;
}

// Independent oracle for K^(alpha): expand the monomial basis in power sums
// via D(n)^-1, take the alpha-deformed inner product <p_rho,p_rho> =
// alpha^len(rho) z_rho, and Gram-Schmidt the monomial basis upward from (1^n)
// while imposing monic upper-unitriangularity.
inline RationalMatrix gram_schmidt_jack(int n, const Rat& alpha) {
  using namespace symfunc_detail;
  check_matrix_n(n, "gram_schmidt_jack");
  if (alpha <= 0) throw domain_error("gram_schmidt_jack: need alpha > 0");
  const std::vector<Partition> labels = enumerate_partitions(n);
  const int p = static_cast<int>(labels.size());
  const RationalMatrix dinv = inverse(perm_char_matrix(n));
  // Gram matrix of the monomial basis under the alpha inner product.
  std::vector<std::vector<Rat>> gram(static_cast<std::size_t>(p),
                                     std::vector<Rat>(static_cast<std::size_t>(p), Rat(0)));
  std::vector<Rat> rho_norm(static_cast<std::size_t>(p));
  for (int r = 0; r < p; ++r)
    rho_norm[static_cast<std::size_t>(r)] =
        pow_rat(alpha, labels[static_cast<std::size_t>(r)].length()) *
        Rat(aut_weight(labels[static_cast<std::size_t>(r)]));
  for (int i = 0; i < p; ++i)
    for (int j = i; j < p; ++j) {
      Rat s = 0;
      for (int r = 0; r < p; ++r)
        s += dinv.at(i, r) * dinv.at(j, r) * rho_norm[static_cast<std::size_t>(r)];
      gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
      gram[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = s;
    }
  const auto inner = [&](const std::vector<Rat>& a, const std::vector<Rat>& b) {
    Rat s = 0;
    for (int i = 0; i < p; ++i) {
      if (a[static_cast<std::size_t>(i)] == 0) continue;
      Rat row = 0;
      for (int j = 0; j < p; ++j)
        row += gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
               b[static_cast<std::size_t>(j)];
      s += a[static_cast<std::size_t>(i)] * row;
    }
    return s;
  };
  RationalMatrix k(labels, labels);
  std::vector<std::vector<Rat>> built;   // coefficient vectors, ascending order
  std::vector<Rat> built_norm;
  for (int idx = p - 1; idx >= 0; --idx) {
    std::vector<Rat> v(static_cast<std::size_t>(p), Rat(0));
    v[static_cast<std::size_t>(idx)] = 1;
    for (std::size_t b = 0; b < built.size(); ++b) {
      const Rat c = inner(v, built[b]) / built_norm[b];
      if (c == 0) continue;
      for (int j = 0; j < p; ++j) v[static_cast<std::size_t>(j)] -= c * built[b][static_cast<std::size_t>(j)];
    }
    const Rat norm = inner(v, v);
    if (norm <= 0) throw internal_error("gram_schmidt_jack: inner product not positive");
    for (int j = 0; j < p; ++j) k.at(idx, j) = v[static_cast<std::size_t>(j)];
    built.push_back(std::move(v));
    built_norm.push_back(norm);
  }
  return k;
}

// The zonal character table (omega^lambda_rho): rows are eigenspace labels
// lambda, columns are sphere labels rho. Computed as D(n) * K^(2)(n)^-1 read
// columnwise, then each column is scaled to meet omega^lambda_{(1^n)} = 1;
// the product alone determines the table only up to per-column scalars.
inline RationalMatrix zonal_character_table(int n) {
  using namespace symfunc_detail;
  check_matrix_n(n, "zonal_character_table");
  static std::map<int, RationalMatrix> memo;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (const auto it = memo.find(n); it != memo.end()) return it->second;
  }
  const RationalMatrix w = matmul(perm_char_matrix(n), inverse(alpha_kostka_matrix(n, Rat(2))));
  const std::vector<Partition> labels = w.row_labels;
  const int p = static_cast<int>(labels.size());
  RationalMatrix table(labels, labels);
  for (int lam = 0; lam < p; ++lam) {
    const Rat& base = w.at(p - 1, lam);  // row (1^n)
    if (base == 0) throw internal_error("zonal_character_table: vanishing normalizer");
    for (int rho = 0; rho < p; ++rho) table.at(lam, rho) = w.at(rho, lam) / base;
  }
  std::lock_guard<std::mutex> lock(mu);
  return memo.emplace(n, std::move(table)).first->second;
}

// M(p,s) = D(n) * K(n)^-1: rows are classes rho, columns irreducibles lambda,
// entry = chi^lambda(rho). All entries are integers.
inline RationalMatrix sym_char_table(int n) {
  using namespace symfunc_detail;
  check_matrix_n(n, "sym_char_table");
  return matmul(perm_char_matrix(n), inverse(kostka_matrix(n)));
}

// The F x F leading block of a reverse-lex-labeled square matrix, F = F_t - 1:
// rows and columns indexed by the fat partitions minus (n-t,1^t), which form
// exactly the length-F reverse-lex prefix.
inline RationalMatrix leading_minor(const RationalMatrix& m, int n, int t) {
  if (t < 1 || 2 * t >= n) throw domain_error("leading_minor: need 1 <= t < n/2");
  const std::vector<Partition> labels = enumerate_partitions(n);
  if (m.row_labels != labels || m.col_labels != labels)
    throw domain_error("leading_minor: matrix must be labeled by partitions of n in order");
  const int f = fat_count(n, t) - 1;
  return leading_block(m, f);
}

}  // namespace zs
