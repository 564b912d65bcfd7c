// Integer partitions: reverse-lex enumeration, transpose, fat classification,
// hook dimensions, automorphism weights z_lambda, and t-derangement counts.
#pragma once

#include "zs/numbers.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

namespace zs {

class Partition {
 public:
  Partition() = default;  // the unique partition of 0

  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 1) throw domain_error("Partition: parts must be positive");
      if (i > 0 && parts_[i - 1] < parts_[i])
        throw domain_error("Partition: parts must be weakly decreasing");
      n_ += parts_[i];
    }
  }

  // Comma-joined parts, e.g. "3,1"; the empty partition is "-".
  static Partition parse(const std::string& s) {
    if (s == "-") return Partition();
    std::vector<int> parts;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        parts.push_back(v);
      } catch (const std::exception&) {
        throw domain_error("Partition::parse: bad part in \"" + s + "\"");
      }
    }
    if (parts.empty()) throw domain_error("Partition::parse: empty serialization");
    return Partition(std::move(parts));
  }

  int n() const { return n_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  const std::vector<int>& parts() const { return parts_; }
  int operator[](int i) const { return parts_[static_cast<std::size_t>(i)]; }

  // Part at 1-based row i, 0 beyond the last row; convenient for strip logic.
  int part_or_zero(int i) const {
    return (i >= 1 && i <= length()) ? parts_[static_cast<std::size_t>(i - 1)] : 0;
  }

  int multiplicity(int v) const {
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), v));
  }

  int unit_parts() const { return multiplicity(1); }

  Partition transpose() const {
    std::vector<int> t;
    for (int j = 1; j <= (parts_.empty() ? 0 : parts_[0]); ++j) {
      int h = 0;
      while (h < length() && parts_[static_cast<std::size_t>(h)] >= j) ++h;
      t.push_back(h);
    }
    return Partition(std::move(t));
  }

  // 2*lambda, the even partition indexing the eigenspace of lambda.
  Partition doubled() const {
    std::vector<int> d = parts_;
    for (int& p : d) p *= 2;
    return Partition(std::move(d));
  }

  std::string str() const {
    if (parts_.empty()) return "-";
    std::ostringstream out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) out << ',';
      out << parts_[i];
    }
    return out.str();
  }

  bool operator==(const Partition& o) const { return parts_ == o.parts_; }
  bool operator!=(const Partition& o) const { return !(*this == o); }

 private:
  std::vector<int> parts_;
  int n_ = 0;
};

// True when a precedes b in the reverse-lexicographic chain, i.e. at the first
// differing index a has the larger part. (n) precedes everything, (1^n) is last.
inline bool rev_lex_precedes(const Partition& a, const Partition& b) {
  const int len = std::max(a.length(), b.length());
  for (int i = 1; i <= len; ++i) {
    const int ai = a.part_or_zero(i), bi = b.part_or_zero(i);
    if (ai != bi) return ai > bi;
  }
  return false;
}

// Comparator giving std::map iteration in enumeration order.
struct RevLexPrecedes {
  bool operator()(const Partition& a, const Partition& b) const {
    return rev_lex_precedes(a, b);
  }
};

// All partitions of n, strictly decreasing in reverse-lex: (n) first, (1^n) last.
inline std::vector<Partition> enumerate_partitions(int n) {
  if (n < 0) throw domain_error("enumerate_partitions: negative n");
  std::vector<Partition> out;
  std::vector<int> cur;
  const std::function<void(int, int)> gen = [&](int rest, int maxPart) {
    if (rest == 0) {
      out.push_back(Partition(cur));
      return;
    }
    for (int p = std::min(rest, maxPart); p >= 1; --p) {
      cur.push_back(p);
      gen(rest - p, p);
      cur.pop_back();
    }
  };
  gen(n, n);
  return out;
}

inline int index_of(const std::vector<Partition>& labels, const Partition& p) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == p) return static_cast<int>(i);
  throw domain_error("index_of: label not present: " + p.str());
}

// Fat carries k = n - lambda_1 (0 <= k <= t); everything else is Medium.
struct FatClass {
  bool fat = false;
  int k = 0;
};

// lambda_1 >= n - t test, valid only in the regime t < n/2 where the
// fat set is exactly the reverse-lex prefix ending at (n-t,1^t).
inline FatClass classify_fat(const Partition& lam, int n, int t) {
  if (lam.n() != n) throw domain_error("classify_fat: partition is not of n");
  if (t < 1 || 2 * t >= n)
    throw domain_error("classify_fat: fat/medium trichotomy undefined unless 1 <= t < n/2");
  const int lam1 = lam.part_or_zero(1);
  if (lam1 >= n - t) return FatClass{true, n - lam1};
  return FatClass{false, 0};
}

// F_t = number of fat partitions of n; depends only on t when t < n/2.
inline int fat_count(int n, int t) {
  int c = 0;
  for (const Partition& lam : enumerate_partitions(n))
    if (classify_fat(lam, n, t).fat) ++c;
  return c;
}

inline Int hook_product(const Partition& lam) {
  const Partition t = lam.transpose();
  Int h = 1;
  for (int i = 1; i <= lam.length(); ++i)
    for (int j = 1; j <= lam[i - 1]; ++j) {
      const int arm = lam[i - 1] - j;
      const int leg = t[j - 1] - i;
      h *= arm + leg + 1;
    }
  return h;
}

// f^lambda = n! / hook product; the division is exact by the hook rule.
inline Int hook_dim(const Partition& lam) {
  const Int num = factorial(lam.n());
  const Int den = hook_product(lam);
  if (num % den != 0) throw internal_error("hook_dim: inexact division");
  return num / den;
}

// z_lambda = prod_i i^{m_i} m_i! over part multiplicities m_i.
inline Int aut_weight(const Partition& lam) {
  Int z = 1;
  int i = 0;
  while (i < lam.length()) {
    int j = i;
    while (j < lam.length() && lam[j] == lam[i]) ++j;
    const int mult = j - i;
    for (int k = 0; k < mult; ++k) z *= lam[i];
    z *= factorial(mult);
    i = j;
  }
  return z;
}

struct ScalarTable {
  Int odd_df;        // (2n-1)!!
  Int even_df;       // (2n)!!
  Int odd_falling;   // ((2n-1))_t
  Int even_falling;  // ((2n))_t
};

inline ScalarTable scalar_table(int n, int t) {
  if (n < 1) throw domain_error("scalar_table: need n >= 1");
  if (t < 0 || t > n) throw domain_error("scalar_table: need 0 <= t <= n");
  return ScalarTable{double_factorial_odd(n), double_factorial_even(n),
                     falling_odd(n, t), falling_even(n, t)};
}

namespace detail {

// D2(n,1) by the recurrence D2(n,1) = 2(n-1)(D2(n-1,1) + D2(n-2,1)).
inline Int derangement_one(int n) {
  static std::vector<Int> memo{1, 0};  // D2(0,1) = 1, D2(1,1) = 0
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(memo.size()) <= n) {
    const auto k = memo.size();
    memo.push_back(2 * Int(k - 1) * (memo[k - 1] + memo[k - 2]));
  }
  return memo[static_cast<std::size_t>(n)];
}

}  // namespace detail

// Number of matchings whose cycle type has fewer than t unit parts:
// D2(n,t) = sum_{i=0}^{t-1} C(n,i) D2(n-i,1).
inline Int derangement_count(int n, int t) {
  if (n < 0 || t < 1) throw domain_error("derangement_count: need n >= 0, t >= 1");
  Int total = 0;
  for (int i = 0; i < t && i <= n; ++i)
    total += binomial(n, i) * detail::derangement_one(n - i);
  return total;
}

// Independent route for D2(n,1): inclusion-exclusion over fixed edges of the
// base matching, sum_i (-1)^i C(n,i) (2(n-i)-1)!!.
inline Int derangement_count_inclusion_exclusion(int n) {
  if (n < 0) throw domain_error("derangement_count_inclusion_exclusion: negative n");
  Int total = 0;
  for (int i = 0; i <= n; ++i) {
    const Int term = binomial(n, i) * double_factorial_odd(n - i);
    total += (i % 2 == 0) ? term : -term;
  }
  return total;
}

}  // namespace zs
