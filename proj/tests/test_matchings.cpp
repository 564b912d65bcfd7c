#include <catch2/catch_amalgamated.hpp>

#include <zs/matching.hpp>
#include <zs/partition.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

using zs::Int;
using zs::NearPerfectMatching;
using zs::Partition;
using zs::PerfectMatching;

TEST_CASE("perfect matching construction and printing") {
  CHECK(PerfectMatching::base(3).str() == "1 2|3 4|5 6");
  CHECK(PerfectMatching::base(1).str() == "1 2");
  const auto m = PerfectMatching::parse("2 3|4 5|6 7|1 8");
  CHECK(m.str() == "1 8|2 3|4 5|6 7");
  CHECK(m.partner(1) == 8);
  CHECK(m.partner(3) == 2);
  CHECK(m.n() == 4);
  CHECK(m.vertex_count() == 8);
  CHECK(PerfectMatching::parse(m.str()) == m);
  CHECK(PerfectMatching::from_pairs({{5, 6}, {1, 2}, {3, 4}}) == PerfectMatching::base(3));

  const auto edges = PerfectMatching::base(2).edges();
  REQUIRE(edges.size() == 2);
  CHECK(edges[0] == std::pair<int, int>{1, 2});
  CHECK(edges[1] == std::pair<int, int>{3, 4});
}

TEST_CASE("perfect matching validation") {
  CHECK_THROWS_AS(PerfectMatching::parse("1 2|1 3"), zs::domain_error);
  CHECK_THROWS_AS(PerfectMatching::parse("1 1|2 3"), zs::domain_error);
  CHECK_THROWS_AS(PerfectMatching::parse("1 2|3 4|5"), zs::domain_error);
  CHECK_THROWS_AS(PerfectMatching::parse("x y"), zs::domain_error);
  CHECK_THROWS_AS(PerfectMatching::parse(""), zs::domain_error);
  CHECK_THROWS_AS(PerfectMatching::from_pairs({{1, 2}, {2, 3}}), zs::domain_error);
  CHECK_THROWS_AS(PerfectMatching::from_pairs({{1, 2}, {4, 5}}), zs::domain_error);
}

TEST_CASE("enumeration counts, order, caps") {
  CHECK(zs::enumerate_matchings(1).size() == 1);
  CHECK(zs::enumerate_matchings(2).size() == 3);
  CHECK(zs::enumerate_matchings(4).size() == 105);
  CHECK(zs::enumerate_matchings(5).size() == 945);

  const auto all = zs::enumerate_matchings(4);
  CHECK(all.front() == PerfectMatching::base(4));
  std::set<std::string> seen;
  for (const auto& m : all) seen.insert(m.str());
  CHECK(seen.size() == all.size());

  // Smallest-unmatched-first generation is lexicographic in the partner array.
  for (std::size_t i = 0; i + 1 < all.size(); ++i) {
    std::vector<int> a, b;
    for (int v = 1; v <= 8; ++v) {
      a.push_back(all[i].partner(v));
      b.push_back(all[i + 1].partner(v));
    }
    CHECK(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
  }

  CHECK_THROWS_AS(zs::enumerate_matchings(8), zs::resource_error);
  CHECK_THROWS_AS(zs::enumerate_matchings(0), zs::domain_error);
}

TEST_CASE("cycle type examples") {
  const auto base = PerfectMatching::base(4);
  CHECK(zs::cycle_type(base, PerfectMatching::parse("2 3|4 5|6 7|1 8")) ==
        Partition::parse("4"));
  CHECK(zs::cycle_type(base, PerfectMatching::parse("1 2|3 8|4 7|5 6")) ==
        Partition::parse("2,1,1"));
  CHECK(zs::cycle_type(base, base) == Partition::parse("1,1,1,1"));
  CHECK_THROWS_AS(zs::cycle_type(PerfectMatching::base(2), PerfectMatching::base(3)),
                  zs::domain_error);
}

TEST_CASE("cycle type symmetry and shared edges") {
  const auto all = zs::enumerate_matchings(3);
  for (const auto& a : all)
    for (const auto& b : all) {
      const Partition d = zs::cycle_type(a, b);
      CHECK(d == zs::cycle_type(b, a));
      CHECK(d.n() == 3);
      CHECK(zs::shared_edges(a, b) == d.unit_parts());
    }
  CHECK(zs::shared_edges(PerfectMatching::base(4),
                         PerfectMatching::parse("1 2|3 8|4 7|5 6")) == 2);
}

TEST_CASE("sphere sizes") {
  const auto labels = zs::enumerate_partitions(4);
  const long row[] = {48, 32, 12, 12, 1};
  for (std::size_t i = 0; i < labels.size(); ++i)
    CHECK(zs::sphere_size(labels[i], 4) == row[i]);
  CHECK(zs::sphere_size(Partition::parse("1,1,1"), 3) == 1);
  CHECK_THROWS_AS(zs::sphere_size(Partition::parse("2,1"), 4), zs::domain_error);

  for (int n = 1; n <= 12; ++n) {
    Int total = 0;
    for (const Partition& lam : zs::enumerate_partitions(n))
      total += zs::sphere_size(lam, n);
    CHECK(total == zs::double_factorial_odd(n));
  }
}

TEST_CASE("spheres partition the matchings") {
  for (int n = 2; n <= 5; ++n) {
    const auto base = PerfectMatching::base(n);
    std::map<std::string, long> counts;
    for (const auto& m : zs::enumerate_matchings(n))
      ++counts[zs::cycle_type(base, m).str()];
    for (const Partition& lam : zs::enumerate_partitions(n))
      CHECK(Int(counts[lam.str()]) == zs::sphere_size(lam, n));
  }
}

TEST_CASE("sphere sandwich for partitions with a large part") {
  for (int n = 2; n <= 12; ++n)
    for (const Partition& lam : zs::enumerate_partitions(n)) {
      const int k = n - lam[0];
      if (2 * k >= n) continue;
      const Int sphere = zs::sphere_size(lam, n);
      Int pw = 1;
      for (int i = 0; i < k; ++i) pw *= 2 * k;
      Int scale = 1;
      for (int i = 0; i < n; ++i) scale *= 2;
      CHECK(scale * zs::factorial(n) <= sphere * 2 * (n - k) * pw);
      CHECK(sphere <= 2 * scale * zs::factorial(n - 1));
    }
}

TEST_CASE("relabelling acts on matchings") {
  const auto m = PerfectMatching::base(4);
  std::vector<int> id(9);
  std::iota(id.begin(), id.end(), 0);
  CHECK(zs::apply_permutation(id, m) == m);

  std::vector<int> swap12 = id;
  std::swap(swap12[1], swap12[2]);
  CHECK(zs::apply_permutation(swap12, m) == m);

  std::vector<int> cyc = id;
  cyc[1] = 3;
  cyc[3] = 1;
  CHECK(zs::apply_permutation(cyc, m) == PerfectMatching::parse("3 2|1 4|5 6|7 8"));

  std::vector<int> bad = id;
  bad[2] = 1;
  CHECK_THROWS_AS(zs::apply_permutation(bad, m), zs::domain_error);
  CHECK_THROWS_AS(zs::apply_permutation(std::vector<int>{0, 1, 2}, m), zs::domain_error);

  // Composition law sigma(tau m) = (sigma tau) m.
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> sigma(id), tau(id);
    std::shuffle(sigma.begin() + 1, sigma.end(), rng);
    std::shuffle(tau.begin() + 1, tau.end(), rng);
    std::vector<int> comp(9, 0);
    for (int v = 1; v <= 8; ++v)
      comp[static_cast<std::size_t>(v)] =
          sigma[static_cast<std::size_t>(tau[static_cast<std::size_t>(v)])];
    CHECK(zs::apply_permutation(sigma, zs::apply_permutation(tau, m)) ==
          zs::apply_permutation(comp, m));
  }
}

TEST_CASE("symmetric group acts transitively; base stabilizer has order (2n)!!") {
  for (int n = 2; n <= 4; ++n) {
    const auto base = PerfectMatching::base(n);
    std::vector<int> sigma(static_cast<std::size_t>(2 * n + 1));
    std::iota(sigma.begin(), sigma.end(), 0);
    std::set<std::string> orbit;
    long stab = 0;
    do {
      const auto img = zs::apply_permutation(sigma, base);
      orbit.insert(img.str());
      if (img == base) ++stab;
    } while (std::next_permutation(sigma.begin() + 1, sigma.end()));
    CHECK(Int(orbit.size()) == zs::double_factorial_odd(n));
    CHECK(Int(stab) == zs::double_factorial_even(n));
  }
}

TEST_CASE("edge sets") {
  const zs::EdgeSet T({{4, 3}, {1, 2}});
  REQUIRE(T.size() == 2);
  CHECK(T.edges()[0] == std::pair<int, int>{1, 2});
  CHECK(T.edges()[1] == std::pair<int, int>{3, 4});
  CHECK_THROWS_AS(zs::EdgeSet({{1, 2}, {2, 3}}), zs::domain_error);
  CHECK_THROWS_AS(zs::EdgeSet({{1, 1}}), zs::domain_error);
  CHECK_THROWS_AS(zs::EdgeSet({{0, 1}}), zs::domain_error);
}

TEST_CASE("canonical families") {
  const auto fam = zs::canonical_family(zs::EdgeSet({{1, 2}}), 4);
  CHECK(fam.size() == 15);
  for (const auto& m : fam) CHECK(m.partner(1) == 2);
  CHECK(zs::is_t_intersecting(fam, 1));

  // All disjoint edge sets of size t, n <= 5, t <= 2.
  for (int n = 2; n <= 5; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 1; a <= 2 * n; ++a)
      for (int b = a + 1; b <= 2 * n; ++b) pairs.emplace_back(a, b);
    for (int t = 1; t <= 2 && 2 * t <= n; ++t) {
      long configs = 0;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (t == 1) {
          const auto fam1 = zs::canonical_family(zs::EdgeSet({pairs[i]}), n);
          CHECK(Int(fam1.size()) == zs::double_factorial_odd(n - 1));
          CHECK(zs::is_t_intersecting(fam1, 1));
          ++configs;
          continue;
        }
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
          const auto& a = pairs[i];
          const auto& b = pairs[j];
          if (a.first == b.first || a.first == b.second || a.second == b.first ||
              a.second == b.second)
            continue;
          const auto fam2 = zs::canonical_family(zs::EdgeSet({a, b}), n);
          CHECK(Int(fam2.size()) == zs::double_factorial_odd(n - 2));
          CHECK(zs::is_t_intersecting(fam2, 2));
          ++configs;
        }
      }
      CHECK(configs > 0);
    }
  }

  CHECK_THROWS_AS(zs::canonical_family(zs::EdgeSet({{1, 9}}), 4), zs::domain_error);
}

TEST_CASE("t-intersection predicate") {
  const auto base = PerfectMatching::base(4);
  const auto far = PerfectMatching::parse("2 3|4 5|6 7|1 8");
  const auto near2 = PerfectMatching::parse("1 2|3 8|4 7|5 6");
  CHECK_FALSE(zs::is_t_intersecting({base, far}, 1));
  CHECK(zs::is_t_intersecting({base, near2}, 2));
  CHECK_FALSE(zs::is_t_intersecting({base, near2}, 3));
  CHECK(zs::is_t_intersecting({base}, 4));
  CHECK(zs::is_t_intersecting({}, 1));
}

TEST_CASE("near-perfect matching basics") {
  const auto m = NearPerfectMatching::from_pairs({{1, 2}}, 3);
  CHECK(m.str() == "1 2|3");
  CHECK(m.unmatched() == 3);
  CHECK(m.partner(3) == 3);
  CHECK(m.vertex_count() == 3);
  CHECK_THROWS_AS(NearPerfectMatching::from_pairs({{1, 2}}, 5), zs::domain_error);
  CHECK_THROWS_AS(NearPerfectMatching::from_pairs({{1, 2}, {3, 4}}, 4), zs::domain_error);
  CHECK_THROWS_AS(NearPerfectMatching::from_pairs({{1, 2}, {1, 3}}, 3), zs::domain_error);
}

TEST_CASE("near-perfect enumeration") {
  CHECK_THROWS_AS(zs::enumerate_near_matchings(1), zs::domain_error);
  CHECK(zs::enumerate_near_matchings(2).size() == 3);
  CHECK(zs::enumerate_near_matchings(3).size() == 15);
  CHECK(zs::enumerate_near_matchings(4).size() == 105);
  std::set<std::string> seen;
  for (const auto& m : zs::enumerate_near_matchings(4)) seen.insert(m.str());
  CHECK(seen.size() == 105);
  CHECK_THROWS_AS(zs::enumerate_near_matchings(8), zs::resource_error);
}

TEST_CASE("near cycle type") {
  // Union of a near matching with itself: n-1 doubled edges plus the
  // single unmatched vertex.
  for (int n = 2; n <= 4; ++n) {
    for (const auto& m : zs::enumerate_near_matchings(n)) {
      std::vector<int> parts(static_cast<std::size_t>(n - 1), 2);
      parts.push_back(1);
      CHECK(zs::near_cycle_type(m, m) == Partition(parts));
    }
  }

  const auto a = NearPerfectMatching::from_pairs({{1, 2}}, 3);
  const auto b = NearPerfectMatching::from_pairs({{1, 3}}, 3);
  CHECK(zs::near_cycle_type(a, b) == Partition::parse("3"));

  for (int n = 2; n <= 4; ++n) {
    const auto all = zs::enumerate_near_matchings(n);
    for (const auto& x : all)
      for (const auto& y : all) {
        const Partition d = zs::near_cycle_type(x, y);
        CHECK(d == zs::near_cycle_type(y, x));
        CHECK(d.n() == 2 * n - 1);
        int odd = 0;
        for (int i = 0; i < d.length(); ++i)
          if (d[i] % 2 == 1) ++odd;
        CHECK(odd == 1);
      }
  }
  CHECK_THROWS_AS(zs::near_cycle_type(a, NearPerfectMatching::from_pairs({{1, 2}, {3, 4}}, 5)),
                  zs::domain_error);
}

TEST_CASE("one odd part partitions") {
  const auto o5 = zs::one_odd_part_partitions(5);
  REQUIRE(o5.size() == 4);
  CHECK(o5[0].str() == "5");
  CHECK(o5[1].str() == "4,1");
  CHECK(o5[2].str() == "3,2");
  CHECK(o5[3].str() == "2,2,1");

  for (int m = 1; m <= 11; m += 2) {
    std::vector<Partition> expect;
    for (const Partition& lam : zs::enumerate_partitions(m)) {
      int odd = 0;
      for (int i = 0; i < lam.length(); ++i)
        if (lam[i] % 2 == 1) ++odd;
      if (odd == 1) expect.push_back(lam);
    }
    CHECK(zs::one_odd_part_partitions(m) == expect);
  }
  CHECK_THROWS_AS(zs::one_odd_part_partitions(4), zs::domain_error);
}

TEST_CASE("near cycle types realize exactly the one-odd-part labels") {
  for (int n = 2; n <= 4; ++n) {
    const auto all = zs::enumerate_near_matchings(n);
    std::set<std::string> seen;
    for (const auto& x : all)
      for (const auto& y : all) seen.insert(zs::near_cycle_type(x, y).str());
    std::set<std::string> expect;
    for (const Partition& lam : zs::one_odd_part_partitions(2 * n - 1))
      expect.insert(lam.str());
    CHECK(seen == expect);
  }
}

TEST_CASE("odd decomposition dimension count") {
  for (int n = 1; n <= 6; ++n) {
    Int total = 0;
    for (const Partition& lam : zs::one_odd_part_partitions(2 * n - 1))
      total += zs::hook_dim(lam);
    CHECK(total == zs::double_factorial_odd(n));
  }
}

TEST_CASE("lifting near-perfect matchings") {
  CHECK(zs::lift_near(NearPerfectMatching::from_pairs({{1, 2}}, 3)) ==
        PerfectMatching::parse("1 2|3 4"));
  for (int n = 2; n <= 4; ++n) {
    std::set<std::string> images;
    for (const auto& m : zs::enumerate_near_matchings(n)) {
      const auto lifted = zs::lift_near(m);
      CHECK(lifted.partner(2 * n) == m.unmatched());
      for (int v = 1; v < 2 * n; ++v)
        if (v != m.unmatched()) CHECK(lifted.partner(v) == m.partner(v));
      images.insert(lifted.str());
    }
    CHECK(Int(images.size()) == zs::double_factorial_odd(n));
  }
}

TEST_CASE("lift is an isomorphism between the two derangement graphs") {
  for (int n = 3; n <= 4; ++n) {
    const auto all = zs::enumerate_near_matchings(n);
    std::vector<PerfectMatching> lifted;
    lifted.reserve(all.size());
    for (const auto& m : all) lifted.push_back(zs::lift_near(m));
    for (int t = 1; t <= 2; ++t) {
      for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
          const Partition dp = zs::near_cycle_type(all[i], all[j]);
          const bool thetaEdge = dp.multiplicity(1) + dp.multiplicity(2) < t;
          const bool gammaEdge =
              zs::cycle_type(lifted[i], lifted[j]).unit_parts() < t;
          CHECK(thetaEdge == gammaEdge);
          // The graph with fewer parts of size exactly 2 contains the other.
          if (thetaEdge) CHECK(dp.multiplicity(2) < t);
        }
    }
  }
}
