#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "dwork/acceptance.hpp"
#include "dwork/orbits.hpp"
#include "dwork/report.hpp"
#include "support.hpp"

using namespace dwork;

namespace {

// All sorted zero-sum n-tuples, grouped into orbits by brute force.
struct OrbitOracle {
  unsigned n;
  std::vector<Residues> tuples;
  std::map<Residues, std::size_t> index;
  std::vector<std::size_t> parent;

  explicit OrbitOracle(unsigned n_) : n(n_) {
    Residues cur;
    gen(cur, 0);
    for (std::size_t i = 0; i < tuples.size(); ++i) index[tuples[i]] = i;
    parent.resize(tuples.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      for (unsigned j = 0; j < n; ++j)
        for (unsigned k = 1; k < n; ++k) unite(i, index.at(act(tuples[i], j, k)));
    }
  }
  void gen(Residues& cur, int lo) {
    if (cur.size() == n) {
      if (std::accumulate(cur.begin(), cur.end(), 0) % static_cast<int>(n) == 0) tuples.push_back(cur);
      return;
    }
    for (int b = lo; b < static_cast<int>(n); ++b) {
      cur.push_back(b);
      gen(cur, b);
      cur.pop_back();
    }
  }
  Residues act(const Residues& s, unsigned j, unsigned k) const {
    Residues t(n);
    for (unsigned i = 0; i < n; ++i) t[i] = static_cast<int>((k * static_cast<unsigned>(s[i]) + j) % n);
    std::sort(t.begin(), t.end());
    return t;
  }
  std::size_t find(std::size_t i) { return parent[i] == i ? i : parent[i] = find(parent[i]); }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }

  std::map<std::size_t, Residues> orbit_minima() {
    std::map<std::size_t, Residues> out;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      auto [it, fresh] = out.emplace(find(i), tuples[i]);
      if (!fresh) it->second = std::min(it->second, tuples[i]);
    }
    return out;
  }
  unsigned K(const Residues& s) const {
    unsigned count = 0;
    for (unsigned k = 1; k < n; ++k) {
      for (unsigned j = 0; j < n; ++j) {
        if (act(s, j, k) == s) {
          ++count;
          break;
        }
      }
    }
    return count;
  }
};

std::uint64_t multinomial(const Residues& s, unsigned n) {
  std::vector<unsigned> k(n, 0);
  for (int b : s) ++k[b];
  std::uint64_t r = 1;
  unsigned placed = 0;
  for (unsigned b = 0; b < n; ++b) {
    for (unsigned i = 1; i <= k[b]; ++i) {
      ++placed;
      r = r * placed / i;
    }
  }
  return r;
}

// Largest even m' <= m - 2 reachable by arranging v and w freely.
unsigned brute_max_pairing(Residues v, Residues w, unsigned n) {
  const unsigned m = static_cast<unsigned>(v.size());
  unsigned best = 0;
  std::sort(v.begin(), v.end());
  do {
    Residues ww = w;
    std::sort(ww.begin(), ww.end());
    do {
      unsigned paired = 0;
      while (paired + 2 <= m - 2) {
        const int a = ww[paired] - v[paired], b = ww[paired + 1] - v[paired + 1];
        if (((a + b) % static_cast<int>(n) + static_cast<int>(n)) % static_cast<int>(n) != 0) break;
        paired += 2;
      }
      best = std::max(best, paired);
    } while (std::next_permutation(ww.begin(), ww.end()));
  } while (std::next_permutation(v.begin(), v.end()));
  return best;
}

class Classes : public ::testing::TestWithParam<unsigned> {};

}  // namespace

TEST_P(Classes, MatchBruteForceOrbits) {
  const unsigned n = GetParam();
  OrbitOracle o(n);
  const auto minima = o.orbit_minima();
  const auto classes = enumerate_classes(n);
  ASSERT_EQ(classes.size(), minima.size());
  std::set<Residues> want;
  for (const auto& [root, rep] : minima) want.insert(rep);
  for (const auto& c : classes) {
    EXPECT_TRUE(want.count(c.rep)) << residues_string(c.rep);
    EXPECT_EQ(c.gamma, multinomial(c.rep, n));
    EXPECT_EQ(c.K, o.K(c.rep));
    EXPECT_EQ(c.kprofile, kprofile_of(c.rep, n));
    EXPECT_EQ(c.m, n - c.nprime);
  }
}

TEST_P(Classes, PartitionIdentity) {
  const unsigned n = GetParam();
  const auto classes = enumerate_classes(n);
  std::uint64_t want = 1;
  for (unsigned i = 0; i < n - 2; ++i) want *= n;
  EXPECT_EQ(partition_total(classes), want);
}

TEST_P(Classes, CanonicalRepIsOrbitInvariant) {
  const unsigned n = GetParam();
  for (const auto& c : enumerate_classes(n)) {
    for (unsigned k = 1; k < n; ++k) {
      Residues t(n);
      for (unsigned i = 0; i < n; ++i) t[i] = static_cast<int>((k * static_cast<unsigned>(c.rep[i]) + 3) % n);
      std::reverse(t.begin(), t.end());
      EXPECT_EQ(canonical_rep(t, n), c.rep);
    }
  }
}

TEST_P(Classes, RecordsAreSelfConsistent) {
  const unsigned n = GetParam();
  const auto classes = enumerate_classes(n);
  EXPECT_EQ(classes[0].special, SpecialClass::zero);
  EXPECT_EQ(classes[1].special, SpecialClass::full);
  std::uint64_t fact = 1;
  for (unsigned i = 2; i < n; ++i) fact *= i;
  EXPECT_EQ(classes[1].ordered_classes, fact);
  for (const auto& c : classes) {
    if (c.special != SpecialClass::none) {
      EXPECT_FALSE(c.pairing);
      EXPECT_FALSE(c.hyper);
      continue;
    }
    ASSERT_TRUE(c.pairing && c.d && c.hyper);
    const auto& pr = *c.pairing;
    EXPECT_EQ(pr.v.size(), c.m);
    EXPECT_EQ(pr.w.size(), c.m);
    EXPECT_EQ(pr.mprime % 2, 0u);
    EXPECT_LE(pr.mprime + 2, c.m);
    EXPECT_GE(static_cast<int>(pr.mprime), 2 * static_cast<int>(c.m) - static_cast<int>(n) + 1);
    EXPECT_EQ(*c.d, static_cast<int>(2 * c.m - pr.mprime) - 3);
    for (unsigned i = 0; i + 1 < pr.mprime; i += 2) {
      const int s = pr.w[i] - pr.v[i] + pr.w[i + 1] - pr.v[i + 1];
      EXPECT_EQ(((s % static_cast<int>(n)) + static_cast<int>(n)) % static_cast<int>(n), 0);
    }
    if (c.m <= 5) {
      EXPECT_EQ(pr.mprime, brute_max_pairing(pr.v, pr.w, n)) << residues_string(c.rep);
    }
    EXPECT_EQ(c.hyper->l, c.m);
    EXPECT_EQ(c.hyper->k, 2 * c.m - pr.mprime - 2);
    EXPECT_NO_THROW(validate(*c.hyper));
    // the pairing is for the multiset v/w of the class
    auto [v, w] = vw_sequences(c.kprofile);
    auto sv = pr.v, sw = pr.w;
    std::sort(sv.begin(), sv.end());
    std::sort(sw.begin(), sw.end());
    EXPECT_EQ(sv, v);
    EXPECT_EQ(sw, w);
  }
}

INSTANTIATE_TEST_SUITE_P(Primes, Classes, ::testing::Values(5u, 7u, 11u));

TEST(Classes, QuinticDisplaysMatchPublishedCurves) {
  const auto classes = enumerate_classes(5);
  ASSERT_EQ(classes.size(), 4u);
  ASSERT_TRUE(classes[2].display && classes[3].display);
  EXPECT_EQ(*classes[2].display, published_quintic_A());
  EXPECT_EQ(*classes[3].display, published_quintic_B());
  EXPECT_EQ(to_string(*classes[2].display), "y^5 = x^2 (1-x)^3 (1-L*x)^2");
}

TEST(Classes, SepticMultipliers) {
  std::vector<std::uint64_t> got;
  for (const auto& c : enumerate_classes(7)) {
    if (c.special == SpecialClass::none) got.push_back(c.gamma / c.K);
  }
  EXPECT_EQ(got, (std::vector<std::uint64_t>{420, 630, 630, 70, 420, 210, 21, 105, 70, 105}));
}

TEST(Pairings, MaximalPairingsAreAllMaximal) {
  for (const auto& c : enumerate_classes(7)) {
    if (c.special != SpecialClass::none) continue;
    const auto [v, w] = vw_sequences(c.kprofile);
    const unsigned best = max_pairing_size(v, w, 7);
    EXPECT_EQ(best, brute_max_pairing(v, w, 7));
    const auto all = maximal_pairings(v, w, 7, 1000);
    EXPECT_FALSE(all.empty());
    for (const auto& p : all) {
      EXPECT_EQ(p.mprime, best);
      auto sv = p.v, sw = p.w;
      std::sort(sv.begin(), sv.end());
      std::sort(sw.begin(), sw.end());
      EXPECT_EQ(sv, v);
      EXPECT_EQ(sw, w);
    }
    EXPECT_TRUE(std::find(all.begin(), all.end(), max_pairing(v, w, 7)) != all.end());
  }
}

TEST(Pairings, Errors) {
  EXPECT_EQ(errc_of([] { enumerate_classes(9); }), Errc::NotPrime);
  EXPECT_EQ(errc_of([] { enumerate_classes(17); }), Errc::NTooLarge);
  EXPECT_EQ(errc_of([] { enumerate_classes(3); }), Errc::InvalidArgument);
  EXPECT_EQ(errc_of([] { make_class_record(Residues{0, 0, 0, 1, 1}, 5); }), Errc::InvalidArgument);
  EXPECT_EQ(errc_of([] { max_pairing(Residues{1}, Residues{0}, 5); }), Errc::InvalidArgument);
}
