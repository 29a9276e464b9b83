#include <gtest/gtest.h>

#include "dwork/counting.hpp"
#include "dwork/zeta.hpp"
#include "support.hpp"

using namespace dwork;

namespace {

std::vector<BigInt> powers(std::int64_t q, unsigned R) {
  std::vector<BigInt> out;
  BigInt v = 1;
  for (unsigned r = 1; r <= R; ++r) {
    v *= q;
    out.push_back(v);
  }
  return out;
}

// Coefficients of prod_{i=0}^{d} 1/(1 - q^i t) up to t^R by direct convolution.
std::vector<BigInt> projective_series(std::int64_t q, unsigned d, unsigned R) {
  std::vector<BigInt> c(R + 1, 0);
  c[0] = 1;
  BigInt qi = 1;
  for (unsigned i = 0; i <= d; ++i) {
    for (unsigned k = 1; k <= R; ++k) c[k] += qi * c[k - 1];
    qi *= q;
  }
  return c;
}

std::vector<Rational> as_rationals(const std::vector<BigInt>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Zeta, PointAffineLineAndProjectiveSpace) {
  const std::vector<BigInt> ones(5, 1);
  EXPECT_EQ(zeta_from_counts(BigInt(7), ones).coeffs, as_rationals(std::vector<BigInt>(6, 1)));

  const auto line = zeta_from_counts(BigInt(7), powers(7, 5));
  EXPECT_EQ(line.integer_coeffs(), (std::vector<BigInt>{1, 7, 49, 343, 2401, 16807}));

  for (unsigned n : {3u, 5u, 7u}) {
    const std::int64_t q = 11;
    std::vector<BigInt> counts;
    for (unsigned r = 1; r <= 4; ++r) {
      BigInt qr = 1, s = 0;
      for (unsigned i = 0; i < r; ++i) qr *= q;
      BigInt term = 1;
      for (unsigned i = 0; i + 1 < n; ++i) {
        s += term;
        term *= qr;
      }
      counts.push_back(s);
    }
    const ZetaSeries z = zeta_from_counts(BigInt(q), counts);
    EXPECT_EQ(z.integer_coeffs(), projective_series(q, n - 2, 4));
    const ZetaSeries s = strip_trivial(z, n);
    EXPECT_EQ(s.integer_coeffs(), (std::vector<BigInt>{1, 0, 0, 0, 0}));
  }
}

TEST(Zeta, RoundTripAndRestore) {
  const std::vector<std::int64_t> counts{2550, 1969300};
  const ZetaSeries z = zeta_from_counts(11, counts);
  const auto back = counts_from_series(z.coeffs);
  EXPECT_EQ(back, (std::vector<BigInt>{2550, 1969300}));
  const ZetaSeries s = strip_trivial(z, 5);
  EXPECT_TRUE(s.integral());
  EXPECT_EQ(restore_trivial(s, 5).coeffs, z.coeffs);
  EXPECT_EQ(s.integer_coeffs(), (std::vector<BigInt>{1, 1086, 681186}));
}

TEST(Zeta, CurveCountsGiveIntegralSeries) {
  // Counts of the projective quintic over F_11, F_121 from the library.
  const FieldCtx F = FieldCtx::build(11);
  for (Elem psi : {2u, 6u}) {
    const std::vector<std::int64_t> counts{static_cast<std::int64_t>(*count_dwork(F, 5, psi).projective),
                                           static_cast<std::int64_t>(*count_dwork_over(F, 2, 5, psi).projective)};
    EXPECT_TRUE(strip_trivial(zeta_from_counts(11, counts), 5).integral());
  }
}

TEST(Zeta, NonIntegralSeriesIsReported) {
  const std::vector<std::int64_t> counts{1, 2};  // not the counts of any variety over F_5
  const ZetaSeries z = zeta_from_counts(5, counts);
  EXPECT_FALSE(z.integral());
  EXPECT_EQ(errc_of([&] { z.integer_coeffs(); }), Errc::NonIntegral);
  std::vector<Rational> bad{Rational(1), Rational(1, 2)};
  EXPECT_EQ(errc_of([&] { counts_from_series(bad); }), Errc::NonIntegral);
  std::vector<Rational> no_one{Rational(2)};
  EXPECT_EQ(errc_of([&] { counts_from_series(no_one); }), Errc::InvalidArgument);
}

TEST(Zeta, DegreeFormula) {
  EXPECT_EQ(r_degree(3), 0);
  EXPECT_EQ(r_degree(5), 200);
  EXPECT_EQ(r_degree(7), 39984);
  EXPECT_EQ(errc_of([] { r_degree(2); }), Errc::InvalidArgument);
  EXPECT_EQ(to_string(Rational(3, 4)), "3/4");
  EXPECT_EQ(to_string(Rational(-6, 3)), "-2");
}
