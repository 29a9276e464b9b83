#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "dwork/charsums.hpp"
#include "support.hpp"

using namespace dwork;
using cd = std::complex<double>;

namespace {

// Direct evaluations with std::polar, sharing nothing with CharTable but the field.
struct Oracle {
  const FieldCtx& F;

  std::uint32_t trace(Elem x) const {
    Elem acc = 0, y = x;
    for (unsigned i = 0; i < F.f(); ++i) {
      acc = F.add(acc, y);
      y = F.pow(y, F.p());
    }
    EXPECT_LT(acc, F.p());  // lands in the prime field
    return acc;
  }
  cd psi(Elem x) const { return std::polar(1.0, 2 * std::numbers::pi * trace(x) / F.p()); }
  cd chi(std::uint32_t a, Elem x) const {
    const double k = static_cast<double>((std::uint64_t{a} * F.dlog(x)) % F.order());
    return std::polar(1.0, 2 * std::numbers::pi * k / F.order());
  }
  cd gauss(std::uint32_t a) const {
    cd s = 0;
    for (Elem x = 1; x < F.q(); ++x) s += chi(a, x) * psi(x);
    return s;
  }
  cd jacobi2(std::uint32_t a, std::uint32_t b) const {
    cd s = 0;
    for (Elem x = 1; x < F.q(); ++x) {
      const Elem y = F.sub(1, x);
      if (y != 0) s += chi(a, x) * chi(b, y);
    }
    return s;
  }
};

class CharSums : public ::testing::TestWithParam<std::pair<std::uint32_t, unsigned>> {};

}  // namespace

TEST_P(CharSums, GaussSumsMatchDirectSum) {
  const auto [p, f] = GetParam();
  const CharTable t(FieldCtx::build(p, f));
  const Oracle o{t.field()};
  for (std::uint32_t a = 0; a < t.order(); ++a) {
    const cd want = o.gauss(a);
    const CycValue got = t.gauss(t.character(a));
    EXPECT_NEAR(std::abs(got.value() - want), 0.0, 1e-9) << "a = " << a;
    EXPECT_LE(std::abs(got.value() - want), got.err() + 1e-9);
    if (a == 0) {
      EXPECT_NEAR(got.re(), -1.0, 1e-12);
    } else {
      EXPECT_NEAR(std::norm(got.value()), static_cast<double>(t.q()), 1e-8);
    }
  }
}

TEST_P(CharSums, JacobiSumsMatchDirectSum) {
  const auto [p, f] = GetParam();
  const CharTable t(FieldCtx::build(p, f));
  const Oracle o{t.field()};
  for (std::uint32_t a = 0; a < t.order(); a += 1 + t.order() / 7) {
    for (std::uint32_t b = 0; b < t.order(); b += 1 + t.order() / 5) {
      const MultChar pair[] = {t.character(a), t.character(b)};
      const cd want = o.jacobi2(a, b);
      EXPECT_NEAR(std::abs(jacobi_sum(t, pair).value() - want), 0.0, 1e-9);
      EXPECT_NEAR(std::abs(t.jacobi_from_gauss(pair).value() - want), 0.0, 1e-8) << a << "," << b;
    }
  }
}

TEST_P(CharSums, IdentitySuitePasses) {
  const auto [p, f] = GetParam();
  const CharTable t(FieldCtx::build(p, f));
  const IdentityReport r = identity_suite(t, 1e-9, 7);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.checks.size(), 8u);
  for (const auto& c : r.checks) {
    EXPECT_LT(c.max_residual, 1e-9) << c.name;
    EXPECT_GT(c.evaluations, 0u) << c.name;
  }
  EXPECT_NO_THROW(require_passed(r));
}

INSTANTIATE_TEST_SUITE_P(Fields, CharSums,
                         ::testing::Values(std::pair{7u, 1u}, std::pair{13u, 1u}, std::pair{3u, 2u}, std::pair{2u, 4u},
                                           std::pair{31u, 1u}, std::pair{5u, 2u}));

TEST(CharSums, ThreeFoldJacobiBothRoutes) {
  const CharTable t(FieldCtx::build(11));
  for (std::uint32_t a : {1u, 2u, 5u})
    for (std::uint32_t b : {0u, 3u, 7u})
      for (std::uint32_t c : {4u, 9u}) {
        const MultChar chis[] = {t.character(a), t.character(b), t.character(c)};
        const CycValue direct = jacobi_direct(t, chis);
        EXPECT_NEAR(std::abs(direct.value() - t.jacobi_from_gauss(chis).value()), 0.0, 1e-9);
      }
  const MultChar trivial[] = {t.character(0), t.character(0), t.character(0)};
  // (q-1)^3 + 1 over q points with all coordinates nonzero
  EXPECT_NEAR(jacobi_direct(t, trivial).re(), (1000.0 + 1.0) / 11.0, 1e-9);
}

TEST(CharSums, CharacterAlgebra) {
  const CharTable t(FieldCtx::build(29));
  const MultChar chi = t.order_n(7);
  EXPECT_EQ(chi.order(), 7u);
  EXPECT_TRUE(chi.pow(7).trivial());
  EXPECT_EQ(chi * chi.inverse(), t.character(0));
  EXPECT_EQ(t.order_n_exponent(7), 4u);
  for (Elem x = 1; x < 29; ++x) {
    for (Elem y = 1; y < 29; ++y) {
      const cd lhs = t.mult(chi, t.field().mul(x, y)).value();
      const cd rhs = (t.mult(chi, x) * t.mult(chi, y)).value();
      EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12);
    }
  }
}

TEST(CharSums, Rounding) {
  EXPECT_EQ(round_to_integer(CycValue({41.9999999999, 1e-12}, 1e-12), 1e-6), 42);
  EXPECT_EQ(errc_of([] { round_to_integer(CycValue({41.9, 0.0}, 0.0), 1e-6); }), Errc::RoundingFailure);
  EXPECT_EQ(errc_of([] { round_to_integer(CycValue({42.0, 0.5}, 0.5), 1e-6); }), Errc::RoundingFailure);
  EXPECT_EQ(errc_of([] { round_to_integer(CycValue({42.0, 0.1}, 0.0), 1e-6); }), Errc::RoundingFailure);
  EXPECT_NEAR(rounding_residual(CycValue({3.25, 0.0}, 0.01)), 0.25, 1e-12);
  // a loose bound on a large value does not block rounding once it certifies the integer
  EXPECT_EQ(round_to_integer(CycValue({-5191319.9999999888, 1e-9}, 5e-6), 1e-6), -5191320);
  EXPECT_EQ(errc_of([] { round_to_integer(CycValue({7.0, 0.0}, 0.6), 1e-6); }), Errc::RoundingFailure);
}

TEST(CharSums, CompensatedSumTracksError) {
  CycSum s;
  for (int i = 0; i < 100000; ++i) s.add(CycValue({0.1, -0.1}, 0.0));
  const CycValue v = s.total();
  EXPECT_NEAR(v.re(), 10000.0, 1e-9);
  EXPECT_NEAR(v.im(), -10000.0, 1e-9);
  EXPECT_GE(v.err(), 0.0);
}

TEST(CharSums, Errors) {
  const CharTable t(FieldCtx::build(11));
  EXPECT_EQ(errc_of([&] { t.order_n(3); }), Errc::OrderUnavailable);
  EXPECT_EQ(errc_of([&] { t.mult(t.character(1), 0); }), Errc::ZeroArgument);
  EXPECT_EQ(errc_of([&] { jacobi_sum(t, {}); }), Errc::EmptyList);
  EXPECT_EQ(errc_of([&] { identity_suite(t, 0.0); }), Errc::InvalidArgument);
  EXPECT_EQ(errc_of([] { CharTable(FieldCtx::build(101, 3), 1000); }), Errc::TableCapExceeded);
  EXPECT_EQ(errc_of([] { CycValue::exact(1.0) / CycValue({1e-3, 0.0}, 1.0); }), Errc::DivisionByZero);
}
