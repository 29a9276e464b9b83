#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "dwork/ffield.hpp"
#include "support.hpp"

using namespace dwork;

namespace {

// Schoolbook arithmetic on coefficient vectors, independent of the tables.
struct PolyOracle {
  std::uint32_t p;
  std::vector<std::uint32_t> modulus;  // low to high, monic

  std::vector<std::uint32_t> digits(std::uint32_t a, unsigned f) const {
    std::vector<std::uint32_t> d(f);
    for (unsigned i = 0; i < f; ++i) {
      d[i] = a % p;
      a /= p;
    }
    return d;
  }
  std::uint32_t encode(const std::vector<std::uint32_t>& d) const {
    std::uint32_t v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
    return v;
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b, unsigned f) const {
    auto x = digits(a, f), y = digits(b, f);
    for (unsigned i = 0; i < f; ++i) x[i] = (x[i] + y[i]) % p;
    return encode(x);
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b, unsigned f) const {
    auto x = digits(a, f), y = digits(b, f);
    std::vector<std::uint64_t> prod(2 * f, 0);
    for (unsigned i = 0; i < f; ++i)
      for (unsigned j = 0; j < f; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % p;
    for (std::size_t k = 2 * f - 1; k >= f; --k) {
      const std::uint64_t c = prod[k];
      if (c == 0) continue;
      for (unsigned i = 0; i <= f; ++i) prod[k - f + i] = (prod[k - f + i] + (p - modulus[i]) * c) % p;
    }
    std::vector<std::uint32_t> r(f);
    for (unsigned i = 0; i < f; ++i) r[i] = static_cast<std::uint32_t>(prod[i]);
    return encode(r);
  }
};

class FieldAxioms : public ::testing::TestWithParam<std::pair<std::uint32_t, unsigned>> {};

}  // namespace

TEST_P(FieldAxioms, TablesMatchPolynomialArithmetic) {
  const auto [p, f] = GetParam();
  const FieldCtx F = FieldCtx::build(p, f);
  PolyOracle o{p, {}};
  if (f > 1) {
    o.modulus.assign(F.modulus().begin(), F.modulus().end());
  } else {
    o.modulus = {0, 1};
  }
  for (Elem a = 0; a < F.q(); ++a) {
    for (Elem b = 0; b < F.q(); ++b) {
      ASSERT_EQ(F.add(a, b), f > 1 ? o.add(a, b, f) : (a + b) % p);
      ASSERT_EQ(F.mul(a, b), f > 1 ? o.mul(a, b, f) : (std::uint64_t{a} * b) % p);
      ASSERT_EQ(F.add(F.sub(a, b), b), a);
      if (b != 0) {
        ASSERT_EQ(F.mul(F.div(a, b), b), a);
      }
    }
  }
}

TEST_P(FieldAxioms, GeneratorHasFullOrder) {
  const auto [p, f] = GetParam();
  const FieldCtx F = FieldCtx::build(p, f);
  std::set<Elem> seen;
  Elem x = 1;
  for (std::uint32_t k = 0; k < F.order(); ++k) {
    EXPECT_EQ(F.exp(k), x);
    EXPECT_EQ(F.dlog(x), k);
    seen.insert(x);
    x = F.mul(x, F.generator());
  }
  EXPECT_EQ(x, 1u);
  EXPECT_EQ(seen.size(), F.order());
}

TEST_P(FieldAxioms, TraceIsAdditiveAndFrobeniusStable) {
  const auto [p, f] = GetParam();
  const FieldCtx F = FieldCtx::build(p, f);
  for (Elem a = 0; a < F.q(); ++a) {
    EXPECT_EQ(F.trace(F.pow(a, p)), F.trace(a));
    EXPECT_EQ(absolute_trace(F, a), F.trace(a));
    for (Elem b = 0; b < F.q(); b += 3) EXPECT_EQ(F.trace(F.add(a, b)), (F.trace(a) + F.trace(b)) % p);
  }
  // the trace is onto F_p
  std::set<std::uint32_t> values;
  for (Elem a = 0; a < F.q(); ++a) values.insert(F.trace(a));
  EXPECT_EQ(values.size(), p);
}

INSTANTIATE_TEST_SUITE_P(SmallFields, FieldAxioms,
                         ::testing::Values(std::pair{7u, 1u}, std::pair{11u, 1u}, std::pair{2u, 3u}, std::pair{3u, 2u},
                                           std::pair{2u, 4u}, std::pair{5u, 2u}, std::pair{3u, 3u}));

TEST(Field, ArithDispatch) {
  const FieldCtx F = FieldCtx::build(13);
  EXPECT_EQ(field_arith(F, 5, 9, ArithOp::add), 1u);
  EXPECT_EQ(field_arith(F, 5, 9, ArithOp::sub), 9u);
  EXPECT_EQ(field_arith(F, 5, 9, ArithOp::mul), 6u);
  EXPECT_EQ(field_arith(F, 6, 9, ArithOp::div), 5u);
  EXPECT_EQ(field_arith(F, 2, 12, ArithOp::pow), 1u);
  EXPECT_EQ(F.from_int(-1), 12u);
  EXPECT_EQ(F.pow(3, -1), F.inv(3));
}

TEST(Field, DefaultModulusIsSmallestIrreducible) {
  // x^2 + 1 is irreducible over F_3 and is the first monic quadratic tried
  const FieldCtx F = FieldCtx::build(3, 2);
  EXPECT_EQ(std::vector<std::uint32_t>(F.modulus().begin(), F.modulus().end()), (std::vector<std::uint32_t>{1, 0, 1}));
  // x^2 + x + 1 over F_2
  const FieldCtx G = FieldCtx::build(2, 2);
  EXPECT_EQ(std::vector<std::uint32_t>(G.modulus().begin(), G.modulus().end()), (std::vector<std::uint32_t>{1, 1, 1}));
}

TEST(Field, ExplicitModulus) {
  const FieldCtx F = FieldCtx::build(2, 3, std::vector<std::uint32_t>{1, 0, 1, 1});
  EXPECT_EQ(F.q(), 8u);
  PolyOracle o{2, {1, 0, 1, 1}};
  for (Elem a = 0; a < 8; ++a)
    for (Elem b = 0; b < 8; ++b) EXPECT_EQ(F.mul(a, b), o.mul(a, b, 3));
}

TEST(Field, Errors) {
  EXPECT_EQ(errc_of([] { FieldCtx::build(9); }), Errc::NonPrimeP);
  EXPECT_EQ(errc_of([] { FieldCtx::build(2, 2, std::vector<std::uint32_t>{1, 0, 1}); }), Errc::ReducibleModulus);
  EXPECT_EQ(errc_of([] { FieldCtx::build(101, 4, std::nullopt, 1000); }), Errc::TableCapExceeded);
  const FieldCtx F = FieldCtx::build(7);
  EXPECT_EQ(errc_of([&] { F.inv(0); }), Errc::DivisionByZero);
  EXPECT_EQ(errc_of([&] { F.div(3, 0); }), Errc::DivisionByZero);
  EXPECT_EQ(errc_of([&] { F.dlog(0); }), Errc::ZeroArgument);
}

TEST(Extension, EmbeddingIsAFieldHomomorphism) {
  for (auto [p, f, r] : {std::tuple{11u, 1u, 2u}, std::tuple{2u, 2u, 2u}, std::tuple{3u, 1u, 3u}, std::tuple{5u, 1u, 2u}}) {
    const FieldCtx base = FieldCtx::build(p, f);
    const Extension ext = make_extension(base, r);
    ASSERT_EQ(ext.field.q(), static_cast<std::uint32_t>(std::pow(base.q(), r)));
    std::set<Elem> image;
    for (Elem a = 0; a < base.q(); ++a) {
      image.insert(ext.embed(a));
      for (Elem b = 0; b < base.q(); ++b) {
        EXPECT_EQ(ext.embed(base.add(a, b)), ext.field.add(ext.embed(a), ext.embed(b)));
        EXPECT_EQ(ext.embed(base.mul(a, b)), ext.field.mul(ext.embed(a), ext.embed(b)));
      }
      // image lies in the subfield fixed by x -> x^q
      EXPECT_EQ(ext.field.pow(ext.embed(a), base.q()), ext.embed(a));
    }
    EXPECT_EQ(image.size(), base.q());
    // dlog compatibility: dlog(embed(g)) is a multiple of (Q-1)/(q-1)
    const std::uint32_t step = ext.field.order() / base.order();
    EXPECT_EQ(ext.field.dlog(ext.embed(base.generator())) % step, 0u);
    EXPECT_EQ(subfield_embed(base, ext.field, base.generator()), ext.embed(base.generator()));
  }
}

TEST(Extension, PrimeFieldConstantsStayPut) {
  const FieldCtx base = FieldCtx::build(11);
  const Extension ext = make_extension(base, 2);
  for (Elem a = 0; a < 11; ++a) EXPECT_EQ(ext.embed(a), a);
}

TEST(NumberTheory, PrimesAndDivisors) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(29));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(91));
  EXPECT_EQ(prime_factors(120), (std::vector<std::uint64_t>{2, 3, 5}));
  EXPECT_EQ(divisors(28), (std::vector<std::uint64_t>{1, 2, 4, 7, 14, 28}));
}
