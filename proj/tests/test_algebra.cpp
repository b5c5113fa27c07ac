#include <gtest/gtest.h>

#include "serret/algebra.hpp"
#include "serret/division.hpp"

using namespace serret;

namespace {

std::vector<long> as_longs(const IntegerRelation& r) {
  std::vector<long> out;
  for (const auto& c : r) out.push_back(c.get_si());
  return out;
}

std::vector<long> negated(std::vector<long> v) {
  for (auto& x : v) x = -x;
  return v;
}

BigReal golden_ratio() { return (BigReal(1) + sqrt(BigReal(5))) / BigReal(2); }

BigReal lemniscate_half(const PrecisionContext& ctx) { return division_s(Erdos{2}, 2, 1, ctx).x; }

}  // namespace

TEST(Pslq, RationalRelation) {
  const auto ctx = make_context(30);
  const PrecisionScope scope(ctx);
  const auto rel = pslq({BigReal(1), BigReal(3)}, 100, ctx);
  ASSERT_TRUE(rel);
  EXPECT_EQ(as_longs(*rel), (std::vector<long>{3, -1}));
}

TEST(Pslq, GoldenRatio) {
  const auto ctx = make_context(40);
  const PrecisionScope scope(ctx);
  const BigReal phi = golden_ratio();
  const auto rel = pslq({BigReal(1), phi, phi * phi}, 1000, ctx);
  ASSERT_TRUE(rel);
  EXPECT_EQ(as_longs(*rel), (std::vector<long>{1, 1, -1}));
}

TEST(Pslq, LemniscateDivisionRadius) {
  const auto ctx = make_context(60);
  const PrecisionScope scope(ctx);
  const BigReal s = lemniscate_half(ctx);
  std::vector<BigReal> powers{BigReal(1)};
  for (int i = 1; i <= 4; ++i) powers.push_back(powers.back() * s);
  const auto rel = pslq(powers, 1000, ctx);
  ASSERT_TRUE(rel);
  const std::vector<long> expected{-1, 0, 2, 0, 1};
  const auto got = as_longs(*rel);
  EXPECT_TRUE(got == expected || got == negated(expected));

  // Re-evaluate at 120 digits.
  const auto wide = make_context(120);
  const PrecisionScope wide_scope(wide);
  const BigReal s_wide = lemniscate_half(wide);
  EXPECT_LT(abs(evaluate_polynomial(*rel, s_wide)), pow10(-110));
}

TEST(Pslq, ZeroEntryGivesUnitVector) {
  const auto ctx = make_context(30);
  const PrecisionScope scope(ctx);
  const auto rel = pslq({BigReal(2), BigReal(0), pi()}, 100, ctx);
  ASSERT_TRUE(rel);
  EXPECT_EQ(as_longs(*rel), (std::vector<long>{0, 1, 0}));
}

TEST(Pslq, PrecisionBudgetIsConfigurationError) {
  const auto ctx = make_context(30);
  const PrecisionScope scope(ctx);
  std::vector<BigReal> xs(6, BigReal(1));
  EXPECT_THROW(pslq(xs, 1000000, ctx), ConfigurationError);
  EXPECT_THROW(pslq({}, 10, ctx), DomainError);
}

TEST(Pslq, NoRelationForIndependentConstants) {
  const auto ctx = make_context(50);
  const PrecisionScope scope(ctx);
  const auto rel = pslq({BigReal(1), pi(), exp(BigReal(1)), log(BigReal(2))}, 1000, ctx);
  EXPECT_FALSE(rel);
}

TEST(Pslq, RelationsAreNonZeroAndPersist) {
  const auto ctx = make_context(40);
  const PrecisionScope scope(ctx);
  const BigReal c = cos(pi() / BigReal(7));
  std::vector<BigReal> powers{BigReal(1)};
  for (int i = 1; i <= 3; ++i) powers.push_back(powers.back() * c);
  const auto rel = pslq(powers, 100, ctx);
  ASSERT_TRUE(rel);
  bool nonzero = false;
  for (const auto& v : *rel) nonzero = nonzero || v != 0;
  EXPECT_TRUE(nonzero);
  const auto wide = make_context(80);
  const PrecisionScope wide_scope(wide);
  EXPECT_LT(abs(evaluate_polynomial(*rel, cos(pi() / BigReal(7)))), pow10(-static_cast<long>(1.6 * 40) + 10));
}

TEST(MinPoly, RationalLiteral) {
  const auto ctx = make_context(30);
  const PrecisionScope scope(ctx);
  const auto cand = minpoly(BigReal(3) / BigReal(7), 4, 1000, ctx);
  ASSERT_EQ(cand.status, MinPolyStatus::found);
  EXPECT_EQ(cand.degree, 1);
  EXPECT_EQ(polynomial_text(cand.coeffs), "7x - 3");
  EXPECT_EQ(cand.verification, "skipped");
}

TEST(MinPoly, HalfSqrtTwoVerified) {
  const auto ctx = make_context(50);
  const auto cand = minpoly([](const PrecisionContext& c) {
    const PrecisionScope scope(c);
    return sqrt(BigReal(2)) / BigReal(2);
  }, 4, 10000, ctx);
  ASSERT_EQ(cand.status, MinPolyStatus::found);
  EXPECT_EQ(polynomial_text(cand.coeffs), "2x^2 - 1");
  EXPECT_EQ(cand.verification, "passed");
  EXPECT_EQ(cand.height, 2);
}

TEST(MinPoly, RejectsPi) {
  const auto ctx = make_context(50);
  const auto cand = minpoly([](const PrecisionContext& c) { return pi(c); }, 6, 10000, ctx);
  EXPECT_EQ(cand.status, MinPolyStatus::none);
  EXPECT_EQ(cand.searched_degree, 6);
}

TEST(MinPoly, SpuriousRelationDetected) {
  const auto ctx = make_context(50);
  // A value frozen at 50 digits looks algebraic at 50 digits but not beyond.
  std::string frozen;
  {
    const PrecisionScope scope(ctx);
    frozen = to_decimal(sqrt(BigReal(2)), 50);
  }
  const auto producer = [frozen](const PrecisionContext& c) {
    const PrecisionScope scope(c);
    return BigReal(frozen);
  };
  EXPECT_THROW(minpoly(producer, 3, 1000, ctx), SpuriousRelationError);
}

TEST(MinPoly, InvariantUnderPrecisionIncrease) {
  const auto producer = [](const PrecisionContext& c) { return lemniscate_half(c); };
  const auto a = minpoly(producer, 6, 100, make_context(40));
  const auto b = minpoly(producer, 6, 100, make_context(80));
  ASSERT_EQ(a.status, MinPolyStatus::found);
  EXPECT_EQ(a.coeffs, b.coeffs);
  EXPECT_EQ(polynomial_text(a.coeffs), "x^4 + 2x^2 - 1");
}

TEST(MinPoly, CassiniHalfDivision) {
  const auto ctx = make_context(100);
  const auto cand = minpoly([](const PrecisionContext& c) { return cassini_cos_u(ExactReal::parse("4/5"), 2, c); },
                            8, 1000000, ctx);
  ASSERT_EQ(cand.status, MinPolyStatus::found);
  EXPECT_LE(cand.degree, 8);
  EXPECT_LE(cand.height, 1000000);
  EXPECT_EQ(cand.verification, "passed");
  EXPECT_EQ(polynomial_text(cand.coeffs), "256x^4 - 1512x^2 + 631");
}

TEST(MinPoly, DegreeCappedByPrecision) {
  EXPECT_EQ(max_searchable_degree(1000000, make_context(100)), 12);
  EXPECT_EQ(max_searchable_degree(10000, make_context(50)), 6);
  const auto cand = minpoly([](const PrecisionContext& c) { return pi(c); }, 16, 1000000, make_context(50));
  EXPECT_EQ(cand.status, MinPolyStatus::none);
  EXPECT_EQ(cand.requested_degree, 16);
  EXPECT_EQ(cand.searched_degree, 4);
  EXPECT_THROW(minpoly(BigReal(1), 0, 10, make_context(30)), ConfigurationError);
}

TEST(DegreeBound, CircleFieldDegrees) {
  EXPECT_EQ(documented_degree_bound(Erdos{1}, 2).bound, 4);
  EXPECT_EQ(documented_degree_bound(Erdos{1}, 1).bound, 2);
  EXPECT_EQ(documented_degree_bound(Erdos{1}, 5).bound, 8);
  const auto kiepert = documented_degree_bound(Erdos{3}, 2);
  EXPECT_EQ(kiepert.kind, "configured-cap");
  EXPECT_EQ(kiepert.bound, 16);
  EXPECT_NE(kiepert.field.find("degree <= 2"), std::string::npos);
  EXPECT_EQ(documented_degree_bound(Erdos{2}, 3, 24).bound, 24);
  EXPECT_THROW(documented_degree_bound(Erdos{4}, 2), DomainError);
  EXPECT_THROW(documented_degree_bound(Sinusoidal{1, 2}, 2), DomainError);
}

TEST(Totient, SmallValues) {
  EXPECT_EQ(totient(1), 1);
  EXPECT_EQ(totient(8), 4);
  EXPECT_EQ(totient(12), 4);
  EXPECT_EQ(totient(20), 8);
  EXPECT_EQ(totient(97), 96);
}

TEST(PolynomialText, Formatting) {
  EXPECT_EQ(polynomial_text({mpz_class(-1), mpz_class(0), mpz_class(1)}), "x^2 - 1");
  EXPECT_EQ(polynomial_text({mpz_class(5)}), "5");
  EXPECT_EQ(polynomial_text({mpz_class(0), mpz_class(-1)}), "-x");
}
