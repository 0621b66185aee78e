#include <gtest/gtest.h>

#include "nfspectral/coeff.hpp"
#include "support.hpp"

using namespace nfs;
using nfs::testkit::q;
using nfs::testkit::random_elem;

namespace {

const RingSpec K3 = RingSpec::local_series(3);

TEST(RingMul, DifferenceOfSquares) {
  EXPECT_EQ(q(K3, "1 + l") * q(K3, "1 - l"), q(K3, "1 - l^2"));
}

TEST(RingMul, IdentityAndTruncation) {
  const auto x = q(K3, "3/2 + 1/4*l^2");
  EXPECT_EQ(x * q(K3, "1"), x);
  const RingSpec k2 = RingSpec::local_series(2);
  EXPECT_TRUE((q(k2, "l") * q(k2, "l")).is_zero());
  EXPECT_EQ(ring_mul(q(k2, "l"), q(k2, "l")), RingElem(k2));
}

TEST(RingMul, SpecMismatchThrows) {
  EXPECT_THROW((void)(q(K3, "1") * q(RingSpec::local_series(2), "1")), RingError);
  EXPECT_THROW((void)(q(K3, "1") + q(RingSpec::rationals(), "1")), RingError);
}

TEST(IsUnit, Examples) {
  EXPECT_TRUE(is_unit(q(K3, "1 + l")));
  EXPECT_FALSE(is_unit(q(K3, "l")));
  EXPECT_FALSE(is_unit(RingElem(K3)));
}

TEST(Invert, Examples) {
  EXPECT_EQ(invert(q(RingSpec::rationals(), "2")), q(RingSpec::rationals(), "1/2"));
  EXPECT_EQ(invert(q(K3, "1 + l")), q(K3, "1 - l + l^2"));
  EXPECT_EQ(q(K3, "1 + l") * invert(q(K3, "1 + l")), q(K3, "1"));
}

TEST(Invert, NonUnitThrows) {
  try {
    (void)invert(q(K3, "l"));
    FAIL() << "expected an error";
  } catch (const RingError& e) {
    EXPECT_NE(std::string(e.what()).find("not invertible"), std::string::npos);
  }
}

TEST(Residue, Examples) {
  EXPECT_EQ(residue(q(K3, "3 + 5*l")), 3);
  EXPECT_EQ(residue(q(K3, "l")), 0);
}

TEST(TextForm, RoundTrip) {
  const RingSpec k4 = RingSpec::local_series(4);
  for (const char* text : {"0", "1", "-2/3", "3/2 + 1/4*l^2", "l", "-l^3", "1/2 - 7*l + l^3"}) {
    const auto x = q(k4, text);
    EXPECT_EQ(RingElem::parse(x.to_string(), k4), x) << text;
  }
  EXPECT_EQ(q(k4, "3/2 + 1/4*l^2").to_string(), "3/2 + 1/4*l^2");
}

TEST(TextForm, Rejects) {
  EXPECT_THROW((void)q(K3, "1/0"), RingError);
  EXPECT_THROW((void)q(RingSpec::rationals(), "l"), RingError);
  EXPECT_THROW((void)q(K3, "2*x"), RingError);
}

TEST(TextForm, PowersBeyondKVanish) {
  EXPECT_TRUE(q(K3, "l^3").is_zero());
  EXPECT_EQ(RingElem::lambda(K3, 3), RingElem(K3));
}

TEST(DivideByLambda, ShiftsCoefficients) {
  EXPECT_EQ(q(K3, "2*l - l^2").divided_by_lambda(), q(K3, "2 - l"));
}

// Property checks on random elements.
class RingProperties : public ::testing::TestWithParam<int> {};

TEST_P(RingProperties, Axioms) {
  const RingSpec spec = RingSpec::local_series(GetParam());
  for (int i = 0; i < 200; ++i) {
    const auto a = random_elem(spec), b = random_elem(spec), c = random_elem(spec);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a + b, b + a);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST_P(RingProperties, UnitsAndResidue) {
  const RingSpec spec = RingSpec::local_series(GetParam());
  for (int i = 0; i < 200; ++i) {
    const auto a = random_elem(spec), b = random_elem(spec);
    EXPECT_EQ(is_unit(a * b), is_unit(a) && is_unit(b));
    EXPECT_EQ(residue(a * b), residue(a) * residue(b));
    if (is_unit(a)) {
      EXPECT_EQ(a * invert(a), q(spec, "1"));
      EXPECT_EQ(invert(a) * a, q(spec, "1"));
    }
  }
}

TEST_P(RingProperties, Valuation) {
  const int k = GetParam();
  const RingSpec spec = RingSpec::local_series(k);
  for (int i = 0; i < 200; ++i) {
    auto a = random_elem(spec) * RingElem::lambda(spec, nfs::testkit::uniform(0, k - 1));
    auto b = random_elem(spec) * RingElem::lambda(spec, nfs::testkit::uniform(0, k - 1));
    if (a.is_zero() || b.is_zero()) continue;
    const int expected = std::min(*a.valuation() + *b.valuation(), k);
    const auto prod = a * b;
    EXPECT_EQ(prod.valuation().value_or(k), expected);
  }
}

INSTANTIATE_TEST_SUITE_P(Orders, RingProperties, ::testing::Values(1, 2, 3, 5));

}  // namespace
