#include <gtest/gtest.h>

#include <set>

#include "nfspectral/engine.hpp"
#include "nfspectral/oracle.hpp"
#include "support.hpp"

using namespace nfs;
using nfs::testkit::dense_field;
using nfs::testkit::rotation;

namespace {

const RingSpec QQ = RingSpec::rationals();

AElement A(int s, int d, int q, const Rational& c = 1) { return AElement::term(QQ, s, d, q, c); }

QVector unit(int p, const ATerm& t) {
  QVector v(grade_dim(p));
  v[grade_index(t)] = 1;
  return v;
}

std::vector<QVector> axis(int p) { return {unit(p, {p, 0, 0}), unit(p, {p, 0, 1})}; }

Echelon span(const std::vector<QVector>& vs, int p) { return row_reduce(vs, grade_dim(p)); }

bool same_span(const std::vector<QVector>& a, const std::vector<QVector>& b, int p) {
  const auto ea = span(a, p), eb = span(b, p);
  return ea.rows == eb.rows;
}

TEST(FirstPage, Rotation) {
  const PageState s = first_page(rotation(), 6);
  EXPECT_EQ(s.page, 1);
  for (int p = 0; p <= 6; ++p) {
    if (p % 2 == 0) {
      EXPECT_TRUE(same_span(s.at(p).normal, axis(p), p)) << p;
      EXPECT_TRUE(same_span(s.at(p).transforms, axis(p), p)) << p;
    } else {
      EXPECT_EQ(s.dim_normal(p), 0u);
      EXPECT_EQ(s.dim_transforms(p), 0u);
    }
  }
}

TEST(FirstPage, EulerField) {
  const PageState s = first_page(A(0, 0, 0) + A(0, 0, 1), 4);
  for (int p = 1; p <= 4; ++p) {
    EXPECT_EQ(s.dim_normal(p), 0u);
    EXPECT_EQ(s.dim_transforms(p), 0u);
  }
}

TEST(FirstPage, Errors) {
  EXPECT_THROW((void)first_page(A(2, 0, 0), 4), EngineError);
  EXPECT_THROW((void)first_page(A(-1, -1, 0) + rotation(), 4), EngineError);
  try {
    (void)first_page(A(0, 0, 1) + A(0, -2, 1), 4);  // nilpotent linear part
    FAIL() << "expected an error";
  } catch (const EngineError& e) {
    EXPECT_NE(std::string(e.what()).find("non-semisimple"), std::string::npos);
  }
}

TEST(FirstPage, AgreesWithOracle) {
  for (const auto& v : {rotation(), rotation() * Rational(3), A(0, 0, 0) + A(0, 0, 1, 2), A(0, -2, 0)}) {
    const PageState s = first_page(v, 6);
    for (int p = 0; p <= 6; ++p) {
      const auto fp = oracle::brute_force_first_page(v.graded_part(0), p);
      EXPECT_TRUE(same_span(s.at(p).transforms, fp.kernel, p));
      EXPECT_TRUE(same_span(s.at(p).image, fp.image, p));
    }
  }
}

// Differential d : T_{2p} -> N_{2p+2r} at page 2r, for A[0,0,1] + b0 A[2r,0,0] + b1 A[2r,0,1].
QMatrix axis_differential(int r, int p, const Rational& b0, const Rational& b1) {
  AElement v = rotation();
  v.add(2 * r, 0, 0, RingElem(QQ, b0));
  v.add(2 * r, 0, 1, RingElem(QQ, b1));
  const PageState s = compute_pages(v, 2 * p + 2 * r, 2 * r);
  return differential(s, 2 * p);
}

TEST(Differential, AxisMatrix) {
  for (int r = 1; r <= 2; ++r)
    for (int p = r + 1; p <= 4; ++p)
      for (auto [b0, b1] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {1, 1}, {2, 3}}) {
        const QMatrix m = axis_differential(r, p, b0, b1);
        ASSERT_EQ(m.rows, 2u);
        ASSERT_EQ(m.cols, 2u);
        EXPECT_EQ(m(0, 0), 2 * (p - r) * b0);
        EXPECT_EQ(m(0, 1), 0);
        EXPECT_EQ(m(1, 0), -2 * r * b1);
        EXPECT_EQ(m(1, 1), 2 * p * b0);
      }
}

TEST(Differential, AxisInstance) {
  const QMatrix m = axis_differential(1, 2, 3, 5);
  EXPECT_EQ(m, QMatrix::from_rows({{2 * 3, 0}, {-2 * 5, 4 * 3}}, 2));
}

TEST(Differential, RankByUnits) {
  for (int p = 2; p <= 4; ++p) {
    EXPECT_EQ(rank(axis_differential(1, p, 1, 0)), 2u);
    EXPECT_EQ(rank(axis_differential(1, p, 0, 1)), 1u);
  }
}

TEST(TurnPage, AgreesWithBruteForce) {
  std::vector<AElement> fields = {rotation() + A(2, 0, 0), rotation() + A(2, 0, 1), rotation() + A(4, 0, 0) + A(2, 0, 1),
                                  dense_field(6)};
  for (int i = 0; i < 2; ++i) fields.push_back(dense_field(6));
  for (const auto& v : fields) {
    PageState s = first_page(v, 6);
    for (int r = 1; r <= 5; ++r) {
      const auto brute = oracle::brute_force_pages(v, 6, r);
      for (int p = 1; p + r <= 6; ++p) {
        EXPECT_TRUE(same_span(s.at(p).transforms, brute[static_cast<std::size_t>(p)].transforms, p))
            << v.to_string() << " r=" << r << " p=" << p;
        EXPECT_TRUE(same_span(s.at(p).image, brute[static_cast<std::size_t>(p)].images, p))
            << v.to_string() << " r=" << r << " p=" << p;
      }
      turn_page(s);
    }
  }
}

TEST(TurnPage, ZeroDifferentialIsIdentity) {
  PageState s = first_page(rotation(), 8);
  const PageState before = s;
  turn_page(s);
  EXPECT_EQ(s.page, 2);
  for (int p = 0; p <= 8; ++p) {
    EXPECT_EQ(s.at(p).normal, before.at(p).normal);
    EXPECT_EQ(s.at(p).transforms, before.at(p).transforms);
  }
}

TEST(TurnPage, UnitBetaCollapses) {
  const int r = 1;
  PageState s = compute_pages(rotation() + A(2 * r, 0, 0), 10, 2 * r + 1);
  EXPECT_TRUE(same_span(s.at(4 * r).normal, {unit(4 * r, {4 * r, 0, 0})}, 4 * r));
  for (int p = r + 1; 2 * p <= 10; ++p)
    if (p != 2 * r) {
      EXPECT_EQ(s.dim_normal(2 * p), 0u) << p;
    }
}

TEST(TurnPage, UnitBetaOneKeepsRotationalTransforms) {
  PageState s = compute_pages(rotation() + A(2, 0, 1), 10, 3);
  for (int p = 1; 2 * p + 2 <= 10; ++p) EXPECT_TRUE(same_span(s.at(2 * p).transforms, {unit(2 * p, {2 * p, 0, 1})}, 2 * p));
}

TEST(TurnPage, Monotone) {
  const auto v = rotation() + A(2, 0, 1) + A(4, 0, 0) + A(4, 2, 0) + A(3, 1, 1);
  PageState s = first_page(v, 10);
  for (int r = 1; r <= 10; ++r) {
    const PageState before = s;
    turn_page(s);
    for (int p = 0; p <= 10; ++p) {
      EXPECT_LE(s.dim_normal(p), before.dim_normal(p));
      EXPECT_LE(s.dim_transforms(p), before.dim_transforms(p));
    }
  }
}

TEST(ExpAd, Examples) {
  EXPECT_EQ(exp_ad(A(2, 0, 0), rotation(), 6), rotation());
  EXPECT_EQ(exp_ad(A(1, 1, 0), rotation(), 4), rotation() - A(1, 1, 1));
  EXPECT_THROW((void)exp_ad(A(0, 0, 0), rotation(), 4), EngineError);
}

TEST(ExpAd, LambdaScaling) {
  const RingSpec k3 = RingSpec::local_series(3);
  const auto lam = RingElem::lambda(k3);
  const AElement t = lam * AElement::term(k3, 1, 1, 0);
  const AElement v = rotation(k3) + AElement::term(k3, 2, 2, 1);
  const AElement w = exp_ad(t, v, 6);
  EXPECT_EQ(w.residue(), v.residue());
  EXPECT_EQ((w - v).degree_range(1, 1), lam * bracket(AElement::term(k3, 1, 1, 0), rotation(k3)));
}

TEST(ExpAd, KeepsLowerDegrees) {
  for (int i = 0; i < 10; ++i) {
    const auto v = dense_field(6);
    const auto t = testkit::random_element(QQ, 3, 4, 3);
    const auto w = exp_ad(t, v, 6);
    EXPECT_EQ(w.truncated(2), v.truncated(2));
    EXPECT_EQ(w.degree_range(3, 3), v.degree_range(3, 3) + bracket_at(t, v, 3));
  }
}

TEST(NormalizeDegree, OddTermRemoved) {
  PageState s = first_page(rotation() + A(1, 1, 0), 4);
  normalize_degree(s, 1);
  EXPECT_TRUE(s.field.graded_part(1).is_zero());
  EXPECT_TRUE(degree_is_normalized(s, 1));
}

TEST(NormalizeDegree, KernelTermSurvives) {
  PageState s = first_page(rotation() + A(2, 0, 0), 4);
  normalize_degree(s, 1);
  turn_page(s);
  normalize_degree(s, 2);
  EXPECT_EQ(s.field.graded_part(2), A(2, 0, 0));
}

TEST(NormalizeDegree, DegreeFourSupport) {
  const auto nf = unique_normal_form(rotation() + A(2, 0, 0) + A(4, 0, 0) + A(4, 0, 1), 6);
  const AElement part = nf.field.graded_part(4);
  for (const auto& [t, c] : part.terms()) EXPECT_EQ(t, (ATerm{4, 0, 0}));
  EXPECT_TRUE(nf.field.graded_part(4).coefficient({4, 0, 1}).is_zero());
}

TEST(NormalizeDegree, RequiresPage) {
  PageState s = first_page(rotation() + A(2, 0, 0), 4);
  EXPECT_ANY_THROW(normalize_degree(s, 3));
}

TEST(NormalizeDegree, PreservesLowerDegrees) {
  for (int i = 0; i < 5; ++i) {
    PageState s = first_page(dense_field(8), 8);
    for (int n = 1; n <= 8; ++n) {
      const AElement below = s.field.truncated(n - 1);
      normalize_degree(s, n);
      EXPECT_EQ(s.field.truncated(n - 1), below);
      EXPECT_TRUE(degree_is_normalized(s, n));
      turn_page(s);
    }
  }
}

TEST(UniqueNormalForm, LinearField) {
  const auto nf = unique_normal_form(rotation(), 8);
  EXPECT_EQ(nf.field, rotation());
  EXPECT_TRUE(nf.log.empty());
  for (int p = 2; p <= 8; p += 2) EXPECT_TRUE(same_span(nf.state.at(p).transforms, axis(p), p));
}

TEST(UniqueNormalForm, SupRSupport) {
  const auto nf = unique_normal_form(rotation() + A(2, 0, 0) + A(3, 1, 0) + A(4, 2, 1) + A(6, 0, 1), 10);
  const std::set<ATerm> allowed = {{0, 0, 1}, {2, 0, 0}, {2, 0, 1}, {4, 0, 0}};
  const AElement residue = nf.field.residue();
  for (const auto& [t, c] : residue.terms()) EXPECT_TRUE(allowed.count(t)) << t.to_string();
}

TEST(UniqueNormalForm, SubRInfSupport) {
  const auto nf = unique_normal_form(rotation() + A(2, 0, 1) + A(4, 0, 1) + A(6, 2, 0) + A(5, 1, 1), 10);
  const AElement residue = nf.field.residue();
  for (const auto& [t, c] : residue.terms())
    EXPECT_TRUE(t == (ATerm{0, 0, 1}) || t == (ATerm{2, 0, 1})) << t.to_string();
}

TEST(UniqueNormalForm, Idempotent) {
  for (int i = 0; i < 4; ++i) {
    const auto v = dense_field(10);
    const auto once = unique_normal_form(v, 10);
    const auto twice = unique_normal_form(once.field, 10);
    EXPECT_EQ(twice.field, once.field);
    EXPECT_TRUE(twice.log.empty());
  }
}

TEST(UniqueNormalForm, IdempotentOverLocalRing) {
  const RingSpec k3 = RingSpec::local_series(3);
  for (int i = 0; i < 2; ++i) {
    const auto v = dense_field(8, k3);
    const auto once = unique_normal_form(v, 8);
    const auto twice = unique_normal_form(once.field, 8);
    EXPECT_EQ(twice.field.residue(), once.field.residue());
  }
}

TEST(UniqueNormalForm, ConjugateFieldsAgree) {
  // A transformed field has the same normal form.
  for (int i = 0; i < 3; ++i) {
    const auto v = dense_field(8);
    const auto t = testkit::random_element(QQ, 1, 4, 6);
    EXPECT_EQ(unique_normal_form(exp_ad(t, v, 8), 8).field, unique_normal_form(v, 8).field);
  }
}

TEST(UniqueNormalForm, GeneratorBookkeeping) {
  const auto v = dense_field(8);
  const auto nf = unique_normal_form(v, 8);
  const AElement vbar = nf.field.residue();
  for (const auto& g : nf.log) {
    EXPECT_GE(g.degree, 1);
    EXPECT_EQ(*g.element.min_degree(), g.degree);
    const auto low = bracket(vbar.truncated(g.page - 1), g.element.residue()).truncated(g.degree + g.page - 1);
    EXPECT_TRUE(low.is_zero()) << "degree " << g.degree << " page " << g.page;
  }
}

TEST(PageSeries, Examples) {
  const auto v = rotation() + A(2, 0, 0);
  EXPECT_TRUE(page_series(first_page(v, 12), 12).is_zero());
  EXPECT_TRUE(page_series(compute_pages(v, 12, 0), 12).is_zero());
  const auto nf = unique_normal_form(v, 10);
  Polynomial expected;
  expected.add(2, 1);
  expected.add(4, 1);
  EXPECT_EQ(page_series(nf.state, 8), expected);
  // T_10 has no differential inside the truncation and keeps its page-1 span
  EXPECT_EQ(nf.state.dim_transforms(10), 2u);
  EXPECT_EQ(expected.to_string(), "t^2+t^4");
  EXPECT_EQ(expected.at_one(), 2);
}

TEST(Stability, NothingChangesBeyondTruncation) {
  PageState s = unique_normal_form(dense_field(6), 6).state;
  const PageState before = s;
  turn_page(s);
  for (int p = 0; p <= 6; ++p) {
    EXPECT_EQ(s.at(p).normal, before.at(p).normal);
    EXPECT_EQ(s.at(p).transforms, before.at(p).transforms);
  }
  EXPECT_EQ(s.field, before.field);
}

}  // namespace
