#include <gtest/gtest.h>

#include "nfspectral/markers.hpp"
#include "support.hpp"

using namespace nfs;

namespace {

const RingSpec K2 = RingSpec::local_series(2);

AElement A(int s, int d, int q, const std::string& c = "1") { return AElement(K2, ATerm{s, d, q}, RingElem::parse(c, K2)); }

TEST(Marker, TextRoundTrip) {
  for (Marker m : {Marker::Zero, Marker::Ideal, Marker::Unit, Marker::Any}) EXPECT_EQ(parse_marker(to_string(m)), m);
  EXPECT_EQ(to_string(Marker::Unit), "R\\m");
  EXPECT_THROW((void)parse_marker("x"), std::invalid_argument);
}

TEST(EngineMarkers, SupOne) {
  const auto v = A(0, 0, 1) + A(2, 0, 0) + A(2, 0, 1, "l");
  const auto nf = unique_normal_form(v, 8);
  const auto m = engine_markers(nf.field, 8);
  EXPECT_EQ(m.normal_marker({0, 0, 0}), Marker::Ideal);
  EXPECT_EQ(m.normal_marker({0, 0, 1}), Marker::Unit);
  EXPECT_EQ(m.normal_marker({2, 0, 0}), Marker::Unit);
  EXPECT_EQ(m.normal_marker({2, 0, 1}), Marker::Any);
  EXPECT_EQ(m.normal_marker({4, 0, 0}), Marker::Any);
  EXPECT_EQ(m.normal_marker({4, 0, 1}), Marker::Zero);
  EXPECT_EQ(m.normal_marker({6, 0, 0}), Marker::Zero);
  EXPECT_EQ(m.transform_marker({2, 0, 0}), Marker::Any);
  EXPECT_EQ(m.transform_marker({2, 0, 1}), Marker::Zero);
  EXPECT_EQ(m.ideal_count, 1u);
  EXPECT_EQ(m.series.to_string(), "t^2+t^4");
}

TEST(EngineMarkers, IdealBeforeFirstUnit) {
  const auto v = A(0, 0, 1) + A(2, 0, 0, "l") + A(4, 0, 0);
  const auto m = engine_markers(unique_normal_form(v, 10).field, 10);
  EXPECT_EQ(m.normal_marker({2, 0, 0}), Marker::Ideal);
  EXPECT_EQ(m.normal_marker({2, 0, 1}), Marker::Ideal);
  EXPECT_EQ(m.normal_marker({4, 0, 0}), Marker::Unit);
}

TEST(StructureSignature, DetectsChange) {
  const auto base = A(0, 0, 1).residue();
  const auto with = (A(0, 0, 1) + A(2, 0, 0)).residue();
  EXPECT_NE(structure_signature(base, 8), structure_signature(with, 8));
  EXPECT_EQ(structure_signature(with, 8), structure_signature((A(0, 0, 1) + A(2, 0, 0, "3")).residue(), 8));
  EXPECT_TRUE(structure_signature(A(2, 0, 0).residue(), 4).failed);
}

}  // namespace
