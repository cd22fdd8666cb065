#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "bfly/errors.hpp"
#include "bfly/tower.hpp"

using namespace bfly;

namespace {

std::vector<Fq2> all_elements(const QuadExt& e) {
  std::vector<Fq2> v;
  for (std::uint32_t k = 0; k < e.size(); ++k) v.push_back(e.from_index(k));
  return v;
}

}  // namespace

TEST(Tower, GammaSquared) {
  const QuadExt e{FieldSpec(3)};
  EXPECT_EQ(e.mul(QuadExt::gamma(), QuadExt::gamma()), (Fq2{1, 1}));
  EXPECT_EQ(e.pow(QuadExt::gamma(), 3), QuadExt::one());
  for (const Fq2 z : all_elements(e)) EXPECT_EQ(e.mul(z, QuadExt::one()), z);
}

TEST(Tower, FieldAxiomsExhaustiveAtThree) {
  const QuadExt e{FieldSpec(3)};
  const auto els = all_elements(e);
  for (const Fq2 x : els) {
    if (!x.is_zero()) {
      ASSERT_EQ(e.mul(x, e.inv(x)), QuadExt::one());
    }
    for (const Fq2 y : els) {
      ASSERT_EQ(e.mul(x, y), e.mul(y, x));
      for (const Fq2 z : els) {
        ASSERT_EQ(e.mul(e.mul(x, y), z), e.mul(x, e.mul(y, z)));
        ASSERT_EQ(e.mul(x, y + z), e.mul(x, y) + e.mul(x, z));
      }
    }
  }
  EXPECT_THROW(e.inv(Fq2{}), DomainError);
}

TEST(Tower, MultiplicativeGroupIsCyclic) {
  for (unsigned n : {3u, 5u}) {
    const QuadExt e{FieldSpec(n)};
    const std::uint32_t order = e.size() - 1;
    bool found = false;
    for (std::uint32_t k = 1; k < e.size() && !found; ++k) {
      const Fq2 g = e.from_index(k);
      std::set<std::uint32_t> seen;
      Fq2 acc = QuadExt::one();
      for (std::uint32_t j = 0; j < order; ++j, acc = e.mul(acc, g)) seen.insert(e.index(acc));
      found = seen.size() == order;
    }
    EXPECT_TRUE(found) << n;
  }
}

TEST(Tower, FrobeniusIsTheQthPower) {
  for (unsigned n : {3u, 5u}) {
    const QuadExt e{FieldSpec(n)};
    const auto els = all_elements(e);
    std::mt19937 rng(3);
    for (const Fq2 z : els) {
      ASSERT_EQ(e.frobenius(z), e.pow(z, e.q()));
      ASSERT_EQ(e.pow(z, std::uint64_t{e.q()} * e.q()), z);
      ASSERT_EQ(e.frobenius(z) == z, z.in_base_field());
      ASSERT_EQ(e.norm(z), e.mul(z, e.frobenius(z)).u);
      ASSERT_TRUE(e.mul(z, e.frobenius(z)).in_base_field());
      const Fq2 w = els[rng() % els.size()];
      ASSERT_EQ(e.frobenius(z + w), e.frobenius(z) + e.frobenius(w));
      ASSERT_EQ(e.frobenius(e.mul(z, w)), e.mul(e.frobenius(z), e.frobenius(w)));
    }
  }
}

TEST(Tower, BaseFieldEmbedding) {
  const QuadExt e{FieldSpec(5)};
  const FieldSpec& f = e.base();
  for (Elem a = 0; a < f.q(); ++a) {
    for (Elem b = 0; b < f.q(); ++b) {
      ASSERT_EQ(e.mul(QuadExt::lift(a), QuadExt::lift(b)), QuadExt::lift(f.mul(a, b)));
    }
    for (std::uint32_t k = 0; k < e.size(); k += 7) {
      ASSERT_EQ(e.scale(a, e.from_index(k)), e.mul(QuadExt::lift(a), e.from_index(k)));
    }
  }
}

TEST(Tower, Correspondence) {
  const QuadExt e{FieldSpec(3)};
  EXPECT_EQ(e.correspondence(Fq2{}), (std::pair<Elem, Elem>{0, 0}));
  EXPECT_EQ(e.correspondence(QuadExt::gamma()), (std::pair<Elem, Elem>{0, 1}));
  for (unsigned n : {3u, 5u}) {
    const QuadExt ext{FieldSpec(n)};
    for (const Fq2 z : all_elements(ext)) {
      ASSERT_EQ(ext.correspondence(z), (std::pair<Elem, Elem>{z.u, z.v}));
      ASSERT_EQ(ext.from_bivariate(z.u, z.v), z);
      ASSERT_EQ(ext.from_index(ext.index(z)), z);
    }
  }
}

TEST(Tower, UnitCircle) {
  for (unsigned n : {3u, 5u}) {
    const QuadExt e{FieldSpec(n)};
    const auto circle = e.unit_circle();
    EXPECT_EQ(circle.size(), e.q() + 1);
    std::set<std::uint32_t> direct;
    for (const Fq2 z : all_elements(e)) {
      if (!z.is_zero() && e.pow(z, e.q() + 1) == QuadExt::one()) direct.insert(e.index(z));
    }
    std::set<std::uint32_t> listed;
    for (const Fq2 z : circle) {
      listed.insert(e.index(z));
      EXPECT_TRUE(e.on_unit_circle(z));
    }
    EXPECT_EQ(listed, direct);
    EXPECT_TRUE(listed.count(e.index(QuadExt::one())));

    std::set<std::uint32_t> param;
    for (const Fq2 z : e.unit_circle_parametrized()) param.insert(e.index(z));
    EXPECT_EQ(param, direct);
    std::set<std::uint32_t> by_hand{e.index(QuadExt::one())};
    const Fq2 gq = e.frobenius(QuadExt::gamma());
    for (Elem x = 0; x < e.q(); ++x) {
      by_hand.insert(e.index(e.div(QuadExt::lift(x) + QuadExt::gamma(), QuadExt::lift(x) + gq)));
    }
    EXPECT_EQ(by_hand, direct);
  }
}

TEST(Tower, RejectsEvenDegree) {
  EXPECT_THROW(QuadExt{FieldSpec(4)}, ConfigError);
  EXPECT_THROW(QuadExt{FieldSpec(6)}, ConfigError);
  EXPECT_NO_THROW(QuadExt{FieldSpec(9)});
}
