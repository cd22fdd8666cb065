#include <gtest/gtest.h>

#include <random>
#include <set>

#include "bfly/analysis.hpp"
#include "bfly/equivalence.hpp"
#include "bfly/errors.hpp"
#include "oracles.hpp"

using namespace bfly;

namespace {

const QuadExt& ext3() {
  static const QuadExt e{FieldSpec(3)};
  return e;
}
const QuadExt& ext5() {
  static const QuadExt e{FieldSpec(5)};
  return e;
}

}  // namespace

TEST(LinMap, InvertibleExactlyWhenCoefficientsDiffer) {
  for (Elem a = 0; a < 8; ++a) {
    for (Elem b = 0; b < 8; ++b) {
      const LinMapQ2 l{a, b};
      std::size_t kernel = 0;
      std::set<std::uint32_t> image;
      for (std::uint32_t k = 0; k < 64; ++k) {
        const Fq2 y = l.apply(ext3(), ext3().from_index(k));
        kernel += y.is_zero();
        image.insert(ext3().index(y));
      }
      ASSERT_EQ(l.invertible(), kernel == 1) << a << " " << b;
      ASSERT_EQ(image.size() * kernel, 64u);
    }
  }
}

TEST(GoldConstruct, IdentityMapsGivePowerMap) {
  for (unsigned i : {1u, 2u}) {
    const Sbox g = gold_construct(ext3(), i, {0, 1}, {0, 1});
    const std::uint64_t e = (1u << i) + (i % 2 ? 8u : 1u);
    EXPECT_EQ(gold_exponent(ext3(), i), e);
    EXPECT_EQ(g, sbox_from_univariate(UnivariatePoly({{QuadExt::one(), e}}), ext3()));
  }
}

TEST(GoldConstruct, Errors) {
  EXPECT_THROW(gold_construct(ext3(), 1, {2, 2}, {0, 1}), PreconditionError);
  EXPECT_THROW(gold_construct(ext3(), 1, {0, 1}, {5, 5}), PreconditionError);
  EXPECT_THROW(gold_construct(ext3(), 3, {0, 1}, {0, 1}), ConfigError);
  EXPECT_THROW(find_gold_match(ext3(), 1, Sbox::identity(4)), PreconditionError);
}

// Coefficients expanded by hand, checked against the constructed table for every map pair.
TEST(GoldConstruct, CoefficientTableMatchesExpansion) {
  for (unsigned i : {1u, 2u}) {
    for (std::uint32_t code = 0; code < 4096; ++code) {
      const LinMapQ2 l1{code & 7, (code >> 3) & 7}, l2{(code >> 6) & 7, (code >> 9) & 7};
      if (!l1.invertible() || !l2.invertible()) continue;
      const Sbox g = gold_construct(ext3(), i, l1, l2);
      ASSERT_TRUE(g.is_permutation());
      const auto eps = gold_coefficients(ext3().base(), i, l1, l2);
      ASSERT_EQ(g, sbox_from_univariate(univariate_polynomial(ext3(), i, eps), ext3())) << i << " " << code;
    }
  }
}

TEST(GoldConstruct, EvenCoefficientFormulas) {
  const FieldSpec& f = ext5().base();
  std::mt19937 rng(3);
  for (int k = 0; k < 200; ++k) {
    const Elem A = rng() % 32u, B = rng() % 32u, C = rng() % 32u, D = rng() % 32u;
    const Elem At1 = f.pow(A, 5), Bt1 = f.pow(B, 5);
    const auto eps = gold_coefficients(f, 2, {A, B}, {C, D});
    EXPECT_EQ(eps[0], f.mul(At1, D) ^ f.mul(Bt1, C));
    EXPECT_EQ(eps[3], f.mul(At1, C) ^ f.mul(Bt1, D));
  }
  EXPECT_EQ(gold_coefficients(f, 2, {0, 1}, {0, 1}), (std::array<Elem, 4>{0, 0, 0, 1}));
}

TEST(GoldPhi, HoldsForEveryMapPairAtThree) {
  for (unsigned i : {1u, 2u}) {
    std::size_t n = 0;
    for (std::uint32_t code = 0; code < 4096; ++code) {
      const LinMapQ2 l1{code & 7, (code >> 3) & 7}, l2{(code >> 6) & 7, (code >> 9) & 7};
      if (!l1.invertible() || !l2.invertible()) continue;
      ASSERT_TRUE(gold_phi_check(ext3().base(), i, l1, l2)) << i << " " << code;
      ++n;
    }
    EXPECT_EQ(n, 3136u);
  }
}

TEST(GoldPhi, SampledAtFive) {
  std::mt19937 rng(5);
  for (unsigned i : {1u, 2u, 3u, 4u}) {
    for (int k = 0; k < 1000; ++k) {
      const LinMapQ2 l1{Elem(rng() % 32), Elem(rng() % 32)}, l2{Elem(rng() % 32), Elem(rng() % 32)};
      if (!l1.invertible() || !l2.invertible()) continue;
      ASSERT_TRUE(gold_phi_check(ext5().base(), i, l1, l2));
    }
  }
}

TEST(GoldConstruct, AffineInvariance) {
  for (unsigned i : {1u, 2u}) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (std::uint32_t code = 0; code < 4096; code += 7) {
      const LinMapQ2 l1{code & 7, (code >> 3) & 7}, l2{(code >> 6) & 7, (code >> 9) & 7};
      if (!l1.invertible() || !l2.invertible()) continue;
      const Sbox g = gold_construct(ext3(), i, l1, l2);
      seen.emplace(differential_uniformity(g), boomerang_uniformity(g));
    }
    EXPECT_EQ(seen, (std::set<std::pair<std::uint32_t, std::uint32_t>>{{4, 4}}));
  }
  std::mt19937 rng(6);
  for (int k = 0; k < 3; ++k) {
    const LinMapQ2 l1{Elem(rng() % 32), Elem(rng() % 32)}, l2{Elem(rng() % 32), Elem(rng() % 32)};
    if (!l1.invertible() || !l2.invertible()) continue;
    const Sbox g = gold_construct(ext5(), 1, l1, l2);
    EXPECT_EQ(differential_uniformity(g), 4u);
    EXPECT_TRUE(quadratic_boomerang4_check(g));
  }
}

TEST(GoldSearch, EveryMemberAtThree) {
  for (unsigned i : {1u, 2u}) {
    for (const auto& [a, b] : gamma_members(ext3(), i)) {
      const ButterflyParams p(ext3(), i, a, b);
      const GoldSearchResult r = find_gold_equivalence(p);
      ASSERT_TRUE(r.witness.has_value()) << i << " " << a << " " << b;
      EXPECT_TRUE(replay_gold_witness(p, *r.witness));
      EXPECT_EQ(r.witness->alpha, a);
      EXPECT_EQ(r.witness->probes, gold_probe_points(ext3()));
      const Sbox g = gold_construct(ext3(), i, r.witness->l1, r.witness->l2);
      EXPECT_EQ(scale_sbox(ext3(), g, QuadExt::gamma(), ext3().sqr(QuadExt::gamma())), closed_butterfly(p));
    }
  }
}

TEST(GoldSearch, WitnessIsLexicographicallySmallest) {
  const ButterflyParams p(ext3(), 2, 1, 1);
  const Sbox target = univariate_sbox(p);
  std::vector<std::array<Elem, 4>> all;
  for (std::uint32_t code = 0; code < 4096; ++code) {
    const LinMapQ2 l1{(code >> 9) & 7, (code >> 6) & 7}, l2{(code >> 3) & 7, code & 7};
    if (!l1.invertible() || !l2.invertible()) continue;
    if (gold_construct(ext3(), 2, l1, l2) == target) all.push_back({l1.a, l1.b, l2.a, l2.b});
  }
  ASSERT_FALSE(all.empty());
  const GoldSearchResult r = find_gold_equivalence(p, 1, true);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ((std::array<Elem, 4>{r.witness->l1.a, r.witness->l1.b, r.witness->l2.a, r.witness->l2.b}), all.front());
  EXPECT_EQ(r.witness_count, all.size());
  EXPECT_EQ(r.witness->witness_count, all.size());
  const GoldSearchResult par = find_gold_equivalence(p, 3, true);
  EXPECT_EQ(par.witness_count, r.witness_count);
  EXPECT_EQ(par.witness->l1.a, r.witness->l1.a);
  EXPECT_EQ(par.witness->l2.b, r.witness->l2.b);
}

TEST(GoldSearch, SampledAtFive) {
  for (unsigned i : {1u, 4u}) {
    const auto members = gamma_members(ext5(), i);
    for (std::size_t k = 0; k < members.size(); k += 10) {
      const ButterflyParams p(ext5(), i, members[k].first, members[k].second);
      const GoldSearchResult r = find_gold_equivalence(p);
      ASSERT_TRUE(r.witness);
      EXPECT_TRUE(replay_gold_witness(p, *r.witness));
    }
  }
}

TEST(GoldSearch, NegativeControl) {
  // A quadratic permutation with differential uniformity above 4 cannot match.
  std::optional<Sbox> bad;
  for (std::uint32_t code = 0; code < 4096 && !bad; ++code) {
    const std::array<Elem, 4> eps{code & 7, (code >> 3) & 7, (code >> 6) & 7, (code >> 9) & 7};
    Sbox s = sbox_from_univariate(univariate_polynomial(ext3(), 1, eps), ext3());
    if (s.is_permutation() && differential_uniformity(s) > 4) bad = s;
  }
  ASSERT_TRUE(bad.has_value());
  const GoldSearchResult r = find_gold_match(ext3(), 1, *bad, 1, true);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_EQ(r.witness_count, 0u);

  EXPECT_FALSE(find_gold_match(ext3(), 1, inverse_sbox(FieldSpec(6))).witness.has_value());
  EXPECT_THROW(find_gold_equivalence(ButterflyParams(ext3(), 1, 1, 2)), PreconditionError);
}

TEST(GoldSearch, ReplayRejectsWrongWitness) {
  const ButterflyParams p(ext3(), 1, 1, 1);
  GoldWitness w = *find_gold_equivalence(p).witness;
  EXPECT_TRUE(replay_gold_witness(p, w));
  GoldWitness other = w;
  other.l2.b ^= 1;
  if (other.l2.invertible()) {
    EXPECT_FALSE(replay_gold_witness(p, other));
  }
  other = w;
  other.i = 2;
  EXPECT_FALSE(replay_gold_witness(p, other));
  other = w;
  other.l1 = {3, 3};
  EXPECT_FALSE(replay_gold_witness(p, other));
}

TEST(ReferenceFamilies, InverseOnSixBits) {
  const FieldSpec f(6);
  const Sbox s = inverse_sbox(f);
  EXPECT_EQ(s[0], 0u);
  for (Elem x = 1; x < 64; ++x) ASSERT_EQ(f.mul(x, s[x]), 1u);
  EXPECT_EQ(boomerang_uniformity(s), 4u);
  EXPECT_EQ(boomerang_summary(bct_via_system(s)).max_value, 4u);
}

TEST(ReferenceFamilies, GoldPower) {
  // x^5: a permutation with boomerang uniformity 4 on GF(64), APN on GF(8).
  const Sbox g6 = gold_power_sbox(FieldSpec(6), 1);
  EXPECT_TRUE(g6.is_permutation());
  EXPECT_EQ(boomerang_uniformity(g6), 4u);
  const Sbox g3 = gold_power_sbox(FieldSpec(3), 1);
  EXPECT_TRUE(g3.is_permutation());
  EXPECT_EQ(differential_uniformity(g3), 2u);
}

TEST(ReferenceFamilies, Trinomial) {
  const FieldSpec f(6);
  const Elem alpha = first_primitive(f);
  ASSERT_TRUE(f.is_primitive(alpha));
  const Sbox s = mesnager_trinomial_sbox(f, 1, 2, alpha);
  ASSERT_TRUE(s.is_permutation());
  EXPECT_EQ(boomerang_uniformity(s), 4u);
  for (Elem x = 0; x < 64; ++x) {
    const Elem direct = f.mul(alpha, f.pow(x, 17)) ^ f.mul(f.pow(alpha, 4), f.pow(x, (1u << 4) + (1u << 6)));
    ASSERT_EQ(s[x], direct);
  }
}

TEST(ReferenceFamilies, TrinomialValidation) {
  const FieldSpec f6(6);
  const Elem g = first_primitive(f6);
  EXPECT_THROW(mesnager_trinomial_sbox(f6, 3, 3, g), PreconditionError);
  EXPECT_THROW(mesnager_trinomial_sbox(f6, 1, 1, g), PreconditionError);
  EXPECT_THROW(mesnager_trinomial_sbox(f6, 1, 3 * 9 - 1, g), PreconditionError);
  EXPECT_THROW(mesnager_trinomial_sbox(FieldSpec(12), 2, 4, first_primitive(FieldSpec(12))), PreconditionError);
  EXPECT_THROW(mesnager_trinomial_sbox(FieldSpec(8), 1, 2, first_primitive(FieldSpec(8))), PreconditionError);
  Elem non_primitive = 1;
  EXPECT_FALSE(f6.is_primitive(non_primitive));
  EXPECT_THROW(mesnager_trinomial_sbox(f6, 1, 2, non_primitive), PreconditionError);
  EXPECT_NO_THROW(mesnager_trinomial_sbox(FieldSpec(12), 2, 1, first_primitive(FieldSpec(12))));
}
