#include <gtest/gtest.h>

#include <random>

#include "bfly/errors.hpp"
#include "bfly/field.hpp"
#include "oracles.hpp"

using namespace bfly;

TEST(Field, SmallProducts) {
  const FieldSpec f(3, 0xB);
  EXPECT_EQ(f.mul(0b010, 0b001), 0b010u);
  for (Elem x = 0; x < 8; ++x) EXPECT_EQ(f.mul(0, x), 0u);
  EXPECT_EQ(f.mul(0b010, 0b100), 0b011u);
}

TEST(Field, MultiplicationMatchesSchoolbook) {
  for (unsigned n : {3u, 5u, 6u, 7u}) {
    const FieldSpec f(n);
    for (Elem x = 0; x < f.q(); ++x) {
      for (Elem y = 0; y < f.q(); ++y) {
        ASSERT_EQ(f.mul(x, y), oracle::gf_mul(x, y, n, f.modulus())) << n << " " << x << " " << y;
      }
    }
  }
  const FieldSpec f16(16);
  std::mt19937 rng(7);
  for (int k = 0; k < 20000; ++k) {
    const Elem x = rng() & 0xFFFF, y = rng() & 0xFFFF;
    ASSERT_EQ(f16.mul(x, y), oracle::gf_mul(x, y, 16, f16.modulus()));
  }
}

TEST(Field, LogTableFromGenerator) {
  for (unsigned n : {3u, 5u, 7u}) {
    const FieldSpec f(n);
    Elem g = 0;
    for (Elem c = 2; c < f.q() && g == 0; ++c) {
      if (f.is_primitive(c)) g = c;
    }
    ASSERT_NE(g, 0u);
    std::vector<Elem> antilog(f.order());
    Elem acc = 1;
    for (std::uint32_t k = 0; k < f.order(); ++k, acc = oracle::gf_mul(acc, g, n, f.modulus())) antilog[k] = acc;
    std::vector<bool> seen(f.q(), false);
    for (Elem v : antilog) seen[v] = true;
    for (Elem v = 1; v < f.q(); ++v) ASSERT_TRUE(seen[v]);
    for (std::uint32_t a = 0; a < f.order(); ++a) {
      for (std::uint32_t b = 0; b < f.order(); b += 3) {
        ASSERT_EQ(f.mul(antilog[a], antilog[b]), antilog[(a + b) % f.order()]);
      }
      ASSERT_EQ(f.pow(g, a), antilog[a]);
    }
  }
}

TEST(Field, Inverse) {
  const FieldSpec f(3, 0xB);
  EXPECT_EQ(f.inv(1), 1u);
  Elem t = 0;
  for (Elem c = 1; c < 8; ++c) {
    if (oracle::gf_mul(3, c, 3, 0xB) == 1) t = c;
  }
  EXPECT_EQ(f.inv(3), t);
  for (unsigned n : {3u, 5u, 7u, 12u}) {
    const FieldSpec g(n);
    for (Elem x = 1; x < g.q(); ++x) ASSERT_EQ(g.mul(x, g.inv(x)), 1u);
    EXPECT_THROW(g.inv(0), DomainError);
  }
}

TEST(Field, TraceAgainstOrbitSum) {
  for (unsigned n : {3u, 5u, 7u, 8u}) {
    const FieldSpec f(n);
    EXPECT_EQ(f.trace(0), 0u);
    for (Elem x = 0; x < f.q(); ++x) {
      Elem sum = 0, y = x;
      for (unsigned k = 0; k < n; ++k, y = oracle::gf_mul(y, y, n, f.modulus())) sum ^= y;
      ASSERT_TRUE(sum == 0 || sum == 1);
      ASSERT_EQ(f.trace(x), sum);
      for (Elem z = 0; z < f.q(); z += 5) ASSERT_EQ(f.trace(x ^ z), f.trace(x) ^ f.trace(z));
    }
    if (n % 2 == 1) {
      EXPECT_EQ(f.trace(1), 1u);
    }
  }
}

TEST(Field, AxiomsOnRandomTriples) {
  std::mt19937 rng(11);
  for (unsigned n : {3u, 5u, 7u}) {
    const FieldSpec f(n);
    std::uniform_int_distribution<Elem> d(0, f.q() - 1);
    for (int k = 0; k < 1000; ++k) {
      const Elem x = d(rng), y = d(rng), z = d(rng);
      ASSERT_EQ(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
      ASSERT_EQ(f.mul(x, y), f.mul(y, x));
      ASSERT_EQ(f.mul(x, y ^ z), f.mul(x, y) ^ f.mul(x, z));
      if (x != 0) {
        ASSERT_EQ(f.mul(x, f.inv(x)), 1u);
      }
    }
  }
}

TEST(Field, FrobeniusAndPower) {
  const FieldSpec f(7);
  for (Elem x = 0; x < f.q(); ++x) {
    for (unsigned k = 0; k < 9; ++k) ASSERT_EQ(f.frob(x, k), oracle::gf_pow(x, std::uint64_t{1} << k, 7, f.modulus()));
    ASSERT_EQ(f.pow(x, 0), 1u);
    ASSERT_EQ(f.pow(x, 37), oracle::gf_pow(x, 37, 7, f.modulus()));
  }
}

TEST(Field, Moduli) {
  EXPECT_EQ(default_modulus(3), 0xBu);
  EXPECT_EQ(default_modulus(5), 0x25u);
  EXPECT_EQ(default_modulus(7), 0x83u);
  for (unsigned n = 1; n <= kMaxFieldDegree; ++n) {
    EXPECT_TRUE(oracle::irreducible(default_modulus(n))) << n;
    EXPECT_EQ(FieldSpec(n).modulus(), default_modulus(n));
  }
  for (std::uint32_t p = 2; p < 1024; ++p) ASSERT_EQ(is_irreducible(p), oracle::irreducible(p)) << p;
  EXPECT_THROW(FieldSpec(3, 0xF), ConfigError);
  EXPECT_THROW(FieldSpec(3, 0x13), ConfigError);
  EXPECT_THROW(FieldSpec(0), ConfigError);
  EXPECT_THROW(FieldSpec(kMaxFieldDegree + 1), ConfigError);
  EXPECT_NO_THROW(FieldSpec(3, 0xD));
}

TEST(Field, IntegerHelpers) {
  EXPECT_EQ(gcd_u64(12, 18), 6u);
  EXPECT_EQ(gcd_u64(0, 5), 5u);
  for (std::uint64_t m : {7ull, 31ull, 63ull, 127ull, 1000ull}) {
    for (std::uint64_t a = 0; a < 2 * m; ++a) {
      const auto r = inverse_mod(a, m);
      ASSERT_EQ(r.has_value(), gcd_u64(a, m) == 1) << a << " " << m;
      if (r) {
        ASSERT_EQ((a % m) * *r % m, 1 % m);
      }
    }
  }
  EXPECT_EQ(prime_factors(63), (std::vector<std::uint64_t>{3, 7}));
  EXPECT_EQ(prime_factors(1), std::vector<std::uint64_t>{});
}

TEST(Dickson, BaseCases) {
  const FieldSpec f(3);
  for (Elem a = 0; a < 8; ++a) {
    for (Elem x = 0; x < 8; ++x) {
      EXPECT_EQ(dickson_eval(f, 0, a, x), 0u);
      EXPECT_EQ(dickson_eval(f, 1, a, x), x);
      // x^3 + a x, unrolled by hand from D_2 = x^2 - 2a = x^2.
      EXPECT_EQ(dickson_eval(f, 3, a, x), f.pow(x, 3) ^ f.mul(a, x));
    }
  }
  EXPECT_THROW(dickson_eval(f, -1, 1, 1), DomainError);
}

TEST(Dickson, PowerOfTwoDegreeIsFrobenius) {
  const FieldSpec f(3);
  for (unsigned i = 0; i <= 6; ++i) {
    for (Elem a = 0; a < 8; ++a) {
      for (Elem x = 0; x < 8; ++x) ASSERT_EQ(dickson_eval(f, 1ll << i, a, x), f.frob(x, i));
    }
  }
}

TEST(Dickson, SymmetricFunctionIdentity) {
  const FieldSpec f(6);
  for (long long k = 0; k <= 32; ++k) {
    for (Elem x1 = 0; x1 < f.q(); ++x1) {
      for (Elem x2 = 0; x2 < f.q(); ++x2) {
        const Elem rhs = k == 0 ? 0 : f.pow(x1, k) ^ f.pow(x2, k);
        ASSERT_EQ(dickson_eval(f, k, f.mul(x1, x2), x1 ^ x2), rhs) << k << " " << x1 << " " << x2;
      }
    }
  }
}

TEST(Dickson, Composition) {
  const FieldSpec f(3);
  for (long long k = 0; k <= 8; ++k) {
    for (long long l = 0; l <= 8; ++l) {
      for (Elem a = 0; a < 8; ++a) {
        for (Elem x = 0; x < 8; ++x) {
          ASSERT_EQ(dickson_eval(f, k * l, a, x), dickson_eval(f, k, f.pow(a, l), dickson_eval(f, l, a, x)))
              << k << " " << l << " " << a << " " << x;
        }
      }
    }
  }
}

TEST(Dickson, ClosedFormForTwoPowerMinusOne) {
  for (unsigned n : {3u, 5u}) {
    const FieldSpec f(n);
    for (unsigned i = 1; i <= 8; ++i) {
      for (Elem a = 0; a < f.q(); ++a) {
        for (Elem x = 0; x < f.q(); ++x) {
          Elem sum = 0;
          for (unsigned j = 0; j < i; ++j) {
            const std::uint64_t ea = (std::uint64_t{1} << j) - 1;
            const std::uint64_t ex = (std::uint64_t{1} << i) - (std::uint64_t{1} << (j + 1)) + 1;
            sum ^= oracle::gf_mul(oracle::gf_pow(a, ea, n, f.modulus()), oracle::gf_pow(x, ex, n, f.modulus()), n,
                                  f.modulus());
          }
          ASSERT_EQ(dickson_pow2_minus1(f, i, a, x), sum);
          ASSERT_EQ(dickson_eval(f, (1ll << i) - 1, a, x), sum) << i << " " << a << " " << x;
        }
      }
    }
  }
}

TEST(FrobeniusAffine, SolutionCountFollowsTrace) {
  for (unsigned n : {3u, 5u}) {
    const FieldSpec f(n);
    for (unsigned i = 1; i < 2 * n; ++i) {
      if (gcd_u64(i, n) != 1) continue;
      for (Elem a = 0; a < f.q(); ++a) {
        std::vector<Elem> brute;
        for (Elem x = 0; x < f.q(); ++x) {
          if ((oracle::gf_pow(x, std::uint64_t{1} << i, n, f.modulus()) ^ x) == a) brute.push_back(x);
        }
        ASSERT_EQ(brute.size(), f.trace(a) == 0 ? 2u : 0u) << n << " " << i << " " << a;
        if (!brute.empty()) {
          ASSERT_EQ(brute[0] ^ 1, brute[1]);
        }
        auto got = solve_frobenius_affine(f, i, a);
        std::sort(got.begin(), got.end());
        ASSERT_EQ(got, brute);
      }
    }
  }
}
