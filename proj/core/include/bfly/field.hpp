#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace bfly {

// Bit pattern of an element of GF(2^n) in the polynomial basis (bit k <-> t^k).
using Elem = std::uint32_t;

inline constexpr unsigned kMaxFieldDegree = 16;

/// Binary field GF(2^n) defined by an irreducible modulus.
///
/// Immutable after construction and cheap to copy. Multiplication is a
/// carry-less shift-and-add followed by reduction, so no tables are shared
/// between copies and every method is safe to call from any thread.
class FieldSpec {
 public:
  /// Uses the default modulus for n (see default_modulus).
  explicit FieldSpec(unsigned n);
  /// `modulus` includes the leading t^n bit, e.g. 0xB for t^3+t+1.
  /// Throws ConfigError if the degree is wrong or the polynomial is reducible.
  FieldSpec(unsigned n, std::uint32_t modulus);

  unsigned n() const { return n_; }
  std::uint32_t modulus() const { return modulus_; }
  std::uint32_t q() const { return 1u << n_; }
  std::uint32_t order() const { return q() - 1; }
  bool contains(Elem x) const { return x < q(); }

  Elem add(Elem x, Elem y) const { return x ^ y; }
  Elem mul(Elem x, Elem y) const;
  Elem sqr(Elem x) const { return mul(x, x); }
  Elem pow(Elem x, std::uint64_t e) const;
  /// x^(2^k), the k-th Frobenius image.
  Elem frob(Elem x, unsigned k) const;
  /// Throws DomainError on zero.
  Elem inv(Elem x) const;
  Elem div(Elem x, Elem y) const { return mul(x, inv(y)); }
  /// Absolute trace to GF(2).
  unsigned trace(Elem x) const;
  /// Multiplicative order divides q-1; true when x generates GF(2^n)*.
  bool is_primitive(Elem x) const;

  bool operator==(const FieldSpec& o) const { return n_ == o.n_ && modulus_ == o.modulus_; }

 private:
  unsigned n_;
  std::uint32_t modulus_;
  Elem trace_mask_ = 0;
};

/// Irreducibility over GF(2) of a polynomial given as a bit pattern (degree <= 32).
bool is_irreducible(std::uint32_t poly);

/// Default reduction polynomial: t^3+t+1, t^5+t^2+1, t^7+t+1 for the tower
/// sizes, otherwise the irreducible of least weight and then least value.
std::uint32_t default_modulus(unsigned n);

/// Distinct prime factors of v.
std::vector<std::uint64_t> prime_factors(std::uint64_t v);

/// Inverse of a modulo m, if gcd(a, m) == 1.
std::optional<std::uint64_t> inverse_mod(std::uint64_t a, std::uint64_t m);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

/// Dickson polynomial of the first kind D_k(x, a) over GF(2^n), via
/// D_0 = 2 (= 0 here), D_1 = x, D_{k+2} = x D_{k+1} + a D_k.
/// Negative k throws DomainError.
Elem dickson_eval(const FieldSpec& f, long long k, Elem a, Elem x);

/// Closed form of D_{2^i - 1}(x, a) = sum_{j<i} a^{2^j-1} x^{2^i-2^{j+1}+1}.
Elem dickson_pow2_minus1(const FieldSpec& f, unsigned i, Elem a, Elem x);

/// All x in GF(2^n) with x^(2^i) + x = a (exhaustive; intended for n <= 16).
std::vector<Elem> solve_frobenius_affine(const FieldSpec& f, unsigned i, Elem a);

}  // namespace bfly
