#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bfly/field.hpp"

namespace bfly {

/// Element u + gamma*v of GF(q^2) = GF(q)(gamma), gamma^2 = gamma + 1.
/// The coordinates are exactly the bivariate pair (x, y) = (u, v).
struct Fq2 {
  Elem u = 0;
  Elem v = 0;

  friend bool operator==(const Fq2&, const Fq2&) = default;
  friend Fq2 operator+(Fq2 a, Fq2 b) { return {a.u ^ b.u, a.v ^ b.v}; }
  Fq2& operator+=(Fq2 b) {
    u ^= b.u;
    v ^= b.v;
    return *this;
  }
  bool is_zero() const { return u == 0 && v == 0; }
  bool in_base_field() const { return v == 0; }
};

/// Quadratic extension over an odd-degree base field.
///
/// gamma is a primitive cube root of unity; x^2+x+1 stays irreducible over
/// GF(2^n) exactly when n is odd, which is asserted at construction. The
/// packed index of u + gamma*v is u*2^n + v (first coordinate in the high bits).
class QuadExt {
 public:
  explicit QuadExt(FieldSpec base);

  const FieldSpec& base() const { return base_; }
  unsigned n() const { return base_.n(); }
  std::uint32_t q() const { return base_.q(); }
  /// Number of elements of GF(q^2).
  std::uint32_t size() const { return q() * q(); }
  /// Bit width of packed indices (2n).
  unsigned m() const { return 2 * n(); }

  static constexpr Fq2 one() { return {1, 0}; }
  static constexpr Fq2 gamma() { return {0, 1}; }
  static constexpr Fq2 lift(Elem x) { return {x, 0}; }

  Fq2 mul(Fq2 a, Fq2 b) const;
  Fq2 scale(Elem c, Fq2 a) const { return {base_.mul(c, a.u), base_.mul(c, a.v)}; }
  Fq2 sqr(Fq2 a) const { return mul(a, a); }
  Fq2 pow(Fq2 a, std::uint64_t e) const;
  /// z^q = (u + v) + gamma*v.
  Fq2 frobenius(Fq2 a) const { return {a.u ^ a.v, a.v}; }
  /// z^(q+1), an element of GF(q).
  Elem norm(Fq2 a) const;
  /// Throws DomainError on zero.
  Fq2 inv(Fq2 a) const;
  Fq2 div(Fq2 a, Fq2 b) const { return mul(a, inv(b)); }

  std::uint32_t index(Fq2 a) const { return (a.u << n()) | a.v; }
  Fq2 from_index(std::uint32_t idx) const { return {idx >> n(), idx & (q() - 1)}; }

  /// (x, y) = (gamma^2 z + gamma z^q, z^q + z), evaluated with field arithmetic.
  std::pair<Elem, Elem> correspondence(Fq2 z) const;
  Fq2 from_bivariate(Elem x, Elem y) const { return {x, y}; }

  bool on_unit_circle(Fq2 z) const { return norm(z) == 1; }
  /// mu_{q+1} = { z : z^(q+1) = 1 }, by direct power test, in index order.
  std::vector<Fq2> unit_circle() const;
  /// The same set from the parametrisation (x + gamma)/(x + gamma^q), x in GF(q), plus 1.
  std::vector<Fq2> unit_circle_parametrized() const;

  bool operator==(const QuadExt& o) const { return base_ == o.base_; }

 private:
  FieldSpec base_;
};

}  // namespace bfly
