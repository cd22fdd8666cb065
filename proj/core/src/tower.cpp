#include "bfly/tower.hpp"

#include <string>

#include "bfly/errors.hpp"

namespace bfly {

QuadExt::QuadExt(FieldSpec base) : base_(base) {
  if (base_.n() % 2 == 0) {
    throw ConfigError("quadratic tower over gamma needs odd n, got n=" + std::to_string(base_.n()));
  }
  if (2 * base_.n() > 20) {
    throw ConfigError("quadratic tower limited to 2n <= 20, got n=" + std::to_string(base_.n()));
  }
}

Fq2 QuadExt::mul(Fq2 a, Fq2 b) const {
  const Elem uu = base_.mul(a.u, b.u);
  const Elem vv = base_.mul(a.v, b.v);
  // (u1 + g v1)(u2 + g v2) = u1u2 + v1v2 + g(u1v2 + u2v1 + v1v2), using g^2 = g + 1.
  // Karatsuba: u1v2 + u2v1 = (u1+v1)(u2+v2) + u1u2 + v1v2.
  const Elem cross = base_.mul(a.u ^ a.v, b.u ^ b.v) ^ uu ^ vv;
  return {uu ^ vv, cross ^ vv};
}

Fq2 QuadExt::pow(Fq2 a, std::uint64_t e) const {
  Fq2 r = one();
  if (e == 0) return r;
  if (a.is_zero()) return a;
  e %= std::uint64_t{size()} - 1;
  if (e == 0) return r;
  while (e != 0) {
    if (e & 1u) r = mul(r, a);
    a = sqr(a);
    e >>= 1;
  }
  return r;
}

Elem QuadExt::norm(Fq2 a) const {
  const Fq2 n = mul(a, frobenius(a));
  return n.u;
}

Fq2 QuadExt::inv(Fq2 a) const {
  if (a.is_zero()) throw DomainError("inverse of zero in GF(q^2)");
  return scale(base_.inv(norm(a)), frobenius(a));
}

std::pair<Elem, Elem> QuadExt::correspondence(Fq2 z) const {
  const Fq2 g = gamma();
  const Fq2 g2 = sqr(g);
  const Fq2 zq = pow(z, q());
  const Fq2 x = mul(g2, z) + mul(g, zq);
  const Fq2 y = zq + z;
  return {x.u, y.u};
}

std::vector<Fq2> QuadExt::unit_circle() const {
  std::vector<Fq2> out;
  for (std::uint32_t idx = 1; idx < size(); ++idx) {
    const Fq2 z = from_index(idx);
    if (pow(z, std::uint64_t{q()} + 1) == one()) out.push_back(z);
  }
  return out;
}

std::vector<Fq2> QuadExt::unit_circle_parametrized() const {
  std::vector<Fq2> out{one()};
  const Fq2 g = gamma();
  const Fq2 gq = frobenius(g);
  for (Elem x = 0; x < q(); ++x) {
    out.push_back(div(lift(x) + g, lift(x) + gq));
  }
  return out;
}

}  // namespace bfly
