#include "bfly/field.hpp"

#include <bit>
#include <string>

#include "bfly/errors.hpp"

namespace bfly {

namespace {

int degree_of(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
  const int dm = degree_of(m);
  for (int da = degree_of(a); da >= dm; da = degree_of(a)) {
    a ^= m << (da - dm);
  }
  return a;
}

std::string hex(std::uint32_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  do {
    s.insert(s.begin(), digits[v & 0xf]);
    v >>= 4;
  } while (v != 0);
  return "0x" + s;
}

}  // namespace

bool is_irreducible(std::uint32_t poly) {
  const int d = degree_of(poly);
  if (d < 1) return false;
  if (d == 1) return true;
  // Trial division by every polynomial of degree 1..d/2.
  for (int dd = 1; dd <= d / 2; ++dd) {
    const std::uint64_t lo = std::uint64_t{1} << dd;
    for (std::uint64_t divisor = lo; divisor < (lo << 1); ++divisor) {
      if (poly_mod(poly, divisor) == 0) return false;
    }
  }
  return true;
}

std::uint32_t default_modulus(unsigned n) {
  if (n == 0 || n > kMaxFieldDegree) {
    throw ConfigError("field degree must be in [1, " + std::to_string(kMaxFieldDegree) +
                      "], got " + std::to_string(n));
  }
  switch (n) {
    case 3: return 0b1011;
    case 5: return 0b100101;
    case 7: return 0b10000011;
    default: break;
  }
  const std::uint32_t top = 1u << n;
  if (n == 1) return 0b11;
  for (unsigned k = 1; k < n; ++k) {
    const std::uint32_t p = top | (1u << k) | 1u;
    if (is_irreducible(p)) return p;
  }
  // No irreducible trinomial: smallest pentanomial.
  for (std::uint32_t low = 1; low < top; low += 2) {
    if (std::popcount(low) == 4 && is_irreducible(top | low)) return top | low;
  }
  throw ConfigError("no low-weight irreducible found for n=" + std::to_string(n));
}

FieldSpec::FieldSpec(unsigned n) : FieldSpec(n, default_modulus(n)) {}

FieldSpec::FieldSpec(unsigned n, std::uint32_t modulus) : n_(n), modulus_(modulus) {
  if (n == 0 || n > kMaxFieldDegree) {
    throw ConfigError("field degree must be in [1, " + std::to_string(kMaxFieldDegree) +
                      "], got " + std::to_string(n));
  }
  if (degree_of(modulus) != static_cast<int>(n)) {
    throw ConfigError("modulus " + hex(modulus) + " does not have degree " + std::to_string(n));
  }
  if (!is_irreducible(modulus)) {
    throw ConfigError("modulus " + hex(modulus) + " is reducible over GF(2)");
  }
  // tr is GF(2)-linear: record tr(t^k) for each basis vector.
  for (unsigned k = 0; k < n_; ++k) {
    Elem x = Elem{1} << k;
    Elem acc = 0;
    for (unsigned j = 0; j < n_; ++j) {
      acc ^= x;
      x = sqr(x);
    }
    if (acc & 1u) trace_mask_ |= Elem{1} << k;
  }
}

Elem FieldSpec::mul(Elem x, Elem y) const {
  const Elem top = q();
  Elem r = 0;
  while (y != 0) {
    if (y & 1u) r ^= x;
    y >>= 1;
    x <<= 1;
    if (x & top) x ^= modulus_;
  }
  return r;
}

Elem FieldSpec::pow(Elem x, std::uint64_t e) const {
  if (e == 0) return 1;
  if (x == 0) return 0;
  e %= order();
  if (e == 0) e = order();
  Elem r = 1;
  while (e != 0) {
    if (e & 1u) r = mul(r, x);
    x = sqr(x);
    e >>= 1;
  }
  return r;
}

Elem FieldSpec::frob(Elem x, unsigned k) const {
  k %= n_;
  for (unsigned j = 0; j < k; ++j) x = sqr(x);
  return x;
}

Elem FieldSpec::inv(Elem x) const {
  if (x == 0) throw DomainError("inverse of zero in GF(2^" + std::to_string(n_) + ")");
  return pow(x, std::uint64_t{q()} - 2);
}

unsigned FieldSpec::trace(Elem x) const {
  return static_cast<unsigned>(std::popcount(x & trace_mask_) & 1);
}

bool FieldSpec::is_primitive(Elem x) const {
  if (x == 0) return false;
  if (order() == 1) return x == 1;
  for (std::uint64_t p : prime_factors(order())) {
    if (pow(x, order() / p) == 1) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= v; ++p) {
    if (v % p == 0) {
      out.push_back(p);
      while (v % p == 0) v /= p;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::optional<std::uint64_t> inverse_mod(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  if (m > (std::uint64_t{1} << 62)) return std::nullopt;
  // Bezout coefficients stay below m in magnitude, so int64 cannot overflow here.
  std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t qt = old_r / r;
    const std::int64_t tr = old_r - qt * r;
    old_r = r;
    r = tr;
    const std::int64_t ts = old_s - qt * s;
    old_s = s;
    s = ts;
  }
  if (old_r != 1) return std::nullopt;
  std::int64_t res = old_s % static_cast<std::int64_t>(m);
  if (res < 0) res += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(res);
}

Elem dickson_eval(const FieldSpec& f, long long k, Elem a, Elem x) {
  if (k < 0) throw DomainError("Dickson degree must be non-negative, got " + std::to_string(k));
  Elem prev = 0;  // D_0 = 2 = 0 in characteristic 2
  if (k == 0) return prev;
  Elem cur = x;   // D_1
  for (long long j = 1; j < k; ++j) {
    const Elem next = f.mul(x, cur) ^ f.mul(a, prev);
    prev = cur;
    cur = next;
  }
  return cur;
}

Elem dickson_pow2_minus1(const FieldSpec& f, unsigned i, Elem a, Elem x) {
  if (i == 0) throw DomainError("closed Dickson form needs i >= 1");
  Elem acc = 0;
  const std::uint64_t two_i = std::uint64_t{1} << i;
  for (unsigned j = 0; j < i; ++j) {
    const std::uint64_t ea = (std::uint64_t{1} << j) - 1;
    const std::uint64_t ex = two_i - (std::uint64_t{1} << (j + 1)) + 1;
    acc ^= f.mul(f.pow(a, ea), f.pow(x, ex));
  }
  return acc;
}

std::vector<Elem> solve_frobenius_affine(const FieldSpec& f, unsigned i, Elem a) {
  std::vector<Elem> roots;
  for (Elem x = 0; x < f.q(); ++x) {
    if ((f.frob(x, i) ^ x) == a) roots.push_back(x);
  }
  return roots;
}

}  // namespace bfly
