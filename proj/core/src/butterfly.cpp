#include "bfly/butterfly.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "bfly/errors.hpp"
#include "bfly/parallel.hpp"

namespace bfly {

namespace {

// x^(2^i + 1)
Elem pow_e(const FieldSpec& f, unsigned i, Elem x) { return f.mul(f.frob(x, i), x); }

Fq2 fq2_frob(const QuadExt& ext, Fq2 z, unsigned k) {
  // z^(2^k) through repeated squaring.
  for (unsigned j = 0; j < k; ++j) z = ext.sqr(z);
  return z;
}

void require_gamma(const ButterflyParams& p, const char* what) {
  if (!gamma_membership(p).in_gamma) {
    throw PreconditionError(std::string(what) + " needs (alpha, beta) in Gamma");
  }
}

void require_nonzero(Pair point, const char* what) {
  if (point.first == 0 && point.second == 0) {
    throw PreconditionError(std::string(what) + " needs a nonzero direction");
  }
}

// Shared quantities for a member of Gamma.
struct GammaTerms {
  Elem phi1, phi2, phi3, phi4;  // phi3 is the even-parity value
  Elem w;                        // (phi2 + phi4) / phi4
  Elem u;                        // w * alpha
};

GammaTerms gamma_terms(const ButterflyParams& p) {
  const FieldSpec& f = p.field();
  const EpsilonPhi ep = univariate_coeffs(p);
  GammaTerms g{ep.phi[0], ep.phi[1], ep.phi3_even, ep.phi[3], 0, 0};
  g.w = f.div(g.phi2 ^ g.phi4, g.phi4);
  g.u = f.mul(g.w, p.alpha());
  return g;
}

std::vector<std::uint32_t> packed_table(const ButterflyParams& p, bool open) {
  const unsigned n = p.field().n();
  const std::uint32_t q = p.field().q();
  std::vector<std::uint32_t> t(std::size_t{q} * q);
  for (Elem x = 0; x < q; ++x) {
    for (Elem y = 0; y < q; ++y) {
      const Pair v = open ? open_butterfly_eval(p, x, y) : closed_butterfly_eval(p, x, y);
      t[(x << n) | y] = (v.first << n) | v.second;
    }
  }
  return t;
}

Pair pair_add(Pair a, Pair b) { return {a.first ^ b.first, a.second ^ b.second}; }

std::vector<Pair> sorted_unique(std::vector<Pair> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

ButterflyParams::ButterflyParams(QuadExt ext, unsigned i, Elem alpha, Elem beta)
    : ext_(std::move(ext)), i_(i), alpha_(alpha), beta_(beta), inverse_exponent_(0) {
  const unsigned n = ext_.n();
  if (i < 1 || i > 30) throw ConfigError("i must lie in [1, 30]");
  if (gcd_u64(i, n) != 1) {
    throw ConfigError("gcd(i, n) must be 1, got i=" + std::to_string(i) + " n=" + std::to_string(n));
  }
  if (!ext_.base().contains(alpha) || !ext_.base().contains(beta)) {
    throw ConfigError("alpha and beta must be elements of GF(2^" + std::to_string(n) + ")");
  }
  const std::uint64_t order = ext_.base().order();
  const auto d = inverse_mod(exponent() % order, order);
  if (!d) throw ConfigError("2^i + 1 is not invertible modulo q - 1");
  inverse_exponent_ = *d;
}

Elem r_i(const ButterflyParams& p, Elem x, Elem y) {
  const FieldSpec& f = p.field();
  const Elem s = x ^ f.mul(p.alpha(), y);
  return pow_e(f, p.i(), s) ^ f.mul(p.beta(), pow_e(f, p.i(), y));
}

Elem r_i_inverse(const ButterflyParams& p, Elem z, Elem y) {
  const FieldSpec& f = p.field();
  const Elem inner = z ^ f.mul(p.beta(), pow_e(f, p.i(), y));
  return f.pow(inner, p.inverse_exponent()) ^ f.mul(p.alpha(), y);
}

Pair closed_butterfly_eval(const ButterflyParams& p, Elem x, Elem y) {
  return {r_i(p, x, y), r_i(p, y, x)};
}

Pair open_butterfly_eval(const ButterflyParams& p, Elem x, Elem y) {
  const Elem w = r_i_inverse(p, x, y);
  return {r_i(p, y, w), w};
}

Sbox closed_butterfly(const ButterflyParams& p) {
  return Sbox(p.ext().m(), packed_table(p, false));
}

Sbox open_butterfly(const ButterflyParams& p) { return Sbox(p.ext().m(), packed_table(p, true)); }

std::array<Elem, 4> phi_from_eps(const FieldSpec& f, const std::array<Elem, 4>& e) {
  const Elem s1 = f.sqr(e[0]), s2 = f.sqr(e[1]), s3 = f.sqr(e[2]), s4 = f.sqr(e[3]);
  return {f.mul(e[0], e[2]) ^ f.mul(e[1], e[3]), f.mul(e[0], e[1]) ^ f.mul(e[2], e[3]), s1 ^ s4,
          s1 ^ s2 ^ s3 ^ s4};
}

EpsilonPhi univariate_coeffs(const ButterflyParams& p) {
  const FieldSpec& f = p.field();
  const Elem a = p.alpha();
  const Elem b = p.beta();
  const Elem at = f.frob(a, p.i());
  const Elem at1 = f.mul(at, a);
  std::array<Elem, 4> e{at ^ a ^ 1, at1 ^ a ^ b ^ 1, at1 ^ at ^ b ^ 1, at1 ^ at ^ a ^ b};
  if (p.i_odd()) e = {e[2], e[3], e[0], e[1]};
  EpsilonPhi r;
  r.eps = e;
  r.phi = phi_from_eps(f, e);
  r.phi3_even = f.sqr(at1 ^ b ^ 1);
  return r;
}

UnivariatePoly univariate_polynomial(const QuadExt& ext, unsigned i, const std::array<Elem, 4>& eps) {
  const std::uint64_t q = ext.q();
  const std::uint64_t t = std::uint64_t{1} << i;
  return UnivariatePoly({{QuadExt::lift(eps[0]), q * (t + 1)},
                         {QuadExt::lift(eps[1]), q * t + 1},
                         {QuadExt::lift(eps[2]), t + q},
                         {QuadExt::lift(eps[3]), t + 1}});
}

Sbox univariate_sbox(const ButterflyParams& p) {
  return sbox_from_univariate(univariate_polynomial(p.ext(), p.i(), univariate_coeffs(p).eps), p.ext());
}

Sbox scale_sbox(const QuadExt& ext, const Sbox& s, Fq2 in, Fq2 out) {
  if (s.m() != ext.m()) throw PreconditionError("scale_sbox: table width does not match the field");
  std::vector<std::uint32_t> t(ext.size());
  for (std::uint32_t k = 0; k < ext.size(); ++k) {
    const Fq2 z = ext.from_index(k);
    t[k] = ext.index(ext.mul(out, ext.from_index(s[ext.index(ext.mul(in, z))])));
  }
  return Sbox(ext.m(), std::move(t));
}

bool gamma_relation(const FieldSpec& f, unsigned i, const std::array<Elem, 4>& phi) {
  if (phi[3] == 0) return false;
  const std::uint64_t t = std::uint64_t{1} << i;
  return f.frob(phi[1], i) == f.mul(phi[0], f.pow(phi[3], t - 1));
}

GammaWitness gamma_membership(const ButterflyParams& p) {
  GammaWitness g;
  g.alpha = p.alpha();
  g.beta = p.beta();
  g.phi = univariate_coeffs(p).phi;
  if (p.alpha() == 0 || p.beta() == 0) {
    g.reason = GammaReason::alpha_or_beta_zero;
  } else if (g.phi[3] == 0) {
    g.reason = GammaReason::phi4_zero;
  } else if (gamma_relation(p.field(), p.i(), g.phi)) {
    g.reason = GammaReason::ok;
    g.in_gamma = true;
  } else {
    g.reason = GammaReason::relation_fails;
  }
  return g;
}

std::vector<GammaWitness> gamma_enumerate(const QuadExt& ext, unsigned i, unsigned jobs) {
  const std::uint32_t q = ext.q();
  // Validate once up front so configuration errors are not raised from workers.
  ButterflyParams probe(ext, i, 1, 1);
  std::vector<GammaWitness> out(std::size_t{q - 1} * (q - 1));
  parallel_for(1, q, jobs, [&](std::size_t a) {
    for (Elem b = 1; b < q; ++b) {
      out[(a - 1) * (q - 1) + (b - 1)] =
          gamma_membership(ButterflyParams(ext, i, static_cast<Elem>(a), b));
    }
  });
  return out;
}

std::vector<Pair> gamma_members(const QuadExt& ext, unsigned i, unsigned jobs) {
  std::vector<Pair> r;
  for (const auto& g : gamma_enumerate(ext, i, jobs)) {
    if (g.in_gamma) r.emplace_back(g.alpha, g.beta);
  }
  return r;
}

CheckReport lemma8_properties(const ButterflyParams& p) {
  require_gamma(p, "lemma8_properties");
  const FieldSpec& f = p.field();
  const unsigned i = p.i();
  const std::uint64_t t = std::uint64_t{1} << i;
  const EpsilonPhi ep = univariate_coeffs(p);
  const Elem phi1 = ep.phi[0], phi2 = ep.phi[1], phi3 = ep.phi[2], phi4 = ep.phi[3];
  const Elem phi3e = ep.phi3_even;
  const Elem a = p.alpha();
  const Elem at = f.frob(a, i);
  const Elem c = f.mul(at, a) ^ p.beta() ^ 1;  // alpha^(2^i+1) + beta + 1
  const Elem w = f.div(phi2 ^ phi4, phi4);
  const Elem w1 = f.div(phi1 ^ phi4, phi4);
  const Elem u = f.mul(w, a);

  CheckReport r;
  r.expect(phi3e == (phi3 ^ (p.i_odd() ? phi4 : 0)), "phi3 parity shift by phi4");
  r.expect(f.mul(f.mul(phi1 ^ phi4, phi2 ^ phi4), f.mul(phi3 ^ phi4, phi3)) != 0,
           "(phi1+phi4)(phi2+phi4)(phi3+phi4)phi3 != 0");
  if (phi2 != phi4 && phi1 != phi4) {
    r.expect(f.frob(f.div(phi4, phi2 ^ phi4), i) == f.div(phi4, phi1 ^ phi4),
             "(phi4/(phi2+phi4))^(2^i) = phi4/(phi1+phi4)");
    const auto root = inverse_mod((t - 1) % f.order(), f.order());
    const Elem ratio = f.div(phi1 ^ phi4, phi2 ^ phi4);
    const Elem radical = root ? f.pow(ratio, *root) : 0;
    r.expect(root && radical == w, "(2^i-1)-th root of (phi1+phi4)/(phi2+phi4) is (phi2+phi4)/phi4");
  }
  if (!p.i_odd()) {
    r.expect(f.trace(f.div(phi3, phi4)) == 0, "tr(phi3/phi4) = 0 for even i");
    auto roots = solve_frobenius_affine(f, i, f.div(phi3 ^ phi4, phi4));
    std::sort(roots.begin(), roots.end());
    std::vector<Elem> expect{u, u ^ 1};
    std::sort(expect.begin(), expect.end());
    r.expect(roots == expect, "x^(2^i)+x = (phi3+phi4)/phi4 has roots {u, u+1}");
  } else {
    r.expect(f.trace(f.div(phi3, phi4)) == 1, "tr(phi3/phi4) = 1 for odd i");
  }
  r.expect(f.trace(f.div(phi2, phi4)) == 0, "tr(phi2/phi4) = 0");

  r.expect((phi1 ^ phi2) == f.mul(at ^ a, c), "phi1+phi2 = (alpha^(2^i)+alpha)(alpha^(2^i+1)+beta+1)");
  {
    std::array<Elem, 2> lhs{phi3e, phi3e ^ phi4};
    std::array<Elem, 2> rhs{f.sqr(at ^ a), f.sqr(c)};
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    r.expect(lhs == rhs, "{phi3, phi3+phi4} = {(alpha^(2^i)+alpha)^2, (alpha^(2^i+1)+beta+1)^2}");
  }
  r.expect((f.mul(a, phi2 ^ phi4) ^ f.mul(at, phi1 ^ phi4)) == (phi3e ^ phi4),
           "alpha(phi2+phi4) + alpha^(2^i)(phi1+phi4) = phi3+phi4");
  const Elem v = f.div(phi3e ^ phi4, phi4);
  r.expect(v == (u ^ f.frob(u, i)), "(phi3+phi4)/phi4 = u + u^(2^i)");
  r.expect(v == (f.mul(w, a) ^ f.mul(w1, at)), "(phi3+phi4)/phi4 = w alpha + w' alpha^(2^i)");
  r.expect(f.sqr(f.div(phi2, phi4)) == (u ^ f.sqr(u)), "(phi2/phi4)^2 = u + u^2");
  r.expect(f.div(phi1, phi4) == f.frob(f.div(phi2, phi4), i), "phi1/phi4 = (phi2/phi4)^(2^i)");
  const Elem a2 = f.sqr(a), at2 = f.sqr(at);
  r.expect((phi1 ^ phi4) == (f.mul(at, a2) ^ at ^ f.mul(a, p.beta())),
           "phi1+phi4 = alpha^(2^i+2) + alpha^(2^i) + alpha beta");
  r.expect((phi2 ^ phi4) == (f.mul(at2, a) ^ f.mul(at, p.beta()) ^ a),
           "phi2+phi4 = alpha^(2^(i+1)+1) + alpha^(2^i) beta + alpha");
  r.expect((phi3e ^ phi4) == (at2 ^ a2), "phi3+phi4 = alpha^(2^(i+1)) + alpha^2");
  return r;
}

PermutationConditions permutation_conditions(const QuadExt& ext, unsigned i,
                                             const std::array<Elem, 4>& eps) {
  const FieldSpec& f = ext.base();
  const std::uint64_t q = ext.q();
  const std::uint64_t t = std::uint64_t{1} << i;
  PermutationConditions c;
  c.gcd_condition = gcd_u64(t + 1, q - 1) == 1;

  const Fq2 e1 = QuadExt::lift(eps[0]), e2 = QuadExt::lift(eps[1]), e3 = QuadExt::lift(eps[2]),
            e4 = QuadExt::lift(eps[3]);
  auto h = [&](Fq2 z) {
    const Fq2 zt = fq2_frob(ext, z, i);
    return ext.mul(e1, ext.mul(zt, z)) + ext.mul(e2, zt) + ext.mul(e3, z) + e4;
  };
  const auto circle = ext.unit_circle();
  c.no_root_on_circle = true;
  c.fixed_only_at_one = true;
  for (const Fq2 z : circle) {
    const Fq2 hz = h(z);
    if (hz.is_zero()) c.no_root_on_circle = false;
    const Fq2 g = ext.mul(ext.pow(z, t + 1), ext.pow(hz, q - 1));
    if ((g == QuadExt::one()) != (z == QuadExt::one())) c.fixed_only_at_one = false;
  }

  const std::array<Elem, 4> phi = phi_from_eps(f, eps);
  std::set<std::pair<Elem, Elem>> tset;
  for (const Fq2 x : circle) {
    if (x == QuadExt::one()) continue;
    const Fq2 xq = ext.frobenius(x);
    for (const Fq2 y : circle) {
      if (y == QuadExt::one() || y == x || y == xq) continue;
      const Fq2 xy = ext.mul(x, y);
      const Fq2 big_x = ext.div(xy + QuadExt::one(), x + y);
      const Fq2 big_y = ext.div(xy, ext.sqr(x + y));
      if (!big_x.in_base_field() || !big_y.in_base_field()) {
        c.t_in_base_field = false;
        continue;
      }
      tset.emplace(big_x.u, big_y.u);
    }
  }
  c.t_size = tset.size();
  c.no_t_solution = true;
  for (const auto& [bx, by] : tset) {
    Elem sum = 0;
    for (unsigned j = 0; j < i; ++j) sum ^= f.frob(by, j);
    const Elem value = f.mul(phi[0], f.frob(bx, i)) ^ f.mul(phi[1], bx) ^ phi[2] ^ f.mul(phi[3], sum);
    if (value == 0) {
      c.no_t_solution = false;
      break;
    }
  }
  c.is_permutation = sbox_from_univariate(univariate_polynomial(ext, i, eps), ext).is_permutation();
  return c;
}

PermutationConditions permutation_conditions(const ButterflyParams& p) {
  return permutation_conditions(p.ext(), p.i(), univariate_coeffs(p).eps);
}

Pair derivative_form(const ButterflyParams& p, Pair first, Pair second) {
  const Pair s = pair_add(first, second);
  return pair_add(pair_add(closed_butterfly_eval(p, s.first, s.second),
                           closed_butterfly_eval(p, first.first, first.second)),
                  closed_butterfly_eval(p, second.first, second.second));
}

Pair derivative_form_expanded(const ButterflyParams& p, Pair first, Pair second) {
  const FieldSpec& f = p.field();
  const unsigned i = p.i();
  const Elem a = p.alpha(), at = f.frob(a, i);
  const Elem k = f.mul(at, a) ^ p.beta();  // alpha^(2^i+1) + beta
  const auto [a1, b1] = first;
  const auto [a2, b2] = second;
  const Elem a1t = f.frob(a1, i), b1t = f.frob(b1, i), a2t = f.frob(a2, i), b2t = f.frob(b2, i);
  const Elem e1 = f.mul(a1 ^ f.mul(a, b1), a2t) ^ f.mul(a1t ^ f.mul(at, b1t), a2) ^
                  f.mul(f.mul(at, a1) ^ f.mul(k, b1), b2t) ^ f.mul(f.mul(a, a1t) ^ f.mul(k, b1t), b2);
  const Elem e2 = f.mul(f.mul(k, a1) ^ f.mul(at, b1), a2t) ^ f.mul(f.mul(k, a1t) ^ f.mul(a, b1t), a2) ^
                  f.mul(f.mul(a, a1) ^ b1, b2t) ^ f.mul(f.mul(at, a1t) ^ b1t, b2);
  return {e1, e2};
}

std::array<Pair, 3> derivative_zero_closed_form(const ButterflyParams& p, Pair first) {
  const FieldSpec& f = p.field();
  const GammaTerms g = gamma_terms(p);
  const auto [a1, b1] = first;
  const Pair second{f.mul(g.u ^ 1, a1) ^ f.mul(g.w, b1), f.mul(g.w, a1) ^ f.mul(g.u, b1)};
  return {first, second, pair_add(second, first)};
}

std::vector<Pair> derivative_zero_brute_force(const ButterflyParams& p, Pair first) {
  const std::uint32_t q = p.field().q();
  std::vector<Pair> r;
  for (Elem a2 = 0; a2 < q; ++a2) {
    for (Elem b2 = 0; b2 < q; ++b2) {
      if (a2 == 0 && b2 == 0) continue;
      const Pair v = derivative_form(p, first, {a2, b2});
      if (v.first == 0 && v.second == 0) r.emplace_back(a2, b2);
    }
  }
  return r;
}

DerivativeZeroCheck prop3_solutions(const ButterflyParams& p, Pair first) {
  require_gamma(p, "prop3_solutions");
  require_nonzero(first, "prop3_solutions");
  const auto closed = derivative_zero_closed_form(p, first);
  DerivativeZeroCheck c;
  c.closed_form = sorted_unique({closed.begin(), closed.end()});
  c.brute_force = derivative_zero_brute_force(p, first);
  std::set_difference(c.brute_force.begin(), c.brute_force.end(), c.closed_form.begin(),
                      c.closed_form.end(), std::back_inserter(c.extra));
  std::set_difference(c.closed_form.begin(), c.closed_form.end(), c.brute_force.begin(),
                      c.brute_force.end(), std::back_inserter(c.missing));
  return c;
}

Mat2 mat_mul(const FieldSpec& f, const Mat2& x, const Mat2& y) {
  const auto& a = x.e;
  const auto& b = y.e;
  return {{f.mul(a[0], b[0]) ^ f.mul(a[1], b[2]), f.mul(a[0], b[1]) ^ f.mul(a[1], b[3]),
           f.mul(a[2], b[0]) ^ f.mul(a[3], b[2]), f.mul(a[2], b[1]) ^ f.mul(a[3], b[3])}};
}

Mat2 mat_scale(const FieldSpec& f, Elem c, const Mat2& x) {
  return {{f.mul(c, x.e[0]), f.mul(c, x.e[1]), f.mul(c, x.e[2]), f.mul(c, x.e[3])}};
}

Elem mat_det(const FieldSpec& f, const Mat2& x) {
  return f.mul(x.e[0], x.e[3]) ^ f.mul(x.e[1], x.e[2]);
}

Mat2 mat_adj(const Mat2& x) { return {{x.e[3], x.e[1], x.e[2], x.e[0]}}; }

DerivativeMatrices derivative_matrices(const ButterflyParams& p, Pair point) {
  const FieldSpec& f = p.field();
  const unsigned i = p.i();
  const Elem a = p.alpha(), at = f.frob(a, i);
  const Elem k = f.mul(at, a) ^ p.beta();
  const auto [x, y] = point;
  const Elem xt = f.frob(x, i), yt = f.frob(y, i);
  DerivativeMatrices m;
  m.a = {{x ^ f.mul(a, y), xt ^ f.mul(at, yt), f.mul(k, x) ^ f.mul(at, y), f.mul(k, xt) ^ f.mul(a, yt)}};
  m.b = {{f.mul(at, x) ^ f.mul(k, y), f.mul(a, xt) ^ f.mul(k, yt), f.mul(a, x) ^ y, f.mul(at, xt) ^ yt}};
  m.det_a = mat_det(f, m.a);
  m.det_b = mat_det(f, m.b);
  return m;
}

std::vector<bool> derivative_image(const ButterflyParams& p, Pair point) {
  const unsigned n = p.field().n();
  const std::uint32_t q = p.field().q();
  std::vector<bool> image(std::size_t{q} * q, false);
  for (Elem x = 0; x < q; ++x) {
    for (Elem y = 0; y < q; ++y) {
      const Pair v = derivative_form(p, point, {x, y});
      image[(v.first << n) | v.second] = true;
    }
  }
  return image;
}

MatrixCheck im_matrix_check(const ButterflyParams& p, Pair first) {
  require_gamma(p, "im_matrix_check");
  require_nonzero(first, "im_matrix_check");
  const FieldSpec& f = p.field();
  const unsigned i = p.i();
  const std::uint32_t q = f.q();
  const GammaTerms g = gamma_terms(p);
  const Elem a = p.alpha(), at = f.frob(a, i);
  const Elem k = f.mul(at, a) ^ p.beta();
  const auto [a1, b1] = first;
  const Elem a1t = f.frob(a1, i), b1t = f.frob(b1, i);
  const auto closed = derivative_zero_closed_form(p, first);
  const Pair second = closed[1];

  const DerivativeMatrices m1 = derivative_matrices(p, first);
  const DerivativeMatrices m2 = derivative_matrices(p, second);
  MatrixCheck out;
  CheckReport& r = out.report;

  bool represents = true;
  for (Elem x = 0; x < q && represents; ++x) {
    for (Elem y = 0; y < q; ++y) {
      const Elem xt = f.frob(x, i), yt = f.frob(y, i);
      const Pair lhs = derivative_form(p, first, {x, y});
      const Pair rhs{f.mul(m1.a.e[0], xt) ^ f.mul(m1.a.e[1], x) ^ f.mul(m1.b.e[0], yt) ^ f.mul(m1.b.e[1], y),
                     f.mul(m1.a.e[2], xt) ^ f.mul(m1.a.e[3], x) ^ f.mul(m1.b.e[2], yt) ^ f.mul(m1.b.e[3], y)};
      if (lhs != rhs || lhs != derivative_form_expanded(p, first, {x, y})) {
        represents = false;
        break;
      }
    }
  }
  r.expect(represents, "derivative equals A [x^(2^i), x] + B [y^(2^i), y]");

  // Entries of A2, B2 written in (a1, b1).
  const Elem w = g.w;
  const Elem w1 = f.div(g.phi1 ^ g.phi4, g.phi4);
  const Elem ww1 = f.mul(w, g.phi1 ^ g.phi4);  // (phi2+phi4)(phi1+phi4)/phi4
  const Elem a2sq = f.sqr(a) ^ 1;
  const Elem a2sqt = f.frob(a2sq, i);
  const Mat2 a2_explicit{{a1 ^ f.mul(f.mul(a2sq, w), b1), a1t ^ f.mul(f.mul(a2sqt, w1), b1t),
                          f.mul(ww1 ^ k, a1) ^ f.mul(f.mul(w, p.beta()), b1),
                          f.mul(ww1 ^ k, a1t) ^ f.mul(f.mul(w1, p.beta()), b1t)}};
  const Mat2 b2_explicit{{f.mul(at ^ f.mul(w, p.beta()), a1) ^ f.mul(ww1, b1),
                          f.mul(a ^ f.mul(w1, p.beta()), a1t) ^ f.mul(ww1, b1t),
                          f.mul(f.mul(w, a2sq) ^ a, a1), f.mul(f.mul(w1, a2sqt) ^ at, a1t)}};
  r.expect(m2.a == a2_explicit, "A2 entries in terms of (a1, b1)");
  r.expect(m2.b == b2_explicit, "B2 entries in terms of (a1, b1)");

  const Elem det_a_closed = f.mul(g.phi1 ^ g.phi4, f.mul(a1t, b1)) ^ f.mul(g.phi2 ^ g.phi4, f.mul(a1, b1t)) ^
                            f.mul(g.phi3 ^ g.phi4, f.mul(b1t, b1));
  const Elem det_b_closed = f.mul(g.phi3 ^ g.phi4, f.mul(a1t, a1)) ^ f.mul(g.phi2 ^ g.phi4, f.mul(a1t, b1)) ^
                            f.mul(g.phi1 ^ g.phi4, f.mul(a1, b1t));
  r.expect(m1.det_a == det_a_closed, "Det(A1) factorisation");
  r.expect(m1.det_b == det_b_closed, "Det(B1) factorisation");

  const Elem shift = a ^ f.div(g.phi4, g.phi2 ^ g.phi4);
  out.det_a1_zero = m1.det_a == 0;
  out.det_b1_zero = m1.det_b == 0;
  r.expect(out.det_a1_zero == (b1 == 0 || a1 == f.mul(a, b1) || a1 == f.mul(shift, b1)),
           "Det(A1) = 0 zero locus");
  r.expect(out.det_b1_zero == (a1 == 0 || b1 == f.mul(a, a1) || b1 == f.mul(shift, a1)),
           "Det(B1) = 0 zero locus");
  if (!out.det_b1_zero) {
    out.left_identity_checked = true;
    r.expect(mat_mul(f, mat_mul(f, m2.b, mat_adj(m1.b)), m1.a) == mat_scale(f, m1.det_b, m2.a),
             "B2 B1^-1 A1 = A2");
  }
  if (!out.det_a1_zero) {
    out.right_identity_checked = true;
    r.expect(mat_mul(f, mat_mul(f, m2.a, mat_adj(m1.a)), m1.b) == mat_scale(f, m1.det_a, m2.b),
             "A2 A1^-1 B1 = B2");
  }

  const auto im1 = derivative_image(p, first);
  r.expect(im1 == derivative_image(p, second), "Im at (a1, b1) equals Im at (a2, b2)");
  r.expect(im1 == derivative_image(p, closed[2]), "Im at (a1, b1) equals Im at (a1+a2, b1+b2)");
  return out;
}

}  // namespace bfly
