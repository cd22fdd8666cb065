#include "bfly/equivalence.hpp"

#include <mutex>
#include <string>
#include <tuple>

#include "bfly/errors.hpp"
#include "bfly/parallel.hpp"

namespace bfly {

namespace {

void require_coprime(const QuadExt& ext, unsigned i) {
  if (i < 1 || i > 30 || gcd_u64(i, ext.n()) != 1) {
    throw ConfigError("gold construction needs 1 <= i <= 30 and gcd(i, n) = 1");
  }
}

Sbox power_sbox(const FieldSpec& f, std::uint64_t e) {
  std::vector<std::uint32_t> t(f.q());
  for (Elem x = 0; x < f.q(); ++x) t[x] = x == 0 ? 0 : f.pow(x, e);
  return Sbox(f.n(), std::move(t));
}

}  // namespace

std::uint64_t gold_exponent(const QuadExt& ext, unsigned i) {
  return (std::uint64_t{1} << i) + ((i & 1u) ? ext.q() : 1);
}

Sbox gold_construct(const QuadExt& ext, unsigned i, LinMapQ2 l1, LinMapQ2 l2) {
  require_coprime(ext, i);
  if (!l1.invertible() || !l2.invertible()) {
    throw PreconditionError("gold_construct needs invertible maps (A != B and C != D)");
  }
  const std::uint64_t e = gold_exponent(ext, i);
  std::vector<std::uint32_t> t(ext.size());
  for (std::uint32_t k = 0; k < ext.size(); ++k) {
    t[k] = ext.index(l2.apply(ext, ext.pow(l1.apply(ext, ext.from_index(k)), e)));
  }
  return Sbox(ext.m(), std::move(t));
}

std::array<Elem, 4> gold_coefficients(const FieldSpec& f, unsigned i, LinMapQ2 l1, LinMapQ2 l2) {
  const Elem a = l1.a, b = l1.b, c = l2.a, d = l2.b;
  const Elem at = f.frob(a, i), bt = f.frob(b, i);
  const Elem at1 = f.mul(at, a), bt1 = f.mul(bt, b);
  const Elem atb = f.mul(at, b), abt = f.mul(a, bt);
  const std::array<Elem, 4> even{f.mul(at1, d) ^ f.mul(bt1, c), f.mul(atb, d) ^ f.mul(abt, c),
                                 f.mul(abt, d) ^ f.mul(atb, c), f.mul(at1, c) ^ f.mul(bt1, d)};
  if (i & 1u) return {even[1], even[0], even[3], even[2]};
  return even;
}

bool gold_phi_check(const FieldSpec& f, unsigned i, LinMapQ2 l1, LinMapQ2 l2) {
  return gamma_relation(f, i, phi_from_eps(f, gold_coefficients(f, i, l1, l2)));
}

std::vector<Fq2> gold_probe_points(const QuadExt& ext) {
  return {QuadExt::one(), QuadExt::gamma(), QuadExt::one() + QuadExt::gamma(),
          Fq2{ext.n() > 1 ? Elem{2} : Elem{1}, 1}};
}

GoldSearchResult find_gold_match(const QuadExt& ext, unsigned i, const Sbox& target, unsigned jobs,
                                 bool count_all) {
  require_coprime(ext, i);
  if (target.m() != ext.m()) throw PreconditionError("gold search: target width does not match the field");
  const std::uint32_t q = ext.q();
  const std::uint64_t e = gold_exponent(ext, i);
  const auto probes = gold_probe_points(ext);
  std::vector<Fq2> want(probes.size());
  for (std::size_t k = 0; k < probes.size(); ++k) want[k] = ext.from_index(target[ext.index(probes[k])]);

  struct PerA {
    std::optional<std::tuple<Elem, Elem, Elem>> first;  // (B, C, D)
    std::uint64_t count = 0;
    std::uint64_t full = 0;
  };
  std::vector<PerA> per_a(q);

  parallel_for(0, q, jobs, [&](std::size_t aa) {
    const auto a = static_cast<Elem>(aa);
    PerA& out = per_a[aa];
    std::vector<Fq2> y(probes.size());
    for (Elem b = 0; b < q; ++b) {
      if (b == a) continue;
      const LinMapQ2 l1{a, b};
      for (std::size_t k = 0; k < probes.size(); ++k) y[k] = ext.pow(l1.apply(ext, probes[k]), e);
      // L2(y0) = C y0^q + D y0 = want0 fixes D once C is chosen.
      const Fq2 y0q = ext.frobenius(y[0]);
      const Fq2 y0inv = ext.inv(y[0]);
      for (Elem c = 0; c < q; ++c) {
        const Fq2 dd = ext.mul(want[0] + ext.scale(c, y0q), y0inv);
        if (!dd.in_base_field() || dd.u == c) continue;
        const LinMapQ2 l2{c, dd.u};
        bool ok = true;
        for (std::size_t k = 1; k < probes.size() && ok; ++k) ok = l2.apply(ext, y[k]) == want[k];
        if (!ok) continue;
        ++out.full;
        for (std::uint32_t z = 0; z < ext.size() && ok; ++z) {
          ok = ext.index(l2.apply(ext, ext.pow(l1.apply(ext, ext.from_index(z)), e))) == target[z];
        }
        if (!ok) continue;
        ++out.count;
        if (!out.first) out.first = std::make_tuple(b, c, dd.u);
        if (!count_all) return;
      }
    }
  });

  GoldSearchResult r;
  for (Elem a = 0; a < q; ++a) {
    const PerA& p = per_a[a];
    r.full_comparisons += p.full;
    if (p.first && !r.witness) {
      GoldWitness w;
      w.l1 = {a, std::get<0>(*p.first)};
      w.l2 = {std::get<1>(*p.first), std::get<2>(*p.first)};
      w.i = i;
      w.probes = probes;
      r.witness = w;
    }
    if (count_all) r.witness_count += p.count;
  }
  if (!count_all) {
    r.witness_count = r.witness ? 1 : 0;
  } else if (r.witness) {
    r.witness->witness_count = r.witness_count;
  }
  return r;
}

GoldSearchResult find_gold_equivalence(const ButterflyParams& p, unsigned jobs, bool count_all) {
  if (!gamma_membership(p).in_gamma) {
    throw PreconditionError("gold equivalence search needs (alpha, beta) in Gamma");
  }
  GoldSearchResult r = find_gold_match(p.ext(), p.i(), univariate_sbox(p), jobs, count_all);
  if (r.witness) {
    r.witness->alpha = p.alpha();
    r.witness->beta = p.beta();
  }
  return r;
}

bool replay_gold_witness(const ButterflyParams& p, const GoldWitness& w) {
  if (w.i != p.i() || !w.l1.invertible() || !w.l2.invertible()) return false;
  const Sbox g = gold_construct(p.ext(), w.i, w.l1, w.l2);
  if (g != univariate_sbox(p)) return false;
  const Sbox v = closed_butterfly(p);
  const Fq2 gamma2 = p.ext().sqr(QuadExt::gamma());
  return scale_sbox(p.ext(), g, QuadExt::gamma(), gamma2) == v;
}

Sbox inverse_sbox(const FieldSpec& f) { return power_sbox(f, f.q() - 2); }

Sbox gold_power_sbox(const FieldSpec& f, unsigned i) {
  if (2 * i >= 63) throw PreconditionError("gold power exponent out of range");
  return power_sbox(f, (std::uint64_t{1} << (2 * i)) + 1);
}

Elem first_primitive(const FieldSpec& f) {
  for (Elem x = 1; x < f.q(); ++x) {
    if (f.is_primitive(x)) return x;
  }
  return 1;  // GF(2)
}

Sbox mesnager_trinomial_sbox(const FieldSpec& f, unsigned k, unsigned s, Elem alpha) {
  const unsigned n = 3 * k;
  if (k == 0 || k % 3 == 0) throw PreconditionError("mesnager trinomial needs 3 !| k");
  if ((k + s) % 3 != 0) throw PreconditionError("mesnager trinomial needs 3 | k + s");
  if (s > 24) throw PreconditionError("mesnager trinomial needs s <= 24");
  if (gcd_u64(n, s) != 1) throw PreconditionError("mesnager trinomial needs gcd(3k, s) = 1");
  if (f.n() != 2 * n) {
    throw PreconditionError("mesnager trinomial lives on GF(2^" + std::to_string(2 * n) + ")");
  }
  if (!f.contains(alpha) || !f.is_primitive(alpha)) {
    throw PreconditionError("mesnager trinomial needs a primitive alpha");
  }
  const std::uint64_t e1 = (std::uint64_t{1} << (2 * s)) + 1;
  const std::uint64_t e2 = (std::uint64_t{1} << (2 * n - 2 * k)) + (std::uint64_t{1} << (2 * k + 2 * s));
  const Elem c2 = f.frob(alpha, 2 * k);
  std::vector<std::uint32_t> t(f.q());
  for (Elem x = 0; x < f.q(); ++x) {
    t[x] = x == 0 ? 0 : f.mul(alpha, f.pow(x, e1)) ^ f.mul(c2, f.pow(x, e2));
  }
  return Sbox(f.n(), std::move(t));
}

}  // namespace bfly
