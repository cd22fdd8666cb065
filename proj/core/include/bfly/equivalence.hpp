#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "bfly/butterfly.hpp"

namespace bfly {

/// z -> A z^q + B z on GF(q^2) with A, B in GF(q); bijective iff A != B.
struct LinMapQ2 {
  Elem a = 0;
  Elem b = 0;

  bool invertible() const { return a != b; }
  Fq2 apply(const QuadExt& ext, Fq2 z) const {
    return ext.scale(a, ext.frobenius(z)) + ext.scale(b, z);
  }
};

/// Exponent 2^i + I of the inner power map, I = 1 for even i and q for odd i.
std::uint64_t gold_exponent(const QuadExt& ext, unsigned i);

/// Table of z -> L2(L1(z)^(2^i + I)). Throws PreconditionError for a singular map
/// and ConfigError if gcd(i, n) != 1.
Sbox gold_construct(const QuadExt& ext, unsigned i, LinMapQ2 l1, LinMapQ2 l2);

/// eps of the univariate form of the Gold construction with L1 = (A, B), L2 = (C, D).
/// Odd i returns the even-i formulas in the order (e2, e1, e4, e3).
std::array<Elem, 4> gold_coefficients(const FieldSpec& f, unsigned i, LinMapQ2 l1, LinMapQ2 l2);

/// Whether the phi values of gold_coefficients satisfy the Gamma relation.
bool gold_phi_check(const FieldSpec& f, unsigned i, LinMapQ2 l1, LinMapQ2 l2);

struct GoldWitness {
  LinMapQ2 l1;
  LinMapQ2 l2;
  unsigned i = 0;
  Elem alpha = 0;
  Elem beta = 0;
  /// Points compared before each full-table comparison.
  std::vector<Fq2> probes;
  /// Number of (A, B, C, D) matching the target, when requested.
  std::optional<std::uint64_t> witness_count;
};

/// Probe points {1, gamma, gamma + 1, t + gamma}, t the polynomial-basis generator.
std::vector<Fq2> gold_probe_points(const QuadExt& ext);

struct GoldSearchResult {
  std::optional<GoldWitness> witness;  // lexicographically smallest (A, B, C, D)
  std::uint64_t witness_count = 0;     // all matches if counting, else 0 or 1
  std::uint64_t full_comparisons = 0;  // candidates that passed every probe
};

/// Searches (A, B, C, D) in GF(q)^4, A != B, C != D, for G = target where target
/// is a table over GF(q^2). D is solved from the first probe, so the loop runs
/// over (A, B, C). With count_all the full witness set is counted.
GoldSearchResult find_gold_match(const QuadExt& ext, unsigned i, const Sbox& target, unsigned jobs = 1,
                                 bool count_all = false);

/// Target is the univariate form f of p. Throws PreconditionError if p is not in Gamma.
GoldSearchResult find_gold_equivalence(const ButterflyParams& p, unsigned jobs = 1,
                                       bool count_all = false);

/// Rebuilds G from the witness and checks G = f and V(z) = gamma^2 G(gamma z) on
/// the whole field.
bool replay_gold_witness(const ButterflyParams& p, const GoldWitness& w);

// --- reference families ---------------------------------------------------

/// x^(2^m - 2) with 0 -> 0.
Sbox inverse_sbox(const FieldSpec& f);
/// x^(2^(2i) + 1).
Sbox gold_power_sbox(const FieldSpec& f, unsigned i);

/// alpha x^(2^(2s)+1) + alpha^(2^(2k)) x^(2^(2n-2k) + 2^(2k+2s)) over GF(2^(2n)), n = 3k.
/// Requires 3 !| k, 3 | k + s, gcd(3k, s) = 1, 2n <= 16 and alpha primitive;
/// throws PreconditionError naming the violated constraint.
Sbox mesnager_trinomial_sbox(const FieldSpec& f, unsigned k, unsigned s, Elem alpha);

/// Smallest primitive element of f (in integer order).
Elem first_primitive(const FieldSpec& f);

}  // namespace bfly
