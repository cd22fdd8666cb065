#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bfly/check.hpp"
#include "bfly/sbox.hpp"
#include "bfly/tower.hpp"

namespace bfly {

/// Parameters of R_i(x, y) = (x + alpha y)^(2^i+1) + beta y^(2^i+1) over GF(2^n), n odd.
class ButterflyParams {
 public:
  /// Throws ConfigError unless 1 <= i <= 30, gcd(i, n) = 1 and alpha, beta lie in GF(q).
  ButterflyParams(QuadExt ext, unsigned i, Elem alpha, Elem beta);

  const QuadExt& ext() const { return ext_; }
  const FieldSpec& field() const { return ext_.base(); }
  unsigned i() const { return i_; }
  Elem alpha() const { return alpha_; }
  Elem beta() const { return beta_; }
  bool i_odd() const { return (i_ & 1u) != 0; }
  /// 2^i + 1.
  std::uint64_t exponent() const { return (std::uint64_t{1} << i_) + 1; }
  /// (2^i + 1)^-1 mod (q - 1), so that (x^e)^d = x on GF(q).
  std::uint64_t inverse_exponent() const { return inverse_exponent_; }

 private:
  QuadExt ext_;
  unsigned i_;
  Elem alpha_;
  Elem beta_;
  std::uint64_t inverse_exponent_;
};

using Pair = std::pair<Elem, Elem>;

Elem r_i(const ButterflyParams& p, Elem x, Elem y);
/// R_y^-1(z) = (z + beta y^e)^d + alpha y, the inverse of x -> R_i(x, y).
Elem r_i_inverse(const ButterflyParams& p, Elem z, Elem y);

/// V_i(x, y) = (R_i(x, y), R_i(y, x)).
Pair closed_butterfly_eval(const ButterflyParams& p, Elem x, Elem y);
/// H_R(x, y) = (R(y, w), w) with w = R_y^-1(x).
Pair open_butterfly_eval(const ButterflyParams& p, Elem x, Elem y);

/// Tables over packed (x, y) = x*2^n + y.
Sbox closed_butterfly(const ButterflyParams& p);
Sbox open_butterfly(const ButterflyParams& p);

/// Coefficients of the univariate form f(z) = e1 z^(q(2^i+1)) + e2 z^(q 2^i+1)
/// + e3 z^(2^i+q) + e4 z^(2^i+1) and the derived phi values.
struct EpsilonPhi {
  std::array<Elem, 4> eps{};
  /// phi1..phi4 from eps; phi[2] follows the parity of i.
  std::array<Elem, 4> phi{};
  /// (alpha^(2^i+1) + beta + 1)^2, the phi3 used by every derivative identity.
  Elem phi3_even = 0;
};

/// phi1 = e1e3 + e2e4, phi2 = e1e2 + e3e4, phi3 = e1^2 + e4^2, phi4 = sum e_k^2.
std::array<Elem, 4> phi_from_eps(const FieldSpec& f, const std::array<Elem, 4>& eps);

/// eps from (alpha, beta) with the odd-i reordering (e3, e4, e1, e2).
EpsilonPhi univariate_coeffs(const ButterflyParams& p);

UnivariatePoly univariate_polynomial(const QuadExt& ext, unsigned i, const std::array<Elem, 4>& eps);
/// Table of the univariate form f for p.
Sbox univariate_sbox(const ButterflyParams& p);

/// f(z) = kUnivariateOutputScale * V_i(kUnivariateInputScale * z) for both parities of i.
inline constexpr Fq2 kUnivariateInputScale{1, 1};   // gamma^2
inline constexpr Fq2 kUnivariateOutputScale{0, 1};  // gamma

/// The table of z -> out * s(in * z) over GF(q^2) indices.
Sbox scale_sbox(const QuadExt& ext, const Sbox& s, Fq2 in, Fq2 out);

enum class GammaReason { ok, alpha_or_beta_zero, phi4_zero, relation_fails };

struct GammaWitness {
  Elem alpha = 0;
  Elem beta = 0;
  bool in_gamma = false;
  GammaReason reason = GammaReason::relation_fails;
  std::array<Elem, 4> phi{};
};

/// phi2^(2^i) = phi1 phi4^(2^i-1) and phi4 != 0.
bool gamma_relation(const FieldSpec& f, unsigned i, const std::array<Elem, 4>& phi);
GammaWitness gamma_membership(const ButterflyParams& p);
/// Every (alpha, beta) in GF(q)* x GF(q)*, ordered by (alpha, beta).
std::vector<GammaWitness> gamma_enumerate(const QuadExt& ext, unsigned i, unsigned jobs = 1);
std::vector<Pair> gamma_members(const QuadExt& ext, unsigned i, unsigned jobs = 1);

/// The stated properties of phi for a member of Gamma (nonvanishing product,
/// Frobenius ratio, radical, trace values, the root pair) and the identities
/// used to derive them. phi3 is the parity-correct value for the trace items
/// and the even value elsewhere. Throws PreconditionError if p is not in Gamma.
CheckReport lemma8_properties(const ButterflyParams& p);

/// The four conditions for f(z) to permute GF(q^2), evaluated directly.
struct PermutationConditions {
  bool gcd_condition = false;      // gcd(2^i+1, q-1) = 1
  bool no_root_on_circle = false;  // h has no zero on mu_{q+1}
  bool fixed_only_at_one = false;  // g(z) = 1 only for z = 1
  bool no_t_solution = false;      // no (X, Y) in T solves the phi equation
  std::size_t t_size = 0;
  bool t_in_base_field = true;     // every (X, Y) landed in GF(q)^2
  bool is_permutation = false;     // direct bijectivity of f

  bool conjunction() const {
    return gcd_condition && no_root_on_circle && fixed_only_at_one && no_t_solution;
  }
  bool consistent() const { return conjunction() == is_permutation; }
};

PermutationConditions permutation_conditions(const QuadExt& ext, unsigned i,
                                             const std::array<Elem, 4>& eps);
PermutationConditions permutation_conditions(const ButterflyParams& p);

/// S_{V,(a1,b1)}(a2, b2) = V(a1+a2, b1+b2) + V(a1, b1) + V(a2, b2).
Pair derivative_form(const ButterflyParams& p, Pair first, Pair second);
/// The same value from the expanded two-equation polynomial system.
Pair derivative_form_expanded(const ButterflyParams& p, Pair first, Pair second);

/// Closed-form nonzero solutions (a2, b2) of S_{V,(a1,b1)}(a2, b2) = 0 for p in Gamma:
/// (a1, b1), ((u+1)a1 + w b1, w a1 + u b1), (u a1 + w b1, w a1 + (u+1) b1)
/// with w = (phi2+phi4)/phi4 and u = w alpha.
std::array<Pair, 3> derivative_zero_closed_form(const ButterflyParams& p, Pair first);
/// All (a2, b2) != (0, 0) with S_{V,(a1,b1)}(a2, b2) = (0, 0), by exhaustive search.
std::vector<Pair> derivative_zero_brute_force(const ButterflyParams& p, Pair first);

struct DerivativeZeroCheck {
  std::vector<Pair> closed_form;  // sorted, duplicates removed
  std::vector<Pair> brute_force;  // sorted
  std::vector<Pair> extra;        // found by search, not predicted
  std::vector<Pair> missing;      // predicted, not a solution
  bool equal() const { return extra.empty() && missing.empty(); }
};

/// Throws PreconditionError if p is not in Gamma or (a1, b1) = (0, 0).
DerivativeZeroCheck prop3_solutions(const ButterflyParams& p, Pair first);

/// 2x2 matrix [[e0, e1], [e2, e3]] over GF(q).
struct Mat2 {
  std::array<Elem, 4> e{};
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

Mat2 mat_mul(const FieldSpec& f, const Mat2& x, const Mat2& y);
Mat2 mat_scale(const FieldSpec& f, Elem c, const Mat2& x);
Elem mat_det(const FieldSpec& f, const Mat2& x);
/// Adjugate; x * adj(x) = det(x) * I.
Mat2 mat_adj(const Mat2& x);

/// S_{V,(a,b)}(x, y) = A [x^(2^i), x]^T + B [y^(2^i), y]^T.
struct DerivativeMatrices {
  Mat2 a;
  Mat2 b;
  Elem det_a = 0;
  Elem det_b = 0;
};

DerivativeMatrices derivative_matrices(const ButterflyParams& p, Pair point);

struct MatrixCheck {
  CheckReport report;
  bool det_a1_zero = false;
  bool det_b1_zero = false;
  bool both_dets_zero() const { return det_a1_zero && det_b1_zero; }
  bool left_identity_checked = false;   // B2 B1^-1 A1 = A2
  bool right_identity_checked = false;  // A2 A1^-1 B1 = B2
};

/// Matrix form of the derivative at (a1, b1) and at its partner from the
/// closed form, determinant factorisations and zero loci, both change-of-basis
/// identities where defined, and direct equality of the derivative images.
/// Throws PreconditionError if p is not in Gamma or (a1, b1) = (0, 0).
MatrixCheck im_matrix_check(const ButterflyParams& p, Pair first);

/// Image {S_{V,(a,b)}(x, y)} as a membership bitmap over packed indices.
std::vector<bool> derivative_image(const ButterflyParams& p, Pair point);

}  // namespace bfly
