#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bfly/errors.hpp"
#include "bfly/gf2.hpp"
#include "bfly/sbox.hpp"

namespace bfly {

/// Square 2^m x 2^m table of solution counts, row index a, column index b.
class CountTable {
 public:
  CountTable() = default;
  explicit CountTable(unsigned m) : m_(m), cells_(std::size_t{1} << (2 * m), 0) {}

  unsigned m() const { return m_; }
  std::uint32_t size() const { return std::uint32_t{1} << m_; }
  std::uint32_t at(std::uint32_t a, std::uint32_t b) const { return cells_[index(a, b)]; }
  std::uint32_t& at(std::uint32_t a, std::uint32_t b) { return cells_[index(a, b)]; }
  std::span<const std::uint32_t> row(std::uint32_t a) const {
    return std::span(cells_).subspan(std::size_t{a} << m_, size());
  }

  friend bool operator==(const CountTable&, const CountTable&) = default;

 private:
  std::size_t index(std::uint32_t a, std::uint32_t b) const { return (std::size_t{a} << m_) | b; }

  unsigned m_ = 0;
  std::vector<std::uint32_t> cells_;
};

/// Maximum, argmax and value histogram over the region of a table that
/// defines a uniformity (a != 0 for the DDT; a, b != 0 for the BCT).
struct SpectrumSummary {
  std::uint32_t max_value = 0;
  std::uint32_t argmax_a = 0;
  std::uint32_t argmax_b = 0;
  std::uint64_t cells = 0;
  /// value -> number of cells; left empty for BCTs with m > 12.
  std::map<std::uint32_t, std::uint64_t> histogram;
};

inline constexpr unsigned kMaxHistogramBits = 12;

// --- differential ---------------------------------------------------------

/// DDT(a, b) = #{x : s[x ^ a] ^ s[x] = b}. Works for any function.
CountTable ddt(const Sbox& s, unsigned jobs = 1);
/// Summary over a != 0, all b; max_value is the differential uniformity.
SpectrumSummary differential_summary(const CountTable& ddt);
/// Differential uniformity without materialising the table.
std::uint32_t differential_uniformity(const Sbox& s, unsigned jobs = 1);

// --- boomerang ------------------------------------------------------------

/// BCT(a, b) = #{x : s^-1(s[x] ^ b) ^ s^-1(s[x ^ a] ^ b) = a}.
/// Throws PreconditionError for non-permutations.
CountTable bct_via_inverse(const Sbox& s, unsigned jobs = 1);

/// BCT(a, b) = #{(x, y) : s[x ^ a] ^ s[y ^ a] = b and s[x] ^ s[y] = b}, counted
/// from ordered pairs without using the inverse table.
/// Throws PreconditionError for non-permutations.
CountTable bct_via_system(const Sbox& s, unsigned jobs = 1);

/// Summary over a, b != 0; max_value is the boomerang uniformity.
SpectrumSummary boomerang_summary(const CountTable& bct);
std::uint32_t boomerang_uniformity(const Sbox& s, unsigned jobs = 1);

// --- linear ---------------------------------------------------------------

struct WalshResult {
  std::uint32_t nonlinearity = 0;
  std::uint32_t spectrum_max = 0;  // max |W(u, v)| over u and v != 0
};

/// W(u, v) = sum_x (-1)^(<v, s[x]> + <u, x>) for every u, fixed component v.
std::vector<std::int32_t> walsh_component(const Sbox& s, std::uint32_t v);
/// nl = 2^(m-1) - max|W| / 2, with the fast Walsh-Hadamard transform per component.
WalshResult walsh_nonlinearity(const Sbox& s, unsigned jobs = 1);

// --- quadratic structure --------------------------------------------------

/// S(x, y) = s[x ^ y] ^ s[x] ^ s[y] ^ s[0]; bilinear when deg s <= 2.
inline std::uint32_t bilinear_form(const Sbox& s, std::uint32_t x, std::uint32_t y) {
  return s[x ^ y] ^ s[x] ^ s[y] ^ s[0];
}

/// Image and kernel of y -> S(a, y) as canonical GF(2) bases.
struct BilinearImage {
  std::uint32_t direction = 0;
  std::vector<gf2::Word> basis;
  std::vector<gf2::Word> kernel_basis;

  unsigned dim() const { return static_cast<unsigned>(basis.size()); }
  unsigned kernel_dim() const { return static_cast<unsigned>(kernel_basis.size()); }
};

/// Throws PreconditionError if deg s > 2, a == 0, or S(a, .) fails linearity.
BilinearImage bilinear_image(const Sbox& s, std::uint32_t a);

/// Differential uniformity of a function of degree <= 2 from kernel
/// dimensions: 2^(max_a dim ker S(a, .)). Throws PreconditionError if deg > 2.
std::uint32_t quadratic_differential_uniformity(const Sbox& s, unsigned jobs = 1);

enum class CriterionFailure { not_permutation, not_quadratic, differential_uniformity_not_4 };

class CriterionPreconditionError : public PreconditionError {
 public:
  CriterionPreconditionError(CriterionFailure reason, const std::string& what)
      : PreconditionError(what), reason_(reason) {}
  CriterionFailure reason() const { return reason_; }

 private:
  CriterionFailure reason_;
};

/// For a quadratic permutation with differential uniformity 4: the first pair
/// (a, b), a, b != 0, S(a, b) = 0, whose images differ, or nullopt if none.
/// The boomerang uniformity is 4 exactly when there is no such pair.
/// Throws CriterionPreconditionError naming the failed precondition.
std::optional<std::pair<std::uint32_t, std::uint32_t>> find_boomerang4_violation(
    const Sbox& s, unsigned jobs = 1);

/// True iff the boomerang uniformity of s is 4 (via the image criterion).
bool quadratic_boomerang4_check(const Sbox& s, unsigned jobs = 1);

}  // namespace bfly
