#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bfly/tower.hpp"

namespace bfly {

inline constexpr unsigned kMaxSboxBits = 20;

/// Lookup table of a function on m-bit words: table()[x] = f(x).
class Sbox {
 public:
  Sbox() = default;
  /// Throws PreconditionError if the length is not 2^m or an entry is >= 2^m.
  Sbox(unsigned m, std::vector<std::uint32_t> table);

  static Sbox identity(unsigned m);

  unsigned m() const { return m_; }
  std::uint32_t size() const { return std::uint32_t{1} << m_; }
  std::uint32_t operator[](std::uint32_t x) const { return table_[x]; }
  std::span<const std::uint32_t> table() const { return table_; }

  bool is_permutation() const;
  /// First pair x1 < x2 with equal outputs, if any.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> find_collision() const;
  /// Throws PreconditionError naming a colliding pair on non-bijections.
  Sbox inverse() const;

  friend bool operator==(const Sbox&, const Sbox&) = default;

 private:
  unsigned m_ = 0;
  std::vector<std::uint32_t> table_;
};

struct Monomial {
  Fq2 coeff;
  std::uint64_t exponent = 0;
};

/// Sparse univariate polynomial over GF(q^2). Terms with equal exponents are
/// merged and zero coefficients dropped on construction.
class UnivariatePoly {
 public:
  UnivariatePoly() = default;
  explicit UnivariatePoly(std::vector<Monomial> terms);

  std::span<const Monomial> terms() const { return terms_; }
  Fq2 eval(const QuadExt& ext, Fq2 z) const;

 private:
  std::vector<Monomial> terms_;
};

/// table[index(z)] = index(p(z)) with index(u + gamma v) = u*2^n + v.
Sbox sbox_from_univariate(const UnivariatePoly& p, const QuadExt& ext);

/// Binary Moebius transform of a truth table of length 2^k (in place; an involution).
void moebius_transform(std::span<std::uint8_t> truth_table);

/// Maximum ANF degree over the m coordinate functions (0 for constant maps).
unsigned algebraic_degree(const Sbox& s);

/// S-box interchange format: "m=<int>" then 2^m hexadecimal lines in input
/// order; '#' starts a comment anywhere on a line.
void write_sbox(std::ostream& os, const Sbox& s, std::span<const std::string> header_comments = {});
Sbox read_sbox(std::istream& is);
void save_sbox(const std::string& path, const Sbox& s, std::span<const std::string> header_comments = {});
Sbox load_sbox(const std::string& path);

}  // namespace bfly
