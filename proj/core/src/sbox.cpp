#include "bfly/sbox.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "bfly/errors.hpp"

namespace bfly {

Sbox::Sbox(unsigned m, std::vector<std::uint32_t> table) : m_(m), table_(std::move(table)) {
  if (m_ > kMaxSboxBits) {
    throw PreconditionError("S-box width " + std::to_string(m_) + " exceeds " +
                            std::to_string(kMaxSboxBits) + " bits");
  }
  if (table_.size() != (std::size_t{1} << m_)) {
    throw PreconditionError("S-box table has " + std::to_string(table_.size()) +
                            " entries, expected 2^" + std::to_string(m_));
  }
  for (std::size_t x = 0; x < table_.size(); ++x) {
    if (table_[x] >= table_.size()) {
      throw PreconditionError("S-box entry at " + std::to_string(x) + " is out of range");
    }
  }
}

Sbox Sbox::identity(unsigned m) {
  std::vector<std::uint32_t> t(std::size_t{1} << m);
  for (std::uint32_t x = 0; x < t.size(); ++x) t[x] = x;
  return Sbox(m, std::move(t));
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> Sbox::find_collision() const {
  std::vector<std::uint32_t> seen(size(), UINT32_MAX);
  for (std::uint32_t x = 0; x < size(); ++x) {
    std::uint32_t& slot = seen[table_[x]];
    if (slot != UINT32_MAX) return std::make_pair(slot, x);
    slot = x;
  }
  return std::nullopt;
}

bool Sbox::is_permutation() const { return !find_collision().has_value(); }

Sbox Sbox::inverse() const {
  if (auto c = find_collision()) {
    throw PreconditionError("S-box is not a permutation: inputs " + std::to_string(c->first) +
                            " and " + std::to_string(c->second) + " both map to " +
                            std::to_string(table_[c->first]));
  }
  std::vector<std::uint32_t> inv(size());
  for (std::uint32_t x = 0; x < size(); ++x) inv[table_[x]] = x;
  return Sbox(m_, std::move(inv));
}

UnivariatePoly::UnivariatePoly(std::vector<Monomial> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Monomial& a, const Monomial& b) { return a.exponent < b.exponent; });
  for (const Monomial& t : terms) {
    if (!terms_.empty() && terms_.back().exponent == t.exponent) {
      terms_.back().coeff += t.coeff;
    } else {
      terms_.push_back(t);
    }
  }
  std::erase_if(terms_, [](const Monomial& t) { return t.coeff.is_zero(); });
}

Fq2 UnivariatePoly::eval(const QuadExt& ext, Fq2 z) const {
  Fq2 acc{};
  for (const Monomial& t : terms_) acc += ext.mul(t.coeff, ext.pow(z, t.exponent));
  return acc;
}

Sbox sbox_from_univariate(const UnivariatePoly& p, const QuadExt& ext) {
  std::vector<std::uint32_t> table(ext.size());
  for (std::uint32_t idx = 0; idx < ext.size(); ++idx) {
    table[idx] = ext.index(p.eval(ext, ext.from_index(idx)));
  }
  return Sbox(ext.m(), std::move(table));
}

void moebius_transform(std::span<std::uint8_t> tt) {
  for (std::size_t step = 1; step < tt.size(); step <<= 1) {
    for (std::size_t base = 0; base < tt.size(); base += 2 * step) {
      for (std::size_t k = base; k < base + step; ++k) tt[k + step] ^= tt[k];
    }
  }
}

unsigned algebraic_degree(const Sbox& s) {
  unsigned best = 0;
  std::vector<std::uint8_t> tt(s.size());
  for (unsigned bit = 0; bit < s.m(); ++bit) {
    for (std::uint32_t x = 0; x < s.size(); ++x) tt[x] = (s[x] >> bit) & 1u;
    moebius_transform(tt);
    for (std::uint32_t mono = 0; mono < s.size(); ++mono) {
      if (tt[mono]) best = std::max(best, static_cast<unsigned>(std::popcount(mono)));
    }
  }
  return best;
}

void write_sbox(std::ostream& os, const Sbox& s, std::span<const std::string> header_comments) {
  for (const std::string& c : header_comments) os << "# " << c << '\n';
  os << "m=" << s.m() << '\n';
  os << std::hex;
  for (std::uint32_t v : s.table()) os << v << '\n';
  os << std::dec;
}

Sbox read_sbox(std::istream& is) {
  std::optional<unsigned> m;
  std::vector<std::uint32_t> table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string tok = line.substr(first, last - first + 1);
    if (!m) {
      if (tok.rfind("m=", 0) != 0) {
        throw ReportError("line " + std::to_string(lineno) + ": expected 'm=<int>' header");
      }
      try {
        m = static_cast<unsigned>(std::stoul(tok.substr(2)));
      } catch (const std::exception&) {
        throw ReportError("line " + std::to_string(lineno) + ": bad width '" + tok + "'");
      }
      if (*m > kMaxSboxBits) throw ReportError("S-box width " + tok + " too large");
      table.reserve(std::size_t{1} << *m);
      continue;
    }
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &used, 16);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) {
      throw ReportError("line " + std::to_string(lineno) + ": not a hexadecimal value: '" + tok + "'");
    }
    table.push_back(static_cast<std::uint32_t>(v));
  }
  if (!m) throw ReportError("S-box file has no 'm=' header");
  if (table.size() != (std::size_t{1} << *m)) {
    throw ReportError("S-box file lists " + std::to_string(table.size()) + " values, expected " +
                      std::to_string(std::size_t{1} << *m));
  }
  try {
    return Sbox(*m, std::move(table));
  } catch (const PreconditionError& e) {
    throw ReportError(e.what());
  }
}

void save_sbox(const std::string& path, const Sbox& s, std::span<const std::string> header_comments) {
  std::ofstream os(path);
  if (!os) throw ReportError("cannot open '" + path + "' for writing");
  write_sbox(os, s, header_comments);
  if (!os) throw ReportError("write to '" + path + "' failed");
}

Sbox load_sbox(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ReportError("cannot open '" + path + "'");
  return read_sbox(is);
}

}  // namespace bfly
