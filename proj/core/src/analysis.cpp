#include "bfly/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <mutex>
#include <string>

#include "bfly/parallel.hpp"

namespace bfly {

namespace {

void require_permutation(const Sbox& s, const char* what) {
  if (auto c = s.find_collision()) {
    throw PreconditionError(std::string(what) + " requires a permutation; inputs " +
                            std::to_string(c->first) + " and " + std::to_string(c->second) +
                            " collide");
  }
}

void record(SpectrumSummary& sum, std::uint32_t a, std::uint32_t b, std::uint32_t v, bool hist) {
  ++sum.cells;
  if (hist) ++sum.histogram[v];
  if (v > sum.max_value || sum.cells == 1) {
    sum.max_value = v;
    sum.argmax_a = a;
    sum.argmax_b = b;
  }
}

std::vector<gf2::Word> direction_images(const Sbox& s, std::uint32_t a) {
  std::vector<gf2::Word> images(s.m());
  for (unsigned j = 0; j < s.m(); ++j) images[j] = bilinear_form(s, a, std::uint32_t{1} << j);
  return images;
}

void require_degree_at_most_2(const Sbox& s) {
  if (const unsigned d = algebraic_degree(s); d > 2) {
    throw PreconditionError("bilinear form needs algebraic degree <= 2, got " + std::to_string(d));
  }
}

}  // namespace

CountTable ddt(const Sbox& s, unsigned jobs) {
  CountTable t(s.m());
  parallel_for(0, s.size(), jobs, [&](std::size_t a) {
    for (std::uint32_t x = 0; x < s.size(); ++x) {
      ++t.at(static_cast<std::uint32_t>(a), s[x ^ static_cast<std::uint32_t>(a)] ^ s[x]);
    }
  });
  return t;
}

SpectrumSummary differential_summary(const CountTable& ddt) {
  SpectrumSummary sum;
  for (std::uint32_t a = 1; a < ddt.size(); ++a) {
    for (std::uint32_t b = 0; b < ddt.size(); ++b) record(sum, a, b, ddt.at(a, b), true);
  }
  return sum;
}

std::uint32_t differential_uniformity(const Sbox& s, unsigned jobs) {
  std::mutex mu;
  std::uint32_t best = 0;
  parallel_for(1, s.size(), jobs, [&](std::size_t a) {
    std::vector<std::uint32_t> row(s.size(), 0);
    for (std::uint32_t x = 0; x < s.size(); ++x) {
      ++row[s[x ^ static_cast<std::uint32_t>(a)] ^ s[x]];
    }
    const std::uint32_t m = *std::max_element(row.begin(), row.end());
    std::lock_guard lock(mu);
    best = std::max(best, m);
  });
  return best;
}

CountTable bct_via_inverse(const Sbox& s, unsigned jobs) {
  require_permutation(s, "bct_via_inverse");
  const Sbox inv = s.inverse();
  const std::uint32_t size = s.size();
  CountTable t(s.m());
  // Columns are independent: for fixed b, t_b[x] = s^-1(s[x] ^ b) and
  // BCT(a, b) = #{x : t_b[x] ^ t_b[x ^ a] = a}.
  parallel_for(0, size, jobs, [&](std::size_t bb) {
    const auto b = static_cast<std::uint32_t>(bb);
    std::vector<std::uint32_t> tb(size);
    for (std::uint32_t x = 0; x < size; ++x) tb[x] = inv[s[x] ^ b];
    for (std::uint32_t a = 0; a < size; ++a) {
      std::uint32_t count = 0;
      for (std::uint32_t x = 0; x < size; ++x) count += ((tb[x] ^ tb[x ^ a]) == a);
      t.at(a, b) = count;
    }
  });
  return t;
}

CountTable bct_via_system(const Sbox& s, unsigned jobs) {
  require_permutation(s, "bct_via_system");
  const std::uint32_t size = s.size();
  CountTable t(s.m());
  parallel_for(0, size, jobs, [&](std::size_t aa) {
    const auto a = static_cast<std::uint32_t>(aa);
    for (std::uint32_t x = 0; x < size; ++x) {
      const std::uint32_t fx = s[x];
      const std::uint32_t fxa = s[x ^ a];
      for (std::uint32_t y = 0; y < size; ++y) {
        const std::uint32_t lower = fx ^ s[y];
        if ((fxa ^ s[y ^ a]) == lower) ++t.at(a, lower);
      }
    }
  });
  return t;
}

SpectrumSummary boomerang_summary(const CountTable& bct) {
  SpectrumSummary sum;
  const bool hist = bct.m() <= kMaxHistogramBits;
  for (std::uint32_t a = 1; a < bct.size(); ++a) {
    for (std::uint32_t b = 1; b < bct.size(); ++b) record(sum, a, b, bct.at(a, b), hist);
  }
  return sum;
}

std::uint32_t boomerang_uniformity(const Sbox& s, unsigned jobs) {
  return boomerang_summary(bct_via_inverse(s, jobs)).max_value;
}

std::vector<std::int32_t> walsh_component(const Sbox& s, std::uint32_t v) {
  std::vector<std::int32_t> w(s.size());
  for (std::uint32_t x = 0; x < s.size(); ++x) {
    w[x] = (std::popcount(s[x] & v) & 1) ? -1 : 1;
  }
  for (std::size_t step = 1; step < w.size(); step <<= 1) {
    for (std::size_t base = 0; base < w.size(); base += 2 * step) {
      for (std::size_t k = base; k < base + step; ++k) {
        const std::int32_t lo = w[k];
        const std::int32_t hi = w[k + step];
        w[k] = lo + hi;
        w[k + step] = lo - hi;
      }
    }
  }
  return w;
}

WalshResult walsh_nonlinearity(const Sbox& s, unsigned jobs) {
  std::mutex mu;
  std::uint32_t best = 0;
  parallel_for(1, s.size(), jobs, [&](std::size_t v) {
    const auto w = walsh_component(s, static_cast<std::uint32_t>(v));
    std::uint32_t local = 0;
    for (std::int32_t c : w) local = std::max(local, static_cast<std::uint32_t>(std::abs(c)));
    std::lock_guard lock(mu);
    best = std::max(best, local);
  });
  WalshResult r;
  r.spectrum_max = best;
  r.nonlinearity = s.m() == 0 ? 0 : (std::uint32_t{1} << (s.m() - 1)) - best / 2;
  return r;
}

BilinearImage bilinear_image(const Sbox& s, std::uint32_t a) {
  if (a == 0 || a >= s.size()) throw PreconditionError("bilinear_image needs a nonzero direction");
  require_degree_at_most_2(s);
  const auto images = direction_images(s, a);
  for (std::uint32_t y = 0; y < s.size(); ++y) {
    std::uint32_t expect = 0;
    for (unsigned j = 0; j < s.m(); ++j) {
      if ((y >> j) & 1u) expect ^= images[j];
    }
    if (bilinear_form(s, a, y) != expect) {
      throw PreconditionError("S(a, .) is not linear for a=" + std::to_string(a));
    }
  }
  return {a, gf2::reduced_basis(images), gf2::kernel_basis(images)};
}

std::uint32_t quadratic_differential_uniformity(const Sbox& s, unsigned jobs) {
  require_degree_at_most_2(s);
  std::mutex mu;
  unsigned best = 0;
  parallel_for(1, s.size(), jobs, [&](std::size_t a) {
    const auto images = direction_images(s, static_cast<std::uint32_t>(a));
    const unsigned k = static_cast<unsigned>(gf2::kernel_basis(images).size());
    std::lock_guard lock(mu);
    best = std::max(best, k);
  });
  return s.size() > 1 ? std::uint32_t{1} << best : 0;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> find_boomerang4_violation(
    const Sbox& s, unsigned jobs) {
  if (!s.is_permutation()) {
    throw CriterionPreconditionError(CriterionFailure::not_permutation,
                                     "boomerang criterion needs a permutation");
  }
  if (const unsigned d = algebraic_degree(s); d != 2) {
    throw CriterionPreconditionError(CriterionFailure::not_quadratic,
                                     "boomerang criterion needs a quadratic function, degree is " +
                                         std::to_string(d));
  }
  const std::uint32_t size = s.size();
  std::vector<std::vector<gf2::Word>> image(size);
  std::vector<std::vector<gf2::Word>> kernel(size);
  parallel_for(1, size, jobs, [&](std::size_t a) {
    const auto images = direction_images(s, static_cast<std::uint32_t>(a));
    image[a] = gf2::reduced_basis(images);
    kernel[a] = gf2::kernel_basis(images);
  });
  unsigned max_kernel = 0;
  for (std::uint32_t a = 1; a < size; ++a) {
    max_kernel = std::max(max_kernel, static_cast<unsigned>(kernel[a].size()));
  }
  if (max_kernel != 2) {
    throw CriterionPreconditionError(
        CriterionFailure::differential_uniformity_not_4,
        "boomerang criterion needs differential uniformity 4, got " +
            std::to_string(std::uint32_t{1} << max_kernel));
  }
  for (std::uint32_t a = 1; a < size; ++a) {
    for (gf2::Word b : gf2::span_elements(kernel[a])) {
      if (b != 0 && image[a] != image[b]) return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

bool quadratic_boomerang4_check(const Sbox& s, unsigned jobs) {
  return !find_boomerang4_violation(s, jobs).has_value();
}

}  // namespace bfly
