#include "bfly/gf2.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace bfly::gf2 {

namespace {

int lead(Word w) { return 31 - std::countl_zero(w); }

}  // namespace

std::vector<Word> reduced_basis(std::span<const Word> vectors) {
  std::vector<Word> rows;
  for (Word w : vectors) {
    for (Word r : rows) {
      if (w & (Word{1} << lead(r))) w ^= r;
    }
    if (w == 0) continue;
    // Eliminate the new pivot from the existing rows.
    const Word pivot = Word{1} << lead(w);
    for (Word& r : rows) {
      if (r & pivot) r ^= w;
    }
    rows.push_back(w);
  }
  std::sort(rows.begin(), rows.end(), std::greater<>());
  return rows;
}

std::vector<Word> kernel_basis(std::span<const Word> images) {
  // Row-reduce (image | combination) pairs; rows whose image vanishes give kernel vectors.
  struct Row {
    Word image;
    Word combo;
  };
  std::vector<Row> pivots;
  std::vector<Word> kernel;
  for (std::size_t j = 0; j < images.size(); ++j) {
    Row row{images[j], Word{1} << j};
    for (const Row& p : pivots) {
      if (row.image & (Word{1} << lead(p.image))) {
        row.image ^= p.image;
        row.combo ^= p.combo;
      }
    }
    if (row.image == 0) {
      kernel.push_back(row.combo);
    } else {
      const Word bit = Word{1} << lead(row.image);
      for (Row& p : pivots) {
        if (p.image & bit) {
          p.image ^= row.image;
          p.combo ^= row.combo;
        }
      }
      pivots.push_back(row);
    }
  }
  return reduced_basis(kernel);
}

std::vector<Word> span_elements(std::span<const Word> basis) {
  std::vector<Word> out{0};
  out.reserve(std::size_t{1} << basis.size());
  for (Word b : basis) {
    const std::size_t sz = out.size();
    for (std::size_t k = 0; k < sz; ++k) out.push_back(out[k] ^ b);
  }
  return out;
}

}  // namespace bfly::gf2
