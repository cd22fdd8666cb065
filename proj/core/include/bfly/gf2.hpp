#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bfly::gf2 {

using Word = std::uint32_t;

/// Canonical reduced row-echelon basis of the span of `vectors`: pivots are
/// the leading bits, each pivot bit is cleared in every other row, and rows
/// are sorted by descending pivot. Two spans are equal iff their canonical
/// bases are equal.
std::vector<Word> reduced_basis(std::span<const Word> vectors);

/// Kernel of the linear map e_j -> images[j] (j < images.size()), as a
/// canonical basis of input vectors.
std::vector<Word> kernel_basis(std::span<const Word> images);

/// Every element of the span of `basis` (2^dim entries, 0 first).
std::vector<Word> span_elements(std::span<const Word> basis);

}  // namespace bfly::gf2
