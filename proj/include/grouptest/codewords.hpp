#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gt {

/// A binary codeword, MSB first. length <= 32.
struct Codeword {
  std::uint32_t bits = 0;
  std::uint8_t length = 0;

  /// k-th bit, 1-based from the most significant end; requires 1 <= k <= length.
  int bit(int k) const { return static_cast<int>(bits >> (length - k) & 1u); }

  std::string to_string() const {
    std::string s;
    for (int k = 1; k <= length; ++k) s.push_back(bit(k) ? '1' : '0');
    return s;
  }

  friend bool operator==(const Codeword&, const Codeword&) = default;
};

struct CodewordTable {
  int block_size = 0;
  std::vector<Codeword> words;  // one per block position, lexicographic order
};

/// Canonical Huffman code for the uniform distribution on m symbols: with
/// a = floor(log2 m) and b = m - 2^a, the first m-2b words have length a and
/// the rest length a+1, assigned counting upward so the list is lexicographic
/// and prefix-free with Kraft sum exactly 1. m = 1 yields one empty word.
/// Faults with "invalid-block-size" unless 1 <= m <= (1<<30).
CodewordTable huffman_codewords(int m);

/// Exact dyadic check that sum(2^-len) == 1 (no floating point).
bool kraft_sum_is_one(const CodewordTable& table);

}  // namespace gt
