#include "grouptest/codewords.hpp"

#include <bit>

#include "grouptest/fault.hpp"

namespace gt {

CodewordTable huffman_codewords(int m) {
  if (m < 1 || m > (1 << 30))
    throw Fault("invalid-block-size", "need 1 <= m <= 2^30, got " + std::to_string(m));

  const auto um = static_cast<std::uint32_t>(m);
  const int a = std::bit_width(um) - 1;  // floor(log2 m)
  const std::uint32_t b = um - (std::uint32_t{1} << a);
  const std::uint32_t n_short = um - 2 * b;

  CodewordTable table;
  table.block_size = m;
  table.words.reserve(um);
  // Short words are the values 0..n_short-1 on a bits; long words continue
  // from 2*n_short on a+1 bits, which keeps the whole list lexicographic.
  for (std::uint32_t v = 0; v < n_short; ++v)
    table.words.push_back({v, static_cast<std::uint8_t>(a)});
  for (std::uint32_t v = 0; v < 2 * b; ++v)
    table.words.push_back({2 * n_short + v, static_cast<std::uint8_t>(a + 1)});
  return table;
}

bool kraft_sum_is_one(const CodewordTable& table) {
  if (table.words.empty()) return false;
  int max_len = 0;
  for (const Codeword& w : table.words) max_len = std::max(max_len, int{w.length});
  if (max_len > 62) return false;  // would overflow the exact accumulator
  std::uint64_t sum = 0;           // in units of 2^-max_len
  for (const Codeword& w : table.words) sum += std::uint64_t{1} << (max_len - w.length);
  return sum == std::uint64_t{1} << max_len;
}

}  // namespace gt
