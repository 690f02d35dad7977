#include <string>
#include <vector>

#include "doctest.h"
#include "grouptest/codewords.hpp"
#include "grouptest/fault.hpp"

using gt::Codeword;
using gt::CodewordTable;
using gt::huffman_codewords;

namespace {

std::vector<std::string> words_of(int m) {
  std::vector<std::string> out;
  for (const Codeword& w : huffman_codewords(m).words) out.push_back(w.to_string());
  return out;
}

}  // namespace

TEST_CASE("tables for small block sizes") {
  CHECK(words_of(1) == std::vector<std::string>{""});
  CHECK(words_of(2) == std::vector<std::string>{"0", "1"});
  CHECK(words_of(3) == std::vector<std::string>{"0", "10", "11"});
  CHECK(words_of(4) == std::vector<std::string>{"00", "01", "10", "11"});
  CHECK(words_of(5) == std::vector<std::string>{"00", "01", "10", "110", "111"});
  CHECK(words_of(6) == std::vector<std::string>{"00", "01", "100", "101", "110", "111"});
  CHECK(words_of(7) ==
        std::vector<std::string>{"00", "010", "011", "100", "101", "110", "111"});
}

TEST_CASE("bit accessor is MSB-first and 1-based") {
  const Codeword w{0b110u, 3};
  CHECK(w.bit(1) == 1);
  CHECK(w.bit(2) == 1);
  CHECK(w.bit(3) == 0);
  CHECK(w.to_string() == "110");
}

TEST_CASE("structure holds for every block size up to 64") {
  for (int m = 1; m <= 64; ++m) {
    CAPTURE(m);
    const CodewordTable table = huffman_codewords(m);
    REQUIRE(static_cast<int>(table.words.size()) == m);
    CHECK(table.block_size == m);
    CHECK(gt::kraft_sum_is_one(table));

    // Lengths are floor(log2 m) or that plus one, never decreasing.
    int a = 0;
    while ((2 << a) <= m) ++a;
    for (const Codeword& w : table.words) {
      CHECK(int{w.length} >= a);
      CHECK(int{w.length} <= a + 1);
    }
    for (int i = 1; i < m; ++i) {
      CHECK(table.words[i - 1].length <= table.words[i].length);
      CHECK(table.words[i - 1].to_string() < table.words[i].to_string());
    }

    // Prefix-free: no word begins another.
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (i == j) continue;
        const std::string wi = table.words[i].to_string();
        const std::string wj = table.words[j].to_string();
        CHECK(!(wi.size() <= wj.size() && wj.compare(0, wi.size(), wi) == 0));
      }
  }
}

TEST_CASE("invalid block sizes fault") {
  CHECK_THROWS_AS(huffman_codewords(0), gt::Fault);
  CHECK_THROWS_AS(huffman_codewords(-3), gt::Fault);
}

TEST_CASE("fault carries its code") {
  try {
    huffman_codewords(0);
    FAIL("expected a fault");
  } catch (const gt::Fault& f) {
    CHECK(f.code() == "invalid-block-size");
  }
}
