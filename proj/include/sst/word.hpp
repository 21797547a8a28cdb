#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sst {

using Letter = int;
using Word = std::vector<Letter>;

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept;
};

// "0,1,1"; the empty word is "-".
std::string to_string(const Word& w);
Word parse_word(std::string_view s);
// Throws FormatError if some letter is outside [0, n).
void check_letters(const Word& w, int n);

Word concat(const Word& a, const Word& b);
bool is_prefix(const Word& p, const Word& w);
// Longest common prefix.
Word common_prefix(const Word& a, const Word& b);
// w with its first k letters removed.
Word drop(const Word& w, std::size_t k);
Word reverse(const Word& w);
// Rotation moving the first k letters to the back.
Word rotate(const Word& w, std::size_t k);

// Length of the shortest root g with w = g^(|w|/|g|).
std::size_t root_length(const Word& w);
bool is_prime(const Word& w);
Word prime_root(const Word& w);
Word canonical_rotation(const Word& w);

// Lexicographically sorted canonical representatives of the rotation
// classes of prime words of length k (Lyndon words).
std::vector<Word> enumerate_prime_classes(int n, int k);
// All words of length k in lexicographic order.
std::vector<Word> all_words(int n, int k);

} // namespace sst
