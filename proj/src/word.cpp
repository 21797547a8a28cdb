#include "sst/word.hpp"

#include "sst/errors.hpp"

#include <algorithm>
#include <charconv>

namespace sst {

std::size_t WordHash::operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Letter x : w) {
        h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h ^ w.size();
}

std::string to_string(const Word& w) {
    if (w.empty()) return "-";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(w[i]);
    }
    return s;
}

Word parse_word(std::string_view s) {
    Word w;
    if (s == "-" || s.empty()) return w;
    std::size_t i = 0;
    while (i <= s.size()) {
        std::size_t j = s.find(',', i);
        if (j == std::string_view::npos) j = s.size();
        std::string_view tok = s.substr(i, j - i);
        int v = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc() || p != tok.data() + tok.size() || v < 0)
            throw FormatError("bad letter '" + std::string(tok) + "' in word '" + std::string(s) + "'");
        w.push_back(v);
        i = j + 1;
    }
    return w;
}

void check_letters(const Word& w, int n) {
    for (Letter x : w)
        if (x < 0 || x >= n)
            throw FormatError("letter " + std::to_string(x) + " outside alphabet of size " + std::to_string(n));
}

Word concat(const Word& a, const Word& b) {
    Word r;
    r.reserve(a.size() + b.size());
    r.insert(r.end(), a.begin(), a.end());
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

bool is_prefix(const Word& p, const Word& w) {
    return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

Word common_prefix(const Word& a, const Word& b) {
    std::size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    return Word(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(k));
}

Word drop(const Word& w, std::size_t k) {
    if (k >= w.size()) return {};
    return Word(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
}

Word reverse(const Word& w) { return Word(w.rbegin(), w.rend()); }

Word rotate(const Word& w, std::size_t k) {
    if (w.empty()) return w;
    k %= w.size();
    Word r(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
    r.insert(r.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
    return r;
}

std::size_t root_length(const Word& w) {
    const std::size_t k = w.size();
    if (k == 0) return 0;
    // prefix function
    std::vector<std::size_t> pf(k, 0);
    for (std::size_t i = 1; i < k; ++i) {
        std::size_t j = pf[i - 1];
        while (j > 0 && w[i] != w[j]) j = pf[j - 1];
        if (w[i] == w[j]) ++j;
        pf[i] = j;
    }
    std::size_t p = k - pf[k - 1];
    return (k % p == 0) ? p : k;
}

bool is_prime(const Word& w) {
    if (w.empty()) throw DomainError("empty word has no primality");
    return root_length(w) == w.size();
}

Word prime_root(const Word& w) {
    if (w.empty()) throw DomainError("empty word has no prime root");
    return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(root_length(w)));
}

Word canonical_rotation(const Word& w) {
    if (w.empty()) throw DomainError("empty word has no rotations");
    Word best = w;
    for (std::size_t k = 1; k < w.size(); ++k) {
        Word r = rotate(w, k);
        if (r < best) best = std::move(r);
    }
    return best;
}

std::vector<Word> enumerate_prime_classes(int n, int k) {
    std::vector<Word> out;
    if (n < 1 || k < 1) return out;
    // Duval's generation of Lyndon words in lexicographic order.
    Word w{0};
    while (!w.empty()) {
        if (static_cast<int>(w.size()) == k) out.push_back(w);
        const std::size_t m = w.size();
        while (static_cast<int>(w.size()) < k) w.push_back(w[w.size() - m]);
        while (!w.empty() && w.back() == n - 1) w.pop_back();
        if (!w.empty()) ++w.back();
    }
    return out;
}

std::vector<Word> all_words(int n, int k) {
    std::vector<Word> out;
    Word w(static_cast<std::size_t>(k), 0);
    while (true) {
        out.push_back(w);
        int i = k - 1;
        while (i >= 0 && w[static_cast<std::size_t>(i)] == n - 1) w[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) break;
        ++w[static_cast<std::size_t>(i)];
    }
    return out;
}

} // namespace sst
