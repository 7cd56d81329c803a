// Lyndon-word combinatorics over the two-letter alphabet {X, Y}.

#ifndef QBCH_WORDS_HPP
#define QBCH_WORDS_HPP

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qbch {

enum class Letter : std::uint8_t { X = 0, Y = 1 };

inline char to_char(Letter l) { return l == Letter::X ? 'X' : 'Y'; }

/// Word over {X, Y}, packed one bit per letter (X = 0, Y = 1), first letter in
/// the most significant position. The total order compares length first and
/// then letters lexicographically with X < Y, which for equal lengths is the
/// numeric order of the packed bits.
class Word {
public:
    static constexpr int kMaxLength = 63;

    constexpr Word() = default;

    static constexpr Word letter(Letter l) { return Word(static_cast<std::uint64_t>(l), 1); }

    static Word from_bits(std::uint64_t bits, int length) {
        if (length < 0 || length > kMaxLength)
            throw std::out_of_range("word length out of range: " + std::to_string(length));
        if (length < 64 && (bits >> length) != 0)
            throw std::invalid_argument("word bits exceed declared length");
        return Word(bits, length);
    }

    /// Parses "XXY"; the empty word may be written as "" or "1".
    static Word parse(std::string_view text) {
        if (text == "1") return Word();
        if (static_cast<int>(text.size()) > kMaxLength)
            throw std::out_of_range("word too long");
        std::uint64_t bits = 0;
        for (char c : text) {
            if (c != 'X' && c != 'Y')
                throw std::invalid_argument(std::string("invalid letter '") + c + "' in word");
            bits = (bits << 1) | (c == 'Y' ? 1u : 0u);
        }
        return Word(bits, static_cast<int>(text.size()));
    }

    constexpr int length() const { return length_; }
    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool empty() const { return length_ == 0; }

    constexpr Letter operator[](int i) const {
        return static_cast<Letter>((bits_ >> (length_ - 1 - i)) & 1u);
    }

    /// Letters [pos, pos + count).
    Word sub(int pos, int count) const {
        if (pos < 0 || count < 0 || pos + count > length_)
            throw std::out_of_range("subword out of range");
        const int shift = length_ - pos - count;
        const std::uint64_t mask = count == 64 ? ~0ULL : ((1ULL << count) - 1);
        return Word((bits_ >> shift) & mask, count);
    }

    Word suffix(int pos) const { return sub(pos, length_ - pos); }
    Word prefix(int count) const { return sub(0, count); }

    friend Word operator+(Word u, Word v) {
        if (u.length_ + v.length_ > kMaxLength)
            throw std::out_of_range("concatenated word too long");
        return Word((u.bits_ << v.length_) | v.bits_, u.length_ + v.length_);
    }

    /// X <-> Y.
    Word swapped() const {
        const std::uint64_t mask = length_ == 0 ? 0 : ((1ULL << length_) - 1);
        return Word(~bits_ & mask, length_);
    }

    int count(Letter l) const {
        const int ys = std::popcount(bits_);
        return l == Letter::Y ? ys : length_ - ys;
    }

    std::string str() const {
        if (length_ == 0) return "1";
        std::string s(static_cast<std::size_t>(length_), 'X');
        for (int i = 0; i < length_; ++i)
            if ((*this)[i] == Letter::Y) s[static_cast<std::size_t>(i)] = 'Y';
        return s;
    }

    friend constexpr bool operator==(Word, Word) = default;
    friend constexpr std::strong_ordering operator<=>(Word a, Word b) {
        if (auto c = a.length_ <=> b.length_; c != 0) return c;
        return a.bits_ <=> b.bits_;
    }

private:
    constexpr Word(std::uint64_t bits, int length) : bits_(bits), length_(length) {}

    std::uint64_t bits_ = 0;
    int length_ = 0;
};

/// Plain lexicographic comparison (a proper prefix is smaller), as used by the
/// Lyndon property. Differs from Word's length-first order.
inline std::strong_ordering lex_compare(Word a, Word b) {
    const int common = a.length() < b.length() ? a.length() : b.length();
    for (int i = 0; i < common; ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.length() <=> b.length();
}

inline bool lex_less(Word a, Word b) { return lex_compare(a, b) < 0; }

/// Strictly smaller than every proper suffix.
inline bool is_lyndon(Word w) {
    if (w.empty()) return false;
    for (int i = 1; i < w.length(); ++i)
        if (!lex_less(w, w.suffix(i))) return false;
    return true;
}

inline constexpr int kDefaultDegreeCap = 20;

/// All Lyndon words of length n, in lexicographic order (Duval's generator).
inline std::vector<Word> lyndon_words(int n, int degree_cap = kDefaultDegreeCap) {
    if (n < 1 || n > degree_cap || n > Word::kMaxLength)
        throw std::out_of_range("lyndon_words: degree " + std::to_string(n) + " outside [1, " +
                                std::to_string(degree_cap) + "]");
    std::vector<Word> out;
    std::vector<int> w{0};
    while (!w.empty()) {
        if (static_cast<int>(w.size()) == n) {
            std::uint64_t bits = 0;
            for (int c : w) bits = (bits << 1) | static_cast<std::uint64_t>(c);
            out.push_back(Word::from_bits(bits, n));
        }
        const std::size_t m = w.size();
        while (static_cast<int>(w.size()) < n) w.push_back(w[w.size() - m]);
        while (!w.empty() && w.back() == 1) w.pop_back();
        if (!w.empty()) w.back() += 1;
    }
    return out;
}

struct Factorization {
    Word left;
    Word right;
    friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// w = uv with v the longest proper Lyndon suffix of w.
inline Factorization standard_factorization(Word w) {
    if (w.length() < 2 || !is_lyndon(w))
        throw std::invalid_argument("standard_factorization: '" + w.str() +
                                    "' is not a Lyndon word of length >= 2");
    for (int i = 1; i < w.length(); ++i) {
        Word v = w.suffix(i);
        if (is_lyndon(v)) return {w.prefix(i), v};
    }
    // The last letter is always a Lyndon suffix.
    throw std::logic_error("standard_factorization: no Lyndon suffix");
}

/// Binary bracketing tree: a leaf letter or [left, right].
class BracketTree {
public:
    static BracketTree leaf(Letter l) { return BracketTree(l); }
    static BracketTree node(BracketTree left, BracketTree right);

    bool is_leaf() const { return node_ == nullptr; }
    Letter letter() const {
        if (!is_leaf()) throw std::logic_error("BracketTree::letter on internal node");
        return letter_;
    }
    const BracketTree& left() const;
    const BracketTree& right() const;

    int leaves() const { return is_leaf() ? 1 : left().leaves() + right().leaves(); }

    Word foliage() const { return is_leaf() ? Word::letter(letter_) : left().foliage() + right().foliage(); }

    std::string str() const {
        if (is_leaf()) return std::string(1, to_char(letter_));
        return "[" + left().str() + "," + right().str() + "]";
    }

    friend bool operator==(const BracketTree& a, const BracketTree& b) {
        if (a.is_leaf() != b.is_leaf()) return false;
        if (a.is_leaf()) return a.letter_ == b.letter_;
        return a.left() == b.left() && a.right() == b.right();
    }

private:
    struct Node;

    explicit BracketTree(Letter l) : letter_(l) {}
    explicit BracketTree(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    const Node& checked_node() const {
        if (is_leaf()) throw std::logic_error("BracketTree: leaf has no children");
        return *node_;
    }

    std::shared_ptr<const Node> node_;
    Letter letter_ = Letter::X;
};

struct BracketTree::Node {
    BracketTree left;
    BracketTree right;
};

inline BracketTree BracketTree::node(BracketTree left, BracketTree right) {
    return BracketTree(std::make_shared<const Node>(Node{std::move(left), std::move(right)}));
}

inline const BracketTree& BracketTree::left() const { return checked_node().left; }
inline const BracketTree& BracketTree::right() const { return checked_node().right; }

inline BracketTree lyndon_bracketing(Word w) {
    if (!is_lyndon(w)) throw std::invalid_argument("lyndon_bracketing: '" + w.str() + "' is not a Lyndon word");
    if (w.length() == 1) return BracketTree::leaf(w[0]);
    auto [u, v] = standard_factorization(w);
    return BracketTree::node(lyndon_bracketing(u), lyndon_bracketing(v));
}

/// Dimension of the degree-n part of the free Lie algebra on two generators.
inline std::uint64_t witt_dimension(int n) {
    if (n < 1 || n > 62) throw std::out_of_range("witt_dimension: degree out of range");
    auto mobius = [](int d) {
        int result = 1;
        for (int p = 2; p * p <= d; ++p) {
            if (d % p == 0) {
                d /= p;
                if (d % p == 0) return 0;
                result = -result;
            }
        }
        if (d > 1) result = -result;
        return result;
    };
    __int128 sum = 0;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) sum += static_cast<__int128>(mobius(d)) * (static_cast<__int128>(1) << (n / d));
    return static_cast<std::uint64_t>(sum / n);
}

}  // namespace qbch

template <>
struct std::hash<qbch::Word> {
    std::size_t operator()(qbch::Word w) const noexcept {
        return std::hash<std::uint64_t>{}(w.bits() * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(w.length()));
    }
};

#endif  // QBCH_WORDS_HPP
