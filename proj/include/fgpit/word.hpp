#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fgpit {

/// One signed generator: x_i (sign +1) or x_i^-1 (sign -1).
struct Letter {
    std::int32_t generator;  // 1-based
    std::int32_t sign;       // +1 or -1

    Letter inverse() const { return {generator, -sign}; }
    bool operator==(const Letter&) const = default;
    // x_i before x_i^-1, generators ascending.
    friend std::strong_ordering operator<=>(const Letter& a, const Letter& b) {
        if (a.generator != b.generator) return a.generator <=> b.generator;
        return b.sign <=> a.sign;
    }
};

/// A cancellation-free word over the signed generators; the canonical form of
/// a free-group element. The empty word is the group identity.
class ReducedWord {
  public:
    ReducedWord() = default;

    // Unique normal form of an arbitrary letter sequence under cancellation
    // of adjacent x_i x_i^-1 / x_i^-1 x_i pairs.
    static ReducedWord reduce(std::span<const Letter> letters);
    static ReducedWord single(int generator, int sign) { return reduce({{Letter{generator, sign}}}); }

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t degree() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    // Free-group multiplication: concatenate and cancel at the seam.
    ReducedWord operator*(const ReducedWord& o) const;
    ReducedWord inverse() const;

    bool operator==(const ReducedWord&) const = default;

    // Canonical order: length-lexicographic with (generator, sign) tiebreak.
    friend std::strong_ordering operator<=>(const ReducedWord& a, const ReducedWord& b) {
        if (a.letters_.size() != b.letters_.size()) return a.letters_.size() <=> b.letters_.size();
        for (std::size_t i = 0; i < a.letters_.size(); ++i) {
            auto c = a.letters_[i] <=> b.letters_[i];
            if (c != std::strong_ordering::equal) return c;
        }
        return std::strong_ordering::equal;
    }

    // "x1*x2^-1"; the empty word prints as "1".
    std::string str() const;

  private:
    std::vector<Letter> letters_;
};

struct IsolatingIndexSet {
    std::vector<std::size_t> indices;  // 1-based positions, ascending
    ReducedWord word;                  // the isolated word
};

/// For a nonempty set of same-degree words, an index set I of size at most
/// ceil(log2 |words|) together with a word that disagrees with every other
/// word of the set somewhere on I. Constructive halving: at the first
/// position where the words disagree, keep a smallest-letter group of size
/// at most half (ties broken by the (generator, sign) order), and recurse.
IsolatingIndexSet isolating_index_set(const std::vector<ReducedWord>& words);

}  // namespace fgpit
