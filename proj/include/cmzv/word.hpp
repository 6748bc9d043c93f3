#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "cmzv/group.hpp"

namespace cmzv {

// X letters: 0 is x_0, 1 + i is x_g for the group element with index i.
// Y letters: (n << 16) | i is y_{n,g}.
using Letter = std::uint32_t;
using Word = std::vector<Letter>;

enum class Alphabet { X, Y };

inline constexpr Letter kX0 = 0;

constexpr Letter x_letter(int g) { return static_cast<Letter>(g) + 1; }
constexpr bool is_x0(Letter l) { return l == kX0; }
constexpr int x_group(Letter l) { return static_cast<int>(l) - 1; }

constexpr Letter y_letter(int n, int g) { return (static_cast<Letter>(n) << 16) | static_cast<Letter>(g); }
constexpr int y_weight(Letter l) { return static_cast<int>(l >> 16); }
constexpr int y_group(Letter l) { return static_cast<int>(l & 0xFFFFu); }

struct WordHash {
    size_t operator()(const Word& w) const noexcept
    {
        size_t h = 0xcbf29ce484222325ull;
        for (Letter l : w) {
            h ^= l;
            h *= 0x100000001b3ull;
        }
        return h ^ w.size();
    }
};

class not_in_h1 : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

int word_degree(const Word& w, Alphabet a);

// 1 or ends in a group letter
bool word_in_h1(const Word& w);
// additionally does not start with x_1
bool word_in_h0(const Word& w);

Word x_to_y_word(const Word& w);
Word y_to_x_word(const Word& w);

enum class Direction { Forward, Inverse };

// q_G on group labels; x_0 blocks and weights untouched.
Word qg_word(const Word& w, Alphabet a, const FiniteAbelianGroup& g, Direction dir);

// letters of the alphabet usable at degree <= max
std::vector<Letter> alphabet_letters(Alphabet a, const FiniteAbelianGroup& g, int max_weight);

// all words of degree <= max_degree, ordered by degree then lexicographically
std::vector<Word> all_words(Alphabet a, const FiniteAbelianGroup& g, int max_degree);

void check_letters(const Word& w, Alphabet a, const FiniteAbelianGroup& g);

} // namespace cmzv
