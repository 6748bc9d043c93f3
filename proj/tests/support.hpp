#pragma once

#include <random>
#include <string>

#include "cmzv/io.hpp"

namespace testing_support {

using namespace cmzv;

inline QElement X(const std::string& text, const FiniteAbelianGroup& g)
{
    return parse_element<Rational>(text, g, Alphabet::X);
}

inline QElement Y(const std::string& text, const FiniteAbelianGroup& g)
{
    return parse_element<Rational>(text, g, Alphabet::Y);
}

inline Word xw(const std::string& text, const FiniteAbelianGroup& g)
{
    return parse_word(text, g).word;
}

inline Word random_word(std::mt19937& rng, Alphabet a, const FiniteAbelianGroup& g, int max_degree)
{
    auto letters = alphabet_letters(a, g, max_degree);
    Word w;
    int budget = std::uniform_int_distribution<int>(0, max_degree)(rng);
    while (true) {
        Letter l = letters[std::uniform_int_distribution<size_t>(0, letters.size() - 1)(rng)];
        int d = word_degree({l}, a);
        if (d > budget)
            break;
        budget -= d;
        w.push_back(l);
    }
    return w;
}

inline QElement random_element(std::mt19937& rng, Alphabet a, const FiniteAbelianGroup& g, int max_degree,
                               int terms = 3)
{
    QElement e(a);
    std::uniform_int_distribution<long> coeff(-5, 5);
    for (int i = 0; i < terms; ++i)
        e.add_term(random_word(rng, a, g, max_degree), Rational(coeff(rng)));
    return e;
}

} // namespace testing_support
