#include <gtest/gtest.h>

#include "support.hpp"

using namespace cmzv;
using namespace testing_support;

namespace {

// Last-letter recursion: ua * vb = (u * vb)a + (ua * v)b + (u * v)(a ⋄ b).
// Deliberately a different recursion from the library's.
QElement last_letter_product(const Word& u, const Word& v, Alphabet alpha, const DiamondProduct& diamond)
{
    if (u.empty())
        return QElement::word(v, alpha);
    if (v.empty())
        return QElement::word(u, alpha);
    Word u0(u.begin(), u.end() - 1), v0(v.begin(), v.end() - 1);
    auto append = [&](const QElement& e, Letter l, long c) {
        QElement out(alpha);
        for (const auto& [w, k] : e.terms()) {
            Word x = w;
            x.push_back(l);
            out.add_term(x, k * c);
        }
        return out;
    };
    QElement out = append(last_letter_product(u0, v, alpha, diamond), u.back(), 1);
    out += append(last_letter_product(u, v0, alpha, diamond), v.back(), 1);
    if (diamond)
        for (const auto& t : diamond(u.back(), v.back()))
            out += append(last_letter_product(u0, v0, alpha, diamond), t.letter, t.coefficient);
    return out;
}

long binomial(int n, int k)
{
    long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

} // namespace

TEST(Shuffle, SmallExamples)
{
    auto g = FiniteAbelianGroup::cyclic(3);
    EXPECT_EQ(shuffle(X("xg[1]", g), X("xg[2]", g)), X("xg[1]xg[2] + xg[2]xg[1]", g));
    EXPECT_EQ(shuffle(X("x0xg[0]", g), X("x0", g)), X("2*x0x0xg[0] + x0xg[0]x0", g));
    EXPECT_EQ(shuffle(X("xg[0]", g), X("xg[0]", g)), X("2*xg[0]xg[0]", g));
    EXPECT_EQ(shuffle(X("1", g), X("x0xg[2]", g)), X("x0xg[2]", g));
    EXPECT_TRUE(shuffle(QElement(), X("x0", g)).is_zero());
}

TEST(Harmonic, SmallExamples)
{
    auto g = FiniteAbelianGroup::cyclic(3);
    EXPECT_EQ(harmonic(Y("y[1,g1]", g), Y("y[1,g2]", g), g), Y("y[1,g1]y[1,g2] + y[1,g2]y[1,g1] + y[2,g0]", g));
    EXPECT_EQ(harmonic(Y("y[2,g1]", g), Y("y[1,g1]y[1,g0]", g), g),
              Y("y[2,g1]y[1,g1]y[1,g0] + y[1,g1]y[2,g1]y[1,g0] + y[1,g1]y[1,g0]y[2,g1]"
                " + y[3,g2]y[1,g0] + y[1,g1]y[3,g1]",
                g));
    EXPECT_THROW(harmonic(X("xg[1]", g), X("xg[1]", g), g), std::invalid_argument);
}

TEST(Shuffle, AgreesWithLastLetterRecursion)
{
    std::mt19937 rng(7);
    auto g = FiniteAbelianGroup({2, 2});
    for (int i = 0; i < 200; ++i) {
        Word u = random_word(rng, Alphabet::X, g, 4), v = random_word(rng, Alphabet::X, g, 4);
        EXPECT_EQ(shuffle_words<Rational>(u, v), last_letter_product(u, v, Alphabet::X, {}));
    }
}

TEST(Harmonic, AgreesWithLastLetterRecursion)
{
    std::mt19937 rng(11);
    auto g = FiniteAbelianGroup::cyclic(4);
    auto diamond = harmonic_diamond(g);
    for (int i = 0; i < 200; ++i) {
        Word u = random_word(rng, Alphabet::Y, g, 5), v = random_word(rng, Alphabet::Y, g, 5);
        EXPECT_EQ(quasi_shuffle_words<Rational>(u, v, Alphabet::Y, diamond),
                  last_letter_product(u, v, Alphabet::Y, diamond));
    }
}

TEST(Shuffle, CoefficientSumIsBinomial)
{
    std::mt19937 rng(3);
    auto g = FiniteAbelianGroup::cyclic(2);
    for (int i = 0; i < 50; ++i) {
        Word u = random_word(rng, Alphabet::X, g, 5), v = random_word(rng, Alphabet::X, g, 5);
        Rational total = 0;
        const auto prod = shuffle_words<Rational>(u, v);
        for (const auto& [w, c] : prod.terms())
            total += c;
        EXPECT_EQ(total, binomial(static_cast<int>(u.size() + v.size()), static_cast<int>(u.size())));
    }
}

TEST(Products, CommutativeAssociativeUnital)
{
    std::mt19937 rng(5);
    auto g = FiniteAbelianGroup::cyclic(3);
    for (int i = 0; i < 40; ++i) {
        auto a = random_element(rng, Alphabet::X, g, 3), b = random_element(rng, Alphabet::X, g, 3),
             c = random_element(rng, Alphabet::X, g, 2);
        EXPECT_EQ(shuffle(a, b), shuffle(b, a));
        EXPECT_EQ(shuffle(shuffle(a, b), c), shuffle(a, shuffle(b, c)));
        EXPECT_EQ(shuffle(a, QElement::unit()), a);
        // bilinear
        EXPECT_EQ(shuffle(a + b, c), shuffle(a, c) + shuffle(b, c));
        auto ya = random_element(rng, Alphabet::Y, g, 3), yb = random_element(rng, Alphabet::Y, g, 3),
             yc = random_element(rng, Alphabet::Y, g, 2);
        EXPECT_EQ(harmonic(ya, yb, g), harmonic(yb, ya, g));
        EXPECT_EQ(harmonic(harmonic(ya, yb, g), yc, g), harmonic(ya, harmonic(yb, yc, g), g));
        EXPECT_EQ(harmonic(ya, QElement::unit(Alphabet::Y), g), ya);
    }
}

TEST(Products, ComplexCoefficientsMatchRational)
{
    std::mt19937 rng(9);
    auto g = FiniteAbelianGroup::cyclic(2);
    for (int i = 0; i < 20; ++i) {
        auto a = random_element(rng, Alphabet::Y, g, 3), b = random_element(rng, Alphabet::Y, g, 3);
        auto exact = convert_coefficients<Complex>(harmonic(a, b, g));
        auto approx = harmonic(convert_coefficients<Complex>(a), convert_coefficients<Complex>(b), g);
        EXPECT_EQ(exact, approx);
    }
}

TEST(Words, ConversionBetweenAlphabets)
{
    auto g = FiniteAbelianGroup::cyclic(3);
    EXPECT_EQ(x_to_y(X("x0x0xg[1]xg[2] - 2*xg[0]", g)), Y("y[3,g1]y[1,g2] - 2*y[1,g0]", g));
    EXPECT_THROW(x_to_y(X("xg[1]x0", g)), not_in_h1);
    std::mt19937 rng(1);
    for (int i = 0; i < 100; ++i) {
        Word y = random_word(rng, Alphabet::Y, g, 6);
        EXPECT_EQ(x_to_y_word(y_to_x_word(y)), y);
        EXPECT_EQ(word_degree(y_to_x_word(y), Alphabet::X), word_degree(y, Alphabet::Y));
    }
    EXPECT_EQ(project_piY(X("x0xg[1] + xg[2]x0 + 3", g)), Y("y[2,g1] + 3", g));
}

TEST(Words, Membership)
{
    auto g = FiniteAbelianGroup::cyclic(2);
    EXPECT_EQ(membership(X("1", g)), Membership::H0);
    EXPECT_EQ(membership(X("x0xg[0]", g)), Membership::H0);
    EXPECT_EQ(membership(X("xg[1]xg[0]", g)), Membership::H0);
    EXPECT_EQ(membership(X("xg[0]xg[1]", g)), Membership::H1);
    EXPECT_EQ(membership(X("x0xg[1] + xg[0]", g)), Membership::H1);
    EXPECT_EQ(membership(X("xg[1]x0", g)), Membership::Neither);
}

TEST(Words, QgIsABijectionWithInverse)
{
    auto g = FiniteAbelianGroup({2, 4});
    auto words = all_words(Alphabet::X, g, 3);
    std::set<Word> seen;
    for (const auto& w : words) {
        Word f = qg_word(w, Alphabet::X, g, Direction::Forward);
        EXPECT_EQ(qg_word(f, Alphabet::X, g, Direction::Inverse), w);
        EXPECT_EQ(qg_word(qg_word(w, Alphabet::X, g, Direction::Inverse), Alphabet::X, g, Direction::Forward), w);
        seen.insert(f);
    }
    EXPECT_EQ(seen.size(), words.size());
    auto z3 = FiniteAbelianGroup::cyclic(3);
    // labels become successive ratios; x0 blocks stay put
    EXPECT_EQ(qg_word(xw("xg[1]x0xg[2]xg[2]", z3), Alphabet::X, z3, Direction::Forward), xw("xg[1]x0xg[1]xg[0]", z3));
    EXPECT_EQ(qg_word(xw("xg[1]x0xg[1]xg[0]", z3), Alphabet::X, z3, Direction::Inverse), xw("xg[1]x0xg[2]xg[2]", z3));
}

TEST(Words, QgCommutesWithAlphabetChange)
{
    auto g = FiniteAbelianGroup::cyclic(4);
    for (const auto& w : all_words(Alphabet::Y, g, 4)) {
        auto xq = qg_word(y_to_x_word(w), Alphabet::X, g, Direction::Forward);
        EXPECT_EQ(x_to_y_word(xq), qg_word(w, Alphabet::Y, g, Direction::Forward));
    }
}

TEST(Words, EnumerationCounts)
{
    auto g = FiniteAbelianGroup::cyclic(4);
    auto xs = all_words(Alphabet::X, g, 3);
    EXPECT_EQ(xs.size(), 1u + 5 + 25 + 125);
    // compositions of s with 4 labels per part: 4 * 5^(s-1)
    auto ys = all_words(Alphabet::Y, g, 3);
    EXPECT_EQ(ys.size(), 1u + 4 + 20 + 100);
}

TEST(AlgebraElement, ArithmeticAndAlphabetChecks)
{
    auto g = FiniteAbelianGroup::cyclic(2);
    auto a = X("2*x0xg[1] + 1/3*xg[0]", g);
    auto b = X("-2*x0xg[1]", g);
    EXPECT_EQ(a + b, X("1/3*xg[0]", g));
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(concat(X("x0", g), X("xg[1] + 1", g)), X("x0xg[1] + x0", g));
    EXPECT_THROW(a + Y("y[1,g0]", g), std::invalid_argument);
    EXPECT_EQ(pairing(a, xw("x0xg[1]", g)), Rational(2));
    EXPECT_EQ(pairing(a, xw("x0", g)), Rational(0));
}
