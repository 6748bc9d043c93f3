#include "cmzv/word.hpp"

#include <algorithm>

namespace cmzv {

int word_degree(const Word& w, Alphabet a)
{
    if (a == Alphabet::X)
        return static_cast<int>(w.size());
    int d = 0;
    for (Letter l : w)
        d += y_weight(l);
    return d;
}

bool word_in_h1(const Word& w)
{
    return w.empty() || !is_x0(w.back());
}

bool word_in_h0(const Word& w)
{
    return w.empty() || (!is_x0(w.back()) && w.front() != x_letter(0));
}

Word x_to_y_word(const Word& w)
{
    if (!word_in_h1(w))
        throw not_in_h1("word ends in x0");
    Word out;
    int zeros = 0;
    for (Letter l : w) {
        if (is_x0(l)) {
            ++zeros;
        } else {
            out.push_back(y_letter(zeros + 1, x_group(l)));
            zeros = 0;
        }
    }
    return out;
}

Word y_to_x_word(const Word& w)
{
    Word out;
    for (Letter l : w) {
        int n = y_weight(l);
        if (n < 1)
            throw std::invalid_argument("Y letter with weight < 1");
        out.insert(out.end(), static_cast<size_t>(n - 1), kX0);
        out.push_back(x_letter(y_group(l)));
    }
    return out;
}

Word qg_word(const Word& w, Alphabet a, const FiniteAbelianGroup& g, Direction dir)
{
    Word out = w;
    int prev = g.identity();  // previous original label (forward) or running product (inverse)
    for (Letter& l : out) {
        if (a == Alphabet::X && is_x0(l))
            continue;
        int label = a == Alphabet::X ? x_group(l) : y_group(l);
        int next;
        if (dir == Direction::Forward) {
            next = g.mul(label, g.inv(prev));
            prev = label;
        } else {
            next = g.mul(prev, label);
            prev = next;
        }
        l = a == Alphabet::X ? x_letter(next) : y_letter(y_weight(l), next);
    }
    return out;
}

std::vector<Letter> alphabet_letters(Alphabet a, const FiniteAbelianGroup& g, int max_weight)
{
    std::vector<Letter> out;
    if (a == Alphabet::X) {
        out.push_back(kX0);
        for (int i = 0; i < g.order(); ++i)
            out.push_back(x_letter(i));
    } else {
        for (int n = 1; n <= max_weight; ++n)
            for (int i = 0; i < g.order(); ++i)
                out.push_back(y_letter(n, i));
    }
    return out;
}

std::vector<Word> all_words(Alphabet a, const FiniteAbelianGroup& g, int max_degree)
{
    std::vector<std::vector<Word>> by_degree(static_cast<size_t>(std::max(max_degree, 0)) + 1);
    by_degree[0].push_back({});
    auto letters = alphabet_letters(a, g, max_degree);
    for (int d = 1; d <= max_degree; ++d) {
        for (Letter l : letters) {
            Word single{l};
            int ld = word_degree(single, a);
            if (ld > d)
                continue;
            for (const Word& rest : by_degree[d - ld]) {
                Word w;
                w.reserve(rest.size() + 1);
                w.push_back(l);
                w.insert(w.end(), rest.begin(), rest.end());
                by_degree[d].push_back(std::move(w));
            }
        }
        std::sort(by_degree[d].begin(), by_degree[d].end());
    }
    std::vector<Word> out;
    for (auto& v : by_degree)
        for (auto& w : v)
            out.push_back(std::move(w));
    return out;
}

void check_letters(const Word& w, Alphabet a, const FiniteAbelianGroup& g)
{
    for (Letter l : w) {
        int idx = a == Alphabet::X ? (is_x0(l) ? 0 : x_group(l)) : y_group(l);
        if (idx < 0 || idx >= g.order() || (a == Alphabet::Y && y_weight(l) < 1))
            throw std::invalid_argument("letter outside the alphabet of the group");
    }
}

} // namespace cmzv
