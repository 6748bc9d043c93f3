#include "cmzv/regularization.hpp"

namespace cmzv {

namespace {

Word insert_letter(const Word& w, size_t pos, Letter l)
{
    Word out;
    out.reserve(w.size() + 1);
    out.insert(out.end(), w.begin(), w.begin() + static_cast<long>(pos));
    out.push_back(l);
    out.insert(out.end(), w.begin() + static_cast<long>(pos), w.end());
    return out;
}

} // namespace

QElement ShuffleRegularizer::tilde(const Word& w)
{
    if (word_in_h1(w))
        return QElement::word(w);
    if (std::all_of(w.begin(), w.end(), is_x0))
        return QElement();
    if (auto it = tilde_memo_.find(w); it != tilde_memo_.end())
        return it->second;

    // w = u x_0 with u ending in x_0^j. Inserting x_0 anywhere in the last
    // j + 1 slots of u gives w, so
    // (j+1) w = u ш x_0 - Σ_{p < |u| - j} (u with x_0 inserted at p).
    Word u(w.begin(), w.end() - 1);
    size_t j = 0;
    while (j < u.size() && is_x0(u[u.size() - 1 - j]))
        ++j;
    QElement out;
    for (size_t p = 0; p < u.size() - j; ++p)
        out += tilde(insert_letter(u, p, kX0));
    out *= Rational(-1) * make_rational(1, static_cast<long>(j + 1));
    tilde_memo_.emplace(w, out);
    return out;
}

QElement ShuffleRegularizer::tilde(const QElement& a)
{
    QElement out;
    for (const auto& [w, c] : a.terms()) {
        QElement t = tilde(w);
        t *= c;
        out += t;
    }
    return out;
}

QTPoly ShuffleRegularizer::bar_T_h1(const Word& w)
{
    const Letter one = x_letter(0);
    if (w.empty() || w.front() != one)
        return QTPoly(QElement::word(w));
    if (auto it = bar_memo_.find(w); it != bar_memo_.end())
        return it->second;

    size_t m = 0;
    while (m < w.size() && w[m] == one)
        ++m;
    // m x_1^m w0 = x_1 ш x_1^{m-1} w0 - (x_1 inserted into w0 after its first letter)
    Word v(w.begin() + 1, w.end());
    QTPoly out = bar_T_h1(v).shifted();
    for (size_t p = m; p < w.size(); ++p)
        out -= bar_T_h1(insert_letter(v, p, one));
    out.scale(make_rational(1, static_cast<long>(m)));
    bar_memo_.emplace(w, out);
    return out;
}

QTPoly ShuffleRegularizer::bar_T(const Word& w)
{
    QTPoly out;
    const QElement reduced = tilde(w);
    for (const auto& [u, c] : reduced.terms()) {
        QTPoly t = bar_T_h1(u);
        t.scale(c);
        out += t;
    }
    return out;
}

QTPoly ShuffleRegularizer::bar_T(const QElement& a)
{
    if (a.alphabet() != Alphabet::X)
        throw std::invalid_argument("regularization acts on X elements");
    QTPoly out;
    for (const auto& [w, c] : a.terms()) {
        QTPoly t = bar_T(w);
        t.scale(c);
        out += t;
    }
    return out;
}

QElement ShuffleRegularizer::bar(const Word& w)
{
    return at_zero(bar_T(w), QElement());
}

QElement ShuffleRegularizer::bar(const QElement& a)
{
    return at_zero(bar_T(a), QElement());
}

QElement tilde_reg(const QElement& a)
{
    ShuffleRegularizer r;
    return r.tilde(a);
}

QTPoly bar_reg_T(const QElement& a)
{
    ShuffleRegularizer r;
    return r.bar_T(a);
}

QElement bar_reg(const QElement& a)
{
    ShuffleRegularizer r;
    return r.bar(a);
}

} // namespace cmzv
