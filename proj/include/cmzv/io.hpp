#pragma once

#include <concepts>
#include <iosfwd>
#include <sstream>
#include <string>

#include "cmzv/series.hpp"

namespace cmzv {

class parse_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// "Z6", "Z/6", "6", "2x4", "Z2xZ4", "Z1"
FiniteAbelianGroup parse_group(const std::string& text);
std::string format_group(const FiniteAbelianGroup& g);

std::string format_label(const FiniteAbelianGroup& g, int index);
std::string format_letter(Letter l, Alphabet a, const FiniteAbelianGroup& g);
std::string format_word(const Word& w, Alphabet a, const FiniteAbelianGroup& g);

struct ParsedWord {
    Word word;
    std::optional<Alphabet> alphabet;  // unset for the empty word
};
// x0, xg[2], xg[1:2], y[3,g2], y[1,g1:0]; "1" is the empty word
ParsedWord parse_word(const std::string& text, const FiniteAbelianGroup& g);

std::string format_scalar(const Rational& q);
std::string format_scalar(const Complex& z);
Rational parse_rational(const std::string& text);
Complex parse_complex(const std::string& text);

template <CoefficientRing R>
R parse_scalar(const std::string& text);
template <>
inline Rational parse_scalar<Rational>(const std::string& text)
{
    return parse_rational(text);
}
template <>
inline Complex parse_scalar<Complex>(const std::string& text)
{
    return parse_complex(text);
}

namespace detail {
struct RawTerm {
    std::string coefficient;  // empty means 1
    bool negative = false;
    std::string word;         // empty means the empty word
};
std::vector<RawTerm> split_terms(const std::string& text);
} // namespace detail

template <CoefficientRing R>
AlgebraElement<R> parse_element(const std::string& text, const FiniteAbelianGroup& g,
                                Alphabet fallback = Alphabet::X)
{
    auto raw = detail::split_terms(text);
    std::optional<Alphabet> alpha;
    std::vector<std::pair<Word, R>> terms;
    for (const auto& t : raw) {
        R c = t.coefficient.empty() ? ring_traits<R>::one() : parse_scalar<R>(t.coefficient);
        if (t.negative)
            c = R(-c);
        ParsedWord pw = t.word.empty() ? ParsedWord{} : parse_word(t.word, g);
        if (pw.alphabet) {
            if (alpha && *alpha != *pw.alphabet)
                throw parse_error("mixed X and Y letters in one expression");
            alpha = pw.alphabet;
        }
        terms.emplace_back(pw.word, c);
    }
    AlgebraElement<R> out(alpha.value_or(fallback));
    for (const auto& [w, c] : terms)
        out.add_term(w, c);
    return out;
}

template <CoefficientRing R>
std::string format_element(const AlgebraElement<R>& e, const FiniteAbelianGroup& g)
{
    if (e.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : e.sorted_terms()) {
        std::string word = w.empty() ? "" : format_word(w, e.alphabet(), g);
        std::string coeff;
        bool neg = false;
        if constexpr (std::same_as<R, Rational>) {
            neg = sgn(c) < 0;
            Rational a = abs(c);
            if (a != 1 || w.empty())
                coeff = format_scalar(a);
        } else {
            coeff = format_scalar(c);
        }
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        os << coeff;
        if (!coeff.empty() && !word.empty())
            os << '*';
        os << word;
    }
    return os.str();
}

template <class C, std::invocable<const C&> F>
std::string format_tpoly(const TPolynomial<C>& p, F&& fmt)
{
    if (p.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        if (!first)
            os << " + ";
        first = false;
        os << '(' << fmt(it->second) << ')';
        if (it->first == 1)
            os << "*T";
        else if (it->first > 1)
            os << "*T^" << it->first;
    }
    return os.str();
}

inline std::string format_tpoly(const QTPoly& p, const FiniteAbelianGroup& g)
{
    return format_tpoly(p, [&](const QElement& e) { return format_element(e, g); });
}

template <CoefficientRing R>
std::string format_tpoly(const TPolynomial<R>& p)
{
    return format_tpoly(p, [](const R& c) { return format_scalar(c); });
}

template <CoefficientRing R>
constexpr const char* ring_name()
{
    return std::same_as<R, Rational> ? "rational" : "complex";
}

// Text format: one header line "alphabet=X group=Z2 degree=3 ring=rational",
// then one "word<TAB>coefficient" line per nonzero term.
template <CoefficientRing R>
void write_series(std::ostream& os, const TruncatedSeries<R>& s)
{
    os << "alphabet=" << (s.alphabet() == Alphabet::X ? "X" : "Y") << " group=" << format_group(s.group())
       << " degree=" << s.degree() << " ring=" << ring_name<R>() << '\n';
    auto e = s.to_element();
    for (const auto& [w, c] : e.sorted_terms())
        os << (w.empty() ? std::string("1") : format_word(w, s.alphabet(), s.group())) << '\t'
           << format_scalar(c) << '\n';
}

struct SeriesHeader {
    Alphabet alphabet = Alphabet::X;
    FiniteAbelianGroup group;
    int degree = 0;
    std::string ring;
    std::vector<std::pair<std::string, std::string>> rows;
};

SeriesHeader read_series_text(std::istream& is);

template <CoefficientRing R>
TruncatedSeries<R> read_series(std::istream& is)
{
    SeriesHeader h = read_series_text(is);
    if (h.ring != ring_name<R>())
        throw parse_error("series file holds " + h.ring + " coefficients");
    TruncatedSeries<R> s(h.alphabet, h.group, h.degree);
    for (const auto& [word, coeff] : h.rows) {
        ParsedWord pw = parse_word(word, h.group);
        if (pw.alphabet && *pw.alphabet != h.alphabet)
            throw parse_error("word over the wrong alphabet: " + word);
        s.set(pw.word, parse_scalar<R>(coeff));
    }
    return s;
}

} // namespace cmzv
