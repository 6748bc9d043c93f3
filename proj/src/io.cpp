#include "cmzv/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <istream>

namespace cmzv {

namespace {

std::string strip(const std::string& s)
{
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

std::string without_spaces(const std::string& s)
{
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)))
            out.push_back(c);
    return out;
}

long parse_long(const std::string& s)
{
    long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
        throw parse_error("not an integer: '" + s + "'");
    return v;
}

int parse_label(const std::string& text, const FiniteAbelianGroup& g)
{
    std::vector<long> parts;
    size_t start = 0;
    while (true) {
        size_t colon = text.find(':', start);
        parts.push_back(parse_long(text.substr(start, colon - start)));
        if (colon == std::string::npos)
            break;
        start = colon + 1;
    }
    const size_t rank = g.invariant_factors().size();
    if (rank == 0) {
        if (parts.size() == 1 && parts[0] == 0)
            return 0;
        throw parse_error("the trivial group only has the label 0");
    }
    if (parts.size() != rank)
        throw parse_error("label '" + text + "' does not match the group rank");
    return g.index_of_exponents(parts);
}

} // namespace

FiniteAbelianGroup parse_group(const std::string& raw)
{
    std::string text = without_spaces(raw);
    if (text.empty())
        throw parse_error("empty group description");
    std::vector<long> orders;
    size_t start = 0;
    while (start <= text.size()) {
        size_t x = text.find_first_of("xX,", start);
        std::string part = text.substr(start, x - start);
        if (!part.empty() && (part[0] == 'Z' || part[0] == 'C'))
            part = part.substr(1);
        if (!part.empty() && part[0] == '/')
            part = part.substr(1);
        long n = parse_long(part);
        if (n <= 0)
            throw parse_error("cyclic order must be positive");
        orders.push_back(n);
        if (x == std::string::npos)
            break;
        start = x + 1;
    }
    return FiniteAbelianGroup(orders);
}

std::string format_group(const FiniteAbelianGroup& g)
{
    const auto& f = g.invariant_factors();
    if (f.empty())
        return "Z1";
    std::string out;
    for (size_t i = 0; i < f.size(); ++i)
        out += (i ? "xZ" : "Z") + std::to_string(f[i]);
    return out;
}

std::string format_label(const FiniteAbelianGroup& g, int index)
{
    auto e = g.exponents(index);
    if (e.empty())
        return "0";
    std::string out;
    for (size_t i = 0; i < e.size(); ++i)
        out += (i ? ":" : "") + std::to_string(e[i]);
    return out;
}

std::string format_letter(Letter l, Alphabet a, const FiniteAbelianGroup& g)
{
    if (a == Alphabet::X)
        return is_x0(l) ? "x0" : "xg[" + format_label(g, x_group(l)) + "]";
    return "y[" + std::to_string(y_weight(l)) + ",g" + format_label(g, y_group(l)) + "]";
}

std::string format_word(const Word& w, Alphabet a, const FiniteAbelianGroup& g)
{
    if (w.empty())
        return "1";
    std::string out;
    for (Letter l : w)
        out += format_letter(l, a, g);
    return out;
}

ParsedWord parse_word(const std::string& raw, const FiniteAbelianGroup& g)
{
    std::string text = without_spaces(raw);
    ParsedWord out;
    if (text == "1")
        return out;
    if (text.empty())
        throw parse_error("empty word");
    auto set_alpha = [&](Alphabet a) {
        if (out.alphabet && *out.alphabet != a)
            throw parse_error("word mixes X and Y letters: " + text);
        out.alphabet = a;
    };
    size_t i = 0;
    while (i < text.size()) {
        if (text.compare(i, 2, "x0") == 0) {
            set_alpha(Alphabet::X);
            out.word.push_back(kX0);
            i += 2;
        } else if (text.compare(i, 3, "xg[") == 0) {
            size_t close = text.find(']', i);
            if (close == std::string::npos)
                throw parse_error("unterminated letter in " + text);
            set_alpha(Alphabet::X);
            out.word.push_back(x_letter(parse_label(text.substr(i + 3, close - i - 3), g)));
            i = close + 1;
        } else if (text.compare(i, 2, "y[") == 0) {
            size_t close = text.find(']', i);
            size_t comma = text.find(',', i);
            if (close == std::string::npos || comma == std::string::npos || comma > close)
                throw parse_error("malformed Y letter in " + text);
            long n = parse_long(text.substr(i + 2, comma - i - 2));
            if (n < 1 || n > 0xFFFF)
                throw parse_error("Y letter weight must be positive");
            std::string label = text.substr(comma + 1, close - comma - 1);
            if (label.empty() || label[0] != 'g')
                throw parse_error("Y letter label must start with g: " + text);
            set_alpha(Alphabet::Y);
            out.word.push_back(y_letter(static_cast<int>(n), parse_label(label.substr(1), g)));
            i = close + 1;
        } else {
            throw parse_error("unexpected character in word: " + text.substr(i));
        }
    }
    return out;
}

std::string format_scalar(const Rational& q)
{
    return q.get_str();
}

std::string format_scalar(const Complex& z)
{
    // shortest text that reads back to the same doubles
    char re[32], im[32];
    auto r = std::to_chars(re, re + sizeof re, z.real());
    auto i = std::to_chars(im, im + sizeof im, z.imag());
    return "(" + std::string(re, r.ptr) + "," + std::string(im, i.ptr) + ")";
}

Rational parse_rational(const std::string& raw)
{
    std::string text = without_spaces(raw);
    if (text.empty())
        throw parse_error("empty rational");
    size_t slash = text.find('/');
    if (slash == std::string::npos) {
        size_t dot = text.find('.');
        if (dot == std::string::npos)
            return Rational(parse_long(text));
        // exact decimal
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        long den = 1;
        for (size_t k = dot + 1; k < text.size(); ++k)
            den *= 10;
        if (digits == "-" || digits == "+")
            throw parse_error("not a number: " + text);
        return make_rational(parse_long(digits[0] == '+' ? digits.substr(1) : digits), den);
    }
    long den = parse_long(text.substr(slash + 1));
    if (den == 0)
        throw parse_error("zero denominator");
    return make_rational(parse_long(text.substr(0, slash)), den);
}

Complex parse_complex(const std::string& raw)
{
    std::string text = without_spaces(raw);
    auto parse_double = [&](const std::string& s) {
        try {
            size_t used = 0;
            double v = std::stod(s, &used);
            if (used != s.size())
                throw parse_error("not a number: " + s);
            return v;
        } catch (const std::logic_error&) {
            throw parse_error("not a number: " + s);
        }
    };
    if (!text.empty() && text.front() == '(') {
        size_t comma = text.find(',');
        if (text.back() != ')' || comma == std::string::npos)
            throw parse_error("complex numbers are written (re,im)");
        return {parse_double(text.substr(1, comma - 1)), parse_double(text.substr(comma + 1, text.size() - comma - 2))};
    }
    if (text.find('/') != std::string::npos)
        return ring_traits<Complex>::from_rational(parse_rational(text));
    return {parse_double(text), 0.0};
}

namespace detail {

std::vector<RawTerm> split_terms(const std::string& raw)
{
    std::string text = without_spaces(raw);
    if (text.empty())
        throw parse_error("empty expression");
    std::vector<RawTerm> out;
    if (text == "0")
        return out;
    std::vector<std::pair<bool, std::string>> pieces;
    int depth = 0;
    bool neg = false;
    std::string cur;
    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '(' || c == '[')
            ++depth;
        if (c == ')' || c == ']')
            --depth;
        bool exponent_sign = i >= 2 && (text[i - 1] == 'e' || text[i - 1] == 'E') &&
                             std::isdigit(static_cast<unsigned char>(text[i - 2]));
        if (depth == 0 && (c == '+' || c == '-') && !exponent_sign) {
            if (!cur.empty())
                pieces.emplace_back(neg, cur);
            else if (!pieces.empty() || i != 0)
                throw parse_error("dangling sign in expression: " + text);
            cur.clear();
            neg = c == '-';
            continue;
        }
        cur.push_back(c);
    }
    if (depth != 0)
        throw parse_error("unbalanced brackets: " + text);
    if (cur.empty())
        throw parse_error("expression ends with a sign: " + text);
    pieces.emplace_back(neg, cur);
    for (auto& [n, piece] : pieces) {
        RawTerm t;
        t.negative = n;
        size_t star = std::string::npos;
        int dep = 0;
        for (size_t i = 0; i < piece.size(); ++i) {
            if (piece[i] == '(' || piece[i] == '[')
                ++dep;
            if (piece[i] == ')' || piece[i] == ']')
                --dep;
            if (dep == 0 && piece[i] == '*') {
                star = i;
                break;
            }
        }
        if (star != std::string::npos) {
            t.coefficient = piece.substr(0, star);
            t.word = piece.substr(star + 1);
            if (t.coefficient.empty() || t.word.empty())
                throw parse_error("malformed term: " + piece);
        } else if (piece[0] == 'x' || piece[0] == 'y') {
            t.word = piece;
        } else {
            t.coefficient = piece;
        }
        if (t.word == "1")
            t.word.clear();
        out.push_back(std::move(t));
    }
    return out;
}

} // namespace detail

SeriesHeader read_series_text(std::istream& is)
{
    SeriesHeader h;
    bool have_header = false, have_group = false, have_degree = false;
    std::string line;
    while (std::getline(is, line)) {
        std::string t = strip(line);
        if (t.empty() || t[0] == '#')
            continue;
        if (have_header) {
            size_t tab = t.find('\t');
            if (tab == std::string::npos)
                throw parse_error("expected word<TAB>coefficient: " + t);
            h.rows.emplace_back(strip(t.substr(0, tab)), strip(t.substr(tab + 1)));
            continue;
        }
        have_header = true;
        std::istringstream fields(t);
        std::string field;
        while (fields >> field) {
            size_t eq = field.find('=');
            if (eq == std::string::npos)
                throw parse_error("series header field without '=': " + field);
            std::string key = field.substr(0, eq), value = field.substr(eq + 1);
            if (key == "alphabet") {
                if (value != "X" && value != "Y")
                    throw parse_error("alphabet must be X or Y");
                h.alphabet = value == "X" ? Alphabet::X : Alphabet::Y;
            } else if (key == "group") {
                h.group = parse_group(value);
                have_group = true;
            } else if (key == "degree") {
                h.degree = static_cast<int>(parse_long(value));
                have_degree = true;
            } else if (key == "ring") {
                if (value != "rational" && value != "complex")
                    throw parse_error("ring must be rational or complex");
                h.ring = value;
            } else {
                throw parse_error("unknown series header field: " + key);
            }
        }
    }
    if (!have_group || !have_degree || h.ring.empty())
        throw parse_error("series header needs group, degree and ring");
    return h;
}

} // namespace cmzv
