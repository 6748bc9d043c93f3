// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "characters.hpp"
#include "cmzv/numeval.hpp"
#include "cmzv/relations.hpp"
#include "oracles.hpp"

using namespace cmzv;
using namespace testing_support;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string fmt(const char* f, double a)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// 1
Outcome fdtd1_grid()
{
    size_t cells = 0, bad = 0;
    for (long N : {2, 3, 4, 6, 8, 12}) {
        auto g = FiniteAbelianGroup::cyclic(N);
        for (long d : g.divisors_of_order()) {
            if (d < 2)
                continue;
            const int n = power_structure(g, d).power_group.order();
            for (int h = 0; h < n; ++h) {
                ++cells;
                if (!fdtd1_identity_check(g, d, h).passed())
                    ++bad;
            }
        }
    }
    return {bad == 0 && cells > 0, std::to_string(cells) + " (N,d,h) cells, " + std::to_string(bad) + " nonzero"};
}

// 2
Outcome quasi_shuffle_laws()
{
    auto g = FiniteAbelianGroup::cyclic(4);
    auto dia = harmonic_diamond(g);
    auto words = all_words(Alphabet::Y, g, 5);
    auto deg = [](const Word& w) { return word_degree(w, Alphabet::Y); };
    size_t pairs = 0, triples = 0;
    for (const auto& u : words)
        for (const auto& v : words) {
            if (deg(u) + deg(v) > 5)
                continue;
            ++pairs;
            if (quasi_shuffle_words<Rational>(u, v, Alphabet::Y, dia) !=
                quasi_shuffle_words<Rational>(v, u, Alphabet::Y, dia))
                return {false, "not commutative"};
        }
    for (const auto& u : words)
        for (const auto& v : words) {
            if (u.empty() || v.empty() || deg(u) + deg(v) > 4)
                continue;
            auto uv = quasi_shuffle_words<Rational>(u, v, Alphabet::Y, dia);
            for (const auto& w : words) {
                if (w.empty() || deg(u) + deg(v) + deg(w) > 5)
                    continue;
                ++triples;
                auto W = QElement::word(w, Alphabet::Y);
                auto left = quasi_shuffle(uv, W, dia);
                auto right = quasi_shuffle(QElement::word(u, Alphabet::Y), quasi_shuffle_words<Rational>(v, w, Alphabet::Y, dia), dia);
                if (left != right)
                    return {false, "not associative"};
            }
        }
    return {true, std::to_string(pairs) + " pairs, " + std::to_string(triples) + " triples"};
}

// 3
Outcome multiplicative_iff_grouplike()
{
    auto g = FiniteAbelianGroup::cyclic(3);
    auto dia = harmonic_diamond(g);
    std::mt19937 rng(2024);
    std::vector<Word> composite;
    for (const auto& w : all_words(Alphabet::Y, g, 4))
        if (w.size() > 1 && !is_lyndon(w))
            composite.push_back(w);
    std::uniform_int_distribution<size_t> pick(0, composite.size() - 1);
    int agree = 0, mult = 0;
    for (int i = 0; i < 200; ++i) {
        auto phi = random_character(rng, g, 4, dia);
        const bool broken = i % 2 == 1;
        if (broken) {
            const Word& w = composite[pick(rng)];
            phi.set(w, Rational(phi.coefficient(w) + 1));
        }
        const bool m = multiplicative_on_pairs(phi, dia);
        const bool gl = grouplike_check(phi, dia, 0.0).passed;
        const bool co = coproduct_grouplike(phi, dia);
        mult += m;
        agree += m == gl && gl == co && m == !broken;
    }
    return {agree == 200, std::to_string(agree) + "/200 agree, " + std::to_string(mult) + " multiplicative"};
}

// 4
Outcome regularization_closed_form()
{
    auto g = FiniteAbelianGroup::cyclic(2);
    ShuffleRegularizer reg;
    size_t n = 0;
    for (int m = 0; m <= 3; ++m)
        for (const auto& w : all_words(Alphabet::X, g, 3)) {
            if (w.empty() || !word_in_h0(w))
                continue;
            ++n;
            if (reg.bar_T(with_prefix(m, w)) != bar_T_oracle(m, w))
                return {false, "mismatch at m=" + std::to_string(m) + " w=" + format_word(w, Alphabet::X, g)};
        }
    return {n > 0, std::to_string(n) + " words"};
}

// 5
Outcome generating_identities()
{
    const int D = 8;
    auto divided = [](int n) {
        Rational f = 1;
        for (int i = 2; i <= n; ++i)
            f *= i;
        return TPolynomial<Rational>::monomial(n, Rational(1) / f);
    };
    auto fact = [](int n) {
        Rational f = 1;
        for (int i = 2; i <= n; ++i)
            f *= i;
        return f;
    };
    // exp of Σ a_n u^n by the recurrence n b_n = Σ k a_k b_{n-k}
    auto exp_series = [&](const std::vector<Rational>& a) {
        std::vector<Rational> b(D + 1, Rational(0));
        b[0] = 1;
        for (int n = 1; n <= D; ++n) {
            Rational s = 0;
            for (int k = 1; k <= n; ++k)
                s += k * a[static_cast<size_t>(k)] * b[static_cast<size_t>(n - k)];
            b[static_cast<size_t>(n)] = s / n;
        }
        return b;
    };
    auto expected = [&](const std::vector<Rational>& c, int n) {
        TPolynomial<Rational> p;
        for (int j = 0; j <= n; ++j)
            p.add_term(n - j, Rational(c[static_cast<size_t>(j)] / fact(n - j)));
        return p;
    };

    auto z1 = make_prime_zmap(FiniteAbelianGroup(), D);
    std::vector<Rational> logGamma(D + 1, Rational(0));
    for (int n = 2; n <= D; ++n)
        logGamma[static_cast<size_t>(n)] = Rational(n % 2 == 0 ? 1 : -1, n) * z1(zeta_word(n));
    auto gamma = exp_series(logGamma);
    for (int n = 0; n <= D; ++n)
        if (rho_apply(z1, divided(n), Direction::Forward) != expected(gamma, n))
            return {false, "rho at u^" + std::to_string(n)};

    size_t cases = 0;
    for (long N : {2, 4, 6}) {
        auto g = FiniteAbelianGroup::cyclic(N);
        auto z = make_prime_zmap(g, D);
        for (long d : g.divisors_of_order()) {
            auto ps = power_structure(g, d);
            Rational delta = 0;
            for (int k : ps.kernel)
                if (k != g.identity())
                    delta += z(Word{x_letter(k)});
            std::vector<Rational> lin(D + 1, Rational(0));
            lin[1] = delta;
            auto e = exp_series(lin);
            for (int n = 0; n <= D; ++n) {
                ++cases;
                if (sigma_apply(z, ps, divided(n)) != expected(e, n))
                    return {false, "sigma at N=" + std::to_string(N) + " d=" + std::to_string(d)};
            }
        }
    }
    return {true, "rho through u^8, sigma " + std::to_string(cases) + " (N,d,n) cases"};
}

// 6
Outcome eds_dmr()
{
    auto rep = eds_dmr_equality_check(make_zc_map(2, 4), 4, kNumericTolerance);
    return {rep.passed && rep.words_checked > 0,
            std::to_string(rep.words_checked) + " Y words, max residual " + fmt("%.2e", rep.max_residual)};
}

// 7
Outcome dmr_membership()
{
    double worst = 0.0;
    bool ok = true;
    for (int N : {1, 2}) {
        auto rep = dmr_check(phi_from_Z(make_zc_map(N, 4), 4), kNumericTolerance);
        ok = ok && rep.passed();
        worst = std::max({worst, rep.shuffle.max_residual, rep.harmonic.max_residual, rep.linear_residual});
    }
    return {ok, "max residual " + fmt("%.2e", worst)};
}

// 8
Outcome dmrd_level_two()
{
    auto g = FiniteAbelianGroup::cyclic(2);
    auto rep = dmrd_check(phi_from_Z(make_zc_map(2, 3), 3), power_structure(g, 2), kNumericTolerance);
    const double one = polylog_numeric({2, {2}, {0}}).value.real();
    const double minus = polylog_numeric({2, {2}, {1}}).value.real();
    const double scalar = std::abs(one - 2 * (one + minus));
    return {rep.passed && rep.words_checked > 0 && scalar <= 1e-6,
            "series residual " + fmt("%.2e", rep.max_residual) + ", Li2 instance " + fmt("%.2e", scalar)};
}

// 9
Outcome zhao_weight_two()
{
    auto rep = zhao_check(make_zc_map(4, 2), 2, kNumericTolerance);
    double worst = 0.0;
    for (const auto& c : rep.cells)
        worst = std::max(worst, c.residual);
    int filled = 0;
    for (int n : rep.cell_counts())
        filled += n > 0;
    return {rep.hypotheses_hold() && rep.cells_pass() && filled == 9,
            std::to_string(filled) + "/9 cells, max residual " + fmt("%.2e", worst)};
}

// 10
Outcome anchors()
{
    const double a = polylog_numeric({1, {2}, {0}}).value.real();
    const double b = polylog_numeric({2, {2}, {1}}).value.real();
    double err = std::max({std::abs(a - kPi * kPi / 6), std::abs(b + kPi * kPi / 12), std::abs(a - li2_direct(1)),
                           std::abs(b - li2_direct(-1))});
    auto li = [](std::vector<int> k, std::vector<int> z) { return polylog_numeric({3, std::move(k), std::move(z)}).value; };
    double shuffle = 0.0;
    for (int x = 1; x < 3; ++x)
        for (int y = 1; y < 3; ++y) {
            Complex st = li({1, 1}, {x, y}) + li({1, 1}, {y, x}) + li({2}, {x + y});
            Complex sh = li({1, 1}, {x, y - x}) + li({1, 1}, {y, x - y});
            shuffle = std::max(shuffle, std::abs(st - sh));
        }
    return {err <= 1e-6 && shuffle <= 1e-5, "anchor error " + fmt("%.2e", err) + ", N=3 double shuffle " + fmt("%.2e", shuffle)};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"FDTd1 exact identity on cyclic groups", fdtd1_grid},
        {"harmonic quasi-shuffle commutative and associative over Z/4", quasi_shuffle_laws},
        {"multiplicative iff grouplike over Z/3", multiplicative_iff_grouplike},
        {"shuffle regularization closed form over Z/2", regularization_closed_form},
        {"rho and sigma generating identities", generating_identities},
        {"EDS and DMR coefficients agree at N=2", eds_dmr},
        {"DMR membership at N=1,2", dmr_membership},
        {"DMRD at N=2, d=2", dmrd_level_two},
        {"weight-two regularized distribution at N=4, d=2", zhao_weight_two},
        {"numeric anchors and N=3 double shuffle", anchors},
    };
    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failures += !o.passed;
        std::printf("%s %zu %s: %s (%.1f s)\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
