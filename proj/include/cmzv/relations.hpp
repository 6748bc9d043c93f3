#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <tuple>

#include "cmzv/regularization.hpp"
#include "cmzv/series.hpp"

namespace cmzv {

enum class RelationKind { FDT1, FDT2, FDS, RDS };

// FDT1/FDT2 parameters a, b are indices in G^d; FDS/RDS parameters are indices in G.
struct RelationTag {
    RelationKind kind = RelationKind::RDS;
    long d = 1;
    int a = 0;
    int b = 0;

    static RelationTag fdt1(long d, int h) { return {RelationKind::FDT1, d, h, 0}; }
    static RelationTag fdt2(long d, int h1, int h2) { return {RelationKind::FDT2, d, h1, h2}; }
    static RelationTag fds(int g1, int g2) { return {RelationKind::FDS, 1, g1, g2}; }
    static RelationTag rds(int g) { return {RelationKind::RDS, 1, g, 0}; }
};

std::string format_tag(const RelationTag& t, const FiniteAbelianGroup& g);

struct RelationElement {
    RelationTag tag;
    QElement value;
};

RelationElement build_relation(const RelationTag& tag, const FiniteAbelianGroup& g);

struct IdentityReport {
    long d = 1;
    int h = 0;
    QElement lhs;
    QElement rhs;
    QElement difference;
    bool passed() const { return difference.is_zero(); }
};

// FDT_{d,1}(h) against its decomposition into FDS, RDS and FDT_{d,2} terms.
// Refuses groups whose K_d does not have order d.
IdentityReport fdtd1_identity_check(const FiniteAbelianGroup& g, long d, int h);

template <CoefficientRing R>
double max_residual(const TPolynomial<R>& a, const TPolynomial<R>& b)
{
    double m = 0.0;
    const TPolynomial<R> diff = a - b;
    for (const auto& [k, c] : diff.terms())
        m = std::max(m, ring_traits<R>::magnitude(c));
    return m;
}

template <CoefficientRing R>
bool all_negligible(const TPolynomial<R>& p, double tol)
{
    for (const auto& [k, c] : p.terms())
        if (!ring_traits<R>::negligible(c, tol))
            return false;
    return true;
}

// Z^* = ρ^{-1} ∘ Z̄^ш ∘ q^{-1} on a Y element
template <CoefficientRing R>
TPolynomial<R> z_star(const ZMap<R>& z, const QElement& y, ShuffleRegularizer& reg)
{
    auto x = y_to_x(qg_apply(y, z.group(), Direction::Inverse));
    return rho_apply(z, extend_Z_sh(z, x, reg), Direction::Inverse);
}

template <CoefficientRing R>
struct KernelLemmaResult {
    R relation_value{};
    R lemma_difference{};
    // full lemma-side difference; constant in every case
    TPolynomial<R> lemma_poly;
    double residual = 0.0;
    bool agree = false;
};

// Z(element) next to the reformulated lemma-left-minus-lemma-right difference
template <CoefficientRing R>
KernelLemmaResult<R> kernel_lemma_eval(const ZMap<R>& z, const RelationElement& rel,
                                       double tol = kDefaultTolerance)
{
    const auto& g = z.group();
    const auto& t = rel.tag;
    KernelLemmaResult<R> out;
    out.relation_value = z(rel.value);
    ShuffleRegularizer reg;
    switch (t.kind) {
    case RelationKind::FDT1:
    case RelationKind::FDT2: {
        auto ps = power_structure(g, t.d);
        Word w = t.kind == RelationKind::FDT1 ? Word{kX0, x_letter(t.a)} : Word{x_letter(t.a), x_letter(t.b)};
        auto e = QElement::word(w);
        R lhs = z(functor_sharp(e, ps.projection, Variance::Lower));
        R rhs = z(functor_sharp(e, ps.inclusion, Variance::Upper));
        out.lemma_poly = TPolynomial<R>(R(lhs - rhs));
        break;
    }
    case RelationKind::FDS: {
        auto y1 = QElement::word({y_letter(1, t.a)}, Alphabet::Y), y2 = QElement::word({y_letter(1, t.b)}, Alphabet::Y);
        auto stuffled = y_to_x(qg_apply(harmonic(y1, y2, g), g, Direction::Inverse));
        R lhs = z(stuffled);
        R rhs = z(shuffle(QElement::word({x_letter(t.a)}), QElement::word({x_letter(t.b)})));
        out.lemma_poly = TPolynomial<R>(R(lhs - rhs));
        break;
    }
    case RelationKind::RDS: {
        auto y1 = QElement::word({y_letter(1, g.identity())}, Alphabet::Y);
        auto yg = QElement::word({y_letter(1, t.a)}, Alphabet::Y);
        auto prod = z_star(z, harmonic(y1, yg, g), reg);
        auto fac = multiply(z_star(z, y1, reg), z_star(z, yg, reg));
        out.lemma_poly = prod - fac;
        break;
    }
    }
    out.lemma_difference = out.lemma_poly.coefficient(0, ring_traits<R>::zero());
    TPolynomial<R> gap = out.lemma_poly - TPolynomial<R>(out.relation_value);
    out.residual = max_residual(gap, TPolynomial<R>());
    out.agree = all_negligible(gap, tol);
    return out;
}

// Z̄^ш ∘ p_♯ and σ ∘ Z̄^ш ∘ i_♯ on an element of ℌ_{G^d}
template <CoefficientRing R>
std::pair<TPolynomial<R>, TPolynomial<R>> distribution_sides(const ZMap<R>& z, const PowerStructure& ps,
                                                             const QElement& e, ShuffleRegularizer& reg)
{
    auto lhs = extend_Z_sh(z, functor_sharp(e, ps.projection, Variance::Lower), reg);
    auto rhs = sigma_apply(z, ps, extend_Z_sh(z, functor_sharp(e, ps.inclusion, Variance::Upper), reg));
    return {lhs, rhs};
}

// 0 for x_0, 1 for x_1, 2 for any other group letter; the case table is 3x3
inline int zhao_class(Letter l)
{
    if (is_x0(l))
        return 0;
    return x_group(l) == 0 ? 1 : 2;
}

template <CoefficientRing R>
struct ZhaoCell {
    Letter h1 = kX0, h2 = kX0;
    TPolynomial<R> lhs, rhs;
    double residual = 0.0;
    bool passed = false;
    int table_cell() const { return 3 * zhao_class(h1) + zhao_class(h2); }
};

// x_{h1} x_{h2} with letters from X_{G^d}
template <CoefficientRing R>
ZhaoCell<R> zhao_regdist_check(const ZMap<R>& z, const PowerStructure& ps, Letter h1, Letter h2,
                               double tol = kDefaultTolerance)
{
    if (z.group() != ps.group)
        throw std::invalid_argument("Z and the power structure live on different groups");
    ZhaoCell<R> c;
    c.h1 = h1;
    c.h2 = h2;
    ShuffleRegularizer reg;
    std::tie(c.lhs, c.rhs) = distribution_sides(z, ps, QElement::word({h1, h2}), reg);
    c.residual = max_residual(c.lhs, c.rhs);
    c.passed = all_negligible(c.lhs - c.rhs, tol);
    return c;
}

template <CoefficientRing R>
struct ZhaoReport {
    long d = 1;
    int hypothesis_degree = 0;
    bool eds_holds = false;       // (i), through hypothesis_degree
    double eds_residual = 0.0;
    bool finite_dist_1 = false;   // (ii)
    double dist_1_residual = 0.0;
    bool finite_dist_2 = false;   // (iii)
    double dist_2_residual = 0.0;
    std::vector<ZhaoCell<R>> cells;
    bool hypotheses_hold() const { return eds_holds && finite_dist_1 && finite_dist_2; }
    bool cells_pass() const
    {
        for (const auto& c : cells)
            if (!c.passed)
                return false;
        return true;
    }
    // which of the nine table cells got at least one word
    std::array<int, 9> cell_counts() const
    {
        std::array<int, 9> n{};
        for (const auto& c : cells)
            ++n[static_cast<size_t>(c.table_cell())];
        return n;
    }
};

template <CoefficientRing R>
ZhaoReport<R> zhao_check(const ZMap<R>& z, long d, double tol = kDefaultTolerance, int hypothesis_degree = 2)
{
    auto ps = power_structure(z.group(), d);
    ZhaoReport<R> rep;
    rep.d = d;
    rep.hypothesis_degree = hypothesis_degree;
    auto dmr = dmr_check(phi_from_Z(z, hypothesis_degree), tol);
    rep.eds_holds = dmr.passed();
    rep.eds_residual = std::max({dmr.shuffle.max_residual, dmr.harmonic.max_residual, dmr.linear_residual});

    auto finite = [&](const Word& w) {
        auto e = QElement::word(w);
        R a = z(functor_sharp(e, ps.projection, Variance::Lower));
        R b = z(functor_sharp(e, ps.inclusion, Variance::Upper));
        return R(a - b);
    };
    rep.finite_dist_1 = rep.finite_dist_2 = true;
    const int n = ps.power_group.order();
    for (int h1 = 1; h1 < n; ++h1) {
        R r = finite({x_letter(h1)});
        rep.dist_1_residual = std::max(rep.dist_1_residual, ring_traits<R>::magnitude(r));
        rep.finite_dist_1 = rep.finite_dist_1 && ring_traits<R>::negligible(r, tol);
        for (int h2 = 0; h2 < n; ++h2) {
            R s = finite({x_letter(h1), x_letter(h2)});
            rep.dist_2_residual = std::max(rep.dist_2_residual, ring_traits<R>::magnitude(s));
            rep.finite_dist_2 = rep.finite_dist_2 && ring_traits<R>::negligible(s, tol);
        }
    }

    auto letters = alphabet_letters(Alphabet::X, ps.power_group, 1);
    for (Letter a : letters)
        for (Letter b : letters)
            rep.cells.push_back(zhao_regdist_check(z, ps, a, b, tol));
    return rep;
}

template <CoefficientRing R>
struct RegDistReport {
    long d = 1;
    int max_len = 0;
    size_t words_checked = 0;
    size_t generators_checked = 0;
    bool t_level = true;
    bool ev0_level = true;
    bool generators = true;
    double t_residual = 0.0;
    double ev0_residual = 0.0;
    double generator_residual = 0.0;
    Word worst;
    bool passed() const { return t_level && ev0_level && generators; }
};

// Z̄^ш ∘ p_♯ = σ ∘ Z̄^ш ∘ i_♯ on every word of ℌ_{G^d} up to max_len, also
// after ev_0, and on the generators x_1^m ш w with w not starting with x_1
template <CoefficientRing R>
RegDistReport<R> regdist_full_check(const ZMap<R>& z, long d, int max_len, double tol = kDefaultTolerance)
{
    auto ps = power_structure(z.group(), d);
    RegDistReport<R> rep;
    rep.d = d;
    rep.max_len = max_len;
    ShuffleRegularizer reg;
    const R zero = ring_traits<R>::zero();
    const auto words = all_words(Alphabet::X, ps.power_group, max_len);
    for (const auto& w : words) {
        auto [lhs, rhs] = distribution_sides(z, ps, QElement::word(w), reg);
        ++rep.words_checked;
        double t = max_residual(lhs, rhs);
        R e = at_zero(lhs, zero) - at_zero(rhs, zero);
        if (t > rep.t_residual) {
            rep.t_residual = t;
            rep.worst = w;
        }
        rep.ev0_residual = std::max(rep.ev0_residual, ring_traits<R>::magnitude(e));
        rep.t_level = rep.t_level && all_negligible(lhs - rhs, tol);
        rep.ev0_level = rep.ev0_level && ring_traits<R>::negligible(e, tol);
    }
    const Letter x1 = x_letter(0);
    for (const auto& w : words) {
        if (!w.empty() && w.front() == x1)
            continue;
        for (int m = 0; m + static_cast<int>(w.size()) <= max_len; ++m) {
            auto gen = shuffle(QElement::word(Word(static_cast<size_t>(m), x1)), QElement::word(w));
            auto [lhs, rhs] = distribution_sides(z, ps, gen, reg);
            ++rep.generators_checked;
            rep.generator_residual = std::max(rep.generator_residual, max_residual(lhs, rhs));
            rep.generators = rep.generators && all_negligible(lhs - rhs, tol);
        }
    }
    return rep;
}

} // namespace cmzv
