#include "cmzv/relations.hpp"

#include "cmzv/io.hpp"

namespace cmzv {

namespace {

QElement two_letters(Letter a, Letter b)
{
    return QElement::word({a, b});
}

void require(bool ok, const char* what)
{
    if (!ok)
        throw std::invalid_argument(what);
}

void check_index(const FiniteAbelianGroup& g, int i)
{
    require(i >= 0 && i < g.order(), "group index out of range");
}

PowerStructure checked_power_structure(const FiniteAbelianGroup& g, long d)
{
    require(d >= 1 && g.order() % d == 0, "d must divide the group order");
    return power_structure(g, d);
}

} // namespace

std::string format_tag(const RelationTag& t, const FiniteAbelianGroup& g)
{
    switch (t.kind) {
    case RelationKind::FDT1:
    case RelationKind::FDT2: {
        auto ps = checked_power_structure(g, t.d);
        std::string s = (t.kind == RelationKind::FDT1 ? "FDT1(" : "FDT2(") + std::to_string(t.d) + "," +
                        format_label(g, ps.inclusion(t.a));
        if (t.kind == RelationKind::FDT2)
            s += "," + format_label(g, ps.inclusion(t.b));
        return s + ")";
    }
    case RelationKind::FDS:
        return "FDS(" + format_label(g, t.a) + "," + format_label(g, t.b) + ")";
    case RelationKind::RDS:
        return "RDS(" + format_label(g, t.a) + ")";
    }
    return "?";
}

RelationElement build_relation(const RelationTag& t, const FiniteAbelianGroup& g)
{
    RelationElement out{t, QElement()};
    QElement& v = out.value;
    const int one = g.identity();
    switch (t.kind) {
    case RelationKind::FDT1: {
        auto ps = checked_power_structure(g, t.d);
        check_index(ps.power_group, t.a);
        for (int x : ps.preimages(t.a))
            v += Rational(t.d) * two_letters(kX0, x_letter(x));
        v -= two_letters(kX0, x_letter(ps.inclusion(t.a)));
        break;
    }
    case RelationKind::FDT2: {
        auto ps = checked_power_structure(g, t.d);
        check_index(ps.power_group, t.a);
        check_index(ps.power_group, t.b);
        require(t.a != ps.power_group.identity(), "FDT2 needs h1 != 1");
        for (int x : ps.preimages(t.a))
            for (int y : ps.preimages(t.b))
                v += two_letters(x_letter(x), x_letter(y));
        v -= two_letters(x_letter(ps.inclusion(t.a)), x_letter(ps.inclusion(t.b)));
        break;
    }
    case RelationKind::FDS: {
        check_index(g, t.a);
        check_index(g, t.b);
        require(t.a != one && t.b != one, "FDS needs g1, g2 != 1");
        const Letter a = x_letter(t.a), b = x_letter(t.b), ab = x_letter(g.mul(t.a, t.b));
        v += two_letters(kX0, ab);
        v += two_letters(a, ab);
        v += two_letters(b, ab);
        v -= two_letters(a, b);
        v -= two_letters(b, a);
        break;
    }
    case RelationKind::RDS: {
        check_index(g, t.a);
        require(t.a != one, "RDS needs g != 1");
        const Letter a = x_letter(t.a);
        v += two_letters(kX0, a);
        v += two_letters(a, a);
        v -= two_letters(a, x_letter(one));
        break;
    }
    }
    if (membership(v) != Membership::H0 && !v.is_zero())
        throw std::logic_error("relation element left the convergent subspace");
    return out;
}

IdentityReport fdtd1_identity_check(const FiniteAbelianGroup& g, long d, int h)
{
    auto ps = checked_power_structure(g, d);
    check_index(ps.power_group, h);
    require(ps.kernel_has_order_d, "K_d does not have order d; the decomposition does not apply");
    IdentityReport rep;
    rep.d = d;
    rep.h = h;
    rep.lhs = build_relation(RelationTag::fdt1(d, h), g).value;

    const int one = g.identity();
    auto rel = [&](const RelationTag& t) { return build_relation(t, g).value; };
    std::vector<int> k_minus_one;
    for (int k : ps.kernel)
        if (k != one)
            k_minus_one.push_back(k);
    if (h == ps.power_group.identity()) {
        for (int g1 : k_minus_one)
            for (int g2 : k_minus_one)
                rep.rhs += rel(RelationTag::fds(g1, g2));
        for (int x : k_minus_one)
            rep.rhs += Rational(2) * rel(RelationTag::rds(x));
    } else {
        for (int g1 : ps.preimages(h))
            for (int g2 : k_minus_one)
                rep.rhs += rel(RelationTag::fds(g1, g2));
        for (int x : ps.preimages(h))
            rep.rhs += rel(RelationTag::rds(x));
        rep.rhs -= rel(RelationTag::rds(ps.inclusion(h)));
        rep.rhs += rel(RelationTag::fdt2(d, h, ps.power_group.identity()));
        rep.rhs -= rel(RelationTag::fdt2(d, h, h));
    }
    rep.difference = rep.lhs - rep.rhs;
    return rep;
}

} // namespace cmzv
