#include "cmzv/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace cmzv {

namespace {

std::vector<std::pair<long, int>> factorize(long n)
{
    std::vector<std::pair<long, int>> out;
    for (long p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0)
            out.emplace_back(p, e);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

long ipow(long b, int e)
{
    long r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

long mod(long a, long m)
{
    long r = a % m;
    return r < 0 ? r + m : r;
}

// inverse of a modulo m, gcd(a, m) = 1
long mod_inverse(long a, long m)
{
    long t = 0, nt = 1, r = m, nr = mod(a, m);
    while (nr != 0) {
        long q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    return mod(t, m);
}

} // namespace

Normalization normalize(const std::vector<long>& cyclic_orders)
{
    struct Part {
        int exponent;
        long prime_power;
        size_t source;
    };
    std::map<long, std::vector<Part>> by_prime;
    for (size_t i = 0; i < cyclic_orders.size(); ++i) {
        long m = cyclic_orders[i];
        if (m <= 0)
            throw std::invalid_argument("cyclic order must be positive");
        for (auto [p, e] : factorize(m))
            by_prime[p].push_back({e, ipow(p, e), i});
    }
    size_t slots = 0;
    for (auto& [p, parts] : by_prime) {
        std::sort(parts.begin(), parts.end(),
                  [](const Part& a, const Part& b) { return a.exponent < b.exponent; });
        slots = std::max(slots, parts.size());
    }
    // largest prime powers go to the last slot so that n_1 | n_2 | ...
    std::vector<long> factors(slots, 1);
    struct Placement {
        long prime_power;
        size_t slot;
        size_t source;
    };
    std::vector<Placement> placements;
    for (auto& [p, parts] : by_prime) {
        size_t offset = slots - parts.size();
        for (size_t t = 0; t < parts.size(); ++t) {
            factors[offset + t] *= parts[t].prime_power;
            placements.push_back({parts[t].prime_power, offset + t, parts[t].source});
        }
    }
    Normalization out;
    out.group = FiniteAbelianGroup();
    out.generator_images.assign(cyclic_orders.size(), std::vector<long>(slots, 0));
    for (const auto& pl : placements) {
        long n = factors[pl.slot];
        long rest = n / pl.prime_power;
        // idempotent: 1 mod prime_power, 0 mod rest
        long e = mod(rest * mod_inverse(rest, pl.prime_power), n);
        auto& img = out.generator_images[pl.source][pl.slot];
        img = mod(img + e, n);
    }
    out.group = FiniteAbelianGroup(factors);
    return out;
}

int Normalization::map_coordinates(const std::vector<long>& product_coords) const
{
    if (product_coords.size() != generator_images.size())
        throw std::invalid_argument("coordinate count mismatch");
    const auto& f = group.invariant_factors();
    std::vector<long> out(f.size(), 0);
    for (size_t i = 0; i < product_coords.size(); ++i)
        for (size_t j = 0; j < f.size(); ++j)
            out[j] = mod(out[j] + product_coords[i] * generator_images[i][j], f[j]);
    return group.index_of_exponents(out);
}

FiniteAbelianGroup::FiniteAbelianGroup() = default;

FiniteAbelianGroup::FiniteAbelianGroup(const std::vector<long>& cyclic_orders)
{
    bool canonical = true;
    for (size_t i = 0; i < cyclic_orders.size(); ++i) {
        if (cyclic_orders[i] <= 0)
            throw std::invalid_argument("cyclic order must be positive");
        if (cyclic_orders[i] == 1 || (i > 0 && cyclic_orders[i] % cyclic_orders[i - 1] != 0))
            canonical = false;
    }
    factors_ = canonical ? cyclic_orders : normalize(cyclic_orders).group.factors_;
    long ord = 1;
    for (long f : factors_)
        ord *= f;
    if (ord > (1L << 16))
        throw std::invalid_argument("group order too large");
    order_ = static_cast<int>(ord);
}

FiniteAbelianGroup FiniteAbelianGroup::cyclic(long n)
{
    return FiniteAbelianGroup(std::vector<long>{n});
}

void FiniteAbelianGroup::check_index(int a) const
{
    if (a < 0 || a >= order_)
        throw std::out_of_range("group element index out of range");
}

std::vector<long> FiniteAbelianGroup::exponents(int index) const
{
    check_index(index);
    std::vector<long> e(factors_.size());
    long r = index;
    for (size_t i = 0; i < factors_.size(); ++i) {
        e[i] = r % factors_[i];
        r /= factors_[i];
    }
    return e;
}

int FiniteAbelianGroup::index_of_exponents(const std::vector<long>& exps) const
{
    if (exps.size() != factors_.size())
        throw std::invalid_argument("exponent vector has wrong length");
    long idx = 0;
    for (size_t i = factors_.size(); i-- > 0;)
        idx = idx * factors_[i] + mod(exps[i], factors_[i]);
    return static_cast<int>(idx);
}

int FiniteAbelianGroup::mul(int a, int b) const
{
    auto ea = exponents(a), eb = exponents(b);
    for (size_t i = 0; i < ea.size(); ++i)
        ea[i] += eb[i];
    return index_of_exponents(ea);
}

int FiniteAbelianGroup::inv(int a) const
{
    auto e = exponents(a);
    for (auto& x : e)
        x = -x;
    return index_of_exponents(e);
}

int FiniteAbelianGroup::pow(int a, long k) const
{
    auto e = exponents(a);
    for (size_t i = 0; i < e.size(); ++i)
        e[i] = mod(mod(e[i] * mod(k, factors_[i]), factors_[i]), factors_[i]);
    return index_of_exponents(e);
}

int FiniteAbelianGroup::element_order(int a) const
{
    auto e = exponents(a);
    long o = 1;
    for (size_t i = 0; i < e.size(); ++i)
        o = std::lcm(o, factors_[i] / std::gcd(e[i], factors_[i]));
    return static_cast<int>(o);
}

GroupElement FiniteAbelianGroup::element(int index) const
{
    return GroupElement{exponents(index), factors_};
}

int FiniteAbelianGroup::index_of(const GroupElement& g) const
{
    if (g.moduli != factors_)
        throw std::invalid_argument("element belongs to a different group");
    return index_of_exponents(g.exponents);
}

GroupElement FiniteAbelianGroup::op(const GroupElement& a, const GroupElement& b) const
{
    return element(mul(index_of(a), index_of(b)));
}

GroupElement FiniteAbelianGroup::inverse(const GroupElement& a) const
{
    return element(inv(index_of(a)));
}

std::vector<long> FiniteAbelianGroup::divisors_of_order() const
{
    std::vector<long> out;
    for (long d = 1; d <= order_; ++d)
        if (order_ % d == 0)
            out.push_back(d);
    return out;
}

GroupHom::GroupHom(FiniteAbelianGroup domain, FiniteAbelianGroup codomain, std::vector<int> table)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), table_(std::move(table))
{
    if (table_.size() != static_cast<size_t>(domain_.order()))
        throw std::invalid_argument("homomorphism table has wrong size");
    for (int v : table_)
        if (v < 0 || v >= codomain_.order())
            throw std::invalid_argument("homomorphism value out of range");
    for (int a = 0; a < domain_.order(); ++a)
        for (int b = a; b < domain_.order(); ++b)
            if (table_[domain_.mul(a, b)] != codomain_.mul(table_[a], table_[b]))
                throw std::invalid_argument("table is not a homomorphism");
}

GroupHom GroupHom::identity(const FiniteAbelianGroup& g)
{
    std::vector<int> t(g.order());
    std::iota(t.begin(), t.end(), 0);
    return GroupHom(g, g, std::move(t));
}

GroupHom GroupHom::from_generator_images(const FiniteAbelianGroup& domain,
                                         const FiniteAbelianGroup& codomain,
                                         const std::vector<int>& images)
{
    const auto& f = domain.invariant_factors();
    if (images.size() != f.size())
        throw std::invalid_argument("need one image per generator");
    for (size_t i = 0; i < f.size(); ++i)
        if (codomain.pow(images[i], f[i]) != codomain.identity())
            throw std::invalid_argument("generator image has incompatible order");
    std::vector<int> t(domain.order());
    for (int g = 0; g < domain.order(); ++g) {
        auto e = domain.exponents(g);
        int v = codomain.identity();
        for (size_t i = 0; i < e.size(); ++i)
            v = codomain.mul(v, codomain.pow(images[i], e[i]));
        t[g] = v;
    }
    return GroupHom(domain, codomain, std::move(t));
}

int GroupHom::kernel_size() const
{
    return static_cast<int>(std::count(table_.begin(), table_.end(), codomain_.identity()));
}

std::vector<int> GroupHom::kernel() const
{
    return preimage(codomain_.identity());
}

std::vector<int> GroupHom::preimage(int h) const
{
    std::vector<int> out;
    for (int g = 0; g < domain_.order(); ++g)
        if (table_[g] == h)
            out.push_back(g);
    return out;
}

GroupHom GroupHom::after(const GroupHom& inner) const
{
    if (inner.codomain() != domain_)
        throw std::invalid_argument("homomorphisms do not compose");
    std::vector<int> t(inner.domain().order());
    for (int g = 0; g < inner.domain().order(); ++g)
        t[g] = table_[inner(g)];
    return GroupHom(inner.domain(), codomain_, std::move(t));
}

int PowerStructure::to_power_index(int g) const
{
    const auto& t = inclusion.table();
    auto it = std::find(t.begin(), t.end(), g);
    if (it == t.end())
        throw std::invalid_argument("element is not a d-th power");
    return static_cast<int>(it - t.begin());
}

PowerStructure power_structure(const FiniteAbelianGroup& g, long d)
{
    if (d <= 0 || g.order() % d != 0)
        throw std::invalid_argument("d must divide the group order");
    const auto& n = g.invariant_factors();
    std::vector<long> reduced(n.size());
    for (size_t i = 0; i < n.size(); ++i)
        reduced[i] = n[i] / std::gcd(n[i], d);
    Normalization norm = normalize(reduced);
    const FiniteAbelianGroup& gd = norm.group;

    std::vector<int> proj(g.order());
    for (int x = 0; x < g.order(); ++x) {
        auto e = g.exponents(x);
        std::vector<long> c(n.size());
        for (size_t i = 0; i < n.size(); ++i)
            c[i] = mod(e[i] * (d / std::gcd(n[i], d)), reduced[i]);
        proj[x] = norm.map_coordinates(c);
    }
    std::vector<int> incl(gd.order(), -1);
    for (int x = 0; x < g.order(); ++x)
        incl[proj[x]] = g.pow(x, d);

    GroupHom p(g, gd, proj);
    GroupHom i(gd, g, incl);
    auto ker = p.kernel();
    bool order_d = static_cast<long>(ker.size()) == d;
    return PowerStructure{g, gd, d, std::move(p), std::move(i), std::move(ker), order_d};
}

} // namespace cmzv
