#pragma once

#include <string>
#include <vector>

namespace cmzv {

class FiniteAbelianGroup;

// Exponent vector against the invariant factors of its group.
struct GroupElement {
    std::vector<long> exponents;
    std::vector<long> moduli;

    bool operator==(const GroupElement&) const = default;
};

class FiniteAbelianGroup {
public:
    FiniteAbelianGroup();  // trivial group
    // Any list of positive cyclic orders; normalized to invariant factors n_1 | n_2 | ...
    explicit FiniteAbelianGroup(const std::vector<long>& cyclic_orders);

    static FiniteAbelianGroup cyclic(long n);

    const std::vector<long>& invariant_factors() const { return factors_; }
    int order() const { return order_; }
    bool is_cyclic() const { return factors_.size() <= 1; }

    // elements are addressed by a mixed-radix index; index 0 is the identity
    int identity() const { return 0; }
    int mul(int a, int b) const;
    int inv(int a) const;
    int pow(int a, long k) const;
    int element_order(int a) const;

    GroupElement element(int index) const;
    int index_of(const GroupElement& g) const;
    int index_of_exponents(const std::vector<long>& exps) const;
    std::vector<long> exponents(int index) const;

    GroupElement op(const GroupElement& a, const GroupElement& b) const;
    GroupElement inverse(const GroupElement& a) const;

    std::vector<long> divisors_of_order() const;

    bool operator==(const FiniteAbelianGroup& o) const { return factors_ == o.factors_; }
    bool operator!=(const FiniteAbelianGroup& o) const { return !(*this == o); }

private:
    void check_index(int a) const;
    std::vector<long> factors_;
    int order_ = 1;
};

// Result of normalizing a product of cyclic groups: the canonical group plus
// the image of each input generator in canonical coordinates.
struct Normalization {
    FiniteAbelianGroup group;
    std::vector<std::vector<long>> generator_images;

    int map_coordinates(const std::vector<long>& product_coords) const;
};

Normalization normalize(const std::vector<long>& cyclic_orders);

class GroupHom {
public:
    GroupHom(FiniteAbelianGroup domain, FiniteAbelianGroup codomain, std::vector<int> table);

    static GroupHom identity(const FiniteAbelianGroup& g);
    // images of the canonical generators of the domain
    static GroupHom from_generator_images(const FiniteAbelianGroup& domain,
                                          const FiniteAbelianGroup& codomain,
                                          const std::vector<int>& images);

    const FiniteAbelianGroup& domain() const { return domain_; }
    const FiniteAbelianGroup& codomain() const { return codomain_; }
    const std::vector<int>& table() const { return table_; }
    int operator()(int g) const { return table_.at(static_cast<size_t>(g)); }

    int kernel_size() const;
    std::vector<int> kernel() const;
    std::vector<int> preimage(int h) const;

    // (this ∘ inner)
    GroupHom after(const GroupHom& inner) const;

private:
    FiniteAbelianGroup domain_;
    FiniteAbelianGroup codomain_;
    std::vector<int> table_;
};

// G, G^d = {g^d}, K_d = ker(g -> g^d), the projection p: G -> G^d and the
// inclusion i: G^d -> G.
struct PowerStructure {
    FiniteAbelianGroup group;
    FiniteAbelianGroup power_group;
    long d = 1;
    GroupHom projection;
    GroupHom inclusion;
    std::vector<int> kernel;
    bool kernel_has_order_d = false;

    // index in G^d of an element of G that is a d-th power
    int to_power_index(int g) const;
    std::vector<int> preimages(int h) const { return projection.preimage(h); }
};

PowerStructure power_structure(const FiniteAbelianGroup& g, long d);

} // namespace cmzv
