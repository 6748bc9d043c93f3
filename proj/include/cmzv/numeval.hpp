#pragma once

#include <string>
#include <vector>

#include "cmzv/zmap.hpp"

namespace cmzv {

inline constexpr long kDefaultCutoff = 200000;
inline constexpr double kNumericTolerance = 1e-5;

// Li_{k_1..k_r}(z_1..z_r) = Σ_{n_1 > ... > n_r > 0} Π z_i^{n_i} / n_i^{k_i},
// z_i = exp(2πi z_i/N) given by residues.
struct PolylogQuery {
    int N = 1;
    std::vector<int> k;
    std::vector<int> z;
    long cutoff = kDefaultCutoff;
    double tolerance = kNumericTolerance;
};

struct PolylogResult {
    Complex value;
    double bound = 0.0;
    bool low_precision = false;
    // partial sum at the cutoff, before the tail fit
    Complex raw;
};

PolylogResult polylog_numeric(const PolylogQuery& q);

Complex root_of_unity(int N, long a);

// x_0^{k_1-1} x_{η_1} ... x_0^{k_r-1} x_{η_r} -> Li_k(η_1, η_2/η_1, ..., η_r/η_{r-1})
PolylogQuery query_for_word(int N, const Word& w, long cutoff = kDefaultCutoff, double tol = kNumericTolerance);

Complex zc_eval(int N, const Word& w, long cutoff = kDefaultCutoff, double tol = kNumericTolerance);

// Z_C on ℌ⁰ of μ_N, letters indexed by residues mod N
ZMap<Complex> make_zc_map(int N, int degree_bound, long cutoff = kDefaultCutoff, double tol = kNumericTolerance);

struct SuiteRow {
    std::string kind;   // "shuffle" or "distribution"
    std::string query;
    Complex value;
    double residual = 0.0;
    double bound = 0.0;
    bool passed = false;
};

struct SuiteReport {
    std::vector<SuiteRow> rows;
    double max_shuffle_residual = 0.0;
    double max_distribution_residual = 0.0;
    bool passed() const
    {
        for (const auto& r : rows)
            if (!r.passed)
                return false;
        return true;
    }
};

// (1) Z q^{-1}(u * v) - Z(q^{-1}u ш q^{-1}v) over Y words u, v not starting with y_{1,1}
// (2) Li_k(z) - d^{|k|-r} Σ_{t^d = z} Li_k(t) for every divisor d of N
SuiteReport numeric_relation_suite(int N, int weight_bound, double tol = kNumericTolerance,
                                   long cutoff = kDefaultCutoff);

} // namespace cmzv
