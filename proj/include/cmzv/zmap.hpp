#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

#include "cmzv/algebra.hpp"

namespace cmzv {

// Linear map on the convergent subspace with values in R, given word by word
// up to a degree bound. Evaluations are cached; the cache is shared between
// copies and safe for concurrent readers.
template <CoefficientRing R>
class ZMap {
public:
    using Evaluator = std::function<R(const Word&)>;

    ZMap(FiniteAbelianGroup group, int degree_bound, Evaluator eval)
        : group_(std::move(group)), degree_bound_(degree_bound), eval_(std::move(eval)),
          cache_(std::make_shared<Cache>())
    {
    }

    const FiniteAbelianGroup& group() const { return group_; }
    int degree_bound() const { return degree_bound_; }

    R operator()(const Word& w) const
    {
        if (w.empty())
            return ring_traits<R>::one();
        if (!word_in_h0(w))
            throw std::invalid_argument("Z is only defined on convergent words");
        if (static_cast<int>(w.size()) > degree_bound_)
            throw std::out_of_range("word beyond the degree bound of Z");
        {
            std::shared_lock lock(cache_->mutex);
            auto it = cache_->values.find(w);
            if (it != cache_->values.end())
                return it->second;
        }
        R v = eval_(w);
        std::unique_lock lock(cache_->mutex);
        cache_->values.emplace(w, v);
        return v;
    }

    R operator()(const QElement& a) const
    {
        R sum = ring_traits<R>::zero();
        for (const auto& [w, c] : a.terms())
            sum += ring_traits<R>::from_rational(c) * (*this)(w);
        return sum;
    }

private:
    struct Cache {
        std::shared_mutex mutex;
        std::unordered_map<Word, R, WordHash> values;
    };
    FiniteAbelianGroup group_;
    int degree_bound_;
    Evaluator eval_;
    std::shared_ptr<Cache> cache_;
};

// Formal values: every word gets its own prime, indexed by the word's rank
// among all X words. An identity holding for every linear Z must hold exactly
// here, and accidental cancellations are unlikely.
ZMap<Rational> make_prime_zmap(const FiniteAbelianGroup& g, int degree_bound);

std::vector<long> first_primes(size_t count);

} // namespace cmzv
