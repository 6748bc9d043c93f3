#include "cmzv/zmap.hpp"

#include <mutex>

namespace cmzv {

namespace {

class PrimeTable {
public:
    long nth(size_t k)
    {
        std::lock_guard lock(mutex_);
        while (primes_.size() <= k)
            extend();
        return primes_[k];
    }

private:
    void extend()
    {
        limit_ = limit_ * 2 + 64;
        std::vector<bool> composite(static_cast<size_t>(limit_) + 1, false);
        primes_.clear();
        for (long n = 2; n <= limit_; ++n) {
            if (composite[n])
                continue;
            primes_.push_back(n);
            for (long m = n * n; m <= limit_; m += n)
                composite[m] = true;
        }
    }
    std::mutex mutex_;
    std::vector<long> primes_;
    long limit_ = 0;
};

PrimeTable& prime_table()
{
    static PrimeTable t;
    return t;
}

} // namespace

std::vector<long> first_primes(size_t count)
{
    std::vector<long> out;
    for (size_t k = 0; k < count; ++k)
        out.push_back(prime_table().nth(k));
    return out;
}

ZMap<Rational> make_prime_zmap(const FiniteAbelianGroup& g, int degree_bound)
{
    // rank = position among all X words ordered by length, then letters
    const size_t base = static_cast<size_t>(g.order()) + 1;
    return ZMap<Rational>(g, degree_bound, [base](const Word& w) {
        size_t offset = 0, block = 1;
        for (size_t len = 0; len < w.size(); ++len) {
            offset += block;
            block *= base;
        }
        size_t idx = 0;
        for (Letter l : w)
            idx = idx * base + l;
        return Rational(prime_table().nth(offset + idx));
    });
}

} // namespace cmzv
