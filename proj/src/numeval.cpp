#include "cmzv/numeval.hpp"

#include <Eigen/Dense>

#include <cfloat>
#include <cmath>
#include <map>
#include <numbers>

#include "cmzv/algebra.hpp"
#include "cmzv/io.hpp"

namespace cmzv {

namespace {

using Wide = std::complex<long double>;

struct Fit {
    Complex limit;
    // Σ|c_i| where limit = Σ c_i P(M_i); scales sample noise into the limit
    long double gain = 0.0L;
    bool ok = false;
};

// least squares for P(M) ≈ L + Σ_{j=1..J} Σ_{a<r} c_{ja} log(M/M0)^a (M0/M)^j
Fit fit_limit(const std::vector<std::pair<long, Wide>>& pts, int J, int r)
{
    using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    const int unknowns = 1 + J * r;
    if (static_cast<int>(pts.size()) < unknowns + 2)
        return {};
    const long double m0 = static_cast<long double>(pts.back().first);
    Mat A(pts.size(), unknowns);
    Mat b(pts.size(), 2);
    for (size_t i = 0; i < pts.size(); ++i) {
        const long double x = static_cast<long double>(pts[i].first) / m0, l = std::log(x);
        A(i, 0) = 1.0;
        int col = 1;
        for (int j = 1; j <= J; ++j)
            for (int a = 0; a < r; ++a)
                A(i, col++) = std::pow(l, a) / std::pow(x, j);
        b(i, 0) = pts[i].second.real();
        b(i, 1) = pts[i].second.imag();
    }
    const auto qr = A.colPivHouseholderQr();
    Mat sol = qr.solve(b);
    Mat pinv = qr.solve(Mat::Identity(A.rows(), A.rows()));
    return {Complex(static_cast<double>(sol(0, 0)), static_cast<double>(sol(0, 1))), pinv.row(0).cwiseAbs().sum(),
            true};
}

std::string join(const std::vector<int>& v)
{
    std::string s;
    for (size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::string describe(const PolylogQuery& q)
{
    return "Li[k=" + join(q.k) + ";z=" + join(q.z) + "]";
}

void compositions(int weight, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (weight == 0) {
        if (!cur.empty())
            out.push_back(cur);
        return;
    }
    for (int k = 1; k <= weight; ++k) {
        cur.push_back(k);
        compositions(weight - k, cur, out);
        cur.pop_back();
    }
}

} // namespace

Complex root_of_unity(int N, long a)
{
    long r = ((a % N) + N) % N;
    if (r == 0)
        return {1.0, 0.0};
    if (2 * r == N)
        return {-1.0, 0.0};
    double t = 2.0 * std::numbers::pi * static_cast<double>(r) / N;
    return {std::cos(t), std::sin(t)};
}

PolylogResult polylog_numeric(const PolylogQuery& q)
{
    const int r = static_cast<int>(q.k.size());
    if (q.N < 1)
        throw std::invalid_argument("level N must be positive");
    if (r == 0 || q.z.size() != q.k.size())
        throw std::invalid_argument("need matching, nonempty index and argument lists");
    for (int k : q.k)
        if (k < 1)
            throw std::invalid_argument("indices must be positive");
    std::vector<int> z(q.z);
    for (int& a : z)
        a = ((a % q.N) + q.N) % q.N;
    if (q.k[0] == 1 && z[0] == 0)
        throw std::invalid_argument("divergent: k_1 = 1 with z_1 = 1");
    const long M = q.cutoff;
    if (M < 256L * q.N)
        throw std::invalid_argument("cutoff too small for the tail fit");

    // the sweep runs in extended precision so rounding noise stays below what
    // the tail fit amplifies
    std::vector<Wide> roots(static_cast<size_t>(q.N));
    for (int a = 0; a < q.N; ++a) {
        long double t = 2.0L * std::numbers::pi_v<long double> * a / q.N;
        roots[static_cast<size_t>(a)] = a == 0 ? Wide(1.0L) : Wide(std::cos(t), std::sin(t));
    }

    // checkpoints: multiples of N, geometric in [M/16, M]
    std::vector<long> marks;
    const int K = 96;
    for (int i = 0; i <= K; ++i) {
        double t = static_cast<double>(M) / 16.0 * std::pow(16.0, static_cast<double>(i) / K);
        long m = static_cast<long>(t) / q.N * q.N;
        if (m > 0 && (marks.empty() || m > marks.back()))
            marks.push_back(m);
    }
    const long last = marks.back();

    // A[j] = Σ_{n ≥ n_j > ... > n_r > 0} Π_{i≥j} z_i^{n_i}/n_i^{k_i}; A[r] = 1
    std::vector<Wide> A(static_cast<size_t>(r) + 1, Wide(0.0L));
    A[static_cast<size_t>(r)] = 1.0L;
    std::vector<Wide> carry(static_cast<size_t>(r), Wide(0.0L));
    std::vector<int> phase(static_cast<size_t>(r), 0);
    int kmax = 0;
    for (int k : q.k)
        kmax = std::max(kmax, k);
    std::vector<long double> inv(static_cast<size_t>(kmax) + 1);
    std::vector<std::pair<long, Wide>> samples;
    size_t next = 0;
    for (long n = 1; n <= last; ++n) {
        inv[0] = 1.0L;
        const long double in = 1.0L / static_cast<long double>(n);
        for (int p = 1; p <= kmax; ++p)
            inv[static_cast<size_t>(p)] = inv[static_cast<size_t>(p) - 1] * in;
        for (int j = 0; j < r; ++j) {
            int& ph = phase[static_cast<size_t>(j)];
            ph += z[static_cast<size_t>(j)];
            if (ph >= q.N)
                ph -= q.N;
            const Wide term = roots[static_cast<size_t>(ph)] * inv[static_cast<size_t>(q.k[static_cast<size_t>(j)])] *
                              A[static_cast<size_t>(j) + 1];
            // compensated add, otherwise the running error grows with n and
            // the extrapolation magnifies it
            Wide& acc = A[static_cast<size_t>(j)];
            Wide& c = carry[static_cast<size_t>(j)];
            const Wide y = term - c;
            const Wide t = acc + y;
            c = (t - acc) - y;
            acc = t;
        }
        if (n == marks[next]) {
            samples.emplace_back(n, A[0]);
            ++next;
        }
    }

    std::vector<std::pair<long, Wide>> full, half;
    for (const auto& s : samples) {
        if (8 * s.first >= last)
            full.push_back(s);
        if (2 * s.first <= last)
            half.push_back(s);
    }
    // only inner (k, z) = (1, 1) slots raise the log power of the tail
    int logs = 1;
    for (int j = 1; j < r; ++j)
        logs += q.k[static_cast<size_t>(j)] == 1 && z[static_cast<size_t>(j)] == 0;
    Fit f4 = fit_limit(full, 4, logs), f3 = fit_limit(full, 3, logs), h4 = fit_limit(half, 4, logs);
    PolylogResult res;
    res.raw = Complex(A[0]);
    if (!f4.ok || !f3.ok || !h4.ok)
        throw std::logic_error("not enough checkpoints for the tail fit");
    res.value = f4.limit;
    // disagreement between fits, sweep rounding pushed through the worst fit,
    // and the final rounding to double
    long double peak = 0.0L;
    for (const auto& s : samples)
        peak = std::max(peak, std::abs(s.second));
    const long double noise = 4.0L * r * LDBL_EPSILON * (1.0L + peak) * std::max({f4.gain, f3.gain, h4.gain});
    res.bound = std::abs(f4.limit - f3.limit) + std::abs(f4.limit - h4.limit) + static_cast<double>(noise) +
                4.0 * DBL_EPSILON * (1.0 + std::abs(res.value));
    res.low_precision = res.bound > q.tolerance;
    return res;
}

PolylogQuery query_for_word(int N, const Word& w, long cutoff, double tol)
{
    if (w.empty() || !word_in_h0(w))
        throw std::invalid_argument("Z_C needs a nonempty convergent word");
    PolylogQuery q;
    q.N = N;
    q.cutoff = cutoff;
    q.tolerance = tol;
    int k = 1, prev = 0;
    for (Letter l : w) {
        if (is_x0(l)) {
            ++k;
            continue;
        }
        int eta = x_group(l);
        if (eta >= N)
            throw std::invalid_argument("letter outside μ_N");
        q.k.push_back(k);
        q.z.push_back(((eta - prev) % N + N) % N);
        prev = eta;
        k = 1;
    }
    return q;
}

Complex zc_eval(int N, const Word& w, long cutoff, double tol)
{
    if (w.empty())
        return 1.0;
    return polylog_numeric(query_for_word(N, w, cutoff, tol)).value;
}

ZMap<Complex> make_zc_map(int N, int degree_bound, long cutoff, double tol)
{
    return ZMap<Complex>(FiniteAbelianGroup::cyclic(N), degree_bound,
                         [N, cutoff, tol](const Word& w) { return zc_eval(N, w, cutoff, tol); });
}

SuiteReport numeric_relation_suite(int N, int weight_bound, double tol, long cutoff)
{
    SuiteReport rep;
    const auto g = FiniteAbelianGroup::cyclic(N);
    auto z = make_zc_map(N, weight_bound, cutoff, tol);

    // double shuffle
    std::vector<Word> starts;
    for (const auto& w : all_words(Alphabet::Y, g, weight_bound - 1))
        if (!w.empty() && w.front() != y_letter(1, 0))
            starts.push_back(w);
    auto to_x = [&](const QElement& y) { return y_to_x(qg_apply(y, g, Direction::Inverse)); };
    for (size_t i = 0; i < starts.size(); ++i)
        for (size_t j = i; j < starts.size(); ++j) {
            const Word &u = starts[i], &v = starts[j];
            if (word_degree(u, Alphabet::Y) + word_degree(v, Alphabet::Y) > weight_bound)
                continue;
            auto uy = QElement::word(u, Alphabet::Y), vy = QElement::word(v, Alphabet::Y);
            Complex st = z(to_x(harmonic(uy, vy, g)));
            Complex sh = z(shuffle(to_x(uy), to_x(vy)));
            SuiteRow row;
            row.kind = "shuffle";
            row.query = format_word(u, Alphabet::Y, g) + "*" + format_word(v, Alphabet::Y, g);
            row.value = st;
            row.residual = std::abs(st - sh);
            row.passed = row.residual <= tol;
            rep.max_shuffle_residual = std::max(rep.max_shuffle_residual, row.residual);
            rep.rows.push_back(std::move(row));
        }

    // distribution
    std::map<std::pair<std::vector<int>, std::vector<int>>, PolylogResult> memo;
    auto li = [&](const std::vector<int>& k, const std::vector<int>& a) {
        auto key = std::make_pair(k, a);
        auto it = memo.find(key);
        if (it != memo.end())
            return it->second;
        PolylogQuery q{N, k, a, cutoff, tol};
        return memo.emplace(key, polylog_numeric(q)).first->second;
    };
    for (long d : g.divisors_of_order()) {
        if (d == 1)
            continue;
        for (int w = 1; w <= weight_bound; ++w) {
            std::vector<std::vector<int>> ks;
            std::vector<int> cur;
            compositions(w, cur, ks);
            for (const auto& k : ks) {
                const size_t r = k.size();
                // arguments range over d-th powers, i.e. residues divisible by d
                std::vector<int> a(r, 0);
                const int step = static_cast<int>(d), count = N / step;
                std::vector<int> idx(r, 0);
                while (true) {
                    for (size_t i = 0; i < r; ++i)
                        a[i] = idx[i] * step;
                    if (!(k[0] == 1 && a[0] == 0)) {
                        PolylogResult lhs = li(k, a);
                        Complex sum = 0.0;
                        double bound = lhs.bound;
                        // all t with d t_i ≡ a_i mod N
                        std::vector<int> t(r, 0);
                        std::vector<int> tj(r, 0);
                        while (true) {
                            for (size_t i = 0; i < r; ++i)
                                t[i] = a[i] / step + tj[i] * count;
                            PolylogResult v = li(k, t);
                            sum += v.value;
                            bound += std::pow(static_cast<double>(d), static_cast<double>(w) - static_cast<double>(r)) * v.bound;
                            size_t p = 0;
                            while (p < r && ++tj[p] == step)
                                tj[p++] = 0;
                            if (p == r)
                                break;
                        }
                        sum *= std::pow(static_cast<double>(d), static_cast<double>(w) - static_cast<double>(r));
                        SuiteRow row;
                        row.kind = "distribution";
                        row.query = describe(PolylogQuery{N, k, a, cutoff, tol}) + " d=" + std::to_string(d);
                        row.value = lhs.value;
                        row.residual = std::abs(lhs.value - sum);
                        row.bound = bound;
                        row.passed = row.residual <= tol;
                        rep.max_distribution_residual = std::max(rep.max_distribution_residual, row.residual);
                        rep.rows.push_back(std::move(row));
                    }
                    size_t p = 0;
                    while (p < r && ++idx[p] == count)
                        idx[p++] = 0;
                    if (p == r)
                        break;
                }
            }
        }
    }
    return rep;
}

} // namespace cmzv
