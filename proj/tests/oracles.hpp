#ifndef HSD_TESTS_ORACLES_HPP
#define HSD_TESTS_ORACLES_HPP

// Brute-force reference computations used by the tests. Nothing here calls
// into the library's algorithms; only its data types are used to carry values.

#include <cstdint>
#include <functional>
#include <vector>

#include <gmpxx.h>

#include <hsd/series.hpp>

namespace oracle
{

// Pascal triangle over the integers, rows 0..n.
inline std::vector<std::vector<mpz_class>> pascal(std::size_t n)
{
    std::vector<std::vector<mpz_class>> t(n + 1);
    for (std::size_t r = 0; r <= n; ++r) {
        t[r].assign(r + 1, 1);
        for (std::size_t k = 1; k < r; ++k) {
            t[r][k] = t[r - 1][k - 1] + t[r - 1][k];
        }
    }
    return t;
}

inline mpz_class binom(std::uint64_t n, std::uint64_t k)
{
    if (k > n) {
        return 0;
    }
    return pascal(n)[n][k];
}

inline std::uint64_t mod(const mpz_class &v, std::uint64_t p)
{
    mpz_class r = v % mpz_class(static_cast<unsigned long>(p));
    if (r < 0) {
        r += static_cast<unsigned long>(p);
    }
    return r.get_ui();
}

inline mpz_class factorial(std::uint64_t n)
{
    mpz_class r = 1;
    for (std::uint64_t k = 2; k <= n; ++k) {
        r *= static_cast<unsigned long>(k);
    }
    return r;
}

// Ordered compositions of a into exactly b positive parts.
inline void compositions(std::uint64_t a, std::uint64_t b, std::vector<std::uint64_t> &cur,
                         const std::function<void(const std::vector<std::uint64_t> &)> &visit)
{
    if (b == 0) {
        if (a == 0) {
            visit(cur);
        }
        return;
    }
    for (std::uint64_t l = 1; l + (b - 1) <= a; ++l) {
        cur.push_back(l);
        compositions(a - l, b - 1, cur, visit);
        cur.pop_back();
    }
}

// d^alpha f / dX^alpha, term by term with falling factorials.
inline hsd::Series partial_alpha(const hsd::Series &f, const hsd::MultiIndex &alpha)
{
    std::vector<hsd::Series::term_type> out;
    for (const auto &[beta, c] : f.terms()) {
        bool vanishes = false;
        mpz_class factor = 1;
        hsd::MultiIndex rest(beta.size());
        for (std::size_t j = 0; j < beta.size(); ++j) {
            if (alpha[j] > beta[j]) {
                vanishes = true;
                break;
            }
            for (std::uint32_t q = 0; q < alpha[j]; ++q) {
                factor *= static_cast<unsigned long>(beta[j] - q);
            }
            rest[j] = beta[j] - alpha[j];
        }
        if (!vanishes) {
            out.emplace_back(rest, c * hsd::Scalar(f.field(), factor));
        }
    }
    return hsd::Series(f.field(), f.nvars(), f.precision(), std::move(out));
}

// Naive product: every pair of terms, no early exit, truncated at the end.
inline hsd::Series naive_mul(const hsd::Series &a, const hsd::Series &b)
{
    std::vector<hsd::Series::term_type> out;
    for (const auto &[x, cx] : a.terms()) {
        for (const auto &[y, cy] : b.terms()) {
            out.emplace_back(x + y, cx * cy);
        }
    }
    return hsd::Series(a.field(), a.nvars(), min(a.precision(), b.precision()), std::move(out));
}

// Every vector of F_p^dim (dim small) fed to visit; p^dim must stay tiny.
inline void all_vectors(std::uint64_t p, std::size_t dim, const std::function<void(const std::vector<std::uint64_t> &)> &visit)
{
    std::vector<std::uint64_t> v(dim, 0);
    while (true) {
        visit(v);
        std::size_t k = 0;
        while (k < dim && ++v[k] == p) {
            v[k] = 0;
            ++k;
        }
        if (k == dim) {
            return;
        }
    }
}

// Dimension of the common kernel of integer matrices reduced mod p, counted by
// enumerating all vectors. rows_of[op][r][c].
inline std::size_t brute_kernel_dimension(std::uint64_t p, std::size_t dim,
                                          const std::vector<std::vector<std::vector<std::uint64_t>>> &ops)
{
    std::uint64_t count = 0;
    all_vectors(p, dim, [&](const std::vector<std::uint64_t> &v) {
        for (const auto &m : ops) {
            for (const auto &row : m) {
                std::uint64_t acc = 0;
                for (std::size_t c = 0; c < dim; ++c) {
                    acc = (acc + row[c] * v[c]) % p;
                }
                if (acc != 0) {
                    return;
                }
            }
        }
        ++count;
    });
    std::size_t d = 0;
    while (count > 1) {
        count /= p;
        ++d;
    }
    return d;
}

} // namespace oracle

#endif
