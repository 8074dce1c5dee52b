#include <doctest.h>

#include <random>
#include <set>

#include <hsd/error.hpp>
#include <hsd/formula.hpp>

#include "../oracles.hpp"
#include "helpers.hpp"

using namespace hsd;
using testing::P;
using testing::X;

namespace
{

// Literal definition of the order, independent of the library.
bool succeq_oracle(const MultiIndex &b, const MultiIndex &a)
{
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (b[k] < a[k] || (a[k] == 0 && b[k] != 0)) {
            return false;
        }
    }
    return true;
}

// Every multi-index in the box [0, bound]^n.
std::vector<MultiIndex> box(std::size_t n, std::uint32_t bound)
{
    std::vector<MultiIndex> out{MultiIndex(n)};
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<MultiIndex> next;
        for (const auto &m : out) {
            for (std::uint32_t e = 0; e <= bound; ++e) {
                auto c = m;
                c[k] = e;
                next.push_back(c);
            }
        }
        out = std::move(next);
    }
    return out;
}

} // namespace

TEST_CASE("succeq examples")
{
    CHECK(succeq(MultiIndex{3, 0}, MultiIndex{2, 0}));
    CHECK_FALSE(succeq(MultiIndex{2, 1}, MultiIndex{2, 0}));
    CHECK(succeq(MultiIndex{1, 4}, MultiIndex{1, 4}));
    CHECK_FALSE(succeq(MultiIndex{1, 0}, MultiIndex{2, 0}));
    CHECK_THROWS_AS(succeq(MultiIndex{1}, MultiIndex{1, 0}), LengthMismatch);
}

TEST_CASE("enumerate_pairs examples")
{
    using V = std::vector<IndexPair>;
    CHECK(enumerate_pairs(3, 2, 1) == V{{MultiIndex{3}, MultiIndex{2}}});
    CHECK(enumerate_pairs(2, 2, 2) == V{{MultiIndex{2, 0}, MultiIndex{2, 0}},
                                        {MultiIndex{1, 1}, MultiIndex{1, 1}},
                                        {MultiIndex{0, 2}, MultiIndex{0, 2}}});
    CHECK(enumerate_pairs(2, 1, 2) == V{{MultiIndex{2, 0}, MultiIndex{1, 0}}, {MultiIndex{0, 2}, MultiIndex{0, 1}}});
    CHECK(enumerate_pairs(2, 3, 2).empty());
    CHECK(enumerate_pairs(2, 0, 2).empty());
}

TEST_CASE("enumerate_pairs agrees with a brute-force filter")
{
    for (std::size_t n = 1; n <= 3; ++n) {
        for (std::size_t i = 1; i <= 6; ++i) {
            const auto candidates = box(n, static_cast<std::uint32_t>(i));
            for (std::size_t m = 1; m <= i; ++m) {
                std::set<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>> expected;
                for (const auto &l : candidates) {
                    if (l.total_degree() != i) {
                        continue;
                    }
                    for (const auto &u : candidates) {
                        if (u.total_degree() == m && succeq_oracle(l, u)) {
                            expected.insert({l.to_vector(), u.to_vector()});
                        }
                    }
                }
                const auto got = enumerate_pairs(i, m, n);
                std::set<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>> got_set;
                for (const auto &[l, u] : got) {
                    got_set.insert({l.to_vector(), u.to_vector()});
                }
                REQUIRE(got.size() == got_set.size());
                REQUIRE(got_set == expected);
            }
        }
    }
}

TEST_CASE("composition_coeff examples")
{
    const auto q = FieldSpec::rationals();
    CoeffTable c(q, 1, 3, 1);
    const auto a = P(q, 1, {{{1}, 1}, {{0}, 2}});
    const auto b = P(q, 1, {{{2}, 3}});
    c.at(1, 0) = a;
    c.at(2, 0) = b;
    CHECK(composition_coeff(c, MultiIndex{0}, MultiIndex{0}) == Series::one(q, 1));
    CHECK(composition_coeff(c, MultiIndex{2}, MultiIndex{2}) == a * a);
    CHECK(composition_coeff(c, MultiIndex{3}, MultiIndex{2}) == Scalar(q, 2L) * a * b);
    CHECK_THROWS_AS(composition_coeff(c, MultiIndex{1}, MultiIndex{2}), OrderViolation);
    CHECK_THROWS_AS(composition_coeff(c, MultiIndex{1}, MultiIndex{0}), OrderViolation);
    // Level 4 lies beyond the table and counts as zero.
    CHECK(composition_coeff(c, MultiIndex{4}, MultiIndex{1}).is_zero());
    CHECK_THROWS_AS(c.at(0, 0), ComponentOutOfRange);
    CHECK_THROWS_AS(c.at(1, 1), ComponentOutOfRange);
}

TEST_CASE("composition_coeff against enumerated compositions, coordinate by coordinate")
{
    std::mt19937_64 rng(14);
    for (const auto &field : {FieldSpec::rationals(), FieldSpec::prime(3)}) {
        for (std::size_t n = 1; n <= 3; ++n) {
            const std::size_t m = 4;
            CoeffTable c(field, n, m, n);
            for (std::size_t l = 1; l <= m; ++l) {
                for (std::size_t d = 0; d < n; ++d) {
                    c.at(l, d) = random_polynomial(field, n, 2, 2, rng);
                }
            }
            // Single-coordinate oracle: sum over ordered compositions.
            auto single = [&](std::size_t d, std::uint64_t lam, std::uint64_t mu) {
                if (lam == 0 && mu == 0) {
                    return Series::one(field, n);
                }
                Series acc(field, n);
                std::vector<std::uint64_t> cur;
                oracle::compositions(lam, mu, cur, [&](const std::vector<std::uint64_t> &parts) {
                    auto prod = Series::one(field, n);
                    for (auto l : parts) {
                        prod = l <= m ? oracle::naive_mul(prod, c.at(l, d)) : Series(field, n);
                    }
                    acc += prod;
                });
                return acc;
            };
            for (std::size_t i = 1; i <= 5; ++i) {
                for (std::size_t mm = 1; mm <= i; ++mm) {
                    for (const auto &[lam, mu] : enumerate_pairs(i, mm, n)) {
                        auto expected = Series::one(field, n);
                        for (std::size_t d = 0; d < n; ++d) {
                            expected = oracle::naive_mul(expected, single(d, lam[d], mu[d]));
                        }
                        REQUIRE(composition_coeff(c, lam, mu) == expected);
                    }
                }
            }
        }
    }
}

TEST_CASE("formula_grande examples")
{
    const auto q = FieldSpec::rationals();
    std::mt19937_64 rng(15);

    // Only C[1,1] = 1: the formula returns the first member.
    const std::vector<HSDerivation> ds{random_hsd(q, 2, 3, rng), random_hsd(q, 2, 3, rng)};
    CoeffTable delta(q, 2, 3, 2);
    delta.at(1, 0) = Series::one(q, 2);
    for (int k = 0; k < 5; ++k) {
        const auto f = random_polynomial(q, 2, 4, 4, rng);
        for (std::size_t i = 1; i <= 3; ++i) {
            REQUIRE(formula_grande(delta, ds, i, f) == apply_component(ds[0], i, f));
        }
    }

    // i = 1 is the linear combination of degree-1 parts.
    CoeffTable c(q, 2, 3, 2);
    for (std::size_t l = 1; l <= 3; ++l) {
        for (std::size_t d = 0; d < 2; ++d) {
            c.at(l, d) = random_polynomial(q, 2, 2, 3, rng);
        }
    }
    const auto f = random_polynomial(q, 2, 4, 4, rng);
    CHECK(formula_grande(c, ds, 1, f)
          == c.at(1, 0) * apply_component(ds[0], 1, f) + c.at(1, 1) * apply_component(ds[1], 1, f));

    // Worked one-variable case: C = [X, 1] against the Taylor basis.
    const auto x = X(q, 1, 0);
    CoeffTable w(q, 1, 2, 1);
    w.at(1, 0) = x;
    w.at(2, 0) = Series::one(q, 1);
    CHECK(formula_grande(w, taylor_basis(1, 2, q), 2, x * x) == P(q, 1, {{{1}, 2}, {{2}, 1}}));
}

TEST_CASE("formula_grande against a direct sum over pairs")
{
    std::mt19937_64 rng(16);
    for (const auto &field : {FieldSpec::rationals(), FieldSpec::prime(2)}) {
        const std::size_t n = 2, m = 3;
        const std::vector<HSDerivation> ds{random_hsd(field, n, m, rng), random_hsd(field, n, m, rng)};
        CoeffTable c(field, n, m, n);
        for (std::size_t l = 1; l <= m; ++l) {
            for (std::size_t d = 0; d < n; ++d) {
                c.at(l, d) = random_polynomial(field, n, 2, 2, rng);
            }
        }
        const auto f = random_polynomial(field, n, 4, 4, rng);
        for (std::size_t i = 1; i <= m; ++i) {
            Series expected(field, n);
            for (std::size_t mm = 1; mm <= i; ++mm) {
                for (const auto &[lam, mu] : enumerate_pairs(i, mm, n)) {
                    // D_mu applied right to left, straight from the components.
                    auto v = f;
                    for (std::size_t d = n; d-- > 0;) {
                        v = apply_component(ds[d], mu[d], v);
                    }
                    expected += composition_coeff(c, lam, mu) * v;
                }
            }
            REQUIRE(formula_grande(c, ds, i, f) == expected);
        }
    }
}
