#ifndef HSD_TESTS_HELPERS_HPP
#define HSD_TESTS_HELPERS_HPP

#include <initializer_list>
#include <utility>
#include <vector>

#include <hsd/series.hpp>

namespace testing
{

using Term = std::pair<std::vector<std::uint32_t>, long>;

// P(field, n, {{{2, 0}, 1}, {{0, 1}, -3}}) = X1^2 - 3 X2.
inline hsd::Series P(const hsd::FieldSpec &field, std::size_t n, std::initializer_list<Term> terms,
                     hsd::Precision prec = hsd::Precision::exact())
{
    std::vector<hsd::Series::term_type> out;
    for (const auto &[e, c] : terms) {
        out.emplace_back(hsd::MultiIndex(e), hsd::Scalar(field, c));
    }
    return hsd::Series(field, n, prec, std::move(out));
}

inline hsd::Series X(const hsd::FieldSpec &field, std::size_t n, std::size_t j)
{
    return hsd::Series::variable(field, n, j);
}

} // namespace testing

#endif
