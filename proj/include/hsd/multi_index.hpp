#ifndef HSD_MULTI_INDEX_HPP
#define HSD_MULTI_INDEX_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace hsd
{

// Exponent / weight vector in N^n.
class MultiIndex
{
public:
    using value_type = std::uint32_t;
    using storage_type = boost::container::small_vector<value_type, 4>;

    MultiIndex() = default;
    explicit MultiIndex(std::size_t n) : e_(n, 0) {}
    MultiIndex(std::initializer_list<value_type> il) : e_(il) {}
    explicit MultiIndex(const std::vector<value_type> &v) : e_(v.begin(), v.end()) {}

    static MultiIndex zero(std::size_t n)
    {
        return MultiIndex(n);
    }
    // e_j, with j 0-based.
    static MultiIndex unit(std::size_t n, std::size_t j, value_type k = 1)
    {
        MultiIndex r(n);
        r.e_[j] = k;
        return r;
    }

    std::size_t size() const
    {
        return e_.size();
    }
    value_type operator[](std::size_t i) const
    {
        return e_[i];
    }
    value_type &operator[](std::size_t i)
    {
        return e_[i];
    }
    auto begin() const
    {
        return e_.begin();
    }
    auto end() const
    {
        return e_.end();
    }

    std::uint64_t total_degree() const
    {
        std::uint64_t s = 0;
        for (auto x : e_) {
            s += x;
        }
        return s;
    }
    bool is_zero() const
    {
        for (auto x : e_) {
            if (x != 0) {
                return false;
            }
        }
        return true;
    }

    // Componentwise <=.
    bool divides(const MultiIndex &other) const;

    MultiIndex operator+(const MultiIndex &other) const;
    // Requires other.divides(*this).
    MultiIndex operator-(const MultiIndex &other) const;

    friend bool operator==(const MultiIndex &, const MultiIndex &) = default;

    std::vector<value_type> to_vector() const
    {
        return {e_.begin(), e_.end()};
    }
    std::string to_string() const;

private:
    storage_type e_;
};

// Graded order: total degree ascending, then lexicographically descending
// (X_1 > X_2 > ...). Fixed globally; series printing, quotient bases and
// kernel reports all use it.
struct GradedLexLess {
    bool operator()(const MultiIndex &a, const MultiIndex &b) const;
};

struct MultiIndexHash {
    std::size_t operator()(const MultiIndex &m) const;
};

// All multi-indices in N^n of total degree exactly d, lexicographically descending.
std::vector<MultiIndex> multi_indices_of_degree(std::size_t n, std::uint32_t d);

// All multi-indices in N^n of total degree < bound, in graded-lex order.
std::vector<MultiIndex> multi_indices_below(std::size_t n, std::uint32_t bound);

// All alpha <= box componentwise, in graded-lex order.
std::vector<MultiIndex> multi_indices_in_box(const MultiIndex &box);

} // namespace hsd

#endif
