#include <hsd/multi_index.hpp>

#include <algorithm>
#include <cassert>

#include <hsd/error.hpp>

namespace hsd
{

bool MultiIndex::divides(const MultiIndex &other) const
{
    if (size() != other.size()) {
        throw LengthMismatch("multi-index length mismatch");
    }
    for (std::size_t i = 0; i < size(); ++i) {
        if (e_[i] > other.e_[i]) {
            return false;
        }
    }
    return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex &other) const
{
    if (size() != other.size()) {
        throw LengthMismatch("multi-index length mismatch");
    }
    MultiIndex r(*this);
    for (std::size_t i = 0; i < size(); ++i) {
        r.e_[i] += other.e_[i];
    }
    return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex &other) const
{
    if (size() != other.size()) {
        throw LengthMismatch("multi-index length mismatch");
    }
    MultiIndex r(*this);
    for (std::size_t i = 0; i < size(); ++i) {
        assert(r.e_[i] >= other.e_[i]);
        r.e_[i] -= other.e_[i];
    }
    return r;
}

std::string MultiIndex::to_string() const
{
    std::string s = "(";
    for (std::size_t i = 0; i < size(); ++i) {
        if (i) {
            s += ",";
        }
        s += std::to_string(e_[i]);
    }
    return s + ")";
}

bool GradedLexLess::operator()(const MultiIndex &a, const MultiIndex &b) const
{
    const auto da = a.total_degree(), db = b.total_degree();
    if (da != db) {
        return da < db;
    }
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

std::size_t MultiIndexHash::operator()(const MultiIndex &m) const
{
    std::size_t h = m.size();
    for (auto x : m) {
        h ^= std::hash<std::uint32_t>{}(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

namespace
{

void fill_degree(std::size_t n, std::size_t pos, std::uint32_t remaining, MultiIndex &cur,
                 std::vector<MultiIndex> &out)
{
    if (pos + 1 == n) {
        cur[pos] = remaining;
        out.push_back(cur);
        return;
    }
    for (std::uint32_t k = remaining + 1; k-- > 0;) {
        cur[pos] = k;
        fill_degree(n, pos + 1, remaining - k, cur, out);
    }
}

} // namespace

std::vector<MultiIndex> multi_indices_of_degree(std::size_t n, std::uint32_t d)
{
    std::vector<MultiIndex> out;
    if (n == 0) {
        if (d == 0) {
            out.emplace_back();
        }
        return out;
    }
    MultiIndex cur(n);
    fill_degree(n, 0, d, cur, out);
    return out;
}

std::vector<MultiIndex> multi_indices_below(std::size_t n, std::uint32_t bound)
{
    std::vector<MultiIndex> out;
    for (std::uint32_t d = 0; d < bound; ++d) {
        auto layer = multi_indices_of_degree(n, d);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

std::vector<MultiIndex> multi_indices_in_box(const MultiIndex &box)
{
    std::vector<MultiIndex> out;
    const auto n = box.size();
    MultiIndex cur(n);
    // odometer over the box
    while (true) {
        out.push_back(cur);
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (cur[i] < box[i]) {
                ++cur[i];
                break;
            }
            cur[i] = 0;
        }
        if (i == n) {
            break;
        }
    }
    std::sort(out.begin(), out.end(), GradedLexLess{});
    return out;
}

} // namespace hsd
