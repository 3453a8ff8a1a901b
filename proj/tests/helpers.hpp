#pragma once

#include "fujita/rational.hpp"

#include <initializer_list>
#include <vector>

namespace fujita::testing {

inline VecQ v(std::initializer_list<long> xs)
{
    VecQ out;
    for (long x : xs)
        out.emplace_back(x);
    return out;
}

inline std::vector<VecQ> vs(std::initializer_list<std::initializer_list<long>> rows)
{
    std::vector<VecQ> out;
    for (auto r : rows)
        out.push_back(v(r));
    return out;
}

inline Rat q(long num, long den = 1)
{
    Rat r(num, den);
    r.canonicalize();
    return r;
}

} // namespace fujita::testing
