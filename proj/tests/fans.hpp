#pragma once

#include "helpers.hpp"

#include "fujita/toric.hpp"

#include <string>

namespace fujita::testing {

/// Rays e_1..e_n, -(e_1 + ... + e_n); every n of them span a max cone.
inline Fan projective_fan(int n)
{
    Fan f;
    f.name = "P" + std::to_string(n);
    f.rank = n;
    const auto un = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < un; ++i)
        f.rays.push_back(unit_vector(un, i));
    VecQ last(un, Rat(-1));
    f.rays.push_back(last);
    for (std::size_t skip = 0; skip <= un; ++skip) {
        std::vector<std::size_t> cone;
        for (std::size_t i = 0; i <= un; ++i)
            if (i != skip)
                cone.push_back(i);
        f.max_cones.push_back(cone);
    }
    return f;
}

inline Fan product_fan(const Fan& a, const Fan& b)
{
    Fan f;
    f.name = a.name + "x" + b.name;
    f.rank = a.rank + b.rank;
    for (const VecQ& r : a.rays) {
        VecQ w = r;
        w.resize(static_cast<std::size_t>(f.rank), Rat(0));
        f.rays.push_back(w);
    }
    for (const VecQ& r : b.rays) {
        VecQ w(static_cast<std::size_t>(a.rank), Rat(0));
        w.insert(w.end(), r.begin(), r.end());
        f.rays.push_back(w);
    }
    for (const auto& ca : a.max_cones)
        for (const auto& cb : b.max_cones) {
            auto c = ca;
            for (std::size_t i : cb)
                c.push_back(i + a.rays.size());
            f.max_cones.push_back(c);
        }
    return f;
}

inline Fan p1xp1_fan()
{
    Fan f = product_fan(projective_fan(1), projective_fan(1));
    f.name = "P1xP1";
    return f;
}

/// F_a: rays (1,0), (0,1), (-1,a), (0,-1).
inline Fan hirzebruch_fan(long a)
{
    Fan f;
    f.name = "F" + std::to_string(a);
    f.rank = 2;
    f.rays = vs({{1, 0}, {0, 1}, {-1, a}, {0, -1}});
    f.max_cones = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    return f;
}

} // namespace fujita::testing
