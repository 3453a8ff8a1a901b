#pragma once

#include "fujita/rational.hpp"

#include <random>
#include <vector>

namespace fujita::testing {

class RandomData {
public:
    explicit RandomData(unsigned seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

    Rat positive_rational(long max_num = 9, long max_den = 7)
    {
        Rat r(integer(1, max_num), integer(1, max_den));
        r.canonicalize();
        return r;
    }

    VecQ vector(std::size_t d, long lo = -3, long hi = 3)
    {
        VecQ out;
        for (std::size_t i = 0; i < d; ++i)
            out.emplace_back(integer(lo, hi));
        return out;
    }

    VecQ nonzero_vector(std::size_t d, long lo = -3, long hi = 3)
    {
        for (;;) {
            VecQ out = vector(d, lo, hi);
            if (!is_zero(out))
                return out;
        }
    }

    std::vector<VecQ> vectors(std::size_t count, std::size_t d, long lo = -3, long hi = 3)
    {
        std::vector<VecQ> out;
        for (std::size_t i = 0; i < count; ++i)
            out.push_back(nonzero_vector(d, lo, hi));
        return out;
    }

    /// Generators of a full-dimensional pointed cone: a random positive
    /// combination shift of the standard basis keeps everything on one side
    /// of a hyperplane.
    std::vector<VecQ> pointed_full_generators(std::size_t d, std::size_t extra)
    {
        std::vector<VecQ> gens;
        for (std::size_t i = 0; i < d; ++i) {
            VecQ g = vector(d, -1, 2);
            g[i] = integer(1, 3) + static_cast<long>(d) * 2;
            gens.push_back(g);
        }
        for (std::size_t i = 0; i < extra; ++i) {
            VecQ g = vector(d, -2, 2);
            // Keep the sum of coordinates positive so the cone stays pointed.
            Rat s = 0;
            for (const Rat& x : g)
                s += x;
            if (sgn(s) <= 0)
                g[integer(0, static_cast<long>(d) - 1)] += 1 - s + integer(0, 2);
            gens.push_back(g);
        }
        return gens;
    }

    std::mt19937& engine() { return rng_; }

private:
    std::mt19937 rng_;
};

} // namespace fujita::testing
