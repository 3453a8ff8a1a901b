#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace fujita {

/// Exact rational scalar. GMP keeps values in lowest terms with a positive
/// denominator after every arithmetic operation.
using Rat = mpq_class;
using Int = mpz_class;

/// Coordinates of a class in N^1 or N_1 (or any rational vector).
using VecQ = std::vector<Rat>;

/// Parses "p", "-p" or "p/q" with q > 0 and gcd(p, q) = 1.
/// Throws InputError on anything else, including non-reduced fractions.
Rat parse_rat(std::string_view text);

std::string to_string(const Rat& value);

/// "(a, b, c)"
std::string to_string(const VecQ& v);

VecQ zeros(std::size_t n);
VecQ unit_vector(std::size_t n, std::size_t i);

/// Throws InputError if lengths differ.
Rat dot(const VecQ& a, const VecQ& b);

VecQ operator+(const VecQ& a, const VecQ& b);
VecQ operator-(const VecQ& a, const VecQ& b);
VecQ operator-(const VecQ& a);
VecQ operator*(const Rat& s, const VecQ& v);

bool is_zero(const VecQ& v);
bool is_integral(const VecQ& v);

/// Smallest positive multiple of v with coprime integer coordinates.
/// The zero vector maps to itself.
VecQ primitive(const VecQ& v);

/// Lexicographic order on coordinates; used to sort canonical lists.
bool lex_less(const VecQ& a, const VecQ& b);

void require_length(const VecQ& v, std::size_t n, std::string_view what);

} // namespace fujita
