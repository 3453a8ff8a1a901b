#include "fujita/rational.hpp"

#include "fujita/errors.hpp"

#include <algorithm>
#include <cctype>

namespace fujita {

namespace {

bool is_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

} // namespace

Rat parse_rat(std::string_view text)
{
    const std::string original(text);
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && body.front() == '-') {
        negative = true;
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!is_digits(num) || !is_digits(den))
        throw InputError("malformed rational \"" + original + "\"");

    Int n(std::string(num), 10);
    Int d(std::string(den), 10);
    if (d == 0)
        throw InputError("zero denominator in \"" + original + "\"");
    Int g;
    mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    if (g != 1 && !(n == 0 && d == 1))
        throw InputError("rational \"" + original + "\" is not in lowest terms");
    if (negative)
        n = -n;
    Rat r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rat& value)
{
    return value.get_str(10);
}

std::string to_string(const VecQ& v)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += ", ";
        out += to_string(v[i]);
    }
    out += ")";
    return out;
}

VecQ zeros(std::size_t n)
{
    return VecQ(n, Rat(0));
}

VecQ unit_vector(std::size_t n, std::size_t i)
{
    VecQ v = zeros(n);
    v.at(i) = 1;
    return v;
}

void require_length(const VecQ& v, std::size_t n, std::string_view what)
{
    if (v.size() != n)
        throw InputError(std::string(what) + ": expected length " + std::to_string(n) + ", got "
                         + std::to_string(v.size()));
}

Rat dot(const VecQ& a, const VecQ& b)
{
    require_length(b, a.size(), "dot product");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

VecQ operator+(const VecQ& a, const VecQ& b)
{
    require_length(b, a.size(), "vector sum");
    VecQ r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

VecQ operator-(const VecQ& a, const VecQ& b)
{
    require_length(b, a.size(), "vector difference");
    VecQ r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

VecQ operator-(const VecQ& a)
{
    VecQ r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = -a[i];
    return r;
}

VecQ operator*(const Rat& s, const VecQ& v)
{
    VecQ r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        r[i] = s * v[i];
    return r;
}

bool is_zero(const VecQ& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return sgn(x) == 0; });
}

bool is_integral(const VecQ& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x.get_den() == 1; });
}

VecQ primitive(const VecQ& v)
{
    Int den_lcm = 1;
    for (const Rat& x : v)
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
    Int num_gcd = 0;
    for (const Rat& x : v) {
        Int scaled = x.get_num() * (den_lcm / x.get_den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
    }
    if (num_gcd == 0)
        return v;
    VecQ r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Int scaled = v[i].get_num() * (den_lcm / v[i].get_den());
        r[i] = Rat(Int(scaled / num_gcd));
    }
    return r;
}

bool lex_less(const VecQ& a, const VecQ& b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

} // namespace fujita
