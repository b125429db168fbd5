#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <string>

namespace oprew {

// Exact arbitrary-precision rationals. Floating point is never used for
// coefficients or evaluation anywhere in this library.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::size_t hash_rational(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    const auto fold = [](const BigInt& x) -> std::uint64_t {
        BigInt a = x < 0 ? BigInt(-x) : x;
        auto v = static_cast<std::uint64_t>(a % BigInt("18446744073709551557"));
        return x < 0 ? ~v : v;
    };
    std::size_t h = fold(num);
    h ^= fold(den) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

inline std::string print_rational(const Rational& r) { return r.str(); }

}  // namespace oprew
