#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <utility>

namespace cubecurve {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

BigInt ipow(unsigned base, unsigned exp);

// 3^e / 15^e as exact rationals; e may be negative.
Rat pow3(int e);
Rat pow15(int e);

// Largest integer <= q.
BigInt rat_floor(const Rat& q);

// Decimal "p/q", or just "p" when the reduced denominator is 1.
std::string rat_str(const Rat& q);

// Write q as num / 3^e with the smallest e >= 0. Throws std::domain_error if
// the reduced denominator has a prime factor other than 3.
std::pair<BigInt, int> as_pow3_fraction(const Rat& q);

// Write q as num / 15^e with the smallest e >= 0. Throws std::domain_error if
// the reduced denominator has a prime factor other than 3 or 5.
std::pair<BigInt, int> as_pow15_fraction(const Rat& q);

}  // namespace cubecurve
