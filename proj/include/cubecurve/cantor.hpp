#pragma once

#include "cubecurve/geometry.hpp"
#include "cubecurve/rational.hpp"

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace cubecurve {

// Digits of a ternary expansion, most significant first: value = sum d_k 3^(-k-1).
using TernaryDigits = std::vector<std::uint8_t>;  // digits in {0,1,2}
using CantorDigits = std::vector<std::uint8_t>;   // digits in {0,2}

// Per-level corner selectors: level k picks the corner cube on each axis.
using CornerWord = std::vector<Bits3>;

// sum d_k 3^(-k-1) for any digit vector.
Rat digits_value(const std::vector<std::uint8_t>& digits);

// Greedy (standard) ternary expansion, truncated to n digits:
//   0 <= y - value(digits) < 3^(-n),
// except y == 1, which yields all 2's (residual exactly 3^(-n)).
// Throws std::domain_error for y outside [0,1].
TernaryDigits ternary_expand(const Rat& y, int n);

// Digitwise split d_k = b_k + c_k with b_k, c_k in {0,1}, returned scaled by 2
// so both outputs use Cantor digits {0,2}. Digit 1 splits as (1,0); the
// average of the two output values is exactly the input value.
std::pair<CantorDigits, CantorDigits> midpoint_split(const TernaryDigits& d);

// Per-axis ternary_expand + midpoint_split, packaged as two corner words.
// The two words' values average to y within 3^(-n) per coordinate.
std::pair<CornerWord, CornerWord> cantor3_split(const std::array<Rat, 3>& y, int n);

// Coordinates of the depth-|w| Cantor cube corner selected by w:
// per axis sum h_k * 2 * 3^(-k-1).
std::array<Rat, 3> corner_word_value(const CornerWord& w);

}  // namespace cubecurve
