#include "cubecurve/cantor.hpp"

#include <stdexcept>

namespace cubecurve {

Rat digits_value(const std::vector<std::uint8_t>& digits) {
  // Horner from the least significant end.
  Rat v = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    v = (v + Rat(int(*it))) / 3;
  }
  return v;
}

TernaryDigits ternary_expand(const Rat& y, int n) {
  if (y < 0 || y > 1) throw std::domain_error("ternary_expand: input outside [0,1]");
  if (n < 0) throw std::domain_error("ternary_expand: negative depth");
  TernaryDigits out;
  out.reserve(static_cast<std::size_t>(n));
  Rat r = y;
  for (int k = 0; k < n; ++k) {
    r *= 3;
    int d = static_cast<int>(rat_floor(r));
    if (d > 2) d = 2;  // only reachable from y == 1
    out.push_back(static_cast<std::uint8_t>(d));
    r -= d;
  }
  return out;
}

std::pair<CantorDigits, CantorDigits> midpoint_split(const TernaryDigits& d) {
  CantorDigits a, b;
  a.reserve(d.size());
  b.reserve(d.size());
  for (auto digit : d) {
    switch (digit) {
      case 0:
        a.push_back(0);
        b.push_back(0);
        break;
      case 1:  // tie rule: (b,c) = (1,0)
        a.push_back(2);
        b.push_back(0);
        break;
      case 2:
        a.push_back(2);
        b.push_back(2);
        break;
      default:
        throw std::domain_error("midpoint_split: digit outside {0,1,2}");
    }
  }
  return {a, b};
}

std::pair<CornerWord, CornerWord> cantor3_split(const std::array<Rat, 3>& y, int n) {
  std::array<CantorDigits, 3> first, second;
  for (int l = 0; l < 3; ++l) {
    auto [a, b] = midpoint_split(ternary_expand(y[l], n));
    first[l] = std::move(a);
    second[l] = std::move(b);
  }
  CornerWord p(static_cast<std::size_t>(n)), q(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < 3; ++l) {
      p[k][l] = first[l][k] / 2;
      q[k][l] = second[l][k] / 2;
    }
  }
  return {p, q};
}

std::array<Rat, 3> corner_word_value(const CornerWord& w) {
  std::array<Rat, 3> v = {Rat(0), Rat(0), Rat(0)};
  for (int l = 0; l < 3; ++l) {
    Rat acc = 0;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      acc = (acc + Rat(2 * (*it)[l])) / 3;
    }
    v[l] = acc;
  }
  return v;
}

}  // namespace cubecurve
