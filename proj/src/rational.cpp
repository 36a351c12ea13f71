#include "cubecurve/rational.hpp"

#include <sstream>
#include <stdexcept>

namespace cubecurve {

BigInt ipow(unsigned base, unsigned exp) {
  BigInt r = 1;
  BigInt b = base;
  while (exp) {
    if (exp & 1u) r *= b;
    b *= b;
    exp >>= 1u;
  }
  return r;
}

Rat pow3(int e) {
  BigInt p = ipow(3, static_cast<unsigned>(e < 0 ? -e : e));
  return e < 0 ? Rat(1, p) : Rat(p);
}

Rat pow15(int e) {
  BigInt p = ipow(15, static_cast<unsigned>(e < 0 ? -e : e));
  return e < 0 ? Rat(1, p) : Rat(p);
}

BigInt rat_floor(const Rat& q) {
  BigInt n = numerator(q);
  BigInt d = denominator(q);  // always > 0 in canonical form
  BigInt quot = n / d;        // truncates toward zero
  if (n < 0 && quot * d != n) --quot;
  return quot;
}

std::string rat_str(const Rat& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << '/' << denominator(q);
  return os.str();
}

std::pair<BigInt, int> as_pow3_fraction(const Rat& q) {
  BigInt d = denominator(q);
  int e = 0;
  while (d % 3 == 0) {
    d /= 3;
    ++e;
  }
  if (d != 1) throw std::domain_error("denominator is not a power of 3: " + rat_str(q));
  return {numerator(q), e};
}

std::pair<BigInt, int> as_pow15_fraction(const Rat& q) {
  BigInt d = denominator(q);
  int threes = 0, fives = 0;
  while (d % 3 == 0) {
    d /= 3;
    ++threes;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) throw std::domain_error("denominator is not of the form 3^a*5^b: " + rat_str(q));
  int e = threes > fives ? threes : fives;
  BigInt scale = ipow(15, static_cast<unsigned>(e)) / denominator(q);
  return {numerator(q) * scale, e};
}

}  // namespace cubecurve
