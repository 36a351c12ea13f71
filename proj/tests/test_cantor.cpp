#include "cubecurve/cantor.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace cubecurve;

TEST_CASE("ternary_expand examples") {
  CHECK(ternary_expand(0, 5) == TernaryDigits{0, 0, 0, 0, 0});
  CHECK(ternary_expand(Rat(1, 3), 3) == TernaryDigits{1, 0, 0});
  CHECK(ternary_expand(1, 3) == TernaryDigits{2, 2, 2});
  CHECK(ternary_expand(Rat(1, 2), 4) == TernaryDigits{1, 1, 1, 1});
  CHECK_THROWS_AS(ternary_expand(Rat(3, 2), 2), std::domain_error);
  CHECK_THROWS_AS(ternary_expand(Rat(-1, 2), 2), std::domain_error);
}

TEST_CASE("ternary_expand greedy residual") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    BigInt den = 1 + rng() % 1000000;
    BigInt num = BigInt(rng()) % den;  // y < 1; y == 1 covered by example
    Rat y(num, den);
    int n = 1 + int(rng() % 12);
    auto d = ternary_expand(y, n);
    Rat residual = y - digits_value(d);
    CHECK(residual >= 0);
    CHECK(residual < pow3(-n));
  }
}

TEST_CASE("midpoint_split examples") {
  auto [a0, b0] = midpoint_split({0, 0});
  CHECK(a0 == CantorDigits{0, 0});
  CHECK(b0 == CantorDigits{0, 0});

  auto [a2, b2] = midpoint_split({2, 2});
  CHECK(a2 == CantorDigits{2, 2});
  CHECK(b2 == CantorDigits{2, 2});

  auto [a1, b1] = midpoint_split({1, 1, 1});
  CHECK(a1 == CantorDigits{2, 2, 2});
  CHECK(b1 == CantorDigits{0, 0, 0});
  CHECK((digits_value(a1) + digits_value(b1)) / 2 == digits_value(TernaryDigits{1, 1, 1}));
}

TEST_CASE("reconstruction: half the digit sum recovers the expansion") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 10000; ++trial) {
    BigInt den = 1 + rng() % 1000000;
    BigInt num = BigInt(rng()) % (den + 1);
    Rat y(num, den);
    int n = 1 + int(rng() % 12);
    auto [a, b] = midpoint_split(ternary_expand(y, n));
    for (auto digit : a) CHECK((digit == 0 || digit == 2));
    for (auto digit : b) CHECK((digit == 0 || digit == 2));
    Rat mid = (digits_value(a) + digits_value(b)) / 2;
    Rat err = y - mid;
    CHECK(err >= 0);
    CHECK(err <= pow3(-n));  // equality only at y == 1
    if (y < 1) CHECK(err < pow3(-n));
  }
}

TEST_CASE("cantor3_split examples") {
  auto [p0, q0] = cantor3_split({Rat(0), Rat(0), Rat(0)}, 3);
  for (int k = 0; k < 3; ++k) {
    CHECK(p0[k] == Bits3{0, 0, 0});
    CHECK(q0[k] == Bits3{0, 0, 0});
  }
  auto [p1, q1] = cantor3_split({Rat(1), Rat(1), Rat(1)}, 3);
  for (int k = 0; k < 3; ++k) {
    CHECK(p1[k] == Bits3{1, 1, 1});
    CHECK(q1[k] == Bits3{1, 1, 1});
  }
  auto [ph, qh] = cantor3_split({Rat(1, 2), Rat(1, 2), Rat(1, 2)}, 2);
  for (int k = 0; k < 2; ++k) {
    CHECK(ph[k] == Bits3{1, 1, 1});
    CHECK(qh[k] == Bits3{0, 0, 0});
  }
}

TEST_CASE("corner_word_value examples") {
  CornerWord zeros(3, Bits3{0, 0, 0});
  auto vz = corner_word_value(zeros);
  CHECK(vz[0] == 0);
  CHECK(vz[1] == 0);
  CHECK(vz[2] == 0);

  auto vx = corner_word_value({{1, 0, 0}});
  CHECK(vx[0] == Rat(2, 3));
  CHECK(vx[1] == 0);

  auto v2 = corner_word_value({{1, 1, 1}, {1, 1, 1}});
  CHECK(v2[0] == Rat(8, 9));
  CHECK(v2[1] == Rat(8, 9));
  CHECK(v2[2] == Rat(8, 9));
}

namespace {

// Depth-2 Cantor approximation corners per axis.
std::vector<Rat> depth2_cantor() {
  std::vector<Rat> f;
  for (int a : {0, 1}) {
    for (int b : {0, 1}) {
      f.push_back(Rat(2 * a, 3) + Rat(2 * b, 9));
    }
  }
  std::sort(f.begin(), f.end());
  return f;
}

}  // namespace

TEST_CASE("finite product identity (F+F)^3 == F^3 + F^3") {
  auto f = depth2_cantor();
  std::vector<Rat> sums;
  for (const Rat& a : f) {
    for (const Rat& b : f) sums.push_back(a + b);
  }
  std::set<std::array<Rat, 3>> lhs;
  for (const Rat& x : sums) {
    for (const Rat& y : sums) {
      for (const Rat& z : sums) lhs.insert({x, y, z});
    }
  }
  std::set<std::array<Rat, 3>> rhs;
  std::vector<std::array<Rat, 3>> cube;
  for (const Rat& x : f) {
    for (const Rat& y : f) {
      for (const Rat& z : f) cube.push_back({x, y, z});
    }
  }
  for (const auto& p : cube) {
    for (const auto& q : cube) rhs.insert({p[0] + q[0], p[1] + q[1], p[2] + q[2]});
  }
  CHECK(lhs == rhs);
  CHECK(lhs.size() == 729);
}

TEST_CASE("coverage net: exact splits on the 3-adic grid") {
  for (int n = 1; n <= 3; ++n) {
    int m = static_cast<int>(ipow(3, unsigned(n)).convert_to<int>());
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        for (int k = 0; k < m; ++k) {
          std::array<Rat, 3> y = {Rat(i, m), Rat(j, m), Rat(k, m)};
          auto [p, q] = cantor3_split(y, n);
          auto vp = corner_word_value(p);
          auto vq = corner_word_value(q);
          for (int l = 0; l < 3; ++l) {
            REQUIRE((vp[l] + vq[l]) / 2 == y[l]);
          }
        }
      }
    }
  }
}
