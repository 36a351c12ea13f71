#include "cubecurve/param.hpp"

#include <stdexcept>

namespace cubecurve {

std::string address_str(const Address& s) {
  std::string out = "<";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += static_cast<char>('0' + s[i]);
  }
  out += '>';
  return out;
}

namespace {

void check_digit(int i) {
  if (i < 0 || i > 7) throw std::out_of_range("digit out of {0,...,7}");
}

// in_s and |K_s| by the affine recursion.
std::pair<Rat, Rat> descend(const Address& s) {
  Rat in = 0;
  Rat len = 1;
  for (auto d : s) {
    check_digit(d);
    len /= 15;
    in += Rat(2 * int(d)) * len;
  }
  return {in, len};
}

}  // namespace

Rat address_to_param(const Address& s, Pad pad) {
  auto [in, len] = descend(s);
  return pad == Pad::Zero ? in : in + len;
}

ParamInterval child_segment(const Address& s, int i) {
  check_digit(i);
  auto [in, len] = descend(s);
  Rat u = len / 15;
  Rat lo = in + Rat(2 * i) * u;
  return {lo, lo + u, IntervalKind::ClosedK};
}

ParamInterval gap_interval(const Address& s, int j) {
  if (j < 0 || j > 6) throw std::out_of_range("gap index out of {0,...,6}");
  auto [in, len] = descend(s);
  Rat u = len / 15;
  return {in + Rat(2 * j + 1) * u, in + Rat(2 * j + 2) * u, IntervalKind::OpenGap};
}

ParamClass classify_param(const Rat& t, int max_depth) {
  if (t < 0 || t > 1) throw std::domain_error("parameter outside [0,1]");
  if (max_depth < 0) throw std::domain_error("negative depth");
  Address s;
  Rat in = 0;
  Rat len = 1;
  for (int depth = 0; depth < max_depth; ++depth) {
    Rat u = len / 15;
    Rat r = (t - in) / u;  // position in [0,15] within K_s
    BigInt kbig = rat_floor(r);
    int k = static_cast<int>(kbig);
    bool on_boundary = (Rat(kbig) == r);
    int child;
    if (on_boundary) {
      // t is one of the 16 cut points: even k -> in_{s+k/2}, odd k -> out_{s+(k-1)/2};
      // both belong to the closed child.
      child = (k % 2 == 0) ? k / 2 : (k - 1) / 2;
    } else if (k % 2 == 0) {
      child = k / 2;  // interior of K_{s+k/2}
    } else {
      int j = (k - 1) / 2;
      return GapLocation{s, j, r - k};
    }
    s.push_back(static_cast<std::uint8_t>(child));
    len = u;
    in += Rat(2 * child) * u;
  }
  return LimitPrefix{s};
}

}  // namespace cubecurve
