// Two-generated conductors: the H^2 criterion on a handful of Q = (f, g).

#include <iostream>

#include "cmkernel/cmkernel.hpp"

int main() {
  using namespace cmkernel;

  struct Case {
    const char* ring;
    const char* q;
  };
  const Case cases[] = {
      {"QQ[x,y]", "x, y^2"},  {"QQ[x,y,z]", "x, y"},    {"QQ[x,y,z]", "x, y*z"},
      {"QQ[x,y,z]", "x*y, x*z"}, {"QQ[x]", "x, x^2"},
  };
  for (const auto& c : cases) {
    Ring S = parse_ring(c.ring);
    KQRing R = make_kq_ring(S, parse_polynomial_list(c.q, S));
    auto report = cm_obstruction_report(R, default_degree_bound(R));
    std::cout << R.to_string() << ": " << to_string(report.verdict) << "\n";
    for (const auto& line : report.narrative) std::cout << "    " << line << "\n";
  }
}
