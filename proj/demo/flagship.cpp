// R = k + x*k[x,y,z] = k[H] for H = {v in N_0^3 : v_1 >= 1} ∪ {0}:
// normal and non-Noetherian, yet not Cohen-Macaulay.

#include <iostream>

#include "cmkernel/cmkernel.hpp"

int main() {
  using namespace cmkernel;

  auto H = SemigroupDescriptor::sector_plus_origin(3, 0);
  auto normality = bounded_normality_check(H, 5, 6);
  std::cout << "H = " << H.to_string() << " normal within bounds: " << std::boolalpha
            << normality.normal_within_bound << "\n";

  KQRing R = *monomial_bridge(H);
  std::cout << "R = " << R.to_string() << "\n";

  auto report = cm_obstruction_report(R, default_degree_bound(R));
  std::cout << to_json(report).dump(2) << "\n";
  return report.verdict == CMVerdict::NOT_CM ? 0 : 1;
}
