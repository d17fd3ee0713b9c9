// small tour of the U_3 objects at r = 2, p = 3
#include <iostream>

#include "frobmodel/commvar.hpp"
#include "frobmodel/specseq.hpp"

using namespace frobmodel;

int main() {
  ParabolicContext pc(build_root_system('A', 2), {});
  auto ctx = full_model_context(pc, 2, 3);
  auto S = build_Sbar(ctx);
  std::cout << "generators:";
  for (auto& v : S.ring->vars()) std::cout << " " << v.id << "(deg " << v.coh_degree << ")";
  std::cout << "\nrelations:\n";
  for (auto& m : S.relations) std::cout << "  " << m.poly.str() << "\n";

  auto G = buchberger(S.ideal());
  std::cout << "dims:";
  for (int d = 0; d <= 10; d += 2) std::cout << " " << graded_dimension(G, d);
  std::cout << "\n";

  auto page = make_page(pc, 2, 2, 3);
  Root b{{1, 1}};
  std::cout << "d2 y_b^(0) = " << d2_on_y(page, b, 0).str() << "\n";
  std::cout << "d3 x_b^(0) = " << transgression_power(page, b, 0, 0).str() << "\n";

  auto V = v_variety_U3(2, 3);
  std::cout << "|V_2(U_3)(F_3)| = " << count_points(V.ring, V.relations, 3) << "\n";
}
