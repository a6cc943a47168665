// Prints the frozen table of distance-sum constants used by dk_closed_bounds.
#include <cstdio>

#include "adhoc/cutset.hpp"

int main() {
  std::printf("#pragma once\n\n#include <vector>\n\n#include \"adhoc/cutset.hpp\"\n\n");
  std::printf("// generated by regen_lemma10_constants; do not edit by hand\n");
  std::printf("namespace adhoc::detail {\n\ninline const std::vector<Lemma10Constants> kLemma10Table = {\n");
  for (double a : {2.0, 2.5, 3.0, 4.0}) {
    const auto c = adhoc::compute_lemma10_constants(a);
    std::printf("    {%.17g, %.17g, %.17g},\n", c.alpha, c.k2, c.k3);
  }
  std::printf("};\n\n}  // namespace adhoc::detail\n");
}
