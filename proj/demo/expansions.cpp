// Prints the Bell expansions behind the bilinear representations, as a quick
// tour of the jet layer.

#include <iostream>

#include "skdv/skdv.hpp"

int main() {
    using namespace skdv;
    const FieldId F = FieldRegistry::kF;
    for (const char* idx : {"x", "2x", "3x", "x,theta1"})
        std::cout << "Y_{" << idx << "}(f) = " << to_string(bell_Y(F, parse_index(idx)))
                  << "\n";

    const BellSlot s1(GaussianRational::i(), FieldRegistry::kB);
    const BellSlot s2(GaussianRational(-1), FieldRegistry::kP);
    std::cout << "\nY_{3x}(iB,-p) = " << to_string(binary_bell(parse_index("3x"), s1, s2))
              << "\n";
    std::cout << "Y_{t}(iB,-p)  = " << to_string(binary_bell(parse_index("t"), s1, s2))
              << "\n";

    std::cout << "\nfirst-flow residual, a=1: "
              << to_string(n1_residuals(GaussianRational(1)).first) << "\n";
    return 0;
}
