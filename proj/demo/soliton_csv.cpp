// Builds the translating bump profile exactly and writes a small CSV grid.

#include <iostream>
#include <sstream>

#include "skdv/skdv.hpp"

int main() {
    using namespace skdv;
    SolitonParams par;
    const auto [u, v] = profile(1, 1, par);
    std::cout << "u_(1,1) = " << to_string(u) << "\n\n";

    GridSpec grid;
    grid.x_min = -5;
    grid.x_max = 5;
    grid.samples = 11;
    grid.times = {0.0};
    std::ostringstream csv;
    emit_csv(eval_grid(u, grid), csv);
    std::cout << csv.str();
    return 0;
}
