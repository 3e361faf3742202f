// Writes the bundled corpus of knot complexes as JSON.
#include "floerforge/cli.hpp"

#include <fstream>
#include <iostream>

using namespace floerforge;

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_corpus <directory>\n";
        return 2;
    }
    const std::filesystem::path dir = argv[1];
    std::filesystem::create_directories(dir);
    auto write = [&](const std::string& name, const KnotComplex& k) {
        std::ofstream(dir / (name + ".json")) << cli::dump(cli::to_json(k));
    };
    write("unknot", builtin("unknot"));
    write("figure8", builtin("figure8"));
    write("trefoil", staircase_torus(3, 1));
    write("j_in_y", builtin("J_in_Y"));
    write("jprime_in_yprime", builtin("Jprime_in_Yprime"));
    for (int n : {3, 5, 7, 9}) {
        const auto tag = std::to_string(n);
        write("t2_" + tag, staircase_torus(n, 1));
        auto k = reduce_canonical(connected_sum_knots(staircase_torus(n, 1), staircase_torus(n, -1)));
        write("k" + tag, k);
        write("wh_k" + tag, whitehead_double_cfk(reduced_basis_form(k)));
    }
    return 0;
}
