#pragma once

#include "floerforge/fualgebra.hpp"

#include <random>
#include <vector>

namespace testing_support {

using floerforge::FreeComplex;
using floerforge::FUDecomposition;
using floerforge::Grading;

// Direct sum of free generators and U^k-pairs with known homology, scrambled
// by random homogeneous elementary changes of basis.
struct Scrambled {
    FreeComplex complex;
    FUDecomposition expected;  // minus-side homology
};

inline Scrambled scrambled_complex(std::mt19937& rng, int towers, int pairs, int ops) {
    std::vector<Grading> m;
    std::vector<std::vector<char>> d;  // d[target][source]
    FUDecomposition expected;
    std::uniform_int_distribution<int> grade(-4, 4), len(1, 3);
    auto add = [&](Grading g) {
        m.push_back(g);
        for (auto& row : d) row.push_back(0);
        d.emplace_back(m.size(), 0);
        return static_cast<int>(m.size()) - 1;
    };
    for (int i = 0; i < towers; ++i) {
        Grading g = grade(rng);
        add(g);
        expected.towers.push_back(g);
    }
    for (int i = 0; i < pairs; ++i) {
        Grading top = grade(rng);
        int k = len(rng);
        int x = add(top);
        int y = add(top + 1 - 2 * k);
        d[x][y] = 1;
        expected.torsion.push_back({top, k});
    }
    const int n = static_cast<int>(m.size());
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int s = 0; s < ops; ++s) {
        int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        // x_i' = x_i + U^e x_j needs m(x_i) = m(x_j) - 2e with e >= 0.
        Grading diff = m[j] - m[i];
        if (diff < 0 || diff.denominator() != 1 || diff.numerator() % 2 != 0) continue;
        for (int r = 0; r < n; ++r) d[r][i] ^= d[r][j];
        for (int c = 0; c < n; ++c) d[j][c] ^= d[i][c];
    }
    Scrambled out;
    for (int i = 0; i < n; ++i) out.complex.generators.push_back({"g" + std::to_string(i), m[i]});
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
            if (d[y][x]) {
                Grading p = (m[y] - m[x] + 1) / 2;
                out.complex.differential.push_back({"g" + std::to_string(x), "g" + std::to_string(y),
                                                    static_cast<int>(p.numerator())});
            }
    expected.normalize();
    out.expected = expected;
    return out;
}

}  // namespace testing_support
