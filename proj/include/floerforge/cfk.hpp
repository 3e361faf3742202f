#pragma once

#include "floerforge/fualgebra.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace floerforge {

struct Ambient {
    std::string name = "S3";
    int b1 = 0;
    bool reduced_trivial = true;
    bool operator==(const Ambient&) const = default;
};

// CFK^- data: base complex, Alexander filtration, optional flip involution.
struct KnotComplex {
    FreeComplex base;
    std::map<std::string, int> alexander;
    // Unordered pairs {x, iota(x)}; fixed points appear as {x, x}.
    std::optional<std::vector<std::pair<std::string, std::string>>> flip;
    Ambient ambient;
    bool operator==(const KnotComplex&) const = default;
};

ValidationReport validate_knot(const KnotComplex& k);
void require_valid_knot(const KnotComplex& k, const std::string& context);

// Flip as a name -> name map (both directions).
std::map<std::string, std::string> flip_map(const KnotComplex& k);

struct BoxSpec {
    Grading k;
    int j = 0;
    bool operator==(const BoxSpec&) const = default;
};

KnotComplex box(const Grading& k, int j);
KnotComplex staircase_torus(int n, int sign);
KnotComplex builtin(const std::string& name);
KnotComplex mirror_knot(const KnotComplex& k);
KnotComplex connected_sum_knots(const KnotComplex& a, const KnotComplex& b);

// Copies k with every generator name prefixed.
KnotComplex prefixed(const KnotComplex& k, const std::string& prefix);
// Direct sum over S3; flips kept when every summand has one.
KnotComplex direct_sum(const std::vector<KnotComplex>& parts);

// Splitting of a thin complex into boxes plus a remainder on which the
// product of the vertical and horizontal differentials vanishes.
struct BoxSplitting {
    KnotComplex remainder;
    std::vector<BoxSpec> boxes;
    // Generator names (a, b, c, d) when a box is spanned by original generators.
    std::vector<std::optional<std::array<std::string, 4>>> names;
};

// Available when every entry has length one (vertical U^0 with Alexander
// drop 1, or horizontal U^1 with Alexander drop 0).
std::optional<BoxSplitting> split_boxes(const KnotComplex& k);

KnotComplex reduce_canonical(const KnotComplex& k);

using BigradedTable = std::map<std::pair<Grading, int>, int>;
using GradedTable = std::map<Grading, int>;

struct HFKResult {
    BigradedTable full;
    std::optional<BigradedTable> reduced;  // S3 knots only
};

HFKResult hfk_hat(const KnotComplex& k);
GradedTable filtration_homology(const KnotComplex& k, int i);

struct KnotNumerics {
    int tau = 0;
    int genus = 0;
};
KnotNumerics knot_numerics(const KnotComplex& k);

// Largest |Alexander| over the generators as given.
int alexander_span(const KnotComplex& k);

struct ReducedPair {
    Grading m;
    int a = 0;
    int d = 1;
    bool operator==(const ReducedPair&) const = default;
};

struct ReducedBasisForm {
    std::vector<ReducedPair> pairs;
    bool operator==(const ReducedBasisForm&) const = default;
};

ReducedBasisForm reduced_basis_form(const KnotComplex& k);
ReducedBasisForm mirror_basis_form(const ReducedBasisForm& rb);

}  // namespace floerforge
