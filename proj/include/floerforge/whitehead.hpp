#pragma once

#include "floerforge/f2.hpp"
#include "floerforge/surgery.hpp"

#include <map>
#include <optional>
#include <utility>

namespace floerforge {

// Bigraded ranks that may go negative during evaluation.
struct FormalGradedRank {
    std::map<std::pair<Grading, int>, long long> ranks;
    bool operator==(const FormalGradedRank&) const = default;
};

// Homology of the Alexander filtration levels i in [-g, g] of the hat complex.
std::map<int, GradedTable> filtration_levels(const KnotComplex& k, int g);

// Hat knot homology of the untwisted positive double of a slice knot of
// genus g, in Alexander gradings -1, 0, 1. Throws DomainError on missing
// levels or a negative final rank.
FormalGradedRank hedden_hfk_double(const std::map<int, GradedTable>& filtration, int g);

// x plus 2d copies of B[m - 1] per reduced pair (m, A, d).
KnotComplex whitehead_double_cfk(const ReducedBasisForm& rb);

// Mirror of the positive double of the mirrored basis.
KnotComplex negative_double_cfk(const ReducedBasisForm& rb);

enum class StepKind { positive_clasp, negative_clasp, zero, iso, explicit_matrix };
std::string to_string(StepKind k);

// Columns index source basis vectors, rows target basis vectors.
struct GradedMatrix {
    std::vector<Grading> source;
    std::vector<Grading> target;
    F2Matrix entries;
};

struct StepDescriptor {
    StepKind kind = StepKind::zero;
    Grading grading_shift;
    std::optional<GradedMatrix> matrix;
};

// Explicit matrices must have matching sizes and be homogeneous of the
// declared shift.
ValidationReport validate_step(const StepDescriptor& step);

struct ClaspResult {
    StepDescriptor step;
    HFPlusResult target;
    // Source grading of the top summand on which the map is known injective.
    std::optional<Grading> injective_on;
};

// `level` must be 0-surgery on a genus-one complex x plus boxes: towers at
// 1/2 and -1/2 and length-one torsion.
ClaspResult clasp_step(int sign, const HFPlusResult& level);

}  // namespace floerforge
