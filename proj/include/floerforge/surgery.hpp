#pragma once

#include "floerforge/cfk.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace floerforge {

// One A_s or B_s piece of the cone. Generator names match the knot complex;
// `shift` is added to the piece's own gradings to place it in the cone.
struct ConePiece {
    char kind = 'A';
    int s = 0;
    FreeComplex complex;
    Grading shift;
};

enum class EdgeKind { vertical, horizontal };

struct ConeEdge {
    EdgeKind kind = EdgeKind::vertical;
    int from_s = 0;  // source A_s
    int to_s = 0;    // target B_t
    std::vector<Arrow> entries;
};

struct MappingCone {
    int n = 0;
    std::vector<ConePiece> a;
    std::vector<ConePiece> b;
    std::vector<ConeEdge> edges;
    std::string anchor;
    // Total complex over the window, generators named "A<s>:x" and "B<s>:x".
    FreeComplex total;
};

// Pieces are exact free complexes over F2[U]: A_s has generator x in grading
// m(x) - 2 max(0, A(x) - s), and B is the base complex.
MappingCone build_cone(const KnotComplex& c, int n);

struct HFPlusResult {
    FUDecomposition decomposition;
    std::string spinc;
    std::vector<Grading> d_invariants;
    bool operator==(const HFPlusResult&) const;
};

// Builds the sorted d-invariant list from the towers.
HFPlusResult make_result(FUDecomposition decomposition, std::string spinc);

HFPlusResult surgery_hf(const KnotComplex& c, int n);

struct Invariants {
    GradedTable hf_red;
    std::vector<Grading> d;
};
Invariants extract_invariants(const HFPlusResult& r);

// Summand i of the source maps to summand i of the result (the +1/2 copy).
struct HandleMap {
    Grading shift{1, 2};
    std::size_t tower_count = 0;
    std::size_t torsion_count = 0;
};

struct StabilizedResult {
    HFPlusResult result;
    HandleMap map;
};
StabilizedResult one_handle_stabilize(const HFPlusResult& r);

// Plus-side unit for S3 is a single tower at 0.
HFPlusResult unit_s3();
HFPlusResult connected_sum_floer(const HFPlusResult& a, const HFPlusResult& b);

enum class MapVerdict { injective_on_top, zero, undetermined };
std::string to_string(MapVerdict v);

// Triangle M1 -F-> M2 -Phi-> M3 -Psi-> M1.
struct TriangleVerdict {
    MapVerdict f = MapVerdict::undetermined;
    MapVerdict phi = MapVerdict::undetermined;
    MapVerdict psi = MapVerdict::undetermined;
    int rank_f = 0;
    int rank_phi = 0;
    int rank_psi = 0;
};

// Shifts are the grading changes of F, Phi and Psi. Throws DomainError when
// no exact triangle with these dimensions exists.
TriangleVerdict exact_triangle_force(const std::array<GradedTable, 3>& modules,
                                     const std::array<Grading, 3>& shifts);

}  // namespace floerforge
