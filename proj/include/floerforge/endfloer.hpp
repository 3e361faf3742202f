#pragma once

#include "floerforge/whitehead.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace floerforge {

// Rank in N or infinity; infinity sorts above every natural number and
// absorbs addition and multiplication by nonzero values.
struct Rank {
    bool infinite = false;
    long long value = 0;

    static Rank inf() { return {true, 0}; }
    bool positive() const { return infinite || value > 0; }
    friend bool operator==(const Rank&, const Rank&) = default;
    friend std::strong_ordering operator<=>(const Rank& a, const Rank& b) {
        if (a.infinite || b.infinite) return a.infinite <=> b.infinite;
        return a.value <=> b.value;
    }
};
Rank operator+(const Rank& a, const Rank& b);
Rank operator*(const Rank& a, const Rank& b);
std::string to_string(const Rank& r);

enum class RankTag { exact, lower_bound };
std::string to_string(RankTag t);

struct GradedRank {
    Rank rank;
    RankTag tag = RankTag::exact;
    bool operator==(const GradedRank&) const = default;
};

struct EndFloerReport {
    std::map<Grading, GradedRank> per_grading;
    std::optional<Grading> max_grading;
    std::optional<bool> vanishes;
    std::vector<std::string> narrative;
};

// Reports agree on everything except the narrative.
bool same_invariant(const EndFloerReport& a, const EndFloerReport& b);

struct ExhaustionLevel {
    int b1 = 0;
    GradedTable module;
    std::string label;
    bool b2_zero = true;
    bool b3_zero = true;
};

// Explicit matrices act on each level's canonical basis: one vector per unit
// of rank, gradings in descending order.
struct ExhaustionSpec {
    std::vector<ExhaustionLevel> levels;
    std::vector<StepDescriptor> steps;
};

std::vector<Grading> canonical_basis(const GradedTable& module);

GradedTable normalize_level(const GradedTable& module, int b1);
Grading grading_shift(int b1_i, int b1_j);

// The levels are a finite window of the system. A rank is exact when the
// composite ranks over the last three levels agree, or when the last step is
// an isomorphism or zero; positive clasp steps are known only on the top band.
EndFloerReport colimit(const ExhaustionSpec& spec);

enum class HandleKind {
    all_positive_chain,
    all_negative_chain,
    finite_mixed_then_one_sign,
    has_infinite_positive_chain,
    has_infinite_pos_and_neg_chain,
    undetermined
};
std::string to_string(HandleKind k);
HandleKind parse_handle_kind(const std::string& text);

// finite_mixed_then_one_sign: the clasp signs of the finite prefix followed
// by the sign repeated forever (last entry).
struct CassonHandle {
    HandleKind kind = HandleKind::all_positive_chain;
    std::vector<int> signs;
    bool operator==(const CassonHandle&) const = default;
};

struct SliceR4Spec {
    KnotComplex knot;
    CassonHandle handle;
    int orientation = 1;
    std::string disk_label;
    bool operator==(const SliceR4Spec&) const = default;
};

SliceR4Spec reversed(const SliceR4Spec& spec);

// Level modules HF_red(S3_0(Wh^i K)) for i = 1..levels and the system built
// from them.
ExhaustionSpec slice_r4_system(const SliceR4Spec& spec, int levels = 3);
EndFloerReport he_slice_r4(const SliceR4Spec& spec, int levels = 3);

EndFloerReport he_end_sum(const std::vector<SliceR4Spec>& operands, int levels = 3);

struct ClosedManifold {
    HFPlusResult hf_plus;
    int b1 = 0;
    std::string name;
};

// Offset of the top reduced grading of M # Y_i # S1xS2 from n, together with
// the two dominance checks, per level of the window.
struct ProductEndData {
    std::optional<Grading> offset;
    bool dominates = false;   // top comes from the n-dependent part
    bool triangle = false;    // third module one half below, F injective on top
    std::vector<std::string> notes;
};
ProductEndData product_end_data(const ClosedManifold& m, const SliceR4Spec& r, int n, int levels = 3);
EndFloerReport he_product_end(const ClosedManifold& m, const SliceR4Spec& r, int n, int levels = 3);

struct DistinguishVerdict {
    bool distinct = false;
    std::string witness;
};
DistinguishVerdict distinguish(const std::vector<SliceR4Spec>& a, const std::vector<SliceR4Spec>& b, int levels = 3);

}  // namespace floerforge
