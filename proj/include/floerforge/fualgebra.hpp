#pragma once

#include "floerforge/grading.hpp"

#include <map>
#include <string>
#include <vector>

namespace floerforge {

struct Generator {
    std::string name;
    Grading maslov;
    bool operator==(const Generator&) const = default;
};

// Differential entry from -> to carrying U^upower.
struct Arrow {
    std::string from;
    std::string to;
    int upower = 0;
    bool operator==(const Arrow&) const = default;
};

// Finitely generated free complex over F2[U], U of degree -2.
struct FreeComplex {
    std::vector<Generator> generators;
    std::vector<Arrow> differential;
    bool operator==(const FreeComplex&) const = default;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate_complex(const FreeComplex& c);

// Throws DomainError listing the violations.
void require_valid(const FreeComplex& c, const std::string& context);

// Generators named "left*right"; Leibniz rule with F2 coefficients.
FreeComplex tensor_complexes(const FreeComplex& a, const FreeComplex& b);

struct TorsionSummand {
    Grading top;
    int length = 0;
    bool operator==(const TorsionSummand&) const = default;
    bool operator<(const TorsionSummand& o) const { return top < o.top || (top == o.top && length < o.length); }
};

// Towers are free F2[U] summands (minus side) or T+ towers (plus side),
// recorded by their distinguished grading; torsion is F2[U]/U^length.
struct FUDecomposition {
    std::vector<Grading> towers;
    std::vector<TorsionSummand> torsion;

    // Sorts both multisets (towers ascending, torsion descending by top).
    void normalize();
    bool operator==(const FUDecomposition& other) const;
};

// Free summands at the grading of the surviving generator, torsion by the top
// grading of the cyclic summand.
FUDecomposition homology_decomposition(const FreeComplex& c);

enum class Convention { minus, plus };

// Internal minus-style homology is computed one degree below the paper's
// minus convention, so torsion already sits at plus gradings and towers move
// up by one to their bottom grading.
FUDecomposition plus_presentation(const FUDecomposition& h, Convention convention);

// Grading -> total torsion rank (each F2[U]/U^k contributes k classes).
std::map<Grading, int> torsion_rank_table(const FUDecomposition& h);

// Graded Euler characteristic: for each class of grading mod 1, the signed
// count sum of (-1)^floor(m).
std::map<Grading, long long> euler_characteristic(const FreeComplex& c);
std::map<Grading, long long> euler_characteristic(const FUDecomposition& minus_homology);

// Cyclic summands of H(C / U^N) as an F2[U]-module, found by plain F2 linear
// algebra on the truncated complex. Independent of homology_decomposition.
struct CyclicSummand {
    Grading top;
    int length = 0;
    bool operator==(const CyclicSummand&) const = default;
    bool operator<(const CyclicSummand& o) const { return top < o.top || (top == o.top && length < o.length); }
};
std::vector<CyclicSummand> truncated_summands(const FreeComplex& c, int cutoff);

// Generator count + max exponent + 1.
int truncation_cutoff(const FreeComplex& c);

// Reads free and torsion parts off a truncation: length-N summands are
// towers, shorter summands with top at or above the lowest generator grading
// are torsion. Valid when 2N - 1 exceeds the grading spread.
FUDecomposition truncated_decomposition(const FreeComplex& c, int cutoff);

}  // namespace floerforge
