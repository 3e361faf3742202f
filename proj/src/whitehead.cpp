#include "floerforge/whitehead.hpp"

#include <algorithm>

namespace floerforge {

std::map<int, GradedTable> filtration_levels(const KnotComplex& k, int g) {
    std::map<int, GradedTable> out;
    for (int i = -g; i <= g; ++i) out[i] = filtration_homology(k, i);
    return out;
}

FormalGradedRank hedden_hfk_double(const std::map<int, GradedTable>& filtration, int g) {
    if (g < 0) throw DomainError("hedden_hfk_double: negative genus");
    FormalGradedRank out;
    auto& r = out.ranks;
    r[{Grading(1), 1}] -= 2 * g + 2;
    r[{Grading(0), 0}] -= 4 * g + 3;
    r[{Grading(-1), -1}] -= 2 * g + 2;
    for (int i = -g; i <= g; ++i) {
        auto it = filtration.find(i);
        if (it == filtration.end())
            throw DomainError("hedden_hfk_double: missing filtration level " + std::to_string(i));
        for (const auto& [m, dim] : it->second) {
            r[{m + Grading(1), 1}] += 2LL * dim;
            r[{m, 0}] += 4LL * dim;
            r[{m - Grading(1), -1}] += 2LL * dim;
        }
    }
    for (const auto& [key, rank] : r)
        if (rank < 0)
            throw DomainError("hedden_hfk_double: negative rank " + std::to_string(rank) + " at (" +
                              format_grading(key.first) + ", " + std::to_string(key.second) + ")");
    std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
    return out;
}

KnotComplex whitehead_double_cfk(const ReducedBasisForm& rb) {
    if (rb.pairs.empty()) throw DomainError("whitehead_double_cfk: empty basis form (unknot)");
    std::vector<KnotComplex> parts{builtin("unknot")};
    for (std::size_t j = 0; j < rb.pairs.size(); ++j) {
        const auto& p = rb.pairs[j];
        if (p.d <= 0) throw DomainError("whitehead_double_cfk: pair length must be positive");
        for (int c = 0; c < 2 * p.d; ++c)
            parts.push_back(prefixed(box(p.m - Grading(1), 0), "P" + std::to_string(j) + "." + std::to_string(c) + "."));
    }
    return direct_sum(parts);
}

KnotComplex negative_double_cfk(const ReducedBasisForm& rb) {
    if (rb.pairs.empty()) throw DomainError("negative_double_cfk: empty basis form (unknot)");
    return mirror_knot(whitehead_double_cfk(mirror_basis_form(rb)));
}

std::string to_string(StepKind k) {
    switch (k) {
        case StepKind::positive_clasp: return "positive_clasp";
        case StepKind::negative_clasp: return "negative_clasp";
        case StepKind::zero: return "zero";
        case StepKind::iso: return "iso";
        case StepKind::explicit_matrix: return "explicit";
    }
    return "zero";
}

ValidationReport validate_step(const StepDescriptor& step) {
    ValidationReport report;
    if (step.kind != StepKind::explicit_matrix) {
        if (step.matrix) report.violations.push_back("matrix given for a non-explicit step");
        return report;
    }
    if (!step.matrix) {
        report.violations.push_back("explicit step without a matrix");
        return report;
    }
    const auto& m = *step.matrix;
    if (m.entries.rows() != m.target.size() || m.entries.cols() != m.source.size()) {
        report.violations.push_back("matrix shape does not match the graded bases");
        return report;
    }
    for (std::size_t r = 0; r < m.entries.rows(); ++r)
        for (std::size_t c = 0; c < m.entries.cols(); ++c)
            if (m.entries.get(r, c) && m.target[r] != m.source[c] + step.grading_shift)
                report.violations.push_back("entry (" + std::to_string(r) + ", " + std::to_string(c) +
                                            ") is not homogeneous of shift " + format_grading(step.grading_shift));
    return report;
}

ClaspResult clasp_step(int sign, const HFPlusResult& level) {
    if (sign != 1 && sign != -1) throw DomainError("clasp_step: sign must be +1 or -1");
    auto towers = level.decomposition.towers;
    std::sort(towers.begin(), towers.end());
    if (towers != std::vector<Grading>{halves(-1), halves(1)})
        throw DomainError("clasp_step: level must have towers at -1/2 and 1/2");
    for (const auto& t : level.decomposition.torsion)
        if (t.length != 1) throw DomainError("clasp_step: level torsion must have length one");

    // Reduced part tensored with two copies of F(0) + F(-1), or F(1) + F(0)
    // for the negative clasp.
    const Grading upper = sign > 0 ? Grading(0) : Grading(1);
    FUDecomposition target{towers, {}};
    for (const auto& t : level.decomposition.torsion)
        for (int copy = 0; copy < 2; ++copy) {
            target.torsion.push_back({t.top + upper, 1});
            target.torsion.push_back({t.top + upper - Grading(1), 1});
        }

    ClaspResult out;
    out.target = make_result(target, level.spinc);
    out.step.grading_shift = Grading(0);
    if (sign > 0) {
        out.step.kind = StepKind::positive_clasp;
        auto top = std::max_element(level.decomposition.torsion.begin(), level.decomposition.torsion.end());
        if (top != level.decomposition.torsion.end()) out.injective_on = top->top;
    } else {
        out.step.kind = StepKind::zero;
    }
    return out;
}

}  // namespace floerforge
