#include "floerforge/endfloer.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace floerforge {

Rank operator+(const Rank& a, const Rank& b) {
    if (a.infinite || b.infinite) return Rank::inf();
    return {false, a.value + b.value};
}

Rank operator*(const Rank& a, const Rank& b) {
    if (!a.positive() || !b.positive()) return {};
    if (a.infinite || b.infinite) return Rank::inf();
    return {false, a.value * b.value};
}

std::string to_string(const Rank& r) { return r.infinite ? "inf" : std::to_string(r.value); }

std::string to_string(RankTag t) { return t == RankTag::exact ? "exact" : "lower_bound"; }

bool same_invariant(const EndFloerReport& a, const EndFloerReport& b) {
    return a.per_grading == b.per_grading && a.max_grading == b.max_grading && a.vanishes == b.vanishes;
}

std::vector<Grading> canonical_basis(const GradedTable& module) {
    std::vector<Grading> basis;
    for (auto it = module.rbegin(); it != module.rend(); ++it)
        for (int i = 0; i < it->second; ++i) basis.push_back(it->first);
    return basis;
}

GradedTable normalize_level(const GradedTable& module, int b1) {
    GradedTable out;
    for (const auto& [g, r] : module)
        if (r != 0) out[g - halves(b1)] = r;
    return out;
}

Grading grading_shift(int b1_i, int b1_j) { return halves(b1_j - b1_i); }

// ---------------------------------------------------------------------------
// Colimits

namespace {

bool is_zero_kind(StepKind k) { return k == StepKind::zero || k == StepKind::negative_clasp; }

F2Matrix step_matrix(const StepDescriptor& step, std::size_t rows, std::size_t cols) {
    if (step.kind == StepKind::explicit_matrix) return step.matrix->entries;
    if (step.kind == StepKind::iso) return F2Matrix::identity(rows);
    return F2Matrix(rows, cols);
}

// Rank of the block of m between source and target vectors of grading g.
std::size_t block_rank(const F2Matrix& m, const std::vector<Grading>& src, const std::vector<Grading>& dst,
                       const Grading& g) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t r = 0; r < dst.size(); ++r)
        if (dst[r] == g) rows.push_back(r);
    for (std::size_t c = 0; c < src.size(); ++c)
        if (src[c] == g) cols.push_back(c);
    F2Matrix block(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) block.set(i, j, m.get(rows[i], cols[j]));
    return block.rank();
}

void finish(EndFloerReport& report, const std::set<Grading>& undetermined) {
    bool any_positive = false, any_lower = false;
    for (const auto& [g, r] : report.per_grading) {
        if (r.rank.positive()) any_positive = true;
        if (r.tag == RankTag::lower_bound) any_lower = true;
    }
    if (any_positive) report.vanishes = false;
    else if (!any_lower && undetermined.empty()) report.vanishes = true;
    if (report.vanishes == true) {
        report.per_grading.clear();
        return;
    }
    for (auto it = report.per_grading.rbegin(); it != report.per_grading.rend(); ++it) {
        if (it->second.tag == RankTag::lower_bound && !it->second.rank.positive()) break;
        if (!undetermined.empty() && *undetermined.rbegin() > it->first) break;
        if (it->second.rank.positive()) {
            report.max_grading = it->first;
            break;
        }
    }
    for (const auto& g : undetermined) report.narrative.push_back("rank undetermined in grading " + format_grading(g));
}

void validate_system(const ExhaustionSpec& spec) {
    if (spec.levels.empty()) throw DomainError("colimit: no levels");
    if (spec.steps.size() + 1 != spec.levels.size())
        throw DomainError("colimit: expected " + std::to_string(spec.levels.size() - 1) + " steps, got " +
                          std::to_string(spec.steps.size()));
    for (const auto& level : spec.levels) {
        if (level.b1 < 0) throw DomainError("colimit: negative b1 at level " + level.label);
        if (!level.b2_zero || !level.b3_zero) throw DomainError("colimit: level " + level.label + " is not grading admissible");
        for (const auto& [g, r] : level.module)
            if (r < 0) throw DomainError("colimit: negative rank at level " + level.label);
    }
    for (std::size_t i = 0; i < spec.steps.size(); ++i) {
        const auto& step = spec.steps[i];
        const auto& from = spec.levels[i];
        const auto& to = spec.levels[i + 1];
        Grading expected = grading_shift(from.b1, to.b1);
        if (step.grading_shift != expected)
            throw DomainError("colimit: step " + std::to_string(i) + " has shift " + format_grading(step.grading_shift) +
                              ", expected " + format_grading(expected));
        auto report = validate_step(step);
        if (!report.ok()) throw DomainError("colimit: step " + std::to_string(i) + ": " + report.violations.front());
        if (step.kind == StepKind::explicit_matrix) {
            if (step.matrix->source != canonical_basis(from.module) || step.matrix->target != canonical_basis(to.module))
                throw DomainError("colimit: step " + std::to_string(i) + " matrix does not use the canonical bases");
        }
        if (step.kind == StepKind::iso && normalize_level(from.module, from.b1) != normalize_level(to.module, to.b1))
            throw DomainError("colimit: iso step " + std::to_string(i) + " between non-isomorphic levels");
    }
}

Grading top_of(const GradedTable& t) {
    for (auto it = t.rbegin(); it != t.rend(); ++it)
        if (it->second > 0) return it->first;
    throw DomainError("empty module");
}

EndFloerReport top_band_colimit(const std::vector<GradedTable>& tail, std::size_t steps) {
    EndFloerReport report;
    std::set<Grading> undetermined;
    std::set<Grading> gradings;
    for (const auto& t : tail)
        for (const auto& [g, r] : t)
            if (r > 0) gradings.insert(g);
    if (gradings.empty()) {
        report.narrative.push_back("positive clasp steps between empty levels");
        finish(report, undetermined);
        return report;
    }
    bool same_top = true;
    for (const auto& t : tail)
        if (t.empty() || top_of(t) != top_of(tail.back())) same_top = false;
    if (!same_top) {
        report.narrative.push_back("top band moves along the tail; positive clasp maps are known only on the top band");
        for (const auto& g : gradings) report.per_grading[g] = {Rank{}, RankTag::lower_bound};
        finish(report, undetermined);
        return report;
    }
    Grading top = top_of(tail.back());
    std::vector<int> ranks;
    for (const auto& t : tail) ranks.push_back(t.at(top));
    for (std::size_t i = 1; i < ranks.size(); ++i)
        if (ranks[i] < ranks[i - 1]) throw DomainError("colimit: positive clasp step cannot be injective on the top band");
    bool strictly = true, constant = true;
    for (std::size_t i = 1; i < ranks.size(); ++i) {
        if (ranks[i] <= ranks[i - 1]) strictly = false;
        if (ranks[i] != ranks[i - 1]) constant = false;
    }
    for (const auto& g : gradings)
        if (g < top) report.per_grading[g] = {Rank{}, RankTag::lower_bound};
    if (steps >= 2 && strictly) {
        report.per_grading[top] = {Rank::inf(), RankTag::exact};
        report.narrative.push_back("top band " + format_grading(top) + " grows under maps injective on it");
    } else if (steps >= 2 && constant) {
        report.per_grading[top] = {Rank{false, ranks.back()}, RankTag::exact};
        report.narrative.push_back("top band " + format_grading(top) + " is carried isomorphically");
    } else {
        report.per_grading[top] = {Rank{false, ranks.back()}, RankTag::lower_bound};
        report.narrative.push_back("window too short to fix the top band rank");
    }
    finish(report, undetermined);
    return report;
}

}  // namespace

EndFloerReport colimit(const ExhaustionSpec& spec) {
    validate_system(spec);
    const std::size_t n = spec.levels.size();
    const std::size_t tail_start = n >= 3 ? n - 3 : 0;

    std::vector<GradedTable> normalized;
    for (const auto& level : spec.levels) normalized.push_back(normalize_level(level.module, level.b1));
    std::vector<StepDescriptor> tail_steps(spec.steps.begin() + static_cast<long>(tail_start), spec.steps.end());

    bool any_clasp = std::any_of(tail_steps.begin(), tail_steps.end(),
                                 [](const StepDescriptor& s) { return s.kind == StepKind::positive_clasp; });
    if (any_clasp) {
        bool supported = std::all_of(tail_steps.begin(), tail_steps.end(), [](const StepDescriptor& s) {
            return s.kind == StepKind::positive_clasp || s.kind == StepKind::iso;
        });
        if (!supported) {
            EndFloerReport report;
            report.narrative.push_back("positive clasp steps mixed with other steps on the tail");
            return report;
        }
        std::vector<GradedTable> tail(normalized.begin() + static_cast<long>(tail_start), normalized.end());
        return top_band_colimit(tail, tail_steps.size());
    }

    // Composite matrices between tail levels, in normalized gradings.
    std::vector<std::vector<Grading>> basis;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Grading> b;
        for (const auto& g : canonical_basis(spec.levels[i].module)) b.push_back(g - halves(spec.levels[i].b1));
        basis.push_back(b);
    }
    auto composite = [&](std::size_t i, std::size_t j) {
        F2Matrix m = F2Matrix::identity(basis[i].size());
        for (std::size_t k = i; k < j; ++k) m = step_matrix(spec.steps[k], basis[k + 1].size(), basis[k].size()) * m;
        return m;
    };

    EndFloerReport report;
    std::set<Grading> undetermined;
    std::set<Grading> gradings;
    for (std::size_t i = tail_start; i < n; ++i)
        for (const auto& [g, r] : normalized[i])
            if (r > 0) gradings.insert(g);

    if (n == 1) {
        for (const auto& [g, r] : normalized[0])
            if (r > 0) report.per_grading[g] = {Rank{false, r}, RankTag::exact};
        finish(report, undetermined);
        return report;
    }
    bool structural = std::all_of(tail_steps.begin(), tail_steps.end(), [](const StepDescriptor& s) {
        return s.kind == StepKind::iso || is_zero_kind(s.kind);
    });
    bool last_structural = spec.steps.back().kind == StepKind::iso || is_zero_kind(spec.steps.back().kind);
    for (const auto& g : gradings) {
        std::vector<std::size_t> ranks;
        for (std::size_t i = tail_start; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) ranks.push_back(block_rank(composite(i, j), basis[i], basis[j], g));
        std::size_t last = block_rank(composite(n - 2, n - 1), basis[n - 2], basis[n - 1], g);
        bool stable = std::all_of(ranks.begin(), ranks.end(), [&](std::size_t r) { return r == ranks.front(); });
        if ((n >= 3 && stable) || structural || (last_structural && is_zero_kind(spec.steps.back().kind))) {
            if (last > 0) report.per_grading[g] = {Rank{false, static_cast<long long>(last)}, RankTag::exact};
        } else {
            undetermined.insert(g);
        }
    }
    finish(report, undetermined);
    return report;
}

// ---------------------------------------------------------------------------
// Slice R4 systems

std::string to_string(HandleKind k) {
    switch (k) {
        case HandleKind::all_positive_chain: return "all_positive_chain";
        case HandleKind::all_negative_chain: return "all_negative_chain";
        case HandleKind::finite_mixed_then_one_sign: return "finite_mixed_then_one_sign";
        case HandleKind::has_infinite_positive_chain: return "has_infinite_positive_chain";
        case HandleKind::has_infinite_pos_and_neg_chain: return "has_infinite_pos_and_neg_chain";
        case HandleKind::undetermined: return "undetermined";
    }
    return "undetermined";
}

HandleKind parse_handle_kind(const std::string& text) {
    if (text == "all_positive_chain" || text == "ch+") return HandleKind::all_positive_chain;
    if (text == "all_negative_chain" || text == "ch-") return HandleKind::all_negative_chain;
    if (text == "finite_mixed_then_one_sign") return HandleKind::finite_mixed_then_one_sign;
    if (text == "has_infinite_positive_chain") return HandleKind::has_infinite_positive_chain;
    if (text == "has_infinite_pos_and_neg_chain") return HandleKind::has_infinite_pos_and_neg_chain;
    if (text == "undetermined") return HandleKind::undetermined;
    throw DomainError("unknown Casson handle kind '" + text + "'");
}

SliceR4Spec reversed(const SliceR4Spec& spec) {
    SliceR4Spec out = spec;
    out.orientation = -spec.orientation;
    return out;
}

namespace {

enum class PlanKind { standard, chain, nonvanishing, undetermined };

struct Plan {
    PlanKind kind = PlanKind::undetermined;
    int sign = 1;
    KnotComplex knot;  // knot whose doubles give the levels
    std::string note;
};

bool is_box_sum(const KnotComplex& k) {
    auto split = split_boxes(k);
    if (!split || split->boxes.empty()) return false;
    const auto& rem = split->remainder;
    if (rem.base.generators.size() != 1) return false;
    if (rem.base.generators[0].maslov != 0 || rem.alexander.begin()->second != 0) return false;
    return std::all_of(split->boxes.begin(), split->boxes.end(), [](const BoxSpec& b) { return b.j == 0; });
}

KnotComplex double_of(const KnotComplex& k, int sign) {
    auto rb = reduced_basis_form(k);
    return sign > 0 ? whitehead_double_cfk(rb) : negative_double_cfk(rb);
}

Plan plan_for(const SliceR4Spec& spec) {
    if (spec.orientation != 1 && spec.orientation != -1) throw DomainError("orientation must be +1 or -1");
    const auto& h = spec.handle;
    for (int s : h.signs)
        if (s != 1 && s != -1) throw DomainError("clasp signs must be +1 or -1");
    if (h.kind == HandleKind::finite_mixed_then_one_sign && h.signs.empty())
        throw DomainError("finite_mixed_then_one_sign needs at least one sign");

    bool flip = spec.orientation < 0;
    Plan plan;
    plan.knot = flip ? mirror_knot(spec.knot) : spec.knot;
    if (reduced_basis_form(plan.knot).pairs.empty()) {
        plan.kind = PlanKind::standard;
        plan.note = "unknotted disk: the standard R4";
        return plan;
    }
    int orient = flip ? -1 : 1;
    switch (h.kind) {
        case HandleKind::all_positive_chain:
        case HandleKind::all_negative_chain:
            plan.kind = PlanKind::chain;
            plan.sign = (h.kind == HandleKind::all_positive_chain ? 1 : -1) * orient;
            return plan;
        case HandleKind::finite_mixed_then_one_sign:
            for (std::size_t i = 0; i + 1 < h.signs.size(); ++i) plan.knot = double_of(plan.knot, h.signs[i] * orient);
            plan.kind = PlanKind::chain;
            plan.sign = h.signs.back() * orient;
            return plan;
        case HandleKind::has_infinite_positive_chain:
            if (flip) {
                plan.note = "reversed orientation leaves only an infinite negative chain";
                return plan;
            }
            [[fallthrough]];
        case HandleKind::has_infinite_pos_and_neg_chain:
            if (!is_box_sum(plan.knot)) {
                plan.note = "knot is not of the form x plus boxes";
                return plan;
            }
            plan.kind = PlanKind::nonvanishing;
            plan.note = "a positive chain with injective top-band maps survives";
            return plan;
        case HandleKind::undetermined:
            plan.note = "handle not covered by the clasp-sign taxonomy";
            return plan;
    }
    return plan;
}

std::vector<HFPlusResult> chain_levels(const Plan& plan, int levels) {
    if (levels < 1) throw DomainError("need at least one level");
    std::vector<HFPlusResult> out{surgery_hf(double_of(plan.knot, plan.sign), 0)};
    while (static_cast<int>(out.size()) < levels) out.push_back(clasp_step(plan.sign, out.back()).target);
    return out;
}

ExhaustionSpec system_from(const std::vector<HFPlusResult>& results, int b1, int sign, const std::string& prefix) {
    ExhaustionSpec spec;
    for (std::size_t i = 0; i < results.size(); ++i)
        spec.levels.push_back({b1, extract_invariants(results[i]).hf_red, prefix + std::to_string(i + 1)});
    for (std::size_t i = 0; i + 1 < results.size(); ++i) {
        StepDescriptor step;
        step.kind = sign > 0 ? StepKind::positive_clasp : StepKind::zero;
        step.grading_shift = Grading(0);
        spec.steps.push_back(step);
    }
    return spec;
}

EndFloerReport vanishing(const std::string& note) {
    EndFloerReport r;
    r.vanishes = true;
    r.narrative.push_back(note);
    return r;
}

EndFloerReport unknown(const std::string& note) {
    EndFloerReport r;
    r.narrative.push_back(note);
    return r;
}

std::optional<Grading> top_grading(const GradedTable& t) {
    for (auto it = t.rbegin(); it != t.rend(); ++it)
        if (it->second > 0) return it->first;
    return std::nullopt;
}

}  // namespace

ExhaustionSpec slice_r4_system(const SliceR4Spec& spec, int levels) {
    Plan plan = plan_for(spec);
    if (plan.kind != PlanKind::chain) throw DomainError("slice_r4_system: no level system (" + plan.note + ")");
    return system_from(chain_levels(plan, levels), 1, plan.sign, "S3_0(Wh^");
}

EndFloerReport he_slice_r4(const SliceR4Spec& spec, int levels) {
    Plan plan = plan_for(spec);
    switch (plan.kind) {
        case PlanKind::standard: return vanishing(plan.note);
        case PlanKind::undetermined: return unknown(plan.note);
        case PlanKind::nonvanishing: {
            EndFloerReport r;
            r.vanishes = false;
            r.narrative.push_back(plan.note);
            return r;
        }
        case PlanKind::chain: break;
    }
    auto report = colimit(system_from(chain_levels(plan, levels), 1, plan.sign, "S3_0(Wh^"));
    report.narrative.insert(report.narrative.begin(), plan.sign > 0 ? "levels S3_0(Wh^i K), positive clasps"
                                                                    : "levels S3_0(Wh^i K), every map zero");
    return report;
}

EndFloerReport he_end_sum(const std::vector<SliceR4Spec>& operands, int levels) {
    if (operands.empty()) throw DomainError("he_end_sum: no operands");
    if (operands.size() == 1) return he_slice_r4(operands.front(), levels);
    std::vector<Plan> plans;
    for (const auto& op : operands) plans.push_back(plan_for(op));
    for (const auto& p : plans)
        if (p.kind == PlanKind::chain && p.sign < 0)
            return vanishing("a summand with negative clasps makes every map of the sum zero");
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < plans.size(); ++i)
        if (plans[i].kind != PlanKind::standard) kept.push_back(i);
    if (kept.empty()) return vanishing("every summand is the standard R4");
    if (kept.size() == 1) return he_slice_r4(operands[kept.front()], levels);
    for (auto i : kept)
        if (plans[i].kind != PlanKind::chain) return unknown("summand " + std::to_string(i) + " has no level table");

    std::vector<std::vector<HFPlusResult>> factors;
    for (auto i : kept) factors.push_back(chain_levels(plans[i], levels));
    std::vector<HFPlusResult> sums;
    for (int l = 0; l < levels; ++l) {
        HFPlusResult acc = factors.front()[l];
        long long product = extract_invariants(acc).hf_red.rbegin()->second;
        for (std::size_t f = 1; f < factors.size(); ++f) {
            acc = connected_sum_floer(acc, factors[f][l]);
            product *= extract_invariants(factors[f][l]).hf_red.rbegin()->second;
        }
        auto red = extract_invariants(acc).hf_red;
        if (red.empty() || red.rbegin()->second != product)
            return unknown("top band of the sum is not the product of the summands' top bands");
        sums.push_back(acc);
    }
    auto report = colimit(system_from(sums, static_cast<int>(kept.size()), 1, "sum level "));
    report.narrative.insert(report.narrative.begin(), "Kunneth product of the summands' levels");
    return report;
}

ProductEndData product_end_data(const ClosedManifold& m, const SliceR4Spec& r, int n, int levels) {
    Plan plan = plan_for(r);
    if (plan.kind != PlanKind::chain || plan.sign < 0)
        throw DomainError("he_product_end: the slice R4 must use positive clasps");
    if (levels < 2) throw DomainError("he_product_end: need at least two levels");
    auto ys = chain_levels(plan, levels);
    auto s1s2 = make_result({{halves(1), halves(-1)}, {}}, "torsion");
    FUDecomposition m_red{{}, m.hf_plus.decomposition.torsion};
    auto m_torsion = make_result(m_red, m.hf_plus.spinc);

    ProductEndData data;
    data.dominates = true;
    data.triangle = true;
    KnotComplex first_knot = double_of(plan.knot, plan.sign);
    for (int i = 0; i + 1 < levels; ++i) {
        auto y_s = connected_sum_floer(ys[i], s1s2);
        auto mod1 = extract_invariants(connected_sum_floer(m.hf_plus, y_s)).hf_red;
        auto mod2 = extract_invariants(connected_sum_floer(m.hf_plus, ys[i + 1])).hf_red;
        HFPlusResult z = i == 0 ? surgery_hf(connected_sum_knots(builtin("J_in_Y"), first_knot), -1)
                                : clasp_step(1, ys[i]).target;
        auto mod3 = extract_invariants(connected_sum_floer(m.hf_plus, z)).hf_red;
        std::string lvl = "level " + std::to_string(i + 1) + ": ";

        auto top1 = top_grading(mod1);
        if (!top1) {
            data.notes.push_back(lvl + "first module is empty");
            data.dominates = false;
            continue;
        }
        Grading offset = *top1 - Grading(n);
        if (data.offset && *data.offset != offset) data.notes.push_back(lvl + "offset changes along the window");
        if (!data.offset) data.offset = offset;

        FUDecomposition towers_only{y_s.decomposition.towers, {}};
        auto fixed = extract_invariants(connected_sum_floer(m_torsion, make_result(towers_only, y_s.spinc))).hf_red;
        auto fixed_top = top_grading(fixed);
        if (fixed_top && !(*top1 > *fixed_top)) {
            data.dominates = false;
            data.notes.push_back(lvl + "top " + format_grading(*top1) + " does not exceed the n-independent top " +
                                 format_grading(*fixed_top));
        }

        auto top3 = top_grading(mod3);
        if (!top3 || *top3 != *top1 - halves(1)) {
            data.triangle = false;
            data.notes.push_back(lvl + "third module top is not one half below the first");
            continue;
        }
        try {
            auto v = exact_triangle_force({mod1, mod2, mod3}, {halves(-1), Grading(0), halves(-1)});
            if (v.f != MapVerdict::injective_on_top) {
                data.triangle = false;
                data.notes.push_back(lvl + "triangle does not force F injective on top");
            }
        } catch (const DomainError& e) {
            data.triangle = false;
            data.notes.push_back(lvl + e.what());
        }
    }
    return data;
}

EndFloerReport he_product_end(const ClosedManifold& m, const SliceR4Spec& r, int n, int levels) {
    auto data = product_end_data(m, r, n, levels);
    if (!data.offset || !data.dominates || !data.triangle) {
        EndFloerReport report = unknown(std::string("dominance condition failed: ") +
                                        (!data.dominates ? "top of M # Y_i # S1xS2 is not n-dependent"
                                                         : "triangle does not force injectivity on top"));
        report.narrative.insert(report.narrative.end(), data.notes.begin(), data.notes.end());
        return report;
    }
    Plan plan = plan_for(r);
    auto ys = chain_levels(plan, levels);
    std::vector<HFPlusResult> sums;
    for (const auto& y : ys) sums.push_back(connected_sum_floer(m.hf_plus, y));
    auto report = colimit(system_from(sums, m.b1 + 1, 1, m.name + " # level "));
    report.narrative.insert(report.narrative.begin(), "f(" + m.name + ") = " + format_grading(*data.offset));
    Grading predicted = Grading(n) + *data.offset - Grading(1) - halves(m.b1);
    if (report.max_grading && *report.max_grading != predicted) {
        report.narrative.push_back("top grading " + format_grading(*report.max_grading) + " differs from n + f - 1 - b1/2 = " +
                                   format_grading(predicted));
        report.max_grading.reset();
    }
    return report;
}

namespace {

struct Signature {
    std::optional<bool> vanishes;
    std::optional<Grading> max;
    std::optional<Rank> top_rank;
};

Signature signature_of(const EndFloerReport& r) {
    Signature s{r.vanishes, r.max_grading, std::nullopt};
    if (r.max_grading) {
        const auto& e = r.per_grading.at(*r.max_grading);
        if (e.tag == RankTag::exact) s.top_rank = e.rank;
    }
    return s;
}

std::string describe(const Signature& s) {
    if (s.vanishes == true) return "vanishes";
    if (!s.max) return s.vanishes == false ? "nonvanishing, top unknown" : "undetermined";
    return "top grading " + format_grading(*s.max) + (s.top_rank ? " rank " + to_string(*s.top_rank) : "");
}

// Empty when no determined component differs.
std::string difference(const Signature& a, const Signature& b) {
    if (a.vanishes && b.vanishes && *a.vanishes != *b.vanishes) return describe(a) + " vs " + describe(b);
    if (a.max && b.max && *a.max != *b.max) return describe(a) + " vs " + describe(b);
    if (a.max && b.max && a.top_rank && b.top_rank && *a.top_rank != *b.top_rank) return describe(a) + " vs " + describe(b);
    return {};
}

std::vector<SliceR4Spec> reversed_all(const std::vector<SliceR4Spec>& ops) {
    std::vector<SliceR4Spec> out;
    for (const auto& op : ops) out.push_back(reversed(op));
    return out;
}

}  // namespace

DistinguishVerdict distinguish(const std::vector<SliceR4Spec>& a, const std::vector<SliceR4Spec>& b, int levels) {
    auto ap = signature_of(he_end_sum(a, levels));
    auto am = signature_of(he_end_sum(reversed_all(a), levels));
    auto bp = signature_of(he_end_sum(b, levels));
    auto bm = signature_of(he_end_sum(reversed_all(b), levels));

    auto preserving = difference(ap, bp);
    if (preserving.empty()) preserving = difference(am, bm);
    auto reversing = difference(ap, bm);
    if (reversing.empty()) reversing = difference(am, bp);
    if (preserving.empty() || reversing.empty()) return {false, "indistinguishable by this invariant"};
    return {true, "orientation preserving: " + preserving + "; orientation reversing: " + reversing};
}

}  // namespace floerforge
