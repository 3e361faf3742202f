#include "floerforge/surgery.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

namespace floerforge {

namespace {

struct Window {
    int a_lo, a_hi, b_lo, b_hi;
};

Window window_for(int span, int n) {
    int b = std::max(span - 1, 0);
    if (n == 0) return {0, 0, 0, 0};
    if (n < 0) return {-b, b, -b - 1, b};
    return {-b, b, -b + 1, b};
}

// Plus-side grading offsets of A_s and B_s so that both edge maps lower the
// cone grading by one.
struct Offsets {
    std::map<int, Grading> a, b;
};

Offsets offsets_for(int n, const Window& w) {
    Offsets o;
    if (n == 0) {
        o.a[0] = Grading(1, 2);
        o.b[0] = Grading(-1, 2);
    } else if (n < 0) {
        o.b[0] = Grading(0);
        for (int s = 0; s > w.b_lo; --s) o.b[s - 1] = o.b[s] + Grading(2 * s);
        for (int s = 1; s <= w.b_hi; ++s) o.b[s] = o.b[s - 1] - Grading(2 * s);
        for (int s = w.a_lo; s <= w.a_hi; ++s) o.a[s] = o.b[s] + Grading(1);
    } else {
        o.a[0] = Grading(0);
        for (int s = 0; s < w.a_hi; ++s) o.a[s + 1] = o.a[s] + Grading(2 * s);
        for (int s = 0; s > w.a_lo; --s) o.a[s - 1] = o.a[s] - Grading(2 * (s - 1));
        for (int s = w.b_lo; s <= w.b_hi; ++s) o.b[s] = o.a[s] - Grading(1);
    }
    return o;
}

int excess(int a, int s) { return std::max(0, a - s); }

FreeComplex a_piece(const KnotComplex& c, int s) {
    FreeComplex out;
    for (const auto& g : c.base.generators)
        out.generators.push_back({g.name, g.maslov - Grading(2 * excess(c.alexander.at(g.name), s))});
    for (const auto& e : c.base.differential) {
        int p = e.upower + excess(c.alexander.at(e.from), s) - excess(c.alexander.at(e.to), s);
        out.differential.push_back({e.from, e.to, p});
    }
    return out;
}

std::string a_name(int s, const std::string& x) { return "A" + std::to_string(s) + ":" + x; }
std::string b_name(int s, const std::string& x) { return "B" + std::to_string(s) + ":" + x; }

}  // namespace

MappingCone build_cone(const KnotComplex& c, int n) {
    require_valid_knot(c, "build_cone");
    if (!c.flip) throw DomainError("build_cone: complex has no flip involution");
    if (std::abs(n) > 1) throw DomainError("build_cone: absolute gradings are available only for n in {-1, 0, 1}");

    MappingCone cone;
    cone.n = n;
    cone.anchor = n == 0 ? "B0 shifted down by 1/2" : n < 0 ? "B0 inherited" : "A0 calibrated to the unknot";
    Window w = window_for(alexander_span(c), n);
    Offsets off = offsets_for(n, w);
    for (int s = w.a_lo; s <= w.a_hi; ++s) cone.a.push_back({'A', s, a_piece(c, s), off.a.at(s)});
    for (int s = w.b_lo; s <= w.b_hi; ++s) cone.b.push_back({'B', s, c.base, off.b.at(s)});

    auto iota = flip_map(c);
    for (int s = w.a_lo; s <= w.a_hi; ++s) {
        if (s >= w.b_lo && s <= w.b_hi) {
            ConeEdge v{EdgeKind::vertical, s, s, {}};
            for (const auto& g : c.base.generators)
                v.entries.push_back({g.name, g.name, excess(c.alexander.at(g.name), s)});
            cone.edges.push_back(std::move(v));
        }
        int t = s + n;
        if (t >= w.b_lo && t <= w.b_hi) {
            ConeEdge h{EdgeKind::horizontal, s, t, {}};
            for (const auto& g : c.base.generators)
                h.entries.push_back({g.name, iota.at(g.name), std::max(0, s - c.alexander.at(g.name))});
            cone.edges.push_back(std::move(h));
        }
    }

    FreeComplex& total = cone.total;
    const Grading one(1);
    for (const auto& piece : cone.a) {
        for (const auto& g : piece.complex.generators)
            total.generators.push_back({a_name(piece.s, g.name), g.maslov + piece.shift - one});
        for (const auto& e : piece.complex.differential)
            total.differential.push_back({a_name(piece.s, e.from), a_name(piece.s, e.to), e.upower});
    }
    for (const auto& piece : cone.b) {
        for (const auto& g : piece.complex.generators)
            total.generators.push_back({b_name(piece.s, g.name), g.maslov + piece.shift - one});
        for (const auto& e : piece.complex.differential)
            total.differential.push_back({b_name(piece.s, e.from), b_name(piece.s, e.to), e.upower});
    }
    // Coinciding vertical and horizontal entries cancel mod 2.
    std::map<std::pair<std::string, std::string>, std::pair<int, int>> edge_terms;
    for (const auto& edge : cone.edges)
        for (const auto& e : edge.entries) {
            auto& slot = edge_terms[{a_name(edge.from_s, e.from), b_name(edge.to_s, e.to)}];
            slot.first = e.upower;
            slot.second ^= 1;
        }
    for (const auto& [key, term] : edge_terms)
        if (term.second) total.differential.push_back({key.first, key.second, term.first});
    require_valid(total, "build_cone total complex");
    return cone;
}

bool HFPlusResult::operator==(const HFPlusResult& o) const {
    return decomposition == o.decomposition && spinc == o.spinc && d_invariants == o.d_invariants;
}

HFPlusResult make_result(FUDecomposition decomposition, std::string spinc) {
    decomposition.normalize();
    HFPlusResult r{decomposition, std::move(spinc), decomposition.towers};
    std::sort(r.d_invariants.begin(), r.d_invariants.end());
    return r;
}

HFPlusResult surgery_hf(const KnotComplex& c, int n) {
    MappingCone cone = build_cone(c, n);
    auto h = plus_presentation(homology_decomposition(cone.total), Convention::minus);
    return make_result(h, n == 0 ? "torsion" : "[s0]-sum");
}

Invariants extract_invariants(const HFPlusResult& r) {
    Invariants inv{torsion_rank_table(r.decomposition), r.decomposition.towers};
    std::sort(inv.d.begin(), inv.d.end());
    return inv;
}

StabilizedResult one_handle_stabilize(const HFPlusResult& r) {
    const Grading half(1, 2);
    StabilizedResult out;
    auto& d = out.result.decomposition;
    for (const auto& t : r.decomposition.towers) d.towers.push_back(t + half);
    for (const auto& t : r.decomposition.towers) d.towers.push_back(t - half);
    for (const auto& t : r.decomposition.torsion) d.torsion.push_back({t.top + half, t.length});
    for (const auto& t : r.decomposition.torsion) d.torsion.push_back({t.top - half, t.length});
    out.result.spinc = r.spinc;
    out.result.d_invariants = d.towers;
    std::sort(out.result.d_invariants.begin(), out.result.d_invariants.end());
    out.map.tower_count = r.decomposition.towers.size();
    out.map.torsion_count = r.decomposition.torsion.size();
    return out;
}

HFPlusResult unit_s3() { return make_result({{Grading(0)}, {}}, "torsion"); }

namespace {

// Tower T(d) becomes a free generator one below d; torsion (g, k) becomes
// x in grading g and y with dy = U^k x.
FreeComplex encode(const FUDecomposition& h) {
    FreeComplex c;
    int i = 0;
    for (const auto& t : h.towers) c.generators.push_back({"t" + std::to_string(i++), t - Grading(1)});
    i = 0;
    for (const auto& t : h.torsion) {
        std::string x = "x" + std::to_string(i), y = "y" + std::to_string(i);
        c.generators.push_back({x, t.top});
        c.generators.push_back({y, t.top - Grading(2 * t.length - 1)});
        c.differential.push_back({y, x, t.length});
        ++i;
    }
    return c;
}

// Sorted distinct '#'-separated parts of both labels.
std::string combined_label(const std::string& a, const std::string& b) {
    std::set<std::string> parts;
    for (const auto& label : {a, b}) {
        std::size_t start = 0;
        while (start <= label.size()) {
            auto end = label.find('#', start);
            if (end == std::string::npos) end = label.size();
            if (end > start) parts.insert(label.substr(start, end - start));
            start = end + 1;
        }
    }
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : "#") + p;
    return out;
}

}  // namespace

HFPlusResult connected_sum_floer(const HFPlusResult& a, const HFPlusResult& b) {
    // The tensor complex splits over pairs of summands; each pair is computed
    // once at grading zero and translated.
    using Summand = std::pair<bool, int>;  // (tower, length)
    auto split = [](const FUDecomposition& d) {
        std::vector<std::pair<Summand, Grading>> out;
        for (const auto& t : d.towers) out.push_back({{true, 0}, t});
        for (const auto& t : d.torsion) out.push_back({{false, t.length}, t.top});
        return out;
    };
    auto single = [](const Summand& s) {
        FUDecomposition d;
        if (s.first) d.towers.push_back(Grading(0));
        else d.torsion.push_back({Grading(0), s.second});
        return d;
    };
    std::map<std::pair<Summand, Summand>, FUDecomposition> cache;
    FUDecomposition total;
    for (const auto& [sa, ga] : split(a.decomposition))
        for (const auto& [sb, gb] : split(b.decomposition)) {
            auto key = std::pair{sa, sb};
            auto it = cache.find(key);
            if (it == cache.end()) {
                FreeComplex t = tensor_complexes(encode(single(sa)), encode(single(sb)));
                for (auto& g : t.generators) g.maslov = g.maslov + Grading(1);
                it = cache.emplace(key, plus_presentation(homology_decomposition(t), Convention::minus)).first;
            }
            const Grading shift = ga + gb;
            for (const auto& t : it->second.towers) total.towers.push_back(t + shift);
            for (const auto& t : it->second.torsion) total.torsion.push_back({t.top + shift, t.length});
        }
    total.normalize();
    return make_result(total, combined_label(a.spinc, b.spinc));
}

std::string to_string(MapVerdict v) {
    switch (v) {
        case MapVerdict::injective_on_top: return "forced-injective-on-top";
        case MapVerdict::zero: return "forced-zero";
        case MapVerdict::undetermined: return "undetermined";
    }
    return "undetermined";
}

TriangleVerdict exact_triangle_force(const std::array<GradedTable, 3>& modules,
                                     const std::array<Grading, 3>& shifts) {
    std::array<int, 3> dim{};
    for (int i = 0; i < 3; ++i)
        for (const auto& [g, r] : modules[i]) {
            if (r < 0) throw DomainError("exact_triangle_force: negative rank in module " + std::to_string(i + 1));
            dim[i] += r;
        }
    // dim M_i = rank(map out of M_i) + rank(map into M_i).
    std::array<int, 3> twice{dim[0] + dim[1] - dim[2], dim[1] + dim[2] - dim[0], dim[2] + dim[0] - dim[1]};
    for (int v : twice)
        if (v < 0 || v % 2 != 0)
            throw DomainError("exact_triangle_force: inconsistent ranks " + std::to_string(dim[0]) + ", " +
                              std::to_string(dim[1]) + ", " + std::to_string(dim[2]));
    TriangleVerdict out;
    out.rank_f = twice[0] / 2;
    out.rank_phi = twice[1] / 2;
    out.rank_psi = twice[2] / 2;

    // Map i leaves module i; map (i + 2) % 3 enters it.
    std::array<MapVerdict, 3> verdicts{};
    std::array<int, 3> ranks{out.rank_f, out.rank_phi, out.rank_psi};
    for (int i = 0; i < 3; ++i) {
        if (ranks[i] == 0) {
            verdicts[i] = MapVerdict::zero;
            continue;
        }
        verdicts[i] = MapVerdict::undetermined;
        const auto& source = modules[i];
        auto top = std::find_if(source.rbegin(), source.rend(), [](const auto& kv) { return kv.second > 0; });
        if (top == source.rend()) continue;
        int prev = (i + 2) % 3;
        Grading preimage = top->first - shifts[prev];
        auto it = modules[prev].find(preimage);
        bool hit = it != modules[prev].end() && it->second > 0;
        if (!hit || ranks[i] == dim[i]) verdicts[i] = MapVerdict::injective_on_top;
    }
    out.f = verdicts[0];
    out.phi = verdicts[1];
    out.psi = verdicts[2];
    return out;
}

}  // namespace floerforge
