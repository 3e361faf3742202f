#include "floerforge/fualgebra.hpp"

#include "floerforge/f2.hpp"
#include "reducer.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace floerforge {

ValidationReport validate_complex(const FreeComplex& c) {
    ValidationReport report;
    auto& bad = report.violations;
    std::map<std::string, Grading> maslov;
    for (const auto& g : c.generators)
        if (!maslov.emplace(g.name, g.maslov).second) bad.push_back("duplicate generator " + g.name);

    std::map<std::string, std::vector<const Arrow*>> out;
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& a : c.differential) {
        auto label = a.from + " -> " + a.to;
        if (!maslov.count(a.from) || !maslov.count(a.to)) {
            bad.push_back("entry " + label + " names an unknown generator");
            continue;
        }
        if (a.upower < 0) bad.push_back("entry " + label + " has negative U-power");
        if (!seen.emplace(a.from, a.to).second) bad.push_back("entry " + label + " listed twice");
        if (maslov[a.to] - 2 * a.upower != maslov[a.from] - 1)
            bad.push_back("homogeneity: " + label + " with U^" + std::to_string(a.upower) + " from grading " +
                          format_grading(maslov[a.from]) + " to " + format_grading(maslov[a.to]));
        out[a.from].push_back(&a);
    }
    if (!bad.empty()) return report;

    // d^2 over F2[U]: count paths x -> y -> z by total power, mod 2.
    for (const auto& [x, first] : out) {
        std::map<std::pair<std::string, int>, int> hits;
        for (const Arrow* a : first) {
            auto it = out.find(a->to);
            if (it == out.end()) continue;
            for (const Arrow* b : it->second) hits[{b->to, a->upower + b->upower}] ^= 1;
        }
        for (const auto& [key, parity] : hits)
            if (parity)
                bad.push_back("d^2 != 0: " + x + " reaches " + key.first + " with U^" + std::to_string(key.second));
    }
    return report;
}

void require_valid(const FreeComplex& c, const std::string& context) {
    auto report = validate_complex(c);
    if (report.ok()) return;
    std::string msg = context + ": invalid complex";
    for (std::size_t i = 0; i < report.violations.size() && i < 5; ++i) msg += "; " + report.violations[i];
    throw DomainError(msg);
}

FreeComplex tensor_complexes(const FreeComplex& a, const FreeComplex& b) {
    FreeComplex t;
    auto pair_name = [](const std::string& x, const std::string& y) { return x + "*" + y; };
    for (const auto& x : a.generators)
        for (const auto& y : b.generators) t.generators.push_back({pair_name(x.name, y.name), x.maslov + y.maslov});
    for (const auto& e : a.differential)
        for (const auto& y : b.generators) t.differential.push_back({pair_name(e.from, y.name), pair_name(e.to, y.name), e.upower});
    for (const auto& x : a.generators)
        for (const auto& e : b.differential) t.differential.push_back({pair_name(x.name, e.from), pair_name(x.name, e.to), e.upower});
    return t;
}

void FUDecomposition::normalize() {
    std::sort(towers.begin(), towers.end());
    std::sort(torsion.begin(), torsion.end(), [](const TorsionSummand& l, const TorsionSummand& r) {
        return r < l;
    });
}

bool FUDecomposition::operator==(const FUDecomposition& other) const {
    FUDecomposition l = *this, r = other;
    l.normalize();
    r.normalize();
    return l.towers == r.towers && l.torsion == r.torsion;
}

FUDecomposition homology_decomposition(const FreeComplex& c) {
    require_valid(c, "homology_decomposition");
    detail::Reducer red(c);
    red.cancel_units([](int, int) { return true; });
    return red.smith();
}

FUDecomposition plus_presentation(const FUDecomposition& h, Convention convention) {
    FUDecomposition out = h;
    if (convention == Convention::minus)
        for (auto& t : out.towers) t += 1;
    out.normalize();
    return out;
}

std::map<Grading, int> torsion_rank_table(const FUDecomposition& h) {
    std::map<Grading, int> table;
    for (const auto& t : h.torsion)
        for (int i = 0; i < t.length; ++i) table[t.top - 2 * i] += 1;
    return table;
}

namespace {

// Returns (fractional class in [0,1), sign (-1)^floor(m)).
std::pair<Grading, int> euler_class(const Grading& m) {
    auto fl = m.numerator() / m.denominator();
    if (m.numerator() < 0 && m.numerator() % m.denominator() != 0) --fl;
    Grading frac = m - fl;
    return {frac, (fl % 2 == 0) ? 1 : -1};
}

}  // namespace

std::map<Grading, long long> euler_characteristic(const FreeComplex& c) {
    std::map<Grading, long long> chi;
    for (const auto& g : c.generators) {
        auto [cls, sign] = euler_class(g.maslov);
        chi[cls] += sign;
    }
    std::erase_if(chi, [](const auto& kv) { return kv.second == 0; });
    return chi;
}

std::map<Grading, long long> euler_characteristic(const FUDecomposition& h) {
    // Setting U = 0 turns a torsion summand into two classes of opposite
    // parity, so only free summands survive.
    std::map<Grading, long long> chi;
    for (const auto& t : h.towers) {
        auto [cls, sign] = euler_class(t);
        chi[cls] += sign;
    }
    std::erase_if(chi, [](const auto& kv) { return kv.second == 0; });
    return chi;
}

int truncation_cutoff(const FreeComplex& c) {
    int maxexp = 0;
    for (const auto& a : c.differential) maxexp = std::max(maxexp, a.upower);
    return static_cast<int>(c.generators.size()) + maxexp + 1;
}

std::vector<CyclicSummand> truncated_summands(const FreeComplex& c, int cutoff) {
    require_valid(c, "truncated_summands");
    const int n = static_cast<int>(c.generators.size());
    std::map<std::string, int> idx;
    for (int i = 0; i < n; ++i) idx[c.generators[i].name] = i;

    // Basis U^t x of C / U^N grouped by grading; position inside its grading.
    std::map<Grading, std::vector<std::pair<int, int>>> cells;
    std::map<std::pair<int, int>, int> slot;
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < cutoff; ++t) {
            auto g = c.generators[i].maslov - 2 * t;
            slot[{i, t}] = static_cast<int>(cells[g].size());
            cells[g].push_back({i, t});
        }
    std::vector<std::vector<std::pair<int, int>>> out(n);
    for (const auto& a : c.differential) out[idx[a.from]].push_back({idx[a.to], a.upower});

    auto dim = [&](const Grading& g) -> std::size_t {
        auto it = cells.find(g);
        return it == cells.end() ? 0 : it->second.size();
    };
    auto boundary_of = [&](int i, int t) {
        BitVec v(dim(c.generators[i].maslov - 2 * t - 1));
        for (auto [j, p] : out[i])
            if (t + p < cutoff) v.flip(slot[{j, t + p}]);
        return v;
    };

    struct Piece {
        std::vector<BitVec> cycles;  // basis of Z_g
        Echelon boundaries;          // B_g
    };
    std::map<Grading, Piece> pieces;
    for (const auto& [g, basis] : cells) {
        std::vector<BitVec> images;
        for (auto [i, t] : basis) images.push_back(boundary_of(i, t));
        pieces[g].cycles = kernel_basis(images);
        for (auto& img : images)
            if (img.size()) pieces[g - 1].boundaries.insert(img);
    }

    // rank of U^j on H_g, computed as rank(B + U^j Z) - rank(B) in degree g - 2j.
    auto u_rank = [&](const Grading& g, int j) -> int {
        auto src = pieces.find(g);
        auto dst = pieces.find(g - 2 * j);
        if (src == pieces.end() || dst == pieces.end()) return 0;
        Echelon ech = dst->second.boundaries;
        const auto& basis = cells[g];
        int r = 0;
        for (const auto& z : src->second.cycles) {
            BitVec v(dim(g - 2 * j));
            for (auto b = z.find_first(); b != BitVec::npos; b = z.find_next(b)) {
                auto [i, t] = basis[b];
                if (t + j < cutoff) v.flip(slot[{i, t + j}]);
            }
            if (ech.insert(std::move(v))) ++r;
        }
        return r;
    };

    std::vector<CyclicSummand> result;
    for (const auto& [g, piece] : pieces) {
        if (piece.cycles.empty()) continue;
        // summands with top g and length >= L: r(g, L-1) - r(g+2, L).
        auto at_least = [&](int len) { return u_rank(g, len - 1) - u_rank(g + 2, len); };
        int prev = at_least(1);
        for (int len = 1; prev > 0; ++len) {
            int next = at_least(len + 1);
            for (int k = 0; k < prev - next; ++k) result.push_back({g, len});
            prev = next;
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

FUDecomposition truncated_decomposition(const FreeComplex& c, int cutoff) {
    FUDecomposition h;
    if (c.generators.empty()) return h;
    Grading lowest = c.generators.front().maslov;
    for (const auto& g : c.generators) lowest = std::min(lowest, g.maslov);
    for (const auto& s : truncated_summands(c, cutoff)) {
        if (s.length >= cutoff) h.towers.push_back(s.top);
        else if (s.top >= lowest) h.torsion.push_back({s.top, s.length});
    }
    h.normalize();
    return h;
}

}  // namespace floerforge
