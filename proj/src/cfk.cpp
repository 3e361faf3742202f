#include "floerforge/cfk.hpp"

#include "floerforge/f2.hpp"
#include "reducer.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <tuple>

namespace floerforge {

namespace {

using FlipPairs = std::vector<std::pair<std::string, std::string>>;

FlipPairs normalized_pairs(const std::map<std::string, std::string>& iota) {
    FlipPairs pairs;
    for (const auto& [x, y] : iota)
        if (x <= y) pairs.emplace_back(x, y);
    return pairs;
}

std::map<std::string, Grading> maslov_map(const FreeComplex& c) {
    std::map<std::string, Grading> m;
    for (const auto& g : c.generators) m[g.name] = g.maslov;
    return m;
}

}  // namespace

std::map<std::string, std::string> flip_map(const KnotComplex& k) {
    std::map<std::string, std::string> iota;
    if (!k.flip) return iota;
    for (const auto& [x, y] : *k.flip) {
        iota[x] = y;
        iota[y] = x;
    }
    return iota;
}

ValidationReport validate_knot(const KnotComplex& k) {
    ValidationReport report = validate_complex(k.base);
    auto& bad = report.violations;
    auto maslov = maslov_map(k.base);
    for (const auto& [name, m] : maslov)
        if (!k.alexander.count(name)) bad.push_back("generator " + name + " has no Alexander grading");
    for (const auto& [name, a] : k.alexander)
        if (!maslov.count(name)) bad.push_back("Alexander grading given for unknown generator " + name);
    if (!bad.empty()) return report;

    std::map<std::pair<std::string, std::string>, int> entries;
    for (const auto& e : k.base.differential) {
        entries[{e.from, e.to}] = e.upower;
        if (k.alexander.at(e.to) - e.upower > k.alexander.at(e.from))
            bad.push_back("filtration: " + e.from + " -> " + e.to + " raises the Alexander filtration");
    }
    if (k.ambient.b1 < 0) bad.push_back("ambient b1 is negative");
    if (!k.flip) return report;

    std::map<std::string, std::string> iota;
    for (const auto& [x, y] : *k.flip) {
        if (!maslov.count(x) || !maslov.count(y)) {
            bad.push_back("flip names an unknown generator " + x + "/" + y);
            continue;
        }
        if (iota.count(x) || iota.count(y)) bad.push_back("flip is not a bijection at " + x + "/" + y);
        iota[x] = y;
        iota[y] = x;
    }
    if (iota.size() != maslov.size()) bad.push_back("flip does not cover every generator");
    if (!bad.empty()) return report;
    for (const auto& [x, y] : iota) {
        int ax = k.alexander.at(x);
        if (k.alexander.at(y) != -ax) bad.push_back("flip: Alexander grading of " + y + " is not minus that of " + x);
        if (maslov[y] != maslov[x] - 2 * ax) bad.push_back("flip: Maslov grading of " + y + " does not match " + x);
    }
    for (const auto& [xy, p] : entries) {
        const auto& [x, y] = xy;
        auto it = entries.find({iota[x], iota[y]});
        int want = k.alexander.at(x) - k.alexander.at(y) + p;
        if (it == entries.end() || it->second != want)
            bad.push_back("flip: entry " + x + " -> " + y + " has no partner " + iota[x] + " -> " + iota[y] +
                          " with U^" + std::to_string(want));
    }
    return report;
}

void require_valid_knot(const KnotComplex& k, const std::string& context) {
    auto report = validate_knot(k);
    if (report.ok()) return;
    std::string msg = context + ": invalid knot complex";
    for (std::size_t i = 0; i < report.violations.size() && i < 5; ++i) msg += "; " + report.violations[i];
    throw DomainError(msg);
}

KnotComplex box(const Grading& k, int j) {
    KnotComplex b;
    b.base.generators = {{"a", k}, {"b", k + 1}, {"c", k - 1}, {"d", k}};
    b.base.differential = {{"a", "b", 1}, {"a", "c", 0}, {"b", "d", 0}, {"c", "d", 1}};
    b.alexander = {{"a", j}, {"b", j + 1}, {"c", j - 1}, {"d", j}};
    if (j == 0) b.flip = FlipPairs{{"a", "a"}, {"b", "c"}, {"d", "d"}};
    return b;
}

KnotComplex staircase_torus(int n, int sign) {
    if (n < 3 || n % 2 == 0) throw DomainError("staircase_torus: n must be odd and at least 3, got " + std::to_string(n));
    if (sign != 1 && sign != -1) throw DomainError("staircase_torus: sign must be +1 or -1");
    if (sign < 0) return mirror_knot(staircase_torus(n, 1));
    const int g = (n - 1) / 2;
    KnotComplex k;
    auto name = [](int i) { return "x" + std::to_string(i); };
    for (int i = 0; i < n; ++i) {
        k.base.generators.push_back({name(i), Grading(-i)});
        k.alexander[name(i)] = g - i;
    }
    for (int i = 1; i < n; i += 2) {
        k.base.differential.push_back({name(i), name(i - 1), 1});
        k.base.differential.push_back({name(i), name(i + 1), 0});
    }
    std::map<std::string, std::string> iota;
    for (int i = 0; i < n; ++i) iota[name(i)] = name(n - 1 - i);
    k.flip = normalized_pairs(iota);
    return k;
}

KnotComplex builtin(const std::string& name) {
    KnotComplex k;
    if (name == "unknot") {
        k.base.generators = {{"x", Grading(0)}};
        k.alexander = {{"x", 0}};
        k.flip = FlipPairs{{"x", "x"}};
    } else if (name == "figure8") {
        k.base.generators = {{"x", Grading(0)}, {"a", Grading(0)}, {"b", Grading(1)}, {"c", Grading(-1)}, {"d", Grading(0)}};
        k.base.differential = {{"a", "b", 1}, {"a", "c", 0}, {"b", "d", 0}, {"c", "d", 1}};
        k.alexander = {{"x", 0}, {"a", 0}, {"b", 1}, {"c", -1}, {"d", 0}};
        k.flip = FlipPairs{{"a", "a"}, {"b", "c"}, {"d", "d"}, {"x", "x"}};
    } else if (name == "J_in_Y") {
        k.base.generators = {{"a", halves(1)}, {"b", halves(-1)}, {"c", halves(-3)}, {"d", halves(-1)}};
        k.base.differential = {{"a", "b", 0}, {"c", "b", 1}};
        k.alexander = {{"a", 1}, {"b", 0}, {"c", -1}, {"d", 0}};
        k.flip = FlipPairs{{"a", "c"}, {"b", "b"}, {"d", "d"}};
        k.ambient = {"Y", 1, true};
    } else if (name == "Jprime_in_Yprime") {
        // Two isolated generators, a vertical arrow c -> d and a horizontal
        // arrow e -> U f. Gradings fixed by HF+(Y') = T(1/2) + T(-1/2) + F(-1/2).
        k.base.generators = {{"a", halves(1)},  {"b", halves(-1)}, {"c", halves(3)},
                             {"d", halves(1)},  {"e", halves(-1)}, {"f", halves(1)}};
        k.base.differential = {{"c", "d", 0}, {"e", "f", 1}};
        k.alexander = {{"a", 0}, {"b", 0}, {"c", 1}, {"d", 0}, {"e", -1}, {"f", 0}};
        k.flip = FlipPairs{{"a", "a"}, {"b", "b"}, {"c", "e"}, {"d", "f"}};
        k.ambient = {"Yprime", 1, false};
    } else {
        throw DomainError("builtin: unknown complex '" + name + "'");
    }
    return k;
}

KnotComplex mirror_knot(const KnotComplex& k) {
    require_valid_knot(k, "mirror_knot");
    KnotComplex m;
    for (const auto& g : k.base.generators) m.base.generators.push_back({g.name, -g.maslov});
    for (const auto& e : k.base.differential) m.base.differential.push_back({e.to, e.from, e.upower});
    std::sort(m.base.differential.begin(), m.base.differential.end(),
              [](const Arrow& l, const Arrow& r) { return std::tie(l.from, l.to) < std::tie(r.from, r.to); });
    for (const auto& [name, a] : k.alexander) m.alexander[name] = -a;
    m.flip = k.flip;
    m.ambient = k.ambient;
    if (k.ambient.b1 == 0) {
        // Keep the surviving free generator at grading 0.
        auto h = homology_decomposition(m.base);
        if (h.towers.size() == 1 && h.towers[0] != 0)
            for (auto& g : m.base.generators) g.maslov -= h.towers[0];
    } else {
        const auto& n = k.ambient.name;
        m.ambient.name = (!n.empty() && n[0] == '-') ? n.substr(1) : "-" + n;
    }
    return m;
}

KnotComplex connected_sum_knots(const KnotComplex& a, const KnotComplex& b) {
    require_valid_knot(a, "connected_sum_knots");
    require_valid_knot(b, "connected_sum_knots");
    if (a.ambient.b1 > 0 && b.ambient.b1 > 0)
        throw DomainError("connected_sum_knots: both ambient manifolds have b1 > 0");
    KnotComplex s;
    s.base = tensor_complexes(a.base, b.base);
    for (const auto& [x, ax] : a.alexander)
        for (const auto& [y, by] : b.alexander) s.alexander[x + "*" + y] = ax + by;
    if (a.flip && b.flip) {
        auto ia = flip_map(a), ib = flip_map(b);
        std::map<std::string, std::string> iota;
        for (const auto& [x, fx] : ia)
            for (const auto& [y, fy] : ib) iota[x + "*" + y] = fx + "*" + fy;
        s.flip = normalized_pairs(iota);
    }
    if (a.ambient.b1 == 0 && a.ambient.name == "S3") s.ambient = b.ambient;
    else if (b.ambient.b1 == 0 && b.ambient.name == "S3") s.ambient = a.ambient;
    else s.ambient = {a.ambient.name + "#" + b.ambient.name, a.ambient.b1 + b.ambient.b1,
                      a.ambient.reduced_trivial && b.ambient.reduced_trivial};
    return s;
}

KnotComplex prefixed(const KnotComplex& k, const std::string& prefix) {
    KnotComplex p = k;
    for (auto& g : p.base.generators) g.name = prefix + g.name;
    for (auto& e : p.base.differential) {
        e.from = prefix + e.from;
        e.to = prefix + e.to;
    }
    p.alexander.clear();
    for (const auto& [n, a] : k.alexander) p.alexander[prefix + n] = a;
    if (p.flip)
        for (auto& [x, y] : *p.flip) {
            x = prefix + x;
            y = prefix + y;
        }
    return p;
}

KnotComplex direct_sum(const std::vector<KnotComplex>& parts) {
    KnotComplex s;
    bool flips = true;
    FlipPairs pairs;
    for (const auto& p : parts) {
        s.base.generators.insert(s.base.generators.end(), p.base.generators.begin(), p.base.generators.end());
        s.base.differential.insert(s.base.differential.end(), p.base.differential.begin(), p.base.differential.end());
        s.alexander.insert(p.alexander.begin(), p.alexander.end());
        if (p.flip) pairs.insert(pairs.end(), p.flip->begin(), p.flip->end());
        else flips = false;
    }
    if (flips) s.flip = pairs;
    return s;
}

// ---------------------------------------------------------------------------
// Box splitting

namespace {

struct ThinModule {
    std::vector<std::string> names;
    std::vector<Grading> delta;  // m - A
    std::vector<int> alex;
    std::vector<std::vector<int>> vert, horiz;  // X and Y on basis vectors

    BitVec apply(const std::vector<std::vector<int>>& op, const BitVec& v) const {
        BitVec out(v.size());
        for (auto i = v.find_first(); i != BitVec::npos; i = v.find_next(i))
            for (int t : op[i]) out.flip(t);
        return out;
    }
    BitVec X(const BitVec& v) const { return apply(vert, v); }
    BitVec Y(const BitVec& v) const { return apply(horiz, v); }
};

using Degree = std::pair<Grading, int>;  // (delta, Alexander)

// Coordinates of w in the given basis (w assumed to lie in its span).
BitVec coordinates(const std::vector<BitVec>& basis, const BitVec& w) {
    Echelon ech;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        BitVec tag(basis.size());
        tag.set(i);
        ech.insert(basis[i], tag);
    }
    BitVec v = w, tag(basis.size());
    if (!ech.reduce(v, &tag)) throw DomainError("split_boxes: vector left the submodule");
    return tag;
}

// Basis of {w in span(basis) : f(w) = 0 for every functional f}, where the
// functionals are evaluated on basis vectors by `eval`.
std::vector<BitVec> constrained(const std::vector<BitVec>& basis,
                                const std::function<BitVec(const BitVec&)>& eval) {
    std::vector<BitVec> images;
    for (const auto& b : basis) images.push_back(eval(b));
    std::vector<BitVec> out;
    for (const auto& combo : kernel_basis(images)) {
        BitVec w(basis.front().size());
        for (auto i = combo.find_first(); i != BitVec::npos; i = combo.find_next(i)) w ^= basis[i];
        out.push_back(std::move(w));
    }
    return out;
}

}  // namespace

std::optional<BoxSplitting> split_boxes(const KnotComplex& k) {
    require_valid_knot(k, "split_boxes");
    ThinModule mod;
    std::map<std::string, int> idx;
    {
        std::vector<std::tuple<Grading, int, std::string>> order;
        for (const auto& g : k.base.generators) {
            int a = k.alexander.at(g.name);
            order.emplace_back(g.maslov - a, -a, g.name);
        }
        std::sort(order.begin(), order.end());
        for (auto& [d, na, n] : order) {
            idx[n] = static_cast<int>(mod.names.size());
            mod.names.push_back(n);
            mod.delta.push_back(d);
            mod.alex.push_back(-na);
        }
    }
    const std::size_t n = mod.names.size();
    mod.vert.resize(n);
    mod.horiz.resize(n);
    for (const auto& e : k.base.differential) {
        int x = idx[e.from], y = idx[e.to];
        int drop = mod.alex[x] - mod.alex[y];
        if (e.upower == 0 && drop == 1) mod.vert[x].push_back(y);
        else if (e.upower == 1 && drop == -1) mod.horiz[x].push_back(y);
        else return std::nullopt;
    }

    std::map<Degree, std::vector<BitVec>> W;
    for (std::size_t i = 0; i < n; ++i) {
        BitVec e(n);
        e.set(i);
        W[{mod.delta[i], mod.alex[i]}].push_back(e);
    }

    struct FoundBox {
        Grading k;
        int j;
        BitVec a;
    };
    std::vector<FoundBox> found;
    for (;;) {
        std::optional<std::pair<Degree, BitVec>> pick;
        for (const auto& [deg, basis] : W) {
            for (const auto& v : basis)
                if (mod.X(mod.Y(v)).any()) {
                    pick = {deg, v};
                    break;
                }
            if (pick) break;
        }
        if (!pick) break;
        auto [deg, v] = *pick;
        const auto& Ws = W[deg];
        BitVec top = mod.X(mod.Y(v));
        BitVec coords = coordinates(Ws, top);
        const std::size_t psi_index = coords.find_first();
        auto psi = [&](const BitVec& w) { return coordinates(Ws, w).test(psi_index); };

        BitVec a = v;
        if (psi(v)) a ^= top;
        found.push_back({deg.first + deg.second, deg.second, a});

        Degree below{deg.first, deg.second - 1}, above{deg.first, deg.second + 1};
        std::map<Degree, std::vector<BitVec>> next = W;
        next[deg] = constrained(Ws, [&](const BitVec& w) {
            BitVec f(2);
            f[0] = psi(w);
            f[1] = psi(mod.X(mod.Y(w)));
            return f;
        });
        if (W.count(below))
            next[below] = constrained(W[below], [&](const BitVec& w) {
                BitVec f(1);
                f[0] = psi(mod.Y(w));
                return f;
            });
        if (W.count(above))
            next[above] = constrained(W[above], [&](const BitVec& w) {
                BitVec f(1);
                f[0] = psi(mod.X(w));
                return f;
            });
        W = std::move(next);
    }

    // Remainder complex on the surviving basis.
    BoxSplitting out;
    std::set<std::string> taken;
    std::vector<std::pair<Degree, BitVec>> rest;
    for (const auto& [deg, basis] : W)
        for (const auto& v : basis) rest.emplace_back(deg, v);
    auto single_name = [&](const BitVec& v) -> std::optional<std::string> {
        if (v.count() == 1) return mod.names[v.find_first()];
        return std::nullopt;
    };
    std::vector<std::string> rest_names;
    for (std::size_t i = 0; i < rest.size(); ++i) {
        auto nm = single_name(rest[i].second);
        rest_names.push_back(nm ? *nm : "r" + std::to_string(i));
        taken.insert(rest_names.back());
    }
    auto& rem = out.remainder;
    rem.ambient = k.ambient;
    for (std::size_t i = 0; i < rest.size(); ++i) {
        const auto& [deg, v] = rest[i];
        rem.base.generators.push_back({rest_names[i], deg.first + deg.second});
        rem.alexander[rest_names[i]] = deg.second;
    }
    for (std::size_t i = 0; i < rest.size(); ++i) {
        const auto& [deg, v] = rest[i];
        for (int kind = 0; kind < 2; ++kind) {
            BitVec img = kind == 0 ? mod.X(v) : mod.Y(v);
            if (img.none()) continue;
            Degree target{deg.first, deg.second + (kind == 0 ? -1 : 1)};
            std::vector<BitVec> basis;
            std::vector<std::size_t> where;
            for (std::size_t t = 0; t < rest.size(); ++t)
                if (rest[t].first == target) {
                    basis.push_back(rest[t].second);
                    where.push_back(t);
                }
            BitVec c = coordinates(basis, img);
            for (auto b = c.find_first(); b != BitVec::npos; b = c.find_next(b))
                rem.base.differential.push_back({rest_names[i], rest_names[where[b]], kind});
        }
    }
    std::sort(rem.base.differential.begin(), rem.base.differential.end(),
              [](const Arrow& l, const Arrow& r) { return std::tie(l.from, l.to) < std::tie(r.from, r.to); });
    for (const auto& f : found) {
        out.boxes.push_back({f.k, f.j});
        std::array<BitVec, 4> vecs{f.a, mod.Y(f.a), mod.X(f.a), mod.X(mod.Y(f.a))};
        std::array<std::string, 4> nm;
        bool simple = true;
        for (int i = 0; i < 4 && simple; ++i) {
            auto single = single_name(vecs[i]);
            if (single) nm[i] = *single;
            else simple = false;
        }
        out.names.push_back(simple ? std::optional(nm) : std::nullopt);
    }
    return out;
}

namespace {

bool restrict_flip(KnotComplex& k, const std::map<std::string, std::string>& original) {
    if (original.empty()) return false;
    std::map<std::string, std::string> iota;
    for (const auto& g : k.base.generators) {
        auto it = original.find(g.name);
        if (it == original.end()) return false;
        iota[g.name] = it->second;
    }
    for (const auto& [x, y] : iota)
        if (!iota.count(y)) return false;
    k.flip = normalized_pairs(iota);
    if (!validate_knot(k).ok()) {
        k.flip.reset();
        return false;
    }
    return true;
}

// Boxes B[k, j] and B[k - 2j, -j] are exchanged by the flip.
std::optional<std::vector<std::pair<std::size_t, std::size_t>>> box_flip_partners(const std::vector<BoxSpec>& boxes) {
    std::vector<std::pair<std::size_t, std::size_t>> partners;
    std::vector<char> used(boxes.size(), 0);
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        if (used[i]) continue;
        if (boxes[i].j == 0) {
            partners.emplace_back(i, i);
            used[i] = 1;
            continue;
        }
        BoxSpec want{boxes[i].k - 2 * boxes[i].j, -boxes[i].j};
        bool ok = false;
        for (std::size_t t = i + 1; t < boxes.size(); ++t)
            if (!used[t] && boxes[t] == want) {
                partners.emplace_back(i, t);
                used[i] = used[t] = 1;
                ok = true;
                break;
            }
        if (!ok) return std::nullopt;
    }
    return partners;
}

}  // namespace

KnotComplex reduce_canonical(const KnotComplex& k) {
    require_valid_knot(k, "reduce_canonical");
    const auto original_flip = flip_map(k);

    detail::Reducer red(k.base);
    std::vector<int> alex(red.size());
    for (std::size_t i = 0; i < red.size(); ++i) alex[i] = k.alexander.at(red.names()[i]);
    red.cancel_units([&](int x, int y) { return alex[x] == alex[y]; });

    KnotComplex cancelled;
    cancelled.base = red.snapshot();
    for (const auto& g : cancelled.base.generators) cancelled.alexander[g.name] = k.alexander.at(g.name);
    cancelled.ambient = k.ambient;
    restrict_flip(cancelled, original_flip);

    auto split = split_boxes(cancelled);
    if (!split) return cancelled;

    std::vector<std::size_t> order(split->boxes.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        const auto& a = split->boxes[l];
        const auto& b = split->boxes[r];
        return a.k > b.k || (a.k == b.k && a.j > b.j);
    });
    std::vector<BoxSpec> boxes;
    for (auto i : order) boxes.push_back(split->boxes[i]);
    KnotComplex rem = split->remainder;
    if (!rem.flip) restrict_flip(rem, original_flip);
    if (!rem.flip && rem.base.generators.size() == 1 && rem.alexander.begin()->second == 0)
        rem.flip = FlipPairs{{rem.base.generators[0].name, rem.base.generators[0].name}};

    std::set<std::string> used;
    for (const auto& g : rem.base.generators) used.insert(g.name);
    for (const auto& nm : split->names)
        if (nm) used.insert(nm->begin(), nm->end());
    std::vector<KnotComplex> parts{rem};
    // Per box, names of its a, b, c, d generators in the output.
    std::vector<std::array<std::string, 4>> labels;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        std::array<std::string, 4> label;
        if (const auto& nm = split->names[order[i]]) {
            label = *nm;
        } else {
            std::string prefix = "B" + std::to_string(i) + ".";
            while (used.count(prefix + "a")) prefix = "_" + prefix;
            label = {prefix + "a", prefix + "b", prefix + "c", prefix + "d"};
        }
        KnotComplex b = box(boxes[i].k, boxes[i].j);
        std::map<std::string, std::string> rename{{"a", label[0]}, {"b", label[1]}, {"c", label[2]}, {"d", label[3]}};
        for (auto& g : b.base.generators) g.name = rename[g.name];
        for (auto& e : b.base.differential) {
            e.from = rename[e.from];
            e.to = rename[e.to];
        }
        std::map<std::string, int> alex;
        for (const auto& [n, a] : b.alexander) alex[rename[n]] = a;
        b.alexander = alex;
        labels.push_back(label);
        parts.push_back(b);
    }
    bool rem_flip = rem.flip.has_value();
    for (auto& p : parts) p.flip.reset();
    KnotComplex out = direct_sum(parts);
    out.ambient = k.ambient;

    auto partners = box_flip_partners(boxes);
    if (rem_flip && partners) {
        FlipPairs pairs = *rem.flip;
        for (auto [i, t] : *partners) {
            const auto& p = labels[i];
            const auto& q = labels[t];
            pairs.emplace_back(p[0], q[0]);
            pairs.emplace_back(p[1], q[2]);
            pairs.emplace_back(p[2], q[1]);
            pairs.emplace_back(p[3], q[3]);
        }
        std::map<std::string, std::string> iota;
        for (const auto& [x, y] : pairs) {
            iota[x] = y;
            iota[y] = x;
        }
        out.flip = normalized_pairs(iota);
        if (!validate_knot(out).ok()) out.flip.reset();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hat-level invariants

namespace {

// Dimensions of the homology of an F2 complex whose differential maps each
// key group into a single key group.
template <class Key>
std::map<Key, int> graded_homology(std::size_t n, const std::vector<std::pair<int, int>>& entries,
                                   const std::vector<Key>& key) {
    std::map<Key, std::vector<int>> groups;
    std::vector<int> pos(n);
    for (std::size_t i = 0; i < n; ++i) {
        pos[i] = static_cast<int>(groups[key[i]].size());
        groups[key[i]].push_back(static_cast<int>(i));
    }
    std::vector<std::vector<int>> out(n);
    for (auto [x, y] : entries) out[x].push_back(y);
    std::map<Key, int> result;
    for (const auto& [k, members] : groups) result[k] += static_cast<int>(members.size());
    for (const auto& [k, members] : groups) {
        std::vector<BitVec> images;
        const Key* target = nullptr;
        for (int x : members) {
            if (out[x].empty()) continue;
            target = &key[out[x].front()];
            BitVec v(groups[*target].size());
            for (int y : out[x]) v.flip(pos[y]);
            images.push_back(std::move(v));
        }
        if (!target) continue;
        int r = static_cast<int>(rank_of(images));
        result[k] -= r;
        result[*target] -= r;
    }
    std::erase_if(result, [](const auto& kv) { return kv.second == 0; });
    return result;
}

struct HatComplex {
    std::vector<std::string> names;
    std::vector<Grading> m;
    std::vector<int> a;
    std::vector<std::pair<int, int>> vertical;  // U^0 entries
};

HatComplex hat_complex(const KnotComplex& k) {
    HatComplex h;
    std::map<std::string, int> idx;
    for (const auto& g : k.base.generators) {
        idx[g.name] = static_cast<int>(h.names.size());
        h.names.push_back(g.name);
        h.m.push_back(g.maslov);
        h.a.push_back(k.alexander.at(g.name));
    }
    for (const auto& e : k.base.differential)
        if (e.upower == 0) h.vertical.emplace_back(idx[e.from], idx[e.to]);
    return h;
}

struct Persistence {
    std::vector<std::pair<int, int>> pairs;  // (birth, death) generator indices
    std::vector<int> essential;
};

// Column reduction of the U = 0 complex filtered by Alexander grading.
Persistence persistence(const HatComplex& h) {
    const int n = static_cast<int>(h.names.size());
    std::vector<int> order(n), rank(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int l, int r) {
        return std::tie(h.a[l], h.m[l], h.names[l]) < std::tie(h.a[r], h.m[r], h.names[r]);
    });
    for (int i = 0; i < n; ++i) rank[order[i]] = i;
    std::vector<std::vector<int>> col(n);
    for (auto [x, y] : h.vertical) col[rank[x]].push_back(rank[y]);
    for (auto& c : col) std::sort(c.begin(), c.end());

    std::vector<int> owner(n, -1);  // low -> column
    std::vector<char> is_low(n, 0), is_killer(n, 0);
    Persistence p;
    for (int j = 0; j < n; ++j) {
        auto& c = col[j];
        while (!c.empty() && owner[c.back()] != -1) {
            const auto& other = col[owner[c.back()]];
            std::vector<int> merged;
            std::set_symmetric_difference(c.begin(), c.end(), other.begin(), other.end(), std::back_inserter(merged));
            c.swap(merged);
        }
        if (!c.empty()) {
            owner[c.back()] = j;
            is_low[c.back()] = 1;
            is_killer[j] = 1;
            p.pairs.emplace_back(order[c.back()], order[j]);
        }
    }
    for (int i = 0; i < n; ++i)
        if (!is_low[i] && !is_killer[i]) p.essential.push_back(order[i]);
    return p;
}

void require_s3(const KnotComplex& k, const char* op) {
    if (k.ambient.b1 != 0 || k.ambient.name != "S3")
        throw DomainError(std::string(op) + ": requires a knot in S3, got ambient " + k.ambient.name);
}

}  // namespace

HFKResult hfk_hat(const KnotComplex& k) {
    require_valid_knot(k, "hfk_hat");
    auto h = hat_complex(k);
    std::vector<std::pair<int, int>> graded;
    for (auto [x, y] : h.vertical)
        if (h.a[x] == h.a[y]) graded.emplace_back(x, y);
    std::vector<std::pair<Grading, int>> key;
    for (std::size_t i = 0; i < h.names.size(); ++i) key.emplace_back(h.m[i], h.a[i]);
    HFKResult r;
    r.full = graded_homology(h.names.size(), graded, key);
    auto ess = persistence(h).essential;
    if (k.ambient.b1 == 0 && k.ambient.name == "S3" && ess.size() == 1) {
        int tau = h.a[ess.front()];
        BigradedTable red = r.full;
        auto it = red.find({Grading(0), tau});
        if (it == red.end()) throw DomainError("hfk_hat: no generator at (0, tau) to remove");
        if (--it->second == 0) red.erase(it);
        r.reduced = red;
    }
    return r;
}

GradedTable filtration_homology(const KnotComplex& k, int i) {
    require_valid_knot(k, "filtration_homology");
    auto h = hat_complex(k);
    std::vector<int> keep(h.names.size(), -1);
    std::vector<std::string> names;
    std::vector<Grading> key;
    for (std::size_t v = 0; v < h.names.size(); ++v)
        if (h.a[v] <= i) {
            keep[v] = static_cast<int>(names.size());
            names.push_back(h.names[v]);
            key.push_back(h.m[v]);
        }
    std::vector<std::pair<int, int>> entries;
    for (auto [x, y] : h.vertical)
        if (keep[x] >= 0) entries.emplace_back(keep[x], keep[y]);
    return graded_homology(names.size(), entries, key);
}

int alexander_span(const KnotComplex& k) {
    int g = 0;
    for (const auto& [n, a] : k.alexander) g = std::max(g, std::abs(a));
    return g;
}

KnotNumerics knot_numerics(const KnotComplex& k) {
    require_s3(k, "knot_numerics");
    require_valid_knot(k, "knot_numerics");
    auto h = hat_complex(k);
    auto p = persistence(h);
    if (p.essential.size() != 1)
        throw DomainError("knot_numerics: U = 0 homology has rank " + std::to_string(p.essential.size()) + ", expected 1");
    KnotNumerics out;
    out.tau = h.a[p.essential.front()];
    out.genus = alexander_span(reduce_canonical(k));
    return out;
}

ReducedBasisForm reduced_basis_form(const KnotComplex& k) {
    require_s3(k, "reduced_basis_form");
    require_valid_knot(k, "reduced_basis_form");
    auto h = hat_complex(k);
    auto p = persistence(h);
    if (p.essential.size() != 1) {
        std::string msg = "reduced_basis_form: pairing leaves " + std::to_string(p.essential.size()) + " unmatched generators:";
        for (int v : p.essential) msg += " " + h.names[v];
        throw DomainError(msg);
    }
    int x = p.essential.front();
    if (h.a[x] != 0) throw DomainError("reduced_basis_form: tau = " + std::to_string(h.a[x]) + ", expected 0");
    if (h.m[x] != 0) throw DomainError("reduced_basis_form: surviving generator " + h.names[x] + " is not in Maslov grading 0");
    ReducedBasisForm rb;
    for (auto [birth, death] : p.pairs) {
        int d = h.a[death] - h.a[birth];
        if (d > 0) rb.pairs.push_back({h.m[death], h.a[death], d});
    }
    std::sort(rb.pairs.begin(), rb.pairs.end(), [](const ReducedPair& l, const ReducedPair& r) {
        return std::tie(r.m, r.a, l.d) < std::tie(l.m, l.a, r.d);
    });
    return rb;
}

ReducedBasisForm mirror_basis_form(const ReducedBasisForm& rb) {
    ReducedBasisForm out;
    for (const auto& p : rb.pairs) out.pairs.push_back({1 - p.m, p.d - p.a, p.d});
    std::sort(out.pairs.begin(), out.pairs.end(), [](const ReducedPair& l, const ReducedPair& r) {
        return std::tie(r.m, r.a, l.d) < std::tie(l.m, l.a, r.d);
    });
    return out;
}

}  // namespace floerforge
