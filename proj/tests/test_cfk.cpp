#include "doctest.h"

#include "floerforge/cfk.hpp"

#include <algorithm>

using namespace floerforge;

namespace {

KnotComplex knot_k(int n) {
    return connected_sum_knots(staircase_torus(n, 1), staircase_torus(n, -1));
}

std::map<int, long long> alexander_euler(const KnotComplex& k) {
    std::map<int, long long> poly;
    for (const auto& [key, dim] : hfk_hat(k).full) {
        auto m = integral_value(key.first, "maslov");
        poly[key.second] += (m % 2 == 0 ? 1 : -1) * dim;
    }
    std::erase_if(poly, [](const auto& kv) { return kv.second == 0; });
    return poly;
}

// (t^n + 1) / (t + 1) by long division, recentred to be symmetric.
std::map<int, long long> torus_alexander(int n) {
    std::vector<long long> num(n + 1, 0);
    num[0] = 1;
    num[n] = 1;
    std::vector<long long> q(n, 0);
    for (int deg = n; deg >= 1; --deg) {
        long long c = num[deg];
        q[deg - 1] = c;
        num[deg] -= c;
        num[deg - 1] -= c;
    }
    REQUIRE(num[0] == 0);
    std::map<int, long long> poly;
    int g = (n - 1) / 2;
    for (int i = 0; i < n; ++i)
        if (q[i]) poly[i - g] = q[i];
    return poly;
}

std::map<int, long long> multiply(const std::map<int, long long>& a, const std::map<int, long long>& b) {
    std::map<int, long long> out;
    for (auto [i, x] : a)
        for (auto [j, y] : b) out[i + j] += x * y;
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

std::map<int, int> dims_by_alexander(const BigradedTable& t) {
    std::map<int, int> out;
    for (const auto& [key, dim] : t) out[key.second] += dim;
    return out;
}

bool symmetric(const BigradedTable& t) {
    for (const auto& [key, dim] : t) {
        auto it = t.find({key.first - 2 * key.second, -key.second});
        if (it == t.end() || it->second != dim) return false;
    }
    return true;
}

std::vector<std::pair<Grading, int>> sorted_boxes(std::vector<BoxSpec> boxes) {
    std::vector<std::pair<Grading, int>> out;
    for (const auto& b : boxes) out.emplace_back(b.k, b.j);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<KnotComplex> builders() {
    return {builtin("unknot"),           builtin("figure8"),        builtin("J_in_Y"),
            builtin("Jprime_in_Yprime"), staircase_torus(3, 1),     staircase_torus(5, -1),
            staircase_torus(7, 1),       box(Grading(0), 0),        box(Grading(2), 1),
            knot_k(3)};
}

}  // namespace

TEST_CASE("box tables") {
    auto b = box(Grading(0), 0);
    std::map<std::string, Grading> m;
    for (const auto& g : b.base.generators) m[g.name] = g.maslov;
    CHECK(m["a"] == 0);
    CHECK(m["b"] == 1);
    CHECK(m["c"] == -1);
    CHECK(m["d"] == 0);
    CHECK(b.alexander == std::map<std::string, int>{{"a", 0}, {"b", 1}, {"c", -1}, {"d", 0}});
    CHECK(validate_knot(b).ok());
    auto iota = flip_map(b);
    CHECK(iota["b"] == "c");
    CHECK(m["c"] == m["b"] - 2);

    auto b21 = box(Grading(2), 1);
    CHECK_FALSE(b21.flip.has_value());
    CHECK(b21.base.generators[1].maslov == 3);
    CHECK(b21.alexander["b"] == 2);
    CHECK(b21.base.generators[2].maslov == 1);
    CHECK(b21.alexander["c"] == 0);
}

TEST_CASE("staircases") {
    auto t3 = staircase_torus(3, 1);
    CHECK(t3.base.generators.size() == 3);
    CHECK(t3.alexander["x0"] == 1);
    auto h = homology_decomposition(t3.base);
    CHECK(h.towers == std::vector<Grading>{Grading(0)});
    CHECK(h.torsion.empty());
    CHECK(staircase_torus(3, -1) == mirror_knot(t3));
    CHECK_THROWS_AS(staircase_torus(4, 1), DomainError);
    CHECK_THROWS_AS(staircase_torus(1, 1), DomainError);

    auto t5 = hfk_hat(staircase_torus(5, 1)).full;
    CHECK(dims_by_alexander(t5) == std::map<int, int>{{-2, 1}, {-1, 1}, {0, 1}, {1, 1}, {2, 1}});

    for (int n : {3, 5, 7, 9}) {
        CHECK(alexander_euler(staircase_torus(n, 1)) == torus_alexander(n));
        CHECK(alexander_euler(staircase_torus(n, -1)) == torus_alexander(n));
    }
}

TEST_CASE("builtin tables") {
    auto j = builtin("J_in_Y");
    std::vector<Grading> ms;
    for (const auto& g : j.base.generators) ms.push_back(g.maslov);
    CHECK(ms == std::vector<Grading>{halves(1), halves(-1), halves(-3), halves(-1)});
    CHECK(j.alexander == std::map<std::string, int>{{"a", 1}, {"b", 0}, {"c", -1}, {"d", 0}});
    CHECK(j.base.differential == std::vector<Arrow>{{"a", "b", 0}, {"c", "b", 1}});
    CHECK(j.ambient == Ambient{"Y", 1, true});

    auto u = builtin("unknot");
    CHECK(u.base.generators == std::vector<Generator>{{"x", Grading(0)}});

    auto f = builtin("figure8");
    CHECK(f.base.generators.size() == 5);
    CHECK(f.base.differential.size() == 4);
    CHECK_THROWS_AS(builtin("trefoil"), DomainError);
    for (const auto& k : builders()) CHECK(validate_knot(k).ok());
}

TEST_CASE("Jprime gradings are frozen") {
    auto jp = builtin("Jprime_in_Yprime");
    std::map<std::string, Grading> m;
    for (const auto& g : jp.base.generators) m[g.name] = g.maslov;
    CHECK(m == std::map<std::string, Grading>{{"a", halves(1)}, {"b", halves(-1)}, {"c", halves(3)},
                                               {"d", halves(1)}, {"e", halves(-1)}, {"f", halves(1)}});
    // HF+(Y') read off the B complex: two towers and one torsion class at -1/2.
    auto h = plus_presentation(homology_decomposition(jp.base), Convention::plus);
    CHECK(h.towers == std::vector<Grading>{halves(-1), halves(1)});
    REQUIRE(h.torsion.size() == 1);
    CHECK(h.torsion[0].length == 1);
}

TEST_CASE("mirror") {
    CHECK(mirror_knot(builtin("unknot")) == builtin("unknot"));
    auto f = builtin("figure8");
    auto mf = mirror_knot(f);
    auto cf = reduce_canonical(f), cmf = reduce_canonical(mf);
    CHECK(hfk_hat(cf).full == hfk_hat(cmf).full);
    CHECK(sorted_boxes(split_boxes(cf)->boxes) == sorted_boxes(split_boxes(cmf)->boxes));
    auto t = staircase_torus(5, 1);
    CHECK(mirror_knot(mirror_knot(t)) == t);
    auto mj = mirror_knot(builtin("J_in_Y"));
    CHECK(mj.ambient.name == "-Y");
    CHECK(validate_knot(mj).ok());
}

TEST_CASE("connected sums") {
    auto u = builtin("unknot");
    auto t = staircase_torus(3, 1);
    auto tu = connected_sum_knots(t, u);
    CHECK(hfk_hat(tu).full == hfk_hat(t).full);
    CHECK(tu.base.generators.size() == 3);

    auto k3 = knot_k(3);
    CHECK(k3.base.generators.size() == 9);
    CHECK(validate_knot(k3).ok());
    auto c = reduce_canonical(k3);
    CHECK(c.base.generators.size() == 9);
    auto split = split_boxes(c);
    REQUIRE(split);
    CHECK(split->remainder.base.generators.size() == 1);
    CHECK(sorted_boxes(split->boxes) == std::vector<std::pair<Grading, int>>{{Grading(-1), -1}, {Grading(1), 1}});
    auto dims = dims_by_alexander(hfk_hat(k3).full);
    CHECK(dims == std::map<int, int>{{-2, 1}, {-1, 2}, {0, 3}, {1, 2}, {2, 1}});
    auto delta = multiply(torus_alexander(3), torus_alexander(3));
    for (auto [a, coeff] : delta) CHECK(dims[a] == std::abs(coeff));
    CHECK(c.flip.has_value());

    CHECK_THROWS_AS(connected_sum_knots(builtin("J_in_Y"), builtin("J_in_Y")), DomainError);
}

TEST_CASE("J # box splits into the four expected boxes") {
    for (Grading k : {Grading(0), Grading(2), Grading(-1)}) {
        auto sum = connected_sum_knots(builtin("J_in_Y"), box(k, 0));
        CHECK(sum.ambient.b1 == 1);
        auto split = split_boxes(reduce_canonical(sum));
        REQUIRE(split);
        std::vector<std::pair<Grading, int>> want{
            {k - halves(1), 0}, {k - halves(1), 0}, {k + halves(1), 1}, {k - halves(3), -1}};
        std::sort(want.begin(), want.end());
        auto got = sorted_boxes(split->boxes);
        CHECK(got == want);
        CHECK(split->remainder.base.generators.empty());
    }
}

TEST_CASE("reduce_canonical") {
    auto b = box(Grading(0), 0);
    auto rb = reduce_canonical(b);
    CHECK(rb.base == b.base);
    CHECK(rb.alexander == b.alexander);
    CHECK(rb.flip == b.flip);
    KnotComplex pair;
    pair.base = FreeComplex{{{"y", Grading(1)}, {"x", Grading(0)}, {"z", Grading(0)}}, {{"y", "x", 0}}};
    pair.alexander = {{"x", 0}, {"y", 0}, {"z", 0}};
    auto r = reduce_canonical(pair);
    CHECK(r.base.generators == std::vector<Generator>{{"z", Grading(0)}});

    for (const auto& k : builders()) {
        auto c = reduce_canonical(k);
        CHECK(validate_knot(c).ok());
        CHECK(hfk_hat(c).full == hfk_hat(k).full);
        for (int i = -3; i <= 3; ++i) CHECK(filtration_homology(c, i) == filtration_homology(k, i));
    }
}

TEST_CASE("hfk_hat") {
    auto u = hfk_hat(builtin("unknot"));
    CHECK(u.full == BigradedTable{{{Grading(0), 0}, 1}});
    REQUIRE(u.reduced);
    CHECK(u.reduced->empty());

    auto f = hfk_hat(builtin("figure8")).full;
    CHECK(f == BigradedTable{{{Grading(1), 1}, 1}, {{Grading(0), 0}, 3}, {{Grading(-1), -1}, 1}});

    auto k5 = hfk_hat(knot_k(5));
    Grading top = k5.reduced->rbegin()->first.first;
    for (const auto& [key, d] : *k5.reduced) top = std::max(top, key.first);
    CHECK(top == 4);

    CHECK_FALSE(hfk_hat(builtin("J_in_Y")).reduced.has_value());
    for (const auto& k : builders())
        if (k.flip) CHECK(symmetric(hfk_hat(k).full));
    for (const auto& a : builders())
        for (const auto& b : {builtin("figure8"), staircase_torus(3, 1)}) {
            if (!a.flip) continue;
            CHECK(symmetric(hfk_hat(connected_sum_knots(a, b)).full));
        }
}

TEST_CASE("filtration_homology") {
    auto u = builtin("unknot");
    CHECK(filtration_homology(u, 0) == GradedTable{{Grading(0), 1}});
    CHECK(filtration_homology(u, 3) == GradedTable{{Grading(0), 1}});
    CHECK(filtration_homology(u, -1).empty());

    // x contributes at i >= 0; the (1,1,1) pair of figure8 contributes F at
    // grading m - 1 = 0 for i = 0, the (0,0,1) pair at grading -1 for i = -1.
    auto f = builtin("figure8");
    CHECK(filtration_homology(f, -2).empty());
    CHECK(filtration_homology(f, -1) == GradedTable{{Grading(-1), 1}});
    CHECK(filtration_homology(f, 0) == GradedTable{{Grading(0), 2}});
    CHECK(filtration_homology(f, 1) == GradedTable{{Grading(0), 1}});
}

TEST_CASE("knot_numerics") {
    auto u = knot_numerics(builtin("unknot"));
    CHECK(u.tau == 0);
    CHECK(u.genus == 0);
    auto f = knot_numerics(builtin("figure8"));
    CHECK(f.tau == 0);
    CHECK(f.genus == 1);
    auto t = knot_numerics(staircase_torus(3, 1));
    CHECK(t.tau == 1);
    CHECK(t.genus == 1);
    CHECK_THROWS_AS(knot_numerics(builtin("J_in_Y")), DomainError);

    // tau adds; genus adds for the staircase sums.
    for (int n : {3, 5}) {
        auto a = staircase_torus(n, 1), b = staircase_torus(n + 2, 1);
        auto s = knot_numerics(connected_sum_knots(a, b));
        CHECK(s.tau == knot_numerics(a).tau + knot_numerics(b).tau);
        CHECK(s.genus == knot_numerics(a).genus + knot_numerics(b).genus);
        CHECK(knot_numerics(knot_k(n)).genus == n - 1);
    }
}

TEST_CASE("S3 builders have free rank one") {
    for (const auto& k : builders()) {
        if (k.ambient.b1 > 0 || k.base.generators.size() == 4) continue;
        CHECK(homology_decomposition(k.base).towers.size() == 1);
    }
}

TEST_CASE("reduced_basis_form") {
    CHECK(reduced_basis_form(builtin("unknot")).pairs.empty());
    auto f = reduced_basis_form(builtin("figure8"));
    CHECK(f.pairs == std::vector<ReducedPair>{{Grading(1), 1, 1}, {Grading(0), 0, 1}});
    CHECK(mirror_basis_form(f) == f);
    auto k3 = reduced_basis_form(reduce_canonical(knot_k(3)));
    CHECK(k3.pairs.front().m == 2);
    CHECK(k3 == reduced_basis_form(knot_k(3)));
    CHECK_THROWS_AS(reduced_basis_form(staircase_torus(3, 1)), DomainError);
}
