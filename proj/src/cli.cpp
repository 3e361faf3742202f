#include "floerforge/cli.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>

#ifndef FLOERFORGE_CORPUS_DIR
#define FLOERFORGE_CORPUS_DIR "corpus"
#endif

namespace floerforge::cli {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Serialization

Json to_json(const Grading& g) { return format_grading(g); }

Json to_json(const FreeComplex& c) {
    Json gens = Json::array(), diff = Json::array();
    for (const auto& g : c.generators) gens.push_back({{"name", g.name}, {"maslov", to_json(g.maslov)}});
    for (const auto& a : c.differential) diff.push_back({{"from", a.from}, {"to", a.to}, {"upower", a.upower}});
    return {{"generators", gens}, {"differential", diff}};
}

Json to_json(const FUDecomposition& d) {
    Json towers = Json::array(), torsion = Json::array();
    for (const auto& t : d.towers) towers.push_back(to_json(t));
    for (const auto& t : d.torsion) torsion.push_back({{"grading", to_json(t.top)}, {"length", t.length}});
    return {{"towers", towers}, {"torsion", torsion}};
}

Json to_json(const KnotComplex& k) {
    Json j = to_json(k.base);
    j["alexander"] = k.alexander;
    if (k.flip) {
        Json pairs = Json::array();
        for (const auto& [a, b] : *k.flip) pairs.push_back({a, b});
        j["flip"] = pairs;
    }
    j["ambient"] = {{"name", k.ambient.name}, {"b1", k.ambient.b1}, {"reduced_trivial", k.ambient.reduced_trivial}};
    return j;
}

Json to_json(const HFPlusResult& r) {
    Json j = to_json(r.decomposition);
    j["spinc"] = r.spinc;
    Json d = Json::array();
    for (const auto& g : r.d_invariants) d.push_back(to_json(g));
    j["d_invariants"] = d;
    return j;
}

namespace {

Json bigraded(const BigradedTable& t) {
    Json rows = Json::array();
    for (auto it = t.rbegin(); it != t.rend(); ++it)
        rows.push_back({{"maslov", to_json(it->first.first)}, {"alexander", it->first.second}, {"rank", it->second}});
    return rows;
}

Json rank_json(const Rank& r) { return r.infinite ? Json("inf") : Json(r.value); }

template <class T>
Json optional_json(const std::optional<T>& v) {
    if (!v) return nullptr;
    if constexpr (std::is_same_v<T, Grading>) return to_json(*v);
    else return Json(*v);
}

}  // namespace

Json to_json(const HFKResult& r) {
    return {{"full", bigraded(r.full)}, {"reduced", r.reduced ? bigraded(*r.reduced) : Json(nullptr)}};
}

Json to_json(const EndFloerReport& r) {
    Json per = Json::array();
    for (auto it = r.per_grading.rbegin(); it != r.per_grading.rend(); ++it)
        per.push_back({{"grading", to_json(it->first)}, {"rank", rank_json(it->second.rank)},
                       {"tag", to_string(it->second.tag)}});
    return {{"per_grading", per},
            {"max_nontrivial_grading", optional_json(r.max_grading)},
            {"vanishes", optional_json(r.vanishes)},
            {"narrative", r.narrative}};
}

Json to_json(const SliceR4Spec& s) {
    return {{"knot", to_json(s.knot)},
            {"handle", {{"kind", to_string(s.handle.kind)}, {"signs", s.handle.signs}}},
            {"orientation", s.orientation},
            {"label", s.disk_label}};
}

Json to_json(const DistinguishVerdict& v) { return {{"distinct", v.distinct}, {"witness", v.witness}}; }

Grading grading_from_json(const Json& j) {
    try {
        if (j.is_number_integer()) return Grading(j.get<std::int64_t>());
        return parse_grading(j.get<std::string>());
    } catch (const std::exception& e) {
        throw UsageError("bad grading " + j.dump() + ": " + e.what());
    }
}

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw UsageError(std::string("missing field '") + key + "'");
    return j.at(key);
}

template <class T>
T get_as(const Json& j, const char* what) {
    try {
        return j.get<T>();
    } catch (const Json::exception&) {
        throw UsageError(std::string("field '") + what + "' has the wrong type");
    }
}

}  // namespace

FreeComplex free_complex_from_json(const Json& j) {
    FreeComplex c;
    for (const auto& g : field(j, "generators"))
        c.generators.push_back({get_as<std::string>(field(g, "name"), "name"), grading_from_json(field(g, "maslov"))});
    for (const auto& a : field(j, "differential"))
        c.differential.push_back({get_as<std::string>(field(a, "from"), "from"), get_as<std::string>(field(a, "to"), "to"),
                                  get_as<int>(field(a, "upower"), "upower")});
    return c;
}

FUDecomposition decomposition_from_json(const Json& j) {
    FUDecomposition d;
    for (const auto& t : field(j, "towers")) d.towers.push_back(grading_from_json(t));
    for (const auto& t : field(j, "torsion"))
        d.torsion.push_back({grading_from_json(field(t, "grading")), get_as<int>(field(t, "length"), "length")});
    d.normalize();
    return d;
}

KnotComplex knot_from_json(const Json& j) {
    KnotComplex k;
    k.base = free_complex_from_json(j);
    k.alexander = get_as<std::map<std::string, int>>(field(j, "alexander"), "alexander");
    if (j.contains("flip") && !j.at("flip").is_null()) {
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto& p : j.at("flip")) {
            auto v = get_as<std::vector<std::string>>(p, "flip");
            if (v.size() != 2) throw UsageError("flip entries must be pairs");
            pairs.emplace_back(v[0], v[1]);
        }
        k.flip = pairs;
    }
    if (j.contains("ambient")) {
        const auto& a = j.at("ambient");
        k.ambient = {get_as<std::string>(field(a, "name"), "name"), get_as<int>(field(a, "b1"), "b1"),
                     get_as<bool>(field(a, "reduced_trivial"), "reduced_trivial")};
    }
    return k;
}

HFPlusResult hf_plus_from_json(const Json& j) {
    return make_result(decomposition_from_json(j), get_as<std::string>(field(j, "spinc"), "spinc"));
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Files

fs::path corpus_dir() {
    if (const char* env = std::getenv("FLOERFORGE_CORPUS"); env && *env) return env;
    return FLOERFORGE_CORPUS_DIR;
}

Json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw UsageError("cannot parse " + path.string() + ": " + e.what());
    }
}

namespace {

// Existing path, else the corpus entry of that name (".json" optional).
fs::path resolve(const fs::path& path, const fs::path& base = {}) {
    if (fs::exists(path)) return path;
    if (path.is_relative()) {
        if (!base.empty() && fs::exists(base / path)) return base / path;
        for (auto candidate : {corpus_dir() / path, corpus_dir() / path.filename()}) {
            if (fs::exists(candidate)) return candidate;
            candidate += ".json";
            if (fs::exists(candidate)) return candidate;
        }
    }
    throw UsageError("no such file: " + path.string());
}

}  // namespace

KnotComplex load_knot(const fs::path& path) { return knot_from_json(read_json(resolve(path))); }

std::vector<std::pair<std::string, KnotComplex>> corpus_entries(const fs::path& dir) {
    std::vector<fs::path> files;
    std::error_code ec;
    for (const auto& e : fs::directory_iterator(dir, ec))
        if (e.path().extension() == ".json") files.push_back(e.path());
    if (ec) throw UsageError("cannot read corpus " + dir.string());
    std::sort(files.begin(), files.end());
    std::vector<std::pair<std::string, KnotComplex>> out;
    for (const auto& f : files) out.emplace_back(f.stem().string(), knot_from_json(read_json(f)));
    return out;
}

std::vector<SliceR4Spec> slice_specs_from_json(const Json& j, const fs::path& base) {
    std::vector<Json> items;
    if (j.is_object() && j.contains("operands")) {
        for (const auto& op : j.at("operands")) items.push_back(op);
    } else {
        items.push_back(j);
    }
    if (items.empty()) throw UsageError("spec has no operands");
    std::vector<SliceR4Spec> out;
    for (const auto& item : items) {
        SliceR4Spec s;
        const auto& knot = field(item, "knot");
        s.knot = knot.is_string() ? knot_from_json(read_json(resolve(knot.get<std::string>(), base))) : knot_from_json(knot);
        if (item.contains("handle")) {
            const auto& h = item.at("handle");
            if (h.is_string()) {
                s.handle.kind = parse_handle_kind(h.get<std::string>());
            } else {
                s.handle.kind = parse_handle_kind(get_as<std::string>(field(h, "kind"), "kind"));
                if (h.contains("signs")) s.handle.signs = get_as<std::vector<int>>(h.at("signs"), "signs");
            }
        }
        if (item.contains("orientation")) s.orientation = get_as<int>(item.at("orientation"), "orientation");
        if (item.contains("label")) s.disk_label = get_as<std::string>(item.at("label"), "label");
        out.push_back(std::move(s));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tables

namespace {

std::string aligned(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t c = 0; c < r.size(); ++c) {
            if (c) os << "  ";
            if (c + 1 == r.size() && c > 0 && width[c] > 12) os << r[c];
            else os << std::setw(static_cast<int>(width[c])) << r[c];
        }
        os << "\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
    return os.str();
}

std::string summand_name(int length) { return length == 1 ? "F" : "F[U]/U^" + std::to_string(length); }

}  // namespace

std::string table(const HFPlusResult& r) {
    std::vector<std::pair<Grading, std::string>> entries;
    for (const auto& t : r.decomposition.towers) entries.emplace_back(t, "T+");
    for (const auto& t : r.decomposition.torsion) entries.emplace_back(t.top, summand_name(t.length));
    std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<std::vector<std::string>> rows;
    for (const auto& [g, s] : entries) rows.push_back({format_grading(g), s});
    std::string d;
    for (const auto& g : r.d_invariants) d += (d.empty() ? "" : ", ") + format_grading(g);
    return "spin^c " + r.spinc + "\n" + aligned({"grading", "summand"}, rows) + "d-invariants: " + d + "\n";
}

std::string table(const HFKResult& r) {
    auto one = [](const BigradedTable& t) {
        std::vector<std::vector<std::string>> rows;
        for (auto it = t.rbegin(); it != t.rend(); ++it)
            rows.push_back({format_grading(it->first.first), std::to_string(it->first.second), std::to_string(it->second)});
        return aligned({"maslov", "alexander", "rank"}, rows);
    };
    std::string out = one(r.full);
    if (r.reduced) out += "reduced\n" + one(*r.reduced);
    return out;
}

std::string table(const EndFloerReport& r) {
    std::vector<std::vector<std::string>> rows;
    for (auto it = r.per_grading.rbegin(); it != r.per_grading.rend(); ++it)
        rows.push_back({format_grading(it->first), to_string(it->second.rank), to_string(it->second.tag)});
    std::ostringstream os;
    os << "vanishes: " << (r.vanishes ? (*r.vanishes ? "yes" : "no") : "undetermined") << "\n";
    os << "max grading: " << (r.max_grading ? format_grading(*r.max_grading) : "none") << "\n";
    if (!rows.empty()) os << aligned({"grading", "rank", "tag"}, rows);
    for (const auto& n : r.narrative) os << "- " << n << "\n";
    return os.str();
}

std::string table(const std::vector<VerifyRow>& rows) {
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : rows) cells.push_back({std::to_string(r.id), r.name, r.pass ? "pass" : "FAIL"});
    std::istringstream lines(aligned({"#", "criterion", "verdict"}, cells));
    std::ostringstream os;
    std::string line;
    std::getline(lines, line);
    os << line << "\n";
    for (const auto& r : rows) {
        std::getline(lines, line);
        os << line << "\n    expected: " << r.expected << "\n";
        if (!r.pass) os << "    actual:   " << r.actual << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Verification suite

namespace {

std::string describe(const FUDecomposition& d) {
    std::map<std::pair<Grading, int>, int, std::greater<>> counts;  // length 0 marks a tower
    for (const auto& t : d.towers) ++counts[{t, 0}];
    for (const auto& t : d.torsion) ++counts[{t.top, t.length}];
    std::string out;
    for (const auto& [key, count] : counts) {
        std::string s = (key.second == 0 ? "T" : summand_name(key.second)) + "(" + format_grading(key.first) + ")";
        if (count > 1) s += "^" + std::to_string(count);
        out += (out.empty() ? "" : " + ") + s;
    }
    return out.empty() ? "0" : out;
}

FUDecomposition decomposition(std::vector<Grading> towers, std::vector<TorsionSummand> torsion = {}) {
    FUDecomposition d{std::move(towers), std::move(torsion)};
    d.normalize();
    return d;
}

struct Check {
    std::vector<std::string> expected, actual;
    bool pass = true;

    void eq(const std::string& label, const std::string& want, const std::string& got) {
        expected.push_back(label + " " + want);
        if (want != got) {
            pass = false;
            actual.push_back(label + " " + got);
        }
    }
    void that(const std::string& label, bool ok) {
        expected.push_back(label);
        if (!ok) {
            pass = false;
            actual.push_back("not " + label);
        }
    }
};

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : "; ") + s;
    return out;
}

KnotComplex corpus_knot(const fs::path& corpus, const std::string& name) {
    return knot_from_json(read_json(corpus / (name + ".json")));
}

HFPlusResult s1s2() { return make_result(decomposition({halves(1), halves(-1)}), "torsion"); }

std::vector<Grading> box_parameters(const KnotComplex& k) {
    auto split = split_boxes(k);
    if (!split) throw DomainError("complex does not split into boxes");
    std::vector<Grading> ks;
    for (const auto& b : split->boxes) {
        if (b.j != 0) throw DomainError("box with nonzero offset");
        ks.push_back(b.k);
    }
    return ks;
}

GradedTable red(const HFPlusResult& r) { return extract_invariants(r).hf_red; }

int total(const GradedTable& t) {
    return std::accumulate(t.begin(), t.end(), 0, [](int s, const auto& kv) { return s + kv.second; });
}

void row_zero_surgery(Check& c, const fs::path& corpus) {
    c.eq("unknot:", describe(decomposition({halves(1), halves(-1)})),
         describe(surgery_hf(corpus_knot(corpus, "unknot"), 0).decomposition));
    c.eq("trefoil:", describe(decomposition({halves(-3), halves(-1)})),
         describe(surgery_hf(corpus_knot(corpus, "trefoil"), 0).decomposition));
    c.eq("figure8:", describe(decomposition({halves(1), halves(-1)}, {{halves(-1), 1}})),
         describe(surgery_hf(corpus_knot(corpus, "figure8"), 0).decomposition));
}

void row_j_in_y(Check& c, const fs::path& corpus) {
    auto j = corpus_knot(corpus, "j_in_y");
    auto surgered = surgery_hf(j, -1);
    c.eq("Y_-1(J):", describe(decomposition({halves(1), halves(-1)})), describe(surgered.decomposition));
    auto ambient = make_result(plus_presentation(homology_decomposition(j.base), Convention::minus), "torsion");
    auto has = [](const HFPlusResult& r, const Grading& g) {
        return std::find(r.d_invariants.begin(), r.d_invariants.end(), g) != r.d_invariants.end();
    };
    c.that("d_-1/2(Y) = -1/2", has(ambient, halves(-1)));
    c.that("d_-1/2(Y_-1(J)) = -1/2", has(surgered, halves(-1)));
}

struct LemmaItems {
    FUDecomposition formula[3];
    FUDecomposition chain[3];
};

LemmaItems lemma_items(const KnotComplex& k, const KnotComplex& j) {
    LemmaItems out;
    auto ks = box_parameters(k);
    out.formula[0].towers = {Grading(1), Grading(0), Grading(0), Grading(-1)};
    out.formula[1].towers = out.formula[2].towers = {halves(1), halves(-1)};
    for (const auto& kk : ks) {
        out.formula[0].torsion.push_back({kk, 1});
        out.formula[0].torsion.push_back({kk - Grading(1), 1});
        for (int copy = 0; copy < 2; ++copy)
            for (int i = 1; i <= 2; ++i) {
                out.formula[i].torsion.push_back({kk - halves(1), 1});
                out.formula[i].torsion.push_back({kk - halves(3), 1});
            }
    }
    for (auto& f : out.formula) f.normalize();
    out.chain[0] = connected_sum_floer(surgery_hf(k, 0), s1s2()).decomposition;
    out.chain[1] = surgery_hf(whitehead_double_cfk(reduced_basis_form(k)), 0).decomposition;
    out.chain[2] = surgery_hf(connected_sum_knots(j, k), -1).decomposition;
    return out;
}

void row_lemma(Check& c, const fs::path& corpus) {
    auto j = corpus_knot(corpus, "j_in_y");
    for (int n : {3, 5}) {
        auto items = lemma_items(corpus_knot(corpus, "wh_k" + std::to_string(n)), j);
        for (int i = 0; i < 3; ++i)
            c.eq("Wh(K" + std::to_string(n) + ") item " + std::to_string(i + 1) + ":", describe(items.formula[i]),
                 describe(items.chain[i]));
    }
}

void row_triangle(Check& c, const fs::path& corpus) {
    auto j = corpus_knot(corpus, "j_in_y");
    auto jp = corpus_knot(corpus, "jprime_in_yprime");
    const std::array<Grading, 3> shifts{halves(-1), halves(-1), halves(-1)};
    for (int n : {3, 5}) {
        auto k = corpus_knot(corpus, "wh_k" + std::to_string(n));
        std::string tag = "K" + std::to_string(n);
        auto rb = reduced_basis_form(k);
        auto m1 = red(connected_sum_floer(surgery_hf(k, 0), s1s2()));
        auto pos = exact_triangle_force({m1, red(surgery_hf(whitehead_double_cfk(rb), 0)),
                                         red(surgery_hf(connected_sum_knots(j, k), -1))},
                                        shifts);
        c.eq(tag + " positive F:", to_string(MapVerdict::injective_on_top), to_string(pos.f));

        const int boxes = static_cast<int>(box_parameters(k).size());
        auto m2 = red(surgery_hf(negative_double_cfk(rb), 0));
        auto m3 = red(surgery_hf(connected_sum_knots(jp, k), -1));
        c.eq(tag + " negative ranks:",
             std::to_string(2 * boxes) + "," + std::to_string(4 * boxes) + "," + std::to_string(6 * boxes),
             std::to_string(total(m1)) + "," + std::to_string(total(m2)) + "," + std::to_string(total(m3)));
        auto neg = exact_triangle_force({m1, m2, m3}, shifts);
        c.eq(tag + " negative F:", to_string(MapVerdict::zero), to_string(neg.f));
    }
}

BigradedTable as_table(const FormalGradedRank& f) {
    BigradedTable t;
    for (const auto& [key, r] : f.ranks) t[key] = static_cast<int>(r);
    return t;
}

void row_doubling(Check& c, const fs::path& corpus) {
    for (const std::string name : {"figure8", "k3", "k5"}) {
        auto k = corpus_knot(corpus, name);
        auto num = knot_numerics(k);
        auto dbl = whitehead_double_cfk(reduced_basis_form(k));
        auto hat = hfk_hat(dbl).full;
        auto formula = as_table(hedden_hfk_double(filtration_levels(k, num.genus), num.genus));
        c.that(name + ": per-grading ranks agree", hat == formula);
        int th = 0, tf = 0;
        for (const auto& [key, r] : hat) th += r;
        for (const auto& [key, r] : formula) tf += r;
        c.eq(name + " total:", std::to_string(tf), std::to_string(th));

        const auto reduced = *hfk_hat(k).reduced;
        Grading top = reduced.begin()->first.first;
        for (const auto& [key, r] : reduced) top = std::max(top, key.first);
        auto ks = box_parameters(dbl);
        c.eq(name + " max box:", format_grading(top - Grading(1)), format_grading(*std::max_element(ks.begin(), ks.end())));
        if (name != "figure8") c.eq(name + " max reduced grading:", std::to_string(name[1] - '0' - 1), format_grading(top));
    }
}

SliceR4Spec slice(const KnotComplex& k, HandleKind kind) { return {k, {kind, {}}, 1, "disk"}; }

void row_end_invariants(Check& c, const fs::path& corpus) {
    std::vector<Grading> maxima;
    for (int n : {3, 5, 7, 9}) {
        auto k = corpus_knot(corpus, "k" + std::to_string(n));
        std::string tag = "K" + std::to_string(n);
        auto r = he_slice_r4(slice(k, HandleKind::all_positive_chain));
        c.eq(tag + " CH+ max:", std::to_string(n - 3), r.max_grading ? format_grading(*r.max_grading) : "none");
        if (r.max_grading) {
            maxima.push_back(*r.max_grading);
            const auto& top = r.per_grading.at(*r.max_grading);
            c.eq(tag + " CH+ top rank:", "inf exact", to_string(top.rank) + " " + to_string(top.tag));
        }
        c.that(tag + " CH- vanishes", he_slice_r4(slice(k, HandleKind::all_negative_chain)).vanishes == true);
        auto rr = slice(k, HandleKind::all_positive_chain);
        c.that(tag + " R # Rbar vanishes", he_end_sum({rr, reversed(rr)}).vanishes == true);
        c.that(tag + " Rbar # R vanishes", he_end_sum({reversed(rr), rr}).vanishes == true);
        c.that(tag + " self indistinguishable", !distinguish({rr}, {rr}).distinct);
    }
    std::sort(maxima.begin(), maxima.end());
    c.that("maxima pairwise distinct", std::adjacent_find(maxima.begin(), maxima.end()) == maxima.end());
    c.that("R3 and R5 distinct", distinguish({slice(corpus_knot(corpus, "k3"), HandleKind::all_positive_chain)},
                                             {slice(corpus_knot(corpus, "k5"), HandleKind::all_positive_chain)})
                                     .distinct);
}

std::map<int, long long> alexander_euler(const KnotComplex& k) {
    std::map<int, long long> poly;
    for (const auto& [key, dim] : hfk_hat(k).full)
        poly[key.second] += (integral_value(key.first, "maslov") % 2 == 0 ? 1 : -1) * dim;
    std::erase_if(poly, [](const auto& kv) { return kv.second == 0; });
    return poly;
}

bool symmetric(const BigradedTable& t) {
    for (const auto& [key, dim] : t) {
        auto it = t.find({key.first - 2 * key.second, -key.second});
        if (it == t.end() || it->second != dim) return false;
    }
    return true;
}

// Levels of one module joined by P_{i+1} D P_i^T, P_i random block permutations.
std::pair<ExhaustionSpec, ExhaustionSpec> random_system(std::mt19937& rng) {
    const GradedTable module{{Grading(1), 2}, {Grading(0), 3}, {Grading(-2), 1}};
    const auto basis = canonical_basis(module);
    const std::size_t dim = basis.size();
    auto permutation = [&] {
        std::vector<std::size_t> p(dim);
        std::iota(p.begin(), p.end(), 0);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = i + 1; j < dim; ++j)
                if (basis[i] == basis[j] && std::bernoulli_distribution(0.5)(rng)) std::swap(p[i], p[j]);
        F2Matrix m(dim, dim), t(dim, dim);
        for (std::size_t i = 0; i < dim; ++i) {
            m.set(p[i], i);
            t.set(i, p[i]);
        }
        return std::pair{m, t};
    };
    F2Matrix core(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        if (std::bernoulli_distribution(0.6)(rng)) core.set(i, i);
    const int n = 7;
    std::vector<std::pair<F2Matrix, F2Matrix>> perms;
    for (int i = 0; i < n; ++i) perms.push_back(permutation());
    auto step = [&](const F2Matrix& m) {
        return StepDescriptor{StepKind::explicit_matrix, Grading(0), GradedMatrix{basis, basis, m}};
    };
    ExhaustionSpec full;
    for (int i = 0; i < n; ++i) full.levels.push_back({0, module, "L" + std::to_string(i)});
    for (int i = 0; i + 1 < n; ++i) {
        F2Matrix m(dim, dim);
        if (i < 2) {
            for (std::size_t r = 0; r < dim; ++r)
                for (std::size_t col = 0; col < dim; ++col)
                    if (basis[r] == basis[col] && std::bernoulli_distribution(0.5)(rng)) m.set(r, col);
        } else {
            m = perms[i + 1].first * core * perms[i].second;
        }
        full.steps.push_back(step(m));
    }
    const std::vector<int> keep{0, 3, 5, 6};
    ExhaustionSpec sub;
    for (int i : keep) sub.levels.push_back(full.levels[i]);
    for (std::size_t k = 0; k + 1 < keep.size(); ++k) {
        F2Matrix comp = F2Matrix::identity(dim);
        for (int i = keep[k]; i < keep[k + 1]; ++i) comp = full.steps[i].matrix->entries * comp;
        sub.steps.push_back(step(comp));
    }
    return {full, sub};
}

void row_properties(Check& c, const fs::path& corpus) {
    std::vector<std::pair<std::string, KnotComplex>> builders;
    for (const auto& [name, k] : corpus_entries(corpus)) builders.emplace_back(name, k);
    for (int n : {3, 5, 7, 9})
        for (int sign : {1, -1}) builders.emplace_back("staircase" + std::to_string(sign * n), staircase_torus(n, sign));
    builders.emplace_back("box(1,0)", box(Grading(1), 0));
    builders.emplace_back("box(0,1)", box(Grading(0), 1));

    bool valid = true;
    for (const auto& [name, k] : builders)
        if (!validate_knot(k).ok()) valid = false;
    for (std::size_t i = 0; i < builders.size(); ++i)
        for (std::size_t j = i; j < builders.size(); ++j) {
            if (builders[i].second.base.generators.size() * builders[j].second.base.generators.size() > 400) continue;
            if (!validate_complex(tensor_complexes(builders[i].second.base, builders[j].second.base)).ok()) valid = false;
        }
    c.that("d^2 = 0 and homogeneity on builders and tensors", valid);

    bool sym = true;
    for (const auto& [name, k] : corpus_entries(corpus))
        if (k.flip && !symmetric(hfk_hat(k).full)) sym = false;
    c.that("HFK symmetry on the corpus", sym);

    bool euler = true;
    for (int n : {3, 5, 7, 9}) {
        std::map<int, long long> poly;
        for (int i = 0; i < n; ++i) poly[i - (n - 1) / 2] = i % 2 == 0 ? 1 : -1;
        for (int sign : {1, -1})
            if (alexander_euler(staircase_torus(n, sign)) != poly) euler = false;
    }
    c.that("staircase Euler characteristic is the torus knot Alexander polynomial", euler);

    bool stable = true;
    for (const std::string name : {"unknot", "figure8", "trefoil", "t2_5", "k3", "j_in_y", "jprime_in_yprime"}) {
        auto k = corpus_knot(corpus, name);
        std::vector<int> ns = k.ambient.b1 == 0 ? std::vector<int>{-1, 0, 1} : std::vector<int>{-1};
        for (int n : ns) {
            auto cone = build_cone(k, n);
            int cut = truncation_cutoff(cone.total);
            auto a = truncated_decomposition(cone.total, cut);
            auto b = truncated_decomposition(cone.total, cut + 1);
            if (!(a == b) || !(plus_presentation(a, Convention::minus) == surgery_hf(k, n).decomposition)) stable = false;
        }
    }
    c.that("truncations at N and N+1 agree with the surgery output", stable);

    std::mt19937 rng(20261017);
    bool invariant = true;
    for (int trial = 0; trial < 3; ++trial) {
        auto [full, sub] = random_system(rng);
        if (!same_invariant(colimit(full), colimit(sub))) invariant = false;
    }
    c.that("colimit invariant under subsequences (3 random systems)", invariant);
}

void row_product_end(Check& c, const fs::path& corpus) {
    std::vector<Grading> maxima;
    ClosedManifold s3{unit_s3(), 0, "S3"};
    for (int n : {5, 7}) {
        auto r = slice(corpus_knot(corpus, "k" + std::to_string(n)), HandleKind::all_positive_chain);
        std::string tag = "n=" + std::to_string(n);
        auto data = product_end_data(s3, r, n);
        c.eq(tag + " f(S3):", "-2", data.offset ? format_grading(*data.offset) : "none");
        auto end = he_product_end(s3, r, n);
        auto sl = he_slice_r4(r);
        c.eq(tag + " product max:", sl.max_grading ? format_grading(*sl.max_grading) : "none",
             end.max_grading ? format_grading(*end.max_grading) : "none");
        if (end.max_grading) maxima.push_back(*end.max_grading);
    }
    c.that("distinct n give distinct maxima", maxima.size() == 2 && maxima[0] != maxima[1]);
}

struct RowDef {
    int id;
    const char* name;
    void (*body)(Check&, const fs::path&);
};

const RowDef kRows[] = {
    {1, "surgery: zero-surgery table", row_zero_surgery},
    {2, "surgery: J in Y consistency", row_j_in_y},
    {3, "whitehead: three-manifold levels", row_lemma},
    {4, "surgery: exact triangle forcing", row_triangle},
    {5, "whitehead: doubling oracle", row_doubling},
    {6, "endfloer: end invariants", row_end_invariants},
    {7, "properties: property suites", row_properties},
    {8, "endfloer: product ends", row_product_end},
};

}  // namespace

VerifyRow verify_criterion(int id, const fs::path& corpus) {
    for (const auto& def : kRows) {
        if (def.id != id) continue;
        VerifyRow row{def.id, def.name, "", "", false};
        Check c;
        try {
            def.body(c, corpus);
            row.pass = c.pass;
            row.actual = c.pass ? "as expected" : join(c.actual);
        } catch (const std::exception& e) {
            row.actual = std::string("error: ") + e.what();
        }
        row.expected = join(c.expected);
        return row;
    }
    throw DomainError("no verification criterion " + std::to_string(id));
}

int verify_criteria_count() { return static_cast<int>(std::size(kRows)); }

std::vector<VerifyRow> verify_suite(const std::string& filter, const fs::path& corpus) {
    std::vector<std::future<VerifyRow>> jobs;
    for (const auto& def : kRows) {
        if (!filter.empty() && std::string(def.name).find(filter) == std::string::npos) continue;
        jobs.push_back(std::async(std::launch::async, [id = def.id, corpus] { return verify_criterion(id, corpus); }));
    }
    std::vector<VerifyRow> rows;
    for (auto& j : jobs) rows.push_back(j.get());
    return rows;
}

// ---------------------------------------------------------------------------
// Command line

namespace {

struct Output {
    std::string format = "json";
    std::string path;

    void emit(std::ostream& out, const Json& j, const std::string& text) const {
        const std::string body = format == "table" ? text : dump(j);
        if (path.empty()) {
            out << body;
            return;
        }
        std::ofstream f(path);
        if (!f) throw UsageError("cannot write " + path);
        f << body;
    }
};

void add_output(CLI::App* cmd, Output& o) {
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table"}));
    cmd->add_option("-o,--output", o.path, "Write to this file instead of stdout");
}

int parse_sign(const std::string& s) {
    if (s == "+" || s == "+1" || s == "1") return 1;
    if (s == "-" || s == "-1") return -1;
    throw UsageError("sign must be + or -, got '" + s + "'");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Knot Floer and Heegaard Floer computations over F2[U]", "floerforge"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "floerforge 1.0");

    Output o;
    std::string complex_path, knot_path, handle = "ch+", orientation = "+", sign = "+", spec_a, spec_b, filter;
    std::vector<int> signs;
    int n = 0, iterations = 1, levels = 3;

    auto* cfk = app.add_subcommand("cfk", "Hat knot Floer homology of a complex");
    cfk->add_option("--complex", complex_path, "Knot complex JSON")->required();
    add_output(cfk, o);

    auto* surgery = app.add_subcommand("surgery", "HF+ of integer surgery (n in {-1, 0, 1})");
    surgery->add_option("--complex", complex_path, "Knot complex JSON")->required();
    surgery->add_option("--n", n, "Surgery coefficient")->required();
    add_output(surgery, o);

    auto* dbl = app.add_subcommand("double", "Iterated untwisted Whitehead double");
    dbl->add_option("--complex", complex_path, "Knot complex JSON")->required();
    dbl->add_option("--sign", sign, "Clasp sign, + or -");
    dbl->add_option("--iterations", iterations, "Number of doubles")->check(CLI::PositiveNumber);
    add_output(dbl, o);

    auto* end = app.add_subcommand("endfloer", "End Floer invariant of a slice R4");
    end->add_option("--knot", knot_path, "Slice knot complex JSON")->required();
    end->add_option("--handle", handle, "Casson handle: ch+, ch- or a kind name");
    end->add_option("--signs", signs, "Clasp signs for finite_mixed_then_one_sign")->delimiter(',');
    end->add_option("--orientation", orientation, "+ or -");
    end->add_option("--levels", levels, "Levels in the window")->check(CLI::PositiveNumber);
    add_output(end, o);

    auto* dist = app.add_subcommand("distinguish", "Compare two end sums of slice R4s");
    dist->add_option("--a", spec_a, "First spec JSON")->required();
    dist->add_option("--b", spec_b, "Second spec JSON")->required();
    dist->add_option("--levels", levels, "Levels in the window")->check(CLI::PositiveNumber);
    add_output(dist, o);

    auto* verify = app.add_subcommand("verify", "Run the verification suite");
    verify->add_option("--filter", filter, "Only rows whose name contains this text");
    add_output(verify, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o_out, o_err;
        int code = app.exit(e, o_out, o_err);
        out << o_out.str();
        err << o_err.str();
        if (code == 0) return 0;
        err << app.help();
        return 2;
    }

    try {
        if (*cfk) {
            auto k = load_knot(complex_path);
            auto r = hfk_hat(k);
            Json j = to_json(r);
            if (k.ambient.b1 == 0 && k.ambient.name == "S3") {
                auto num = knot_numerics(k);
                j["tau"] = num.tau;
                j["genus"] = num.genus;
            }
            o.emit(out, j, table(r));
        } else if (*surgery) {
            auto r = surgery_hf(load_knot(complex_path), n);
            o.emit(out, to_json(r), table(r));
        } else if (*dbl) {
            const int s = parse_sign(sign);
            auto k = load_knot(complex_path);
            for (int i = 0; i < iterations; ++i) {
                auto rb = reduced_basis_form(k);
                k = s > 0 ? whitehead_double_cfk(rb) : negative_double_cfk(rb);
            }
            o.emit(out, to_json(k), table(hfk_hat(k)));
        } else if (*end) {
            SliceR4Spec spec{load_knot(knot_path), {parse_handle_kind(handle), signs}, parse_sign(orientation), knot_path};
            auto r = he_slice_r4(spec, levels);
            o.emit(out, to_json(r), table(r));
        } else if (*dist) {
            auto a = slice_specs_from_json(read_json(resolve(spec_a)), fs::path(spec_a).parent_path());
            auto b = slice_specs_from_json(read_json(resolve(spec_b)), fs::path(spec_b).parent_path());
            auto v = distinguish(a, b, levels);
            o.emit(out, to_json(v), std::string(v.distinct ? "distinct" : "indistinguishable") + ": " + v.witness + "\n");
        } else if (*verify) {
            auto rows = verify_suite(filter, corpus_dir());
            Json j = Json::array();
            bool ok = true;
            for (const auto& r : rows) {
                j.push_back({{"id", r.id}, {"name", r.name}, {"expected", r.expected}, {"actual", r.actual}, {"pass", r.pass}});
                ok = ok && r.pass;
            }
            o.emit(out, j, table(rows));
            return ok ? 0 : 1;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace floerforge::cli
