#include "reducer.hpp"

#include <algorithm>
#include <numeric>

namespace floerforge::detail {

Reducer::Reducer(const FreeComplex& c) {
    std::vector<std::size_t> order(c.generators.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return c.generators[a].name < c.generators[b].name;
    });
    for (auto i : order) {
        index_[c.generators[i].name] = static_cast<int>(names_.size());
        names_.push_back(c.generators[i].name);
        maslov_.push_back(c.generators[i].maslov);
    }
    out_.resize(names_.size());
    in_.resize(names_.size());
    alive_.assign(names_.size(), 1);
    for (const auto& a : c.differential) {
        int x = index_.at(a.from), y = index_.at(a.to);
        toggle(x, y, a.upower);
    }
}

int Reducer::index_of(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

void Reducer::note_entry(int x, int y, int p, bool present) {
    if (allowed_ && p == 0 && (*allowed_)(x, y)) {
        if (present) units_.emplace(x, y);
        else units_.erase({x, y});
    }
    if (tracking_all_) {
        if (present) by_power_.emplace(p, x, y);
        else by_power_.erase({p, x, y});
    }
}

void Reducer::toggle(int x, int y, int p) {
    auto it = out_[x].find(y);
    if (it != out_[x].end()) {
        note_entry(x, y, it->second, false);
        out_[x].erase(it);
        in_[y].erase(x);
    } else {
        out_[x][y] = p;
        in_[y][x] = p;
        note_entry(x, y, p, true);
    }
}

void Reducer::remove(int v) {
    for (auto [w, p] : out_[v]) {
        note_entry(v, w, p, false);
        in_[w].erase(v);
    }
    for (auto [u, p] : in_[v]) {
        note_entry(u, v, p, false);
        out_[u].erase(v);
    }
    out_[v].clear();
    in_[v].clear();
    alive_[v] = 0;
}

void Reducer::cancel_units(const std::function<bool(int, int)>& allowed) {
    allowed_ = &allowed;
    units_.clear();
    for (int x = 0; x < static_cast<int>(size()); ++x)
        for (auto [y, p] : out_[x])
            if (p == 0 && allowed(x, y)) units_.emplace(x, y);
    while (!units_.empty()) {
        auto [x, y] = *units_.begin();
        // Replace every z -> y by the zig-zag through x before dropping x, y.
        std::vector<std::pair<int, int>> sources, targets;
        for (auto [z, pz] : in_[y])
            if (z != x) sources.emplace_back(z, pz);
        for (auto [w, pw] : out_[x])
            if (w != y) targets.emplace_back(w, pw);
        for (auto [z, pz] : sources)
            for (auto [w, pw] : targets) toggle(z, w, pz + pw);
        remove(x);
        remove(y);
    }
    allowed_ = nullptr;
}

FUDecomposition Reducer::smith() {
    tracking_all_ = true;
    by_power_.clear();
    for (int x = 0; x < static_cast<int>(size()); ++x)
        for (auto [y, p] : out_[x]) by_power_.emplace(p, x, y);
    FUDecomposition h;
    while (!by_power_.empty()) {
        auto [p, x, y] = *by_power_.begin();
        std::vector<std::pair<int, int>> sources, targets(out_[x].begin(), out_[x].end());
        for (auto [z, pz] : in_[y])
            if (z != x) sources.emplace_back(z, pz);
        for (auto [z, pz] : sources) {
            // z' = z + U^e x clears z -> y; anything hitting z now also hits x.
            int e = pz - p;
            for (auto [w, pw] : targets) toggle(z, w, pw + e);
            std::vector<std::pair<int, int>> into(in_[z].begin(), in_[z].end());
            for (auto [u, pu] : into) toggle(u, x, pu + e);
        }
        h.torsion.push_back({maslov_[y], p});
        remove(x);
        remove(y);
    }
    tracking_all_ = false;
    for (int v = 0; v < static_cast<int>(size()); ++v)
        if (alive_[v]) h.towers.push_back(maslov_[v]);
    h.normalize();
    return h;
}

FreeComplex Reducer::snapshot() const {
    FreeComplex c;
    for (int v = 0; v < static_cast<int>(size()); ++v) {
        if (!alive_[v]) continue;
        c.generators.push_back({names_[v], maslov_[v]});
        for (auto [w, p] : out_[v]) c.differential.push_back({names_[v], names_[w], p});
    }
    return c;
}

}  // namespace floerforge::detail
