#pragma once

#include "floerforge/fualgebra.hpp"

#include <functional>
#include <map>
#include <set>
#include <tuple>
#include <vector>

namespace floerforge::detail {

// Working copy of a free complex indexed in name order, supporting
// cancellation of unit entries and Smith-style pivoting. Entry powers are
// stored explicitly so that changes of basis need no grading arithmetic.
class Reducer {
public:
    explicit Reducer(const FreeComplex& c);

    // Cancels U^0 entries accepted by `allowed` in lexicographic order of
    // (source name, target name) until none remain.
    void cancel_units(const std::function<bool(int, int)>& allowed);

    // Diagonalizes the remaining differential; returns the minus-side homology.
    FUDecomposition smith();

    // Surviving generators with their current differential.
    FreeComplex snapshot() const;

    const std::vector<std::string>& names() const { return names_; }
    bool alive(int v) const { return alive_[v] != 0; }
    std::size_t size() const { return names_.size(); }
    int index_of(const std::string& name) const;

private:
    void toggle(int x, int y, int p);
    void remove(int v);
    void note_entry(int x, int y, int p, bool present);

    std::vector<std::string> names_;
    std::vector<Grading> maslov_;
    std::vector<std::map<int, int>> out_, in_;
    std::vector<char> alive_;
    std::map<std::string, int> index_;

    // Candidate sets maintained during the active phase.
    const std::function<bool(int, int)>* allowed_ = nullptr;
    std::set<std::pair<int, int>> units_;
    bool tracking_all_ = false;
    std::set<std::tuple<int, int, int>> by_power_;
};

}  // namespace floerforge::detail
