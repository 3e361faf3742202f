#include "floerforge/f2.hpp"

#include <stdexcept>

namespace floerforge {

bool Echelon::reduce(BitVec& v, BitVec* tag) const {
    for (auto p = v.find_first(); p != BitVec::npos; p = v.find_next(p)) {
        auto it = rows_.find(p);
        if (it == rows_.end()) continue;
        v ^= it->second.v;
        if (tag && !it->second.tag.empty()) *tag ^= it->second.tag;
    }
    return v.none();
}

bool Echelon::insert(BitVec v, BitVec tag) {
    // Pivot rows have no bits below their key, so each XOR only touches
    // later positions and one forward pass clears every pivot column.
    if (reduce(v, tag.empty() ? nullptr : &tag)) return false;
    const auto pivot = v.find_first();
    rows_.emplace(pivot, Row{std::move(v), std::move(tag)});
    return true;
}

std::vector<BitVec> kernel_basis(const std::vector<BitVec>& images) {
    const std::size_t n = images.size();
    Echelon ech;
    std::vector<BitVec> out;
    for (std::size_t i = 0; i < n; ++i) {
        BitVec v = images[i];
        BitVec tag(n);
        tag.set(i);
        if (ech.reduce(v, &tag)) {
            out.push_back(std::move(tag));
        } else {
            ech.insert(std::move(v), std::move(tag));
        }
    }
    return out;
}

std::size_t rank_of(const std::vector<BitVec>& vectors) {
    Echelon ech;
    for (const auto& v : vectors) ech.insert(v);
    return ech.rank();
}

F2Matrix::F2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows, BitVec(cols)) {}

F2Matrix F2Matrix::identity(std::size_t n) {
    F2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

F2Matrix F2Matrix::operator*(const F2Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("F2Matrix: dimension mismatch");
    F2Matrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (auto k = data_[r].find_first(); k != BitVec::npos; k = data_[r].find_next(k))
            out.data_[r] ^= rhs.data_[k];
    return out;
}

std::size_t F2Matrix::rank() const { return rank_of(data_); }

}  // namespace floerforge
