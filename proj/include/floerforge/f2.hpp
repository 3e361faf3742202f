#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <map>
#include <vector>

namespace floerforge {

using BitVec = boost::dynamic_bitset<>;

// Incremental row-echelon basis over F2. Each stored row is keyed by its
// lowest set bit; an optional tag vector tracks how the row was formed.
class Echelon {
public:
    // Reduces v (and tag alongside) against the basis; true when v becomes zero.
    bool reduce(BitVec& v, BitVec* tag = nullptr) const;
    // Adds v if independent; returns whether the rank grew.
    bool insert(BitVec v, BitVec tag = BitVec());
    std::size_t rank() const { return rows_.size(); }

private:
    struct Row {
        BitVec v;
        BitVec tag;
    };
    std::map<std::size_t, Row> rows_;
};

// Kernel of the linear map sending basis vector i to images[i] (all images the
// same length). Returned vectors have length images.size().
std::vector<BitVec> kernel_basis(const std::vector<BitVec>& images);

std::size_t rank_of(const std::vector<BitVec>& vectors);

// Dense F2 matrix; rows index the target, columns the source.
class F2Matrix {
public:
    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols);
    static F2Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool get(std::size_t r, std::size_t c) const { return data_[r][c]; }
    void set(std::size_t r, std::size_t c, bool v = true) { data_[r][c] = v; }

    F2Matrix operator*(const F2Matrix& rhs) const;
    std::size_t rank() const;
    bool operator==(const F2Matrix& other) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<BitVec> data_;
};

}  // namespace floerforge
