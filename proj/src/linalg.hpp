#pragma once

#include "sgf/poly.hpp"

#include <cstdint>
#include <vector>

// Dense exact matrices over a finite field; only what Gaussian elimination
// needs. Rows index monomials of a graded piece, columns index the domain
// basis of an evaluation map.

namespace sgf::syzygy {

using gf::Field;
using gf::FieldPtr;

struct Matrix {
    FieldPtr field;
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint64_t> data;  // row-major, k words per entry

    Matrix(FieldPtr f, std::size_t r, std::size_t c)
        : field(std::move(f)), rows(r), cols(c), data(r * c * field->deg(), 0) {}

    unsigned k() const { return field->deg(); }
    std::uint64_t* at(std::size_t r, std::size_t c) { return data.data() + (r * cols + c) * k(); }
    const std::uint64_t* at(std::size_t r, std::size_t c) const {
        return data.data() + (r * cols + c) * k();
    }
};

/// In-place reduced row echelon form; returns pivot columns in order.
std::vector<std::size_t> rref(Matrix& m);

std::size_t rank(Matrix m);

/// Canonical kernel basis from the RREF: one vector per free column, ascending
/// free-column order, unit entry at the free column. Vectors are flat (cols*k).
std::vector<std::vector<std::uint64_t>> kernel_basis(Matrix m);

/// Reduces `vec` against the rows of an RREF matrix (in place).
void reduce_against(const Matrix& rref_rows, const std::vector<std::size_t>& pivots,
                    std::vector<std::uint64_t>& vec);

}  // namespace sgf::syzygy
