#include "linalg.hpp"

namespace sgf::syzygy {

std::vector<std::size_t> rref(Matrix& m) {
    const Field& F = *m.field;
    const unsigned k = m.k();
    std::vector<std::size_t> pivots;
    std::vector<std::uint64_t> inv(k), factor(k);
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows && F.fis_zero(m.at(pivot, col))) ++pivot;
        if (pivot == m.rows) continue;
        if (pivot != row) {
            for (std::size_t c = col; c < m.cols; ++c) {
                for (unsigned w = 0; w < k; ++w) std::swap(m.at(row, c)[w], m.at(pivot, c)[w]);
            }
        }
        F.finv(m.at(row, col), inv.data());
        for (std::size_t c = col; c < m.cols; ++c) F.fmul(m.at(row, c), inv.data(), m.at(row, c));
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == row || F.fis_zero(m.at(r, col))) continue;
            F.fcopy(m.at(r, col), factor.data());
            for (std::size_t c = col; c < m.cols; ++c) F.fsubmul(factor.data(), m.at(row, c), m.at(r, c));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(Matrix m) { return rref(m).size(); }

std::vector<std::vector<std::uint64_t>> kernel_basis(Matrix m) {
    const Field& F = *m.field;
    const unsigned k = m.k();
    const std::size_t cols = m.cols;
    std::vector<std::size_t> pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<std::uint64_t>> basis;
    std::vector<std::uint64_t> tmp(k);
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<std::uint64_t> v(cols * k, 0);
        F.fone(v.data() + free_col * k);
        // pivot rows give the dependent entries: x_pivot = -coef
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            const std::uint64_t* coef = m.at(r, free_col);
            if (F.fis_zero(coef)) continue;
            F.fneg(coef, tmp.data());
            F.fcopy(tmp.data(), v.data() + pivots[r] * k);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

void reduce_against(const Matrix& rr, const std::vector<std::size_t>& pivots,
                    std::vector<std::uint64_t>& vec) {
    const Field& F = *rr.field;
    const unsigned k = rr.k();
    std::vector<std::uint64_t> factor(k);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        const std::uint64_t* lead = vec.data() + pivots[r] * k;
        if (F.fis_zero(lead)) continue;
        F.fcopy(lead, factor.data());
        for (std::size_t c = 0; c < rr.cols; ++c)
            F.fsubmul(factor.data(), rr.at(r, c), vec.data() + c * k);
    }
}

}  // namespace sgf::syzygy
