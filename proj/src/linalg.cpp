#include "quartica/linalg.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace quartica {

static void clear_row_denominators(std::vector<FieldElement>& row) {
    BigInt l = 1;
    for (const auto& e : row)
        for (const auto& c : e.coords())
            l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(c));
    if (l == 1) return;
    Rational f(l);
    for (auto& e : row) e = e * f;
}

int matrix_rank(Matrix m) {
    if (m.empty()) return 0;
    for (auto& row : m) clear_row_denominators(row);
    std::size_t rows = m.size(), cols = m[0].size();
    const TowerPtr& t = m[0][0].tower();
    FieldElement prev = FieldElement::one(t);
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pivot = rows;
        for (std::size_t r = row; r < rows; ++r)
            if (!m[r][col].is_zero()) { pivot = r; break; }
        if (pivot == rows) continue;
        std::swap(m[pivot], m[row]);
        for (std::size_t r = row + 1; r < rows; ++r) {
            for (std::size_t c = col + 1; c < cols; ++c)
                m[r][c] = (m[row][col] * m[r][c] - m[r][col] * m[row][c]) / prev;
            m[r][col] = FieldElement::zero(t);
        }
        prev = m[row][col];
        ++row;
    }
    return int(row);
}

std::vector<std::vector<FieldElement>> kernel_basis(Matrix m, const TowerPtr& tower) {
    std::size_t rows = m.size();
    std::size_t cols = rows == 0 ? 0 : m[0].size();
    FieldElement zero = FieldElement::zero(tower);
    FieldElement one = FieldElement::one(tower);

    std::vector<int> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pivot = rows;
        for (std::size_t r = row; r < rows; ++r)
            if (!m[r][col].is_zero()) { pivot = r; break; }
        if (pivot == rows) continue;
        std::swap(m[pivot], m[row]);
        FieldElement inv = m[row][col].inverse();
        for (std::size_t c = col; c < cols; ++c) m[row][c] = m[row][c] * inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row || m[r][col].is_zero()) continue;
            FieldElement f = m[r][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] = m[r][c] - f * m[row][c];
        }
        pivot_col.push_back(int(col));
        ++row;
    }

    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[std::size_t(c)] = true;

    std::vector<std::vector<FieldElement>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<FieldElement> v(cols, zero);
        v[free] = one;
        for (std::size_t r = 0; r < pivot_col.size(); ++r)
            v[std::size_t(pivot_col[r])] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace quartica
