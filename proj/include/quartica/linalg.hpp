#pragma once

// Exact dense linear algebra over a tower field, sized for the small systems
// the kernel solves (jet conditions, Gram ranks, evaluation matrices).

#include "quartica/tower.hpp"

#include <vector>

namespace quartica {

using Matrix = std::vector<std::vector<FieldElement>>;

// Rank by fraction-free elimination: rows are cleared of denominators first,
// then Bareiss keeps every intermediate entry a minor of the integer matrix.
int matrix_rank(Matrix m);

// Basis of the right kernel, from the reduced row echelon form; each basis
// vector has a 1 in its free column, so the result is deterministic.
std::vector<std::vector<FieldElement>> kernel_basis(Matrix m, const TowerPtr& tower);

} // namespace quartica
