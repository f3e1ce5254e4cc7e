#pragma once

#include <optional>
#include <vector>

#include "cff/field.hpp"
#include "cff/poly.hpp"

namespace cff {

using Mat = std::vector<std::vector<Elem>>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(const Field& F, Mat& A);
std::size_t rank(const Field& F, Mat A);
Elem det(const Field& F, Mat A);
// Some solution of A x = b, or nullopt when inconsistent.
std::optional<std::vector<Elem>> solve(const Field& F, const Mat& A, const std::vector<Elem>& b);
// Characteristic polynomial det(Z - A) via Hessenberg reduction.
Poly charpoly(const Field& F, Mat A);

}  // namespace cff
