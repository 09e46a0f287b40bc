#pragma once

// Internal dense solvers for the small systems the library needs (normal
// equations, interaction matrices). Not installed.

#include <optional>
#include <vector>

#include "memeflow/matrix.hpp"

namespace memeflow::detail {

// LU solve with partial pivoting; nullopt when a pivot collapses.
std::optional<std::vector<double>> lu_solve(Matrix a, std::vector<double> b);

std::optional<Matrix> invert(const Matrix& a);

double inf_norm(const Matrix& a);

// ||A||_inf * ||A^-1||_inf via the explicit inverse (fine at these sizes);
// +infinity when the matrix does not invert.
double condition_inf(const Matrix& a);

// Monic characteristic polynomial coefficients [1, c1, ..., cN] of det(xI - A)
// by the Faddeev-LeVerrier recurrence.
std::vector<double> characteristic_polynomial(const Matrix& a);

enum class RouthVerdict { AllLeftHalfPlane, RightHalfPlaneRoot, Degenerate };

// Routh-Hurwitz sign test on a monic polynomial.
RouthVerdict routh_hurwitz(const std::vector<double>& monic_coeffs);

}  // namespace memeflow::detail
