#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "ingham/exponents.hpp"
#include "ingham/numeric.hpp"
#include "ingham/sums.hpp"

namespace ingham {

using HermitianMatrix = Eigen::MatrixXcd;

/// Coefficient-side energy replacing sum |x_k|^2 under the weak gap:
///
///   Q(x) = sum_{A1} |x_k|^2
///        + sum_{A2} ( |x_k + x_{k+1}|^2 + (omega_{k+1} - omega_k)^2 (|x_k|^2 + |x_{k+1}|^2) )
///
/// Both A2 terms sit inside the A2 sum; this is the grouping the direct
/// inequality chain produces.
double q_form(const GapClassification& cls, const ExponentSequence& seq, std::span<const cplx> coeffs);

/// |x'|^2 + Q(base).
double q_prime(const AugmentedExpSum& aug, const GapClassification& cls);

/// Dense matrix with v^* M v = Q(v): 1 on A1 diagonals and
/// [[1 + d^2, 1], [1, 1 + d^2]] on each lead/partner block.
HermitianMatrix q_matrix(const GapClassification& cls, const ExponentSequence& seq);

/// Principal submatrix of q_matrix on the given (sorted) indices.
HermitianMatrix q_matrix(const GapClassification& cls, const ExponentSequence& seq,
                         std::span<const std::size_t> active);

nlohmann::json matrix_to_json(const HermitianMatrix& m);

} // namespace ingham
