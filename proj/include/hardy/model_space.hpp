#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "hardy/disk_geometry.hpp"

namespace hardy {

// Matrix with entries sqrt(weights_i) e_k(points_i), where e_0, e_1, ... is the orthonormal
// Malmquist-Takenaka basis of the model space with the given zeros:
// e_k(z) = sqrt(1 - |a_k|^2) / (1 - conj(a_k) z) prod_{j<k} (z - a_j) / (1 - conj(a_j) z).
Eigen::MatrixXcd model_space_basis(std::span<const disk_point> zeros,
                                   std::span<const disk_point> points,
                                   std::span<const double> weights);

// Singular values of a tall matrix, largest first (Householder QR, then SVD of R).
std::vector<double> tall_singular_values(const Eigen::MatrixXcd& matrix);

}  // namespace hardy
