#include "hardy/model_space.hpp"

#include <cmath>

#include "hardy/errors.hpp"

namespace hardy {

Eigen::MatrixXcd model_space_basis(std::span<const disk_point> zeros,
                                   std::span<const disk_point> points,
                                   std::span<const double> weights) {
    if (weights.size() != points.size()) {
        throw argument_error("model_space_basis: one weight per point is required");
    }
    std::vector<double> norms(zeros.size());
    for (std::size_t k = 0; k < zeros.size(); ++k) {
        const double d = zeros[k].one_minus_abs2();
        if (!(d > 0.0)) {
            throw domain_error("model_space_basis: zeros must be interior points");
        }
        norms[k] = std::sqrt(d);
    }
    Eigen::MatrixXcd out(points.size(), zeros.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        complex running = std::sqrt(weights[i]);
        for (std::size_t k = 0; k < zeros.size(); ++k) {
            const complex denominator = one_minus_conj_product(zeros[k], points[i]);
            out(i, k) = norms[k] / denominator * running;
            running *= difference(points[i], zeros[k]) / denominator;
        }
    }
    return out;
}

std::vector<double> tall_singular_values(const Eigen::MatrixXcd& matrix) {
    Eigen::MatrixXcd square;
    if (matrix.rows() > matrix.cols()) {
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(matrix);
        square = qr.matrixQR().topRows(matrix.cols()).triangularView<Eigen::Upper>();
    } else {
        square = matrix;
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(square);
    if (svd.info() != Eigen::Success) {
        throw numeric_error("singular value decomposition failed");
    }
    const Eigen::VectorXd s = svd.singularValues();
    return std::vector<double>(s.data(), s.data() + s.size());
}

}  // namespace hardy
