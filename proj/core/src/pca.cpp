#include <Eigen/Eigenvalues>
#include <stdexcept>

#include "segmint/profiling.hpp"

namespace segmint {

PcaResult pca_project(const Eigen::MatrixXd& matrix, int components) {
    const Eigen::Index n = matrix.rows();
    const Eigen::Index d = matrix.cols();
    if (n < 2 || d < 1) throw std::invalid_argument("pca_project: need n >= 2 and d >= 1");
    if (components < 1 || components > std::min<Eigen::Index>(n, d))
        throw std::invalid_argument("pca_project: components must be in [1, min(n, d)]");

    Eigen::MatrixXd centered = matrix.rowwise() - matrix.colwise().mean();
    Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("pca_project: eigen decomposition failed");

    // eigenvalues come back ascending; take the top `components` descending
    PcaResult result;
    result.total_variance = cov.trace();
    result.explained_variance.resize(components);
    result.loadings.resize(d, components);
    for (int c = 0; c < components; ++c) {
        const Eigen::Index src = d - 1 - c;
        result.explained_variance(c) = solver.eigenvalues()(src);
        Eigen::VectorXd v = solver.eigenvectors().col(src);
        // deterministic orientation: largest-|coefficient| entry positive
        Eigen::Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (v(arg) < 0.0) v = -v;
        result.loadings.col(c) = v;
    }
    result.scores = centered * result.loadings;
    return result;
}

}  // namespace segmint
