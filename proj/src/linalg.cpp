#include "satbody/linalg.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <sstream>

namespace satbody {

Matrix sample_gaussian_matrix(Index rows, Index cols, double variance, RngStream& rng) {
    if (rows < 1 || cols < 1)
        throw PreconditionError("sample_gaussian_matrix: rows and cols must be >= 1");
    if (!(variance > 0.0))
        throw PreconditionError("sample_gaussian_matrix: variance must be positive");
    const double stddev = std::sqrt(variance);
    Matrix a(rows, cols);
    // Row-major fill so the draw order matches the serialized entry order.
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j)
            a(i, j) = stddev * rng.next_gaussian();
    return a;
}

namespace {

Eigen::JacobiSVD<Matrix> jacobi_svd(const Matrix& a, unsigned options = 0) {
    Eigen::JacobiSVD<Matrix> svd(a, options);
    if (svd.info() != Eigen::Success)
        throw NumericalError("SVD did not converge");
    return svd;
}

} // namespace

Vector singular_values(const Matrix& a) {
    if (a.rows() < 1 || a.cols() < 1)
        throw PreconditionError("singular_values: empty matrix");
    if (!a.allFinite())
        throw PreconditionError("singular_values: non-finite entries");
    if (std::min(a.rows(), a.cols()) <= 16)
        return jacobi_svd(a).singularValues();
    Eigen::BDCSVD<Matrix> svd(a);
    if (svd.info() != Eigen::Success)
        throw NumericalError("SVD did not converge");
    return svd.singularValues();
}

double operator_norm(const Matrix& a) {
    return singular_values(a)(0);
}

Subspace span_of_columns(const Matrix& a) {
    auto svd = jacobi_svd(a, Eigen::ComputeThinU);
    const Vector& sv = svd.singularValues();
    const double s1 = sv(0);
    const double smin = sv(sv.size() - 1);
    if (!(s1 > 0.0) || smin <= 1e-10 * s1) {
        std::ostringstream msg;
        msg << "span_of_columns: rank-deficient input (s_min/s_max = "
            << (s1 > 0.0 ? smin / s1 : 0.0) << ")";
        throw RankDeficientError(msg.str(), s1 > 0.0 ? smin / s1 : 0.0);
    }
    return Subspace{svd.matrixU().leftCols(a.cols())};
}

Matrix projector(const Subspace& s) {
    return s.basis * s.basis.transpose();
}

double projection_distance(const Subspace& s1, const Subspace& s2) {
    if (s1.ambient_dim() != s2.ambient_dim())
        throw PreconditionError("projection_distance: ambient dimensions differ");
    if (s1.dim() != s2.dim())
        throw PreconditionError("projection_distance: subspace dimensions differ");
    return operator_norm(projector(s1) - projector(s2));
}

Subspace sample_grassmann(Index ambient, Index dim, RngStream& rng) {
    if (dim < 1 || dim > ambient)
        throw PreconditionError("sample_grassmann: need 1 <= dim <= ambient");
    // A Gaussian matrix is a.s. full rank; its orthonormalized span is
    // Haar-distributed by rotational invariance.
    return span_of_columns(sample_gaussian_matrix(ambient, dim, 1.0, rng));
}

} // namespace satbody
