#pragma once

#include <Eigen/Dense>

#include "satbody/errors.hpp"
#include "satbody/rng.hpp"

namespace satbody {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// A linear subspace of R^ambient stored as an orthonormal basis of
/// its range (ambient x dim, basis^T basis = I to 1e-10).
struct Subspace {
    Matrix basis;

    Index ambient_dim() const { return basis.rows(); }
    Index dim() const { return basis.cols(); }
};

/// i.i.d. centered Gaussian entries with the given variance.
Matrix sample_gaussian_matrix(Index rows, Index cols, double variance, RngStream& rng);

/// Singular values in non-increasing order. Throws NumericalError if the
/// decomposition does not converge.
Vector singular_values(const Matrix& a);

/// Largest singular value (operator norm w.r.t. Euclidean norms).
double operator_norm(const Matrix& a);

/// Orthonormal basis of the column span. Requires full column rank
/// (s_min > 1e-10 * s_max), otherwise throws RankDeficientError carrying
/// the singular-value ratio.
Subspace span_of_columns(const Matrix& a);

/// Orthogonal projector basis * basis^T onto the subspace.
Matrix projector(const Subspace& s);

/// Operator norm ||P_1 - P_2|| of the difference of the two orthogonal
/// projectors. Requires equal ambient dimension and equal dim.
double projection_distance(const Subspace& s1, const Subspace& s2);

/// Haar-uniform random element of the Grassmannian G_{ambient,dim},
/// realized as the orthonormalized span of a Gaussian matrix.
Subspace sample_grassmann(Index ambient, Index dim, RngStream& rng);

} // namespace satbody
