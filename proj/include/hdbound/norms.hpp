#pragma once

#include <Eigen/Core>
#include <string>

namespace hdbound {

enum class VectorNorm { L1, L2, LInf };

// MaxAbs is the entrywise maximum |a_ij|, not the maximum row-sum norm;
// that one is RowSum.
enum class MatrixNorm { ColSum, Frobenius, RowSum, MaxAbs };

/// l1 / l2 / linf norm of a nonempty vector.
double vec_norm(const Eigen::VectorXd& v, VectorNorm kind);

/// ColSum = max_j sum_i |a_ij|, Frobenius = sqrt(sum a_ij^2),
/// RowSum = max_i sum_j |a_ij|, MaxAbs = max_ij |a_ij|.
double mat_norm(const Eigen::MatrixXd& A, MatrixNorm kind);

/// The matrix norm q-compatible with a vector norm:
/// ||Ax||_q <= mat_norm(A, compatible_matrix_norm(q)) * ||x||_q.
MatrixNorm compatible_matrix_norm(VectorNorm q);

struct CompatReport {
    double lhs = 0.0; // ||Ax||_q
    double rhs = 0.0; // ||A||_q * ||x||_q
    bool holds = false;
};

/// Evaluates both sides of the compatibility inequality for the given q.
/// holds uses lhs <= rhs * (1 + 1e-12) + 1e-12 to absorb accumulation error.
CompatReport check_compatibility(const Eigen::MatrixXd& A,
                                 const Eigen::VectorXd& x, VectorNorm q);

const char* to_string(VectorNorm q);
VectorNorm vector_norm_from_string(const std::string& s);

} // namespace hdbound
