#include "hdbound/norms.hpp"

#include <cmath>

#include "hdbound/errors.hpp"

namespace hdbound {

double vec_norm(const Eigen::VectorXd& v, VectorNorm kind) {
    if (v.size() == 0) throw DimensionError("vec_norm: empty vector");
    switch (kind) {
        case VectorNorm::L1:
            return v.cwiseAbs().sum();
        case VectorNorm::L2:
            return v.norm();
        case VectorNorm::LInf:
            return v.cwiseAbs().maxCoeff();
    }
    throw NumericError("vec_norm: unknown norm kind");
}

double mat_norm(const Eigen::MatrixXd& A, MatrixNorm kind) {
    if (A.rows() == 0 || A.cols() == 0) throw DimensionError("mat_norm: empty matrix");
    switch (kind) {
        case MatrixNorm::ColSum:
            return A.cwiseAbs().colwise().sum().maxCoeff();
        case MatrixNorm::Frobenius:
            return A.norm();
        case MatrixNorm::RowSum:
            return A.cwiseAbs().rowwise().sum().maxCoeff();
        case MatrixNorm::MaxAbs:
            return A.cwiseAbs().maxCoeff();
    }
    throw NumericError("mat_norm: unknown norm kind");
}

MatrixNorm compatible_matrix_norm(VectorNorm q) {
    switch (q) {
        case VectorNorm::L1:
            return MatrixNorm::ColSum;
        case VectorNorm::L2:
            return MatrixNorm::Frobenius;
        case VectorNorm::LInf:
            return MatrixNorm::RowSum;
    }
    throw NumericError("compatible_matrix_norm: unknown norm kind");
}

CompatReport check_compatibility(const Eigen::MatrixXd& A,
                                 const Eigen::VectorXd& x, VectorNorm q) {
    if (A.cols() != x.size())
        throw DimensionError("check_compatibility: A has " + std::to_string(A.cols()) +
                             " columns but x has length " + std::to_string(x.size()));
    CompatReport rep;
    rep.lhs = vec_norm(A * x, q);
    rep.rhs = mat_norm(A, compatible_matrix_norm(q)) * vec_norm(x, q);
    rep.holds = rep.lhs <= rep.rhs * (1.0 + 1e-12) + 1e-12;
    return rep;
}

const char* to_string(VectorNorm q) {
    switch (q) {
        case VectorNorm::L1:
            return "l1";
        case VectorNorm::L2:
            return "l2";
        case VectorNorm::LInf:
            return "linf";
    }
    return "?";
}

VectorNorm vector_norm_from_string(const std::string& s) {
    if (s == "1" || s == "l1" || s == "L1") return VectorNorm::L1;
    if (s == "2" || s == "l2" || s == "L2") return VectorNorm::L2;
    if (s == "inf" || s == "linf" || s == "LInf" || s == "Inf") return VectorNorm::LInf;
    throw ParseError("unknown vector norm '" + s + "' (expected 1, 2 or inf)");
}

} // namespace hdbound
