#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "hdbound/estimators.hpp"

namespace hdbound {

/// Numeric CSV; a non-numeric first line is treated as a header and skipped.
Eigen::MatrixXd read_matrix_csv(const std::string& path);

/// Single-column CSV, optional header.
Eigen::VectorXd read_vector_csv(const std::string& path);

/// Header line, first column y, remaining columns x1..xp.
Dataset read_dataset_csv(const std::string& path);

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& A,
                      const std::vector<std::string>& header = {});
void write_vector_csv(const std::string& path, const Eigen::VectorXd& v,
                      const std::string& header = "value");
void write_dataset_csv(const std::string& path, const Dataset& data);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace hdbound
