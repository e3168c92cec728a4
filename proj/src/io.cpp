#include "hdbound/io.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "hdbound/errors.hpp"

namespace hdbound {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim surrounding whitespace
        std::size_t b = field.find_first_not_of(" \t\r");
        std::size_t e = field.find_last_not_of(" \t\r");
        fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

std::vector<std::vector<double>> read_numeric_rows(const std::string& path,
                                                   std::vector<std::string>* header) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first_line = true;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split_line(line);
        std::vector<double> row(fields.size());
        bool numeric = true;
        for (std::size_t i = 0; i < fields.size(); ++i)
            if (!parse_double(fields[i], row[i])) {
                numeric = false;
                break;
            }
        if (!numeric) {
            if (first_line) {
                if (header) *header = fields;
                first_line = false;
                continue;
            }
            throw ParseError("'" + path + "' line " + std::to_string(line_no) +
                             ": non-numeric field");
        }
        first_line = false;
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError("'" + path + "' line " + std::to_string(line_no) +
                             ": ragged row (expected " +
                             std::to_string(rows.front().size()) + " fields)");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("'" + path + "': no numeric rows");
    return rows;
}

void format_value(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

} // namespace

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
    auto rows = read_numeric_rows(path, nullptr);
    Eigen::MatrixXd A(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return A;
}

Eigen::VectorXd read_vector_csv(const std::string& path) {
    Eigen::MatrixXd A = read_matrix_csv(path);
    if (A.cols() != 1)
        throw ParseError("'" + path + "': expected a single column, found " +
                         std::to_string(A.cols()));
    return A.col(0);
}

Dataset read_dataset_csv(const std::string& path) {
    Eigen::MatrixXd A = read_matrix_csv(path);
    if (A.cols() < 2)
        throw ParseError("'" + path + "': dataset needs a y column and at least one regressor");
    Dataset data;
    data.y = A.col(0);
    data.X = A.rightCols(A.cols() - 1);
    data.validate();
    return data;
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& A,
                      const std::vector<std::string>& header) {
    std::string out;
    if (!header.empty()) {
        if (static_cast<Eigen::Index>(header.size()) != A.cols())
            throw DimensionError("write_matrix_csv: header width does not match matrix");
        for (std::size_t j = 0; j < header.size(); ++j) {
            if (j) out += ",";
            out += header[j];
        }
        out += "\n";
    }
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            if (j) out += ",";
            format_value(out, A(i, j));
        }
        out += "\n";
    }
    write_text_file(path, out);
}

void write_vector_csv(const std::string& path, const Eigen::VectorXd& v,
                      const std::string& header) {
    std::string out = header + "\n";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        format_value(out, v[i]);
        out += "\n";
    }
    write_text_file(path, out);
}

void write_dataset_csv(const std::string& path, const Dataset& data) {
    data.validate();
    std::string out = "y";
    for (Eigen::Index j = 0; j < data.p(); ++j) out += ",x" + std::to_string(j + 1);
    out += "\n";
    for (Eigen::Index i = 0; i < data.n(); ++i) {
        format_value(out, data.y[i]);
        for (Eigen::Index j = 0; j < data.p(); ++j) {
            out += ",";
            format_value(out, data.X(i, j));
        }
        out += "\n";
    }
    write_text_file(path, out);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw IoError("failed writing '" + path + "'");
}

} // namespace hdbound
