#pragma once

// Dense matrices, CSV ingestion of feature matrices, and the certified
// positive-definite construction X = I + AᵀA used by the entropy and
// mutual-information objectives.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "submax/core.hpp"

namespace submax {

struct CsvError : std::runtime_error {
    CsvError(std::string msg, std::size_t row, std::size_t col)
        : std::runtime_error(std::move(msg)), row(row), col(col) {}
    std::size_t row = 0;  // 1-based; 0 when not tied to a cell
    std::size_t col = 0;
};

// Row-major dense matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

namespace detail {

inline bool parse_double(const std::string& cell, double& out) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    if (end == begin) return false;
    while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
    return *end == '\0';
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        const auto first = cell.find_first_not_of(" \t\r");
        const auto last = cell.find_last_not_of(" \t\r");
        cells.push_back(first == std::string::npos ? "" : cell.substr(first, last - first + 1));
    }
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

}  // namespace detail

// Plain comma-separated numeric matrix; an optional header row is
// auto-detected by a non-numeric first cell. Errors carry the 1-based
// row/column of the offending cell.
inline Matrix load_csv_matrix(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    std::size_t width = 0;
    bool first_data_row = true;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);  // UTF-8 BOM
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;  // blank
        const auto cells = detail::split_csv_line(line);
        if (first_data_row) {
            double probe;
            if (!detail::parse_double(cells[0], probe)) continue;  // header row
        }
        std::vector<double> row(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (!detail::parse_double(cells[c], row[c])) {
                throw CsvError("CSV: non-numeric cell '" + cells[c] + "' at row " +
                                   std::to_string(line_no) + ", column " + std::to_string(c + 1),
                               line_no, c + 1);
            }
        }
        if (first_data_row) {
            width = row.size();
            first_data_row = false;
        } else if (row.size() != width) {
            throw CsvError("CSV: row " + std::to_string(line_no) + " has " +
                               std::to_string(row.size()) + " cells, expected " + std::to_string(width),
                           line_no, 0);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw CsvError("CSV: no numeric rows found", 0, 0);
    Matrix m(rows.size(), width);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < width; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

inline Matrix load_csv_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open CSV file: " + path);
    return load_csv_matrix(in);
}

// Appends the elementwise products a_i ⊙ a_j (i < j, lexicographic order)
// to the columns of a. `keep` selects indices into that appended block;
// when absent all pairs are appended.
inline Matrix expand_second_order(const Matrix& a,
                                  const std::optional<std::vector<int>>& keep = std::nullopt) {
    const std::size_t c = a.cols();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(c * (c - 1) / 2);
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j = i + 1; j < c; ++j) pairs.emplace_back(i, j);
    }
    std::vector<std::size_t> selected;
    if (keep) {
        for (int idx : *keep) {
            if (idx < 0 || static_cast<std::size_t>(idx) >= pairs.size()) {
                throw std::invalid_argument("expand_second_order: pair index " + std::to_string(idx) +
                                            " out of range (have " + std::to_string(pairs.size()) + " pairs)");
            }
            selected.push_back(static_cast<std::size_t>(idx));
        }
    } else {
        selected.resize(pairs.size());
        for (std::size_t i = 0; i < pairs.size(); ++i) selected[i] = i;
    }
    Matrix out(a.rows(), c + selected.size());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t j = 0; j < c; ++j) out.at(r, j) = a.at(r, j);
        for (std::size_t s = 0; s < selected.size(); ++s) {
            const auto [i, j] = pairs[selected[s]];
            out.at(r, c + s) = a.at(r, i) * a.at(r, j);
        }
    }
    return out;
}

// Symmetric positive semidefinite matrix. The certified flag records the
// I + AᵀA construction, which guarantees every eigenvalue >= 1.
class PsdMatrix {
public:
    static constexpr double kSymmetryTolerance = 1e-12;

    static PsdMatrix from_dense(const Matrix& m, bool certified_min_eig_one = false) {
        if (m.rows() != m.cols() || m.rows() == 0) {
            throw std::invalid_argument("PsdMatrix: matrix must be square and non-empty");
        }
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = i + 1; j < m.cols(); ++j) {
                if (std::abs(m.at(i, j) - m.at(j, i)) > kSymmetryTolerance) {
                    throw std::invalid_argument("PsdMatrix: not symmetric at (" + std::to_string(i) +
                                                "," + std::to_string(j) + ")");
                }
            }
        }
        return PsdMatrix(m, certified_min_eig_one);
    }

    int dim() const { return static_cast<int>(m_.rows()); }
    double at(std::size_t i, std::size_t j) const { return m_.at(i, j); }
    bool certified_min_eig_one() const { return certified_; }
    const Matrix& dense() const { return m_; }

private:
    PsdMatrix(Matrix m, bool certified) : m_(std::move(m)), certified_(certified) {}

    Matrix m_;
    bool certified_;
};

namespace detail {

// In-place lower Cholesky of a dense symmetric buffer (row-major, m x m);
// returns ln det, or nullopt if a pivot is non-positive.
inline std::optional<double> cholesky_logdet(std::vector<double>& a, std::size_t m) {
    double logdet = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        double d = a[j * m + j];
        for (std::size_t k = 0; k < j; ++k) d -= a[j * m + k] * a[j * m + k];
        if (d <= 0.0 || !std::isfinite(d)) return std::nullopt;
        const double ljj = std::sqrt(d);
        a[j * m + j] = ljj;
        logdet += std::log(ljj);
        for (std::size_t i = j + 1; i < m; ++i) {
            double s = a[i * m + j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i * m + k] * a[j * m + k];
            a[i * m + j] = s / ljj;
        }
    }
    return 2.0 * logdet;
}

}  // namespace detail

// H(S) = ln det X[S], computed by one-shot Cholesky of the principal
// submatrix; H(∅) = 0.
inline double logdet_entropy(const PsdMatrix& x, const SolutionSet& s) {
    const std::size_t m = s.size();
    if (m == 0) return 0.0;
    const auto idx = s.sorted();
    for (ElementId v : idx) {
        if (v < 0 || v >= x.dim()) {
            throw std::invalid_argument("logdet_entropy: index " + std::to_string(v) + " out of range");
        }
    }
    std::vector<double> buf(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            buf[i * m + j] = x.at(static_cast<std::size_t>(idx[i]), static_cast<std::size_t>(idx[j]));
        }
    }
    const auto ld = detail::cholesky_logdet(buf, m);
    if (!ld) {
        throw std::domain_error("logdet_entropy: principal submatrix of size " + std::to_string(m) +
                                " is not positive definite");
    }
    return *ld;
}

// Mutual information f(S) = H(S) + H(V\S) - H(V); symmetric, submodular,
// non-negative, with f(∅) = f(V) = 0.
inline double mutual_information(const PsdMatrix& x, const SolutionSet& s) {
    const int n = x.dim();
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (ElementId v : s.members()) {
        if (v < 0 || v >= n) {
            throw std::invalid_argument("mutual_information: index " + std::to_string(v) + " out of range");
        }
        in[static_cast<std::size_t>(v)] = 1;
    }
    std::vector<ElementId> complement;
    complement.reserve(static_cast<std::size_t>(n) - s.size());
    for (ElementId v = 0; v < n; ++v) {
        if (!in[static_cast<std::size_t>(v)]) complement.push_back(v);
    }
    SolutionSet whole;
    for (ElementId v = 0; v < n; ++v) whole.add(v);
    return logdet_entropy(x, s) + logdet_entropy(x, SolutionSet(complement)) -
           logdet_entropy(x, whole);
}

// Normalizes the columns of a feature matrix to unit Euclidean norm and
// returns I + AᵀA with the certified flag set. Zero columns are rejected.
inline PsdMatrix psd_from_features(const Matrix& a) {
    if (a.rows() == 0 || a.cols() == 0) {
        throw std::invalid_argument("psd_from_features: empty feature matrix");
    }
    const std::size_t rows = a.rows();
    const std::size_t n = a.cols();
    Matrix norm(rows, n);
    for (std::size_t j = 0; j < n; ++j) {
        double sq = 0.0;
        for (std::size_t r = 0; r < rows; ++r) sq += a.at(r, j) * a.at(r, j);
        if (sq == 0.0) {
            throw CsvError("psd_from_features: column " + std::to_string(j + 1) + " has zero norm",
                           0, j + 1);
        }
        const double inv = 1.0 / std::sqrt(sq);
        for (std::size_t r = 0; r < rows; ++r) norm.at(r, j) = a.at(r, j) * inv;
    }
    Matrix x(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t r = 0; r < rows; ++r) dot += norm.at(r, i) * norm.at(r, j);
            x.at(i, j) = dot + (i == j ? 1.0 : 0.0);
            x.at(j, i) = x.at(i, j);
        }
    }
    return PsdMatrix::from_dense(x, /*certified_min_eig_one=*/true);
}

// Seeded dense feature matrix (standard normal entries) of shape
// sample_rows x n; feeding it to psd_from_features yields an n x n
// certified instance.
inline Matrix gen_feature_matrix(int n, int sample_rows, std::uint64_t seed) {
    if (n < 1 || sample_rows < 1) {
        throw std::invalid_argument("gen_feature_matrix: dimensions must be >= 1");
    }
    RandomSource rng(seed);
    Matrix a(static_cast<std::size_t>(sample_rows), static_cast<std::size_t>(n));
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            // Box-Muller; first uniform nudged away from zero.
            double u1 = rng.uniform01();
            if (u1 <= 0.0) u1 = 0x1.0p-53;
            const double u2 = rng.uniform01();
            a.at(r, c) = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
        }
    }
    return a;
}

}  // namespace submax
