#include "xmodal/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>

#include "xmodal/errors.hpp"

namespace xmodal {

void warn(const std::string& message) {
    std::cerr << "warning: " << message << "\n";
}

namespace {

std::string shape_str(const Matrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError(std::string(op) + ": shape mismatch (" + shape_str(a) +
                         " vs " + shape_str(b) + ")");
    }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw ShapeError("Matrix initializer: ragged row (expected width " +
                             std::to_string(cols_) + ", got " + std::to_string(r.size()) + ")");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

bool Matrix::is_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("matmul: shape mismatch (" + shape_str(a) + " vs " + shape_str(b) + ")");
    }
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            const auto brow = b.row(k);
            auto crow = c.row(i);
            for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

Matrix matmul_at_b(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) {
        throw ShapeError("matmul_at_b: shape mismatch (" + shape_str(a) + " vs " + shape_str(b) + ")");
    }
    Matrix c(a.cols(), b.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        const auto arow = a.row(k);
        const auto brow = b.row(k);
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double aki = arow[i];
            if (aki == 0.0) continue;
            auto crow = c.row(i);
            for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += aki * brow[j];
        }
    }
    return c;
}

Matrix matmul_a_bt(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) {
        throw ShapeError("matmul_a_bt: shape mismatch (" + shape_str(a) + " vs " + shape_str(b) + ")");
    }
    Matrix c(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto arow = a.row(i);
        auto crow = c.row(i);
        for (std::size_t j = 0; j < b.rows(); ++j) crow[j] = dot(arow, b.row(j));
    }
    return c;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

Matrix add(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "add");
    Matrix c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] += b.data()[i];
    return c;
}

Matrix sub(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "sub");
    Matrix c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] -= b.data()[i];
    return c;
}

Matrix hadamard(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "hadamard");
    Matrix c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] *= b.data()[i];
    return c;
}

Matrix scale(const Matrix& a, double s) {
    Matrix c = a;
    for (double& v : c.data()) v *= s;
    return c;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.cols() != b.cols()) {
        throw ShapeError("vstack: shape mismatch (" + shape_str(a) + " vs " + shape_str(b) + ")");
    }
    Matrix c(a.rows() + b.rows(), a.cols());
    std::copy(a.data().begin(), a.data().end(), c.data().begin());
    std::copy(b.data().begin(), b.data().end(), c.data().begin() + a.size());
    return c;
}

Matrix hconcat(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) {
        throw ShapeError("hconcat: shape mismatch (" + shape_str(a) + " vs " + shape_str(b) + ")");
    }
    Matrix c(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto crow = c.row(i);
        std::copy(a.row(i).begin(), a.row(i).end(), crow.begin());
        std::copy(b.row(i).begin(), b.row(i).end(), crow.begin() + a.cols());
    }
    return c;
}

Matrix take_rows(const Matrix& a, std::span<const std::size_t> indices) {
    Matrix c(indices.size(), a.cols());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= a.rows()) {
            throw DomainError("take_rows: index " + std::to_string(indices[i]) +
                              " out of range for " + shape_str(a));
        }
        std::copy(a.row(indices[i]).begin(), a.row(indices[i]).end(), c.row(i).begin());
    }
    return c;
}

void add_row_vector(Matrix& a, std::span<const double> v) {
    if (v.size() != a.cols()) {
        throw ShapeError("add_row_vector: shape mismatch (" + shape_str(a) + " vs vector of " +
                         std::to_string(v.size()) + ")");
    }
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto row = a.row(i);
        for (std::size_t j = 0; j < v.size(); ++j) row[j] += v[j];
    }
}

std::vector<double> column_sums(const Matrix& a) {
    std::vector<double> sums(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto row = a.row(i);
        for (std::size_t j = 0; j < a.cols(); ++j) sums[j] += row[j];
    }
    return sums;
}

double sigmoid(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

Matrix sigmoid(const Matrix& x) {
    Matrix y = x;
    for (double& v : y.data()) v = sigmoid(v);
    return y;
}

Matrix softmax_rows(const Matrix& x) {
    Matrix y = x;
    for (std::size_t i = 0; i < y.rows(); ++i) {
        auto row = y.row(i);
        double mx = row[0];
        for (double v : row) mx = std::max(mx, v);
        double sum = 0.0;
        for (double& v : row) {
            v = std::exp(v - mx);
            sum += v;
        }
        for (double& v : row) v /= sum;
    }
    return y;
}

double mean_squared_error(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "mean_squared_error");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.data()[i] - b.data()[i];
        acc += d * d;
    }
    return a.size() == 0 ? 0.0 : acc / static_cast<double>(a.size());
}

double mean_row_sq_distance(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "mean_row_sq_distance");
    if (a.rows() == 0) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) acc += squared_distance(a.row(i), b.row(i));
    return acc / static_cast<double>(a.rows());
}

double dot(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) {
        throw ShapeError("dot: length mismatch (" + std::to_string(u.size()) + " vs " +
                         std::to_string(v.size()) + ")");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
    return acc;
}

double squared_distance(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) {
        throw ShapeError("squared_distance: length mismatch (" + std::to_string(u.size()) +
                         " vs " + std::to_string(v.size()) + ")");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = u[i] - v[i];
        acc += d * d;
    }
    return acc;
}

}  // namespace xmodal
