#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace xmodal {

/// Dense real matrix, row-major, 64-bit. Instances are rows throughout the
/// library; a batch of n feature vectors of width d is an n x d Matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::span<double> data() { return data_; }
    std::span<const double> data() const { return data_; }

    bool is_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// C = A * B. Sequential reduction order (deterministic).
Matrix matmul(const Matrix& a, const Matrix& b);
// C = A^T * B without forming the transpose.
Matrix matmul_at_b(const Matrix& a, const Matrix& b);
// C = A * B^T without forming the transpose.
Matrix matmul_a_bt(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& a);
Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix hadamard(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, double s);

// Stacks b's rows below a's. Widths must agree.
Matrix vstack(const Matrix& a, const Matrix& b);
// Concatenates columns: [a | b]. Row counts must agree.
Matrix hconcat(const Matrix& a, const Matrix& b);
// New matrix with the selected rows of a, in the given order.
Matrix take_rows(const Matrix& a, std::span<const std::size_t> indices);

// Adds v to every row of a in place.
void add_row_vector(Matrix& a, std::span<const double> v);
// Column sums as a vector of length a.cols().
std::vector<double> column_sums(const Matrix& a);

double sigmoid(double x);
// Elementwise logistic function.
Matrix sigmoid(const Matrix& x);
// Row-wise softmax; every output row sums to 1.
Matrix softmax_rows(const Matrix& x);

// Mean squared difference over all entries.
double mean_squared_error(const Matrix& a, const Matrix& b);
// Mean over rows of the squared L2 distance between paired rows.
double mean_row_sq_distance(const Matrix& a, const Matrix& b);

double dot(std::span<const double> u, std::span<const double> v);
double squared_distance(std::span<const double> u, std::span<const double> v);

}  // namespace xmodal
