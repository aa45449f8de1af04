#pragma once
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "comorita/ring.hpp"

namespace comorita {

// Dense row-major matrix with entries kept canonical for its ring.
class Matrix {
public:
  Matrix() : ring_(Ring::rationals()) {}
  Matrix(Ring ring, std::size_t rows, std::size_t cols);

  static Matrix identity(const Ring& ring, std::size_t n);
  static Matrix from_rows(const Ring& ring, const std::vector<std::vector<Scalar>>& rows,
                          std::size_t cols = 0);
  static Matrix from_ints(const Ring& ring, std::size_t rows, std::size_t cols,
                          std::initializer_list<long> entries);
  static Matrix column_vector(const Ring& ring, const std::vector<Scalar>& v);

  const Ring& ring() const noexcept { return ring_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, const Scalar& v) { data_[i * cols_ + j] = ring_.normalize(v); }
  // unchecked access; caller keeps entries canonical
  Scalar& raw(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  bool is_zero() const;
  bool row_is_zero(std::size_t i) const;
  bool col_is_zero(std::size_t j) const;

  Matrix operator*(const Matrix& other) const;
  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix scaled(const Scalar& c) const;
  Matrix transpose() const;

  Matrix column(std::size_t j) const;
  Matrix row(std::size_t i) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  Matrix select_columns(const std::vector<std::size_t>& idx) const;
  Matrix select_rows(const std::vector<std::size_t>& idx) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);

  friend bool operator==(const Matrix& a, const Matrix& b);
  std::string to_string() const;

private:
  Ring ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix kron(const Matrix& a, const Matrix& b);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block_diagonal(const Matrix& a, const Matrix& b);
void check_same_ring(const Ring& a, const Ring& b, const char* where);

} // namespace comorita
