#include "comorita/matrix.hpp"

#include <sstream>

#include "comorita/errors.hpp"

namespace comorita {

void check_same_ring(const Ring& a, const Ring& b, const char* where) {
  if (!(a == b)) throw RingMismatch(std::string(where) + ": " + a.name() + " vs " + b.name());
}

Matrix::Matrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(const Ring& ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

Matrix Matrix::from_rows(const Ring& ring, const std::vector<std::vector<Scalar>>& rows,
                         std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  Matrix m(ring, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionError("ragged matrix literal");
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_ints(const Ring& ring, std::size_t rows, std::size_t cols,
                         std::initializer_list<long> entries) {
  if (entries.size() != rows * cols) throw DimensionError("from_ints: wrong entry count");
  Matrix m(ring, rows, cols);
  std::size_t k = 0;
  for (long v : entries) m.data_[k++] = ring.from_int(v);
  return m;
}

Matrix Matrix::column_vector(const Ring& ring, const std::vector<Scalar>& v) {
  Matrix m(ring, v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m.set(i, 0, v[i]);
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (sgn(x) != 0) return false;
  return true;
}

bool Matrix::row_is_zero(std::size_t i) const {
  for (std::size_t j = 0; j < cols_; ++j)
    if (sgn((*this)(i, j)) != 0) return false;
  return true;
}

bool Matrix::col_is_zero(std::size_t j) const {
  for (std::size_t i = 0; i < rows_; ++i)
    if (sgn((*this)(i, j)) != 0) return false;
  return true;
}

Matrix Matrix::operator*(const Matrix& o) const {
  check_same_ring(ring_, o.ring_, "matrix product");
  if (cols_ != o.rows_)
    throw DimensionError("matrix product " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                         " by " + std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
  Matrix r(ring_, rows_, o.cols_);
  Scalar tmp;
  for (std::size_t i = 0; i < rows_; ++i) {
    Scalar* out = r.data_.data() + i * o.cols_;
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = data_[i * cols_ + k];
      if (sgn(a) == 0) continue;
      const Scalar* brow = o.data_.data() + k * o.cols_;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        if (sgn(brow[j]) == 0) continue;
        tmp = a * brow[j];
        out[j] += tmp;
      }
    }
    if (ring_.kind() != RingKind::Rationals)
      for (std::size_t j = 0; j < o.cols_; ++j) out[j] = ring_.normalize(out[j]);
  }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  check_same_ring(ring_, o.ring_, "matrix sum");
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix sum shape mismatch");
  Matrix r(ring_, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = ring_.add(data_[k], o.data_[k]);
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  check_same_ring(ring_, o.ring_, "matrix difference");
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix difference shape mismatch");
  Matrix r(ring_, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = ring_.sub(data_[k], o.data_[k]);
  return r;
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix r(ring_, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (sgn(data_[k]) != 0) r.data_[k] = ring_.mul(data_[k], c);
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.data_[j * rows_ + i] = data_[i * cols_ + j];
  return r;
}

Matrix Matrix::column(std::size_t j) const { return block(0, j, rows_, 1); }
Matrix Matrix::row(std::size_t i) const { return block(i, 0, 1, cols_); }

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
  Matrix r(ring_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) r.data_[i * nc + j] = data_[(r0 + i) * cols_ + c0 + j];
  return r;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& idx) const {
  Matrix r(ring_, rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < idx.size(); ++k) r.data_[i * idx.size() + k] = (*this)(i, idx[k]);
  return r;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
  Matrix r(ring_, idx.size(), cols_);
  for (std::size_t k = 0; k < idx.size(); ++k)
    for (std::size_t j = 0; j < cols_; ++j) r.data_[k * cols_ + j] = (*this)(idx[k], j);
  return r;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DimensionError("set_block out of range");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) data_[(r0 + i) * cols_ + c0 + j] = b(i, j);
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  check_same_ring(a.ring(), b.ring(), "kron");
  const Ring& R = a.ring();
  Matrix r(R, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Scalar& x = a(i, j);
      if (sgn(x) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) {
          const Scalar& y = b(k, l);
          if (sgn(y) == 0) continue;
          r.raw(i * b.rows() + k, j * b.cols() + l) = R.mul(x, y);
        }
    }
  return r;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("hstack row mismatch");
  Matrix r(a.ring(), a.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(0, a.cols(), b);
  return r;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw DimensionError("vstack column mismatch");
  Matrix r(a.ring(), a.rows() + b.rows(), a.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), 0, b);
  return r;
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix r(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

} // namespace comorita
