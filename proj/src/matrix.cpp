#include "igusa/matrix.hpp"

#include "igusa/errors.hpp"

namespace igusa {

Matrix::Matrix(long rows, long cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw DomainError("negative matrix dimension");
  a_.assign(static_cast<std::size_t>(rows * cols), CycloRational());
}

Matrix Matrix::identity(long n) {
  Matrix m(n, n);
  for (long i = 0; i < n; ++i) m(i, i) = CycloRational(1);
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("matrix shapes do not match for product");
  Matrix c(a.rows_, b.cols_);
  for (long i = 0; i < a.rows_; ++i)
    for (long k = 0; k < a.cols_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (long j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix shapes do not match for sum");
  Matrix c = a;
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + b.scaled(CycloRational(-1)); }

Matrix Matrix::scaled(const CycloRational& c) const {
  Matrix out = *this;
  for (auto& x : out.a_) x *= c;
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

long rank(const Matrix& input) {
  Matrix m = input;
  const long rows = m.rows(), cols = m.cols();
  CycloRational prev(1);
  long r = 0;
  for (long c = 0; c < cols && r < rows; ++c) {
    long pivot = -1;
    for (long i = r; i < rows; ++i)
      if (!m(i, c).is_zero()) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r)
      for (long j = 0; j < cols; ++j) std::swap(m(r, j), m(pivot, j));
    for (long i = r + 1; i < rows; ++i) {
      for (long j = c + 1; j < cols; ++j) m(i, j) = (m(i, j) * m(r, c) - m(i, c) * m(r, j)) / prev;
      m(i, c) = CycloRational();
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

}  // namespace igusa
