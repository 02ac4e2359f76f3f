#pragma once

#include <vector>

#include "igusa/cyclo.hpp"

namespace igusa {

/// Dense row-major matrix over a cyclotomic field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(long rows, long cols);
  static Matrix identity(long n);

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  CycloRational& operator()(long i, long j) { return a_[static_cast<std::size_t>(i * cols_ + j)]; }
  const CycloRational& operator()(long i, long j) const { return a_[static_cast<std::size_t>(i * cols_ + j)]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  Matrix scaled(const CycloRational& c) const;
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  long rows_ = 0;
  long cols_ = 0;
  std::vector<CycloRational> a_;
};

/// Exact rank by fraction-free (Bareiss) elimination.
long rank(const Matrix& m);

}  // namespace igusa
