#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace shimura {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntMatrix transpose() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

/// Row-style Hermite normal form: row space preserved, pivots positive,
/// entries above each pivot reduced into [0, pivot), zero rows at the bottom.
/// The result has the same shape as the input.
IntMatrix hermite_normal_form(const IntMatrix& m);

/// Number of nonzero rows of the HNF.
std::size_t rank(const IntMatrix& m);

/// Z-basis of { v in Z^n : M v = 0 }, one vector per row, in HNF.
IntMatrix integer_kernel(const IntMatrix& m);

/// Basis (HNF rows, zero rows dropped) of { v : k v in rowspace(M) for some k >= 1 }.
IntMatrix saturate(const IntMatrix& m);

/// True iff v lies in the Z-row-lattice of M. Throws DimensionMismatch.
bool contains(const IntMatrix& m, const IntVector& v);

IntVector to_int_vector(std::initializer_list<long> values);

}  // namespace shimura
