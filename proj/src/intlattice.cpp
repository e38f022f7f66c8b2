#include "shimura/intlattice.hpp"

#include <utility>

#include "shimura/error.hpp"

namespace shimura {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
    for (long x : r) entries_.emplace_back(x);
  }
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::DimensionMismatch, "row length differs from column count");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

std::string IntMatrix::to_string() const {
  std::string out = "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    out += r ? ",[" : "[";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) out += ',';
      out += (*this)(r, c).get_str();
    }
    out += ']';
  }
  return out + "]";
}

IntVector to_int_vector(std::initializer_list<long> values) {
  IntVector v;
  for (long x : values) v.emplace_back(x);
  return v;
}

namespace {

// Row echelon form using only unimodular row operations, pivoting on the
// first `pivot_cols` columns (the remaining columns ride along; this is how
// transforms are tracked). Returns the pivot column of each leading row.
std::vector<std::size_t> echelonize(IntMatrix& a, std::size_t pivot_cols, bool reduce_above) {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < pivot_cols && lead < a.rows(); ++col) {
    // Euclid on column `col` among rows lead..end until only one nonzero remains.
    for (;;) {
      std::size_t best = a.rows();
      for (std::size_t r = lead; r < a.rows(); ++r) {
        if (sgn(a(r, col)) == 0) continue;
        if (best == a.rows() || abs(a(r, col)) < abs(a(best, col))) best = r;
      }
      if (best == a.rows()) break;
      if (best != lead)
        for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(best, c), a(lead, c));
      bool done = true;
      for (std::size_t r = lead + 1; r < a.rows(); ++r) {
        if (sgn(a(r, col)) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(r, col).get_mpz_t(), a(lead, col).get_mpz_t());
        for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) -= q * a(lead, c);
        if (sgn(a(r, col)) != 0) done = false;
      }
      if (done) break;
    }
    if (sgn(a(lead, col)) == 0) continue;
    if (sgn(a(lead, col)) < 0)
      for (std::size_t c = 0; c < a.cols(); ++c) a(lead, c) = -a(lead, c);
    if (reduce_above) {
      for (std::size_t r = 0; r < lead; ++r) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(r, col).get_mpz_t(), a(lead, col).get_mpz_t());
        if (sgn(q) == 0) continue;
        for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) -= q * a(lead, c);
      }
    }
    pivots.push_back(col);
    ++lead;
  }
  return pivots;
}

bool row_is_zero(const IntMatrix& a, std::size_t r, std::size_t upto) {
  for (std::size_t c = 0; c < upto; ++c)
    if (sgn(a(r, c)) != 0) return false;
  return true;
}

IntMatrix nonzero_rows(const IntMatrix& a) {
  std::vector<IntVector> rows;
  for (std::size_t r = 0; r < a.rows(); ++r)
    if (!row_is_zero(a, r, a.cols())) rows.push_back(a.row(r));
  return IntMatrix::from_rows(rows, a.cols());
}

}  // namespace

IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix a = m;
  echelonize(a, a.cols(), true);
  return a;
}

std::size_t rank(const IntMatrix& m) {
  IntMatrix a = m;
  return echelonize(a, a.cols(), false).size();
}

IntMatrix integer_kernel(const IntMatrix& m) {
  // Row-reduce [M^T | I]; rows whose left block vanishes carry a kernel basis.
  const std::size_t n = m.cols();
  IntMatrix aug(n, m.rows() + n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m.rows(); ++j) aug(i, j) = m(j, i);
    aug(i, m.rows() + i) = 1;
  }
  const std::size_t r = echelonize(aug, m.rows(), false).size();
  std::vector<IntVector> basis;
  for (std::size_t i = r; i < n; ++i) {
    IntVector v(n);
    for (std::size_t c = 0; c < n; ++c) v[c] = aug(i, m.rows() + c);
    basis.push_back(std::move(v));
  }
  return nonzero_rows(hermite_normal_form(IntMatrix::from_rows(basis, n)));
}

IntMatrix saturate(const IntMatrix& m) {
  const IntMatrix kernel = integer_kernel(m);
  if (kernel.rows() == 0) return IntMatrix::identity(m.cols());
  // The kernel of the kernel is the saturated row lattice.
  return integer_kernel(kernel);
}

bool contains(const IntMatrix& m, const IntVector& v) {
  if (v.size() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "vector length differs from column count");
  IntMatrix h = m;
  const auto pivots = echelonize(h, h.cols(), true);
  IntVector residual = v;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    const std::size_t p = pivots[i];
    for (std::size_t c = 0; c < p; ++c)
      if (sgn(residual[c]) != 0) return false;
    if (!mpz_divisible_p(residual[p].get_mpz_t(), h(i, p).get_mpz_t())) return false;
    const Integer q = residual[p] / h(i, p);
    for (std::size_t c = 0; c < residual.size(); ++c) residual[c] -= q * h(i, c);
  }
  for (const auto& x : residual)
    if (sgn(x) != 0) return false;
  return true;
}

}  // namespace shimura
