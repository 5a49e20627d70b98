#pragma once

// Exact rational linear algebra: matrices, ranks, cochain-complex cohomology
// and a small dense simplex used for strict-inequality feasibility.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "toricbott/error.hpp"

namespace toricbott {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", "p" or "-p/q"; the result is reduced.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto blank = [](char c) { return c == ' ' || c == '\t'; };
  s.erase(std::remove_if(s.begin(), s.end(), blank), s.end());
  if (s.empty()) throw Error(ErrorKind::MalformedInput, "empty rational");
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    return std::all_of(t.begin() + static_cast<std::ptrdiff_t>(i), t.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw Error(ErrorKind::MalformedInput, "not a rational: '" + std::string(text) + "'");
  const Integer d(den);
  if (d == 0) throw Error(ErrorKind::MalformedInput, "zero denominator");
  Rational q{Integer(num), d};
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw Error(ErrorKind::DomainError, "integer exceeds 64 bits: " + z.get_str());
  return static_cast<std::int64_t>(z.get_si());
}

inline Integer binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
      throw Error(ErrorKind::MalformedInput, "matrix entry count does not match its shape");
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw Error(ErrorKind::MalformedInput, "ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  const std::vector<T>& data() const noexcept { return data_; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& v) { return v == 0; });
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::MalformedInput, "matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;

namespace detail {

// Fraction-free (Bareiss) echelon elimination. Every intermediate entry is a
// minor of the input, so the division by the previous pivot is exact.
inline std::optional<std::size_t> bareiss_rank_i64(std::vector<std::int64_t> a, std::size_t rows,
                                                   std::size_t cols) {
  using i128 = __int128;
  constexpr i128 lo = std::numeric_limits<std::int64_t>::min();
  constexpr i128 hi = std::numeric_limits<std::int64_t>::max();
  i128 prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = rank; i < rows; ++i)
      if (a[i * cols + c] != 0) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != rank)
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(piv * cols),
                       a.begin() + static_cast<std::ptrdiff_t>(piv * cols + cols),
                       a.begin() + static_cast<std::ptrdiff_t>(rank * cols));
    const i128 p = a[rank * cols + c];
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const i128 f = a[i * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        i128 v;
        if (__builtin_sub_overflow(p * a[i * cols + j], f * a[rank * cols + j], &v)) return std::nullopt;
        v /= prev;
        if (v < lo || v > hi) return std::nullopt;
        a[i * cols + j] = static_cast<std::int64_t>(v);
      }
      a[i * cols + c] = 0;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

inline std::size_t bareiss_rank_mpz(std::vector<Integer> a, std::size_t rows, std::size_t cols) {
  Integer prev = 1;
  Integer t;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = rank; i < rows; ++i)
      if (a[i * cols + c] != 0) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[rank * cols + j]);
    const Integer p = a[rank * cols + c];
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const Integer f = a[i * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        t = p * a[i * cols + j] - f * a[rank * cols + j];
        mpz_divexact(a[i * cols + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i * cols + c] = 0;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// Exact rank over the rationals. Rows are scaled to integers and reduced
/// fraction-free; a 64-bit path is tried first and abandoned on overflow.
inline std::size_t rank(const QMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  if (rows == 0 || cols == 0) return 0;
  std::vector<Integer> ints(rows * cols);
  bool small = true;
  for (std::size_t i = 0; i < rows; ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) {
      Integer& z = ints[i * cols + j];
      z = m(i, j).get_num() * (l / m(i, j).get_den());
      if (small && !z.fits_slong_p()) small = false;
    }
  }
  if (small) {
    std::vector<std::int64_t> a(rows * cols);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = ints[k].get_si();
    if (auto r = detail::bareiss_rank_i64(std::move(a), rows, cols)) return *r;
  }
  return detail::bareiss_rank_mpz(std::move(ints), rows, cols);
}

/// Determinant of a square matrix with integer entries (Bareiss).
inline Integer determinant(const Matrix<Integer>& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::MalformedInput, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  std::vector<Integer> a(m.data());
  Integer prev = 1, t;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i)
      if (a[i * n + k] != 0) {
        piv = i;
        break;
      }
    if (piv == n) return 0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[k * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        t = a[k * n + k] * a[i * n + j] - a[i * n + k] * a[k * n + j];
        mpz_divexact(a[i * n + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i * n + k] = 0;
    }
    prev = a[k * n + k];
  }
  return sign * a[n * n - 1];
}

/// Inverse of a square rational matrix by Gauss-Jordan; nullopt if singular.
inline std::optional<QMatrix> inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::MalformedInput, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  QMatrix a = m;
  QMatrix inv = QMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t i = c; i < n; ++i)
      if (a(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv == n) return std::nullopt;
    if (piv != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    const Rational p = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= p;
      inv(c, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

using IMatrix = Matrix<std::int64_t>;

namespace detail {

// Elimination that only touches rows with a nonzero entry in the pivot
// column and divides each updated row by its content; suits sparse input.
inline std::optional<std::size_t> content_rank_i64(std::vector<std::int64_t> a, std::size_t rows, std::size_t cols) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = rank; i < rows; ++i)
      if (a[i * cols + c] != 0 && (piv == rows || std::llabs(a[i * cols + c]) < std::llabs(a[piv * cols + c])))
        piv = i;
    if (piv == rows) continue;
    if (piv != rank)
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(piv * cols),
                       a.begin() + static_cast<std::ptrdiff_t>(piv * cols + cols),
                       a.begin() + static_cast<std::ptrdiff_t>(rank * cols));
    const std::int64_t p = a[rank * cols + c];
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const std::int64_t f = a[i * cols + c];
      if (f == 0) continue;
      const std::int64_t g = std::gcd(p, f);
      const std::int64_t pp = p / g, ff = f / g;
      std::int64_t content = 0;
      for (std::size_t j = c; j < cols; ++j) {
        std::int64_t x, y, v;
        if (__builtin_mul_overflow(pp, a[i * cols + j], &x) || __builtin_mul_overflow(ff, a[rank * cols + j], &y) ||
            __builtin_sub_overflow(x, y, &v))
          return std::nullopt;
        a[i * cols + j] = v;
        content = std::gcd(content, v);
      }
      if (content > 1)
        for (std::size_t j = c; j < cols; ++j) a[i * cols + j] /= content;
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// Exact rank of an integer matrix.
inline std::size_t rank(const IMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (auto r = detail::content_rank_i64(m.data(), m.rows(), m.cols())) return *r;
  std::vector<Integer> ints;
  ints.reserve(m.data().size());
  for (auto x : m.data()) ints.emplace_back(static_cast<long>(x));
  return detail::bareiss_rank_mpz(std::move(ints), m.rows(), m.cols());
}

namespace detail {

inline bool product_is_zero(const QMatrix& a, const QMatrix& b) { return (a * b).is_zero(); }

inline bool product_is_zero(const IMatrix& a, const IMatrix& b) {
  std::vector<__int128> row(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::fill(row.begin(), row.end(), 0);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const __int128 x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) row[j] += x * b(k, j);
    }
    for (auto v : row)
      if (v != 0) return false;
  }
  return true;
}

}  // namespace detail

/// Cochain complex C^0 -> C^1 -> ... with d_i : C^i -> C^{i+1} stored as a
/// dim C^{i+1} x dim C^i matrix.
template <class T>
class BasicChainComplex {
 public:
  explicit BasicChainComplex(std::vector<Matrix<T>> differentials) : d_(std::move(differentials)) {
    if (d_.empty()) throw Error(ErrorKind::MalformedInput, "complex needs term dimensions or a differential");
    dims_.push_back(d_.front().cols());
    for (const auto& d : d_) dims_.push_back(d.rows());
    check_shapes();
  }

  BasicChainComplex(std::vector<std::size_t> term_dims, std::vector<Matrix<T>> differentials)
      : dims_(std::move(term_dims)), d_(std::move(differentials)) {
    check_shapes();
  }

  const std::vector<std::size_t>& term_dims() const noexcept { return dims_; }
  const std::vector<Matrix<T>>& differentials() const noexcept { return d_; }

  /// Σ(-1)^i dim C^i.
  std::int64_t euler_characteristic() const {
    std::int64_t e = 0;
    for (std::size_t i = 0; i < dims_.size(); ++i)
      e += (i % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(dims_[i]);
    return e;
  }

 private:
  void check_shapes() const {
    if (dims_.size() != d_.size() + 1)
      throw Error(ErrorKind::MalformedInput, "complex needs exactly one more term than differentials");
    for (std::size_t i = 0; i < d_.size(); ++i)
      if (d_[i].cols() != dims_[i] || d_[i].rows() != dims_[i + 1])
        throw Error(ErrorKind::MalformedInput, "differential " + std::to_string(i) + " has the wrong shape");
  }

  std::vector<std::size_t> dims_;
  std::vector<Matrix<T>> d_;
};

using ChainComplex = BasicChainComplex<Rational>;
using IntChainComplex = BasicChainComplex<std::int64_t>;

/// h^i = dim ker d_i - rank d_{i-1}. Composites d_{i+1} d_i are checked to vanish exactly.
template <class T>
std::vector<std::size_t> cohomology_dims(const BasicChainComplex<T>& c) {
  const auto& d = c.differentials();
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    if (!detail::product_is_zero(d[i + 1], d[i]))
      throw Error(ErrorKind::ComplexNotExactlyComposable, "d_" + std::to_string(i + 1) + " * d_" +
                                                              std::to_string(i) + " != 0");
  std::vector<std::size_t> ranks;
  ranks.reserve(d.size());
  for (const auto& m : d) ranks.push_back(rank(m));
  const auto& dims = c.term_dims();
  std::vector<std::size_t> h(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const std::size_t out = i < ranks.size() ? ranks[i] : 0;
    const std::size_t in = i > 0 ? ranks[i - 1] : 0;
    h[i] = dims[i] - out - in;
  }
  return h;
}

// ---------------------------------------------------------------------------
// Linear programming

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> x;
};

namespace detail {

// Dense tableau simplex in dictionary form with an auxiliary-variable phase 1.
// Entering and leaving variables follow Bland's rule, which together with exact
// arithmetic rules out cycling.
class Tableau {
 public:
  Tableau(const QMatrix& a, std::span<const Rational> b, std::span<const Rational> c)
      : m_(a.rows()), n_(a.cols()), basic_(m_), nonbasic_(n_ + 1), t_((m_ + 2) * (n_ + 2)) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = a(i, j);
      at(i, n_) = -1;
      at(i, n_ + 1) = b[i];
      basic_[i] = static_cast<long>(n_ + i);
    }
    for (std::size_t j = 0; j < n_; ++j) {
      nonbasic_[j] = static_cast<long>(j);
      at(m_, j) = -c[j];
    }
    nonbasic_[n_] = -1;
    at(m_ + 1, n_) = 1;
  }

  LpSolution solve() {
    LpSolution out;
    if (m_ > 0) {
      std::size_t r = 0;
      for (std::size_t i = 1; i < m_; ++i)
        if (at(i, n_ + 1) < at(r, n_ + 1)) r = i;
      if (at(r, n_ + 1) < 0) {
        pivot(r, n_);
        if (!run(1) || at(m_ + 1, n_ + 1) < 0) {
          out.status = LpStatus::Infeasible;
          return out;
        }
        for (std::size_t i = 0; i < m_; ++i) {
          if (basic_[i] != -1) continue;
          std::size_t s = n_ + 1;
          for (std::size_t j = 0; j <= n_; ++j)
            if (at(i, j) != 0 && (s == n_ + 1 || nonbasic_[j] < nonbasic_[s])) s = j;
          if (s != n_ + 1) pivot(i, s);
        }
      }
    }
    if (!run(2)) {
      out.status = LpStatus::Unbounded;
      return out;
    }
    out.status = LpStatus::Optimal;
    out.x.assign(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basic_[i] >= 0 && static_cast<std::size_t>(basic_[i]) < n_) out.x[basic_[i]] = at(i, n_ + 1);
    out.value = at(m_, n_ + 1);
    return out;
  }

 private:
  Rational& at(std::size_t i, std::size_t j) { return t_[i * (n_ + 2) + j]; }

  void pivot(std::size_t r, std::size_t s) {
    const Rational inv = 1 / at(r, s);
    Rational f;
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i == r || at(i, s) == 0) continue;
      f = at(i, s) * inv;
      for (std::size_t j = 0; j < n_ + 2; ++j)
        if (j != s && at(r, j) != 0) at(i, j) -= at(r, j) * f;
      at(i, s) = -f;
    }
    for (std::size_t j = 0; j < n_ + 2; ++j)
      if (j != s) at(r, j) *= inv;
    at(r, s) = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  bool run(int phase) {
    const std::size_t obj = phase == 1 ? m_ + 1 : m_;
    for (;;) {
      std::size_t s = n_ + 1;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (phase == 2 && nonbasic_[j] == -1) continue;
        if (at(obj, j) < 0 && (s == n_ + 1 || nonbasic_[j] < nonbasic_[s])) s = j;
      }
      if (s == n_ + 1) return true;
      std::size_t r = m_;
      for (std::size_t i = 0; i < m_; ++i) {
        if (at(i, s) <= 0) continue;
        if (r == m_) {
          r = i;
          continue;
        }
        lhs_ = at(i, n_ + 1) * at(r, s);
        rhs_ = at(r, n_ + 1) * at(i, s);
        if (lhs_ < rhs_ || (lhs_ == rhs_ && basic_[i] < basic_[r])) r = i;
      }
      if (r == m_) return false;
      pivot(r, s);
    }
  }

  std::size_t m_, n_;
  std::vector<long> basic_, nonbasic_;
  std::vector<Rational> t_;
  Rational lhs_, rhs_;
};

}  // namespace detail

/// maximize c.x subject to a.x <= b, x >= 0.
inline LpSolution lp_maximize(const QMatrix& a, std::span<const Rational> b, std::span<const Rational> c) {
  if (b.size() != a.rows() || c.size() != a.cols())
    throw Error(ErrorKind::MalformedInput, "LP data shape mismatch");
  return detail::Tableau(a, b, c).solve();
}

/// maximize c.x subject to a.x <= b with x unrestricted in sign.
inline LpSolution lp_maximize_free(const QMatrix& a, std::span<const Rational> b, std::span<const Rational> c) {
  const std::size_t k = a.cols();
  QMatrix split(a.rows(), 2 * k);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < k; ++j) {
      split(i, j) = a(i, j);
      split(i, k + j) = -a(i, j);
    }
  std::vector<Rational> cc(2 * k);
  for (std::size_t j = 0; j < k; ++j) {
    cc[j] = c[j];
    cc[k + j] = -c[j];
  }
  LpSolution s = lp_maximize(split, b, cc);
  if (s.status == LpStatus::Optimal) {
    std::vector<Rational> x(k);
    for (std::size_t j = 0; j < k; ++j) x[j] = s.x[j] - s.x[k + j];
    s.x = std::move(x);
  }
  return s;
}

/// Finds x with a_i.x < b_i on rows flagged strict and a_i.x <= b_i elsewhere.
/// Maximizes a slack eps (capped at 1) added to every strict row; feasible iff
/// the optimum is positive, or, with no strict rows, iff the system is feasible.
/// An empty `strict` marks every row strict.
inline std::optional<std::vector<Rational>> lp_feasible_strict(const QMatrix& a, std::span<const Rational> b,
                                                               std::vector<bool> strict = {}) {
  if (strict.empty()) strict.assign(a.rows(), true);
  if (b.size() != a.rows() || strict.size() != a.rows())
    throw Error(ErrorKind::MalformedInput, "constraint data shape mismatch");
  const std::size_t k = a.cols();
  const bool any_strict = std::find(strict.begin(), strict.end(), true) != strict.end();
  QMatrix lp(a.rows() + 1, k + 1);
  std::vector<Rational> rhs(a.rows() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < k; ++j) lp(i, j) = a(i, j);
    lp(i, k) = strict[i] ? 1 : 0;
    rhs[i] = b[i];
  }
  lp(a.rows(), k) = 1;
  rhs[a.rows()] = 1;
  std::vector<Rational> obj(k + 1);
  obj[k] = 1;
  LpSolution s = lp_maximize_free(lp, rhs, obj);
  if (s.status == LpStatus::Infeasible) return std::nullopt;
  if (s.status == LpStatus::Unbounded) throw Error(ErrorKind::Internal, "bounded slack LP reported unbounded");
  if (any_strict && s.value <= 0) return std::nullopt;
  std::vector<Rational> x(s.x.begin(), s.x.begin() + static_cast<std::ptrdiff_t>(k));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < k; ++j) lhs += a(i, j) * x[j];
    if (strict[i] ? !(lhs < b[i]) : !(lhs <= b[i]))
      throw Error(ErrorKind::Internal, "LP witness fails row " + std::to_string(i));
  }
  return x;
}

/// True iff {x : a.x <= 0} = {0}: every coordinate direction is capped by LP.
inline bool recession_cone_trivial(const QMatrix& a) {
  const std::size_t k = a.cols();
  QMatrix lp(a.rows() + 1, k);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < k; ++j) lp(i, j) = a(i, j);
  std::vector<Rational> rhs(a.rows() + 1, Rational(0));
  rhs.back() = 1;
  for (std::size_t j = 0; j < k; ++j)
    for (int sign : {1, -1}) {
      for (std::size_t jj = 0; jj < k; ++jj) lp(a.rows(), jj) = 0;
      lp(a.rows(), j) = sign;
      std::vector<Rational> obj(k, Rational(0));
      obj[j] = sign;
      const LpSolution s = lp_maximize_free(lp, rhs, obj);
      if (s.status != LpStatus::Optimal) throw Error(ErrorKind::Internal, "recession LP not optimal");
      if (s.value > 0) return false;
    }
  return true;
}

/// Whether the nonempty polyhedron {x : a.x <= b} is bounded.
inline bool polyhedron_bounded(const QMatrix& a, std::span<const Rational> b) {
  if (!lp_feasible_strict(a, b, std::vector<bool>(a.rows(), false)))
    throw Error(ErrorKind::EmptyInput, "polyhedron is empty");
  return recession_cone_trivial(a);
}

}  // namespace toricbott
