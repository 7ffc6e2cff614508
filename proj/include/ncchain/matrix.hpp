#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncchain/rational.hpp"

namespace ncchain {

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// Dense exact-rational matrix.  Everything here is sized for ranks <= ~10,
// so plain Gaussian elimination is all we need.
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Rat(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
    Mat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Rat& x = (*this)(i, k);
        if (x == Rat(0)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          r(i, j) += x * o(k, j);
      }
    return r;
  }

  Mat operator+(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("matrix shape mismatch");
    Mat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
  }

  Mat operator-(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("matrix shape mismatch");
    Mat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
  }

  Mat transpose() const {
    Mat r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  RatVec apply(const RatVec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("vector size mismatch");
    RatVec r(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  IntVec apply_int(const IntVec& v) const {
    RatVec rv(v.begin(), v.end());
    RatVec out = apply(rv);
    IntVec r(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].denominator() != 1)
        throw std::runtime_error("expected integer result");
      r[i] = out[i].numerator();
    }
    return r;
  }

  std::size_t rank() const {
    Mat m = *this;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t piv = r;
      while (piv < rows_ && m(piv, c) == Rat(0)) ++piv;
      if (piv == rows_) continue;
      m.swap_rows(piv, r);
      for (std::size_t i = r + 1; i < rows_; ++i) {
        if (m(i, c) == Rat(0)) continue;
        Rat f = m(i, c) / m(r, c);
        for (std::size_t j = c; j < cols_; ++j) m(i, j) -= f * m(r, j);
      }
      ++r;
    }
    return r;
  }

  // Basis of the right kernel {v : Mv = 0}.
  std::vector<RatVec> kernel() const {
    Mat m = *this;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t piv = r;
      while (piv < rows_ && m(piv, c) == Rat(0)) ++piv;
      if (piv == rows_) continue;
      m.swap_rows(piv, r);
      Rat p = m(r, c);
      for (std::size_t j = c; j < cols_; ++j) m(r, j) /= p;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || m(i, c) == Rat(0)) continue;
        Rat f = m(i, c);
        for (std::size_t j = c; j < cols_; ++j) m(i, j) -= f * m(r, j);
      }
      pivot_col.push_back(c);
      ++r;
    }
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      RatVec v(cols_, Rat(0));
      v[free] = Rat(1);
      for (std::size_t k = 0; k < pivot_col.size(); ++k)
        v[pivot_col[k]] = -m(k, free);
      basis.push_back(v);
    }
    return basis;
  }

  Mat inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("not square");
    Mat m = *this;
    Mat inv = identity(rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
      std::size_t piv = c;
      while (piv < rows_ && m(piv, c) == Rat(0)) ++piv;
      if (piv == rows_) throw std::runtime_error("singular matrix");
      m.swap_rows(piv, c);
      inv.swap_rows(piv, c);
      Rat p = m(c, c);
      for (std::size_t j = 0; j < cols_; ++j) {
        m(c, j) /= p;
        inv(c, j) /= p;
      }
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == c || m(i, c) == Rat(0)) continue;
        Rat f = m(i, c);
        for (std::size_t j = 0; j < cols_; ++j) {
          m(i, j) -= f * m(c, j);
          inv(i, j) -= f * inv(c, j);
        }
      }
    }
    return inv;
  }

  Rat det() const {
    if (rows_ != cols_) throw std::invalid_argument("not square");
    Mat m = *this;
    Rat d(1);
    for (std::size_t c = 0; c < cols_; ++c) {
      std::size_t piv = c;
      while (piv < rows_ && m(piv, c) == Rat(0)) ++piv;
      if (piv == rows_) return Rat(0);
      if (piv != c) {
        m.swap_rows(piv, c);
        d = -d;
      }
      d *= m(c, c);
      for (std::size_t i = c + 1; i < rows_; ++i) {
        if (m(i, c) == Rat(0)) continue;
        Rat f = m(i, c) / m(c, c);
        for (std::size_t j = c; j < cols_; ++j) m(i, j) -= f * m(c, j);
      }
    }
    return d;
  }

  // Stable text key for hashing group elements.
  std::string key() const {
    std::string s;
    s.reserve(a_.size() * 4);
    for (const Rat& x : a_) {
      s += to_string(x);
      s += ',';
    }
    return s;
  }

 private:
  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }

  std::size_t rows_, cols_;
  std::vector<Rat> a_;
};

inline Mat from_int_rows(const std::vector<IntVec>& rows) {
  if (rows.empty()) return Mat();
  Mat m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = Rat(rows[i][j]);
  return m;
}

// gcd-normalized integer vector with positive leading nonzero entry
inline IntVec primitive_direction(const RatVec& v) {
  Int lcm = 1;
  for (const Rat& x : v) {
    Int d = x.denominator();
    Int g = std::__gcd(lcm, d);
    lcm = lcm / g * d;
  }
  IntVec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    w[i] = v[i].numerator() * (lcm / v[i].denominator());
  Int g = 0;
  for (Int x : w) g = std::__gcd(g, x < 0 ? -x : x);
  if (g > 1)
    for (Int& x : w) x /= g;
  for (Int x : w) {
    if (x > 0) break;
    if (x < 0) {
      for (Int& y : w) y = -y;
      break;
    }
  }
  return w;
}

}  // namespace ncchain

namespace std {
template <>
struct hash<ncchain::IntVec> {
  size_t operator()(const ncchain::IntVec& v) const {
    size_t h = 1469598103u;
    for (long long x : v) {
      h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};
}  // namespace std
