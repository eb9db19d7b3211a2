// Contiguous storage for arrays of complex d x d blocks, plus the small
// multiply-accumulate kernels used by the hot quadrature loops.
//
// Blocks are column-major to match Eigen's default, so Eigen::Map views are
// free. The lower-triangular array packs block (i, j), i >= j, at linear
// index i(i+1)/2 + j; a row of blocks is therefore contiguous in j.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstring>
#include <vector>

#include "starframe/errors.hpp"

namespace starframe {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using MatrixMap = Eigen::Map<Matrix>;
using ConstMatrixMap = Eigen::Map<const Matrix>;

namespace blk {

inline void zero(cxd* c, int d) { std::memset(c, 0, sizeof(cxd) * d * d); }

inline void copy(cxd* c, const cxd* a, int d) { std::memcpy(c, a, sizeof(cxd) * d * d); }

inline void add(cxd* c, const cxd* a, int d) {
  for (int k = 0; k < d * d; ++k) c[k] += a[k];
}

inline void axpy(cxd* c, const cxd* a, double w, int d) {
  const int nn = d * d;
  for (int k = 0; k < nn; ++k) c[k] += w * a[k];
}

inline void scale(cxd* c, cxd s, int d) {
  for (int k = 0; k < d * d; ++k) c[k] *= s;
}

inline void set_identity(cxd* c, int d) {
  zero(c, d);
  for (int k = 0; k < d; ++k) c[k * d + k] = 1.0;
}

/// C += A * B with weight w: C += w * A * B.
inline void mac(cxd* __restrict c, const cxd* __restrict a, const cxd* __restrict b, int d,
                double w = 1.0) {
  if (d == 2) {  // dominant case in the drivers; unrolled
    const cxd b00 = w * b[0], b10 = w * b[1], b01 = w * b[2], b11 = w * b[3];
    c[0] += a[0] * b00 + a[2] * b10;
    c[1] += a[1] * b00 + a[3] * b10;
    c[2] += a[0] * b01 + a[2] * b11;
    c[3] += a[1] * b01 + a[3] * b11;
    return;
  }
  for (int col = 0; col < d; ++col)
    for (int k = 0; k < d; ++k) {
      const cxd bk = w * b[col * d + k];
      const cxd* ak = a + k * d;
      cxd* ck = c + col * d;
      for (int r = 0; r < d; ++r) ck[r] += ak[r] * bk;
    }
}

/// C = A * B.
inline void mul(cxd* c, const cxd* a, const cxd* b, int d) {
  zero(c, d);
  mac(c, a, b, d);
}

inline double sq_norm(const cxd* a, int d) {
  double s = 0;
  for (int k = 0; k < d * d; ++k) s += std::norm(a[k]);
  return s;
}

}  // namespace blk

/// Dense array of n complex d x d blocks (one per grid node).
class BlockDiag {
 public:
  BlockDiag() = default;
  BlockDiag(int n, int d) : n_(n), d_(d), data_(static_cast<size_t>(n) * d * d, cxd(0)) {}

  int count() const { return n_; }
  int dim() const { return d_; }
  cxd* block(int i) { return data_.data() + static_cast<size_t>(i) * d_ * d_; }
  const cxd* block(int i) const { return data_.data() + static_cast<size_t>(i) * d_ * d_; }
  MatrixMap map(int i) { return MatrixMap(block(i), d_, d_); }
  ConstMatrixMap map(int i) const { return ConstMatrixMap(block(i), d_, d_); }

 private:
  int n_ = 0, d_ = 0;
  std::vector<cxd> data_;
};

/// Lower-triangular array of complex d x d blocks, indices (i, j) with i >= j.
class BlockTriangle {
 public:
  BlockTriangle() = default;
  BlockTriangle(int n, int d)
      : n_(n), d_(d), data_(static_cast<size_t>(n) * (n + 1) / 2 * d * d, cxd(0)) {}

  int nodes() const { return n_; }
  int dim() const { return d_; }

  cxd* block(int i, int j) { return data_.data() + offset(i, j); }
  const cxd* block(int i, int j) const { return data_.data() + offset(i, j); }
  MatrixMap map(int i, int j) { return MatrixMap(block(i, j), d_, d_); }
  ConstMatrixMap map(int i, int j) const { return ConstMatrixMap(block(i, j), d_, d_); }

  /// Max Frobenius norm over all stored blocks.
  double max_block_norm() const {
    double m = 0;
    const int dd = d_ * d_;
    for (size_t off = 0; off < data_.size(); off += dd)
      m = std::max(m, blk::sq_norm(data_.data() + off, d_));
    return std::sqrt(m);
  }

 private:
  size_t offset(int i, int j) const {
    return (static_cast<size_t>(i) * (i + 1) / 2 + j) * d_ * d_;
  }
  int n_ = 0, d_ = 0;
  std::vector<cxd> data_;
};

}  // namespace starframe
