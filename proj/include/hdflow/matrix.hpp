#pragma once

#include <vector>

#include "hdflow/poly.hpp"

// Exact dense matrices over a field or over a polynomial ring, with just the
// linear algebra the kernel constructions need: determinants and the signed
// maximal minors of an r x (r+1) matrix, which form a kernel vector.

namespace hdflow {

template <class T>
class Matrix {
  public:
    // fill doubles as the ring prototype, so even an empty matrix keeps the
    // context needed to produce 0 and 1 of the right ring
    Matrix(size_t rows, size_t cols, T fill)
        : r_(rows), c_(cols), proto_(std::move(fill)), e_(rows * cols, proto_) {}

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    const T& proto() const { return proto_; }

    T& at(size_t r, size_t c) {
        if (r >= r_ || c >= c_) raise(errc::index_out_of_range, "matrix index");
        return e_[r * c_ + c];
    }
    const T& at(size_t r, size_t c) const {
        if (r >= r_ || c >= c_) raise(errc::index_out_of_range, "matrix index");
        return e_[r * c_ + c];
    }

    Matrix remove_col(size_t j) const {
        if (j >= c_) raise(errc::index_out_of_range, "column to remove");
        Matrix out(r_, c_ - 1, proto_);
        for (size_t r = 0; r < r_; ++r)
            for (size_t c = 0, o = 0; c < c_; ++c)
                if (c != j) out.at(r, o++) = at(r, c);
        return out;
    }

    void swap_rows(size_t i, size_t j) {
        for (size_t c = 0; c < c_; ++c) std::swap(e_[i * c_ + c], e_[j * c_ + c]);
    }

  private:
    size_t r_, c_;
    T proto_;
    std::vector<T> e_;
};

inline FieldElement ring_zero_like(const FieldElement& x) { return x.ctx()->zero(); }
inline FieldElement ring_one_like(const FieldElement& x) { return x.ctx()->one(); }
inline UniPoly ring_zero_like(const UniPoly& x) { return UniPoly::zero(x.ctx()); }
inline UniPoly ring_one_like(const UniPoly& x) { return UniPoly::one(x.ctx()); }
inline BiPoly ring_zero_like(const BiPoly& x) { return BiPoly::zero(x.p()); }
inline BiPoly ring_one_like(const BiPoly& x) { return BiPoly::one(x.p()); }

// Gaussian elimination with exact division; det of a 0x0 matrix is 1
FieldElement det_field(const Matrix<FieldElement>& m);

// Bareiss fraction-free determinant over an integral domain. Every interior
// division is exact; a nonzero remainder would mean broken ring arithmetic.
template <class T>
T det_ring(const Matrix<T>& m) {
    if (m.rows() != m.cols()) raise(errc::shape_mismatch, "determinant of a non-square matrix");
    const size_t n = m.rows();
    if (n == 0) return ring_one_like(m.proto());
    Matrix<T> w = m;
    bool negate = false;
    T prev = ring_one_like(m.proto());
    for (size_t k = 0; k + 1 < n; ++k) {
        size_t piv = k;
        while (piv < n && w.at(piv, k).is_zero()) ++piv;
        if (piv == n) return ring_zero_like(m.proto());
        if (piv != k) {
            w.swap_rows(piv, k);
            negate = !negate;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j)
                w.at(i, j) = divexact(w.at(k, k) * w.at(i, j) - w.at(i, k) * w.at(k, j), prev);
            w.at(i, k) = ring_zero_like(m.proto());
        }
        prev = w.at(k, k);
    }
    T d = w.at(n - 1, n - 1);
    return negate ? -d : d;
}

inline FieldElement det(const Matrix<FieldElement>& m) { return det_field(m); }
inline UniPoly det(const Matrix<UniPoly>& m) { return det_ring(m); }
inline BiPoly det(const Matrix<BiPoly>& m) { return det_ring(m); }

// For an r x (r+1) matrix M, the vector v with v_i = (-1)^i det(M minus
// column i), columns 0-indexed, satisfies M v = 0: appending any row of M to
// M itself gives a square matrix with a repeated row, whose cofactor
// expansion along that row is exactly (M v)_row.
template <class T>
std::vector<T> kernel_cofactors(const Matrix<T>& m) {
    if (m.rows() + 1 != m.cols()) raise(errc::shape_mismatch, "kernel_cofactors wants r x (r+1)");
    std::vector<T> v;
    v.reserve(m.cols());
    for (size_t j = 0; j < m.cols(); ++j) {
        T d = det(m.remove_col(j));
        v.push_back(j % 2 ? -d : d);
    }
    return v;
}

} // namespace hdflow
