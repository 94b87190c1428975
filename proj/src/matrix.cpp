#include "hdflow/matrix.hpp"

namespace hdflow {

FieldElement det_field(const Matrix<FieldElement>& m) {
    if (m.rows() != m.cols()) raise(errc::shape_mismatch, "determinant of a non-square matrix");
    const size_t n = m.rows();
    if (n == 0) return ring_one_like(m.proto());
    Matrix<FieldElement> w = m;
    const CtxPtr& ctx = m.proto().ctx();
    FieldElement d = ctx->one();
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        while (piv < n && w.at(piv, k).is_zero()) ++piv;
        if (piv == n) return ctx->zero();
        if (piv != k) {
            w.swap_rows(piv, k);
            d = -d;
        }
        d = d * w.at(k, k);
        FieldElement inv = ff_inv(w.at(k, k));
        for (size_t i = k + 1; i < n; ++i) {
            if (w.at(i, k).is_zero()) continue;
            FieldElement f = w.at(i, k) * inv;
            for (size_t j = k + 1; j < n; ++j) w.at(i, j) = w.at(i, j) - f * w.at(k, j);
            w.at(i, k) = ctx->zero();
        }
    }
    return d;
}

} // namespace hdflow
