#include "gammalab/matrix.hpp"

#include <cmath>

namespace gammalab {

namespace {
void require_finite(const std::vector<Complex>& a) {
    for (const Complex& z : a) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("CMatrix: non-finite entry");
    }
}
}  // namespace

CMatrix::CMatrix(int rows, int cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), a_(std::move(data)) {
    if (rows < 0 || cols < 0 || a_.size() != static_cast<size_t>(rows) * cols)
        throw std::invalid_argument("CMatrix: data size does not match shape");
    require_finite(a_);
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
    a_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != cols_)
            throw std::invalid_argument("CMatrix: ragged initializer");
        a_.insert(a_.end(), r.begin(), r.end());
    }
    require_finite(a_);
}

CMatrix CMatrix::identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::lower_shift(int n) {
    CMatrix m(n, n);
    for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(const std::vector<Complex>& d) {
    CMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

CMatrix CMatrix::operator+(const CMatrix& o) const {
    CMatrix r = *this;
    r += o;
    return r;
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
    CMatrix r = *this;
    r -= o;
    return r;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("CMatrix: shape mismatch in +");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("CMatrix: shape mismatch in -");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("CMatrix: shape mismatch in *");
    CMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const Complex aik = (*this)(i, k);
            if (aik == Complex(0.0)) continue;
            for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
        }
    }
    return r;
}

CMatrix CMatrix::operator*(Complex c) const {
    CMatrix r = *this;
    for (Complex& z : r.a_) z *= c;
    return r;
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

CMatrix CMatrix::transpose() const {
    CMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

CMatrix CMatrix::conj() const {
    CMatrix r = *this;
    for (Complex& z : r.a_) z = std::conj(z);
    return r;
}

CMatrix CMatrix::leading(int k) const { return block(0, 0, k, k); }

CMatrix CMatrix::block(int i0, int j0, int r, int c) const {
    if (i0 < 0 || j0 < 0 || i0 + r > rows_ || j0 + c > cols_)
        throw std::invalid_argument("CMatrix: block out of range");
    CMatrix b(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
    return b;
}

void CMatrix::set_block(int i0, int j0, const CMatrix& b) {
    if (i0 < 0 || j0 < 0 || i0 + b.rows_ > rows_ || j0 + b.cols_ > cols_)
        throw std::invalid_argument("CMatrix: set_block out of range");
    for (int i = 0; i < b.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j) (*this)(i0 + i, j0 + j) = b(i, j);
}

CMatrix CMatrix::kron(const CMatrix& b) const {
    CMatrix r(rows_ * b.rows_, cols_ * b.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            const Complex aij = (*this)(i, j);
            if (aij == Complex(0.0)) continue;
            for (int k = 0; k < b.rows_; ++k)
                for (int l = 0; l < b.cols_; ++l)
                    r(i * b.rows_ + k, j * b.cols_ + l) = aij * b(k, l);
        }
    return r;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const Complex& z : a_) s += std::norm(z);
    return std::sqrt(s);
}

double CMatrix::max_abs() const {
    double s = 0.0;
    for (const Complex& z : a_) s = std::max(s, std::abs(z));
    return s;
}

bool CMatrix::all_finite() const {
    for (const Complex& z : a_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

double commutator_norm(const CMatrix& a, const CMatrix& b) {
    return (a * b - b * a).frobenius_norm();
}

}  // namespace gammalab
