#pragma once

#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace gammalab {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major storage.
///
/// This is the single carrier type for every matrix in the library
/// (operator tuples, pencils, Toeplitz blocks).  Entries must be finite;
/// constructors taking data enforce this.
class CMatrix {
public:
    CMatrix() = default;

    CMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("CMatrix: negative dimension");
    }

    CMatrix(int rows, int cols, std::vector<Complex> data);

    /// Row-major brace construction, e.g. CMatrix{{a,b},{c,d}}.
    CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static CMatrix identity(int n);
    static CMatrix zero(int rows, int cols) { return CMatrix(rows, cols); }
    /// n x n matrix with ones on the first subdiagonal (truncated shift).
    static CMatrix lower_shift(int n);
    static CMatrix diagonal(const std::vector<Complex>& d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    bool empty() const { return a_.empty(); }

    Complex& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Complex& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    const std::vector<Complex>& data() const { return a_; }

    CMatrix operator+(const CMatrix& o) const;
    CMatrix operator-(const CMatrix& o) const;
    CMatrix operator*(const CMatrix& o) const;
    CMatrix operator*(Complex c) const;
    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);

    /// Conjugate transpose.
    CMatrix adjoint() const;
    CMatrix transpose() const;
    /// Entrywise complex conjugate.
    CMatrix conj() const;

    /// Principal submatrix of the leading k rows and columns.
    CMatrix leading(int k) const;
    /// Rectangular block starting at (i0, j0).
    CMatrix block(int i0, int j0, int r, int c) const;
    void set_block(int i0, int j0, const CMatrix& b);

    /// Kronecker product, block (i,j) of the result equal to (*this)(i,j)*b.
    CMatrix kron(const CMatrix& b) const;

    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;

    void check_square(const char* who) const {
        if (!square()) throw std::invalid_argument(std::string(who) + ": matrix must be square");
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Complex> a_;
};

inline CMatrix operator*(Complex c, const CMatrix& m) { return m * c; }

/// ||a*b - b*a||_F.
double commutator_norm(const CMatrix& a, const CMatrix& b);

}  // namespace gammalab
