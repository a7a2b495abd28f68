#include "esor/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace esor {

Mat Mat::identity(std::size_t n) {
    Mat m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    Mat m(rows.size(), rows.size() ? rows.begin()->size() : 0);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != m.cols) throw DomainError("Mat::from_rows: ragged rows");
        std::size_t j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

void check_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw NonFiniteError(std::string("non-finite value in ") + what);
}

void check_finite(const Vec& v, const char* what) {
    for (double x : v) check_finite(x, what);
}

void check_finite(const Mat& m, const char* what) {
    for (double x : m.a) check_finite(x, what);
}

double dot(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw DomainError("dot: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double norm2(const Vec& x) { return std::sqrt(dot(x, x)); }

double norm_inf(const Vec& x) {
    double s = 0.0;
    for (double v : x) s = std::max(s, std::abs(v));
    return s;
}

Vec add(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw DomainError("add: size mismatch");
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return r;
}

Vec sub(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw DomainError("sub: size mismatch");
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
    return r;
}

Vec scale(const Vec& x, double s) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = s * x[i];
    return r;
}

Vec axpy(const Vec& x, double s, const Vec& y) {
    if (x.size() != y.size()) throw DomainError("axpy: size mismatch");
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + s * y[i];
    return r;
}

Vec operator*(const Mat& m, const Vec& x) {
    if (m.cols != x.size()) throw DomainError("mat*vec: size mismatch");
    Vec r(m.rows, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols; ++j) s += m(i, j) * x[j];
        r[i] = s;
    }
    return r;
}

Mat operator*(const Mat& m, const Mat& n) {
    if (m.cols != n.rows) throw DomainError("mat*mat: size mismatch");
    Mat r(m.rows, n.cols, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t k = 0; k < m.cols; ++k) {
            const double mik = m(i, k);
            if (mik == 0.0) continue;
            for (std::size_t j = 0; j < n.cols; ++j) r(i, j) += mik * n(k, j);
        }
    return r;
}

Mat operator+(const Mat& m, const Mat& n) {
    if (m.rows != n.rows || m.cols != n.cols) throw DomainError("mat+mat: size mismatch");
    Mat r = m;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += n.a[i];
    return r;
}

Mat operator-(const Mat& m, const Mat& n) {
    if (m.rows != n.rows || m.cols != n.cols) throw DomainError("mat-mat: size mismatch");
    Mat r = m;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= n.a[i];
    return r;
}

Mat transpose(const Mat& m) {
    Mat r(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) r(j, i) = m(i, j);
    return r;
}

double trace(const Mat& m) {
    if (m.rows != m.cols) throw DomainError("trace: matrix not square");
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i) s += m(i, i);
    return s;
}

Vec linear_solve(Mat A, Vec b) {
    if (A.rows != A.cols) throw DomainError("linear_solve: matrix not square");
    if (A.rows != b.size()) throw DomainError("linear_solve: rhs size mismatch");
    check_finite(A, "linear_solve matrix");
    check_finite(b, "linear_solve rhs");

    const std::size_t n = A.rows;
    double scale_ = 0.0;
    for (double v : A.a) scale_ = std::max(scale_, std::abs(v));
    const double pivot_floor = 1e-12 * std::max(1.0, scale_);

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::abs(A(i, col)) > std::abs(A(piv, col))) piv = i;
        if (std::abs(A(piv, col)) < pivot_floor)
            throw SingularMatrixError("linear_solve: pivot below threshold");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A(piv, j), A(col, j));
            std::swap(b[piv], b[col]);
        }
        const double d = A(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            const double f = A(i, col) / d;
            if (f == 0.0) continue;
            A(i, col) = 0.0;
            for (std::size_t j = col + 1; j < n; ++j) A(i, j) -= f * A(col, j);
            b[i] -= f * b[col];
        }
    }
    Vec x(n, 0.0);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= A(ii, j) * x[j];
        x[ii] = s / A(ii, ii);
    }
    check_finite(x, "linear_solve result");
    return x;
}

std::size_t matrix_rank(Mat m, double tol) {
    double scale_ = 0.0;
    for (double v : m.a) scale_ = std::max(scale_, std::abs(v));
    if (scale_ == 0.0) return 0;
    const double floor_ = tol * scale_;

    std::size_t rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t piv = row;
        for (std::size_t i = row + 1; i < m.rows; ++i)
            if (std::abs(m(i, col)) > std::abs(m(piv, col))) piv = i;
        if (std::abs(m(piv, col)) <= floor_) continue;
        if (piv != row)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(row, j));
        for (std::size_t i = row + 1; i < m.rows; ++i) {
            const double f = m(i, col) / m(row, col);
            for (std::size_t j = col; j < m.cols; ++j) m(i, j) -= f * m(row, j);
        }
        ++row;
        ++rank;
    }
    return rank;
}

Vec char_poly(const Mat& m) {
    if (m.rows != m.cols) throw DomainError("char_poly: matrix not square");
    const std::size_t n = m.rows;
    Vec c(n + 1, 0.0);
    c[0] = 1.0;
    Mat M = Mat::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        const Mat AM = m * M;
        c[k] = -trace(AM) / static_cast<double>(k);
        M = AM;
        for (std::size_t i = 0; i < n; ++i) M(i, i) += c[k];
    }
    check_finite(c, "char_poly coefficients");
    return c;
}

} // namespace esor
