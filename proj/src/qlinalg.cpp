#include "nsi/qlinalg.hpp"

#include <ostream>
#include <sstream>

namespace nsi {

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Rat Rat::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int n(s.substr(0, slash));
        Int d(s.substr(slash + 1));
        if (d == 0) throw DivisionByZero("zero denominator");
        return Rat(n, d);
    } catch (const std::exception& e) {
        if (dynamic_cast<const Error*>(&e)) throw;
        throw ParseError("bad rational '" + s + "'");
    }
}

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Rat>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionMismatch("ragged initializer");
        for (const auto& x : r) a_.push_back(x);
    }
}

bool QMatrix::is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

bool QMatrix::is_integral() const {
    for (const auto& x : a_)
        if (!x.is_integer()) return false;
    return true;
}

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QVector add(const QVector& a, const QVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector add");
    QVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

QVector sub(const QVector& a, const QVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector sub");
    QVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

QVector scale(const Rat& c, const QVector& v) {
    QVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

Rat dot(const QVector& a, const QVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector dot");
    Rat s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

QVector mul(const QMatrix& M, const QVector& v) {
    if (M.cols() != v.size()) throw DimensionMismatch("matrix-vector product");
    QVector r(M.rows());
    for (std::size_t i = 0; i < M.rows(); ++i) {
        Rat s;
        for (std::size_t j = 0; j < M.cols(); ++j) s += M.at(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

QMatrix mul(const QMatrix& A, const QMatrix& B) {
    if (A.cols() != B.rows()) throw DimensionMismatch("matrix product");
    QMatrix r(A.rows(), B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t k = 0; k < A.cols(); ++k) {
            if (A.at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < B.cols(); ++j)
                r.at(i, j) += A.at(i, k) * B.at(k, j);
        }
    return r;
}

namespace {

Int lcm_int(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return a / boost::multiprecision::gcd(a, b) * b;
}

// Clear denominators row by row: returns the integer matrix whose row i is
// the input row times a positive scalar. Scalars are discarded by callers
// that only need pivot signs or a solution (scaling rows of [A|b] keeps
// the solution set).
std::vector<std::vector<Int>> cleared_rows(const QMatrix& M, const QVector* rhs) {
    std::vector<std::vector<Int>> W(M.rows());
    for (std::size_t i = 0; i < M.rows(); ++i) {
        Int l = 1;
        for (std::size_t j = 0; j < M.cols(); ++j) l = lcm_int(l, M.at(i, j).den());
        if (rhs) l = lcm_int(l, (*rhs)[i].den());
        W[i].resize(M.cols() + (rhs ? 1 : 0));
        for (std::size_t j = 0; j < M.cols(); ++j)
            W[i][j] = M.at(i, j).num() * (l / M.at(i, j).den());
        if (rhs) W[i][M.cols()] = (*rhs)[i].num() * (l / (*rhs)[i].den());
    }
    return W;
}

// Fraction-free forward elimination in place; returns false if singular.
// With pivoting allowed, rows may be swapped (tracked via sign).
bool bareiss_forward(std::vector<std::vector<Int>>& W, std::size_t n, bool pivot,
                     int* sign_out) {
    int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (W[k][k] == 0) {
            if (!pivot) return false;
            std::size_t r = k + 1;
            while (r < n && W[r][k] == 0) ++r;
            if (r == n) return false;
            std::swap(W[k], W[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < W[i].size(); ++j)
                W[i][j] = (W[i][j] * W[k][k] - W[i][k] * W[k][j]) / prev;
            W[i][k] = 0;
        }
        prev = W[k][k];
    }
    if (W[n - 1][n - 1] == 0) return false;
    if (sign_out) *sign_out = sign;
    return true;
}

} // namespace

QVector solve_linear(const QMatrix& M, const QVector& b) {
    if (!M.is_square()) throw DimensionMismatch("solve needs a square matrix");
    if (M.rows() != b.size()) throw DimensionMismatch("solve rhs length");
    const std::size_t n = M.rows();
    if (n == 0) return {};
    auto W = cleared_rows(M, &b);
    if (!bareiss_forward(W, n, true, nullptr))
        throw SingularMatrix("zero pivot in elimination");
    QVector x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rat s(W[i][n]);
        for (std::size_t j = i + 1; j < n; ++j) s -= Rat(W[i][j]) * x[j];
        x[i] = s / Rat(W[i][i]);
    }
    return x;
}

Rat det(const QMatrix& M) {
    if (!M.is_square()) throw DimensionMismatch("determinant of non-square matrix");
    const std::size_t n = M.rows();
    if (n == 0) return Rat(1);
    // Row scalars from denominator clearing multiply the determinant; divide
    // them back out at the end.
    std::vector<std::vector<Int>> W(n);
    Rat correction(1);
    for (std::size_t i = 0; i < n; ++i) {
        Int l = 1;
        for (std::size_t j = 0; j < n; ++j) l = lcm_int(l, M.at(i, j).den());
        W[i].resize(n);
        for (std::size_t j = 0; j < n; ++j)
            W[i][j] = M.at(i, j).num() * (l / M.at(i, j).den());
        correction *= Rat(l);
    }
    int sign = 1;
    if (!bareiss_forward(W, n, true, &sign)) return Rat(0);
    Int d = W[n - 1][n - 1];
    if (sign < 0) d = -d;
    return Rat(d) / correction;
}

bool is_negative_definite(const QMatrix& M) {
    if (!M.is_square() || !M.is_symmetric())
        throw NotSymmetric("definiteness needs a symmetric matrix");
    const std::size_t n = M.rows();
    if (n == 0) return true;
    // Leading principal minors appear as the Bareiss pivots when no row
    // exchange happens: after step k-1, W[k][k] = det(M_{k+1}) * (row scalars).
    // Row scalars are positive, so signs are unaffected. A zero pivot means
    // some det(M_k) = 0, which already refutes definiteness.
    auto W = cleared_rows(M, nullptr);
    Int prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        const Int& minor_signed = W[k][k];
        if (minor_signed == 0) return false;
        int expected = (k % 2 == 0) ? -1 : 1;
        if ((minor_signed < 0 ? -1 : 1) != expected) return false;
        if (k + 1 == n) break;
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                W[i][j] = (W[i][j] * W[k][k] - W[i][k] * W[k][j]) / prev;
            W[i][k] = 0;
        }
        prev = W[k][k];
    }
    return true;
}

Signature signature(const QMatrix& M) {
    if (!M.is_square() || !M.is_symmetric())
        throw NotSymmetric("signature needs a symmetric matrix");
    const std::size_t n = M.rows();
    QMatrix A = M;
    Signature sig;

    auto swap_rc = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < n; ++j) std::swap(A.at(a, j), A.at(b, j));
        for (std::size_t i = 0; i < n; ++i) std::swap(A.at(i, a), A.at(i, b));
    };

    std::size_t k = 0;
    while (k < n) {
        if (A.at(k, k).is_zero()) {
            // prefer a later nonzero diagonal entry
            std::size_t d = k + 1;
            while (d < n && A.at(d, d).is_zero()) ++d;
            if (d < n) {
                swap_rc(k, d);
            } else {
                // all remaining diagonal entries vanish; look for an
                // off-diagonal partner to form a hyperbolic pair
                std::size_t p = k + 1;
                while (p < n && A.at(k, p).is_zero()) ++p;
                if (p == n) {
                    // row k is entirely zero on the remaining block
                    ++sig.zero;
                    ++k;
                    continue;
                }
                swap_rc(k + 1, p);
                const Rat b = A.at(k, k + 1);
                // congruence-eliminate the pair (k, k+1) with block [[0,b],[b,0]]
                for (std::size_t i = k + 2; i < n; ++i) {
                    Rat f1 = A.at(i, k + 1) / b; // multiplies row k
                    Rat f2 = A.at(i, k) / b;     // multiplies row k+1
                    if (f1.is_zero() && f2.is_zero()) continue;
                    for (std::size_t j = k + 2; j < n; ++j)
                        A.at(i, j) -= f1 * A.at(k, j) + f2 * A.at(k + 1, j);
                    A.at(i, k) = A.at(i, k + 1) = Rat(0);
                }
                for (std::size_t j = k + 2; j < n; ++j)
                    A.at(k, j) = A.at(k + 1, j) = Rat(0);
                ++sig.positive;
                ++sig.negative;
                k += 2;
                continue;
            }
        }
        const Rat p = A.at(k, k);
        if (p.sign() > 0) ++sig.positive; else ++sig.negative;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (A.at(i, k).is_zero()) continue;
            Rat f = A.at(i, k) / p;
            for (std::size_t j = k + 1; j < n; ++j) A.at(i, j) -= f * A.at(k, j);
            A.at(i, k) = Rat(0);
        }
        for (std::size_t j = k + 1; j < n; ++j) A.at(k, j) = Rat(0);
        ++k;
    }
    return sig;
}

std::size_t rank(const QMatrix& M) {
    QMatrix A = M;
    const std::size_t rows = A.rows(), cols = A.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && A.at(piv, c).is_zero()) ++piv;
        if (piv == rows) continue;
        for (std::size_t j = 0; j < cols; ++j) std::swap(A.at(r, j), A.at(piv, j));
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (A.at(i, c).is_zero()) continue;
            Rat f = A.at(i, c) / A.at(r, c);
            for (std::size_t j = c; j < cols; ++j) A.at(i, j) -= f * A.at(r, j);
        }
        ++r;
    }
    return r;
}

} // namespace nsi
