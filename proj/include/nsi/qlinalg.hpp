#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "nsi/rational.hpp"

namespace nsi {

using QVector = std::vector<Rat>;

// Dense rational matrix, plain value semantics.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c) {}
    QMatrix(std::initializer_list<std::initializer_list<Rat>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const QMatrix& o) const = default;

    bool is_square() const { return rows_ == cols_; }
    bool is_symmetric() const;
    bool is_integral() const;

    static QMatrix identity(std::size_t n);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> a_;
};

struct Signature {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;
    bool operator==(const Signature&) const = default;
};

QVector add(const QVector& a, const QVector& b);
QVector sub(const QVector& a, const QVector& b);
QVector scale(const Rat& c, const QVector& v);
Rat dot(const QVector& a, const QVector& b);
QVector mul(const QMatrix& M, const QVector& v);
QMatrix mul(const QMatrix& A, const QMatrix& B);

// Exact solve of M x = b for square nonsingular M. Elimination is
// fraction-free (Bareiss) on a denominator-cleared integer copy; the
// back substitution performs the only divisions.
QVector solve_linear(const QMatrix& M, const QVector& b);

// Spec-facing name: every Gram-matrix system in the engine is symmetric,
// the routine itself only needs squareness.
inline QVector solve_symmetric(const QMatrix& M, const QVector& b) {
    return solve_linear(M, b);
}

// Fraction-free determinant.
Rat det(const QMatrix& M);

// Sylvester test: sign(det M_k) = (-1)^k for all leading principal minors.
bool is_negative_definite(const QMatrix& M);

// Inertia (positive, negative, zero) via symmetric congruence
// diagonalization. Zero diagonal pivots with a nonzero off-diagonal
// partner are handled as 2x2 hyperbolic blocks, each contributing (1,1,0).
Signature signature(const QMatrix& M);

std::size_t rank(const QMatrix& M);

} // namespace nsi
