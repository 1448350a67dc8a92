#include "ffreduce/matrix.hpp"

#include <stdexcept>
#include <string>

#include "ffreduce/rng.hpp"

namespace ffreduce {

Matrix Matrix::identity(std::size_t n, const Field& f) {
    Matrix I(n, f);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
    return I;
}

namespace {

void check_index(const Matrix& A, std::uint32_t idx) {
    if (idx >= A.n()) throw std::out_of_range("apply_op: row index " + std::to_string(idx) + " out of range");
}

}  // namespace

void apply_op_in_place(Matrix& A, const ElementaryOp& op, OpCounter& counter) {
    check_index(A, op.i);
    check_index(A, op.j);
    const Field& f = A.field();
    const std::size_t n = A.n();
    switch (op.kind) {
        case OpKind::Swap:
            for (std::size_t c = 0; c < n; ++c) std::swap(A(op.i, c), A(op.j, c));
            break;
        case OpKind::Scale:
            for (std::size_t c = 0; c < n; ++c) A(op.i, c) = f.mul(A(op.i, c), op.lambda);
            break;
        case OpKind::AddMul:
            for (std::size_t c = 0; c < n; ++c) A(op.j, c) = f.add(A(op.j, c), f.mul(op.lambda, A(op.i, c)));
            break;
    }
    ++counter.ops;
}

Matrix apply_op(const Matrix& A, const ElementaryOp& op, OpCounter& counter) {
    Matrix R = A;
    apply_op_in_place(R, op, counter);
    return R;
}

Matrix elementary_matrix(const ElementaryOp& op, std::size_t n, const Field& f) {
    OpCounter scratch;
    Matrix E = Matrix::identity(n, f);
    apply_op_in_place(E, op, scratch);
    return E;
}

Matrix matmul(const Matrix& A, const Matrix& B) {
    if (A.n() != B.n()) throw std::invalid_argument("matmul: dimension mismatch");
    const Field& f = A.field();
    const std::size_t n = A.n();
    Matrix C(n, f);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const felem a = A(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < n; ++j) C(i, j) = f.add(C(i, j), f.mul(a, B(k, j)));
        }
    return C;
}

namespace detail {

// Forward elimination pivot count on a scratch copy.
std::size_t rank_generic_impl(Matrix A) {
    const Field& f = A.field();
    const std::size_t n = A.n();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < n; ++c) {
        std::size_t piv = r;
        while (piv < n && A(piv, c) == 0) ++piv;
        if (piv == n) continue;
        if (piv != r)
            for (std::size_t k = c; k < n; ++k) std::swap(A(r, k), A(piv, k));
        const felem ipiv = f.inv(A(r, c));
        for (std::size_t i = r + 1; i < n; ++i) {
            const felem v = A(i, c);
            if (v == 0) continue;
            const felem factor = f.mul(v, ipiv);
            for (std::size_t k = c; k < n; ++k) A(i, k) = f.sub(A(i, k), f.mul(factor, A(r, k)));
        }
        ++r;
    }
    return r;
}

// Bit-packed forward elimination for q = 2; returns the same pivot count as
// the generic path.
std::size_t rank_gf2_impl(const Matrix& A) {
    const std::size_t n = A.n();
    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> rows(n * words, 0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (A(r, c)) rows[r * words + c / 64] |= 1ull << (c % 64);

    std::size_t rk = 0;
    for (std::size_t c = 0; c < n && rk < n; ++c) {
        const std::size_t w = c / 64;
        const std::uint64_t bit = 1ull << (c % 64);
        std::size_t piv = rk;
        while (piv < n && !(rows[piv * words + w] & bit)) ++piv;
        if (piv == n) continue;
        if (piv != rk)
            for (std::size_t k = 0; k < words; ++k) std::swap(rows[rk * words + k], rows[piv * words + k]);
        for (std::size_t i = rk + 1; i < n; ++i)
            if (rows[i * words + w] & bit)
                for (std::size_t k = w; k < words; ++k) rows[i * words + k] ^= rows[rk * words + k];
        ++rk;
    }
    return rk;
}

std::size_t rank_generic(const Matrix& A) { return rank_generic_impl(A); }

std::size_t rank_packed_gf2(const Matrix& A) {
    if (A.field().q() != 2) throw std::invalid_argument("rank_packed_gf2: field must be GF(2)");
    return rank_gf2_impl(A);
}

}  // namespace detail

std::size_t rank(const Matrix& A) {
    if (A.field().q() == 2 && A.n() >= 64) return detail::rank_gf2_impl(A);
    return detail::rank_generic_impl(A);
}

bool is_invertible(const Matrix& A) { return rank(A) == A.n(); }

GroupKey encode(const Matrix& A) {
    const std::uint32_t q = A.field().q();
    GroupKey key = 0;
    const auto& e = A.entries();
    for (std::size_t i = e.size(); i-- > 0;) {
        key *= q;
        key += e[i];
    }
    return key;
}

Matrix decode(const GroupKey& key, std::size_t n, const Field& f) {
    GroupKey space = boost::multiprecision::pow(GroupKey(f.q()), static_cast<unsigned>(n * n));
    if (key < 0 || key >= space) throw std::out_of_range("decode: key out of range for this (n, q)");
    Matrix A(n, f);
    GroupKey k = key;
    for (std::size_t i = 0; i < n * n; ++i) {
        A.entries()[i] = static_cast<felem>(static_cast<std::uint32_t>(k % f.q()));
        k /= f.q();
    }
    return A;
}

Matrix random_invertible(std::size_t n, const Field& f, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_invertible: n must be >= 1");
    Rng rng(seed);
    Matrix A(n, f);
    do {
        for (auto& v : A.entries()) v = static_cast<felem>(rng.below(f.q()));
    } while (!is_invertible(A));
    return A;
}

}  // namespace ffreduce
