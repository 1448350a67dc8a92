#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ffreduce/elemword.hpp"
#include "ffreduce/field.hpp"

namespace ffreduce {

// BFS state identity: key = sum of entries[r][c] * q^(r*n+c).
using GroupKey = boost::multiprecision::cpp_int;

// Explicit row-operation cost counter, passed by the caller so algorithms
// report exact op counts without hidden global state.
struct OpCounter {
    std::uint64_t ops = 0;
};

// Dense n x n matrix over GF(q), row-major.
class Matrix {
public:
    Matrix(std::size_t n, const Field& f) : n_(n), f_(&f), e_(n * n, 0) {}

    static Matrix identity(std::size_t n, const Field& f);

    std::size_t n() const { return n_; }
    const Field& field() const { return *f_; }

    felem operator()(std::size_t r, std::size_t c) const { return e_[r * n_ + c]; }
    felem& operator()(std::size_t r, std::size_t c) { return e_[r * n_ + c]; }

    const std::vector<felem>& entries() const { return e_; }
    std::vector<felem>& entries() { return e_; }

    bool operator==(const Matrix& o) const { return n_ == o.n_ && e_ == o.e_; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

private:
    std::size_t n_;
    const Field* f_;
    std::vector<felem> e_;
};

// Left-multiplication by the op's elementary matrix; charges one cost unit.
// Throws std::out_of_range for indices >= A.n().
Matrix apply_op(const Matrix& A, const ElementaryOp& op, OpCounter& counter);
void apply_op_in_place(Matrix& A, const ElementaryOp& op, OpCounter& counter);

// The matrix effecting op by left multiplication.
Matrix elementary_matrix(const ElementaryOp& op, std::size_t n, const Field& f);

Matrix matmul(const Matrix& A, const Matrix& B);

std::size_t rank(const Matrix& A);
bool is_invertible(const Matrix& A);

GroupKey encode(const Matrix& A);
// Throws std::out_of_range when key >= q^(n^2).
Matrix decode(const GroupKey& key, std::size_t n, const Field& f);

// Uniform over GL(n,q) by rejection: draw uniform entries, retry until
// invertible. Deterministic for a given seed.
Matrix random_invertible(std::size_t n, const Field& f, std::uint64_t seed);

namespace detail {
// Both rank routes, exposed so tests can check the q=2 bit-packed path
// against the generic one.
std::size_t rank_generic(const Matrix& A);
std::size_t rank_packed_gf2(const Matrix& A);
}  // namespace detail

}  // namespace ffreduce
