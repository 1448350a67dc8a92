#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ffreduce/elemword.hpp"
#include "ffreduce/matrix.hpp"

namespace ffreduce {

// A row-operation word reducing its input to the identity.
struct ReductionResult {
    Word word;  // product order; eval_word(word, A) = I
    std::uint64_t op_count = 0;
    std::string algorithm;
    std::size_t stripe_width = 0;  // 0 for gauss_jordan
};

// Which row representation the elimination runs on. The packed GF(2) path
// must emit exactly the same word as the generic one; `automatic` picks
// packed when q = 2.
enum class RowBackend { automatic, generic, packed_gf2 };

// Width w = max(1, floor(log_q n - 2 log_q(max(log_q n, q)))), clamped to
// [1, n]; keeps q^w <= n so the table sweeps stay subdominant.
std::size_t default_stripe_width(std::size_t n, std::uint64_t q);

// ceil(n/w) * (n + 2 q^w + 3 w^2 + w), saturating at uint64 max.
std::uint64_t striped_op_bound(std::size_t n, std::uint64_t q, std::size_t w);

// Full Gauss-Jordan reduction; at most n^2 operations (checked at runtime).
// Throws std::domain_error naming the failing pivot column on singular input.
ReductionResult gauss_jordan(const Matrix& A, RowBackend backend = RowBackend::automatic);

// Striped elimination: per stripe of w columns, pick w pivot rows, reduce
// their diagonal block to the identity, then clear every other row's stripe
// pattern with one AddMul each by walking an accumulator row through the
// normalized patterns in Gray-code order. Forward pass only; clears above
// and below. Op count is checked against striped_op_bound at runtime.
// Throws std::domain_error on singular input, std::invalid_argument when the
// width is outside [1, n] or makes the q^w sweep infeasible.
ReductionResult striped_eliminate(const Matrix& A, std::size_t width,
                                  RowBackend backend = RowBackend::automatic);

struct VerifyReport {
    bool ok = false;
    // When verification fails and the word is small enough to replay, the
    // earliest op index (1-based, application order) from which the states
    // stop matching the trajectory reconstructed backwards from I.
    std::optional<std::size_t> first_bad_op;
    std::string message;
};

// Checks eval_word(word, A) = I.
VerifyReport verify_reduction(const Matrix& A, const ReductionResult& result);

// eval_word(word, I) = A^-1; verifies A * A^-1 = I and throws on mismatch.
Matrix invert_via_word(const Matrix& A, const ReductionResult& result);

}  // namespace ffreduce
