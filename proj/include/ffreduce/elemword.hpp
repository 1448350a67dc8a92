#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ffreduce/field.hpp"

namespace ffreduce {

class Matrix;
struct OpCounter;

enum class OpKind : std::uint8_t { Swap, Scale, AddMul };

// One row operation / elementary matrix:
//   Swap{i,j}        swap rows i and j                    (i != j, stored i < j)
//   Scale{i,lambda}  row i *= lambda                      (lambda not in {0,1})
//   AddMul{i,j,l}    row j += lambda * row i              (i != j, lambda != 0)
// Degenerate forms (identity matrices) are rejected at construction.
struct ElementaryOp {
    OpKind kind;
    std::uint32_t i;   // Swap: smaller row; Scale: row; AddMul: source row
    std::uint32_t j;   // Swap: larger row; Scale: == i;  AddMul: destination row
    felem lambda;      // Swap: 1 (unused)

    static ElementaryOp swap(std::uint32_t a, std::uint32_t b);
    static ElementaryOp scale(std::uint32_t row, felem lambda);
    static ElementaryOp add_mul(std::uint32_t src, std::uint32_t dst, felem lambda);

    bool operator==(const ElementaryOp& o) const = default;

    // Rows touched by the op; for AddMul this is the paper-facing index set.
    bool touches(std::uint32_t row) const;
    std::uint32_t max_index() const { return i > j ? i : j; }
};

// True when the two AddMul ops touch disjoint row pairs.
bool index_sets_disjoint(const ElementaryOp& a, const ElementaryOp& b);

// A word of elementary matrices in product order: ops[0] * ops[1] * ... *
// ops[k-1]. Applying the word to a matrix applies ops.back() first.
struct Word {
    std::vector<ElementaryOp> ops;

    std::size_t size() const { return ops.size(); }
    bool empty() const { return ops.empty(); }
    bool operator==(const Word& o) const = default;
};

// Canonical shape: swap prefix, scale segment sorted strictly by row,
// then AddMul blocks with lengths r_1..r_s.
struct CanonicalWord {
    std::vector<ElementaryOp> swaps;
    std::vector<ElementaryOp> scales;
    std::vector<std::vector<ElementaryOp>> blocks;

    std::size_t size() const;
    Word to_word() const;
};

ElementaryOp inverse_op(const ElementaryOp& op, const Field& f);

// E1...Ek * A: applies ops right-to-left, charging size() cost units.
Matrix eval_word(const Word& w, const Matrix& A, OpCounter& counter);
Matrix eval_word(const Word& w, const Matrix& A);

// Reverse order, invert each op; eval(invert_word(w), eval(w, A)) = A.
Word invert_word(const Word& w, const Field& f);

// Relabels op's rows by the transposition (sw.i sw.j), so that as matrices
// op * sw = sw * result. op must be a Scale or AddMul.
ElementaryOp swap_conjugate(const ElementaryOp& op, const ElementaryOp& sw);

// Rewrites an AddMul so that op * sc = sc * result:
// coefficient becomes lambda*mu when sc.row = op.src, mu/lambda when
// sc.row = op.dst, and op is returned unchanged on disjoint rows.
ElementaryOp scale_commute(const ElementaryOp& op, const ElementaryOp& sc, const Field& f);

// Moves all swaps into a prefix (original relative order), conjugating every
// Scale/AddMul they pass. Product-preserving, length-preserving.
Word normalize_swaps(const Word& w);

// Requires all swaps already in a prefix. Moves scales left of the AddMul
// suffix, merges them per row (dropping coefficient-1 scales), sorts the
// segment strictly by row. Product-preserving; never lengthens the word.
Word normalize_scales(const Word& w, const Field& f);

// Greedy left-to-right block partition of an AddMul sequence: extend the
// current block while the incoming index set is disjoint from every index
// set already in it, otherwise start a new block.
std::vector<std::vector<ElementaryOp>> partition_blocks(const std::vector<ElementaryOp>& addmuls);

// Optional instrumentation for compact_blocks: potential = sum over ops of
// their 1-based block number; it strictly decreases with every move.
struct CompactTrace {
    std::vector<std::uint64_t> potentials;  // recorded before and after each move
    std::size_t moves = 0;
};

// Repeatedly moves an op whose index set is disjoint from all of the previous
// block to the end of that block (cascading further left), deleting emptied
// blocks, until every op from block 2 onwards meets its predecessor block.
std::vector<std::vector<ElementaryOp>> compact_blocks(std::vector<std::vector<ElementaryOp>> blocks,
                                                      CompactTrace* trace = nullptr);

// normalize_swaps -> normalize_scales -> partition_blocks -> compact_blocks.
CanonicalWord canonicalize(const Word& w, const Field& f);

// Checks the canonical-form conditions: swap prefix, strictly increasing
// scale rows, within-block disjointness, and every block-t op (t >= 2)
// meeting some op of block t-1.
bool is_canonical(const CanonicalWord& cw);

}  // namespace ffreduce
