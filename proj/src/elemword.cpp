#include "ffreduce/elemword.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "ffreduce/matrix.hpp"

namespace ffreduce {

ElementaryOp ElementaryOp::swap(std::uint32_t a, std::uint32_t b) {
    if (a == b) throw std::invalid_argument("ElementaryOp::swap: equal rows");
    if (a > b) std::swap(a, b);
    return {OpKind::Swap, a, b, 1};
}

ElementaryOp ElementaryOp::scale(std::uint32_t row, felem lambda) {
    if (lambda == 0 || lambda == 1) throw std::invalid_argument("ElementaryOp::scale: lambda must not be 0 or 1");
    return {OpKind::Scale, row, row, lambda};
}

ElementaryOp ElementaryOp::add_mul(std::uint32_t src, std::uint32_t dst, felem lambda) {
    if (src == dst) throw std::invalid_argument("ElementaryOp::add_mul: equal rows");
    if (lambda == 0) throw std::invalid_argument("ElementaryOp::add_mul: lambda must be nonzero");
    return {OpKind::AddMul, src, dst, lambda};
}

bool ElementaryOp::touches(std::uint32_t row) const {
    if (kind == OpKind::Scale) return i == row;
    return i == row || j == row;
}

bool index_sets_disjoint(const ElementaryOp& a, const ElementaryOp& b) {
    return a.i != b.i && a.i != b.j && a.j != b.i && a.j != b.j;
}

std::size_t CanonicalWord::size() const {
    std::size_t s = swaps.size() + scales.size();
    for (const auto& b : blocks) s += b.size();
    return s;
}

Word CanonicalWord::to_word() const {
    Word w;
    w.ops.reserve(size());
    w.ops.insert(w.ops.end(), swaps.begin(), swaps.end());
    w.ops.insert(w.ops.end(), scales.begin(), scales.end());
    for (const auto& b : blocks) w.ops.insert(w.ops.end(), b.begin(), b.end());
    return w;
}

ElementaryOp inverse_op(const ElementaryOp& op, const Field& f) {
    switch (op.kind) {
        case OpKind::Swap:
            return op;
        case OpKind::Scale:
            return ElementaryOp::scale(op.i, f.inv(op.lambda));
        case OpKind::AddMul:
            return ElementaryOp::add_mul(op.i, op.j, f.neg(op.lambda));
    }
    throw std::logic_error("inverse_op: bad kind");
}

Matrix eval_word(const Word& w, const Matrix& A, OpCounter& counter) {
    Matrix R = A;
    for (auto it = w.ops.rbegin(); it != w.ops.rend(); ++it) apply_op_in_place(R, *it, counter);
    return R;
}

Matrix eval_word(const Word& w, const Matrix& A) {
    OpCounter scratch;
    return eval_word(w, A, scratch);
}

Word invert_word(const Word& w, const Field& f) {
    Word r;
    r.ops.reserve(w.size());
    for (auto it = w.ops.rbegin(); it != w.ops.rend(); ++it) r.ops.push_back(inverse_op(*it, f));
    return r;
}

ElementaryOp swap_conjugate(const ElementaryOp& op, const ElementaryOp& sw) {
    if (sw.kind != OpKind::Swap) throw std::invalid_argument("swap_conjugate: second argument must be a Swap");
    if (op.kind == OpKind::Swap) throw std::invalid_argument("swap_conjugate: op must be a Scale or AddMul");
    auto pi = [&sw](std::uint32_t r) { return r == sw.i ? sw.j : (r == sw.j ? sw.i : r); };
    if (op.kind == OpKind::Scale) return ElementaryOp::scale(pi(op.i), op.lambda);
    return ElementaryOp::add_mul(pi(op.i), pi(op.j), op.lambda);
}

ElementaryOp scale_commute(const ElementaryOp& op, const ElementaryOp& sc, const Field& f) {
    if (op.kind != OpKind::AddMul || sc.kind != OpKind::Scale)
        throw std::invalid_argument("scale_commute: expects (AddMul, Scale)");
    if (sc.i == op.i) return ElementaryOp::add_mul(op.i, op.j, f.mul(sc.lambda, op.lambda));
    if (sc.i == op.j) return ElementaryOp::add_mul(op.i, op.j, f.div(op.lambda, sc.lambda));
    return op;
}

Word normalize_swaps(const Word& w) {
    std::vector<ElementaryOp> swaps;
    std::vector<ElementaryOp> rest;
    for (const auto& op : w.ops) {
        if (op.kind == OpKind::Swap) {
            // The swap crosses left over everything collected so far.
            for (auto& x : rest) x = swap_conjugate(x, op);
            swaps.push_back(op);
        } else {
            rest.push_back(op);
        }
    }
    Word out;
    out.ops.reserve(w.size());
    out.ops.insert(out.ops.end(), swaps.begin(), swaps.end());
    out.ops.insert(out.ops.end(), rest.begin(), rest.end());
    return out;
}

Word normalize_scales(const Word& w, const Field& f) {
    std::size_t pos = 0;
    while (pos < w.ops.size() && w.ops[pos].kind == OpKind::Swap) ++pos;
    for (std::size_t t = pos; t < w.ops.size(); ++t)
        if (w.ops[t].kind == OpKind::Swap)
            throw std::invalid_argument("normalize_scales: swaps must already form a prefix");

    std::map<std::uint32_t, felem> merged;  // row -> product of coefficients
    std::vector<ElementaryOp> addmuls;
    for (std::size_t t = pos; t < w.ops.size(); ++t) {
        const auto& op = w.ops[t];
        if (op.kind == OpKind::Scale) {
            // Crosses left over the AddMuls collected so far, rewriting them.
            for (auto& x : addmuls) x = scale_commute(x, op, f);
            auto [it, fresh] = merged.emplace(op.i, op.lambda);
            if (!fresh) it->second = f.mul(it->second, op.lambda);
        } else {
            addmuls.push_back(op);
        }
    }

    Word out;
    out.ops.assign(w.ops.begin(), w.ops.begin() + static_cast<std::ptrdiff_t>(pos));
    for (const auto& [row, lambda] : merged)
        if (lambda != 1) out.ops.push_back(ElementaryOp::scale(row, lambda));
    out.ops.insert(out.ops.end(), addmuls.begin(), addmuls.end());
    return out;
}

std::vector<std::vector<ElementaryOp>> partition_blocks(const std::vector<ElementaryOp>& addmuls) {
    std::vector<std::vector<ElementaryOp>> blocks;
    for (const auto& op : addmuls) {
        if (op.kind != OpKind::AddMul) throw std::invalid_argument("partition_blocks: expects AddMul ops only");
        bool start_new = blocks.empty();
        if (!start_new) {
            for (const auto& x : blocks.back())
                if (!index_sets_disjoint(op, x)) {
                    start_new = true;
                    break;
                }
        }
        if (start_new) blocks.emplace_back();
        blocks.back().push_back(op);
    }
    return blocks;
}

namespace {

bool meets_block(const ElementaryOp& op, const std::vector<ElementaryOp>& block) {
    for (const auto& x : block)
        if (!index_sets_disjoint(op, x)) return true;
    return false;
}

std::uint64_t block_potential(const std::vector<std::vector<ElementaryOp>>& blocks) {
    std::uint64_t s = 0;
    for (std::size_t t = 0; t < blocks.size(); ++t) s += (t + 1) * blocks[t].size();
    return s;
}

}  // namespace

std::vector<std::vector<ElementaryOp>> compact_blocks(std::vector<std::vector<ElementaryOp>> blocks, CompactTrace* trace) {
    if (trace) trace->potentials.push_back(block_potential(blocks));
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t t = 1; t < blocks.size(); ++t) {
            for (std::size_t k = 0; k < blocks[t].size();) {
                if (meets_block(blocks[t][k], blocks[t - 1])) {
                    ++k;
                    continue;
                }
                // Move to the end of the previous block, then cascade further
                // left while still disjoint.
                ElementaryOp op = blocks[t][k];
                blocks[t].erase(blocks[t].begin() + static_cast<std::ptrdiff_t>(k));
                std::size_t dest = t - 1;
                while (dest > 0 && !meets_block(op, blocks[dest - 1])) --dest;
                blocks[dest].push_back(op);
                changed = true;
                if (trace) {
                    ++trace->moves;
                    trace->potentials.push_back(block_potential(blocks));
                }
            }
        }
        blocks.erase(std::remove_if(blocks.begin(), blocks.end(), [](const auto& b) { return b.empty(); }),
                     blocks.end());
    }
    return blocks;
}

CanonicalWord canonicalize(const Word& w, const Field& f) {
    Word s = normalize_scales(normalize_swaps(w), f);
    CanonicalWord cw;
    std::size_t pos = 0;
    while (pos < s.ops.size() && s.ops[pos].kind == OpKind::Swap) cw.swaps.push_back(s.ops[pos++]);
    while (pos < s.ops.size() && s.ops[pos].kind == OpKind::Scale) cw.scales.push_back(s.ops[pos++]);
    std::vector<ElementaryOp> suffix(s.ops.begin() + static_cast<std::ptrdiff_t>(pos), s.ops.end());
    cw.blocks = compact_blocks(partition_blocks(suffix));
    return cw;
}

bool is_canonical(const CanonicalWord& cw) {
    for (const auto& op : cw.swaps)
        if (op.kind != OpKind::Swap) return false;
    // (b) strictly increasing scale rows
    for (std::size_t t = 0; t < cw.scales.size(); ++t) {
        if (cw.scales[t].kind != OpKind::Scale) return false;
        if (t > 0 && cw.scales[t - 1].i >= cw.scales[t].i) return false;
    }
    for (std::size_t t = 0; t < cw.blocks.size(); ++t) {
        const auto& block = cw.blocks[t];
        if (block.empty()) return false;
        for (const auto& op : block)
            if (op.kind != OpKind::AddMul) return false;
        // (c)(i) pairwise disjoint index sets within a block
        for (std::size_t a = 0; a < block.size(); ++a)
            for (std::size_t b = a + 1; b < block.size(); ++b)
                if (!index_sets_disjoint(block[a], block[b])) return false;
        // (c)(ii) every op meets the previous block
        if (t > 0) {
            for (const auto& op : block)
                if (!meets_block(op, cw.blocks[t - 1])) return false;
        }
    }
    return true;
}

}  // namespace ffreduce
