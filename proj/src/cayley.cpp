#include "ffreduce/cayley.hpp"

#include <cstdlib>
#include <stdexcept>

#include "ffreduce/bounds.hpp"

namespace ffreduce {

GeneratorSet generators(std::size_t n, const Field& f) {
    GeneratorSet g;
    const std::uint32_t q = f.q();
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) g.ops.push_back(ElementaryOp::swap(i, j));
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t l = 2; l < q; ++l) g.ops.push_back(ElementaryOp::scale(i, static_cast<felem>(l)));
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) {
            if (i == j) continue;
            for (std::uint32_t l = 1; l < q; ++l) g.ops.push_back(ElementaryOp::add_mul(i, j, static_cast<felem>(l)));
        }
    return g;
}

std::uint64_t default_state_cap() { return 1ull << 28; }

namespace {

constexpr std::uint8_t kUnvisited = 255;

// Fast path: states are uint64 keys < q^(n^2) <= 2^32, distances in a
// direct-addressed byte table.
void bfs_direct(std::size_t n, const Field& f, const std::vector<ElementaryOp>& gens,
                std::vector<std::uint8_t>& dist, std::vector<std::uint64_t>& counts) {
    const std::uint32_t q = f.q();
    const std::size_t nn = n * n;
    std::vector<std::uint64_t> qpow(n, 1);
    for (std::size_t c = 1; c < n; ++c) qpow[c] = qpow[c - 1] * q;
    std::vector<std::uint64_t> rowbase(n, 1);
    for (std::size_t r = 0; r < n; ++r) {
        rowbase[r] = 1;
        for (std::size_t k = 0; k < r * n; ++k) rowbase[r] *= q;
    }

    std::uint64_t start = 0;
    for (std::size_t r = n; r-- > 0;) {
        for (std::size_t c = n; c-- > 0;) {
            start *= q;
            if (r == c) start += 1;
        }
    }

    std::vector<std::uint32_t> frontier{static_cast<std::uint32_t>(start)};
    dist[start] = 0;
    counts.assign(1, 1);

    std::vector<felem> digits(nn);
    std::vector<std::uint64_t> rowval(n);
    std::uint8_t d = 0;
    while (!frontier.empty()) {
        ++d;
        if (d == kUnvisited) throw std::logic_error("bfs_histogram: diameter exceeds distance encoding");
        std::vector<std::uint32_t> next;
        std::uint64_t found = 0;
        for (const std::uint32_t key32 : frontier) {
            std::uint64_t k = key32;
            for (std::size_t t = 0; t < nn; ++t) {
                digits[t] = static_cast<felem>(k % q);
                k /= q;
            }
            for (std::size_t r = 0; r < n; ++r) {
                std::uint64_t rv = 0;
                for (std::size_t c = n; c-- > 0;) rv = rv * q + digits[r * n + c];
                rowval[r] = rv;
            }
            const std::uint64_t key = key32;
            for (const auto& op : gens) {
                std::uint64_t nk = 0;
                switch (op.kind) {
                    case OpKind::Swap:
                        nk = key - rowval[op.i] * rowbase[op.i] - rowval[op.j] * rowbase[op.j] +
                             rowval[op.j] * rowbase[op.i] + rowval[op.i] * rowbase[op.j];
                        break;
                    case OpKind::Scale: {
                        std::uint64_t nrv = 0;
                        for (std::size_t c = n; c-- > 0;) nrv = nrv * q + f.mul(op.lambda, digits[op.i * n + c]);
                        nk = key - rowval[op.i] * rowbase[op.i] + nrv * rowbase[op.i];
                        break;
                    }
                    case OpKind::AddMul: {
                        std::uint64_t nrv = 0;
                        for (std::size_t c = n; c-- > 0;)
                            nrv = nrv * q + f.add(digits[op.j * n + c], f.mul(op.lambda, digits[op.i * n + c]));
                        nk = key - rowval[op.j] * rowbase[op.j] + nrv * rowbase[op.j];
                        break;
                    }
                }
                if (dist[nk] == kUnvisited) {
                    dist[nk] = d;
                    ++found;
                    next.push_back(static_cast<std::uint32_t>(nk));
                }
            }
        }
        if (found) counts.push_back(found);
        frontier = std::move(next);
    }
}

// Fallback for key spaces beyond 2^32: big-integer keys in a hash map.
void bfs_map(std::size_t n, const Field& f, const std::vector<ElementaryOp>& gens,
             std::unordered_map<std::string, std::uint8_t>& dist, std::vector<std::uint64_t>& counts) {
    const Matrix I = Matrix::identity(n, f);
    std::vector<Matrix> frontier{I};
    dist.emplace(encode(I).str(), 0);
    counts.assign(1, 1);

    std::uint8_t d = 0;
    OpCounter scratch;
    while (!frontier.empty()) {
        ++d;
        if (d == kUnvisited) throw std::logic_error("bfs_histogram: diameter exceeds distance encoding");
        std::vector<Matrix> next;
        std::uint64_t found = 0;
        for (const Matrix& g : frontier) {
            for (const auto& op : gens) {
                Matrix h = apply_op(g, op, scratch);
                auto [it, fresh] = dist.emplace(encode(h).str(), d);
                if (fresh) {
                    ++found;
                    next.push_back(std::move(h));
                }
            }
        }
        if (found) counts.push_back(found);
        frontier = std::move(next);
    }
}

}  // namespace

BfsResult bfs_histogram(std::size_t n, const Field& f, std::uint64_t state_cap, const GeneratorSet* gens,
                        bool force_map) {
    const GroupKey order = gl_order(n, f.q());
    if (order > state_cap)
        throw std::domain_error("bfs_histogram: |GL(" + std::to_string(n) + "," + std::to_string(f.q()) +
                                ")| = " + order.str() + " states exceeds the state cap " + std::to_string(state_cap));

    GroupKey keyspace = boost::multiprecision::pow(GroupKey(f.q()), static_cast<unsigned>(n * n));
    const bool direct = !force_map && keyspace <= GroupKey(1) << 32;

    GeneratorSet local;
    if (!gens) {
        local = generators(n, f);
        gens = &local;
    }

    BfsResult res;
    res.field_ = &f;
    res.direct_ = direct;
    res.hist_.n = n;
    res.hist_.p = f.p();
    res.hist_.m = f.m();
    res.hist_.group_order = order;

    if (direct) {
        res.dist_direct_.assign(static_cast<std::size_t>(keyspace), kUnvisited);
        bfs_direct(n, f, gens->ops, res.dist_direct_, res.hist_.counts);
    } else {
        bfs_map(n, f, gens->ops, res.dist_map_, res.hist_.counts);
    }

    GroupKey total = 0;
    std::uint64_t weighted = 0, cum = 0;
    res.hist_.ball_sizes.clear();
    for (std::size_t d = 0; d < res.hist_.counts.size(); ++d) {
        total += res.hist_.counts[d];
        weighted += d * res.hist_.counts[d];
        cum += res.hist_.counts[d];
        res.hist_.ball_sizes.push_back(cum);
    }
    if (total != order)
        throw std::logic_error("bfs_histogram: visited " + total.str() + " states but |GL| = " + order.str());
    res.hist_.diameter = static_cast<int>(res.hist_.counts.size()) - 1;
    res.hist_.mean = static_cast<double>(weighted) / order.convert_to<double>();
    return res;
}

int BfsResult::distance_of(const Matrix& A) const {
    if (A.n() != hist_.n || A.field().q() != field_->q())
        throw std::invalid_argument("distance_of: matrix does not match the computed (n, q)");
    const GroupKey key = encode(A);
    std::uint8_t d = kUnvisited;
    if (direct_) {
        d = dist_direct_[key.convert_to<std::uint64_t>()];
    } else {
        auto it = dist_map_.find(key.str());
        if (it != dist_map_.end()) d = it->second;
    }
    if (d == kUnvisited) throw std::domain_error("distance_of: matrix is not in GL(n,q)");
    return d;
}

int distance_of(const Matrix& A, const BfsResult& result) { return result.distance_of(A); }

}  // namespace ffreduce
