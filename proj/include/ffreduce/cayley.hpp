#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "ffreduce/elemword.hpp"
#include "ffreduce/matrix.hpp"

namespace ffreduce {

// All non-identity elementary matrices as ops: swaps (i<j), scales
// (lambda not in {0,1}) and transvections (lambda != 0). Closed under
// inverses; size n(n-1)/2 + n(q-2) + n(n-1)(q-1).
struct GeneratorSet {
    std::vector<ElementaryOp> ops;
};

GeneratorSet generators(std::size_t n, const Field& f);

struct DistanceHistogram {
    std::size_t n = 0;
    std::uint32_t p = 0, m = 0;
    GroupKey group_order;                // = sum of counts
    std::vector<std::uint64_t> counts;   // counts[d] = elements at distance d
    std::vector<std::uint64_t> ball_sizes;  // cumulative
    int diameter = 0;
    double mean = 0.0;
};

// BFS distance tables from the identity over the Cayley graph of GL(n,q)
// with edges g -> E*g. Direct-addressed byte table when q^(n^2) fits 32
// bits, big-integer keyed hash map otherwise.
class BfsResult {
public:
    const DistanceHistogram& histogram() const { return hist_; }

    // Exact minimal number of row operations reducing A to I.
    int distance_of(const Matrix& A) const;

    std::size_t n() const { return hist_.n; }
    const Field& field() const { return *field_; }

private:
    friend BfsResult bfs_histogram(std::size_t, const Field&, std::uint64_t, const GeneratorSet*, bool);
    DistanceHistogram hist_;
    const Field* field_ = nullptr;
    bool direct_ = false;
    std::vector<std::uint8_t> dist_direct_;  // 255 = unvisited
    std::unordered_map<std::string, std::uint8_t> dist_map_;  // key = decimal GroupKey
};

std::uint64_t default_state_cap();  // 2^28 states

// Exact single-source BFS from I visiting all of GL(n,q). Refuses (throws
// std::domain_error with the required estimate) when |GL(n,q)| exceeds
// state_cap; never truncates. `gens` overrides the generator set (used to
// check traversal-order independence); `force_map` forces the hash-map
// store (used to test it at small sizes).
BfsResult bfs_histogram(std::size_t n, const Field& f, std::uint64_t state_cap = default_state_cap(),
                        const GeneratorSet* gens = nullptr, bool force_map = false);

int distance_of(const Matrix& A, const BfsResult& result);

}  // namespace ffreduce
