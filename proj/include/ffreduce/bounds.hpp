#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ffreduce {

using BigInt = boost::multiprecision::cpp_int;

// |GL(n,q)| = prod_{k=0}^{n-1} (q^n - q^k), exact.
BigInt gl_order(std::size_t n, std::uint64_t q);

// log_q |GL(n,q)| = n^2 + sum_{k=0}^{n-1} log_q(1 - q^(k-n)), in doubles.
double gl_order_log_q(std::size_t n, std::uint64_t q);

// Fraction of invertible matrices, prod_{r=1}^{n} (1 - q^-r), in doubles.
double gl_invertible_fraction(std::size_t n, std::uint64_t q);
// Coarse closed-form lower bound e^(-1/(q-1)) for the same fraction. Kept as
// a display value only; it overshoots the true product at small q (e.g.
// 0.368 vs 0.289 at q=2), so nothing downstream depends on it.
double gl_invertible_fraction_coarse_lb(std::uint64_t q);

// Exponent of q bounding the number of distinct matrices expressible as a
// canonical product of at most k elementary matrices:
//   (k+2n) log_q n + (3k+n) log_q 2 + n + k + k log_q e.
double counting_bound_log(std::size_t n, std::uint64_t q, double k);

// Largest k for which the counting bound still leaves an alpha-fraction of
// GL(n,q) unreachable:
//   (n^2 - 2n log_q n - n - n log_q 2 - log_q(e)/(q-1) - log_q(1/alpha))
//   / (log_q n + log_q(8qe)).
// May be negative for small n (the statement is vacuous there).
double theorem1_kmax(std::size_t n, std::uint64_t q, double alpha);

// The intermediate log_q counts whose sum is counting_bound_log:
//   permutation   n log_q n           (n! <= n^n)
//   scale_bound   n log_q 2 + n       (2^n (q-1)^n <= q^(n log_q 2 + n))
//   composition   k log_q 2           (2^k block-length choices)
//   per_block     n log_q n + k log_q n + 2k log_q 2 + k + k log_q e
// scale_exact = n log_q 2 + n log_q(q-1) is the unweakened scale count,
// reported alongside for display.
struct ComponentCounts {
    double permutation = 0;
    double scale_exact = 0;
    double scale_bound = 0;
    double composition = 0;
    double per_block = 0;

    double sum() const { return permutation + scale_bound + composition + per_block; }
};

ComponentCounts component_counts(std::size_t n, std::uint64_t q, double k);

struct AsymptoteRow {
    std::size_t n = 0;
    double n_sq = 0;
    double n_sq_over_logq_n = 0;
    double kmax = 0;
    double gj_bound = 0;       // n^2
    double striped_bound = 0;  // ceil(n/w)(n + 2q^w + 3w^2 + w) at the default w
    std::size_t stripe_width = 1;
    double invertible_fraction = 0;
    double invertible_fraction_coarse_lb = 0;
};

std::vector<AsymptoteRow> asymptote_table(const std::vector<std::size_t>& n_list, std::uint64_t q, double alpha);

}  // namespace ffreduce
