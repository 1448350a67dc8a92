#include "ffreduce/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "ffreduce/reduce.hpp"

namespace ffreduce {

BigInt gl_order(std::size_t n, std::uint64_t q) {
    if (n < 1) throw std::invalid_argument("gl_order: n must be >= 1");
    const BigInt qn = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(n));
    BigInt order = 1;
    BigInt qk = 1;
    for (std::size_t k = 0; k < n; ++k) {
        order *= qn - qk;
        qk *= q;
    }
    return order;
}

namespace {

double log_q(double x, std::uint64_t q) { return std::log(x) / std::log(static_cast<double>(q)); }

}  // namespace

double gl_order_log_q(std::size_t n, std::uint64_t q) {
    double s = static_cast<double>(n) * static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = std::pow(static_cast<double>(q), static_cast<double>(k) - static_cast<double>(n));
        s += log_q(1.0 - t, q);
    }
    return s;
}

double gl_invertible_fraction(std::size_t n, std::uint64_t q) {
    double prod = 1.0;
    for (std::size_t r = 1; r <= n; ++r)
        prod *= 1.0 - std::pow(static_cast<double>(q), -static_cast<double>(r));
    return prod;
}

double gl_invertible_fraction_coarse_lb(std::uint64_t q) {
    return std::exp(-1.0 / (static_cast<double>(q) - 1.0));
}

double counting_bound_log(std::size_t n, std::uint64_t q, double k) {
    const double nn = static_cast<double>(n);
    const double Ln = log_q(nn, q);
    const double L2 = log_q(2.0, q);
    const double Le = 1.0 / std::log(static_cast<double>(q));  // log_q(e)
    return (k + 2.0 * nn) * Ln + (3.0 * k + nn) * L2 + nn + k + k * Le;
}

double theorem1_kmax(std::size_t n, std::uint64_t q, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("theorem1_kmax: alpha must be in (0,1)");
    const double nn = static_cast<double>(n);
    const double Ln = log_q(nn, q);
    const double L2 = log_q(2.0, q);
    const double Le = 1.0 / std::log(static_cast<double>(q));
    const double numerator =
        nn * nn - 2.0 * nn * Ln - nn - nn * L2 - Le / (static_cast<double>(q) - 1.0) - log_q(1.0 / alpha, q);
    const double denominator = Ln + log_q(8.0 * static_cast<double>(q), q) + Le;  // log_q n + log_q(8qe)
    return numerator / denominator;
}

ComponentCounts component_counts(std::size_t n, std::uint64_t q, double k) {
    const double nn = static_cast<double>(n);
    const double Ln = log_q(nn, q);
    const double L2 = log_q(2.0, q);
    const double Le = 1.0 / std::log(static_cast<double>(q));
    ComponentCounts c;
    c.permutation = nn * Ln;
    c.scale_exact = nn * L2 + nn * log_q(static_cast<double>(q) - 1.0, q);
    c.scale_bound = nn * L2 + nn;
    c.composition = k * L2;
    c.per_block = nn * Ln + k * Ln + 2.0 * k * L2 + k + k * Le;
    return c;
}

std::vector<AsymptoteRow> asymptote_table(const std::vector<std::size_t>& n_list, std::uint64_t q, double alpha) {
    std::vector<AsymptoteRow> rows;
    rows.reserve(n_list.size());
    for (const std::size_t n : n_list) {
        AsymptoteRow r;
        r.n = n;
        const double nn = static_cast<double>(n);
        r.n_sq = nn * nn;
        r.n_sq_over_logq_n = n > 1 ? nn * nn / log_q(nn, q) : 0.0;
        r.kmax = theorem1_kmax(n, q, alpha);
        r.gj_bound = nn * nn;
        r.stripe_width = default_stripe_width(n, q);
        r.striped_bound = static_cast<double>(striped_op_bound(n, q, r.stripe_width));
        r.invertible_fraction = gl_invertible_fraction(n, q);
        r.invertible_fraction_coarse_lb = gl_invertible_fraction_coarse_lb(q);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace ffreduce
