// Acceptance suite: runs every release criterion and prints one PASS/FAIL
// line each. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ffreduce/bounds.hpp"
#include "ffreduce/cayley.hpp"
#include "ffreduce/elemword.hpp"
#include "ffreduce/io.hpp"
#include "ffreduce/matrix.hpp"
#include "ffreduce/reduce.hpp"
#include "ffreduce/rng.hpp"

using namespace ffreduce;

namespace {

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Field make_field(std::uint64_t q) {
    switch (q) {
        case 2: return Field(2, 1);
        case 3: return Field(3, 1);
        case 4: return Field(2, 2);
        case 5: return Field(5, 1);
        case 8: return Field(2, 3);
        case 9: return Field(3, 2);
        default: return Field(static_cast<std::uint32_t>(q), 1);
    }
}

bool criterion_group_totals(std::string& detail) {
    const std::vector<std::tuple<std::size_t, std::uint64_t, std::uint64_t>> expected{
        {2, 2, 6}, {2, 3, 48}, {3, 2, 168}, {2, 4, 180}, {2, 5, 480}, {4, 2, 20160}};
    for (const auto& [n, q, total] : expected) {
        Field f = make_field(q);
        const auto t0 = std::chrono::steady_clock::now();
        BfsResult r = bfs_histogram(n, f);
        const double secs = seconds_since(t0);
        if (r.histogram().group_order != total || gl_order(n, q) != total) {
            detail = "total mismatch at (" + std::to_string(n) + "," + std::to_string(q) + ")";
            return false;
        }
        if (secs >= 10.0) {
            detail = "BFS over 10 s at (" + std::to_string(n) + "," + std::to_string(q) + ")";
            return false;
        }
    }
    detail = "6 groups, exact totals";
    return true;
}

bool criterion_gl22_histogram(std::string& detail) {
    Field f2(2, 1);
    BfsResult r = bfs_histogram(2, f2);
    const bool ok = r.histogram().counts == std::vector<std::uint64_t>{1, 3, 2} && r.histogram().diameter == 2;
    detail = ok ? "histogram {0:1, 1:3, 2:2}, diameter 2" : "histogram mismatch";
    return ok;
}

bool criterion_ball_domination(std::string& detail) {
    const std::vector<std::pair<std::size_t, std::uint64_t>> groups{{2, 2}, {2, 3}, {3, 2}, {2, 4}, {2, 5}, {4, 2}};
    std::size_t checks = 0;
    for (const auto& [n, q] : groups) {
        Field f = make_field(q);
        BfsResult r = bfs_histogram(n, f);
        const auto& balls = r.histogram().ball_sizes;
        for (std::size_t k = 0; k < balls.size(); ++k) {
            const double ball_log = std::log(static_cast<double>(balls[k])) / std::log(static_cast<double>(q));
            if (ball_log > counting_bound_log(n, q, static_cast<double>(k))) {
                detail = "violation at (" + std::to_string(n) + "," + std::to_string(q) + "), k=" + std::to_string(k);
                return false;
            }
            ++checks;
        }
    }
    detail = std::to_string(checks) + " (n,q,k) ball inequalities, zero violations";
    return true;
}

bool criterion_formula_consistency(std::string& detail) {
    for (std::size_t n : {10, 100, 1000, 10000}) {
        for (std::uint64_t q : {2, 3, 4, 5, 8, 9}) {
            for (double alpha : {0.1, 0.5, 0.9}) {
                const double k = theorem1_kmax(n, q, alpha);
                const double lhs = counting_bound_log(n, q, k);
                const double lq = std::log(static_cast<double>(q));
                const double rhs =
                    static_cast<double>(n) * n - (1.0 / lq) / (static_cast<double>(q) - 1.0) - std::log(1.0 / alpha) / lq;
                if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(rhs))) {
                    detail = "identity off at n=" + std::to_string(n) + ", q=" + std::to_string(q);
                    return false;
                }
            }
        }
    }
    const double ref = theorem1_kmax(100, 2, 0.5);
    if (std::abs(ref - 700.68) > 0.01) {
        detail = "kmax(100,2,0.5) = " + std::to_string(ref);
        return false;
    }
    detail = "72-point grid to 1e-9; kmax(100,2,0.5) = " + io::fmt_double(ref, 4);
    return true;
}

bool criterion_reduction_correctness(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<std::pair<std::size_t, std::uint64_t>> cases{{8, 2}, {8, 3}, {16, 2}, {16, 4}};
    for (const auto& [n, q] : cases) {
        Field f = make_field(q);
        const std::size_t w = default_stripe_width(n, q);
        const std::uint64_t sbound = striped_op_bound(n, q, w);
        const Matrix I = Matrix::identity(n, f);
        for (std::uint64_t t = 0; t < 1000; ++t) {
            Matrix A = random_invertible(n, f, mix_seed(n * 100 + q, t));
            ReductionResult gj = gauss_jordan(A);
            if (eval_word(gj.word, A) != I || gj.op_count > n * n) {
                detail = "gj failure at (" + std::to_string(n) + "," + std::to_string(q) + ")";
                return false;
            }
            ReductionResult st = striped_eliminate(A, w);
            if (eval_word(st.word, A) != I || st.op_count > sbound) {
                detail = "striped failure at (" + std::to_string(n) + "," + std::to_string(q) + ")";
                return false;
            }
        }
    }
    const double secs = seconds_since(t0);
    if (secs >= 60.0) {
        detail = "over the 60 s budget: " + io::fmt_double(secs, 1) + " s";
        return false;
    }
    detail = "4000 matrices x 2 algorithms in " + io::fmt_double(secs, 1) + " s";
    return true;
}

bool criterion_crossover(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t trials = 5;
    std::map<std::size_t, std::pair<double, double>> means;  // n -> (gj, striped)
    Field f2(2, 1);
    for (std::size_t n : {1024, 2048}) {
        const std::size_t w = default_stripe_width(n, 2);
        double gj_sum = 0, st_sum = 0;
        for (std::size_t t = 0; t < trials; ++t) {
            Matrix A = random_invertible(n, f2, mix_seed(1729, n + t));
            gj_sum += static_cast<double>(gauss_jordan(A).op_count);
            st_sum += static_cast<double>(striped_eliminate(A, w).op_count);
        }
        const double gj_mean = gj_sum / trials, st_mean = st_sum / trials;
        means[n] = {gj_mean, st_mean};
        const double limit = 1.5 * static_cast<double>(n) * static_cast<double>(n) / static_cast<double>(w);
        if (st_mean > limit) {
            detail = "striped mean above 1.5 n^2/w at n=" + std::to_string(n);
            return false;
        }
    }
    const double r1024 = means[1024].second / means[1024].first;
    const double r2048 = means[2048].second / means[2048].first;
    const double secs = seconds_since(t0);
    if (r1024 > 0.8 || r2048 > 0.6) {
        detail = "ratios " + io::fmt_double(r1024, 3) + " / " + io::fmt_double(r2048, 3);
        return false;
    }
    if (secs >= 120.0) {
        detail = "over the 120 s budget: " + io::fmt_double(secs, 1) + " s";
        return false;
    }
    detail = "striped/gj = " + io::fmt_double(r1024, 3) + " at n=1024, " + io::fmt_double(r2048, 3) +
             " at n=2048, in " + io::fmt_double(secs, 1) + " s";
    return true;
}

bool criterion_optimality_sandwich(std::string& detail) {
    const std::vector<std::pair<std::size_t, std::uint64_t>> groups{{2, 2}, {2, 3}, {3, 2}};
    std::size_t checked = 0;
    for (const auto& [n, q] : groups) {
        Field f = make_field(q);
        BfsResult bfs = bfs_histogram(n, f);
        const std::size_t w = default_stripe_width(n, q);
        GroupKey space = 1;
        for (std::size_t i = 0; i < n * n; ++i) space *= q;
        for (GroupKey key = 0; key < space; ++key) {
            Matrix A = decode(key, n, f);
            if (!is_invertible(A)) continue;
            const int dist = bfs.distance_of(A);
            if (static_cast<std::uint64_t>(dist) > gauss_jordan(A).op_count ||
                static_cast<std::uint64_t>(dist) > striped_eliminate(A, w).op_count) {
                detail = "distance above an algorithm count at (" + std::to_string(n) + "," + std::to_string(q) + ")";
                return false;
            }
            ++checked;
        }
    }
    detail = std::to_string(checked) + " group elements, zero violations";
    return true;
}

bool criterion_canonicalizer(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    Field f2(2, 1);

    // Exhaustive: all 39 nonempty words of length <= 3 over the GL(2,2)
    // generators.
    const std::vector<ElementaryOp> gens{ElementaryOp::swap(0, 1), ElementaryOp::add_mul(0, 1, 1),
                                         ElementaryOp::add_mul(1, 0, 1)};
    std::size_t words = 0;
    for (std::size_t len = 1; len <= 3; ++len) {
        std::vector<std::size_t> idx(len, 0);
        for (;;) {
            Word w;
            for (std::size_t k = 0; k < len; ++k) w.ops.push_back(gens[idx[k]]);
            ++words;
            CanonicalWord cw = canonicalize(w, f2);
            const Matrix before = eval_word(w, Matrix::identity(2, f2));
            const Matrix after = eval_word(cw.to_word(), Matrix::identity(2, f2));
            if (before != after || cw.size() > w.size() || !is_canonical(cw) ||
                canonicalize(cw.to_word(), f2).to_word() != cw.to_word()) {
                detail = "violation on an exhaustive word of length " + std::to_string(len);
                return false;
            }
            std::size_t k = len;
            while (k > 0 && idx[k - 1] == gens.size() - 1) idx[--k] = 0;
            if (k == 0) break;
            ++idx[k - 1];
        }
    }
    if (words != 39) {
        detail = "enumerated " + std::to_string(words) + " words, expected 39";
        return false;
    }

    // 10^4 seeded random words, n=5, q=3, length 50.
    Field f3(3, 1);
    Rng rng(10007);
    const Matrix I5 = Matrix::identity(5, f3);
    for (int t = 0; t < 10000; ++t) {
        Word w;
        while (w.ops.size() < 50) {
            switch (rng.below(3)) {
                case 0: {
                    const auto i = static_cast<std::uint32_t>(rng.below(5));
                    const auto j = static_cast<std::uint32_t>(rng.below(5));
                    if (i != j) w.ops.push_back(ElementaryOp::swap(i, j));
                    break;
                }
                case 1:
                    w.ops.push_back(ElementaryOp::scale(static_cast<std::uint32_t>(rng.below(5)), 2));
                    break;
                default: {
                    const auto i = static_cast<std::uint32_t>(rng.below(5));
                    const auto j = static_cast<std::uint32_t>(rng.below(5));
                    if (i != j)
                        w.ops.push_back(ElementaryOp::add_mul(i, j, static_cast<felem>(1 + rng.below(2))));
                    break;
                }
            }
        }
        CanonicalWord cw = canonicalize(w, f3);
        if (eval_word(cw.to_word(), I5) != eval_word(w, I5) || cw.size() > w.size() || !is_canonical(cw) ||
            canonicalize(cw.to_word(), f3).to_word() != cw.to_word()) {
            detail = "violation on random word " + std::to_string(t);
            return false;
        }
    }

    const double secs = seconds_since(t0);
    if (secs >= 30.0) {
        detail = "over the 30 s budget: " + io::fmt_double(secs, 1) + " s";
        return false;
    }
    detail = "39 exhaustive + 10000 random words in " + io::fmt_double(secs, 1) + " s";
    return true;
}

bool criterion_rewrite_rules(std::string& detail) {
    // Each rule as an exact matrix identity, 10^4 draws per rule. Rules
    // involving a Scale need q >= 3.
    const std::vector<std::uint64_t> all_q{2, 3, 4, 5};
    const std::vector<std::uint64_t> scale_q{3, 4, 5};
    std::vector<Field> fields;
    for (auto q : all_q) fields.push_back(make_field(q));

    Rng rng(40320);
    const std::size_t n = 5;

    auto rand_row = [&](std::uint32_t exclude = UINT32_MAX) {
        for (;;) {
            const auto r = static_cast<std::uint32_t>(rng.below(n));
            if (r != exclude) return r;
        }
    };

    // Rule 1: E_ij(mu) E_i(l) = E_i(l) E_ij(l mu).
    for (int t = 0; t < 10000; ++t) {
        const Field& f = fields[1 + rng.below(scale_q.size())];
        const auto i = rand_row();
        const auto j = rand_row(i);
        const auto mu = static_cast<felem>(1 + rng.below(f.q() - 1));
        const auto l = static_cast<felem>(2 + rng.below(f.q() - 2));
        ElementaryOp am = ElementaryOp::add_mul(i, j, mu), sc = ElementaryOp::scale(i, l);
        ElementaryOp moved = scale_commute(am, sc, f);
        if (matmul(elementary_matrix(am, n, f), elementary_matrix(sc, n, f)) !=
            matmul(elementary_matrix(sc, n, f), elementary_matrix(moved, n, f))) {
            detail = "rule 1 violated";
            return false;
        }
    }

    // Rule 2: E_ji(mu) E_i(l) = E_i(l) E_ji(mu/l).
    for (int t = 0; t < 10000; ++t) {
        const Field& f = fields[1 + rng.below(scale_q.size())];
        const auto i = rand_row();
        const auto j = rand_row(i);
        const auto mu = static_cast<felem>(1 + rng.below(f.q() - 1));
        const auto l = static_cast<felem>(2 + rng.below(f.q() - 2));
        ElementaryOp am = ElementaryOp::add_mul(j, i, mu), sc = ElementaryOp::scale(i, l);
        ElementaryOp moved = scale_commute(am, sc, f);
        if (matmul(elementary_matrix(am, n, f), elementary_matrix(sc, n, f)) !=
            matmul(elementary_matrix(sc, n, f), elementary_matrix(moved, n, f))) {
            detail = "rule 2 violated";
            return false;
        }
    }

    // Rule 3: E_kl(lambda) E_ij = E_ij E_{pi(k)pi(l)}(lambda).
    for (int t = 0; t < 10000; ++t) {
        const Field& f = fields[rng.below(all_q.size())];
        const auto k = rand_row();
        const auto l = rand_row(k);
        const auto a = rand_row();
        const auto b = rand_row(a);
        const auto lam = static_cast<felem>(1 + rng.below(f.q() - 1));
        ElementaryOp am = ElementaryOp::add_mul(k, l, lam), sw = ElementaryOp::swap(a, b);
        ElementaryOp conj = swap_conjugate(am, sw);
        if (matmul(elementary_matrix(am, n, f), elementary_matrix(sw, n, f)) !=
            matmul(elementary_matrix(sw, n, f), elementary_matrix(conj, n, f))) {
            detail = "rule 3 violated";
            return false;
        }
    }

    // Rule 4: E_k(lambda) E_ij = E_ij E_{pi(k)}(lambda).
    for (int t = 0; t < 10000; ++t) {
        const Field& f = fields[1 + rng.below(scale_q.size())];
        const auto k = rand_row();
        const auto a = rand_row();
        const auto b = rand_row(a);
        const auto lam = static_cast<felem>(2 + rng.below(f.q() - 2));
        ElementaryOp sc = ElementaryOp::scale(k, lam), sw = ElementaryOp::swap(a, b);
        ElementaryOp conj = swap_conjugate(sc, sw);
        if (matmul(elementary_matrix(sc, n, f), elementary_matrix(sw, n, f)) !=
            matmul(elementary_matrix(sw, n, f), elementary_matrix(conj, n, f))) {
            detail = "rule 4 violated";
            return false;
        }
    }

    detail = "4 x 10000 exact matrix identities, zero violations";
    return true;
}

bool criterion_sampling_uniformity(std::string& detail) {
    Field f2(2, 1);
    std::map<GroupKey, int> counts;
    for (std::uint64_t s = 0; s < 6000; ++s) counts[encode(random_invertible(2, f2, mix_seed(424242, s)))]++;
    if (counts.size() != 6) {
        detail = "saw " + std::to_string(counts.size()) + " distinct elements, expected 6";
        return false;
    }
    int lo = 6000, hi = 0;
    for (const auto& [key, c] : counts) {
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    if (lo < 850 || hi > 1150) {
        detail = "counts out of [850, 1150]: min " + std::to_string(lo) + ", max " + std::to_string(hi);
        return false;
    }
    detail = "6000 samples; per-element counts in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
    return true;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"exact BFS group totals for six (n,q)", criterion_group_totals},
        {"GL(2,2) histogram {0:1,1:3,2:2}, diameter 2", criterion_gl22_histogram},
        {"ball sizes dominated by the counting bound", criterion_ball_domination},
        {"kmax/counting-bound cross-consistency + reference value", criterion_formula_consistency},
        {"reduction correctness and op bounds on 4000 matrices", criterion_reduction_correctness},
        {"striped/gj op-count crossover at n=1024 and n=2048", criterion_crossover},
        {"BFS distance never exceeds either algorithm, exhaustively", criterion_optimality_sandwich},
        {"canonicalizer soundness, exhaustive + fuzz", criterion_canonicalizer},
        {"rewrite rules hold as exact matrix identities", criterion_rewrite_rules},
        {"sampling uniformity on GL(2,2)", criterion_sampling_uniformity},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        bool ok = false;
        try {
            ok = criteria[i].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] criterion %zu: %s — %s\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].name.c_str(),
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures == 0)
        std::printf("all %zu criteria passed\n", criteria.size());
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures;
}
