// ffreduce: row-operation experiments on GL(n,q) from the command line.
//
// Subcommands: reduce, bench, bfs, bounds, canon, sample. Seeded runs are
// byte-reproducible; CSV uses ',' separators, '.' decimal points and LF
// endings. Exit codes: 0 success, 1 domain error, 2 usage error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ffreduce/bounds.hpp"
#include "ffreduce/cayley.hpp"
#include "ffreduce/elemword.hpp"
#include "ffreduce/io.hpp"
#include "ffreduce/matrix.hpp"
#include "ffreduce/reduce.hpp"
#include "ffreduce/rng.hpp"

namespace {

using namespace ffreduce;

std::ostream& open_sink(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open for writing: " + path);
    return file;
}

struct ReduceArgs {
    std::string in_path;
    std::string algo = "gj";
    std::size_t width = 0;  // 0 = default
    std::string emit_word;
    std::string emit_inverse;
};

int cmd_reduce(const ReduceArgs& a) {
    io::LoadedMatrix lm = io::read_matrix_file(a.in_path);
    const Matrix& A = *lm.matrix;

    ReductionResult res;
    if (a.algo == "gj") {
        res = gauss_jordan(A);
    } else {
        const std::size_t w = a.width ? a.width : default_stripe_width(A.n(), lm.field->q());
        res = striped_eliminate(A, w);
    }

    VerifyReport rep = verify_reduction(A, res);
    std::cout << "algorithm: " << res.algorithm << "\n";
    if (res.algorithm == "striped") std::cout << "stripe_width: " << res.stripe_width << "\n";
    std::cout << "op_count: " << res.op_count << "\n";
    std::cout << "verified: " << (rep.ok ? "yes" : "no") << "\n";
    if (!rep.ok) std::cerr << "verification failed: " << rep.message << "\n";

    if (!a.emit_word.empty()) io::write_word_file(a.emit_word, res.word, A.n(), *lm.field);
    if (!a.emit_inverse.empty()) io::write_matrix_file(a.emit_inverse, invert_via_word(A, res));
    return rep.ok ? 0 : 1;
}

struct BenchArgs {
    std::vector<std::size_t> n_list;
    std::uint32_t p = 2, m = 1;
    std::size_t trials = 5;
    std::uint64_t seed = 0;
    std::size_t width = 0;
    std::string out;
    bool timing = false;
};

int cmd_bench(const BenchArgs& a) {
    Field f(a.p, a.m);
    std::ofstream file;
    std::ostream& out = open_sink(file, a.out);
    out << "n,q,algo,stripe_width,mean_ops,max_ops,n_sq,n_sq_over_logq_n,wall_time\n";
    if (a.trials == 0) return 0;  // header-only table
    for (const std::size_t n : a.n_list) {
        const std::size_t w = a.width ? a.width : default_stripe_width(n, f.q());
        const double n_sq = static_cast<double>(n) * n;
        const double target = n > 1 ? n_sq / (std::log(static_cast<double>(n)) / std::log(static_cast<double>(f.q())))
                                    : 0.0;
        for (const std::string algo : {"gj", "striped"}) {
            double sum = 0;
            std::uint64_t max_ops = 0;
            const auto t0 = std::chrono::steady_clock::now();
            for (std::size_t t = 0; t < a.trials; ++t) {
                Matrix A = random_invertible(n, f, mix_seed(a.seed, n * 1000003 + t));
                const ReductionResult r = algo == "gj" ? gauss_jordan(A) : striped_eliminate(A, w);
                sum += static_cast<double>(r.op_count);
                max_ops = std::max(max_ops, r.op_count);
            }
            const auto t1 = std::chrono::steady_clock::now();
            const double wall = a.timing ? std::chrono::duration<double>(t1 - t0).count() : 0.0;
            const double mean = a.trials ? sum / static_cast<double>(a.trials) : 0.0;
            out << n << ',' << f.q() << ',' << algo << ',' << (algo == "striped" ? w : 0) << ','
                << io::fmt_double(mean, 1) << ',' << max_ops << ',' << io::fmt_double(n_sq, 1) << ','
                << io::fmt_double(target, 1) << ',' << io::fmt_double(wall, 3) << "\n";
        }
    }
    return 0;
}

struct BfsArgs {
    std::size_t n = 2;
    std::uint32_t p = 2, m = 1;
    std::string out;
    std::uint64_t state_cap = 0;
};

std::uint64_t effective_state_cap(std::uint64_t flag_value) {
    if (flag_value) return flag_value;
    if (const char* env = std::getenv("FFREDUCE_STATE_CAP")) return std::strtoull(env, nullptr, 10);
    return default_state_cap();
}

int cmd_bfs(const BfsArgs& a) {
    Field f(a.p, a.m);
    BfsResult r = bfs_histogram(a.n, f, effective_state_cap(a.state_cap));
    const std::string json = io::histogram_to_json(r.histogram());
    if (a.out.empty()) {
        std::cout << json;
    } else {
        std::ofstream file;
        open_sink(file, a.out) << json;
        std::cout << "wrote " << a.out << " (group order " << r.histogram().group_order.str() << ", diameter "
                  << r.histogram().diameter << ")\n";
    }
    return 0;
}

struct BoundsArgs {
    std::vector<std::size_t> n_list;
    std::uint32_t p = 2, m = 1;
    double alpha = 0.5;
    std::string hist_path;
    std::string format = "csv";
    std::string out;
};

int cmd_bounds(const BoundsArgs& a) {
    Field f(a.p, a.m);
    std::ofstream file;
    std::ostream& out = open_sink(file, a.out);

    const auto rows = asymptote_table(a.n_list, f.q(), a.alpha);
    if (a.format == "json") {
        nlohmann::ordered_json jrows = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json j;
            j["n"] = r.n;
            j["n_sq"] = r.n_sq;
            j["n_sq_over_logq_n"] = r.n_sq_over_logq_n;
            j["theorem1_kmax"] = r.kmax;
            j["gj_bound"] = r.gj_bound;
            j["striped_bound"] = r.striped_bound;
            j["stripe_width"] = r.stripe_width;
            j["invertible_fraction"] = r.invertible_fraction;
            j["invertible_fraction_paper_approx"] = r.invertible_fraction_coarse_lb;
            jrows.push_back(j);
        }
        out << jrows.dump(2) << "\n";
    } else {
        out << "n,q,alpha,n_sq,n_sq_over_logq_n,theorem1_kmax,gj_bound,striped_bound,stripe_width,"
               "invertible_fraction,invertible_fraction_paper_approx\n";
        for (const auto& r : rows)
            out << r.n << ',' << f.q() << ',' << io::fmt_double(a.alpha, 4) << ',' << io::fmt_double(r.n_sq, 1)
                << ',' << io::fmt_double(r.n_sq_over_logq_n, 2) << ',' << io::fmt_double(r.kmax, 2) << ','
                << io::fmt_double(r.gj_bound, 1) << ',' << io::fmt_double(r.striped_bound, 1) << ','
                << r.stripe_width << ',' << io::fmt_double(r.invertible_fraction, 6) << ','
                << io::fmt_double(r.invertible_fraction_coarse_lb, 6) << "\n";
    }

    // With a histogram file: exact ball sizes against the counting bound.
    if (!a.hist_path.empty()) {
        DistanceHistogram h = io::read_histogram_file(a.hist_path);
        if (h.p != f.p() || h.m != f.m())
            throw std::runtime_error("bounds: histogram file field does not match --p/--m");
        out << "k,ball_size,ball_log_q,counting_bound_log,pass\n";
        bool all_ok = true;
        for (std::size_t k = 0; k < h.ball_sizes.size(); ++k) {
            const double ball_log =
                std::log(static_cast<double>(h.ball_sizes[k])) / std::log(static_cast<double>(f.q()));
            const double bound = counting_bound_log(h.n, f.q(), static_cast<double>(k));
            const bool ok = ball_log <= bound;
            all_ok = all_ok && ok;
            out << k << ',' << h.ball_sizes[k] << ',' << io::fmt_double(ball_log, 6) << ','
                << io::fmt_double(bound, 6) << ',' << (ok ? "pass" : "fail") << "\n";
        }
        if (!all_ok) return 1;
    }
    return 0;
}

struct CanonArgs {
    std::string in_path;
    std::string out;
};

int cmd_canon(const CanonArgs& a) {
    io::LoadedWord lw = io::read_word_file(a.in_path);
    const Field& f = *lw.field;
    CanonicalWord cw = canonicalize(lw.word, f);
    const Word canon = cw.to_word();

    const Matrix before = eval_word(lw.word, Matrix::identity(lw.n, f));
    const Matrix after = eval_word(canon, Matrix::identity(lw.n, f));
    const bool equal = before == after;

    if (a.out.empty()) {
        io::write_word(std::cout, canon, lw.n, f);
    } else {
        io::write_word_file(a.out, canon, lw.n, f);
    }
    std::cout << "products equal: " << (equal ? "yes" : "no") << "; length " << lw.word.size() << " -> "
              << canon.size() << "; canonical: " << (is_canonical(cw) ? "yes" : "no") << "\n";
    return equal ? 0 : 1;
}

struct SampleArgs {
    std::size_t n = 2;
    std::uint32_t p = 2, m = 1;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_sample(const SampleArgs& a) {
    Field f(a.p, a.m);
    Matrix A = random_invertible(a.n, f, a.seed);
    if (a.out.empty()) {
        io::write_matrix(std::cout, A);
    } else {
        io::write_matrix_file(a.out, A);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"row-operation complexity toolkit for GL(n,q)"};
    app.require_subcommand(1);

    ReduceArgs ra;
    auto* reduce = app.add_subcommand("reduce", "reduce a matrix file to the identity, reporting the op count");
    reduce->add_option("--in", ra.in_path, "input matrix file")->required();
    reduce->add_option("--algo", ra.algo, "gj | striped")->check(CLI::IsMember({"gj", "striped"}));
    reduce->add_option("--width", ra.width, "stripe width override (striped only)");
    reduce->add_option("--emit-word", ra.emit_word, "write the reduction word file");
    reduce->add_option("--emit-inverse", ra.emit_inverse, "write the inverse matrix file");

    BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "seeded op-count benchmark, CSV output");
    bench->add_option("--n", ba.n_list, "matrix sizes")->required();
    bench->add_option("--p", ba.p, "field characteristic");
    bench->add_option("--m", ba.m, "extension degree");
    bench->add_option("--trials", ba.trials, "matrices per size");
    bench->add_option("--seed", ba.seed, "RNG seed")->required();
    bench->add_option("--width", ba.width, "stripe width override");
    bench->add_option("--out", ba.out, "output file (default stdout)");
    bench->add_flag("--timing", ba.timing, "fill the wall_time column (breaks byte reproducibility)");

    BfsArgs fa;
    auto* bfs = app.add_subcommand("bfs", "exact distance histogram by BFS over GL(n,q)");
    bfs->add_option("--n", fa.n, "dimension")->required();
    bfs->add_option("--p", fa.p, "field characteristic")->required();
    bfs->add_option("--m", fa.m, "extension degree");
    bfs->add_option("--out", fa.out, "histogram JSON file (default stdout)");
    bfs->add_option("--state-cap", fa.state_cap, "max states (default 2^28 or FFREDUCE_STATE_CAP)");

    BoundsArgs oa;
    auto* bounds = app.add_subcommand("bounds", "bound tables; with --hist, ball-vs-bound comparison");
    bounds->add_option("--n", oa.n_list, "dimensions")->required();
    bounds->add_option("--p", oa.p, "field characteristic")->required();
    bounds->add_option("--m", oa.m, "extension degree");
    bounds->add_option("--alpha", oa.alpha, "proportion in (0,1)")->required();
    bounds->add_option("--hist", oa.hist_path, "histogram JSON to compare against");
    bounds->add_option("--format", oa.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    bounds->add_option("--out", oa.out, "output file (default stdout)");

    CanonArgs ca;
    auto* canon = app.add_subcommand("canon", "rewrite a word file into canonical form");
    canon->add_option("--in", ca.in_path, "input word file")->required();
    canon->add_option("--out", ca.out, "output word file (default stdout)");

    SampleArgs sa;
    auto* sample = app.add_subcommand("sample", "write a seeded uniform random invertible matrix");
    sample->add_option("--n", sa.n, "dimension")->required();
    sample->add_option("--p", sa.p, "field characteristic")->required();
    sample->add_option("--m", sa.m, "extension degree");
    sample->add_option("--seed", sa.seed, "RNG seed")->required();
    sample->add_option("--out", sa.out, "output matrix file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (reduce->parsed()) return cmd_reduce(ra);
        if (bench->parsed()) return cmd_bench(ba);
        if (bfs->parsed()) return cmd_bfs(fa);
        if (bounds->parsed()) return cmd_bounds(oa);
        if (canon->parsed()) return cmd_canon(ca);
        if (sample->parsed()) return cmd_sample(sa);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
