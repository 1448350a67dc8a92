#include "ffreduce/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ffreduce {
namespace io {

namespace {

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

}  // namespace

LoadedMatrix read_matrix(std::istream& in) {
    std::size_t n = 0;
    long long p = 0, m = 0;
    if (!(in >> n >> p >> m)) throw std::runtime_error("matrix file: bad header, expected 'n p m'");
    if (n < 1) throw std::runtime_error("matrix file: dimension must be >= 1");
    if (p < 2 || m < 1) throw std::runtime_error("matrix file: bad field parameters");
    LoadedMatrix lm;
    lm.field = std::make_shared<Field>(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(m));
    lm.matrix = std::make_unique<Matrix>(n, *lm.field);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            long long v;
            if (!(in >> v)) throw std::runtime_error("matrix file: missing entries");
            if (v < 0 || !lm.field->valid(static_cast<std::uint64_t>(v)))
                throw std::runtime_error("matrix file: entry " + std::to_string(v) + " out of range [0, q)");
            (*lm.matrix)(r, c) = static_cast<felem>(v);
        }
    return lm;
}

LoadedMatrix read_matrix_file(const std::string& path) {
    auto in = open_in(path);
    return read_matrix(in);
}

void write_matrix(std::ostream& out, const Matrix& A) {
    out << A.n() << ' ' << A.field().p() << ' ' << A.field().m() << '\n';
    for (std::size_t r = 0; r < A.n(); ++r) {
        for (std::size_t c = 0; c < A.n(); ++c) {
            if (c) out << ' ';
            out << A(r, c);
        }
        out << '\n';
    }
}

void write_matrix_file(const std::string& path, const Matrix& A) {
    auto out = open_out(path);
    write_matrix(out, A);
}

LoadedWord read_word(std::istream& in) {
    std::string tag, order;
    std::size_t n = 0;
    long long p = 0, m = 0;
    if (!(in >> tag >> n >> p >> m >> order) || tag != "word" || order != "order=application")
        throw std::runtime_error("word file: bad header, expected 'word n p m order=application'");
    if (n < 1 || p < 2 || m < 1) throw std::runtime_error("word file: bad parameters");

    LoadedWord lw;
    lw.n = n;
    lw.field = std::make_shared<Field>(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(m));

    auto check_row = [n](long long r) {
        if (r < 0 || static_cast<std::size_t>(r) >= n) throw std::runtime_error("word file: row index out of range");
        return static_cast<std::uint32_t>(r);
    };
    auto check_lambda = [&lw](long long l) {
        if (l < 0 || !lw.field->valid(static_cast<std::uint64_t>(l)))
            throw std::runtime_error("word file: lambda out of range [0, q)");
        return static_cast<felem>(l);
    };

    std::vector<ElementaryOp> app;  // application order, as written
    std::string kind;
    while (in >> kind) {
        if (kind == "S") {
            long long i, j;
            if (!(in >> i >> j)) throw std::runtime_error("word file: S expects 'S i j'");
            app.push_back(ElementaryOp::swap(check_row(i), check_row(j)));
        } else if (kind == "M") {
            long long i, l;
            if (!(in >> i >> l)) throw std::runtime_error("word file: M expects 'M i lambda'");
            app.push_back(ElementaryOp::scale(check_row(i), check_lambda(l)));
        } else if (kind == "A") {
            long long i, j, l;
            if (!(in >> i >> j >> l)) throw std::runtime_error("word file: A expects 'A src dst lambda'");
            app.push_back(ElementaryOp::add_mul(check_row(i), check_row(j), check_lambda(l)));
        } else {
            throw std::runtime_error("word file: unknown op kind '" + kind + "'");
        }
    }
    lw.word.ops.assign(app.rbegin(), app.rend());
    return lw;
}

LoadedWord read_word_file(const std::string& path) {
    auto in = open_in(path);
    return read_word(in);
}

void write_word(std::ostream& out, const Word& w, std::size_t n, const Field& f) {
    out << "word " << n << ' ' << f.p() << ' ' << f.m() << " order=application\n";
    for (auto it = w.ops.rbegin(); it != w.ops.rend(); ++it) {
        switch (it->kind) {
            case OpKind::Swap:
                out << "S " << it->i << ' ' << it->j << '\n';
                break;
            case OpKind::Scale:
                out << "M " << it->i << ' ' << it->lambda << '\n';
                break;
            case OpKind::AddMul:
                out << "A " << it->i << ' ' << it->j << ' ' << it->lambda << '\n';
                break;
        }
    }
}

void write_word_file(const std::string& path, const Word& w, std::size_t n, const Field& f) {
    auto out = open_out(path);
    write_word(out, w, n, f);
}

std::string fmt_double(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    return buf;
}

std::string histogram_to_json(const DistanceHistogram& h) {
    nlohmann::ordered_json j;
    j["n"] = h.n;
    j["p"] = h.p;
    j["m"] = h.m;
    j["group_order"] = h.group_order.str();
    nlohmann::ordered_json counts;
    for (std::size_t d = 0; d < h.counts.size(); ++d) counts[std::to_string(d)] = h.counts[d];
    j["histogram"] = counts;
    j["diameter"] = h.diameter;
    j["mean"] = h.mean;
    return j.dump(2) + "\n";
}

void write_histogram_file(const std::string& path, const DistanceHistogram& h) {
    auto out = open_out(path);
    out << histogram_to_json(h);
}

DistanceHistogram read_histogram_file(const std::string& path) {
    auto in = open_in(path);
    nlohmann::json j;
    in >> j;
    DistanceHistogram h;
    h.n = j.at("n").get<std::size_t>();
    h.p = j.at("p").get<std::uint32_t>();
    h.m = j.at("m").get<std::uint32_t>();
    h.group_order = GroupKey(j.at("group_order").get<std::string>());
    const auto& counts = j.at("histogram");
    h.counts.assign(counts.size(), 0);
    for (auto it = counts.begin(); it != counts.end(); ++it) {
        const std::size_t d = std::stoul(it.key());
        if (d >= h.counts.size()) throw std::runtime_error("histogram file: non-contiguous distances");
        h.counts[d] = it.value().get<std::uint64_t>();
    }
    std::uint64_t cum = 0;
    for (auto c : h.counts) {
        cum += c;
        h.ball_sizes.push_back(cum);
    }
    h.diameter = j.at("diameter").get<int>();
    h.mean = j.at("mean").get<double>();
    return h;
}

}  // namespace io
}  // namespace ffreduce
