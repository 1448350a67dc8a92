#include "ffreduce/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace ffreduce {

std::size_t default_stripe_width(std::size_t n, std::uint64_t q) {
    if (n == 0) return 1;
    const double lq = std::log(static_cast<double>(q));
    const double L = std::log(static_cast<double>(n)) / lq;
    const double inner = std::max(L, static_cast<double>(q));
    const double raw = std::floor(L - 2.0 * std::log(inner) / lq + 1e-9);
    double w = std::max(1.0, raw);
    w = std::min(w, static_cast<double>(n));
    return static_cast<std::size_t>(w);
}

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    if (b > std::numeric_limits<std::uint64_t>::max() - a) return std::numeric_limits<std::uint64_t>::max();
    return a + b;
}

std::uint64_t sat_pow(std::uint64_t q, std::size_t w) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < w; ++i) r = sat_mul(r, q);
    return r;
}

}  // namespace

std::uint64_t striped_op_bound(std::size_t n, std::uint64_t q, std::size_t w) {
    const std::uint64_t stripes = (n + w - 1) / w;
    std::uint64_t per = sat_add(n, sat_mul(2, sat_pow(q, w)));
    per = sat_add(per, sat_add(sat_mul(3, sat_mul(w, w)), w));
    return sat_mul(stripes, per);
}

namespace {

// Row storage the eliminations run on. Both implementations expose the same
// surface, and the pivot decisions read entry values only, so the recorded
// ops are identical whichever backend runs.

class DenseRows {
public:
    explicit DenseRows(const Matrix& A) : f_(&A.field()), n_(A.n()), a_(A.entries()) {}

    std::size_t n() const { return n_; }
    const Field& field() const { return *f_; }

    felem at(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }

    void swap_rows(std::size_t i, std::size_t j) {
        std::swap_ranges(a_.begin() + static_cast<std::ptrdiff_t>(i * n_),
                         a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_),
                         a_.begin() + static_cast<std::ptrdiff_t>(j * n_));
    }

    void scale_row(std::size_t i, felem lambda) {
        felem* row = a_.data() + i * n_;
        for (std::size_t c = 0; c < n_; ++c) row[c] = f_->mul(row[c], lambda);
    }

    void addmul_row(std::size_t src, std::size_t dst, felem lambda) {
        const felem* s = a_.data() + src * n_;
        felem* d = a_.data() + dst * n_;
        for (std::size_t c = 0; c < n_; ++c) d[c] = f_->add(d[c], f_->mul(lambda, s[c]));
    }

    bool is_identity() const {
        for (std::size_t r = 0; r < n_; ++r)
            for (std::size_t c = 0; c < n_; ++c)
                if (a_[r * n_ + c] != (r == c ? 1 : 0)) return false;
        return true;
    }

private:
    const Field* f_;
    std::size_t n_;
    std::vector<felem> a_;
};

class PackedRowsGF2 {
public:
    explicit PackedRowsGF2(const Matrix& A) : f_(&A.field()), n_(A.n()), words_((n_ + 63) / 64), b_(n_ * words_, 0) {
        for (std::size_t r = 0; r < n_; ++r)
            for (std::size_t c = 0; c < n_; ++c)
                if (A(r, c)) b_[r * words_ + c / 64] |= 1ull << (c % 64);
    }

    std::size_t n() const { return n_; }
    const Field& field() const { return *f_; }

    felem at(std::size_t r, std::size_t c) const {
        return static_cast<felem>((b_[r * words_ + c / 64] >> (c % 64)) & 1u);
    }

    void swap_rows(std::size_t i, std::size_t j) {
        std::swap_ranges(b_.begin() + static_cast<std::ptrdiff_t>(i * words_),
                         b_.begin() + static_cast<std::ptrdiff_t>((i + 1) * words_),
                         b_.begin() + static_cast<std::ptrdiff_t>(j * words_));
    }

    void scale_row(std::size_t, felem) { throw std::logic_error("PackedRowsGF2: Scale is degenerate over GF(2)"); }

    void addmul_row(std::size_t src, std::size_t dst, felem) {
        const std::uint64_t* s = b_.data() + src * words_;
        std::uint64_t* d = b_.data() + dst * words_;
        for (std::size_t k = 0; k < words_; ++k) d[k] ^= s[k];
    }

    bool is_identity() const {
        for (std::size_t r = 0; r < n_; ++r)
            for (std::size_t k = 0; k < words_; ++k) {
                const std::uint64_t expect = (r / 64 == k) ? (1ull << (r % 64)) : 0;
                if (b_[r * words_ + k] != expect) return false;
            }
        return true;
    }

private:
    const Field* f_;
    std::size_t n_, words_;
    std::vector<std::uint64_t> b_;
};

template <class WS>
class OpRecorder {
public:
    explicit OpRecorder(WS& ws) : ws_(ws) {}

    void swap(std::size_t i, std::size_t j) {
        ws_.swap_rows(i, j);
        ops_.push_back(ElementaryOp::swap(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)));
    }

    void scale(std::size_t i, felem lambda) {
        ws_.scale_row(i, lambda);
        ops_.push_back(ElementaryOp::scale(static_cast<std::uint32_t>(i), lambda));
    }

    void add_mul(std::size_t src, std::size_t dst, felem lambda) {
        ws_.addmul_row(src, dst, lambda);
        ops_.push_back(
            ElementaryOp::add_mul(static_cast<std::uint32_t>(src), static_cast<std::uint32_t>(dst), lambda));
    }

    std::vector<ElementaryOp>& ops() { return ops_; }  // application order

private:
    WS& ws_;
    std::vector<ElementaryOp> ops_;
};

template <class WS>
void gauss_jordan_on(WS& ws, OpRecorder<WS>& rec) {
    const Field& f = ws.field();
    const std::size_t n = ws.n();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && ws.at(piv, c) == 0) ++piv;
        if (piv == n) throw std::domain_error("gauss_jordan: singular at pivot column " + std::to_string(c));
        if (piv != c) rec.swap(c, piv);
        const felem v = ws.at(c, c);
        if (v != 1) rec.scale(c, f.inv(v));
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const felem u = ws.at(r, c);
            if (u != 0) rec.add_mul(c, r, f.neg(u));
        }
    }
}

// Loopless q-ary reflected Gray counter over d digits: each step changes one
// digit by +-1. step() reports the digit index and its old/new values.
class GrayCounter {
public:
    GrayCounter(std::size_t d, std::uint32_t q) : q_(q), a_(d, 0), o_(d, 1), focus_(d + 1) {
        for (std::size_t k = 0; k <= d; ++k) focus_[k] = k;
    }

    const std::vector<felem>& digits() const { return a_; }

    bool step(std::size_t& coord, felem& oldv, felem& newv) {
        const std::size_t j = focus_[0];
        focus_[0] = 0;
        if (j == a_.size()) return false;
        oldv = a_[j];
        const int next = static_cast<int>(a_[j]) + o_[j];
        a_[j] = static_cast<felem>(next);
        newv = a_[j];
        if (next == 0 || next == static_cast<int>(q_) - 1) {
            o_[j] = -o_[j];
            focus_[j] = focus_[j + 1];
            focus_[j + 1] = j + 1;
        }
        coord = j;
        return true;
    }

private:
    std::uint32_t q_;
    std::vector<felem> a_;
    std::vector<int> o_;
    std::vector<std::size_t> focus_;
};

template <class WS>
void striped_on(WS& ws, OpRecorder<WS>& rec, std::size_t w) {
    const Field& f = ws.field();
    const std::size_t n = ws.n();
    const std::uint32_t q = f.q();

    for (std::size_t c0 = 0; c0 < n; c0 += w) {
        const std::size_t wt = std::min(w, n - c0);

        // Pick wt rows with independent stripe segments. The scratch
        // reduction is bookkeeping, not charged row operations.
        std::vector<std::vector<felem>> basis(wt);
        std::vector<std::size_t> chosen;
        for (std::size_t r = c0; r < n && chosen.size() < wt; ++r) {
            std::vector<felem> seg(wt);
            for (std::size_t l = 0; l < wt; ++l) seg[l] = ws.at(r, c0 + l);
            for (std::size_t l = 0; l < wt; ++l) {
                if (seg[l] != 0 && !basis[l].empty()) {
                    const felem coef = seg[l];
                    for (std::size_t k = l; k < wt; ++k) seg[k] = f.sub(seg[k], f.mul(coef, basis[l][k]));
                }
            }
            std::size_t lead = wt;
            for (std::size_t l = 0; l < wt; ++l)
                if (seg[l] != 0) {
                    lead = l;
                    break;
                }
            if (lead == wt) continue;
            const felem ilead = f.inv(seg[lead]);
            for (std::size_t k = lead; k < wt; ++k) seg[k] = f.mul(seg[k], ilead);
            basis[lead] = std::move(seg);
            chosen.push_back(r);
        }
        if (chosen.size() < wt)
            throw std::domain_error("striped_eliminate: singular at stripe columns [" + std::to_string(c0) + ", " +
                                    std::to_string(c0 + wt) + ")");

        // Swap the chosen rows into the block positions.
        for (std::size_t k = 0; k < wt; ++k) {
            const std::size_t target = c0 + k;
            if (chosen[k] != target) {
                rec.swap(chosen[k], target);
                for (std::size_t j = k + 1; j < wt; ++j)
                    if (chosen[j] == target) chosen[j] = chosen[k];
                chosen[k] = target;
            }
        }

        // Small Gauss-Jordan confined to the block rows: the wt-wide stripe
        // block of rows c0..c0+wt-1 becomes the identity. These rows are
        // zero left of the stripe, so nothing earlier is disturbed.
        for (std::size_t j = 0; j < wt; ++j) {
            const std::size_t c = c0 + j;
            std::size_t piv = j;
            while (piv < wt && ws.at(c0 + piv, c) == 0) ++piv;
            if (piv == wt) throw std::logic_error("striped_eliminate: block lost rank");
            if (piv != j) rec.swap(c0 + j, c0 + piv);
            const felem v = ws.at(c, c);
            if (v != 1) rec.scale(c, f.inv(v));
            for (std::size_t r = 0; r < wt; ++r) {
                if (r == j) continue;
                const felem u = ws.at(c0 + r, c);
                if (u != 0) rec.add_mul(c, c0 + r, f.neg(u));
            }
        }

        // Bucket every other row by its normalized stripe pattern: v with
        // leading index l and lead coefficient v_l files under (l, v/v_l).
        // Bookkeeping; each bucketed row is cleared exactly once below.
        std::vector<std::uint64_t> qpow(wt, 1);
        for (std::size_t k = 1; k < wt; ++k) qpow[k] = qpow[k - 1] * q;
        struct Entry {
            std::uint32_t row;
            felem lead_coef;
        };
        std::vector<std::unordered_map<std::uint64_t, std::vector<Entry>>> buckets(wt);
        std::vector<std::size_t> rows_for_lead(wt, 0);
        for (std::size_t r = 0; r < n; ++r) {
            if (r >= c0 && r < c0 + wt) continue;
            std::size_t lead = wt;
            for (std::size_t l = 0; l < wt; ++l)
                if (ws.at(r, c0 + l) != 0) {
                    lead = l;
                    break;
                }
            if (lead == wt) continue;
            const felem vl = ws.at(r, c0 + lead);
            const felem ivl = f.inv(vl);
            std::uint64_t key = 0;
            for (std::size_t l = lead + 1; l < wt; ++l)
                key += static_cast<std::uint64_t>(f.mul(ws.at(r, c0 + l), ivl)) * qpow[l - lead - 1];
            buckets[lead][key].push_back({static_cast<std::uint32_t>(r), vl});
            ++rows_for_lead[lead];
        }

        // Sweep per leading index j: pivot row c0+j is the accumulator. Its
        // stripe pattern walks e_j + u over all u in Gray order, one AddMul
        // from pivot rows j+1..wt-1 per step; every row bucketed under the
        // current pattern is cleared with a single AddMul. The walk stops
        // once this lead's rows are exhausted, then the accumulator is
        // restored to e_j. The accumulator mixes only this stripe's pivot
        // rows, which are zero left of the stripe, so no earlier column is
        // contaminated.
        for (std::size_t j = 0; j < wt; ++j) {
            std::size_t remaining = rows_for_lead[j];
            if (remaining == 0) continue;
            const std::size_t d = wt - 1 - j;
            const std::size_t acc = c0 + j;
            std::uint64_t key = 0;
            auto clear_bucket = [&]() {
                auto it = buckets[j].find(key);
                if (it == buckets[j].end()) return;
                for (const Entry& e : it->second) {
                    rec.add_mul(acc, e.row, f.neg(e.lead_coef));
                    --remaining;
                }
                it->second.clear();
            };

            clear_bucket();
            GrayCounter gray(d, q);
            std::size_t coord = 0;
            felem oldv = 0, newv = 0;
            while (remaining > 0 && gray.step(coord, oldv, newv)) {
                rec.add_mul(c0 + j + 1 + coord, acc, f.sub(newv, oldv));
                // Unsigned wraparound yields the correct key delta.
                key += (static_cast<std::uint64_t>(newv) - oldv) * qpow[coord];
                clear_bucket();
            }

            // Restore the accumulator pattern from e_j + u back to e_j.
            const auto& u = gray.digits();
            for (std::size_t k = 0; k < d; ++k)
                if (u[k] != 0) rec.add_mul(c0 + j + 1 + k, acc, f.neg(u[k]));
        }
    }
}

Word to_product_order(std::vector<ElementaryOp>&& app_order) {
    Word w;
    w.ops = std::move(app_order);
    std::reverse(w.ops.begin(), w.ops.end());
    return w;
}

template <class Algo>
ReductionResult run_reduction(const Matrix& A, RowBackend backend, Algo&& algo, std::string name,
                              std::size_t width) {
    const bool packed = backend == RowBackend::packed_gf2 ||
                        (backend == RowBackend::automatic && A.field().q() == 2);
    if (packed && A.field().q() != 2) throw std::invalid_argument("packed_gf2 backend requires GF(2)");

    std::vector<ElementaryOp> app;
    if (packed) {
        PackedRowsGF2 ws(A);
        OpRecorder<PackedRowsGF2> rec(ws);
        algo(ws, rec);
        if (!ws.is_identity()) throw std::logic_error(name + ": reduction did not reach the identity");
        app = std::move(rec.ops());
    } else {
        DenseRows ws(A);
        OpRecorder<DenseRows> rec(ws);
        algo(ws, rec);
        if (!ws.is_identity()) throw std::logic_error(name + ": reduction did not reach the identity");
        app = std::move(rec.ops());
    }

    ReductionResult res;
    res.op_count = app.size();
    res.word = to_product_order(std::move(app));
    res.algorithm = std::move(name);
    res.stripe_width = width;
    return res;
}

}  // namespace

ReductionResult gauss_jordan(const Matrix& A, RowBackend backend) {
    ReductionResult res = run_reduction(
        A, backend, [](auto& ws, auto& rec) { gauss_jordan_on(ws, rec); }, "gauss_jordan", 0);
    const std::uint64_t bound = static_cast<std::uint64_t>(A.n()) * A.n();
    if (res.op_count > bound) throw std::logic_error("gauss_jordan: op bound n^2 exceeded");
    return res;
}

ReductionResult striped_eliminate(const Matrix& A, std::size_t width, RowBackend backend) {
    const std::size_t n = A.n();
    if (width < 1 || width > n) throw std::invalid_argument("striped_eliminate: width out of range [1, n]");
    if (sat_pow(A.field().q(), width) > (1ull << 31))
        throw std::invalid_argument("striped_eliminate: width makes the q^w table sweep infeasible");
    ReductionResult res = run_reduction(
        A, backend, [width](auto& ws, auto& rec) { striped_on(ws, rec, width); }, "striped", width);
    if (res.op_count > striped_op_bound(n, A.field().q(), width))
        throw std::logic_error("striped_eliminate: per-stripe op bound exceeded");
    return res;
}

VerifyReport verify_reduction(const Matrix& A, const ReductionResult& result) {
    VerifyReport rep;
    const std::size_t n = A.n();
    const Field& f = A.field();
    Matrix R = eval_word(result.word, A);
    if (R == Matrix::identity(n, f)) {
        rep.ok = true;
        rep.message = "ok";
        return rep;
    }
    rep.ok = false;
    rep.message = "word does not reduce the input to the identity";

    // Localize against the deterministic reference word the tagged algorithm
    // would emit for A: the first application-order index where the checked
    // word deviates from it.
    try {
        ReductionResult ref;
        if (result.algorithm == "gauss_jordan") {
            ref = gauss_jordan(A);
        } else if (result.algorithm == "striped" && result.stripe_width >= 1) {
            ref = striped_eliminate(A, result.stripe_width);
        } else {
            return rep;
        }
        const auto& got = result.word.ops;   // product order
        const auto& want = ref.word.ops;
        const std::size_t k = std::min(got.size(), want.size());
        for (std::size_t t = 0; t < k; ++t) {
            // application order index t runs from the back of product order
            if (!(got[got.size() - 1 - t] == want[want.size() - 1 - t])) {
                rep.first_bad_op = t + 1;
                break;
            }
        }
        if (!rep.first_bad_op && got.size() != want.size()) rep.first_bad_op = k + 1;
        if (rep.first_bad_op)
            rep.message += "; first divergence from the recomputed word at op " +
                           std::to_string(*rep.first_bad_op) + " (application order)";
    } catch (const std::exception&) {
        // Reference recomputation failed (e.g. singular input): leave the
        // plain failure report.
    }
    return rep;
}

Matrix invert_via_word(const Matrix& A, const ReductionResult& result) {
    const Matrix inv = eval_word(result.word, Matrix::identity(A.n(), A.field()));
    if (matmul(A, inv) != Matrix::identity(A.n(), A.field()))
        throw std::domain_error("invert_via_word: A * A^-1 != I; word does not reduce A");
    return inv;
}

}  // namespace ffreduce
