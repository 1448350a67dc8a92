#include <doctest.h>

#include <stdexcept>

#include "ffreduce/elemword.hpp"
#include "ffreduce/matrix.hpp"
#include "ffreduce/reduce.hpp"
#include "ffreduce/rng.hpp"

using namespace ffreduce;

TEST_CASE("default_stripe_width formula values") {
    CHECK(default_stripe_width(1024, 2) == 3);
    CHECK(default_stripe_width(2048, 2) == 4);
    CHECK(default_stripe_width(4, 2) == 1);
    CHECK(default_stripe_width(16, 4) == 1);
}

TEST_CASE("gauss_jordan on the identity emits nothing") {
    Field f3(3, 1);
    ReductionResult r = gauss_jordan(Matrix::identity(5, f3));
    CHECK(r.op_count == 0);
    CHECK(r.word.empty());
    CHECK(verify_reduction(Matrix::identity(5, f3), r).ok);
}

TEST_CASE("gauss_jordan respects the n^2 contract on the swap matrix") {
    Field f2(2, 1);
    OpCounter ctr;
    Matrix A = apply_op(Matrix::identity(2, f2), ElementaryOp::swap(0, 1), ctr);
    ReductionResult r = gauss_jordan(A);
    CHECK(r.op_count <= 4);
    CHECK(verify_reduction(A, r).ok);
}

TEST_CASE("gauss_jordan reports the failing pivot column on singular input") {
    Field f2(2, 1);
    Matrix Z(3, f2);
    CHECK_THROWS_WITH_AS(gauss_jordan(Z), "gauss_jordan: singular at pivot column 0", std::domain_error);

    Matrix S(2, f2);  // rank 1
    S(0, 0) = S(1, 0) = 1;
    CHECK_THROWS_WITH_AS(gauss_jordan(S), "gauss_jordan: singular at pivot column 1", std::domain_error);
}

TEST_CASE("gauss_jordan: 1000 random GL(8,3) matrices verify, op_count <= 64") {
    Field f3(3, 1);
    for (std::uint64_t t = 0; t < 1000; ++t) {
        Matrix A = random_invertible(8, f3, mix_seed(81, t));
        ReductionResult r = gauss_jordan(A);
        REQUIRE(r.op_count <= 64);
        REQUIRE(eval_word(r.word, A) == Matrix::identity(8, f3));
    }
}

TEST_CASE("striped on the identity emits nothing, any width") {
    Field f2(2, 1);
    for (std::size_t w : {1, 2, 3}) {
        ReductionResult r = striped_eliminate(Matrix::identity(6, f2), w);
        CHECK(r.op_count == 0);
    }
    Field f4(2, 2);
    CHECK(striped_eliminate(Matrix::identity(5, f4), 2).op_count == 0);
}

TEST_CASE("striped width validation") {
    Field f2(2, 1);
    Matrix I = Matrix::identity(4, f2);
    CHECK_THROWS_AS(striped_eliminate(I, 0), std::invalid_argument);
    CHECK_THROWS_AS(striped_eliminate(I, 5), std::invalid_argument);
}

TEST_CASE("striped rejects singular input naming the stripe") {
    Field f2(2, 1);
    Matrix Z(4, f2);
    CHECK_THROWS_AS(striped_eliminate(Z, 2), std::domain_error);
}

TEST_CASE("striped verifies and meets its op bound across fields and widths") {
    for (auto [p, m, n] : std::vector<std::tuple<std::uint32_t, std::uint32_t, std::size_t>>{
             {2, 1, 9}, {3, 1, 8}, {2, 2, 7}, {5, 1, 6}}) {
        Field f(p, m);
        for (std::size_t w = 1; w <= 3; ++w) {
            for (std::uint64_t t = 0; t < 50; ++t) {
                Matrix A = random_invertible(n, f, mix_seed(p * 100 + m * 10 + w, t));
                ReductionResult r = striped_eliminate(A, w);
                REQUIRE(eval_word(r.word, A) == Matrix::identity(n, f));
                REQUIRE(r.op_count <= striped_op_bound(n, f.q(), w));
            }
        }
    }
}

TEST_CASE("striped with w=1 behaves like a column sweep: op_count <= n^2 + 3n") {
    Field f3(3, 1);
    for (std::uint64_t t = 0; t < 100; ++t) {
        const std::size_t n = 10;
        Matrix A = random_invertible(n, f3, mix_seed(131, t));
        ReductionResult r = striped_eliminate(A, 1);
        REQUIRE(r.op_count <= n * n + 3 * n);
        REQUIRE(eval_word(r.word, A) == Matrix::identity(n, f3));
    }
}

TEST_CASE("striped handles structured inputs") {
    Field f3(3, 1);
    const std::size_t n = 6;
    const Matrix I = Matrix::identity(n, f3);
    OpCounter ctr;

    // Reversal permutation matrix.
    Matrix P(n, f3);
    for (std::size_t r = 0; r < n; ++r) P(r, n - 1 - r) = 1;
    for (std::size_t w = 1; w <= 4; ++w) {
        ReductionResult r = striped_eliminate(P, w);
        REQUIRE(eval_word(r.word, P) == I);
    }

    // Single transvections and scaled identities.
    for (const auto& op : {ElementaryOp::add_mul(0, 5, 2), ElementaryOp::add_mul(4, 2, 1), ElementaryOp::scale(3, 2)}) {
        Matrix E = apply_op(I, op, ctr);
        for (std::size_t w = 1; w <= 3; ++w) {
            ReductionResult r = striped_eliminate(E, w);
            REQUIRE(eval_word(r.word, E) == I);
            REQUIRE(r.op_count <= 3);  // nearly-identity inputs stay cheap
        }
    }
}

TEST_CASE("striped over GF(8) and GF(9) with wider stripes") {
    for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 3}, {3, 2}}) {
        Field f(p, m);
        for (std::uint64_t t = 0; t < 10; ++t) {
            Matrix A = random_invertible(11, f, mix_seed(p * 7 + m, t));
            for (std::size_t w : {2, 4}) {
                ReductionResult r = striped_eliminate(A, w);
                REQUIRE(eval_word(r.word, A) == Matrix::identity(11, f));
                REQUIRE(r.op_count <= striped_op_bound(11, f.q(), w));
            }
        }
    }
}

TEST_CASE("striped at n=1024, q=2: verifies and honors the stripe bound") {
    Field f2(2, 1);
    Matrix A = random_invertible(1024, f2, 20240);
    ReductionResult r = striped_eliminate(A, 3);
    CHECK(r.op_count <= striped_op_bound(1024, 2, 3));
    CHECK(r.op_count <= 367000);  // ceil(1024/3)*(1024+16+27+3)
    CHECK(eval_word(r.word, A) == Matrix::identity(1024, f2));
}

TEST_CASE("packed and generic backends emit identical words") {
    Field f2(2, 1);
    for (std::uint64_t t = 0; t < 20; ++t) {
        Matrix A = random_invertible(33, f2, mix_seed(3333, t));
        CHECK(gauss_jordan(A, RowBackend::generic).word == gauss_jordan(A, RowBackend::packed_gf2).word);
        CHECK(striped_eliminate(A, 3, RowBackend::generic).word ==
              striped_eliminate(A, 3, RowBackend::packed_gf2).word);
    }
}

TEST_CASE("verify_reduction flags a corrupted word with a diagnostic") {
    Field f3(3, 1);
    Matrix A = random_invertible(5, f3, 11);
    ReductionResult r = gauss_jordan(A);
    REQUIRE(verify_reduction(A, r).ok);

    // Flip one coefficient mid-word.
    ReductionResult bad = r;
    bool flipped = false;
    for (auto& op : bad.word.ops) {
        if (op.kind == OpKind::AddMul) {
            op.lambda = op.lambda == 1 ? 2 : 1;
            flipped = true;
            break;
        }
    }
    REQUIRE(flipped);
    VerifyReport rep = verify_reduction(A, bad);
    CHECK(!rep.ok);
    CHECK(rep.first_bad_op.has_value());
}

TEST_CASE("invert_via_word produces the inverse") {
    Field f4(2, 2);
    for (std::uint64_t t = 0; t < 200; ++t) {
        Matrix A = random_invertible(5, f4, mix_seed(5150, t));
        ReductionResult r = gauss_jordan(A);
        Matrix inv = invert_via_word(A, r);
        REQUIRE(matmul(A, inv) == Matrix::identity(5, f4));
        REQUIRE(matmul(inv, A) == Matrix::identity(5, f4));
    }
}

TEST_CASE("canonicalizing reduction words preserves product and length bound") {
    Field f3(3, 1);
    for (std::uint64_t t = 0; t < 100; ++t) {
        Matrix A = random_invertible(6, f3, mix_seed(606, t));
        ReductionResult r = gauss_jordan(A);
        CanonicalWord cw = canonicalize(r.word, f3);
        REQUIRE(cw.size() <= r.word.size());
        REQUIRE(eval_word(cw.to_word(), A) == Matrix::identity(6, f3));
        REQUIRE(is_canonical(cw));
    }
}
