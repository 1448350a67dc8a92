#pragma once

#include <cstdint>
#include <vector>

namespace ffreduce {

/// A field element, stored as its integer encoding in [0, q).
/// For extension fields the base-p digits of the value are the polynomial
/// coefficients, constant term in the least-significant digit.
using felem = std::uint16_t;

// Exact arithmetic in GF(p^m), table-backed. The modulus is the monic
// irreducible polynomial of degree m over GF(p) with the smallest integer
// encoding (coefficients read as base-p digits), found by trial division.
//
// Immutable after construction; safe to share across threads read-only.
class Field {
public:
    // Throws std::invalid_argument for non-prime p, m < 1, or p^m > 2^16.
    Field(std::uint32_t p, std::uint32_t m);

    std::uint32_t p() const { return p_; }
    std::uint32_t m() const { return m_; }
    std::uint32_t q() const { return q_; }

    // Coefficients c0..cm of the modulus, c0 first, cm = 1.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    bool valid(std::uint64_t value) const { return value < q_; }

    felem add(felem a, felem b) const;
    felem sub(felem a, felem b) const;
    felem neg(felem a) const;
    felem mul(felem a, felem b) const;
    felem inv(felem a) const;  // throws std::domain_error for a = 0
    felem div(felem a, felem b) const { return mul(a, inv(b)); }
    felem pow(felem a, std::uint64_t e) const;

    felem zero() const { return 0; }
    felem one() const { return 1; }

    bool operator==(const Field& o) const { return p_ == o.p_ && m_ == o.m_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

private:
    std::uint32_t p_ = 0, m_ = 0, q_ = 0;
    std::vector<std::uint32_t> modulus_;

    // One slot per element.
    std::vector<felem> inv_;
    std::vector<felem> neg_;
    // Discrete log/antilog over a multiplicative generator (extension fields).
    std::vector<felem> exp_;
    std::vector<felem> log_;
    // Dense q*q tables when q <= kDenseTableLimit.
    std::vector<felem> mul_table_;
    std::vector<felem> add_table_;

    static constexpr std::uint32_t kDenseTableLimit = 256;

    felem poly_add(felem a, felem b) const;
    felem poly_sub(felem a, felem b) const;
    felem poly_mul_mod(felem a, felem b) const;
    void build_tables();
};

bool is_prime(std::uint64_t v);

}  // namespace ffreduce
