#include "ffreduce/field.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ffreduce {

bool is_prime(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

namespace {

using Poly = std::vector<std::uint32_t>;  // c0 first, no trailing zeros required

int degree(const Poly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[static_cast<std::size_t>(i)] != 0) return i;
    return -1;
}

// f mod g over GF(p), g monic.
Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
    const int dg = degree(g);
    for (int df = degree(f); df >= dg; df = degree(f)) {
        const std::uint32_t lead = f[static_cast<std::size_t>(df)];
        const int shift = df - dg;
        for (int i = 0; i <= dg; ++i) {
            std::uint64_t t = f[static_cast<std::size_t>(i + shift)] + static_cast<std::uint64_t>(p) * p -
                              static_cast<std::uint64_t>(lead) * g[static_cast<std::size_t>(i)] % p;
            f[static_cast<std::size_t>(i + shift)] = static_cast<std::uint32_t>(t % p);
        }
    }
    return f;
}

Poly poly_from_value(std::uint64_t v, std::uint32_t p) {
    Poly f;
    while (v > 0) {
        f.push_back(static_cast<std::uint32_t>(v % p));
        v /= p;
    }
    return f;
}

bool divides(const Poly& g, const Poly& f, std::uint32_t p) {
    return degree(poly_mod(f, g, p)) < 0;
}

// Irreducibility by trial division against every monic polynomial of degree
// 1..deg/2. A reducible monic polynomial has a monic factor in that range,
// and poly_mod requires monic divisors, so only those are enumerated: the
// value encoding of a monic degree-d polynomial is p^d + u with u < p^d.
bool is_irreducible(const Poly& f, std::uint32_t p) {
    const int df = degree(f);
    if (df <= 0) return false;
    if (df == 1) return true;
    std::uint64_t pd = p;
    for (int d = 1; 2 * d <= df; ++d) {
        for (std::uint64_t u = 0; u < pd; ++u)
            if (divides(poly_from_value(pd + u, p), f, p)) return false;
        pd *= p;
    }
    return true;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t v) {
    std::vector<std::uint32_t> fs;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= v; ++d) {
        if (v % d == 0) {
            fs.push_back(d);
            while (v % d == 0) v /= d;
        }
    }
    if (v > 1) fs.push_back(v);
    return fs;
}

}  // namespace

Field::Field(std::uint32_t p, std::uint32_t m) : p_(p), m_(m) {
    if (!is_prime(p)) throw std::invalid_argument("Field: characteristic " + std::to_string(p) + " is not prime");
    if (m < 1) throw std::invalid_argument("Field: extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        q *= p;
        if (q > (1u << 16)) throw std::invalid_argument("Field: order p^m exceeds 2^16");
    }
    q_ = static_cast<std::uint32_t>(q);

    if (m_ == 1) {
        modulus_ = {0, 1};  // x
    } else {
        // Smallest integer encoding among monic irreducibles of degree m.
        std::uint64_t lo = 1;
        for (std::uint32_t i = 0; i < m; ++i) lo *= p;
        for (std::uint64_t v = lo; v < 2 * lo; ++v) {
            Poly f = poly_from_value(v, p);
            if (is_irreducible(f, p)) {
                f.resize(m + 1, 0);
                modulus_.assign(f.begin(), f.end());
                break;
            }
        }
        if (modulus_.empty()) throw std::logic_error("Field: no irreducible modulus found");
    }
    build_tables();
}

felem Field::poly_add(felem a, felem b) const {
    if (p_ == 2) return a ^ b;
    std::uint32_t r = 0, mult = 1, x = a, y = b;
    for (std::uint32_t i = 0; i < m_; ++i) {
        r += ((x % p_) + (y % p_)) % p_ * mult;
        x /= p_;
        y /= p_;
        mult *= p_;
    }
    return static_cast<felem>(r);
}

felem Field::poly_sub(felem a, felem b) const {
    if (p_ == 2) return a ^ b;
    std::uint32_t r = 0, mult = 1, x = a, y = b;
    for (std::uint32_t i = 0; i < m_; ++i) {
        r += ((x % p_) + p_ - (y % p_)) % p_ * mult;
        x /= p_;
        y /= p_;
        mult *= p_;
    }
    return static_cast<felem>(r);
}

felem Field::poly_mul_mod(felem a, felem b) const {
    if (m_ == 1) return static_cast<felem>(static_cast<std::uint64_t>(a) * b % p_);
    // Schoolbook product of the digit vectors, then reduce by the modulus.
    Poly fa = poly_from_value(a, p_), fb = poly_from_value(b, p_);
    Poly prod(2 * m_, 0);
    for (std::size_t i = 0; i < fa.size(); ++i)
        for (std::size_t j = 0; j < fb.size(); ++j)
            prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(fa[i]) * fb[j]) % p_);
    Poly mod(modulus_.begin(), modulus_.end());
    Poly rem = poly_mod(std::move(prod), mod, p_);
    std::uint64_t v = 0;
    for (int i = degree(rem); i >= 0; --i) v = v * p_ + rem[static_cast<std::size_t>(i)];
    return static_cast<felem>(v);
}

void Field::build_tables() {
    neg_.resize(q_);
    for (std::uint32_t a = 0; a < q_; ++a) neg_[a] = poly_sub(0, static_cast<felem>(a));

    if (m_ > 1) {
        // Discrete log over a multiplicative generator.
        const auto factors = prime_factors(q_ - 1);
        std::uint32_t gen = 0;
        for (std::uint32_t g = 2; g < q_; ++g) {
            bool ok = true;
            for (std::uint32_t pf : factors) {
                // g^((q-1)/pf) by square-and-multiply over poly_mul_mod
                std::uint32_t e = (q_ - 1) / pf;
                felem acc = 1, base = static_cast<felem>(g);
                while (e > 0) {
                    if (e & 1u) acc = poly_mul_mod(acc, base);
                    base = poly_mul_mod(base, base);
                    e >>= 1;
                }
                if (acc == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                gen = g;
                break;
            }
        }
        if (gen == 0) throw std::logic_error("Field: no multiplicative generator found");
        exp_.resize(q_ - 1);
        log_.assign(q_, 0);
        felem cur = 1;
        for (std::uint32_t i = 0; i < q_ - 1; ++i) {
            exp_[i] = cur;
            log_[cur] = static_cast<felem>(i);
            cur = poly_mul_mod(cur, static_cast<felem>(gen));
        }
    }

    inv_.assign(q_, 0);
    for (std::uint32_t a = 1; a < q_; ++a) {
        if (m_ == 1) {
            // a^(p-2) mod p
            std::uint64_t acc = 1, base = a, e = p_ - 2;
            while (e > 0) {
                if (e & 1u) acc = acc * base % p_;
                base = base * base % p_;
                e >>= 1;
            }
            inv_[a] = static_cast<felem>(acc);
        } else {
            inv_[a] = exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
        }
    }

    if (q_ <= kDenseTableLimit) {
        mul_table_.resize(static_cast<std::size_t>(q_) * q_);
        add_table_.resize(static_cast<std::size_t>(q_) * q_);
        for (std::uint32_t a = 0; a < q_; ++a)
            for (std::uint32_t b = 0; b < q_; ++b) {
                mul_table_[static_cast<std::size_t>(a) * q_ + b] = poly_mul_mod(static_cast<felem>(a), static_cast<felem>(b));
                add_table_[static_cast<std::size_t>(a) * q_ + b] = poly_add(static_cast<felem>(a), static_cast<felem>(b));
            }
    }
}

felem Field::add(felem a, felem b) const {
    if (p_ == 2) return a ^ b;
    if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
    if (m_ == 1) return static_cast<felem>((static_cast<std::uint32_t>(a) + b) % p_);
    return poly_add(a, b);
}

felem Field::sub(felem a, felem b) const { return add(a, neg_[b]); }

felem Field::neg(felem a) const { return neg_[a]; }

felem Field::mul(felem a, felem b) const {
    if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(a) * q_ + b];
    if (m_ == 1) return static_cast<felem>(static_cast<std::uint64_t>(a) * b % p_);
    if (a == 0 || b == 0) return 0;
    return exp_[(static_cast<std::uint32_t>(log_[a]) + log_[b]) % (q_ - 1)];
}

felem Field::inv(felem a) const {
    if (a == 0) throw std::domain_error("Field::inv: zero has no inverse");
    return inv_[a];
}

felem Field::pow(felem a, std::uint64_t e) const {
    felem acc = 1, base = a;
    while (e > 0) {
        if (e & 1u) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

}  // namespace ffreduce
