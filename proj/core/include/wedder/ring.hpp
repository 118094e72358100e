#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wedder {

// Elements of a finite ring are integer codes in [0, size()).
using Elem = std::uint64_t;

class RingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Ring {
public:
    virtual ~Ring() = default;
    virtual std::string descriptor() const = 0;
    virtual bool finite() const = 0;
};

class FiniteRing : public Ring {
public:
    bool finite() const override { return true; }

    virtual Elem size() const = 0;
    Elem zero() const { return 0; }
    virtual Elem one() const = 0;
    virtual Elem add(Elem x, Elem y) const = 0;
    virtual Elem neg(Elem x) const = 0;
    virtual Elem sub(Elem x, Elem y) const { return add(x, neg(y)); }
    virtual Elem mul(Elem x, Elem y) const = 0;
    // Two-sided inverse or nothing.
    virtual std::optional<Elem> inverse(Elem x) const = 0;
    virtual bool is_unit(Elem x) const { return inverse(x).has_value(); }
    virtual bool commutative() const = 0;
    virtual bool is_field() const { return false; }
    virtual std::string format(Elem x) const = 0;
    virtual Elem parse(std::string_view text) const = 0;
    // Central units, each exactly once, ascending.
    virtual std::vector<Elem> central_units() const = 0;
    // Closed-form |GL(1,R)| when known.
    virtual std::optional<std::uint64_t> unit_count_formula() const { return std::nullopt; }

    Elem from_int(std::int64_t n) const;
    Elem pow(Elem x, std::uint64_t e) const;
    Elem characteristic() const;

    // Every unit once, ascending. Built on first use, then read-only.
    const std::vector<Elem>& units() const;

protected:
    virtual std::vector<Elem> enumerate_units() const;

private:
    mutable std::once_flag units_once_;
    mutable std::vector<Elem> units_;
};

using FiniteRingPtr = std::shared_ptr<const FiniteRing>;

class GaloisField final : public FiniteRing {
public:
    explicit GaloisField(std::uint64_t q);

    std::string descriptor() const override;
    Elem size() const override { return q_; }
    Elem one() const override { return 1; }
    Elem add(Elem x, Elem y) const override;
    Elem neg(Elem x) const override;
    Elem sub(Elem x, Elem y) const override;
    Elem mul(Elem x, Elem y) const override;
    std::optional<Elem> inverse(Elem x) const override;
    bool is_unit(Elem x) const override { return x != 0; }
    bool commutative() const override { return true; }
    bool is_field() const override { return true; }
    std::string format(Elem x) const override;
    Elem parse(std::string_view text) const override;
    std::vector<Elem> central_units() const override;
    std::optional<std::uint64_t> unit_count_formula() const override { return q_ - 1; }

    std::uint64_t p() const { return p_; }
    unsigned degree() const { return k_; }
    // Coefficients c_0..c_{k-1} of the monic modulus x^k + sum c_i x^i.
    const std::vector<Elem>& modulus() const { return modulus_; }

protected:
    std::vector<Elem> enumerate_units() const override;

private:
    Elem mul_slow(Elem x, Elem y) const;

    std::uint64_t q_;
    std::uint64_t p_;
    unsigned k_;
    std::vector<Elem> modulus_;
    std::vector<std::uint16_t> add_tab_, mul_tab_, inv_tab_;
};

class ZMod final : public FiniteRing {
public:
    explicit ZMod(std::uint64_t m);

    std::string descriptor() const override;
    Elem size() const override { return m_; }
    Elem one() const override { return 1 % m_; }
    Elem add(Elem x, Elem y) const override;
    Elem neg(Elem x) const override;
    Elem mul(Elem x, Elem y) const override;
    std::optional<Elem> inverse(Elem x) const override;
    bool commutative() const override { return true; }
    bool is_field() const override;
    std::string format(Elem x) const override;
    Elem parse(std::string_view text) const override;
    std::vector<Elem> central_units() const override;
    std::optional<std::uint64_t> unit_count_formula() const override;

    std::uint64_t modulus() const { return m_; }

private:
    std::uint64_t m_;
};

class MatrixRing final : public FiniteRing {
public:
    // generic=true disables the packed GF(2) kernel (used for cross-checks).
    MatrixRing(unsigned n, FiniteRingPtr inner, bool generic = false);

    std::string descriptor() const override;
    Elem size() const override { return size_; }
    Elem one() const override { return one_; }
    Elem add(Elem x, Elem y) const override;
    Elem neg(Elem x) const override;
    Elem sub(Elem x, Elem y) const override;
    Elem mul(Elem x, Elem y) const override;
    std::optional<Elem> inverse(Elem x) const override;
    bool is_unit(Elem x) const override;
    bool commutative() const override { return n_ == 1 && inner_->commutative(); }
    std::string format(Elem x) const override;
    Elem parse(std::string_view text) const override;
    std::vector<Elem> central_units() const override;
    std::optional<std::uint64_t> unit_count_formula() const override;

    unsigned n() const { return n_; }
    const FiniteRing& inner() const { return *inner_; }
    const FiniteRingPtr& inner_ptr() const { return inner_; }
    bool packed_gf2() const { return packed_; }

    Elem entry(Elem x, unsigned i, unsigned j) const;
    Elem with_entry(Elem x, unsigned i, unsigned j, Elem v) const;
    std::vector<Elem> entries(Elem x) const;
    Elem from_entries(const std::vector<Elem>& e) const;
    Elem scalar(Elem lambda) const;
    Elem unit_matrix(unsigned i, unsigned j) const;  // E_ij
    Elem transpose(Elem x) const;

    // Field inner ring only.
    unsigned rank(Elem x) const;
    // Commutative inner ring only.
    Elem det(Elem x) const;

protected:
    std::vector<Elem> enumerate_units() const override;

private:
    std::optional<Elem> inverse_field(Elem x) const;
    std::optional<Elem> inverse_adjugate(Elem x) const;

    unsigned n_;
    FiniteRingPtr inner_;
    bool packed_;
    Elem radix_;
    Elem size_;
    Elem one_;
    std::vector<Elem> place_;  // radix^(i*n+j)
};

class ProductRing final : public FiniteRing {
public:
    explicit ProductRing(std::vector<FiniteRingPtr> factors);

    std::string descriptor() const override;
    Elem size() const override { return size_; }
    Elem one() const override { return one_; }
    Elem add(Elem x, Elem y) const override;
    Elem neg(Elem x) const override;
    Elem mul(Elem x, Elem y) const override;
    std::optional<Elem> inverse(Elem x) const override;
    bool is_unit(Elem x) const override;
    bool commutative() const override;
    std::string format(Elem x) const override;
    Elem parse(std::string_view text) const override;
    std::vector<Elem> central_units() const override;
    std::optional<std::uint64_t> unit_count_formula() const override;

    const std::vector<FiniteRingPtr>& factors() const { return factors_; }
    std::vector<Elem> split(Elem x) const;
    Elem join(const std::vector<Elem>& parts) const;

protected:
    std::vector<Elem> enumerate_units() const override;

private:
    std::vector<FiniteRingPtr> factors_;
    std::vector<Elem> place_;
    Elem size_;
    Elem one_;
};

// Parses the canonical grammar: gf(q) | zmod(m) | mat(n,R) | prod(R,...) | free(x,...).
std::shared_ptr<const Ring> make_ring(std::string_view descriptor);
FiniteRingPtr make_finite_ring(std::string_view descriptor);

// Splits "a,b,[c,d]" at top-level commas.
std::vector<std::string> split_top_level(std::string_view text, char sep = ',');

bool is_prime(std::uint64_t n);
// p^k = q with p prime, or nothing.
std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q);

}  // namespace wedder
