#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wedder/ring.hpp"

namespace wedder {

using BigInt = boost::multiprecision::cpp_int;
using Word = std::vector<std::uint16_t>;

// Shorter words first, then lexicographic.
struct LengthLex {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

// Integer combination of words; no stored coefficient is zero.
class FreePoly {
public:
    using Terms = std::map<Word, BigInt, LengthLex>;

    FreePoly() = default;
    static FreePoly constant(const BigInt& c);
    static FreePoly variable(std::uint16_t v);
    static FreePoly monomial(Word w, const BigInt& c = 1);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    // Coefficient of w (zero if absent).
    BigInt coefficient(const Word& w) const;

    FreePoly operator+(const FreePoly& o) const;
    FreePoly operator-(const FreePoly& o) const;
    FreePoly operator-() const;
    FreePoly operator*(const FreePoly& o) const;
    FreePoly& operator+=(const FreePoly& o);
    FreePoly& operator-=(const FreePoly& o);
    bool operator==(const FreePoly& o) const { return terms_ == o.terms_; }

    // Words with reversed letters (the opposite ring).
    FreePoly reversed() const;

private:
    void accumulate(const Word& w, const BigInt& c);
    Terms terms_;
};

class FreeRing final : public Ring {
public:
    explicit FreeRing(std::vector<std::string> vars);
    // Variables a1..ak.
    static std::shared_ptr<const FreeRing> indexed(unsigned k, const std::string& stem = "a");

    std::string descriptor() const override;
    bool finite() const override { return false; }

    const std::vector<std::string>& variables() const { return vars_; }
    FreePoly var(std::string_view name) const;
    FreePoly var(unsigned index) const { return FreePoly::variable(static_cast<std::uint16_t>(index)); }

    std::string format(const FreePoly& p) const;
    std::string format_word(const Word& w) const;
    // Accepts sums of signed terms like "2*a*b - c + 1".
    FreePoly parse(std::string_view text) const;

private:
    std::vector<std::string> vars_;
};

// Deterministic length-lex list of (word, coefficient).
std::vector<std::pair<Word, BigInt>> free_words(const FreePoly& p);

}  // namespace wedder
