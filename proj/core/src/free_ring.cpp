#include "wedder/free_ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace wedder {

FreePoly FreePoly::constant(const BigInt& c) {
    FreePoly p;
    if (c != 0) p.terms_.emplace(Word{}, c);
    return p;
}

FreePoly FreePoly::variable(std::uint16_t v) { return monomial(Word{v}); }

FreePoly FreePoly::monomial(Word w, const BigInt& c) {
    FreePoly p;
    if (c != 0) p.terms_.emplace(std::move(w), c);
    return p;
}

BigInt FreePoly::coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? BigInt(0) : it->second;
}

void FreePoly::accumulate(const Word& w, const BigInt& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

FreePoly& FreePoly::operator+=(const FreePoly& o) {
    for (const auto& [w, c] : o.terms_) accumulate(w, c);
    return *this;
}

FreePoly& FreePoly::operator-=(const FreePoly& o) {
    for (const auto& [w, c] : o.terms_) accumulate(w, -c);
    return *this;
}

FreePoly FreePoly::operator+(const FreePoly& o) const {
    FreePoly r = *this;
    r += o;
    return r;
}

FreePoly FreePoly::operator-(const FreePoly& o) const {
    FreePoly r = *this;
    r -= o;
    return r;
}

FreePoly FreePoly::operator-() const {
    FreePoly r;
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
    return r;
}

FreePoly FreePoly::operator*(const FreePoly& o) const {
    FreePoly r;
    Word w;
    for (const auto& [w1, c1] : terms_) {
        for (const auto& [w2, c2] : o.terms_) {
            w.assign(w1.begin(), w1.end());
            w.insert(w.end(), w2.begin(), w2.end());
            r.accumulate(w, c1 * c2);
        }
    }
    return r;
}

FreePoly FreePoly::reversed() const {
    FreePoly r;
    for (const auto& [w, c] : terms_) {
        Word rw(w.rbegin(), w.rend());
        r.accumulate(rw, c);
    }
    return r;
}

FreeRing::FreeRing(std::vector<std::string> vars) : vars_(std::move(vars)) {
    if (vars_.empty()) throw RingError("free ring needs at least one variable");
    if (vars_.size() > 65535) throw RingError("too many free variables");
    for (const auto& v : vars_) {
        if (v.empty() || !std::isalpha(static_cast<unsigned char>(v[0])))
            throw RingError("free variable names must start with a letter: '" + v + "'");
        for (char ch : v)
            if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_')
                throw RingError("bad free variable name '" + v + "'");
    }
    auto sorted = vars_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw RingError("duplicate free variable");
}

std::shared_ptr<const FreeRing> FreeRing::indexed(unsigned k, const std::string& stem) {
    std::vector<std::string> vars;
    for (unsigned i = 1; i <= std::max(1u, k); ++i) vars.push_back(stem + std::to_string(i));
    return std::make_shared<FreeRing>(std::move(vars));
}

std::string FreeRing::descriptor() const {
    std::string s = "free(";
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (i) s += ',';
        s += vars_[i];
    }
    return s + ")";
}

FreePoly FreeRing::var(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return FreePoly::variable(static_cast<std::uint16_t>(i));
    throw RingError("unknown free variable '" + std::string(name) + "'");
}

std::string FreeRing::format_word(const Word& w) const {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += '*';
        s += vars_.at(w[i]);
    }
    return s;
}

std::string FreeRing::format(const FreePoly& p) const {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : p.terms()) {
        BigInt mag = c < 0 ? BigInt(-c) : c;
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (w.empty()) {
            os << mag;
        } else {
            if (mag != 1) os << mag << '*';
            os << format_word(w);
        }
    }
    return os.str();
}

FreePoly FreeRing::parse(std::string_view text) const {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw RingError("empty free-ring expression");
    FreePoly out;
    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sign = -sign;
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string term = s.substr(i, j - i);
        if (term.empty()) throw RingError("malformed free-ring expression '" + std::string(text) + "'");
        BigInt coeff = sign;
        Word w;
        std::size_t a = 0;
        while (a <= term.size()) {
            std::size_t b = term.find('*', a);
            if (b == std::string::npos) b = term.size();
            std::string factor = term.substr(a, b - a);
            if (factor.empty()) throw RingError("malformed term '" + term + "'");
            if (std::all_of(factor.begin(), factor.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
                coeff *= BigInt(factor);
            } else {
                auto v = var(factor);
                w.push_back(v.terms().begin()->first.front());
            }
            a = b + 1;
        }
        out += FreePoly::monomial(w, coeff);
        i = j;
    }
    return out;
}

std::vector<std::pair<Word, BigInt>> free_words(const FreePoly& p) {
    return {p.terms().begin(), p.terms().end()};
}

}  // namespace wedder
