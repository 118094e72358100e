#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "wedder/free_ring.hpp"
#include "wedder/gf2.hpp"
#include "wedder/ring.hpp"

namespace wedder {

namespace {

using u128 = unsigned __int128;

constexpr Elem kMaxSize = Elem(1) << 62;
constexpr Elem kEnumerateLimit = Elem(1) << 27;

Elem checked_mul(Elem a, Elem b) {
    u128 r = u128(a) * b;
    if (r > kMaxSize) throw RingError("ring too large for 64-bit element codes");
    return static_cast<Elem>(r);
}

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

std::int64_t parse_int(std::string_view text) {
    std::string t = trim(text);
    if (t.empty()) throw RingError("expected an integer");
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(t, &pos);
    } catch (const std::exception&) {
        throw RingError("expected an integer, got '" + t + "'");
    }
    if (pos != t.size()) throw RingError("expected an integer, got '" + t + "'");
    return v;
}

// Polynomials over Z/p as coefficient vectors, low degree first.
using Poly = std::vector<std::uint64_t>;

void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (r != 1) return 0;
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(p) : t);
}

Poly poly_mod(Poly a, const Poly& m, std::uint64_t p) {
    poly_trim(a);
    const std::size_t dm = m.size() - 1;
    std::uint64_t lead_inv = inv_mod(m.back(), p);
    while (a.size() > dm) {
        std::uint64_t c = a.back() * lead_inv % p;
        std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + p - c * m[i] % p) % p;
        poly_trim(a);
    }
    return a;
}

bool poly_irreducible(const Poly& f, std::uint64_t p) {
    const unsigned deg = static_cast<unsigned>(f.size() - 1);
    for (unsigned d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < d; ++i) count *= p;
        for (std::uint64_t c = 0; c < count; ++c) {
            Poly g(d + 1, 0);
            std::uint64_t x = c;
            for (unsigned i = 0; i < d; ++i) {
                g[i] = x % p;
                x /= p;
            }
            g[d] = 1;
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) r = checked_mul(r, b);
    return r;
}

std::vector<std::uint64_t> factorize(std::uint64_t m) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            ps.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) ps.push_back(m);
    return ps;
}

std::string cache_path(const std::string& descriptor) {
    const char* dir = std::getenv("WEDDER_UNIT_CACHE");
    if (!dir || !*dir) return {};
    std::string name;
    for (char ch : descriptor) name += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
    return (std::filesystem::path(dir) / (name + ".units")).string();
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q) {
    if (q < 2) return std::nullopt;
    auto ps = factorize(q);
    if (ps.size() != 1) return std::nullopt;
    unsigned k = 0;
    while (q > 1) {
        q /= ps[0];
        ++k;
    }
    return std::make_pair(ps[0], k);
}

std::vector<std::string> split_top_level(std::string_view text, char sep) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char ch : text) {
        if (ch == '(' || ch == '[') ++depth;
        if (ch == ')' || ch == ']') --depth;
        if (depth < 0) throw RingError("unbalanced brackets in '" + std::string(text) + "'");
        if (ch == sep && depth == 0) {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (depth != 0) throw RingError("unbalanced brackets in '" + std::string(text) + "'");
    parts.push_back(trim(cur));
    return parts;
}

// ---------------------------------------------------------------- FiniteRing

Elem FiniteRing::from_int(std::int64_t n) const {
    bool negative = n < 0;
    std::uint64_t m = negative ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
    Elem acc = zero(), base = one();
    while (m) {
        if (m & 1u) acc = add(acc, base);
        base = add(base, base);
        m >>= 1;
    }
    return negative ? neg(acc) : acc;
}

Elem FiniteRing::pow(Elem x, std::uint64_t e) const {
    Elem r = one();
    while (e) {
        if (e & 1u) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

Elem FiniteRing::characteristic() const {
    Elem acc = one();
    for (Elem c = 1; c <= size(); ++c) {
        if (acc == zero()) return c;
        acc = add(acc, one());
    }
    throw RingError("characteristic not found");
}

std::vector<Elem> FiniteRing::enumerate_units() const {
    if (size() > kEnumerateLimit) throw RingError("ring " + descriptor() + " too large to enumerate units");
    std::vector<Elem> out;
    for (Elem x = 0; x < size(); ++x)
        if (is_unit(x)) out.push_back(x);
    return out;
}

const std::vector<Elem>& FiniteRing::units() const {
    std::call_once(units_once_, [this] {
        const std::string path = cache_path(descriptor());
        if (!path.empty()) {
            std::ifstream in(path, std::ios::binary);
            if (in) {
                std::uint64_t count = 0;
                in.read(reinterpret_cast<char*>(&count), sizeof count);
                std::vector<Elem> cached(count);
                in.read(reinterpret_cast<char*>(cached.data()), static_cast<std::streamsize>(count * sizeof(Elem)));
                if (in && std::all_of(cached.begin(), cached.end(), [this](Elem u) { return u < size(); })) {
                    units_ = std::move(cached);
                    return;
                }
            }
        }
        units_ = enumerate_units();
        if (!path.empty() && units_.size() <= 20'000'000) {
            std::filesystem::create_directories(std::filesystem::path(path).parent_path());
            std::ofstream out(path, std::ios::binary);
            std::uint64_t count = units_.size();
            out.write(reinterpret_cast<const char*>(&count), sizeof count);
            out.write(reinterpret_cast<const char*>(units_.data()), static_cast<std::streamsize>(count * sizeof(Elem)));
        }
    });
    return units_;
}

// ---------------------------------------------------------------- GaloisField

GaloisField::GaloisField(std::uint64_t q) : q_(q) {
    auto pp = prime_power(q);
    if (!pp) throw RingError("gf(" + std::to_string(q) + "): order is not a prime power");
    if (q > (1ull << 31)) throw RingError("gf(q) limited to q < 2^31");
    p_ = pp->first;
    k_ = pp->second;
    if (k_ > 1) {
        // Smallest base-p value of the non-leading coefficients.
        const std::uint64_t count = q_;
        for (std::uint64_t c = 0; c < count; ++c) {
            Poly f(k_ + 1, 0);
            std::uint64_t x = c;
            for (unsigned i = 0; i < k_; ++i) {
                f[i] = x % p_;
                x /= p_;
            }
            f[k_] = 1;
            if (f[0] != 0 && poly_irreducible(f, p_)) {
                modulus_.assign(f.begin(), f.begin() + k_);
                break;
            }
        }
        if (modulus_.empty()) throw RingError("no irreducible modulus found");
    }
    if (q_ <= 256) {
        add_tab_.resize(q_ * q_);
        mul_tab_.resize(q_ * q_);
        inv_tab_.assign(q_, 0);
        for (Elem x = 0; x < q_; ++x) {
            for (Elem y = 0; y < q_; ++y) {
                Elem s = 0, place = 1, a = x, b = y;
                for (unsigned i = 0; i < k_; ++i) {
                    s += ((a % p_ + b % p_) % p_) * place;
                    a /= p_;
                    b /= p_;
                    place *= p_;
                }
                add_tab_[x * q_ + y] = static_cast<std::uint16_t>(s);
                Elem m = mul_slow(x, y);
                mul_tab_[x * q_ + y] = static_cast<std::uint16_t>(m);
                if (m == 1) inv_tab_[x] = static_cast<std::uint16_t>(y);
            }
        }
    }
}

std::string GaloisField::descriptor() const { return "gf(" + std::to_string(q_) + ")"; }

Elem GaloisField::add(Elem x, Elem y) const {
    if (!add_tab_.empty()) return add_tab_[x * q_ + y];
    if (k_ == 1) return (x + y) % p_;
    Elem s = 0, place = 1;
    for (unsigned i = 0; i < k_; ++i) {
        s += ((x % p_ + y % p_) % p_) * place;
        x /= p_;
        y /= p_;
        place *= p_;
    }
    return s;
}

Elem GaloisField::neg(Elem x) const {
    if (k_ == 1) return x == 0 ? 0 : p_ - x;
    Elem s = 0, place = 1;
    for (unsigned i = 0; i < k_; ++i) {
        Elem d = x % p_;
        s += ((p_ - d) % p_) * place;
        x /= p_;
        place *= p_;
    }
    return s;
}

Elem GaloisField::sub(Elem x, Elem y) const { return add(x, neg(y)); }

Elem GaloisField::mul_slow(Elem x, Elem y) const {
    if (k_ == 1) return static_cast<Elem>(u128(x) * y % p_);
    Poly a(k_, 0), b(k_, 0);
    for (unsigned i = 0; i < k_; ++i) {
        a[i] = x % p_;
        x /= p_;
        b[i] = y % p_;
        y /= p_;
    }
    Poly c(2 * k_, 0);
    for (unsigned i = 0; i < k_; ++i)
        for (unsigned j = 0; j < k_; ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p_;
    Poly m(modulus_.begin(), modulus_.end());
    m.push_back(1);
    Poly r = poly_mod(c, m, p_);
    Elem out = 0, place = 1;
    for (std::size_t i = 0; i < r.size(); ++i) {
        out += r[i] * place;
        place *= p_;
    }
    return out;
}

Elem GaloisField::mul(Elem x, Elem y) const {
    if (!mul_tab_.empty()) return mul_tab_[x * q_ + y];
    return mul_slow(x, y);
}

std::optional<Elem> GaloisField::inverse(Elem x) const {
    if (x == 0) return std::nullopt;
    if (!inv_tab_.empty()) return inv_tab_[x];
    if (k_ == 1) return inv_mod(x, p_);
    return pow(x, q_ - 2);
}

std::string GaloisField::format(Elem x) const { return std::to_string(x); }

Elem GaloisField::parse(std::string_view text) const {
    std::int64_t v = parse_int(text);
    if (v < 0) {
        if (k_ != 1 && -v >= static_cast<std::int64_t>(p_)) throw RingError("negative literal out of range for " + descriptor());
        return from_int(v);
    }
    if (static_cast<std::uint64_t>(v) >= q_) throw RingError("literal out of range for " + descriptor());
    return static_cast<Elem>(v);
}

std::vector<Elem> GaloisField::central_units() const { return units(); }

std::vector<Elem> GaloisField::enumerate_units() const {
    std::vector<Elem> out;
    for (Elem x = 1; x < q_; ++x) out.push_back(x);
    return out;
}

// ---------------------------------------------------------------- ZMod

ZMod::ZMod(std::uint64_t m) : m_(m) {
    if (m < 2) throw RingError("zmod(m) requires m >= 2");
    if (m > kMaxSize) throw RingError("zmod modulus too large");
}

std::string ZMod::descriptor() const { return "zmod(" + std::to_string(m_) + ")"; }
Elem ZMod::add(Elem x, Elem y) const { return (x + y) % m_; }
Elem ZMod::neg(Elem x) const { return x == 0 ? 0 : m_ - x; }
Elem ZMod::mul(Elem x, Elem y) const { return static_cast<Elem>(u128(x) * y % m_); }

std::optional<Elem> ZMod::inverse(Elem x) const {
    if (std::gcd(x, m_) != 1) return std::nullopt;
    return inv_mod(x, m_);
}

bool ZMod::is_field() const { return is_prime(m_); }
std::string ZMod::format(Elem x) const { return std::to_string(x); }

Elem ZMod::parse(std::string_view text) const {
    std::int64_t v = parse_int(text);
    std::int64_t m = static_cast<std::int64_t>(m_);
    return static_cast<Elem>(((v % m) + m) % m);
}

std::vector<Elem> ZMod::central_units() const { return units(); }

std::optional<std::uint64_t> ZMod::unit_count_formula() const {
    std::uint64_t phi = m_;
    for (auto p : factorize(m_)) phi = phi / p * (p - 1);
    return phi;
}

// ---------------------------------------------------------------- MatrixRing

MatrixRing::MatrixRing(unsigned n, FiniteRingPtr inner, bool generic) : n_(n), inner_(std::move(inner)) {
    if (n_ == 0) throw RingError("mat(n,R) requires n >= 1");
    radix_ = inner_->size();
    size_ = 1;
    place_.resize(std::size_t(n_) * n_);
    for (std::size_t i = 0; i < place_.size(); ++i) {
        place_[i] = size_;
        size_ = checked_mul(size_, radix_);
    }
    auto* gf = dynamic_cast<const GaloisField*>(inner_.get());
    packed_ = !generic && gf && gf->size() == 2 && n_ <= gf2::kMaxCodeDim;
    one_ = 0;
    for (unsigned i = 0; i < n_; ++i) one_ += inner_->one() * place_[i * n_ + i];
}

std::string MatrixRing::descriptor() const {
    return "mat(" + std::to_string(n_) + "," + inner_->descriptor() + ")";
}

Elem MatrixRing::entry(Elem x, unsigned i, unsigned j) const { return (x / place_[i * n_ + j]) % radix_; }

Elem MatrixRing::with_entry(Elem x, unsigned i, unsigned j, Elem v) const {
    Elem old = entry(x, i, j);
    return x - old * place_[i * n_ + j] + v * place_[i * n_ + j];
}

std::vector<Elem> MatrixRing::entries(Elem x) const {
    std::vector<Elem> e(place_.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] = x % radix_;
        x /= radix_;
    }
    return e;
}

Elem MatrixRing::from_entries(const std::vector<Elem>& e) const {
    if (e.size() != place_.size()) throw RingError("wrong number of matrix entries");
    Elem x = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] >= radix_) throw RingError("matrix entry out of range");
        x += e[i] * place_[i];
    }
    return x;
}

Elem MatrixRing::add(Elem x, Elem y) const {
    if (packed_) return x ^ y;
    auto a = entries(x), b = entries(y);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = inner_->add(a[i], b[i]);
    return from_entries(a);
}

Elem MatrixRing::neg(Elem x) const {
    if (packed_) return x;
    auto a = entries(x);
    for (auto& v : a) v = inner_->neg(v);
    return from_entries(a);
}

Elem MatrixRing::sub(Elem x, Elem y) const {
    if (packed_) return x ^ y;
    auto a = entries(x), b = entries(y);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = inner_->sub(a[i], b[i]);
    return from_entries(a);
}

Elem MatrixRing::mul(Elem x, Elem y) const {
    if (packed_) return gf2::mul(x, y, n_);
    auto a = entries(x), b = entries(y);
    std::vector<Elem> c(a.size(), inner_->zero());
    for (unsigned i = 0; i < n_; ++i)
        for (unsigned k = 0; k < n_; ++k) {
            Elem aik = a[i * n_ + k];
            if (aik == inner_->zero()) continue;
            for (unsigned j = 0; j < n_; ++j)
                c[i * n_ + j] = inner_->add(c[i * n_ + j], inner_->mul(aik, b[k * n_ + j]));
        }
    return from_entries(c);
}

std::optional<Elem> MatrixRing::inverse_field(Elem x) const {
    const FiniteRing& F = *inner_;
    auto a = entries(x);
    std::vector<Elem> inv(a.size(), F.zero());
    for (unsigned i = 0; i < n_; ++i) inv[i * n_ + i] = F.one();
    for (unsigned col = 0; col < n_; ++col) {
        unsigned piv = col;
        while (piv < n_ && a[piv * n_ + col] == F.zero()) ++piv;
        if (piv == n_) return std::nullopt;
        if (piv != col)
            for (unsigned j = 0; j < n_; ++j) {
                std::swap(a[piv * n_ + j], a[col * n_ + j]);
                std::swap(inv[piv * n_ + j], inv[col * n_ + j]);
            }
        Elem pinv = *F.inverse(a[col * n_ + col]);
        for (unsigned j = 0; j < n_; ++j) {
            a[col * n_ + j] = F.mul(pinv, a[col * n_ + j]);
            inv[col * n_ + j] = F.mul(pinv, inv[col * n_ + j]);
        }
        for (unsigned i = 0; i < n_; ++i) {
            if (i == col) continue;
            Elem f = a[i * n_ + col];
            if (f == F.zero()) continue;
            for (unsigned j = 0; j < n_; ++j) {
                a[i * n_ + j] = F.sub(a[i * n_ + j], F.mul(f, a[col * n_ + j]));
                inv[i * n_ + j] = F.sub(inv[i * n_ + j], F.mul(f, inv[col * n_ + j]));
            }
        }
    }
    return from_entries(inv);
}

namespace {

// Laplace expansion over a commutative ring.
Elem det_laplace(const FiniteRing& R, const std::vector<Elem>& a, unsigned n) {
    if (n == 1) return a[0];
    if (n == 2) return R.sub(R.mul(a[0], a[3]), R.mul(a[1], a[2]));
    Elem acc = R.zero();
    std::vector<Elem> minor((n - 1) * (n - 1));
    for (unsigned c = 0; c < n; ++c) {
        if (a[c] == R.zero()) continue;
        for (unsigned i = 1; i < n; ++i) {
            unsigned mj = 0;
            for (unsigned j = 0; j < n; ++j) {
                if (j == c) continue;
                minor[(i - 1) * (n - 1) + mj++] = a[i * n + j];
            }
        }
        Elem term = R.mul(a[c], det_laplace(R, minor, n - 1));
        acc = (c % 2 == 0) ? R.add(acc, term) : R.sub(acc, term);
    }
    return acc;
}

}  // namespace

std::optional<Elem> MatrixRing::inverse_adjugate(Elem x) const {
    const FiniteRing& R = *inner_;
    auto a = entries(x);
    Elem d = det_laplace(R, a, n_);
    auto dinv = R.inverse(d);
    if (!dinv) return std::nullopt;
    if (n_ == 1) return from_entries({*dinv});
    std::vector<Elem> inv(a.size());
    std::vector<Elem> minor((n_ - 1) * (n_ - 1));
    for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j) {
            unsigned mi = 0;
            for (unsigned r = 0; r < n_; ++r) {
                if (r == i) continue;
                unsigned mj = 0;
                for (unsigned c = 0; c < n_; ++c) {
                    if (c == j) continue;
                    minor[mi * (n_ - 1) + mj++] = a[r * n_ + c];
                }
                ++mi;
            }
            Elem cof = det_laplace(R, minor, n_ - 1);
            if ((i + j) % 2) cof = R.neg(cof);
            inv[j * n_ + i] = R.mul(cof, *dinv);
        }
    return from_entries(inv);
}

std::optional<Elem> MatrixRing::inverse(Elem x) const {
    if (packed_) return gf2::inverse(x, n_);
    if (inner_->is_field()) return inverse_field(x);
    if (inner_->commutative()) return inverse_adjugate(x);
    throw RingError("invertibility over non-commutative inner ring " + inner_->descriptor() + " is not implemented");
}

bool MatrixRing::is_unit(Elem x) const {
    if (packed_) return gf2::invertible(x, n_);
    if (inner_->is_field()) return rank(x) == n_;
    return inverse(x).has_value();
}

unsigned MatrixRing::rank(Elem x) const {
    if (packed_) return gf2::rank(x, n_);
    if (!inner_->is_field()) throw RingError("rank over non-field inner ring " + inner_->descriptor());
    const FiniteRing& F = *inner_;
    auto a = entries(x);
    unsigned rk = 0;
    for (unsigned col = 0; col < n_ && rk < n_; ++col) {
        unsigned piv = rk;
        while (piv < n_ && a[piv * n_ + col] == F.zero()) ++piv;
        if (piv == n_) continue;
        for (unsigned j = 0; j < n_; ++j) std::swap(a[piv * n_ + j], a[rk * n_ + j]);
        Elem pinv = *F.inverse(a[rk * n_ + col]);
        for (unsigned i = rk + 1; i < n_; ++i) {
            Elem f = F.mul(a[i * n_ + col], pinv);
            if (f == F.zero()) continue;
            for (unsigned j = 0; j < n_; ++j) a[i * n_ + j] = F.sub(a[i * n_ + j], F.mul(f, a[rk * n_ + j]));
        }
        ++rk;
    }
    return rk;
}

Elem MatrixRing::det(Elem x) const {
    if (!inner_->commutative()) throw RingError("determinant needs a commutative inner ring");
    const FiniteRing& F = *inner_;
    auto a = entries(x);
    if (!F.is_field()) return det_laplace(F, a, n_);
    Elem d = F.one();
    for (unsigned col = 0; col < n_; ++col) {
        unsigned piv = col;
        while (piv < n_ && a[piv * n_ + col] == F.zero()) ++piv;
        if (piv == n_) return F.zero();
        if (piv != col) {
            for (unsigned j = 0; j < n_; ++j) std::swap(a[piv * n_ + j], a[col * n_ + j]);
            d = F.neg(d);
        }
        d = F.mul(d, a[col * n_ + col]);
        Elem pinv = *F.inverse(a[col * n_ + col]);
        for (unsigned i = col + 1; i < n_; ++i) {
            Elem f = F.mul(a[i * n_ + col], pinv);
            if (f == F.zero()) continue;
            for (unsigned j = col; j < n_; ++j) a[i * n_ + j] = F.sub(a[i * n_ + j], F.mul(f, a[col * n_ + j]));
        }
    }
    return d;
}

Elem MatrixRing::scalar(Elem lambda) const {
    Elem x = 0;
    for (unsigned i = 0; i < n_; ++i) x += lambda * place_[i * n_ + i];
    return x;
}

Elem MatrixRing::unit_matrix(unsigned i, unsigned j) const { return inner_->one() * place_[i * n_ + j]; }

Elem MatrixRing::transpose(Elem x) const {
    if (packed_) return gf2::transpose(x, n_);
    auto a = entries(x);
    std::vector<Elem> t(a.size());
    for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j) t[j * n_ + i] = a[i * n_ + j];
    return from_entries(t);
}

std::string MatrixRing::format(Elem x) const {
    auto a = entries(x);
    std::string s = "[";
    for (unsigned i = 0; i < n_; ++i) {
        if (i) s += ',';
        s += '[';
        for (unsigned j = 0; j < n_; ++j) {
            if (j) s += ',';
            s += inner_->format(a[i * n_ + j]);
        }
        s += ']';
    }
    return s + "]";
}

Elem MatrixRing::parse(std::string_view text) const {
    std::string t = trim(text);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']') throw RingError("matrix literal must look like [[..],[..]]");
    auto rows = split_top_level(std::string_view(t).substr(1, t.size() - 2));
    if (rows.size() != n_) throw RingError("matrix literal has wrong number of rows for " + descriptor());
    std::vector<Elem> e;
    for (const auto& r : rows) {
        if (r.size() < 2 || r.front() != '[' || r.back() != ']') throw RingError("matrix row must be bracketed");
        auto cells = split_top_level(std::string_view(r).substr(1, r.size() - 2));
        if (cells.size() != n_) throw RingError("matrix row has wrong length for " + descriptor());
        for (const auto& c : cells) e.push_back(inner_->parse(c));
    }
    return from_entries(e);
}

std::vector<Elem> MatrixRing::central_units() const {
    std::vector<Elem> out;
    for (Elem z : inner_->central_units()) out.push_back(scalar(z));
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::uint64_t> MatrixRing::unit_count_formula() const {
    auto gl = [this](std::uint64_t q) -> std::optional<std::uint64_t> {
        u128 total = 1;
        u128 qn = 1;
        for (unsigned i = 0; i < n_; ++i) qn *= q;
        u128 qi = 1;
        for (unsigned i = 0; i < n_; ++i) {
            total *= (qn - qi);
            qi *= q;
            if (total > kMaxSize) return std::nullopt;
        }
        return static_cast<std::uint64_t>(total);
    };
    if (inner_->is_field()) return gl(inner_->size());
    if (auto* zm = dynamic_cast<const ZMod*>(inner_.get())) {
        // |GL(n, Z/p^k)| = p^{(k-1)n^2} |GL(n, F_p)|, multiplied over p^k || m.
        std::uint64_t m = zm->modulus();
        u128 total = 1;
        for (auto p : factorize(m)) {
            unsigned k = 0;
            while (m % p == 0) {
                m /= p;
                ++k;
            }
            auto base = gl(p);
            if (!base) return std::nullopt;
            total *= *base;
            for (unsigned i = 0; i < (k - 1) * n_ * n_; ++i) {
                total *= p;
                if (total > kMaxSize) return std::nullopt;
            }
        }
        return static_cast<std::uint64_t>(total);
    }
    return std::nullopt;
}

std::vector<Elem> MatrixRing::enumerate_units() const {
    if (packed_ && n_ <= 5) {
        std::vector<Elem> out;
        const Elem total = size_;
        for (Elem c = 0; c < total; ++c)
            if (gf2::invertible(c, n_)) out.push_back(c);
        return out;
    }
    return FiniteRing::enumerate_units();
}

// ---------------------------------------------------------------- ProductRing

ProductRing::ProductRing(std::vector<FiniteRingPtr> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw RingError("prod(...) needs at least one factor");
    size_ = 1;
    for (const auto& f : factors_) {
        place_.push_back(size_);
        size_ = checked_mul(size_, f->size());
    }
    std::vector<Elem> ones;
    for (const auto& f : factors_) ones.push_back(f->one());
    one_ = join(ones);
}

std::string ProductRing::descriptor() const {
    std::string s = "prod(";
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += ',';
        s += factors_[i]->descriptor();
    }
    return s + ")";
}

std::vector<Elem> ProductRing::split(Elem x) const {
    std::vector<Elem> parts(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        parts[i] = x % factors_[i]->size();
        x /= factors_[i]->size();
    }
    return parts;
}

Elem ProductRing::join(const std::vector<Elem>& parts) const {
    Elem x = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) x += parts[i] * place_[i];
    return x;
}

Elem ProductRing::add(Elem x, Elem y) const {
    auto a = split(x), b = split(y);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = factors_[i]->add(a[i], b[i]);
    return join(a);
}

Elem ProductRing::neg(Elem x) const {
    auto a = split(x);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = factors_[i]->neg(a[i]);
    return join(a);
}

Elem ProductRing::mul(Elem x, Elem y) const {
    auto a = split(x), b = split(y);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = factors_[i]->mul(a[i], b[i]);
    return join(a);
}

std::optional<Elem> ProductRing::inverse(Elem x) const {
    auto a = split(x);
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto inv = factors_[i]->inverse(a[i]);
        if (!inv) return std::nullopt;
        a[i] = *inv;
    }
    return join(a);
}

bool ProductRing::is_unit(Elem x) const {
    auto a = split(x);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!factors_[i]->is_unit(a[i])) return false;
    return true;
}

bool ProductRing::commutative() const {
    return std::all_of(factors_.begin(), factors_.end(), [](const auto& f) { return f->commutative(); });
}

std::string ProductRing::format(Elem x) const {
    auto a = split(x);
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ',';
        s += factors_[i]->format(a[i]);
    }
    return s + ")";
}

Elem ProductRing::parse(std::string_view text) const {
    std::string t = trim(text);
    if (t.size() < 2 || t.front() != '(' || t.back() != ')') throw RingError("product literal must look like (x,y,...)");
    auto cells = split_top_level(std::string_view(t).substr(1, t.size() - 2));
    if (cells.size() != factors_.size()) throw RingError("product literal has wrong arity for " + descriptor());
    std::vector<Elem> a;
    for (std::size_t i = 0; i < cells.size(); ++i) a.push_back(factors_[i]->parse(cells[i]));
    return join(a);
}

namespace {

std::vector<Elem> cartesian(const ProductRing& R, const std::vector<std::vector<Elem>>& lists) {
    std::vector<Elem> out;
    std::vector<std::size_t> idx(lists.size(), 0);
    for (const auto& l : lists)
        if (l.empty()) return out;
    while (true) {
        std::vector<Elem> parts(lists.size());
        for (std::size_t i = 0; i < lists.size(); ++i) parts[i] = lists[i][idx[i]];
        out.push_back(R.join(parts));
        std::size_t i = 0;
        while (i < lists.size() && ++idx[i] == lists[i].size()) idx[i++] = 0;
        if (i == lists.size()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<Elem> ProductRing::central_units() const {
    std::vector<std::vector<Elem>> lists;
    for (const auto& f : factors_) lists.push_back(f->central_units());
    return cartesian(*this, lists);
}

std::vector<Elem> ProductRing::enumerate_units() const {
    std::vector<std::vector<Elem>> lists;
    for (const auto& f : factors_) lists.push_back(f->units());
    return cartesian(*this, lists);
}

std::optional<std::uint64_t> ProductRing::unit_count_formula() const {
    u128 total = 1;
    for (const auto& f : factors_) {
        auto c = f->unit_count_formula();
        if (!c) return std::nullopt;
        total *= *c;
        if (total > kMaxSize) return std::nullopt;
    }
    return static_cast<std::uint64_t>(total);
}

// ---------------------------------------------------------------- parser

namespace {

struct Parser {
    std::string_view s;
    std::size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    std::string ident() {
        skip();
        std::size_t start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
        if (start == pos) throw RingError("ring descriptor: expected a name at offset " + std::to_string(start));
        return std::string(s.substr(start, pos - start));
    }
    void expect(char ch) {
        skip();
        if (pos >= s.size() || s[pos] != ch)
            throw RingError(std::string("ring descriptor: expected '") + ch + "' at offset " + std::to_string(pos));
        ++pos;
    }
    bool peek(char ch) {
        skip();
        return pos < s.size() && s[pos] == ch;
    }
    std::uint64_t number() {
        std::string t = ident();
        if (!std::all_of(t.begin(), t.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
            throw RingError("ring descriptor: expected a number, got '" + t + "'");
        return std::stoull(t);
    }

    std::shared_ptr<const Ring> ring() {
        std::string name = ident();
        expect('(');
        std::shared_ptr<const Ring> out;
        if (name == "gf") {
            out = std::make_shared<GaloisField>(number());
        } else if (name == "zmod") {
            out = std::make_shared<ZMod>(number());
        } else if (name == "mat") {
            auto n = number();
            expect(',');
            auto inner = std::dynamic_pointer_cast<const FiniteRing>(ring());
            if (!inner) throw RingError("mat(n,R) needs a finite inner ring");
            out = std::make_shared<MatrixRing>(static_cast<unsigned>(n), inner);
        } else if (name == "prod") {
            std::vector<FiniteRingPtr> fs;
            do {
                auto f = std::dynamic_pointer_cast<const FiniteRing>(ring());
                if (!f) throw RingError("prod(...) needs finite factors");
                fs.push_back(f);
            } while (peek(',') && (++pos, true));
            out = std::make_shared<ProductRing>(std::move(fs));
        } else if (name == "free") {
            std::vector<std::string> vars;
            do {
                vars.push_back(ident());
            } while (peek(',') && (++pos, true));
            out = std::make_shared<FreeRing>(std::move(vars));
        } else {
            throw RingError("unknown ring constructor '" + name + "'");
        }
        expect(')');
        return out;
    }
};

}  // namespace

std::shared_ptr<const Ring> make_ring(std::string_view descriptor) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const Ring>> registry;
    Parser p{descriptor};
    auto built = p.ring();
    p.skip();
    if (p.pos != descriptor.size()) throw RingError("trailing text in ring descriptor '" + std::string(descriptor) + "'");
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = registry.try_emplace(built->descriptor(), built);
    return it->second;
}

FiniteRingPtr make_finite_ring(std::string_view descriptor) {
    auto r = std::dynamic_pointer_cast<const FiniteRing>(make_ring(descriptor));
    if (!r) throw RingError("ring '" + std::string(descriptor) + "' is not finite");
    return r;
}

}  // namespace wedder
