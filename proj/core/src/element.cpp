#include "wedder/element.hpp"

namespace wedder {

RingElement::RingElement(std::shared_ptr<const Ring> ring, Elem code) : ring_(std::move(ring)), value_(code) {
    if (!ring_ || !ring_->finite()) throw RingError("integer code given for a non-finite ring");
    if (code >= finite().size()) throw RingError("element code out of range for " + ring_->descriptor());
}

RingElement::RingElement(std::shared_ptr<const Ring> ring, FreePoly poly) : ring_(std::move(ring)), value_(std::move(poly)) {
    if (!ring_ || ring_->finite()) throw RingError("free polynomial given for a finite ring");
}

RingElement RingElement::parse(std::shared_ptr<const Ring> ring, std::string_view text) {
    if (ring->finite()) {
        Elem c = static_cast<const FiniteRing&>(*ring).parse(text);
        return RingElement(ring, c);
    }
    FreePoly p = static_cast<const FreeRing&>(*ring).parse(text);
    return RingElement(ring, std::move(p));
}

RingElement RingElement::zero(std::shared_ptr<const Ring> ring) {
    if (ring->finite()) return RingElement(ring, Elem{0});
    return RingElement(ring, FreePoly{});
}

RingElement RingElement::one(std::shared_ptr<const Ring> ring) {
    if (ring->finite()) {
        Elem o = static_cast<const FiniteRing&>(*ring).one();
        return RingElement(ring, o);
    }
    return RingElement(ring, FreePoly::constant(1));
}

const FiniteRing& RingElement::finite() const { return static_cast<const FiniteRing&>(*ring_); }
const FreeRing& RingElement::free() const { return static_cast<const FreeRing&>(*ring_); }

Elem RingElement::code() const {
    if (is_free()) throw RingError("free-ring element has no integer code");
    return std::get<Elem>(value_);
}

const FreePoly& RingElement::poly() const {
    if (!is_free()) throw RingError("finite-ring element has no polynomial form");
    return std::get<FreePoly>(value_);
}

void RingElement::same_ring(const RingElement& o) const {
    if (ring_ != o.ring_ && ring_->descriptor() != o.ring_->descriptor())
        throw RingError("descriptor mismatch: " + ring_->descriptor() + " vs " + o.ring_->descriptor());
}

RingElement RingElement::operator+(const RingElement& o) const {
    same_ring(o);
    if (is_free()) return RingElement(ring_, poly() + o.poly());
    return RingElement(ring_, finite().add(code(), o.code()));
}

RingElement RingElement::operator-(const RingElement& o) const {
    same_ring(o);
    if (is_free()) return RingElement(ring_, poly() - o.poly());
    return RingElement(ring_, finite().sub(code(), o.code()));
}

RingElement RingElement::operator*(const RingElement& o) const {
    same_ring(o);
    if (is_free()) return RingElement(ring_, poly() * o.poly());
    return RingElement(ring_, finite().mul(code(), o.code()));
}

RingElement RingElement::operator-() const {
    if (is_free()) return RingElement(ring_, -poly());
    return RingElement(ring_, finite().neg(code()));
}

bool RingElement::operator==(const RingElement& o) const {
    same_ring(o);
    return value_ == o.value_;
}

std::optional<RingElement> RingElement::try_invert() const {
    if (is_free()) {
        const FreePoly& p = poly();
        if (p == FreePoly::constant(1) || p == FreePoly::constant(-1)) return *this;
        if (p.size() == 1 && p.terms().begin()->first.empty()) return std::nullopt;
        throw RingError("try_invert is unsupported for non-scalar free-ring elements");
    }
    auto inv = finite().inverse(code());
    if (!inv) return std::nullopt;
    return RingElement(ring_, *inv);
}

std::string RingElement::to_string() const {
    if (is_free()) return free().format(poly());
    return finite().format(code());
}

}  // namespace wedder
