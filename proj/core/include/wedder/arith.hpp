#pragma once

// Uniform arithmetic policies so algorithms can be written once for
// finite rings, the free ring and tagged elements.

#include <concepts>
#include <optional>

#include "wedder/element.hpp"
#include "wedder/free_ring.hpp"
#include "wedder/ring.hpp"

namespace wedder {

template <class A>
concept RingArith = requires(const A& r, const typename A::value_type& x) {
    { r.zero() } -> std::convertible_to<typename A::value_type>;
    { r.one() } -> std::convertible_to<typename A::value_type>;
    { r.add(x, x) } -> std::convertible_to<typename A::value_type>;
    { r.sub(x, x) } -> std::convertible_to<typename A::value_type>;
    { r.mul(x, x) } -> std::convertible_to<typename A::value_type>;
    { r.neg(x) } -> std::convertible_to<typename A::value_type>;
    { r.equal(x, x) } -> std::convertible_to<bool>;
};

struct FiniteArith {
    using value_type = Elem;
    const FiniteRing* ring;

    explicit FiniteArith(const FiniteRing& r) : ring(&r) {}
    Elem zero() const { return ring->zero(); }
    Elem one() const { return ring->one(); }
    Elem add(Elem x, Elem y) const { return ring->add(x, y); }
    Elem sub(Elem x, Elem y) const { return ring->sub(x, y); }
    Elem mul(Elem x, Elem y) const { return ring->mul(x, y); }
    Elem neg(Elem x) const { return ring->neg(x); }
    bool equal(Elem x, Elem y) const { return x == y; }
    std::optional<Elem> inverse(Elem x) const { return ring->inverse(x); }
};

struct FreeArith {
    using value_type = FreePoly;

    FreePoly zero() const { return {}; }
    FreePoly one() const { return FreePoly::constant(1); }
    FreePoly add(const FreePoly& x, const FreePoly& y) const { return x + y; }
    FreePoly sub(const FreePoly& x, const FreePoly& y) const { return x - y; }
    FreePoly mul(const FreePoly& x, const FreePoly& y) const { return x * y; }
    FreePoly neg(const FreePoly& x) const { return -x; }
    bool equal(const FreePoly& x, const FreePoly& y) const { return x == y; }
};

struct ElementArith {
    using value_type = RingElement;
    std::shared_ptr<const Ring> ring;

    RingElement zero() const { return RingElement::zero(ring); }
    RingElement one() const { return RingElement::one(ring); }
    RingElement add(const RingElement& x, const RingElement& y) const { return x + y; }
    RingElement sub(const RingElement& x, const RingElement& y) const { return x - y; }
    RingElement mul(const RingElement& x, const RingElement& y) const { return x * y; }
    RingElement neg(const RingElement& x) const { return -x; }
    bool equal(const RingElement& x, const RingElement& y) const { return x == y; }
};

}  // namespace wedder
