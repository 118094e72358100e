#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "wedder/free_ring.hpp"
#include "wedder/ring.hpp"

namespace wedder {

// Value tagged with its ring; arithmetic across rings throws.
class RingElement {
public:
    RingElement(std::shared_ptr<const Ring> ring, Elem code);
    RingElement(std::shared_ptr<const Ring> ring, FreePoly poly);

    static RingElement parse(std::shared_ptr<const Ring> ring, std::string_view text);
    static RingElement zero(std::shared_ptr<const Ring> ring);
    static RingElement one(std::shared_ptr<const Ring> ring);

    const std::shared_ptr<const Ring>& ring() const { return ring_; }
    bool is_free() const { return std::holds_alternative<FreePoly>(value_); }
    Elem code() const;
    const FreePoly& poly() const;

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator*(const RingElement& o) const;
    RingElement operator-() const;
    bool operator==(const RingElement& o) const;

    // Two-sided inverse; free-ring elements invert only when equal to +-1.
    std::optional<RingElement> try_invert() const;
    std::string to_string() const;

private:
    const FiniteRing& finite() const;
    const FreeRing& free() const;
    void same_ring(const RingElement& o) const;

    std::shared_ptr<const Ring> ring_;
    std::variant<Elem, FreePoly> value_;
};

}  // namespace wedder
