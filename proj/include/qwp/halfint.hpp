#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace qwp {

/// Exact element of (1/2)Z, stored as twice its value.
class HalfInt {
public:
    constexpr HalfInt() = default;

    static constexpr HalfInt from_twice(std::int64_t twice) { return HalfInt(twice); }
    static constexpr HalfInt from_int(std::int64_t value) { return HalfInt(2 * value); }
    static constexpr HalfInt half() { return HalfInt(1); }

    constexpr std::int64_t twice() const { return twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    constexpr double value() const { return static_cast<double>(twice_) / 2.0; }

    /// Integer value; only meaningful when is_integer().
    constexpr std::int64_t as_integer() const { return twice_ / 2; }

    /// True when this - other is an integer.
    constexpr bool same_parity(HalfInt other) const { return ((twice_ - other.twice_) % 2) == 0; }

    constexpr HalfInt operator-() const { return HalfInt(-twice_); }
    constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice_ + o.twice_); }
    constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice_ - o.twice_); }
    constexpr HalfInt& operator+=(HalfInt o) { twice_ += o.twice_; return *this; }
    constexpr HalfInt& operator-=(HalfInt o) { twice_ -= o.twice_; return *this; }

    /// Product with an integer stays in (1/2)Z.
    friend constexpr HalfInt operator*(std::int64_t k, HalfInt h) { return HalfInt(k * h.twice_); }
    friend constexpr HalfInt operator*(HalfInt h, std::int64_t k) { return HalfInt(k * h.twice_); }

    constexpr auto operator<=>(const HalfInt&) const = default;

    /// "3/2", "-1/2", "2".
    std::string str() const;

private:
    explicit constexpr HalfInt(std::int64_t twice) : twice_(twice) {}
    std::int64_t twice_ = 0;
};

constexpr HalfInt abs(HalfInt h) { return h.twice() < 0 ? -h : h; }

/// Floor division for signed integers (rounds toward minus infinity).
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace qwp

template <>
struct std::hash<qwp::HalfInt> {
    std::size_t operator()(qwp::HalfInt h) const noexcept { return std::hash<std::int64_t>{}(h.twice()); }
};
