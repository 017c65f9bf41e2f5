#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fplgr {

/// Binary incidence vector over d components.
///
/// Ordering is lexicographic over the bits with 0 < 1; this is the total
/// order used to break exact ties in every linear oracle.
class Action {
public:
    Action() = default;
    explicit Action(std::vector<std::uint8_t> bits);

    static Action zeros(std::size_t d);
    static Action from_indices(std::size_t d, std::span<const std::size_t> ones);
    static Action basis(std::size_t d, std::size_t i);

    std::size_t dimension() const noexcept { return bits_.size(); }
    std::size_t ones() const noexcept;
    bool empty() const noexcept { return ones() == 0; }

    bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }
    std::vector<std::size_t> indices() const;

    /// Inner product with w, summed in increasing index order.
    double dot(std::span<const double> w) const;

    /// "0101" style rendering, index 0 first.
    std::string to_string() const;

    friend auto operator<=>(const Action&, const Action&) = default;
    friend bool operator==(const Action&, const Action&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

}  // namespace fplgr
