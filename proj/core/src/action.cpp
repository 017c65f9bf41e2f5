#include "fplgr/action.hpp"

#include <algorithm>

#include "fplgr/error.hpp"

namespace fplgr {

Action::Action(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_) {
        if (b > 1) throw InvalidArgument("action entries must be 0 or 1");
    }
}

Action Action::zeros(std::size_t d) {
    return Action(std::vector<std::uint8_t>(d, 0));
}

Action Action::from_indices(std::size_t d, std::span<const std::size_t> ones) {
    std::vector<std::uint8_t> bits(d, 0);
    for (auto i : ones) {
        if (i >= d) throw DimensionMismatch("action index out of range");
        bits[i] = 1;
    }
    return Action(std::move(bits));
}

Action Action::basis(std::size_t d, std::size_t i) {
    const std::size_t idx[] = {i};
    return from_indices(d, idx);
}

std::size_t Action::ones() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<std::size_t> Action::indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) out.push_back(i);
    return out;
}

double Action::dot(std::span<const double> w) const {
    if (w.size() != bits_.size()) throw DimensionMismatch("dot: dimension mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) sum += w[i];
    return sum;
}

std::string Action::to_string() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) s[i] = '1';
    return s;
}

}  // namespace fplgr
