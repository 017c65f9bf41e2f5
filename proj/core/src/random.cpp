#include "fplgr/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fplgr/error.hpp"

namespace fplgr {
namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

constexpr double kTwoPowMinus53 = 0x1.0p-53;

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> c,
                                           std::array<std::uint32_t, 2> k) noexcept {
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = std::uint64_t{kPhiloxM0} * c[0];
        const std::uint64_t p1 = std::uint64_t{kPhiloxM1} * c[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += kPhiloxW0;
        k[1] += kPhiloxW1;
    }
    return c;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : seed_(seed), stream_id_(stream_id) {}

std::uint64_t RngStream::next_u64() noexcept {
    const std::uint64_t block = position_ >> 1;
    if ((position_ & 1) == 0) {
        block_ = philox4x32_10(
            {static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32),
             static_cast<std::uint32_t>(stream_id_), static_cast<std::uint32_t>(stream_id_ >> 32)},
            {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)});
    }
    const std::size_t half = (position_ & 1) * 2;
    ++position_;
    return (std::uint64_t{block_[half + 1]} << 32) | block_[half];
}

double RngStream::uniform_open_zero() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * kTwoPowMinus53;
}

double RngStream::uniform_open() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * kTwoPowMinus53;
}

double exponential(RngStream& stream) noexcept {
    return -std::log(stream.uniform_open_zero());
}

double gumbel(RngStream& stream) noexcept {
    return -std::log(-std::log(stream.uniform_open()));
}

void fill_exponential(RngStream& stream, std::span<double> out) noexcept {
    for (auto& x : out) x = exponential(stream);
}

void fill_gumbel(RngStream& stream, std::span<double> out) noexcept {
    for (auto& x : out) x = gumbel(stream);
}

Perturbation draw_exponential(RngStream& stream, std::size_t d) {
    if (d < 1) throw InvalidArgument("draw_exponential: d must be >= 1");
    Perturbation p{std::vector<double>(d)};
    fill_exponential(stream, p.z);
    return p;
}

Perturbation draw_gumbel(RngStream& stream, std::size_t d) {
    if (d < 1) throw InvalidArgument("draw_gumbel: d must be >= 1");
    Perturbation p{std::vector<double>(d)};
    fill_gumbel(stream, p.z);
    return p;
}

std::uint64_t draw_geometric_reference(RngStream& stream, double q,
                                       std::optional<std::uint64_t> cap) {
    if (!(q > 0.0 && q <= 1.0)) throw InvalidArgument("draw_geometric_reference: need 0 < q <= 1");
    if (cap && *cap < 1) throw InvalidArgument("draw_geometric_reference: cap must be >= 1");
    const double u = stream.uniform_open_zero();
    std::uint64_t g = 1;
    if (q < 1.0) {
        // P(G > k) = (1-q)^k, so G = ceil(ln U / ln(1-q)).
        const double x = std::ceil(std::log(u) / std::log1p(-q));
        constexpr auto kMax = static_cast<double>(std::numeric_limits<std::uint64_t>::max() / 2);
        g = x < 1.0 ? 1 : (x > kMax ? std::numeric_limits<std::uint64_t>::max() / 2
                                     : static_cast<std::uint64_t>(x));
    }
    return cap ? std::min(g, *cap) : g;
}

}  // namespace fplgr
