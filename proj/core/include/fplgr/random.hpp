#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace fplgr {

/// Philox4x32-10 counter-based block function (Salmon et al., SC'11).
/// Exposed so the known-answer vectors can be checked directly.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

/// A reproducible random stream. Draw n of stream (seed, id) is a pure function
/// of (seed, id, n): the seed is the Philox key and (n / 2, id) the counter.
/// Streams with different ids never share a counter block.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

    std::uint64_t next_u64() noexcept;
    /// Uniform on (0, 1] with 53-bit resolution.
    double uniform_open_zero() noexcept;
    /// Uniform on (0, 1) with 53-bit resolution.
    double uniform_open() noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }
    /// Number of 64-bit draws consumed so far.
    std::uint64_t position() const noexcept { return position_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t position_ = 0;
    std::array<std::uint32_t, 4> block_{};
};

/// Perturbation vector z of length d.
struct Perturbation {
    std::vector<double> z;
};

/// Standard exponential via -ln(U), U ~ (0,1].
double exponential(RngStream& stream) noexcept;
/// Standard Gumbel via -ln(-ln U), U ~ (0,1).
double gumbel(RngStream& stream) noexcept;

void fill_exponential(RngStream& stream, std::span<double> out) noexcept;
void fill_gumbel(RngStream& stream, std::span<double> out) noexcept;

Perturbation draw_exponential(RngStream& stream, std::size_t d);
Perturbation draw_gumbel(RngStream& stream, std::size_t d);

/// min(G, cap) with G geometric on {1, 2, ...} with success probability q.
/// Inverse-CDF sampler; tests use it as the reference law for resampling.
std::uint64_t draw_geometric_reference(RngStream& stream, double q,
                                       std::optional<std::uint64_t> cap = std::nullopt);

}  // namespace fplgr
