#pragma once

#include <bit>
#include <cstdint>
#include <string>

namespace cets {

/// Basis label for N classical spins, little-endian: bit i is spin i,
/// spin 0 in the least significant bit. Bit value 0 maps to sigma = +1.
using SpinConfig = std::uint32_t;

constexpr int kMaxSpins = 30;       // Hamiltonian width cap
constexpr int kMaxOracleSpins = 20; // brute-force enumeration cap

/// sigma_i = 1 - 2*bit_i, so sigma in {+1, -1}.
inline int spin_sign(SpinConfig s, int site) {
    return 1 - 2 * static_cast<int>((s >> site) & 1u);
}

/// Product of sigma over the sites in `site_mask` (parity trick).
inline int product_sign(SpinConfig s, std::uint32_t site_mask) {
    return 1 - 2 * (std::popcount(s & site_mask) & 1);
}

/// Bit string with spin 0 as the first character.
inline std::string config_to_bits(SpinConfig s, int n_spins) {
    std::string out(static_cast<std::size_t>(n_spins), '0');
    for (int i = 0; i < n_spins; ++i)
        if ((s >> i) & 1u) out[static_cast<std::size_t>(i)] = '1';
    return out;
}

} // namespace cets
