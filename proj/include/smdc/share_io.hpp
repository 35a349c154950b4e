#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smdc/region.hpp"
#include "smdc/schemes.hpp"

namespace smdc {

/// One encoder's output on disk, self-contained: the header carries the full
/// instance parameterization so decoding needs nothing but share files.
struct ShareFileData {
    SourceProfile profile;
    SchemeId scheme = SchemeId::MssChain;
    std::size_t encoder = 0;  // 1-based
    std::vector<std::uint64_t> original_octets;  // per level, pre-padding file sizes
    EncoderOutput layers;
};

std::vector<std::uint8_t> serialize_share(const ShareFileData& data);
ShareFileData parse_share(const std::vector<std::uint8_t>& octets);

void write_share(const std::string& path, const ShareFileData& data);
ShareFileData read_share(const std::string& path);

struct InstanceConfig {
    SourceProfile profile;
    SchemeId scheme = SchemeId::MssChain;
    std::uint64_t seed = 0;
};

/// JSON document with keys mode, L, s, q, lengths, scheme, seed.
InstanceConfig parse_config_json(const std::string& text);
InstanceConfig parse_config_file(const std::string& path);

/// Maps an octet stream to GF(q) symbols, zero-padded to target_len.
/// Supported: q = 2 (bitwise, LSB first) and q >= 257 (one octet per symbol).
SymbolSeq octets_to_symbols(const std::vector<std::uint8_t>& octets, std::uint32_t q,
                            std::uint64_t target_len);

/// Inverse mapping, truncated to the recorded pre-padding octet count.
std::vector<std::uint8_t> symbols_to_octets(const SymbolSeq& symbols, std::uint32_t q,
                                            std::uint64_t original_octets);

/// Structured text: one inequality per line as rational coefficients, plus
/// optional corners. No floating point.
std::string region_text(const RegionSpec& reg, const std::vector<RateTuple>* corners = nullptr);

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, const std::vector<std::uint8_t>& octets);

}  // namespace smdc
