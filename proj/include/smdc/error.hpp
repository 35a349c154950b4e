#pragma once

#include <stdexcept>
#include <string>

namespace smdc {

enum class Errc {
    NoInverse,
    DegenerateCode,
    ShapeError,
    InsufficientShares,
    CorruptShare,
    BadThreshold,
    PaddingRequired,
    WrongScheme,
    KeyDeficit,
    CornerUnavailable,
    DomainError,
    DegenerateProfile,
    FormatError,
    TooLargeUseRankOracle,
    Unsupported,
    BadConfig,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NoInverse: return "NoInverse";
        case Errc::DegenerateCode: return "DegenerateCode";
        case Errc::ShapeError: return "ShapeError";
        case Errc::InsufficientShares: return "InsufficientShares";
        case Errc::CorruptShare: return "CorruptShare";
        case Errc::BadThreshold: return "BadThreshold";
        case Errc::PaddingRequired: return "PaddingRequired";
        case Errc::WrongScheme: return "WrongScheme";
        case Errc::KeyDeficit: return "KeyDeficit";
        case Errc::CornerUnavailable: return "CornerUnavailable";
        case Errc::DomainError: return "DomainError";
        case Errc::DegenerateProfile: return "DegenerateProfile";
        case Errc::FormatError: return "FormatError";
        case Errc::TooLargeUseRankOracle: return "TooLargeUseRankOracle";
        case Errc::Unsupported: return "Unsupported";
        case Errc::BadConfig: return "BadConfig";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace smdc
