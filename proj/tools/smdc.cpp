#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "smdc/region.hpp"
#include "smdc/schemes.hpp"
#include "smdc/share_io.hpp"
#include "smdc/verifier.hpp"

namespace {

smdc::Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return smdc::Rational(std::stoll(text));
        return smdc::Rational(std::stoll(text.substr(0, slash)),
                              std::stoll(text.substr(slash + 1)));
    } catch (const smdc::Error&) {
        throw;
    } catch (const std::exception&) {
        throw smdc::Error(smdc::Errc::BadConfig, "cannot parse rational '" + text + "'");
    }
}

std::vector<smdc::Rational> parse_rational_list(const std::string& text) {
    std::vector<smdc::Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    return out;
}

int cmd_encode(const std::string& config_path, const std::vector<std::string>& inputs,
               const std::string& out_dir, bool seed_set, std::uint64_t seed) {
    smdc::InstanceConfig cfg = smdc::parse_config_file(config_path);
    if (seed_set) cfg.seed = seed;
    smdc::SchemeInstance inst = smdc::make_instance(cfg.profile, cfg.scheme);
    const std::size_t lo = inst.min_level();
    const std::size_t L = cfg.profile.L;
    if (inputs.size() != L - lo + 1)
        throw smdc::Error(smdc::Errc::BadConfig,
                          "expected " + std::to_string(L - lo + 1) + " input files (levels " +
                              std::to_string(lo) + ".." + std::to_string(L) + " ascending), got " +
                              std::to_string(inputs.size()));

    std::vector<smdc::SymbolSeq> sources(L);
    std::vector<std::uint64_t> original_octets(L, 0);
    for (std::size_t a = 1; a <= L; ++a) {
        if (a < lo) {
            sources[a - 1].assign(cfg.profile.lengths[a - 1], 0);
            continue;
        }
        auto octets = smdc::read_file(inputs[a - lo]);
        original_octets[a - 1] = octets.size();
        sources[a - 1] =
            smdc::octets_to_symbols(octets, cfg.profile.q, cfg.profile.lengths[a - 1]);
    }
    std::filesystem::create_directories(out_dir);
    smdc::KeyMaterial key = smdc::make_key(inst.key_length(), cfg.profile.q, cfg.seed);
    smdc::ShareBundle bundle = inst.encode(sources, key.symbols);

    for (std::size_t i = 1; i <= L; ++i) {
        smdc::ShareFileData data;
        data.profile = cfg.profile;
        data.scheme = cfg.scheme;
        data.encoder = i;
        data.original_octets = original_octets;
        data.layers = bundle.shares[i - 1];
        smdc::write_share(out_dir + "/share_" + std::to_string(i) + ".bin", data);
    }
    std::cout << "wrote " << L << " share files to " << out_dir << "\n";
    return 0;
}

int cmd_decode(const std::vector<std::string>& share_paths, const std::string& out_dir) {
    if (share_paths.empty())
        throw smdc::Error(smdc::Errc::InsufficientShares, "no share files given");
    std::vector<smdc::ShareFileData> files;
    for (const auto& path : share_paths) files.push_back(smdc::read_share(path));
    const smdc::ShareFileData& first = files.front();
    for (const auto& f : files) {
        if (f.profile.L != first.profile.L || f.profile.s != first.profile.s ||
            f.profile.q != first.profile.q || f.profile.lengths != first.profile.lengths ||
            f.profile.mode != first.profile.mode || f.scheme != first.scheme ||
            f.original_octets != first.original_octets)
            throw smdc::Error(smdc::Errc::CorruptShare, "share headers disagree");
    }
    smdc::SchemeInstance inst = smdc::make_instance(first.profile, first.scheme);
    std::vector<std::pair<std::size_t, smdc::EncoderOutput>> access;
    for (const auto& f : files) access.emplace_back(f.encoder, f.layers);
    std::vector<smdc::SymbolSeq> sources = inst.decode(access);

    std::filesystem::create_directories(out_dir);
    const std::size_t lo = inst.min_level();
    const std::size_t hi = std::min(files.size(), std::size_t(first.profile.L));
    for (std::size_t a = lo; a <= hi; ++a) {
        auto octets = smdc::symbols_to_octets(sources[a - 1], first.profile.q,
                                              first.original_octets[a - 1]);
        smdc::write_file(out_dir + "/x_" + std::to_string(a) + ".bin", octets);
    }
    std::cout << "recovered levels " << lo << ".." << hi << " into " << out_dir << "\n";
    return 0;
}

int cmd_verify(const std::string& config_path, const std::string& mode_name) {
    smdc::InstanceConfig cfg = smdc::parse_config_file(config_path);
    smdc::SchemeInstance inst = smdc::make_instance(cfg.profile, cfg.scheme);
    smdc::AuditMode mode;
    if (mode_name == "exhaustive") {
        mode = smdc::AuditMode::Exhaustive;
    } else if (mode_name == "rank") {
        mode = smdc::AuditMode::Rank;
    } else if (mode_name == "both") {
        mode = smdc::AuditMode::Both;
    } else {
        throw smdc::Error(smdc::Errc::BadConfig, "mode must be exhaustive, rank, or both");
    }
    smdc::VerificationReport report = smdc::full_audit(inst, mode);
    std::cout << smdc::report_text(report);
    return report.all_pass() ? 0 : 1;
}

int cmd_region(const std::string& problem, const std::string& h_text, std::size_t L,
               std::size_t k, std::size_t s, const std::string& variant_name, bool corners) {
    std::vector<smdc::Rational> H = parse_rational_list(h_text);
    smdc::RegionSpec reg;
    if (problem == "rss") {
        if (H.size() != 1) throw smdc::Error(smdc::Errc::BadConfig, "rss takes one H value");
        reg = smdc::region_rss(L, k, H[0]);
    } else if (problem == "sup1") {
        if (H.size() != L)
            throw smdc::Error(smdc::Errc::BadConfig, "sup1 takes L entropy values");
        reg = smdc::region_sup1(L, H);
    } else if (problem == "mss32") {
        if (H.size() == 3 && H[0].num == 0) H.erase(H.begin());
        if (H.size() != 2)
            throw smdc::Error(smdc::Errc::BadConfig, "mss32 takes H2,H3 (or 0,H2,H3)");
        reg = smdc::region_mss32(H[0], H[1]);
        smdc::Mss32Case c = smdc::mss32_case(H[0], H[1]);
        static const char* names[] = {"i", "ii", "iii", "iv"};
        std::cout << "case " << names[int(c)] << "\n";
    } else if (problem == "smdc32") {
        if (H.size() != 3) throw smdc::Error(smdc::Errc::BadConfig, "smdc32 takes H1,H2,H3");
        reg = smdc::region_smdc32(H[0], H[1], H[2]);
    } else if (problem == "sumrate") {
        if (H.size() != L)
            throw smdc::Error(smdc::Errc::BadConfig, "sumrate takes L entropy values");
        smdc::Variant variant;
        if (variant_name == "mss") {
            variant = smdc::Variant::Mss;
        } else if (variant_name == "sliding") {
            variant = smdc::Variant::Sliding;
        } else {
            throw smdc::Error(smdc::Errc::BadConfig, "variant must be mss or sliding");
        }
        std::cout << "min_sum_rate " << smdc::min_sum_rate(L, s, H, variant).str() << "\n";
        std::cout << "sup_sum_rate " << smdc::sup_sum_rate(L, s, H, variant).str() << "\n";
        return 0;
    } else {
        throw smdc::Error(smdc::Errc::BadConfig,
                          "problem must be rss, sup1, mss32, smdc32, or sumrate");
    }
    if (corners) {
        std::vector<smdc::RateTuple> pts = smdc::corners3(reg);
        std::cout << smdc::region_text(reg, &pts);
    } else {
        std::cout << smdc::region_text(reg);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sliding secure multilevel diversity coding toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", mode_name = "both";
    std::vector<std::string> inputs, share_paths;
    std::uint64_t seed = 0;
    bool seed_set = false;

    auto* enc = app.add_subcommand("encode", "Encode level payloads into L share files");
    enc->add_option("--config", config_path, "Instance config JSON")->required();
    enc->add_option("--in", inputs, "Input files, one per level in ascending order")->required();
    enc->add_option("--out", out_dir, "Output directory");
    enc->add_option("--seed", seed, "Key seed override")->each([&](const std::string&) {
        seed_set = true;
    });

    auto* dec = app.add_subcommand("decode", "Reconstruct level payloads from share files");
    dec->add_option("--share", share_paths, "Share files")->required();
    dec->add_option("--out", out_dir, "Output directory");

    auto* ver = app.add_subcommand("verify", "Audit lossless and secrecy guarantees");
    ver->add_option("--config", config_path, "Instance config JSON")->required();
    ver->add_option("--mode", mode_name, "Oracle: exhaustive, rank, or both");

    std::string problem, h_text, variant_name = "mss";
    std::size_t L = 3, k = 1, s = 1;
    bool corners = false;
    auto* regc = app.add_subcommand("region", "Print rate-region inequalities and bounds");
    regc->add_option("--problem", problem, "rss, sup1, mss32, smdc32, or sumrate")->required();
    regc->add_option("--H", h_text, "Comma-separated rational entropies")->required();
    regc->add_option("--L", L, "Number of encoders");
    regc->add_option("--k", k, "Recovery threshold (rss)");
    regc->add_option("--s", s, "Secrecy gap (sumrate)");
    regc->add_option("--variant", variant_name, "mss or sliding (sumrate)");
    regc->add_flag("--corners", corners, "Also print the extreme points");

    CLI11_PARSE(app, argc, argv);

    try {
        if (enc->parsed()) return cmd_encode(config_path, inputs, out_dir, seed_set, seed);
        if (dec->parsed()) return cmd_decode(share_paths, out_dir);
        if (ver->parsed()) return cmd_verify(config_path, mode_name);
        if (regc->parsed()) return cmd_region(problem, h_text, L, k, s, variant_name, corners);
    } catch (const smdc::Error& e) {
        std::cerr << "ERROR " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "ERROR Internal: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
