#include "smdc/share_io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace smdc {

namespace {

constexpr char kMagic[4] = {'S', 'M', 'D', 'C'};
constexpr std::uint8_t kVersion = 1;

void put_u8(std::vector<std::uint8_t>& out, std::uint8_t v) { out.push_back(v); }

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

struct Cursor {
    const std::vector<std::uint8_t>& buf;
    std::size_t pos = 0;

    void need(std::size_t n) const {
        if (pos + n > buf.size()) throw Error(Errc::FormatError, "truncated share file");
    }
    std::uint8_t u8() {
        need(1);
        return buf[pos++];
    }
    std::uint16_t u16() {
        need(2);
        std::uint16_t v = static_cast<std::uint16_t>(buf[pos] | (buf[pos + 1] << 8));
        pos += 2;
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t(buf[pos + i]) << (8 * i);
        pos += 4;
        return v;
    }
};

std::uint8_t scheme_tag(SchemeId id) { return static_cast<std::uint8_t>(id); }

SchemeId scheme_from_tag(std::uint8_t tag) {
    if (tag > static_cast<std::uint8_t>(SchemeId::CornerS10))
        throw Error(Errc::FormatError, "unknown scheme tag " + std::to_string(int(tag)));
    return static_cast<SchemeId>(tag);
}

}  // namespace

std::vector<std::uint8_t> serialize_share(const ShareFileData& data) {
    const SourceProfile& p = data.profile;
    if (data.original_octets.size() != p.L)
        throw Error(Errc::ShapeError, "original_octets must have one entry per level");
    if (data.encoder < 1 || data.encoder > p.L)
        throw Error(Errc::ShapeError, "encoder index out of range");
    std::vector<std::uint8_t> out;
    out.insert(out.end(), kMagic, kMagic + 4);
    put_u8(out, kVersion);
    put_u16(out, static_cast<std::uint16_t>(p.q));
    put_u8(out, static_cast<std::uint8_t>(p.L));
    put_u8(out, static_cast<std::uint8_t>(p.s));
    put_u8(out, p.mode == Mode::Sliding ? 1 : 0);
    put_u8(out, scheme_tag(data.scheme));
    put_u8(out, static_cast<std::uint8_t>(data.encoder));
    for (std::size_t a = 0; a < p.L; ++a) {
        put_u32(out, static_cast<std::uint32_t>(p.lengths[a]));
        put_u32(out, static_cast<std::uint32_t>(data.original_octets[a]));
    }
    put_u8(out, static_cast<std::uint8_t>(data.layers.size()));
    for (const ShareLayer& layer : data.layers) {
        put_u8(out, static_cast<std::uint8_t>(layer.alpha));
        put_u32(out, static_cast<std::uint32_t>(layer.symbols.size()));
        for (Symbol sym : layer.symbols) put_u16(out, sym);
    }
    return out;
}

ShareFileData parse_share(const std::vector<std::uint8_t>& octets) {
    Cursor cur{octets};
    cur.need(4);
    if (std::memcmp(octets.data(), kMagic, 4) != 0)
        throw Error(Errc::FormatError, "bad magic, not a share file");
    cur.pos = 4;
    std::uint8_t version = cur.u8();
    if (version != kVersion)
        throw Error(Errc::FormatError, "unsupported version " + std::to_string(int(version)));
    ShareFileData data;
    data.profile.q = cur.u16();
    data.profile.L = cur.u8();
    data.profile.s = cur.u8();
    std::uint8_t mode = cur.u8();
    if (mode > 1) throw Error(Errc::FormatError, "bad mode byte");
    data.profile.mode = mode == 1 ? Mode::Sliding : Mode::Mss;
    data.scheme = scheme_from_tag(cur.u8());
    data.encoder = cur.u8();
    data.profile.lengths.resize(data.profile.L);
    data.original_octets.resize(data.profile.L);
    for (std::size_t a = 0; a < data.profile.L; ++a) {
        data.profile.lengths[a] = cur.u32();
        data.original_octets[a] = cur.u32();
    }
    std::size_t nlayers = cur.u8();
    data.layers.resize(nlayers);
    for (ShareLayer& layer : data.layers) {
        layer.alpha = cur.u8();
        std::uint32_t count = cur.u32();
        layer.symbols.resize(count);
        for (std::uint32_t i = 0; i < count; ++i) {
            Symbol sym = cur.u16();
            if (sym >= data.profile.q)
                throw Error(Errc::CorruptShare, "symbol out of field range");
            layer.symbols[i] = sym;
        }
    }
    if (cur.pos != octets.size()) throw Error(Errc::FormatError, "trailing bytes in share file");
    return data;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::FormatError, "cannot open " + path);
    std::vector<std::uint8_t> octets((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    return octets;
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& octets) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::FormatError, "cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(octets.data()),
              static_cast<std::streamsize>(octets.size()));
    if (!out) throw Error(Errc::FormatError, "short write to " + path);
}

void write_share(const std::string& path, const ShareFileData& data) {
    write_file(path, serialize_share(data));
}

ShareFileData read_share(const std::string& path) { return parse_share(read_file(path)); }

InstanceConfig parse_config_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error(Errc::BadConfig, std::string("invalid JSON: ") + e.what());
    }
    try {
        InstanceConfig cfg;
        std::string mode = doc.at("mode").get<std::string>();
        if (mode == "mss") {
            cfg.profile.mode = Mode::Mss;
        } else if (mode == "sliding") {
            cfg.profile.mode = Mode::Sliding;
        } else {
            throw Error(Errc::BadConfig, "mode must be \"mss\" or \"sliding\"");
        }
        cfg.profile.L = doc.at("L").get<std::size_t>();
        cfg.profile.s = doc.at("s").get<std::size_t>();
        if (doc.contains("q")) {
            cfg.profile.q = doc.at("q").get<std::uint32_t>();
        } else {
            cfg.profile.q = smallest_prime_geq(static_cast<std::uint32_t>(cfg.profile.L) + 1);
        }
        cfg.profile.lengths = doc.at("lengths").get<std::vector<std::uint64_t>>();
        cfg.scheme = scheme_from_name(doc.at("scheme").get<std::string>());
        if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
        if (cfg.profile.lengths.size() != cfg.profile.L)
            throw Error(Errc::BadConfig, "lengths must have exactly L entries");
        cfg.profile.validate();
        return cfg;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(Errc::BadConfig, std::string("bad config: ") + e.what());
    }
}

InstanceConfig parse_config_file(const std::string& path) {
    std::vector<std::uint8_t> octets = read_file(path);
    return parse_config_json(std::string(octets.begin(), octets.end()));
}

SymbolSeq octets_to_symbols(const std::vector<std::uint8_t>& octets, std::uint32_t q,
                            std::uint64_t target_len) {
    SymbolSeq out;
    if (q == 2) {
        out.reserve(octets.size() * 8);
        for (std::uint8_t byte : octets)
            for (int bit = 0; bit < 8; ++bit) out.push_back((byte >> bit) & 1);
    } else if (q >= 257) {
        out.assign(octets.begin(), octets.end());
    } else {
        throw Error(Errc::Unsupported,
                    "octet payloads need q = 2 or q >= 257, got q = " + std::to_string(q));
    }
    if (out.size() > target_len)
        throw Error(Errc::ShapeError, "input of " + std::to_string(out.size()) +
                                          " symbols exceeds configured length " +
                                          std::to_string(target_len));
    out.resize(target_len, 0);
    return out;
}

std::vector<std::uint8_t> symbols_to_octets(const SymbolSeq& symbols, std::uint32_t q,
                                            std::uint64_t original_octets) {
    std::vector<std::uint8_t> out;
    if (q == 2) {
        out.assign((symbols.size() + 7) / 8, 0);
        for (std::size_t i = 0; i < symbols.size(); ++i)
            if (symbols[i]) out[i / 8] |= std::uint8_t(1u << (i % 8));
    } else if (q >= 257) {
        out.reserve(symbols.size());
        for (Symbol sym : symbols) {
            if (sym > 0xff) throw Error(Errc::CorruptShare, "decoded symbol exceeds octet range");
            out.push_back(static_cast<std::uint8_t>(sym));
        }
    } else {
        throw Error(Errc::Unsupported,
                    "octet payloads need q = 2 or q >= 257, got q = " + std::to_string(q));
    }
    if (original_octets > out.size())
        throw Error(Errc::ShapeError, "recorded octet count exceeds decoded payload");
    out.resize(original_octets);
    return out;
}

std::string region_text(const RegionSpec& reg, const std::vector<RateTuple>* corners) {
    std::ostringstream os;
    os << "region " << reg.label << " dim=" << reg.dim << "\n";
    for (const Inequality& iq : reg.inequalities) {
        os << "ineq";
        for (const Rational& c : iq.a) os << ' ' << c.str();
        os << " >= " << iq.b.str() << "\n";
    }
    if (corners) {
        for (const RateTuple& pt : *corners) {
            os << "corner";
            for (const Rational& c : pt) os << ' ' << c.str();
            os << "\n";
        }
    }
    return os.str();
}

}  // namespace smdc
