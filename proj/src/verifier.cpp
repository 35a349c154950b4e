#include "smdc/verifier.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <unordered_map>

namespace smdc {

bool VerificationReport::all_pass() const {
    for (const auto& row : rows)
        if (!row.pass) return false;
    return true;
}

std::uint64_t default_enum_cap() {
    if (const char* env = std::getenv("SMDC_ENUM_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return std::uint64_t(1) << 20;
}

std::size_t ExhaustiveTable::input_digit(std::uint64_t state, std::size_t pos) const {
    std::uint32_t q = instance.profile.q;
    for (std::size_t i = 0; i < pos; ++i) state /= q;
    return static_cast<std::size_t>(state % q);
}

ExhaustiveTable build_table(const SchemeInstance& instance, std::uint64_t cap) {
    const SourceProfile& p = instance.profile;
    ExhaustiveTable table{instance};
    table.source_symbols = static_cast<std::size_t>(p.total_source_symbols());
    table.input_symbols = table.source_symbols + instance.key_length();
    {
        std::size_t off = 0;
        for (std::size_t a = 1; a <= p.L; ++a) {
            table.level_begin.push_back(off);
            off += p.lengths[a - 1];
        }
    }
    std::uint64_t states = 1;
    for (std::size_t i = 0; i < table.input_symbols; ++i) {
        if (states > cap / p.q)
            throw Error(Errc::TooLargeUseRankOracle,
                        "state space q^" + std::to_string(table.input_symbols) +
                            " exceeds the enumeration cap " + std::to_string(cap));
        states *= p.q;
    }
    table.states = states;

    std::vector<SymbolSeq> sources(p.L);
    for (std::size_t a = 1; a <= p.L; ++a) sources[a - 1].resize(p.lengths[a - 1]);
    SymbolSeq key(instance.key_length());

    for (std::uint64_t t = 0; t < states; ++t) {
        std::uint64_t v = t;
        for (std::size_t a = 1; a <= p.L; ++a)
            for (auto& sym : sources[a - 1]) {
                sym = static_cast<Symbol>(v % p.q);
                v /= p.q;
            }
        for (auto& sym : key) {
            sym = static_cast<Symbol>(v % p.q);
            v /= p.q;
        }
        ShareBundle bundle = instance.encode(sources, key);
        if (t == 0) {
            std::size_t off = 0;
            for (std::size_t l = 0; l < p.L; ++l) {
                table.encoder_begin.push_back(off);
                for (const auto& layer : bundle.shares[l]) off += layer.symbols.size();
            }
            table.output_symbols = off;
            table.outputs.reserve(static_cast<std::size_t>(states) * off);
        }
        for (std::size_t l = 0; l < p.L; ++l)
            for (const auto& layer : bundle.shares[l])
                table.outputs.insert(table.outputs.end(), layer.symbols.begin(),
                                     layer.symbols.end());
    }
    return table;
}

namespace {

// Little-endian byte key of the selected output symbols of one state.
std::string observed_key(const ExhaustiveTable& table, std::uint64_t state,
                         const std::vector<std::size_t>& encoders) {
    std::string key;
    const Symbol* base = table.outputs.data() + state * table.output_symbols;
    for (std::size_t l : encoders) {
        std::size_t begin = table.encoder_begin[l - 1];
        std::size_t end = l < table.encoder_begin.size() ? table.encoder_begin[l]
                                                        : table.output_symbols;
        for (std::size_t i = begin; i < end; ++i) {
            key.push_back(static_cast<char>(base[i] & 0xff));
            key.push_back(static_cast<char>(base[i] >> 8));
        }
    }
    return key;
}

std::string source_prefix_key(const ExhaustiveTable& table, std::uint64_t state,
                              std::size_t alpha_lo, std::size_t alpha_hi) {
    std::string key;
    std::size_t begin = table.level_begin[alpha_lo - 1];
    std::size_t end = alpha_hi < table.instance.profile.L
                          ? table.level_begin[alpha_hi]
                          : table.source_symbols;
    for (std::size_t pos = begin; pos < end; ++pos)
        key.push_back(static_cast<char>(table.input_digit(state, pos)));
    return key;
}

}  // namespace

bool exhaustive_check_lossless(const ExhaustiveTable& table, const std::vector<std::size_t>& U,
                               std::size_t alpha) {
    std::size_t lo = table.instance.min_level();
    std::unordered_map<std::string, std::string> seen;
    for (std::uint64_t t = 0; t < table.states; ++t) {
        std::string w = observed_key(table, t, U);
        std::string x = source_prefix_key(table, t, lo, alpha);
        auto [it, inserted] = seen.emplace(std::move(w), x);
        if (!inserted && it->second != x) return false;
    }
    return true;
}

bool exhaustive_check_secrecy(const ExhaustiveTable& table, const std::vector<std::size_t>& A,
                              std::size_t alpha, double* mi_bits) {
    std::map<std::pair<std::string, std::string>, std::uint64_t> joint;
    std::map<std::string, std::uint64_t> xm, wm;
    for (std::uint64_t t = 0; t < table.states; ++t) {
        std::string x = source_prefix_key(table, t, alpha, alpha);
        std::string w = observed_key(table, t, A);
        ++joint[{x, w}];
        ++xm[x];
        ++wm[w];
    }
    bool independent = true;
    // exact factorization: every (x, w) pair that occurs must have
    // count * total == count_x * count_w, and no pair may be missing
    if (joint.size() != xm.size() * wm.size()) independent = false;
    double mi = 0.0;
    std::uint64_t total = table.states;
    for (const auto& [xw, c] : joint) {
        std::uint64_t cx = xm[xw.first], cw = wm[xw.second];
        if (static_cast<unsigned __int128>(c) * total !=
            static_cast<unsigned __int128>(cx) * cw)
            independent = false;
        double pj = double(c) / double(total);
        double px = double(cx) / double(total);
        double pw = double(cw) / double(total);
        mi += pj * std::log2(pj / (px * pw));
    }
    if (mi_bits) *mi_bits = mi;
    return independent;
}

namespace {

FieldMatrix stacked_encoders(const LinearEncoderMatrix& mat,
                             const std::vector<std::size_t>& subset) {
    FieldMatrix m(0, mat.input_cols);
    for (std::size_t l : subset) m.append_rows(mat.per_encoder[l - 1]);
    return m;
}

}  // namespace

bool rank_check_lossless(const LinearEncoderMatrix& mat, const std::vector<std::size_t>& U,
                         std::size_t alpha, std::size_t lo) {
    FieldMatrix m = stacked_encoders(mat, U);
    std::size_t base = mat_rank(m, mat.field);
    for (std::size_t a = lo; a <= alpha; ++a) m.append_rows(mat.selectors[a - 1]);
    return mat_rank(std::move(m), mat.field) == base;
}

bool rank_check_secrecy(const LinearEncoderMatrix& mat, const std::vector<std::size_t>& A,
                        std::size_t alpha) {
    FieldMatrix sel = mat.selectors[alpha - 1];
    FieldMatrix obs = stacked_encoders(mat, A);
    std::size_t r1 = mat_rank(sel, mat.field);
    std::size_t r2 = mat_rank(obs, mat.field);
    sel.append_rows(obs);
    return mat_rank(std::move(sel), mat.field) == r1 + r2;
}

namespace {

void subsets_of_size(std::size_t L, std::size_t k,
                     std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> idx(k);
    if (k == 0) {
        out.push_back({});
        return;
    }
    if (k > L) return;
    for (std::size_t i = 0; i < k; ++i) idx[i] = i + 1;
    while (true) {
        out.push_back(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == L - k + i) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

VerificationReport full_audit(const SchemeInstance& instance, AuditMode mode,
                              std::uint64_t cap) {
    const SourceProfile& p = instance.profile;
    std::size_t lo = instance.min_level();

    bool want_exhaustive = mode != AuditMode::Rank;
    bool want_rank = mode != AuditMode::Exhaustive;

    ExhaustiveTable table;
    bool have_table = false;
    std::string fallback_note;
    if (want_exhaustive) {
        try {
            table = build_table(instance, cap);
            have_table = true;
        } catch (const Error& e) {
            if (e.code() != Errc::TooLargeUseRankOracle) throw;
            fallback_note = e.what();
            want_rank = true;
        }
    }
    LinearEncoderMatrix mat;
    if (want_rank) mat = plan_matrix(instance);

    VerificationReport report;
    for (std::size_t alpha = lo; alpha <= p.L; ++alpha) {
        std::vector<std::vector<std::size_t>> us;
        subsets_of_size(p.L, alpha, us);
        for (const auto& U : us) {
            ReportRow row;
            row.alpha = alpha;
            row.secrecy = false;
            row.subset = U;
            bool ex_pass = false, rk_pass = false;
            if (have_table) {
                ex_pass = exhaustive_check_lossless(table, U, alpha);
                row.enum_size = table.states;
            }
            if (want_rank) rk_pass = rank_check_lossless(mat, U, alpha, lo);
            if (have_table && want_rank) {
                row.oracle = "both";
                row.pass = ex_pass && rk_pass;
                if (ex_pass != rk_pass) row.note = "oracle disagreement";
            } else if (have_table) {
                row.oracle = "exhaustive";
                row.pass = ex_pass;
            } else {
                row.oracle = fallback_note.empty() ? "rank" : "rank (fallback)";
                row.pass = rk_pass;
                row.note = fallback_note;
            }
            report.rows.push_back(std::move(row));
        }
        std::size_t max_a = alpha > p.s ? alpha - p.s : 0;
        for (std::size_t k = 1; k <= max_a; ++k) {
            std::vector<std::vector<std::size_t>> as;
            subsets_of_size(p.L, k, as);
            for (const auto& A : as) {
                ReportRow row;
                row.alpha = alpha;
                row.secrecy = true;
                row.subset = A;
                bool ex_pass = false, rk_pass = false;
                if (have_table) {
                    ex_pass = exhaustive_check_secrecy(table, A, alpha, &row.mi_bits);
                    row.enum_size = table.states;
                }
                if (want_rank) rk_pass = rank_check_secrecy(mat, A, alpha);
                if (have_table && want_rank) {
                    row.oracle = "both";
                    row.pass = ex_pass && rk_pass;
                    if (ex_pass != rk_pass) row.note = "oracle disagreement";
                } else if (have_table) {
                    row.oracle = "exhaustive";
                    row.pass = ex_pass;
                } else {
                    row.oracle = fallback_note.empty() ? "rank" : "rank (fallback)";
                    row.pass = rk_pass;
                    row.note = fallback_note;
                }
                report.rows.push_back(std::move(row));
            }
        }
    }
    return report;
}

double entropy_bits(const std::vector<std::uint64_t>& counts) {
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    if (total == 0) throw Error(Errc::DomainError, "empty histogram");
    double h = 0.0;
    for (auto c : counts) {
        if (c == 0) continue;
        double pr = double(c) / double(total);
        h -= pr * std::log2(pr);
    }
    return h;
}

std::string report_text(const VerificationReport& report) {
    std::ostringstream out;
    for (const auto& row : report.rows) {
        out << (row.secrecy ? "secrecy " : "lossless") << " alpha=" << row.alpha << " {";
        for (std::size_t i = 0; i < row.subset.size(); ++i) {
            if (i) out << ",";
            out << row.subset[i];
        }
        out << "} " << (row.pass ? "pass" : "FAIL") << " oracle=" << row.oracle;
        if (row.enum_size) out << " states=" << row.enum_size;
        if (row.secrecy && row.enum_size) out << " mi_bits=" << row.mi_bits;
        if (!row.note.empty()) out << " note=" << row.note;
        out << "\n";
    }
    out << (report.all_pass() ? "RESULT pass" : "RESULT fail") << "\n";
    return out.str();
}

}  // namespace smdc
