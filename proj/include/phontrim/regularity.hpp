#pragma once

#include <charconv>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "phontrim/corrpat.hpp"
#include "phontrim/error.hpp"
#include "phontrim/text.hpp"
#include "phontrim/trimming.hpp"
#include "phontrim/wordlist.hpp"

namespace phontrim {

struct RegularityConfig {
    std::size_t pattern_threshold = 3;
    double cognate_threshold = 0.75;

    void validate() const {
        if (pattern_threshold < 1) throw Error(ErrorKind::InvalidConfig, "pattern threshold must be >= 1");
        if (!(cognate_threshold >= 0.0 && cognate_threshold <= 1.0)) {
            throw Error(ErrorKind::InvalidConfig, "cognate threshold must lie in [0, 1]");
        }
    }
};

inline double proportion(std::size_t num, std::size_t den) noexcept {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

// num/den rounded half away from zero to two decimals, computed on integers.
inline std::string format_ratio_2dp(std::uint64_t num, std::uint64_t den) {
    if (den == 0) return "0.00";
    const std::uint64_t hundredths = (200 * num + den) / (2 * den);
    std::string frac = std::to_string(hundredths % 100);
    if (frac.size() < 2) frac.insert(0, "0");
    return std::to_string(hundredths / 100) + "." + frac;
}

// Shortest decimal that round-trips to the same double.
inline std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

struct PatternClassification {
    std::set<std::size_t> regular;
    std::set<std::size_t> irregular;
};

inline PatternClassification classify_patterns(const PatternAssignment& assignment,
                                               const RegularityConfig& config) {
    PatternClassification out;
    for (const auto& p : assignment.patterns) {
        (p.size() >= config.pattern_threshold ? out.regular : out.irregular).insert(p.id);
    }
    return out;
}

using SitesByCogid = std::map<std::string, std::vector<SiteId>, NaturalLess>;

// A set is regular iff its share of sites in regular patterns reaches the
// cognate threshold. Sets without sites are irregular.
inline std::set<std::string, NaturalLess> classify_cognates(const SitesByCogid& sites,
                                                            const PatternAssignment& assignment,
                                                            const std::set<std::size_t>& regular_patterns,
                                                            const RegularityConfig& config) {
    std::set<std::string, NaturalLess> regular;
    for (const auto& [cogid, ids] : sites) {
        std::size_t hits = 0;
        for (const auto& id : ids) {
            const auto it = assignment.site_to_pattern.find(id);
            if (it == assignment.site_to_pattern.end()) {
                throw Error(ErrorKind::UnassignedSite, id.to_string());
            }
            if (regular_patterns.contains(it->second)) ++hits;
        }
        if (!ids.empty() && proportion(hits, ids.size()) >= config.cognate_threshold) regular.insert(cogid);
    }
    return regular;
}

struct RegularityReport {
    std::string strategy;
    std::size_t frequent_patterns = 0;
    std::size_t rare_patterns = 0;
    std::size_t all_patterns = 0;
    std::size_t regular_words = 0;
    std::size_t irregular_words = 0;
    std::size_t all_words = 0;
    double p_regular_patterns = 0.0;
    double w_regular_words = 0.0;
    std::set<std::string, NaturalLess> regular_cogids;
    std::size_t analyzed_cogsets = 0;
    std::size_t excluded_cogsets = 0;  // lack a C or V site before trimming
    std::size_t singleton_cogsets = 0;
    std::size_t sites = 0;

    bool operator==(const RegularityReport&) const = default;
};

// Regularity of one pipeline run. Analyzed sets are the non-singleton sets
// not flagged as excluded; every non-singleton set needs an entry in `trims`.
inline RegularityReport report(const Wordlist& wl, const TrimMap& trims, const PatternAssignment& assignment,
                               const RegularityConfig& config) {
    for (const auto& [cogid, _] : trims) {
        if (!wl.contains_cogid(cogid)) throw Error(ErrorKind::InconsistentInputs, "unknown cognate set " + cogid);
    }
    RegularityReport r;
    SitesByCogid sites;
    for (const auto& cogid : wl.cogids()) {
        if (wl.is_singleton(cogid)) {
            ++r.singleton_cogsets;
            continue;
        }
        const auto it = trims.find(cogid);
        if (it == trims.end()) {
            throw Error(ErrorKind::InconsistentInputs, "no trim result for cognate set " + cogid);
        }
        if (it->second.excluded) {
            ++r.excluded_cogsets;
            continue;
        }
        ++r.analyzed_cogsets;
        r.all_words += wl.rows_of(cogid).size();
        sites[cogid];
    }
    for (const auto& [id, _] : assignment.site_to_pattern) {
        const auto it = sites.find(id.cogid);
        if (it == sites.end()) {
            throw Error(ErrorKind::InconsistentInputs, "site " + id.to_string() + " lies outside the analyzed sets");
        }
        it->second.push_back(id);
    }
    // Every surviving site must have been clustered.
    for (const auto& site : extract_sites(wl, trims)) {
        if (!assignment.site_to_pattern.contains(site.id)) {
            throw Error(ErrorKind::UnassignedSite, site.id.to_string());
        }
    }

    const auto classes = classify_patterns(assignment, config);
    r.frequent_patterns = classes.regular.size();
    r.rare_patterns = classes.irregular.size();
    r.all_patterns = assignment.patterns.size();
    r.sites = assignment.site_count();
    r.regular_cogids = classify_cognates(sites, assignment, classes.regular, config);
    for (const auto& cogid : r.regular_cogids) r.regular_words += wl.rows_of(cogid).size();
    r.irregular_words = r.all_words - r.regular_words;
    r.p_regular_patterns = proportion(r.frequent_patterns, r.all_patterns);
    r.w_regular_words = proportion(r.regular_words, r.all_words);
    return r;
}

inline const std::vector<std::string>& report_tsv_columns() {
    static const std::vector<std::string> cols{
        "STRATEGY",      "FREQUENT_PATTERNS", "RARE_PATTERNS",    "ALL_PATTERNS",      "REGULAR_WORDS",
        "IRREGULAR_WORDS", "ALL_WORDS",       "P",                "W",                 "P_DISPLAY",
        "W_DISPLAY",     "ANALYZED_COGSETS",  "EXCLUDED_COGSETS", "SINGLETON_COGSETS", "SITES"};
    return cols;
}

inline std::vector<std::string> report_tsv_fields(const RegularityReport& r) {
    return {r.strategy,
            std::to_string(r.frequent_patterns),
            std::to_string(r.rare_patterns),
            std::to_string(r.all_patterns),
            std::to_string(r.regular_words),
            std::to_string(r.irregular_words),
            std::to_string(r.all_words),
            format_double(r.p_regular_patterns),
            format_double(r.w_regular_words),
            format_ratio_2dp(r.frequent_patterns, r.all_patterns),
            format_ratio_2dp(r.regular_words, r.all_words),
            std::to_string(r.analyzed_cogsets),
            std::to_string(r.excluded_cogsets),
            std::to_string(r.singleton_cogsets),
            std::to_string(r.sites)};
}

inline void write_report_tsv(std::ostream& out, const RegularityReport& r) {
    out << join(report_tsv_columns(), "\t") << '\n' << join(report_tsv_fields(r), "\t") << '\n';
}

inline nlohmann::ordered_json to_json(const RegularityReport& r) {
    nlohmann::ordered_json j;
    j["strategy"] = r.strategy;
    j["frequent_patterns"] = r.frequent_patterns;
    j["rare_patterns"] = r.rare_patterns;
    j["all_patterns"] = r.all_patterns;
    j["regular_words"] = r.regular_words;
    j["irregular_words"] = r.irregular_words;
    j["all_words"] = r.all_words;
    j["p"] = r.p_regular_patterns;
    j["w"] = r.w_regular_words;
    j["p_display"] = format_ratio_2dp(r.frequent_patterns, r.all_patterns);
    j["w_display"] = format_ratio_2dp(r.regular_words, r.all_words);
    j["analyzed_cogsets"] = r.analyzed_cogsets;
    j["excluded_cogsets"] = r.excluded_cogsets;
    j["singleton_cogsets"] = r.singleton_cogsets;
    j["sites"] = r.sites;
    j["regular_cogids"] = std::vector<std::string>(r.regular_cogids.begin(), r.regular_cogids.end());
    return j;
}

}  // namespace phontrim
