#pragma once

// Seeded generators for property tests and synthetic datasets.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "phontrim/phontrim.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(phontrim::uniform_below(rng, n)); }

inline bool chance(Rng& rng, double p) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

inline const std::vector<std::string>& consonants() {
    static const std::vector<std::string> v{"p", "t", "k", "m", "n", "s", "l", "r", "w", "j", "tʰ", "ŋ", "h", "ʔ"};
    return v;
}

inline const std::vector<std::string>& vowels() {
    static const std::vector<std::string> v{"a", "e", "i", "o", "u", "ə", "ɛ", "ũ", "aː"};
    return v;
}

inline std::string random_sound(Rng& rng) {
    return chance(rng, 0.6) ? consonants()[pick(rng, consonants().size())] : vowels()[pick(rng, vowels().size())];
}

struct WordlistShape {
    std::size_t cognate_sets = 8;
    std::size_t doculects = 5;
    std::size_t max_columns = 8;
    double gap_rate = 0.3;
    double duplicate_rate = 0.1;  // chance of a second row for a doculect
};

// Random wordlist: each set picks a subset of doculects and fills a random
// grid. Some sets end up singletons, some lack a vowel or consonant site.
inline phontrim::Wordlist random_wordlist(Rng& rng, const WordlistShape& shape = {}) {
    std::vector<phontrim::WordRow> rows;
    std::size_t next_id = 1;
    for (std::size_t s = 1; s <= shape.cognate_sets; ++s) {
        const std::size_t ncols = 1 + pick(rng, shape.max_columns);
        std::vector<std::string> members;
        for (std::size_t d = 0; d < shape.doculects; ++d) {
            if (chance(rng, 0.7)) members.push_back("L" + std::to_string(d));
            if (chance(rng, shape.duplicate_rate)) members.push_back("L" + std::to_string(d));
        }
        if (members.empty()) members.push_back("L0");
        // Column-wise sound: every column has a dominant sound plus noise.
        std::vector<std::string> base(ncols);
        for (auto& b : base) b = random_sound(rng);
        for (std::size_t m = 0; m < members.size(); ++m) {
            phontrim::WordRow row;
            row.id = std::to_string(next_id++);
            row.doculect = members[m];
            row.concept_name = "c" + std::to_string(s);
            row.cogid = std::to_string(s);
            for (std::size_t c = 0; c < ncols; ++c) {
                if (m == 0 && c == 0) {
                    row.alignment.push_back(base[c]);
                } else if (chance(rng, shape.gap_rate)) {
                    row.alignment.emplace_back("-");
                } else {
                    row.alignment.push_back(chance(rng, 0.7) ? base[c] : random_sound(rng));
                }
            }
            rows.push_back(std::move(row));
        }
    }
    return phontrim::Wordlist(std::move(rows));
}

// Random sites over `doculects` with tokens drawn from `alphabet` (which may
// contain "-"); absent doculects are unconstrained.
inline std::vector<phontrim::Site> random_sites(Rng& rng, std::size_t count, std::size_t doculects,
                                                const std::vector<std::string>& alphabet, double missing_rate) {
    std::vector<phontrim::Site> sites;
    for (std::size_t i = 0; i < count; ++i) {
        phontrim::Site site{{std::to_string(1 + i / 3), i % 3}, {}};
        for (std::size_t d = 0; d < doculects; ++d) {
            if (chance(rng, missing_rate)) continue;
            site.values.emplace("L" + std::to_string(d), alphabet[pick(rng, alphabet.size())]);
        }
        if (site.values.empty()) site.values.emplace("L0", alphabet[pick(rng, alphabet.size())]);
        sites.push_back(std::move(site));
    }
    return sites;
}

struct SyntheticShape {
    std::size_t cognate_sets = 24;
    std::size_t doculects = 5;
    std::size_t affix_columns = 2;
};

// Regular roots plus language-specific affixes. Each root is CVCV built
// from proto sounds with fixed reflexes per language, so root sites recur
// across sets; each set then gets `affix_columns` extra sites in which only
// one language has a (random) sound.
inline phontrim::Wordlist synthetic_affixed(Rng& rng, const SyntheticShape& shape = {}) {
    const std::vector<std::vector<std::string>> proto_c{
        {"p", "p", "f", "p", "b"}, {"t", "t", "t", "ts", "d"}, {"k", "x", "k", "k", "g"}, {"m", "m", "m", "m", "m"}};
    const std::vector<std::vector<std::string>> proto_v{
        {"a", "a", "a", "ɑ", "a"}, {"i", "i", "e", "i", "i"}, {"u", "o", "u", "u", "u"}};
    const std::vector<std::string> affix_sounds{"s", "n", "l", "r", "k", "t", "m", "w", "j", "h",
                                                "e", "o", "a", "i", "u", "ŋ", "ʔ", "ɲ", "ɾ", "β"};
    std::vector<phontrim::WordRow> rows;
    std::size_t next_id = 1;
    for (std::size_t s = 1; s <= shape.cognate_sets; ++s) {
        const auto c1 = pick(rng, proto_c.size());
        const auto v1 = pick(rng, proto_v.size());
        const auto c2 = pick(rng, proto_c.size());
        const auto v2 = pick(rng, proto_v.size());
        std::vector<std::size_t> affix_lang(shape.affix_columns);
        std::vector<std::string> affix_tok(shape.affix_columns);
        for (std::size_t a = 0; a < shape.affix_columns; ++a) {
            affix_lang[a] = pick(rng, shape.doculects);
            affix_tok[a] = affix_sounds[pick(rng, affix_sounds.size())];
        }
        for (std::size_t d = 0; d < shape.doculects; ++d) {
            phontrim::WordRow row;
            row.id = std::to_string(next_id++);
            row.doculect = "L" + std::to_string(d);
            row.concept_name = "concept" + std::to_string(s);
            row.cogid = std::to_string(s);
            const auto lang = d % 5;
            row.alignment = {proto_c[c1][lang], proto_v[v1][lang], proto_c[c2][lang], proto_v[v2][lang]};
            for (std::size_t a = 0; a < shape.affix_columns; ++a) {
                row.alignment.push_back(affix_lang[a] == d ? affix_tok[a] : "-");
            }
            rows.push_back(std::move(row));
        }
    }
    return phontrim::Wordlist(std::move(rows));
}

}  // namespace gen
