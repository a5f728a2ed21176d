#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "phontrim/alignment.hpp"
#include "phontrim/error.hpp"
#include "phontrim/random.hpp"
#include "phontrim/text.hpp"

namespace phontrim {

enum class Strategy { None, CoreOriented, GapOriented };

inline std::string_view to_string(Strategy s) noexcept {
    switch (s) {
        case Strategy::None: return "none";
        case Strategy::CoreOriented: return "core";
        case Strategy::GapOriented: return "gap";
    }
    return "none";
}

inline Strategy parse_strategy(std::string_view text) {
    if (text == "none") return Strategy::None;
    if (text == "core") return Strategy::CoreOriented;
    if (text == "gap") return Strategy::GapOriented;
    throw Error(ErrorKind::InvalidConfig,
                "unknown strategy '" + std::string(text) + "' (expected none, core or gap)");
}

struct TrimConfig {
    Strategy strategy = Strategy::None;
    double gap_threshold = 0.5;
    Skeleton skeleton{};

    void validate() const {
        if (!(gap_threshold >= 0.0 && gap_threshold <= 1.0)) {
            throw Error(ErrorKind::InvalidConfig, "gap threshold must lie in [0, 1]");
        }
        if (skeleton.consonants + skeleton.vowels == 0) {
            throw Error(ErrorKind::InvalidConfig, "skeleton must require at least one site");
        }
    }
};

struct TrimResult {
    std::string cogid;
    std::vector<std::size_t> kept;     // ascending
    std::vector<std::size_t> removed;  // in removal order
    GapProfile profile;
    std::vector<SoundClass> classes;
    bool excluded = false;  // set lacks the skeleton even before trimming

    bool operator==(const TrimResult&) const = default;
};

using TrimMap = std::map<std::string, TrimResult, NaturalLess>;

// Ordered removal candidates. Gap-oriented: every column at or above the
// threshold, highest proportion first, ties by column index. Core-oriented:
// the candidate run touching the right edge (right to left), then the run
// touching the left edge (left to right).
inline std::vector<std::size_t> candidate_sites(const GapProfile& profile,
                                                std::span<const SoundClass> classes,
                                                const TrimConfig& config) {
    if (profile.size() != classes.size()) {
        throw Error(ErrorKind::InvalidMatrix, "gap profile and site classes differ in length");
    }
    const std::size_t n = profile.size();
    auto is_candidate = [&](std::size_t c) { return profile[c] >= config.gap_threshold; };
    std::vector<std::size_t> out;
    switch (config.strategy) {
        case Strategy::None:
            break;
        case Strategy::GapOriented:
            for (std::size_t c = 0; c < n; ++c) {
                if (is_candidate(c)) out.push_back(c);
            }
            std::stable_sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
                return profile[a] > profile[b];
            });
            break;
        case Strategy::CoreOriented: {
            std::size_t right = n;  // first index of the suffix run
            while (right > 0 && is_candidate(right - 1)) {
                --right;
                out.push_back(right);
            }
            for (std::size_t c = 0; c < right && is_candidate(c); ++c) out.push_back(c);
            break;
        }
    }
    return out;
}

inline TrimResult trim(const AlignmentMatrix& matrix, const TrimConfig& config, const CvMap& cv_map) {
    TrimResult result;
    result.cogid = matrix.cogid();
    result.profile = gap_profile(matrix);
    result.classes = site_classes(matrix, cv_map);

    const std::size_t n = matrix.cols();
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    if (!satisfies_skeleton(result.classes, all, config.skeleton)) {
        result.excluded = true;
        result.kept = std::move(all);
        return result;
    }

    std::size_t consonants = 0;
    std::size_t vowels = 0;
    for (auto cls : result.classes) (cls == SoundClass::Vowel ? vowels : consonants) += 1;

    std::vector<bool> alive(n, true);
    for (std::size_t col : candidate_sites(result.profile, result.classes, config)) {
        const bool vowel = result.classes[col] == SoundClass::Vowel;
        const std::size_t c_after = consonants - (vowel ? 0 : 1);
        const std::size_t v_after = vowels - (vowel ? 1 : 0);
        if (c_after < config.skeleton.consonants || v_after < config.skeleton.vowels) break;
        consonants = c_after;
        vowels = v_after;
        alive[col] = false;
        result.removed.push_back(col);
    }
    for (std::size_t c = 0; c < n; ++c) {
        if (alive[c]) result.kept.push_back(c);
    }
    return result;
}

namespace detail {

template <Uniform64Generator G>
std::vector<std::size_t> sample_without_replacement(std::vector<std::size_t> pool, std::size_t k, G& rng) {
    for (std::size_t i = 0; i < k; ++i) {
        const auto j = i + static_cast<std::size_t>(uniform_below(rng, pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

}  // namespace detail

inline constexpr std::size_t random_trim_max_attempts = 1000;

// Random deletion mirroring `reference`: the same number of consonant and of
// vowel columns is removed, drawn uniformly within each class, subject to the
// survivors still carrying the skeleton.
template <Uniform64Generator G>
TrimResult trim_random(const AlignmentMatrix& matrix, const TrimResult& reference,
                       const TrimConfig& config, const CvMap& cv_map, G& rng) {
    if (reference.excluded) {
        throw Error(ErrorKind::InconsistentInputs,
                    "cannot mirror an excluded cognate set (" + reference.cogid + ")");
    }
    TrimResult result;
    result.cogid = matrix.cogid();
    result.profile = gap_profile(matrix);
    result.classes = site_classes(matrix, cv_map);

    std::vector<std::size_t> consonant_cols;
    std::vector<std::size_t> vowel_cols;
    for (std::size_t c = 0; c < result.classes.size(); ++c) {
        (result.classes[c] == SoundClass::Vowel ? vowel_cols : consonant_cols).push_back(c);
    }
    std::size_t drop_c = 0;
    std::size_t drop_v = 0;
    for (std::size_t col : reference.removed) {
        if (col >= result.classes.size()) {
            throw Error(ErrorKind::InconsistentInputs, "reference column out of range in " + reference.cogid);
        }
        (result.classes[col] == SoundClass::Vowel ? drop_v : drop_c) += 1;
    }
    if (consonant_cols.size() < drop_c || vowel_cols.size() < drop_v) {
        throw Error(ErrorKind::ClassCountImpossible,
                    "cognate set " + matrix.cogid() + " has too few columns of a class to mirror the reference");
    }

    auto survivors_ok = [&](const std::vector<std::size_t>& removed) {
        std::vector<bool> gone(result.classes.size(), false);
        for (auto c : removed) gone[c] = true;
        std::vector<std::size_t> kept;
        for (std::size_t c = 0; c < gone.size(); ++c) {
            if (!gone[c]) kept.push_back(c);
        }
        return satisfies_skeleton(result.classes, kept, config.skeleton);
    };

    std::vector<std::size_t> removed;
    bool accepted = false;
    for (std::size_t attempt = 0; attempt < random_trim_max_attempts && !accepted; ++attempt) {
        removed = detail::sample_without_replacement(consonant_cols, drop_c, rng);
        auto vowels = detail::sample_without_replacement(vowel_cols, drop_v, rng);
        removed.insert(removed.end(), vowels.begin(), vowels.end());
        accepted = survivors_ok(removed);
    }
    if (!accepted) {
        // Protect the lowest-index columns that make up the skeleton and draw
        // from the rest.
        const std::size_t keep_c = std::min(config.skeleton.consonants, consonant_cols.size());
        const std::size_t keep_v = std::min(config.skeleton.vowels, vowel_cols.size());
        std::vector<std::size_t> pool_c(consonant_cols.begin() + static_cast<std::ptrdiff_t>(keep_c),
                                        consonant_cols.end());
        std::vector<std::size_t> pool_v(vowel_cols.begin() + static_cast<std::ptrdiff_t>(keep_v),
                                        vowel_cols.end());
        if (keep_c < config.skeleton.consonants || keep_v < config.skeleton.vowels ||
            pool_c.size() < drop_c || pool_v.size() < drop_v) {
            throw Error(ErrorKind::ClassCountImpossible,
                        "cognate set " + matrix.cogid() + " cannot keep its skeleton under random deletion");
        }
        removed = detail::sample_without_replacement(std::move(pool_c), drop_c, rng);
        auto vowels = detail::sample_without_replacement(std::move(pool_v), drop_v, rng);
        removed.insert(removed.end(), vowels.begin(), vowels.end());
    }

    std::vector<bool> gone(result.classes.size(), false);
    for (auto c : removed) gone[c] = true;
    for (std::size_t c = 0; c < gone.size(); ++c) {
        if (!gone[c]) result.kept.push_back(c);
    }
    result.removed = std::move(removed);
    return result;
}

}  // namespace phontrim
