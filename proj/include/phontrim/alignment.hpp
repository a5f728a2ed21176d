#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phontrim/error.hpp"
#include "phontrim/sound_class.hpp"

namespace phontrim {

// One cognate set: rows are reflexes, columns are alignment sites.
class AlignmentMatrix {
public:
    AlignmentMatrix(std::string cogid, std::vector<std::string> row_ids,
                    std::vector<std::string> doculects,
                    std::vector<std::vector<std::string>> grid)
        : cogid_(std::move(cogid)),
          row_ids_(std::move(row_ids)),
          doculects_(std::move(doculects)),
          grid_(std::move(grid)) {
        if (grid_.empty() || grid_.front().empty()) {
            throw Error(ErrorKind::InvalidMatrix, "cognate set " + cogid_ + " has no rows or columns");
        }
        if (row_ids_.size() != grid_.size() || doculects_.size() != grid_.size()) {
            throw Error(ErrorKind::InvalidMatrix, "cognate set " + cogid_ + ": row labels do not match grid");
        }
        ncols_ = grid_.front().size();
        for (const auto& row : grid_) {
            if (row.size() != ncols_) {
                throw Error(ErrorKind::InvalidMatrix, "cognate set " + cogid_ + " is ragged");
            }
        }
        for (std::size_t c = 0; c < ncols_; ++c) {
            if (gap_count(c) == grid_.size()) {
                throw Error(ErrorKind::InvalidMatrix,
                            "cognate set " + cogid_ + " has all-gap column " + std::to_string(c));
            }
        }
    }

    const std::string& cogid() const noexcept { return cogid_; }
    const std::vector<std::string>& row_ids() const noexcept { return row_ids_; }
    const std::vector<std::string>& doculects() const noexcept { return doculects_; }
    std::size_t rows() const noexcept { return grid_.size(); }
    std::size_t cols() const noexcept { return ncols_; }

    const std::string& at(std::size_t row, std::size_t col) const { return grid_[row][col]; }
    std::span<const std::string> row(std::size_t r) const { return grid_[r]; }

    std::size_t gap_count(std::size_t col) const {
        std::size_t n = 0;
        for (const auto& row : grid_) n += row[col] == gap_token ? 1 : 0;
        return n;
    }

private:
    std::string cogid_;
    std::vector<std::string> row_ids_;
    std::vector<std::string> doculects_;
    std::vector<std::vector<std::string>> grid_;
    std::size_t ncols_ = 0;
};

struct GapProfile {
    std::vector<double> proportions;

    std::size_t size() const noexcept { return proportions.size(); }
    double operator[](std::size_t i) const { return proportions[i]; }
    bool operator==(const GapProfile&) const = default;
};

// Minimal unordered multiset of consonant and vowel sites that trimming must
// leave in place.
struct Skeleton {
    std::size_t consonants = 1;
    std::size_t vowels = 1;

    bool operator==(const Skeleton&) const = default;

    std::size_t required(SoundClass c) const noexcept {
        switch (c) {
            case SoundClass::Consonant: return consonants;
            case SoundClass::Vowel: return vowels;
            case SoundClass::Gap: return 0;
        }
        return 0;
    }

    // "CV", "VC", "CVC", ... Order is ignored; only the counts matter.
    static Skeleton parse(std::string_view text) {
        Skeleton s{0, 0};
        for (char ch : text) {
            if (ch == 'C' || ch == 'c') {
                ++s.consonants;
            } else if (ch == 'V' || ch == 'v') {
                ++s.vowels;
            } else {
                throw Error(ErrorKind::InvalidConfig,
                            "skeleton must be a string over {C,V}, got '" + std::string(text) + "'");
            }
        }
        if (s.consonants + s.vowels == 0) {
            throw Error(ErrorKind::InvalidConfig, "skeleton must require at least one site");
        }
        return s;
    }

    std::string to_string() const {
        std::string out(consonants, 'C');
        out.append(vowels, 'V');
        return out;
    }
};

inline GapProfile gap_profile(const AlignmentMatrix& matrix) {
    GapProfile profile;
    profile.proportions.reserve(matrix.cols());
    const auto rows = static_cast<double>(matrix.rows());
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
        profile.proportions.push_back(static_cast<double>(matrix.gap_count(c)) / rows);
    }
    return profile;
}

// A column is a vowel site iff strictly more than half of its non-gap tokens
// are vowels; ties go to Consonant.
inline std::vector<SoundClass> site_classes(const AlignmentMatrix& matrix, const CvMap& cv_map) {
    std::vector<SoundClass> classes;
    classes.reserve(matrix.cols());
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
        std::size_t vowels = 0;
        std::size_t filled = 0;
        for (std::size_t r = 0; r < matrix.rows(); ++r) {
            const auto cls = classify_token(matrix.at(r, c), cv_map);
            if (cls == SoundClass::Gap) continue;
            ++filled;
            if (cls == SoundClass::Vowel) ++vowels;
        }
        classes.push_back(2 * vowels > filled ? SoundClass::Vowel : SoundClass::Consonant);
    }
    return classes;
}

inline bool satisfies_skeleton(std::span<const SoundClass> classes,
                               std::span<const std::size_t> kept, const Skeleton& skeleton) {
    std::size_t consonants = 0;
    std::size_t vowels = 0;
    for (std::size_t col : kept) {
        if (classes[col] == SoundClass::Consonant) ++consonants;
        if (classes[col] == SoundClass::Vowel) ++vowels;
    }
    return consonants >= skeleton.consonants && vowels >= skeleton.vowels;
}

}  // namespace phontrim
