#pragma once

#include <algorithm>
#include <array>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "phontrim/alignment.hpp"
#include "phontrim/error.hpp"
#include "phontrim/text.hpp"
#include "phontrim/trimming.hpp"

namespace phontrim {

struct WordRow {
    std::string id;
    std::string doculect;
    std::string concept_name;
    std::string cogid;
    std::vector<std::string> alignment;
    std::vector<std::string> extra;  // values of Wordlist::extra_columns(), in order

    bool operator==(const WordRow&) const = default;
};

struct ParseOptions {
    // "+" and "_" mark morpheme boundaries and are read as gaps.
    bool normalize_markers = true;
};

struct Provenance {
    std::string source;
    ParseOptions options;
};

namespace detail {

inline constexpr std::array<std::string_view, 5> core_columns{"ID", "DOCULECT", "CONCEPT", "COGID",
                                                               "ALIGNMENT"};

inline bool is_marker(std::string_view token) { return token == "+" || token == "_"; }

inline void check_tokens(const WordRow& row) {
    if (row.alignment.empty()) {
        throw Error(ErrorKind::EmptyAlignment, "row " + row.id + " has an empty alignment");
    }
    for (const auto& tok : row.alignment) {
        if (tok.empty() || tok.find_first_of(" \t\r\n") != std::string::npos) {
            throw Error(ErrorKind::MalformedRow,
                        "row " + row.id + " has an empty or whitespace-bearing alignment token");
        }
    }
}

using CorePositions = std::array<std::size_t, core_columns.size()>;

// Positions of ID, DOCULECT, CONCEPT, COGID and ALIGNMENT in `header`,
// matched case-insensitively; the first match wins.
inline CorePositions locate_core_columns(const std::vector<std::string>& header) {
    CorePositions pos;
    pos.fill(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) {
        for (std::size_t k = 0; k < pos.size(); ++k) {
            if (pos[k] == header.size() && iequals_ascii(header[i], core_columns[k])) {
                pos[k] = i;
                break;
            }
        }
    }
    for (std::size_t k = 0; k < pos.size(); ++k) {
        if (pos[k] == header.size()) throw Error(ErrorKind::MissingColumn, std::string(core_columns[k]));
    }
    return pos;
}

}  // namespace detail

// A parsed multilingual wordlist. Construction normalizes boundary markers,
// checks that every cognate set is rectangular and drops columns that are
// gaps in every row of their set.
class Wordlist {
public:
    Wordlist() : header_(detail::core_columns.begin(), detail::core_columns.end()) {
        locate_columns();
        index();
    }

    explicit Wordlist(std::vector<WordRow> rows, std::vector<std::string> header = {},
                      Provenance provenance = {})
        : rows_(std::move(rows)), header_(std::move(header)), provenance_(std::move(provenance)) {
        if (header_.empty()) header_.assign(detail::core_columns.begin(), detail::core_columns.end());
        locate_columns();
        normalize();
        index();
    }

    const std::vector<WordRow>& rows() const noexcept { return rows_; }
    const std::vector<std::string>& doculects() const noexcept { return doculects_; }
    const std::vector<std::string>& header() const noexcept { return header_; }
    const std::vector<std::string>& extra_columns() const noexcept { return extra_columns_; }
    const Provenance& provenance() const noexcept { return provenance_; }

    // Cognate-set ids in natural order.
    const std::vector<std::string>& cogids() const noexcept { return cogids_; }
    bool contains_cogid(std::string_view cogid) const { return by_cogid_.contains(std::string(cogid)); }

    const std::vector<std::size_t>& rows_of(std::string_view cogid) const {
        const auto it = by_cogid_.find(std::string(cogid));
        if (it == by_cogid_.end()) throw Error(ErrorKind::UnknownCogid, std::string(cogid));
        return it->second;
    }

    bool is_singleton(std::string_view cogid) const { return rows_of(cogid).size() == 1; }

    std::size_t singleton_count() const {
        return static_cast<std::size_t>(std::count_if(
            cogids_.begin(), cogids_.end(), [this](const auto& c) { return is_singleton(c); }));
    }

    // Index of a core column (ID, DOCULECT, ...) in header().
    std::size_t core_position(std::size_t core) const { return core_pos_[core]; }

    bool operator==(const Wordlist& other) const {
        return rows_ == other.rows_ && header_ == other.header_;
    }

private:
    void locate_columns() {
        core_pos_ = detail::locate_core_columns(header_);
        extra_columns_.clear();
        for (std::size_t i = 0; i < header_.size(); ++i) {
            if (std::find(core_pos_.begin(), core_pos_.end(), i) == core_pos_.end()) {
                extra_columns_.push_back(header_[i]);
            }
        }
    }

    void normalize() {
        std::unordered_set<std::string> ids;
        std::map<std::string, std::vector<std::size_t>, NaturalLess> groups;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            auto& row = rows_[i];
            if (row.id.empty()) throw Error(ErrorKind::MalformedRow, "row with empty ID");
            if (!ids.insert(row.id).second) throw Error(ErrorKind::DuplicateId, row.id);
            if (row.extra.size() != extra_columns_.size()) {
                throw Error(ErrorKind::MalformedRow, "row " + row.id + " does not match the header");
            }
            detail::check_tokens(row);
            if (provenance_.options.normalize_markers) {
                for (auto& tok : row.alignment) {
                    if (detail::is_marker(tok)) tok = std::string(gap_token);
                }
            }
            groups[row.cogid].push_back(i);
        }
        for (const auto& [cogid, members] : groups) {
            const std::size_t width = rows_[members.front()].alignment.size();
            for (auto i : members) {
                if (rows_[i].alignment.size() != width) {
                    std::vector<std::string> offending;
                    for (auto j : members) {
                        if (rows_[j].alignment.size() != width) offending.push_back(rows_[j].id);
                    }
                    throw Error(ErrorKind::RaggedAlignment,
                                "cognate set " + cogid + " (rows " + rows_[members.front()].id + " vs " +
                                    join(offending, ",") + ")");
                }
            }
            std::vector<bool> keep(width, false);
            for (auto i : members) {
                for (std::size_t c = 0; c < width; ++c) {
                    if (rows_[i].alignment[c] != gap_token) keep[c] = true;
                }
            }
            if (std::find(keep.begin(), keep.end(), true) == keep.end()) {
                throw Error(ErrorKind::EmptyAlignment, "cognate set " + cogid + " consists of gaps only");
            }
            if (std::find(keep.begin(), keep.end(), false) == keep.end()) continue;
            for (auto i : members) {
                std::vector<std::string> kept;
                for (std::size_t c = 0; c < width; ++c) {
                    if (keep[c]) kept.push_back(std::move(rows_[i].alignment[c]));
                }
                rows_[i].alignment = std::move(kept);
            }
        }
    }

    void index() {
        by_cogid_.clear();
        doculects_.clear();
        std::unordered_set<std::string> seen;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            by_cogid_[rows_[i].cogid].push_back(i);
            if (seen.insert(rows_[i].doculect).second) doculects_.push_back(rows_[i].doculect);
        }
        cogids_.clear();
        for (const auto& [cogid, _] : by_cogid_) cogids_.push_back(cogid);
        std::sort(cogids_.begin(), cogids_.end(), NaturalLess{});
    }

    std::vector<WordRow> rows_;
    std::vector<std::string> header_;
    Provenance provenance_;
    std::vector<std::string> extra_columns_;
    detail::CorePositions core_pos_{};
    std::vector<std::string> doculects_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_cogid_;
    std::vector<std::string> cogids_;
};

inline Wordlist parse_wordlist(std::istream& in, ParseOptions options = {}, std::string source = {}) {
    std::string line;
    std::vector<std::string> header;
    std::vector<WordRow> rows;
    detail::CorePositions pos{};
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto fields = split(line, '\t');
        if (header.empty()) {
            header.assign(fields.begin(), fields.end());
            pos = detail::locate_core_columns(header);
            continue;
        }
        if (fields.size() != header.size()) {
            throw Error(ErrorKind::MalformedRow, "line " + std::to_string(line_no) + " has " +
                                                     std::to_string(fields.size()) + " fields, expected " +
                                                     std::to_string(header.size()));
        }
        WordRow row;
        row.id = std::string(fields[pos[0]]);
        row.doculect = std::string(fields[pos[1]]);
        row.concept_name = std::string(fields[pos[2]]);
        row.cogid = std::string(fields[pos[3]]);
        const auto alignment = fields[pos[4]];
        if (alignment.empty()) throw Error(ErrorKind::EmptyAlignment, "row " + row.id);
        for (auto tok : split(alignment, ' ')) row.alignment.emplace_back(tok);
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (std::find(pos.begin(), pos.end(), i) == pos.end()) row.extra.emplace_back(fields[i]);
        }
        rows.push_back(std::move(row));
    }
    if (header.empty()) throw Error(ErrorKind::MissingColumn, "no header line");
    return Wordlist(std::move(rows), std::move(header), Provenance{std::move(source), options});
}

inline constexpr std::string_view trimmed_alignment_column = "ALIGNMENT_TRIMMED";
inline constexpr std::string_view trimmed_sites_column = "TRIMMED_SITES";

namespace detail {

inline void write_rows(std::ostream& out, const Wordlist& wl, const TrimMap* trims) {
    const auto& header = wl.header();
    std::vector<bool> skip(header.size(), false);
    if (trims) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            skip[i] = iequals_ascii(header[i], trimmed_alignment_column) ||
                      iequals_ascii(header[i], trimmed_sites_column);
        }
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (!skip[i]) names.push_back(header[i]);
    }
    if (trims) {
        names.emplace_back(trimmed_alignment_column);
        names.emplace_back(trimmed_sites_column);
    }
    out << join(names, "\t") << '\n';

    CorePositions core{};
    for (std::size_t k = 0; k < core.size(); ++k) core[k] = wl.core_position(k);

    for (const auto& row : wl.rows()) {
        std::vector<std::string> fields;
        std::size_t extra = 0;
        for (std::size_t i = 0; i < header.size(); ++i) {
            std::string value;
            if (i == core[0]) value = row.id;
            else if (i == core[1]) value = row.doculect;
            else if (i == core[2]) value = row.concept_name;
            else if (i == core[3]) value = row.cogid;
            else if (i == core[4]) value = join(row.alignment, " ");
            else value = row.extra[extra++];
            if (!skip[i]) fields.push_back(std::move(value));
        }
        if (trims) {
            const auto it = trims->find(row.cogid);
            if (it == trims->end()) {
                fields.push_back(join(row.alignment, " "));
                fields.emplace_back();
            } else {
                std::vector<std::string> kept;
                for (auto c : it->second.kept) kept.push_back(row.alignment.at(c));
                auto order = it->second.removed;
                std::sort(order.begin(), order.end());
                std::vector<std::string> removed;
                for (auto c : order) removed.push_back(std::to_string(c));
                fields.push_back(join(kept, " "));
                fields.push_back(join(removed, ","));
            }
        }
        out << join(fields, "\t") << '\n';
    }
}

}  // namespace detail

inline void write_wordlist(std::ostream& out, const Wordlist& wl) { detail::write_rows(out, wl, nullptr); }

// Adds ALIGNMENT_TRIMMED (kept tokens) and TRIMMED_SITES (ascending removed
// column indices) to every row. Rows of sets without an entry keep their
// full alignment.
inline void write_wordlist(std::ostream& out, const Wordlist& wl, const TrimMap& trims) {
    for (const auto& [cogid, _] : trims) {
        if (!wl.contains_cogid(cogid)) throw Error(ErrorKind::UnknownCogid, cogid);
    }
    detail::write_rows(out, wl, &trims);
}

inline AlignmentMatrix matrix_for(const Wordlist& wl, std::string_view cogid) {
    std::vector<std::string> ids;
    std::vector<std::string> doculects;
    std::vector<std::vector<std::string>> grid;
    for (auto i : wl.rows_of(cogid)) {
        const auto& row = wl.rows()[i];
        ids.push_back(row.id);
        doculects.push_back(row.doculect);
        grid.push_back(row.alignment);
    }
    return AlignmentMatrix(std::string(cogid), std::move(ids), std::move(doculects), std::move(grid));
}

}  // namespace phontrim
