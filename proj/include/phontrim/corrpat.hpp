#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "phontrim/error.hpp"
#include "phontrim/text.hpp"
#include "phontrim/trimming.hpp"
#include "phontrim/wordlist.hpp"

namespace phontrim {

struct SiteId {
    std::string cogid;
    std::size_t column = 0;

    friend bool operator==(const SiteId&, const SiteId&) = default;
    friend std::strong_ordering operator<=>(const SiteId& a, const SiteId& b) {
        if (auto c = natural_compare(a.cogid, b.cogid); c != 0) return c;
        return a.column <=> b.column;
    }

    std::string to_string() const { return cogid + ":" + std::to_string(column); }
};

// doculect -> token. A doculect absent from the map is unconstrained; "-" is
// an ordinary value.
using ValueMap = std::map<std::string, std::string>;

struct Site {
    SiteId id;
    ValueMap values;
};

struct CorrespondencePattern {
    std::size_t id = 0;
    ValueMap values;
    std::vector<SiteId> members;  // ascending

    std::size_t size() const noexcept { return members.size(); }
};

struct PatternAssignment {
    std::vector<CorrespondencePattern> patterns;  // patterns[i].id == i
    std::map<SiteId, std::size_t> site_to_pattern;

    std::size_t site_count() const noexcept { return site_to_pattern.size(); }
};

struct InferenceOptions {
    std::size_t max_refinements = 10;
};

inline bool compatible(const ValueMap& a, const ValueMap& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            if (ia->second != ib->second) return false;
            ++ia;
            ++ib;
        }
    }
    return true;
}

namespace detail {

// Sites and patterns are interned into dense rows of token ids, -1 meaning
// unconstrained.
class PatternClusterer {
public:
    explicit PatternClusterer(std::span<const Site> sites) : sites_(sites) {
        std::map<std::string, std::size_t> doculect_index;
        for (const auto& site : sites) {
            for (const auto& [doculect, _] : site.values) doculect_index.emplace(doculect, 0);
        }
        std::size_t next = 0;
        for (auto& [name, idx] : doculect_index) {
            idx = next++;
            doculects_.push_back(name);
        }
        std::unordered_map<std::string, std::int32_t> token_index;
        rows_.assign(sites.size(), std::vector<std::int32_t>(doculects_.size(), -1));
        for (std::size_t s = 0; s < sites.size(); ++s) {
            for (const auto& [doculect, token] : sites[s].values) {
                auto [it, fresh] = token_index.emplace(token, static_cast<std::int32_t>(tokens_.size()));
                if (fresh) tokens_.push_back(token);
                rows_[s][doculect_index.at(doculect)] = it->second;
            }
        }
    }

    PatternAssignment run(const InferenceOptions& options) {
        order_.resize(sites_.size());
        for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
        std::vector<std::size_t> filled(sites_.size());
        for (std::size_t i = 0; i < sites_.size(); ++i) filled[i] = sites_[i].values.size();
        std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            if (filled[a] != filled[b]) return filled[a] > filled[b];
            return sites_[a].id < sites_[b].id;
        });

        owner_.assign(sites_.size(), none);
        for (auto s : order_) place(s, none);

        for (std::size_t pass = 0; pass < options.max_refinements; ++pass) {
            bool changed = false;
            for (auto s : order_) {
                const auto from = owner_[s];
                detach(s);
                place(s, from);
                changed = changed || owner_[s] != from;
            }
            if (!changed) break;
        }
        return collect();
    }

private:
    static constexpr std::size_t none = static_cast<std::size_t>(-1);

    struct Cluster {
        std::vector<std::int32_t> values;
        std::vector<std::size_t> members;
    };

    bool fits(std::size_t site, const Cluster& cluster) const {
        const auto& row = rows_[site];
        for (std::size_t d = 0; d < row.size(); ++d) {
            const auto v = cluster.values[d];
            if (row[d] >= 0 && v >= 0 && row[d] != v) return false;
        }
        return true;
    }

    void absorb(Cluster& cluster, std::size_t site) const {
        const auto& row = rows_[site];
        for (std::size_t d = 0; d < row.size(); ++d) {
            if (row[d] >= 0) cluster.values[d] = row[d];
        }
    }

    void detach(std::size_t site) {
        auto& cluster = clusters_[owner_[site]];
        std::erase(cluster.members, site);
        cluster.values.assign(doculects_.size(), -1);
        for (auto m : cluster.members) absorb(cluster, m);
    }

    // Joins the largest compatible non-empty cluster (lowest index on ties).
    // `home` is the cluster the site just left; if nothing fits and home is
    // now empty the site returns there instead of opening a new cluster.
    void place(std::size_t site, std::size_t home) {
        std::size_t best = none;
        for (std::size_t c = 0; c < clusters_.size(); ++c) {
            const auto& cluster = clusters_[c];
            if (cluster.members.empty() || !fits(site, cluster)) continue;
            if (best == none || cluster.members.size() > clusters_[best].members.size()) best = c;
        }
        if (best == none) {
            if (home != none && clusters_[home].members.empty()) {
                best = home;
            } else {
                best = clusters_.size();
                clusters_.push_back(Cluster{std::vector<std::int32_t>(doculects_.size(), -1), {}});
            }
        }
        clusters_[best].members.push_back(site);
        absorb(clusters_[best], site);
        owner_[site] = best;
    }

    PatternAssignment collect() const {
        PatternAssignment out;
        for (const auto& cluster : clusters_) {
            if (cluster.members.empty()) continue;
            CorrespondencePattern pattern;
            pattern.id = out.patterns.size();
            for (std::size_t d = 0; d < doculects_.size(); ++d) {
                if (cluster.values[d] >= 0) pattern.values.emplace(doculects_[d], tokens_[cluster.values[d]]);
            }
            for (auto m : cluster.members) pattern.members.push_back(sites_[m].id);
            std::sort(pattern.members.begin(), pattern.members.end());
            for (const auto& id : pattern.members) out.site_to_pattern.emplace(id, pattern.id);
            out.patterns.push_back(std::move(pattern));
        }
        return out;
    }

    std::span<const Site> sites_;
    std::vector<std::string> doculects_;
    std::vector<std::string> tokens_;
    std::vector<std::vector<std::int32_t>> rows_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> owner_;
    std::vector<Cluster> clusters_;
};

}  // namespace detail

// Greedy clustering of alignment sites into correspondence patterns.
//
// Sites are visited by number of specified doculects (descending), then by
// site id. Each joins the compatible pattern with the most members, ties to
// the oldest pattern, or opens a new one. Refinement passes then detach and
// re-place every site in the same order until a pass changes nothing or
// max_refinements passes have run.
inline PatternAssignment infer_patterns(std::span<const Site> sites, const InferenceOptions& options = {}) {
    std::set<SiteId> ids;
    for (const auto& site : sites) {
        if (!ids.insert(site.id).second) throw Error(ErrorKind::DuplicateSiteId, site.id.to_string());
    }
    return detail::PatternClusterer(sites).run(options);
}

inline std::vector<std::size_t> pattern_sizes(const PatternAssignment& assignment) {
    std::vector<std::size_t> sizes;
    sizes.reserve(assignment.patterns.size());
    for (const auto& p : assignment.patterns) sizes.push_back(p.size());
    std::sort(sizes.begin(), sizes.end(), std::greater<>{});
    return sizes;
}

// Sites of every kept column in the non-excluded, non-singleton sets of
// `trims`. Where a doculect has several rows in one set, the row whose id
// sorts first supplies the value. Columns that carry only gaps among the
// supplying rows yield no site.
inline std::vector<Site> extract_sites(const Wordlist& wl, const TrimMap& trims) {
    std::vector<Site> sites;
    for (const auto& [cogid, trim] : trims) {
        if (!wl.contains_cogid(cogid)) throw Error(ErrorKind::InconsistentInputs, "unknown cognate set " + cogid);
        if (trim.excluded || wl.is_singleton(cogid)) continue;
        std::map<std::string, const WordRow*> supplier;
        for (auto i : wl.rows_of(cogid)) {
            const auto& row = wl.rows()[i];
            auto [it, fresh] = supplier.emplace(row.doculect, &row);
            if (!fresh && natural_compare(row.id, it->second->id) < 0) it->second = &row;
        }
        for (auto col : trim.kept) {
            Site site{SiteId{cogid, col}, {}};
            bool informative = false;
            for (const auto& [doculect, row] : supplier) {
                if (col >= row->alignment.size()) {
                    throw Error(ErrorKind::InconsistentInputs, "column out of range in cognate set " + cogid);
                }
                const auto& tok = row->alignment[col];
                informative = informative || tok != gap_token;
                site.values.emplace(doculect, tok);
            }
            if (informative) sites.push_back(std::move(site));
        }
    }
    return sites;
}

inline constexpr std::string_view unconstrained_marker = "Ø";

// PATTERN_ID, SIZE, one column per doculect, MEMBERS ("cogid:col" list).
inline void write_patterns(std::ostream& out, const PatternAssignment& assignment,
                           std::span<const std::string> doculects) {
    out << "PATTERN_ID\tSIZE";
    for (const auto& d : doculects) out << '\t' << d;
    out << "\tMEMBERS\n";
    for (const auto& p : assignment.patterns) {
        out << p.id << '\t' << p.size();
        for (const auto& d : doculects) {
            const auto it = p.values.find(d);
            out << '\t' << (it == p.values.end() ? std::string(unconstrained_marker) : it->second);
        }
        std::vector<std::string> members;
        for (const auto& m : p.members) members.push_back(m.to_string());
        out << '\t' << join(members, ",") << '\n';
    }
}

}  // namespace phontrim
