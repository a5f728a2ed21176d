#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace phontrim {

inline std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(text.substr(start));
            return out;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

template <typename Range>
std::string join(const Range& parts, std::string_view sep) {
    std::string out;
    bool first = true;
    for (const auto& part : parts) {
        if (!first) out += sep;
        out += part;
        first = false;
    }
    return out;
}

inline std::string to_upper_ascii(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : static_cast<char>(c);
    });
    return out;
}

inline bool iequals_ascii(std::string_view a, std::string_view b) {
    return to_upper_ascii(a) == to_upper_ascii(b);
}

inline bool is_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Numeric-aware ordering for identifiers: all-digit strings compare by value
// and sort before everything else; other strings compare bytewise.
inline std::strong_ordering natural_compare(std::string_view a, std::string_view b) {
    const bool na = is_digits(a);
    const bool nb = is_digits(b);
    if (na != nb) return na ? std::strong_ordering::less : std::strong_ordering::greater;
    if (na) {
        auto strip = [](std::string_view s) {
            const auto p = s.find_first_not_of('0');
            return p == std::string_view::npos ? std::string_view{} : s.substr(p);
        };
        const auto sa = strip(a);
        const auto sb = strip(b);
        if (sa.size() != sb.size()) return sa.size() <=> sb.size();
        if (auto c = sa.compare(sb); c != 0) return c <=> 0;
    }
    return a.compare(b) <=> 0;
}

struct NaturalLess {
    using is_transparent = void;
    bool operator()(std::string_view a, std::string_view b) const {
        return natural_compare(a, b) < 0;
    }
};

// Decodes one UTF-8 code point starting at `pos` and advances `pos`.
// Malformed bytes decode to U+FFFD one byte at a time.
inline char32_t next_code_point(std::string_view s, std::size_t& pos) {
    constexpr char32_t replacement = 0xFFFD;
    const auto lead = static_cast<unsigned char>(s[pos]);
    if (lead < 0x80) {
        ++pos;
        return lead;
    }
    std::size_t len = 0;
    char32_t cp = 0;
    if (lead >= 0xC0 && lead < 0xE0) {
        len = 2;
        cp = lead & 0x1F;
    } else if (lead >= 0xE0 && lead < 0xF0) {
        len = 3;
        cp = lead & 0x0F;
    } else if (lead >= 0xF0 && lead < 0xF8) {
        len = 4;
        cp = lead & 0x07;
    } else {
        ++pos;
        return replacement;
    }
    if (pos + len > s.size()) {
        ++pos;
        return replacement;
    }
    for (std::size_t i = 1; i < len; ++i) {
        const auto c = static_cast<unsigned char>(s[pos + i]);
        if ((c & 0xC0) != 0x80) {
            ++pos;
            return replacement;
        }
        cp = (cp << 6) | (c & 0x3F);
    }
    pos += len;
    return cp;
}

inline std::vector<char32_t> code_points(std::string_view s) {
    std::vector<char32_t> out;
    std::size_t pos = 0;
    while (pos < s.size()) out.push_back(next_code_point(s, pos));
    return out;
}

}  // namespace phontrim
