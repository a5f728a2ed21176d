#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "phontrim/text.hpp"

namespace phontrim {

enum class SoundClass { Consonant, Vowel, Gap };

inline constexpr std::string_view gap_token = "-";

inline char to_char(SoundClass c) noexcept {
    switch (c) {
        case SoundClass::Consonant: return 'C';
        case SoundClass::Vowel: return 'V';
        case SoundClass::Gap: return '-';
    }
    return '?';
}

inline bool is_combining_mark(char32_t cp) noexcept {
    return (cp >= 0x0300 && cp <= 0x036F) || (cp >= 0x1AB0 && cp <= 0x1AFF) ||
           (cp >= 0x1DC0 && cp <= 0x1DFF) || (cp >= 0x20D0 && cp <= 0x20FF) ||
           (cp >= 0xFE20 && cp <= 0xFE2F);
}

// Precomposed Latin vowels with tone, length or nasality marks, mapped to
// their base letter so that e.g. "ũ" and "ũ" classify the same way.
inline char32_t strip_precomposed(char32_t cp) noexcept {
    static const std::map<char32_t, char32_t> table = [] {
        std::map<char32_t, char32_t> t;
        auto add = [&t](std::u32string_view forms, char32_t base) {
            for (char32_t f : forms) t.emplace(f, base);
        };
        add(U"àáâãäåāăąǎȁȃȧạảấầẩẫậắằẳẵặ", U'a');
        add(U"èéêëēĕėęěȅȇẹẻẽếềểễệ", U'e');
        add(U"ìíîïĩīĭįǐȉȋịỉı", U'i');
        add(U"òóôõöōŏőǒȍȏȯọỏốồổỗộớờởỡợơ", U'o');
        add(U"ùúûüũūŭůűųǔȕȗụủứừửữựư", U'u');
        add(U"ýÿŷȳỳỵỷỹ", U'y');
        add(U"ǣǽ", U'æ');
        add(U"ǿ", U'ø');
        return t;
    }();
    const auto it = table.find(cp);
    return it == table.end() ? cp : it->second;
}

// Heuristic consonant/vowel classifier standing in for a full sound
// catalogue. Overrides win over the inventory; "-" is always a gap.
struct CvMap {
    std::set<char32_t> vowel_inventory;
    std::map<std::string, SoundClass, std::less<>> overrides;

    static CvMap defaults() {
        CvMap m;
        for (char32_t c : std::u32string_view(U"aeiouyæɐɑɒɔəɘɛɜɞɨɪɯɵøœɶʉʊʌʏɤ")) {
            m.vowel_inventory.insert(c);
        }
        return m;
    }
};

inline SoundClass classify_token(std::string_view token, const CvMap& cv_map) {
    if (token == gap_token) return SoundClass::Gap;
    if (auto it = cv_map.overrides.find(token); it != cv_map.overrides.end()) return it->second;
    std::size_t pos = 0;
    while (pos < token.size()) {
        const char32_t cp = next_code_point(token, pos);
        if (is_combining_mark(cp)) continue;
        return cv_map.vowel_inventory.contains(strip_precomposed(cp)) ? SoundClass::Vowel
                                                                     : SoundClass::Consonant;
    }
    return SoundClass::Consonant;
}

}  // namespace phontrim
