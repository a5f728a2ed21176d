#pragma once

#include <sstream>
#include <string>
#include <string_view>

#include "phontrim/phontrim.hpp"

namespace fixtures {

// Four fictitious languages, one cognate set, seven sites.
inline constexpr std::string_view toy_four_languages =
    "ID\tDOCULECT\tCONCEPT\tCOGID\tALIGNMENT\n"
    "1\tA\tword\t1\ts - t e r b -\n"
    "2\tB\tword\t1\tm e tʰ e - - -\n"
    "3\tC\tword\t1\t- a t e - b u\n"
    "4\tD\tword\t1\t- - t e - b -\n";

// ASHES in five Chibchan languages.
inline constexpr std::string_view chibchan_ashes =
    "ID\tDOCULECT\tCONCEPT\tCOGID\tALIGNMENT\n"
    "1\tBoruca\tASHES\t7\t- - b r u - ŋ - - -\n"
    "2\tCabecar\tASHES\t7\t- - b - u - ɭ i t u\n"
    "3\tChimila\tASHES\t7\t- - b - u h ŋ a ? -\n"
    "4\tMalayo\tASHES\t7\t- - b - i - n - - -\n"
    "5\tNgabere\tASHES\t7\tŋ ɥ b r ɥ - - - - -\n";

// WATER in five Chibchan languages; the last site is mostly gaps.
inline constexpr std::string_view chibchan_water =
    "ID\tDOCULECT\tCONCEPT\tCOGID\tALIGNMENT\n"
    "1\tBoruca\tWATER\t9\td i ?\n"
    "2\tBribri\tWATER\t9\td i ?\n"
    "3\tBuglere\tWATER\t9\ttʃ i -\n"
    "4\tCogui\tWATER\t9\tn i -\n"
    "5\tNgabere\tWATER\t9\tɲ x -\n";

// Quechua root "waɲu" with suffixes after a morpheme boundary in three
// varieties.
inline constexpr std::string_view quechua_morphemes =
    "ID\tDOCULECT\tCONCEPT\tCOGID\tALIGNMENT\n"
    "1\tPacaraos\tCHILD\t3\tw a ɲ u + k u\n"
    "2\tNapo\tCHILD\t3\tw a ɲ u + n a\n"
    "3\tPastaza\tCHILD\t3\tw a ɲ u + n a\n"
    "4\tAyacucho\tCHILD\t3\tw a ɲ u - - -\n"
    "5\tJauja\tCHILD\t3\tw a ɲ u - - -\n"
    "6\tLamas\tCHILD\t3\tw a ɲ u - - -\n";

// Two fictitious words in four languages with crosswise corresponding
// consonants: t/tʰ/t/ts and h/x/x/x.
inline constexpr std::string_view toy_correspondences =
    "ID\tDOCULECT\tCONCEPT\tCOGID\tALIGNMENT\n"
    "1\tA\tfirst\t1\tt a h e\n"
    "2\tB\tfirst\t1\ttʰ a x e\n"
    "3\tC\tfirst\t1\tt a x e\n"
    "4\tD\tfirst\t1\tts a x e\n"
    "5\tA\tsecond\t2\th i t u\n"
    "6\tB\tsecond\t2\tx u tʰ i\n"
    "7\tC\tsecond\t2\tx u t i\n"
    "8\tD\tsecond\t2\tx u ts i\n";

inline phontrim::Wordlist parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    return phontrim::parse_wordlist(in);
}

inline phontrim::AlignmentMatrix matrix(std::string_view text) {
    const auto wl = parse(text);
    return phontrim::matrix_for(wl, wl.cogids().front());
}

inline std::string write(const phontrim::Wordlist& wl) {
    std::ostringstream out;
    phontrim::write_wordlist(out, wl);
    return out.str();
}

inline phontrim::TrimConfig config(phontrim::Strategy s) {
    phontrim::TrimConfig c;
    c.strategy = s;
    return c;
}

}  // namespace fixtures
