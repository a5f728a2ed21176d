#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "phontrim/pipeline.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using phontrim::Strategy;

namespace {

// Three copies of one cognate set over four doculects, optionally with a
// suffix site present in a single doculect.
phontrim::Wordlist identical_sets(bool with_suffix) {
    std::string text = "ID\tDOCULECT\tCONCEPT\tCOGID\tALIGNMENT\n";
    const std::vector<std::string> forms{"t a k u", "d a k u", "t e x u", "t a k o"};
    const std::vector<std::string> suffix{"n", "-", "-", "-"};
    std::size_t id = 1;
    for (int set = 1; set <= 3; ++set) {
        for (std::size_t d = 0; d < forms.size(); ++d) {
            text += std::to_string(id++) + "\tL" + std::to_string(d) + "\tc" + std::to_string(set) + "\t" +
                    std::to_string(set) + "\t" + forms[d] + (with_suffix ? " " + suffix[d] : "") + "\n";
        }
    }
    return fixtures::parse(text);
}

}  // namespace

TEST_CASE("perfectly regular data", "[pipeline]") {
    const auto r = phontrim::run_pipeline(identical_sets(false), Strategy::None, {});
    CHECK(phontrim::pattern_sizes(r.assignment) == std::vector<std::size_t>{3, 3, 3, 3});
    CHECK(r.report.p_regular_patterns == 1.0);
    CHECK(r.report.w_regular_words == 1.0);
    CHECK(r.report.all_words == 12);
}

TEST_CASE("spurious suffix sites are trimmed back to the clean result", "[pipeline]") {
    const auto clean = phontrim::run_pipeline(identical_sets(false), Strategy::None, {});
    const auto noisy = identical_sets(true);
    for (const auto& cogid : noisy.cogids()) {
        // 3 of 4 rows are gaps: at or above the default threshold
        CHECK(phontrim::gap_profile(phontrim::matrix_for(noisy, cogid))[4] == 0.75);
    }
    const auto gap = phontrim::run_pipeline(noisy, Strategy::GapOriented, {});
    for (const auto& [cogid, t] : gap.trims) CHECK(t.removed == std::vector<std::size_t>{4});
    CHECK(gap.report.p_regular_patterns == clean.report.p_regular_patterns);
    CHECK(gap.report.w_regular_words == clean.report.w_regular_words);

    // the identical suffix recurs three times, so even untrimmed it is a pattern
    const auto untrimmed = phontrim::run_pipeline(noisy, Strategy::None, {});
    CHECK(untrimmed.report.all_patterns == 5);
}

TEST_CASE("trimming is the identity on gap-free data", "[pipeline]") {
    const auto wl = identical_sets(false);
    auto none = phontrim::run_pipeline(wl, Strategy::None, {}).report;
    auto gap = phontrim::run_pipeline(wl, Strategy::GapOriented, {}).report;
    auto core = phontrim::run_pipeline(wl, Strategy::CoreOriented, {}).report;
    gap.strategy = core.strategy = none.strategy;
    CHECK(gap == none);
    CHECK(core == none);
}

TEST_CASE("exceed fraction counts strict wins only", "[pipeline]") {
    const std::vector<double> ws{0.40, 0.45, 0.55};
    CHECK(phontrim::exceed_fraction(ws, 0.50) == Catch::Approx(1.0 / 3.0));
    const std::vector<double> ties{0.5, 0.5};
    CHECK(phontrim::exceed_fraction(ties, 0.5) == 0.0);
    CHECK(phontrim::exceed_fraction({}, 0.5) == 0.0);
}

TEST_CASE("random baseline with nothing to mirror equals the targeted run", "[pipeline][random]") {
    phontrim::ExperimentConfig config;
    config.random_iterations = 10;
    const auto wl = identical_sets(false);
    const auto b = phontrim::run_random_baseline(wl, Strategy::GapOriented, config);
    REQUIRE(b.iteration_w.size() == 10);
    for (double w : b.iteration_w) CHECK(w == b.targeted_w);
    CHECK(b.exceed_fraction == 0.0);
    CHECK(b.mean_w == b.targeted_w);
}

TEST_CASE("random baseline is reproducible and schedule independent", "[pipeline][random]") {
    gen::Rng rng(8);
    const auto wl = gen::random_wordlist(rng, {.cognate_sets = 25, .doculects = 6});
    phontrim::ExperimentConfig config;
    config.random_iterations = 20;
    const auto a = phontrim::run_random_baseline(wl, Strategy::GapOriented, config);
    const auto b = phontrim::run_random_baseline(wl, Strategy::GapOriented, config);
    CHECK(a == b);
    config.threads = 4;
    const auto c = phontrim::run_random_baseline(wl, Strategy::GapOriented, config);
    CHECK(a == c);
    CHECK(a.exceed_fraction == phontrim::exceed_fraction(a.iteration_w, a.targeted_w));
    config.base_seed = 43;
    const auto d = phontrim::run_random_baseline(wl, Strategy::GapOriented, config);
    CHECK(d.iteration_w.size() == a.iteration_w.size());
}

TEST_CASE("random baseline needs a trimming strategy and iterations", "[pipeline][random]") {
    const auto wl = identical_sets(false);
    phontrim::ExperimentConfig config;
    CHECK_THROWS_AS(phontrim::run_random_baseline(wl, Strategy::None, config), phontrim::Error);
    config.random_iterations = 0;
    CHECK_THROWS_AS(phontrim::run_random_baseline(wl, Strategy::GapOriented, config), phontrim::Error);
}

TEST_CASE("seed derivation is fixed", "[pipeline][random]") {
    // frozen so that reports stay comparable across builds
    CHECK(phontrim::mix64(0) == 0xE220A8397B1DCDAFULL);
    CHECK(phontrim::derive_seed(42, 0) != phontrim::derive_seed(42, 1));
    CHECK(phontrim::derive_seed(42, 1) != phontrim::derive_seed(43, 1));
}

TEST_CASE("distribution export", "[pipeline]") {
    phontrim::PatternAssignment a;
    for (std::size_t size : {2, 5, 2}) {
        phontrim::CorrespondencePattern p;
        p.id = a.patterns.size();
        for (std::size_t k = 0; k < size; ++k) p.members.push_back({std::to_string(p.id), k});
        a.patterns.push_back(p);
    }
    const phontrim::PatternAssignment empty;
    const std::vector<phontrim::LabeledAssignment> labeled{{"gap", &a}, {"none", &empty}};
    const auto rows = phontrim::export_distribution(labeled);
    CHECK(rows == std::vector<phontrim::DistributionRow>{{"gap", 1, 5}, {"gap", 2, 2}, {"gap", 3, 2}});

    const auto toy = phontrim::run_pipeline(fixtures::parse(fixtures::toy_correspondences), Strategy::None, {});
    const std::vector<phontrim::LabeledAssignment> one{{"none", &toy.assignment}};
    const auto toy_rows = phontrim::export_distribution(one);
    REQUIRE(toy_rows.size() >= 2);
    CHECK(toy_rows[0] == phontrim::DistributionRow{"none", 1, 2});
    CHECK(toy_rows[1] == phontrim::DistributionRow{"none", 2, 2});

    std::ostringstream out;
    phontrim::write_distribution(out, rows);
    CHECK(out.str() == "STRATEGY\tRANK\tSIZE\ngap\t1\t5\ngap\t2\t2\ngap\t3\t2\n");
}

TEST_CASE("compare covers every strategy and mirrors only trimming ones", "[pipeline]") {
    gen::Rng rng(4);
    const auto wl = gen::random_wordlist(rng, {.cognate_sets = 15});
    phontrim::ExperimentConfig config;
    config.random_iterations = 5;
    const auto c = phontrim::compare(wl, config);
    REQUIRE(c.reports.size() == 3);
    REQUIRE(c.baselines.size() == 2);
    CHECK(c.baselines[0].strategy == Strategy::CoreOriented);
    CHECK(c.baselines[1].strategy == Strategy::GapOriented);
    for (const auto& r : c.reports) CHECK(r.all_words == c.reports[0].all_words);
    for (const auto& b : c.baselines) CHECK((b.exceed_fraction >= 0.0 && b.exceed_fraction <= 1.0));

    std::ostringstream tsv;
    phontrim::write_comparison_tsv(tsv, c);
    CHECK(tsv.str().find("gap/random\t5\t42\t") != std::string::npos);
    const auto j = phontrim::to_json(c);
    CHECK(j["random"].size() == 2);
    CHECK(j["reports"][2]["strategy"] == "gap");
}
