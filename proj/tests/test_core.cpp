#include <doctest.h>

#include <random>

#include "ctxkit/model.hpp"
#include "ctxkit/presets.hpp"
#include "testutil.hpp"

using namespace ctxkit;

TEST_CASE("scenario invariants are enforced at creation") {
    CHECK_THROWS_AS(Scenario::create({"a", "a"}, {{"0", "1"}, {"0", "1"}}, {{"a"}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Scenario::create({"a", "b"}, {{"0", "1"}, {"0", "1"}}, {{"a"}}),
                    std::invalid_argument);  // b not covered
    CHECK_THROWS_AS(Scenario::create({"a", "b"}, {{"0", "1"}, {"0", "1"}},
                                     {{"a", "b"}, {"b", "a"}}),
                    std::invalid_argument);  // duplicate context set
    CHECK_THROWS_AS(Scenario::create({"a"}, {{"0"}}, {{"a"}}), std::invalid_argument);
    CHECK_THROWS_AS(Scenario::create({"a", "b"}, {{"0", "1"}, {"0", "1"}}, {{"a", "a", "b"}}),
                    std::invalid_argument);  // repeated observable in a context
}

TEST_CASE("enumerate_sections follows the canonical lexicographic order") {
    const auto chsh = bell_chsh_scenario();
    const auto sections = enumerate_sections(chsh, 0);
    REQUIRE(sections.size() == 4);
    CHECK(sections[0].outcomes == std::vector<int>{0, 0});
    CHECK(sections[1].outcomes == std::vector<int>{0, 1});
    CHECK(sections[2].outcomes == std::vector<int>{1, 0});
    CHECK(sections[3].outcomes == std::vector<int>{1, 1});
    for (std::size_t i = 0; i < sections.size(); ++i)
        CHECK(section_index(chsh, sections[i]) == i);

    const auto ws = ws_scenario("it", "small", "large", "trophy", "suitcase");
    const auto singles = enumerate_sections(ws, 0);
    REQUIRE(singles.size() == 2);
    CHECK(singles[0].outcomes == std::vector<int>{0});
    CHECK(singles[1].outcomes == std::vector<int>{1});

    const auto mixed = Scenario::create({"u", "v"}, {{"x", "y", "z"}, {"0", "1"}}, {{"u", "v"}});
    const auto sections6 = enumerate_sections(mixed, 0);
    REQUIRE(sections6.size() == 6);
    CHECK(sections6.back().outcomes == std::vector<int>{2, 1});

    CHECK_THROWS_AS(enumerate_sections(chsh, 7), std::out_of_range);
}

TEST_CASE("restrict_section projects, keeps identity, allows empty") {
    const auto chsh = bell_chsh_scenario();
    const Section s{0, {0, 1}};  // (a1,b1) -> (0,1)
    const int b1 = chsh.observable_index("b1");
    const int a1 = chsh.observable_index("a1");

    CHECK(restrict_section(chsh, s, std::vector<int>{b1}) == std::vector<int>{1});
    CHECK(restrict_section(chsh, s, std::vector<int>{a1, b1}) == std::vector<int>{0, 1});
    CHECK(restrict_section(chsh, s, std::vector<int>{}).empty());
    const int a2 = chsh.observable_index("a2");
    CHECK_THROWS_AS(restrict_section(chsh, s, std::vector<int>{a2}), std::invalid_argument);
}

TEST_CASE("marginalize reproduces the Bell-table marginals") {
    const auto model = bell_model();
    const auto& sc = model.scenario;
    const int a1 = sc.observable_index("a1");

    const auto m0 = marginalize(sc, model.distributions[0], std::vector<int>{a1});
    CHECK(m0[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m0[1] == doctest::Approx(0.5).epsilon(1e-12));

    const auto m1 = marginalize(sc, model.distributions[1], std::vector<int>{a1});
    CHECK(m1[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m1[1] == doctest::Approx(0.5).epsilon(1e-12));

    // full-context marginal is the identity
    const auto full = marginalize(sc, model.distributions[0], sc.contexts()[0]);
    CHECK(full == model.distributions[0].probabilities);
}

TEST_CASE("marginalize is compositional and mass preserving") {
    std::mt19937_64 rng(7);
    const auto sc = Scenario::create(
        {"p", "q", "r"}, {{"0", "1"}, {"0", "1", "2"}, {"0", "1"}}, {{"p", "q", "r"}});
    for (int trial = 0; trial < 100; ++trial) {
        const auto model = testutil::random_model(sc, rng);
        const auto& dist = model.distributions[0];
        const std::vector<int> outer{0, 1};  // {p,q}
        const std::vector<int> inner{1};     // {q}

        const auto direct = marginalize(sc, dist, inner);
        const auto to_outer = marginalize(sc, dist, outer);
        ContextDistribution outer_dist;  // distribution over a sub-context is
        outer_dist.context = 0;          // re-expressed via a helper scenario
        const auto helper = Scenario::create({"p", "q"}, {{"0", "1"}, {"0", "1", "2"}},
                                             {{"p", "q"}});
        outer_dist.probabilities = to_outer;
        const auto via = marginalize(helper, outer_dist, std::vector<int>{1});
        REQUIRE(via.size() == direct.size());
        for (std::size_t i = 0; i < via.size(); ++i)
            CHECK(via[i] == doctest::Approx(direct[i]).epsilon(1e-12));

        double in_mass = 0.0, out_mass = 0.0;
        for (double p : dist.probabilities) in_mass += p;
        for (double p : direct) out_mass += p;
        CHECK(out_mass == doctest::Approx(in_mass).epsilon(1e-12));
    }
}

TEST_CASE("max_signalling_deviation on the named models") {
    CHECK(max_signalling_deviation(bell_model()).deviation <= 1e-12);
    CHECK(max_signalling_deviation(pr_box_model()).deviation <= 1e-12);
    CHECK(max_signalling_deviation(sahara_model(true)).deviation <= 1e-9);

    // opposite deterministic rows on contexts sharing one observable
    auto sc = testutil::chain3_scenario();
    EmpiricalModel bad;
    bad.scenario = sc;
    bad.distributions = {{0, {1.0, 0.0, 0.0, 0.0}}, {1, {0.0, 0.0, 0.0, 1.0}}};
    const auto witness = max_signalling_deviation(bad);
    CHECK(witness.deviation == doctest::Approx(1.0));
    CHECK(witness.context_a == 0);
    CHECK(witness.context_b == 1);

    CHECK(is_nonsignalling(bell_model(), 1e-9));
    CHECK(is_nonsignalling(pr_box_model(), 1e-9));
    CHECK(!is_nonsignalling(bad, 1e-9));
    CHECK_THROWS_AS(is_nonsignalling(bad, -1.0), std::invalid_argument);
}

TEST_CASE("symmetrize averages with the mirrored row") {
    const auto sahara = sahara_model(false);
    const auto swapped = symmetrize(sahara, swap_involution(sahara.scenario));
    for (std::size_t c = 0; c < sahara.distributions.size(); ++c)
        CHECK(swapped.distributions[c].probabilities == sahara.distributions[c].probabilities);

    auto sc = testutil::single_context_scenario();
    EmpiricalModel m;
    m.scenario = sc;
    m.distributions = {{0, {1.0, 0.0, 0.0, 0.0}}};
    const auto sym = symmetrize(m, swap_involution(sc));
    CHECK(sym.distributions[0].probabilities == std::vector<double>{0.5, 0.0, 0.0, 0.5});

    const auto pr = pr_box_model();
    const auto pr_sym = symmetrize(pr, swap_involution(pr.scenario));
    for (std::size_t c = 0; c < pr.distributions.size(); ++c)
        CHECK(pr_sym.distributions[c].probabilities == pr.distributions[c].probabilities);

    // not an involution
    OutcomeInvolution bad(sc.observable_count(), std::vector<int>{1, 0});
    bad[0] = {0, 0};
    CHECK_THROWS_AS(symmetrize(m, bad), std::invalid_argument);
    OutcomeInvolution short_list(1, std::vector<int>{1, 0});
    CHECK_THROWS_AS(symmetrize(m, short_list), std::invalid_argument);
}

TEST_CASE("symmetrize is idempotent and kills the swap deviation") {
    std::mt19937_64 rng(11);
    const auto sc = bell_chsh_scenario();
    for (int trial = 0; trial < 100; ++trial) {
        const auto model = testutil::random_model(sc, rng);
        const auto inv = swap_involution(sc);
        const auto once = symmetrize(model, inv);
        const auto twice = symmetrize(once, inv);
        for (std::size_t c = 0; c < once.distributions.size(); ++c) {
            CHECK(twice.distributions[c].probabilities == once.distributions[c].probabilities);
            double before = 0.0, after = 0.0;
            for (double p : model.distributions[c].probabilities) before += p;
            for (double p : once.distributions[c].probabilities) after += p;
            CHECK(after == doctest::Approx(before).epsilon(1e-12));
        }
        // invariance under the involution
        const auto mirrored = symmetrize(once, inv);
        for (std::size_t c = 0; c < once.distributions.size(); ++c)
            for (std::size_t s = 0; s < once.distributions[c].probabilities.size(); ++s)
                CHECK(mirrored.distributions[c].probabilities[s] ==
                      doctest::Approx(once.distributions[c].probabilities[s]).epsilon(1e-12));
    }
}

TEST_CASE("validate reports each broken invariant with its location") {
    CHECK(validate(bell_model(), 1e-6).empty());

    const auto raw = sahara_model(false);
    const auto violations = validate(raw, 1e-6);
    REQUIRE(violations.size() == 4);
    for (const auto& v : violations) {
        CHECK(v.kind == ModelViolation::Kind::normalization);
        CHECK(v.value == doctest::Approx(0.998));
    }
    CHECK(validate(raw, 1e-2).empty());

    auto negative = bell_model();
    negative.distributions[2].probabilities[1] = -0.01;
    bool found = false;
    for (const auto& v : validate(negative, 1.0)) {
        if (v.kind == ModelViolation::Kind::negative_probability) {
            found = true;
            CHECK(v.context == 2);
            CHECK(v.section == 1);
        }
    }
    CHECK(found);

    auto missing = bell_model();
    missing.distributions.pop_back();
    CHECK(validate(missing, 1e-6).size() == 1);

    auto short_row = bell_model();
    short_row.distributions[0].probabilities.pop_back();
    bool row_length = false;
    for (const auto& v : validate(short_row, 1.0))
        if (v.kind == ModelViolation::Kind::row_length) row_length = true;
    CHECK(row_length);
}

TEST_CASE("renormalize rescales rows and rejects zero rows") {
    const auto raw = sahara_model(false);
    const auto normalized = renormalize(raw);
    for (const auto& dist : normalized.distributions) {
        double sum = 0.0;
        for (double p : dist.probabilities) sum += p;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(normalized.distributions[0].probabilities[0] ==
          doctest::Approx(0.402 / 0.998).epsilon(1e-15));

    EmpiricalModel zero;
    zero.scenario = testutil::single_context_scenario();
    zero.distributions = {{0, {0.0, 0.0, 0.0, 0.0}}};
    CHECK_THROWS_AS(renormalize(zero), std::invalid_argument);
}

TEST_CASE("marginalize and section indexing reject bad arguments") {
    const auto model = bell_model();
    const auto& sc = model.scenario;
    const int a2 = sc.observable_index("a2");
    CHECK_THROWS_AS(marginalize(sc, model.distributions[0], std::vector<int>{a2}),
                    std::invalid_argument);  // a2 is not in context {a1,b1}
    CHECK_THROWS_AS(section_from_index(sc, 0, 4), std::out_of_range);
    CHECK_THROWS_AS(section_index(sc, Section{0, {0, 5}}), std::out_of_range);
    CHECK_THROWS_AS(section_index(sc, Section{0, {0}}), std::invalid_argument);
}

TEST_CASE("single-context scenarios are accepted and non-signalling") {
    const auto sc = testutil::single_context_scenario();
    std::mt19937_64 rng(3);
    const auto model = testutil::random_model(sc, rng);
    CHECK(max_signalling_deviation(model).deviation == 0.0);
    CHECK(is_nonsignalling(model, 0.0));
}
