#include "ctxkit/presets.hpp"

#include <stdexcept>

namespace ctxkit {

namespace {

EmpiricalModel with_rows(Scenario scenario, std::vector<std::vector<double>> rows) {
    EmpiricalModel model;
    model.scenario = std::move(scenario);
    for (std::size_t c = 0; c < rows.size(); ++c)
        model.distributions.push_back({static_cast<int>(c), std::move(rows[c])});
    return model;
}

std::string paired(const std::string& pronoun, const std::string& word) {
    return "(" + pronoun + "," + word + ")";
}

}  // namespace

Scenario bell_chsh_scenario() {
    return Scenario::create(
        {"a1", "a2", "b1", "b2"},
        {{"0", "1"}, {"0", "1"}, {"0", "1"}, {"0", "1"}},
        {{"a1", "b1"}, {"a1", "b2"}, {"a2", "b1"}, {"a2", "b2"}});
}

EmpiricalModel bell_model() {
    return with_rows(bell_chsh_scenario(),
                     {{0.5, 0.0, 0.0, 0.5},
                      {0.375, 0.125, 0.125, 0.375},
                      {0.375, 0.125, 0.125, 0.375},
                      {0.125, 0.375, 0.375, 0.125}});
}

EmpiricalModel pr_box_model() {
    return with_rows(bell_chsh_scenario(),
                     {{0.5, 0.0, 0.0, 0.5},
                      {0.0, 0.5, 0.5, 0.0},
                      {0.5, 0.0, 0.0, 0.5},
                      {0.5, 0.0, 0.0, 0.5}});
}

Scenario pr_prism_scenario() {
    return Scenario::create(
        {"x1", "x2", "x3"},
        {{"0", "1"}, {"0", "1"}, {"0", "1"}},
        {{"x1", "x2"}, {"x2", "x3"}, {"x3", "x1"}});
}

EmpiricalModel pr_prism_model() {
    return with_rows(pr_prism_scenario(),
                     {{0.5, 0.0, 0.0, 0.5},
                      {0.5, 0.0, 0.0, 0.5},
                      {0.0, 0.5, 0.5, 0.0}});
}

Scenario ws_scenario(const std::string& pronoun, const std::string& special,
                     const std::string& alternate, const std::string& noun_a,
                     const std::string& noun_b) {
    if (special == alternate)
        throw std::invalid_argument("ws_scenario: special and alternate words must differ");
    if (noun_a == noun_b)
        throw std::invalid_argument("ws_scenario: the two referents must differ");
    const std::string obs_s = paired(pronoun, special);
    const std::string obs_a = paired(pronoun, alternate);
    return Scenario::create({obs_s, obs_a},
                            {{noun_a, noun_b}, {noun_a, noun_b}},
                            {{obs_s}, {obs_a}});
}

Scenario generalized_ws_scenario(const std::string& pronoun1, const std::string& special1,
                                 const std::string& alternate1, const std::string& pronoun2,
                                 const std::string& special2, const std::string& alternate2) {
    if (special1 == alternate1 || special2 == alternate2)
        throw std::invalid_argument(
            "generalized_ws_scenario: special and alternate words must differ per pronoun");
    const std::string s1 = paired(pronoun1, special1);
    const std::string a1 = paired(pronoun1, alternate1);
    const std::string s2 = paired(pronoun2, special2);
    const std::string a2 = paired(pronoun2, alternate2);
    const std::vector<std::string> outcomes{"A", "B"};
    return Scenario::create({s1, a1, s2, a2},
                            {outcomes, outcomes, outcomes, outcomes},
                            {{s1, s2}, {s1, a2}, {a1, s2}, {a1, a2}});
}

EmpiricalModel sahara_model(bool do_renormalize) {
    auto model = with_rows(
        generalized_ws_scenario("one1", "canni", "herbi", "one2", "hungry", "alive"),
        {{0.402, 0.097, 0.097, 0.402},
         {0.044, 0.455, 0.455, 0.044},
         {0.345, 0.154, 0.154, 0.345},
         {0.344, 0.155, 0.155, 0.344}});
    return do_renormalize ? renormalize(model) : model;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"bell", "pr-box", "pr-prism",
                                                "ws", "gen-ws", "sahara"};
    return names;
}

std::optional<Preset> find_preset(std::string_view name) {
    if (name == "bell")
        return Preset{"bell", "Bell-state model on the Bell-CHSH scenario", bell_model()};
    if (name == "pr-box")
        return Preset{"pr-box", "PR box on the Bell-CHSH scenario", pr_box_model()};
    if (name == "pr-prism")
        return Preset{"pr-prism", "strongly contextual triangle model", pr_prism_model()};
    if (name == "ws") {
        // trophy/suitcase answer key: "small" picks the suitcase, "large" the trophy
        auto scenario = ws_scenario("it", "small", "large", "trophy", "suitcase");
        auto model = with_rows(std::move(scenario), {{0.0, 1.0}, {1.0, 0.0}});
        return Preset{"ws", "deterministic Winograd-schema model (trophy/suitcase)",
                      std::move(model)};
    }
    if (name == "gen-ws") {
        auto scenario = generalized_ws_scenario("one1", "canni", "herbi", "one2", "hungry", "alive");
        const std::vector<double> uniform{0.25, 0.25, 0.25, 0.25};
        auto model = with_rows(std::move(scenario), {uniform, uniform, uniform, uniform});
        return Preset{"gen-ws", "uniform model on the generalised Winograd-schema scenario",
                      std::move(model)};
    }
    if (name == "sahara")
        return Preset{"sahara", "crowd-sourced generalised Winograd-schema model",
                      sahara_model(false), true};
    return std::nullopt;
}

}  // namespace ctxkit
