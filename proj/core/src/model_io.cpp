#include "ctxkit/model_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace ctxkit {

using nlohmann::json;

std::string format_double(double value) {
    if (value == 0.0) return "0";  // normalizes -0
    // shortest round-trip representation, locale independent
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

namespace {

// Locale-independent full-string double parse; empty on failure.
std::optional<double> parse_decimal(std::string_view text) {
    double value = 0.0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc{} || result.ptr != text.data() + text.size())
        return std::nullopt;
    return value;
}

}  // namespace

double parse_probability(const std::string& text, const std::string& path) {
    const auto slash = text.find('/');
    double value = 0.0;
    if (slash != std::string::npos) {
        const auto num = parse_decimal(std::string_view(text).substr(0, slash));
        const auto den = parse_decimal(std::string_view(text).substr(slash + 1));
        if (!num || !den || *den == 0.0)
            throw ParseError(path, "bad fraction '" + text + "'");
        value = *num / *den;
    } else {
        const auto parsed = parse_decimal(text);
        if (!parsed) throw ParseError(path, "cannot parse probability '" + text + "'");
        value = *parsed;
    }
    if (!std::isfinite(value)) throw ParseError(path, "non-finite probability");
    return value;
}

namespace {

double probability_from_json(const json& j, const std::string& path) {
    if (j.is_number()) {
        const double value = j.get<double>();
        if (!std::isfinite(value)) throw ParseError(path, "non-finite probability");
        return value;
    }
    if (j.is_string()) return parse_probability(j.get<std::string>(), path);
    throw ParseError(path, "probability must be a number or string");
}

void reject_unknown_keys(const json& obj, const std::vector<std::string>& known,
                         const std::string& path) {
    for (const auto& item : obj.items()) {
        if (std::find(known.begin(), known.end(), item.key()) == known.end())
            throw ParseError(path + "/" + item.key(), "unknown key");
    }
}

std::vector<std::string> string_list(const json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError(path, "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string())
            throw ParseError(path + "/" + std::to_string(i), "expected a string");
        out.push_back(j[i].get<std::string>());
    }
    return out;
}

// Parsed pieces of the "scenario" object, before invariant checking.
struct RawScenario {
    std::vector<std::string> observables;
    std::vector<std::vector<std::string>> outcomes;
    std::vector<std::vector<std::string>> contexts;
};

RawScenario parse_scenario(const json& j) {
    if (!j.is_object()) throw ParseError("/scenario", "expected an object");
    reject_unknown_keys(j, {"observables", "outcomes", "contexts"}, "/scenario");
    for (const char* key : {"observables", "outcomes", "contexts"})
        if (!j.contains(key))
            throw ParseError(std::string("/scenario/") + key, "missing key");

    RawScenario raw;
    raw.observables = string_list(j["observables"], "/scenario/observables");

    const json& outcomes = j["outcomes"];
    if (outcomes.is_array()) {
        const auto shared = string_list(outcomes, "/scenario/outcomes");
        raw.outcomes.assign(raw.observables.size(), shared);
    } else if (outcomes.is_object()) {
        for (const auto& item : outcomes.items()) {
            if (std::find(raw.observables.begin(), raw.observables.end(), item.key()) ==
                raw.observables.end())
                throw ParseError("/scenario/outcomes/" + item.key(), "unknown observable");
        }
        for (const auto& name : raw.observables) {
            if (!outcomes.contains(name))
                throw ParseError("/scenario/outcomes", "no outcomes for observable '" + name + "'");
            raw.outcomes.push_back(string_list(outcomes[name], "/scenario/outcomes/" + name));
        }
    } else {
        throw ParseError("/scenario/outcomes", "expected an array or an object");
    }

    const json& contexts = j["contexts"];
    if (!contexts.is_array()) throw ParseError("/scenario/contexts", "expected an array");
    for (std::size_t c = 0; c < contexts.size(); ++c)
        raw.contexts.push_back(string_list(contexts[c], "/scenario/contexts/" + std::to_string(c)));
    return raw;
}

}  // namespace

std::string section_key(const Scenario& scenario, int context, std::size_t index) {
    const auto section = section_from_index(scenario, context, index);
    const auto& obs = scenario.contexts()[context];
    std::string key;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        if (i) key += ',';
        key += scenario.observables()[obs[i]];
        key += '=';
        key += scenario.outcomes()[obs[i]][section.outcomes[i]];
    }
    return key;
}

LoadResult parse_model(const std::string& text, const LoadOptions& options) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError("/", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("/", "expected a top-level object");
    reject_unknown_keys(doc, {"scenario", "distributions"}, "");
    if (!doc.contains("scenario")) throw ParseError("/scenario", "missing key");
    if (!doc.contains("distributions")) throw ParseError("/distributions", "missing key");

    LoadResult result;
    const RawScenario raw = parse_scenario(doc["scenario"]);
    for (const auto& problem : check_scenario_definition(raw.observables, raw.outcomes, raw.contexts))
        result.diagnostics.push_back({"/scenario", problem});
    if (!result.diagnostics.empty()) return result;

    const Scenario scenario = Scenario::create(raw.observables, raw.outcomes, raw.contexts);

    const json& dists = doc["distributions"];
    if (!dists.is_array()) throw ParseError("/distributions", "expected an array");
    if (dists.size() != scenario.context_count()) {
        result.diagnostics.push_back(
            {"/distributions", "expected " + std::to_string(scenario.context_count()) +
                                   " rows, got " + std::to_string(dists.size())});
        return result;
    }

    EmpiricalModel model;
    model.scenario = scenario;
    for (std::size_t c = 0; c < dists.size(); ++c) {
        const std::string path = "/distributions/" + std::to_string(c);
        const json& row = dists[c];
        const std::size_t want = scenario.section_count(static_cast<int>(c));
        ContextDistribution dist;
        dist.context = static_cast<int>(c);
        if (row.is_array()) {
            for (std::size_t s = 0; s < row.size(); ++s)
                dist.probabilities.push_back(
                    probability_from_json(row[s], path + "/" + std::to_string(s)));
        } else if (row.is_object()) {
            if (want > (std::size_t{1} << 20))
                throw ParseError(path, "context too large for object-form rows");
            std::unordered_map<std::string, std::size_t> keys;
            for (std::size_t s = 0; s < want; ++s)
                keys.emplace(section_key(scenario, static_cast<int>(c), s), s);
            dist.probabilities.assign(want, 0.0);
            for (const auto& item : row.items()) {
                const auto it = keys.find(item.key());
                if (it == keys.end()) {
                    result.diagnostics.push_back(
                        {path + "/" + item.key(), "unrecognized section key"});
                    continue;
                }
                dist.probabilities[it->second] =
                    probability_from_json(item.value(), path + "/" + item.key());
            }
        } else {
            throw ParseError(path, "expected an array or an object");
        }
        model.distributions.push_back(std::move(dist));
    }

    if (options.renormalize) {
        try {
            model = renormalize(model);
        } catch (const std::invalid_argument& e) {
            result.diagnostics.push_back({"/distributions", e.what()});
            return result;
        }
    }

    for (const auto& v : validate(model, options.normalization_tol)) {
        std::string path = "/distributions";
        if (v.context >= 0) path += "/" + std::to_string(v.context);
        if (v.section >= 0) {
            if (v.context >= 0 &&
                model.distributions[static_cast<std::size_t>(v.context)].probabilities.size() ==
                    model.scenario.section_count(v.context))
                path += "/" + section_key(model.scenario, v.context,
                                          static_cast<std::size_t>(v.section));
            else
                path += "/" + std::to_string(v.section);
        }
        result.diagnostics.push_back({path, v.message});
    }
    result.model = std::move(model);
    return result;
}

LoadResult load_model_file(const std::filesystem::path& path, const LoadOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (!in.good() && !in.eof())
        throw std::runtime_error("cannot read '" + path.string() + "'");
    return parse_model(buffer.str(), options);
}

std::string serialize_model(const EmpiricalModel& model) {
    const Scenario& sc = model.scenario;
    json scenario;
    scenario["observables"] = sc.observables();
    json outcomes = json::object();
    for (std::size_t i = 0; i < sc.observable_count(); ++i)
        outcomes[sc.observables()[i]] = sc.outcomes()[i];
    scenario["outcomes"] = outcomes;
    json contexts = json::array();
    for (const auto& ctx : sc.contexts()) {
        json names = json::array();
        for (int o : ctx) names.push_back(sc.observables()[o]);
        contexts.push_back(names);
    }
    scenario["contexts"] = contexts;

    json dists = json::array();
    for (std::size_t c = 0; c < model.distributions.size(); ++c) {
        json row = json::object();
        const auto& probs = model.distributions[c].probabilities;
        for (std::size_t s = 0; s < probs.size(); ++s)
            row[section_key(sc, static_cast<int>(c), s)] = format_double(probs[s]);
        dists.push_back(row);
    }

    json doc;
    doc["scenario"] = scenario;
    doc["distributions"] = dists;
    return doc.dump(2) + "\n";
}

void save_model_file(const EmpiricalModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << serialize_model(model);
    if (!out.good()) throw std::runtime_error("cannot write '" + path.string() + "'");
}

}  // namespace ctxkit
