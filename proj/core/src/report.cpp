#include "ctxkit/report.hpp"

#include <sstream>

#include <json.hpp>

#include "ctxkit/model_io.hpp"
#include "ctxkit/version.hpp"

namespace ctxkit {

using nlohmann::json;

AnalysisReport analyze(const EmpiricalModel& model, const std::string& input,
                       const AnalyzeOptions& options) {
    AnalysisReport report;
    report.input = input;
    report.options = options;
    report.n_observables = model.scenario.observable_count();
    report.n_contexts = model.scenario.context_count();

    const auto witness = max_signalling_deviation(model);
    report.max_deviation = witness.deviation;
    report.nonsignalling = witness.deviation <= options.lp_tol;

    const bool need_cf = options.want_cf || options.want_emeriau;
    const bool need_sf = options.want_sf || options.want_emeriau;
    if (need_cf) {
        try {
            const auto result = contextual_fraction(model, options.global_limit, options.lp_tol);
            report.cf = result.cf;
            report.cf_iterations = result.lp_iterations;
        } catch (const std::exception& e) {
            report.cf_note = e.what();
        }
    }
    if (need_sf) {
        try {
            const auto result = signalling_fraction(model, options.lp_tol);
            report.sf = result.sf;
            report.sf_iterations = result.lp_iterations;
        } catch (const std::exception& e) {
            report.sf_note = e.what();
        }
    }
    if (options.want_emeriau && report.cf && report.sf) {
        const double bound = 2.0 * static_cast<double>(report.n_contexts) * *report.sf;
        report.emeriau_slack = *report.cf - bound;
        report.emeriau_conclusive = *report.cf > bound;
    }
    if (options.want_chsh) {
        try {
            report.chsh = cyclic_violation(model);
        } catch (const std::exception& e) {
            report.chsh_note = e.what();
        }
    }
    if (options.want_cbd) {
        try {
            report.cbd = classify_cbd(model);
        } catch (const std::exception& e) {
            report.cbd_note = e.what();
        }
    }

    bool deterministic = true;
    for (const auto& dist : model.distributions)
        for (double p : dist.probabilities)
            if (p != 0.0 && p != 1.0) deterministic = false;
    if (deterministic && report.cf && *report.cf == 0.0) report.note = "deterministic, non-contextual";
    return report;
}

std::string report_json(const AnalysisReport& r) {
    json doc;
    doc["version"] = kVersion;
    doc["input"] = r.input;
    doc["scenario"] = {{"n_observables", r.n_observables}, {"n_contexts", r.n_contexts}};
    doc["tolerances"] = {{"lp", r.options.lp_tol}, {"normalization", r.options.normalization_tol}};
    doc["nonsignalling"] = {{"flag", r.nonsignalling}, {"max_deviation", r.max_deviation}};

    if (r.options.want_cf) {
        if (r.cf)
            doc["cf"] = {{"value", *r.cf}, {"iterations", r.cf_iterations}};
        else
            doc["cf"] = {{"note", r.cf_note}};
    }
    if (r.options.want_sf) {
        if (r.sf)
            doc["sf"] = {{"value", *r.sf}, {"iterations", r.sf_iterations}};
        else
            doc["sf"] = {{"note", r.sf_note}};
    }
    if (r.options.want_emeriau) {
        if (r.emeriau_conclusive)
            doc["emeriau"] = {{"conclusive", *r.emeriau_conclusive},
                              {"slack", r.emeriau_slack},
                              {"n_contexts", r.n_contexts}};
        else
            doc["emeriau"] = {{"note", "requires both cf and sf"}};
    }
    if (r.options.want_chsh) {
        if (r.chsh) {
            doc["chsh"] = {{"applicable", true},
                           {"n", r.chsh->n},
                           {"correlations", r.chsh->correlations},
                           {"s_odd", r.chsh->s_odd_value},
                           {"violation", r.chsh->violation}};
        } else {
            doc["chsh"] = {{"applicable", false}, {"note", r.chsh_note}};
        }
    }
    if (r.options.want_cbd) {
        if (r.cbd) {
            doc["cbd"] = {{"applicable", true},
                          {"delta", r.cbd->delta},
                          {"delta_below_2", r.cbd->delta < 2.0},
                          {"s_odd", r.cbd->s_odd_value},
                          {"cnt1", r.cbd->cnt1},
                          {"contextual", r.cbd->contextual}};
            // the delta < 2 threshold style and the cnt1 > 0 verdict only
            // coincide when s_odd saturates; call out when they differ
            if ((r.cbd->delta < 2.0) != r.cbd->contextual)
                doc["cbd"]["threshold_disagrees"] = true;
        } else {
            doc["cbd"] = {{"applicable", false}, {"note", r.cbd_note}};
        }
    }
    if (!r.note.empty()) doc["note"] = r.note;
    return doc.dump(2) + "\n";
}

namespace {

std::string join_doubles(const std::vector<double>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += format_double(values[i]);
    }
    return out + "]";
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string report_table(const AnalysisReport& r) {
    std::ostringstream out;
    auto line = [&](const std::string& key, const std::string& value) {
        out << key;
        for (std::size_t i = key.size(); i < 18; ++i) out << ' ';
        out << value << '\n';
    };
    line("input:", r.input);
    line("observables:", std::to_string(r.n_observables));
    line("contexts:", std::to_string(r.n_contexts));
    line("max deviation:", format_double(r.max_deviation));
    line("non-signalling:", std::string(r.nonsignalling ? "yes" : "no") + " (tol " +
                                format_double(r.options.lp_tol) + ")");
    if (r.options.want_cf)
        line("cf:", r.cf ? format_double(*r.cf) + " (iterations " +
                               std::to_string(r.cf_iterations) + ")"
                         : "n/a: " + r.cf_note);
    if (r.options.want_sf)
        line("sf:", r.sf ? format_double(*r.sf) + " (iterations " +
                               std::to_string(r.sf_iterations) + ")"
                         : "n/a: " + r.sf_note);
    if (r.options.want_emeriau) {
        if (r.emeriau_conclusive)
            line("emeriau:", std::string(*r.emeriau_conclusive ? "conclusive" : "inconclusive") +
                                 " (slack " + format_double(r.emeriau_slack) + ", |M|=" +
                                 std::to_string(r.n_contexts) + ")");
        else
            line("emeriau:", "n/a: requires both cf and sf");
    }
    if (r.options.want_chsh) {
        if (r.chsh)
            line("chsh violation:", format_double(r.chsh->violation) + " (n=" +
                                        std::to_string(r.chsh->n) + ", s_odd=" +
                                        format_double(r.chsh->s_odd_value) + ", correlations " +
                                        join_doubles(r.chsh->correlations) + ")");
        else
            line("chsh violation:", "n/a: " + r.chsh_note);
    }
    if (r.options.want_cbd) {
        if (r.cbd) {
            std::string value = "cnt1=" + format_double(r.cbd->cnt1) + " (=cnt2), delta=" +
                                format_double(r.cbd->delta) + ", " +
                                (r.cbd->contextual ? "contextual" : "not contextual");
            if ((r.cbd->delta < 2.0) != r.cbd->contextual)
                value += " (delta<2 disagrees with the cnt1 verdict)";
            line("cbd:", value);
        } else {
            line("cbd:", "n/a: " + r.cbd_note);
        }
    }
    if (!r.note.empty()) line("note:", r.note);
    return out.str();
}

std::string batch_csv_header() {
    return "file,status,n_observables,n_contexts,max_signalling_deviation,nonsignalling,"
           "cf,sf,sf_threshold,sf_below,emeriau_conclusive,emeriau_slack,"
           "violation,delta,cnt1,cbd_contextual,error\n";
}

std::string batch_csv_row(const std::string& file, const AnalysisReport& r) {
    std::ostringstream out;
    out << csv_escape(file) << ",ok," << r.n_observables << ',' << r.n_contexts << ','
        << format_double(r.max_deviation) << ',' << (r.nonsignalling ? "true" : "false") << ',';
    if (r.cf) out << format_double(*r.cf);
    out << ',';
    if (r.sf) out << format_double(*r.sf);
    out << ',';
    const double threshold = 1.0 / (2.0 * static_cast<double>(r.n_contexts));
    out << format_double(threshold) << ',';
    if (r.sf) out << (*r.sf < threshold ? "true" : "false");
    out << ',';
    if (r.emeriau_conclusive) out << (*r.emeriau_conclusive ? "true" : "false");
    out << ',';
    if (r.emeriau_conclusive) out << format_double(r.emeriau_slack);
    out << ',';
    if (r.chsh) out << format_double(r.chsh->violation);
    out << ',';
    if (r.cbd) out << format_double(r.cbd->delta);
    out << ',';
    if (r.cbd) out << format_double(r.cbd->cnt1);
    out << ',';
    if (r.cbd) out << (r.cbd->contextual ? "true" : "false");
    out << ",\n";
    return out.str();
}

std::string batch_csv_error_row(const std::string& file, const std::string& message) {
    return csv_escape(file) + ",error,,,,,,,,,,,,,,," + csv_escape(message) + "\n";
}

}  // namespace ctxkit
