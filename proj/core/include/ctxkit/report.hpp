#pragma once

#include <optional>
#include <string>

#include "ctxkit/cbd.hpp"
#include "ctxkit/measures.hpp"

namespace ctxkit {

/// Which measure blocks to compute and the tolerances in force.
struct AnalyzeOptions {
    bool want_cf = true;
    bool want_sf = true;
    bool want_emeriau = true;
    bool want_chsh = true;  // cyclic Bell violation block
    bool want_cbd = true;   // Direct Influence / cnt1 block
    double lp_tol = 1e-9;   // also the non-signalling tolerance
    double normalization_tol = 1e-6;
    std::size_t global_limit = kDefaultGlobalLimit;
};

/// Everything computed for one model. Inapplicable or failed measures keep
/// their value empty and carry a note instead, so one bad block does not
/// sink the rest.
struct AnalysisReport {
    std::string input;  // "preset:<name>" or "file:<path>"
    std::size_t n_observables = 0;
    std::size_t n_contexts = 0;

    double max_deviation = 0.0;
    bool nonsignalling = false;

    std::optional<double> cf;
    int cf_iterations = 0;
    std::string cf_note;

    std::optional<double> sf;
    int sf_iterations = 0;
    std::string sf_note;

    std::optional<bool> emeriau_conclusive;
    double emeriau_slack = 0.0;

    std::optional<CyclicViolation> chsh;
    std::string chsh_note;

    std::optional<CbdResult> cbd;
    std::string cbd_note;

    std::string note;  // e.g. "deterministic, non-contextual"

    AnalyzeOptions options;
};

AnalysisReport analyze(const EmpiricalModel& model, const std::string& input,
                       const AnalyzeOptions& options = {});

/// Deterministic JSON rendering; identical input and tool version give
/// byte-identical output (no timestamps).
std::string report_json(const AnalysisReport& report);

/// Human-readable key/value table.
std::string report_table(const AnalysisReport& report);

/// Batch CSV: header plus one row per analyzed file. Failed files carry
/// status "error" and the message in the last column.
std::string batch_csv_header();
std::string batch_csv_row(const std::string& file, const AnalysisReport& report);
std::string batch_csv_error_row(const std::string& file, const std::string& message);

}  // namespace ctxkit
