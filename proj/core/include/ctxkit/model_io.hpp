#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctxkit/model.hpp"

namespace ctxkit {

/// Structural problem in a model file: malformed JSON, unknown keys, wrong
/// value types or unparseable probabilities. Carries a JSON-pointer-style
/// path to the offending element.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string path, const std::string& message)
        : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

/// Semantic problem (bad probability values, broken scenario invariants),
/// reported rather than thrown so a file's problems can be listed in full.
struct Diagnostic {
    std::string path;
    std::string message;
};

struct LoadOptions {
    double normalization_tol = 1e-6;
    bool renormalize = false;
};

struct LoadResult {
    std::optional<EmpiricalModel> model;  // absent when the file is beyond repair
    std::vector<Diagnostic> diagnostics;  // empty means the model is valid
};

/// Parses a model document. Throws ParseError for structural problems and
/// std::runtime_error for I/O failures; semantic violations come back as
/// diagnostics.
LoadResult load_model_file(const std::filesystem::path& path, const LoadOptions& options = {});
LoadResult parse_model(const std::string& text, const LoadOptions& options = {});

/// Serializes a model to the document format (object-form rows keyed by
/// canonical section keys, probabilities as shortest round-trip decimal
/// strings). serialize+parse reproduces the model exactly, and
/// serialize(parse(serialize(m))) is byte-identical.
std::string serialize_model(const EmpiricalModel& model);
void save_model_file(const EmpiricalModel& model, const std::filesystem::path& path);

/// "obs=label,..." key of a section in its context, used by the object row
/// form.
std::string section_key(const Scenario& scenario, int context, std::size_t index);

/// Shortest decimal string that strtod parses back to exactly `value`
/// (at most 17 significant digits).
std::string format_double(double value);

/// Accepts a JSON number, a decimal string, or an exact fraction string
/// like "3/8". Throws ParseError on anything else.
double parse_probability(const std::string& text, const std::string& path);

}  // namespace ctxkit
