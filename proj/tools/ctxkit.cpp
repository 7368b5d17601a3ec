// ctxkit command-line front-end: validate / analyze / bootstrap / batch / dump.
//
// Exit codes: 0 success, 1 validation or classification failure,
// 2 usage, I/O or parse errors.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctxkit/bootstrap.hpp"
#include "ctxkit/model_io.hpp"
#include "ctxkit/presets.hpp"
#include "ctxkit/report.hpp"
#include "ctxkit/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;

std::size_t global_limit_from_env() {
    const char* raw = std::getenv("CTXKIT_GLOBAL_LIMIT");
    if (!raw || !*raw) return ctxkit::kDefaultGlobalLimit;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(raw, &end, 10);
    if (*end != '\0' || value == 0)
        throw CLI::ValidationError("CTXKIT_GLOBAL_LIMIT", "must be a positive integer");
    return static_cast<std::size_t>(value);
}

struct ModelSource {
    std::string path;    // model file, or
    std::string preset;  // preset name
    bool renormalize = false;

    void attach(CLI::App* cmd, bool file_allowed = true) {
        if (file_allowed) cmd->add_option("file", path, "model file (JSON)");
        cmd->add_option("--preset", preset,
                        "built-in preset: bell, pr-box, pr-prism, ws, gen-ws, sahara");
        cmd->add_flag("--renormalize", renormalize, "divide each row by its sum before use");
    }

    // Resolves to a model ready for analysis. Prints diagnostics and
    // returns the exit code on failure.
    int resolve(ctxkit::EmpiricalModel& out, double normalization_tol) const {
        if (path.empty() == preset.empty()) {
            std::cerr << "error: give exactly one of a model file or --preset\n";
            return kExitUsage;
        }
        if (!preset.empty()) {
            auto found = ctxkit::find_preset(preset);
            if (!found) {
                std::cerr << "error: unknown preset '" << preset << "'\n";
                return kExitUsage;
            }
            out = (renormalize || found->renormalize_by_default)
                      ? ctxkit::renormalize(found->model)
                      : std::move(found->model);
            return kExitOk;
        }
        ctxkit::LoadOptions options;
        options.normalization_tol = normalization_tol;
        options.renormalize = renormalize;
        auto loaded = ctxkit::load_model_file(path, options);
        if (!loaded.diagnostics.empty()) {
            for (const auto& d : loaded.diagnostics)
                std::cerr << path << d.path << ": " << d.message << "\n";
            return kExitInvalid;
        }
        out = std::move(*loaded.model);
        return kExitOk;
    }
};

bool parse_measures(const std::string& list, ctxkit::AnalyzeOptions& options) {
    options.want_cf = options.want_sf = options.want_emeriau = false;
    options.want_chsh = options.want_cbd = false;
    std::size_t start = 0;
    while (start <= list.size()) {
        const auto comma = list.find(',', start);
        const std::string token =
            list.substr(start, comma == std::string::npos ? comma : comma - start);
        if (token == "cf") options.want_cf = true;
        else if (token == "sf") options.want_sf = true;
        else if (token == "emeriau") options.want_emeriau = true;
        else if (token == "chsh") options.want_chsh = true;
        else if (token == "cbd") options.want_cbd = true;
        else return false;
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return true;
}

bool parse_counts(const std::string& text, std::size_t contexts,
                  std::vector<std::uint64_t>& out) {
    std::vector<std::uint64_t> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string token =
            text.substr(start, comma == std::string::npos ? comma : comma - start);
        char* end = nullptr;
        const unsigned long long v = std::strtoull(token.c_str(), &end, 10);
        if (token.empty() || *end != '\0' || v == 0) return false;
        values.push_back(v);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (values.size() == 1) values.assign(contexts, values.front());
    if (values.size() != contexts) return false;
    out = std::move(values);
    return true;
}

int write_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream out(out_path, std::ios::binary);
    out << text;
    if (!out.good()) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return kExitUsage;
    }
    return kExitOk;
}

int run_validate(const std::string& path, double tol, bool do_renormalize) {
    ctxkit::LoadOptions options;
    options.normalization_tol = tol;
    options.renormalize = do_renormalize;
    const auto loaded = ctxkit::load_model_file(path, options);
    for (const auto& d : loaded.diagnostics)
        std::cout << path << d.path << ": " << d.message << "\n";
    if (!loaded.diagnostics.empty()) return kExitInvalid;
    std::cout << "valid: " << loaded.model->scenario.context_count() << " contexts, "
              << loaded.model->scenario.observable_count() << " observables\n";
    return kExitOk;
}

int run_analyze(const ModelSource& source, const ctxkit::AnalyzeOptions& options,
                const std::string& format) {
    ctxkit::EmpiricalModel model;
    if (const int rc = source.resolve(model, options.normalization_tol); rc != kExitOk) return rc;
    const std::string input =
        source.preset.empty() ? "file:" + source.path : "preset:" + source.preset;
    const auto report = ctxkit::analyze(model, input, options);
    std::cout << (format == "json" ? ctxkit::report_json(report) : ctxkit::report_table(report));
    return kExitOk;
}

int run_bootstrap(const ModelSource& source, ctxkit::BootstrapConfig config,
                  const std::string& counts_text, const std::string& measure_name,
                  const std::string& hist_out) {
    ctxkit::EmpiricalModel model;
    if (const int rc = source.resolve(model, 1e-6); rc != kExitOk) return rc;

    if (!parse_counts(counts_text, model.scenario.context_count(), config.counts)) {
        std::cerr << "error: --counts must be a positive integer or one per context\n";
        return kExitUsage;
    }
    if (measure_name == "cyclic_violation") config.measure = ctxkit::BootstrapMeasure::cyclic_violation;
    else if (measure_name == "cf") config.measure = ctxkit::BootstrapMeasure::cf;
    else if (measure_name == "cnt1") config.measure = ctxkit::BootstrapMeasure::cnt1;
    else {
        std::cerr << "error: unknown measure '" << measure_name << "'\n";
        return kExitUsage;
    }

    ctxkit::BootstrapResult result;
    try {
        result = ctxkit::bootstrap(model, config);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }

    std::ostringstream counts_echo;
    for (std::size_t i = 0; i < config.counts.size(); ++i)
        counts_echo << (i ? "," : "") << config.counts[i];
    std::cout << "measure:           " << to_string(config.measure) << "\n"
              << "samples:           " << result.n_samples << "\n"
              << "counts:            " << counts_echo.str() << "\n"
              << "seed:              " << result.seed << "\n"
              << "mean:              " << ctxkit::format_double(result.mean) << "\n"
              << "std:               " << ctxkit::format_double(result.stddev) << "\n"
              << "min:               " << ctxkit::format_double(result.min) << "\n"
              << "max:               " << ctxkit::format_double(result.max) << "\n"
              << "fraction_positive: " << ctxkit::format_double(result.fraction_positive) << "\n";

    if (!hist_out.empty()) {
        std::string csv = "bin_low,bin_high,count\n";
        for (std::size_t b = 0; b < result.histogram.counts.size(); ++b)
            csv += ctxkit::format_double(result.histogram.edges[b]) + "," +
                   ctxkit::format_double(result.histogram.edges[b + 1]) + "," +
                   std::to_string(result.histogram.counts[b]) + "\n";
        return write_text(csv, hist_out);
    }
    return kExitOk;
}

int run_batch(const std::string& dir, const std::string& out_path,
              const ctxkit::AnalyzeOptions& options, bool do_renormalize) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    try {
        for (const auto& entry : fs::directory_iterator(dir))
            if (entry.is_regular_file() && entry.path().extension() == ".json")
                files.push_back(entry.path());
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    std::sort(files.begin(), files.end());

    std::string csv = ctxkit::batch_csv_header();
    bool any_failure = false;
    for (const auto& file : files) {
        const std::string name = file.filename().string();
        try {
            ctxkit::LoadOptions load_options;
            load_options.normalization_tol = options.normalization_tol;
            load_options.renormalize = do_renormalize;
            const auto loaded = ctxkit::load_model_file(file, load_options);
            if (!loaded.diagnostics.empty()) {
                csv += ctxkit::batch_csv_error_row(
                    name, loaded.diagnostics.front().path + ": " +
                              loaded.diagnostics.front().message);
                any_failure = true;
                continue;
            }
            const auto report = ctxkit::analyze(*loaded.model, "file:" + name, options);
            csv += ctxkit::batch_csv_row(name, report);
        } catch (const std::exception& e) {
            csv += ctxkit::batch_csv_error_row(name, e.what());
            any_failure = true;
        }
    }
    if (const int rc = write_text(csv, out_path); rc != kExitOk) return rc;
    return any_failure ? kExitInvalid : kExitOk;
}

int run_dump(const std::string& preset_name, const std::string& out_path) {
    const auto preset = ctxkit::find_preset(preset_name);
    if (!preset) {
        std::cerr << "error: unknown preset '" << preset_name << "'\n";
        return kExitUsage;
    }
    return write_text(ctxkit::serialize_model(preset->model), out_path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"contextuality and signalling analysis of empirical models"};
    app.set_version_flag("--version", ctxkit::kVersion);
    app.require_subcommand(1);

    // validate
    auto* validate = app.add_subcommand("validate", "check a model file against its invariants");
    std::string validate_path;
    double validate_tol = 1e-6;
    bool validate_renorm = false;
    validate->add_option("file", validate_path, "model file (JSON)")->required();
    validate->add_option("--tol", validate_tol, "row normalization tolerance");
    validate->add_flag("--renormalize", validate_renorm, "divide each row by its sum first");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "compute contextuality/signalling measures");
    ModelSource analyze_source;
    analyze_source.attach(analyze);
    std::string measures_list = "cf,sf,emeriau,chsh,cbd";
    std::string format = "table";
    ctxkit::AnalyzeOptions analyze_options;
    analyze->add_option("--measures", measures_list, "comma list of cf,sf,emeriau,chsh,cbd");
    analyze->add_option("--tol", analyze_options.lp_tol, "LP and non-signalling tolerance");
    analyze->add_option("--norm-tol", analyze_options.normalization_tol,
                        "row normalization tolerance");
    analyze->add_option("--format", format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));

    // bootstrap
    auto* boot = app.add_subcommand("bootstrap", "multinomial bootstrap of a scalar measure");
    ModelSource boot_source;
    boot_source.attach(boot);
    ctxkit::BootstrapConfig boot_config;
    std::string counts_text = "87";
    std::string measure_name = "cyclic_violation";
    std::string hist_out;
    boot->add_option("--samples", boot_config.n_samples, "number of bootstrap samples");
    boot->add_option("--counts", counts_text, "per-context sample sizes (single value or list)");
    boot->add_option("--seed", boot_config.seed, "64-bit RNG seed");
    boot->add_option("--measure", measure_name, "cyclic_violation, cf or cnt1");
    boot->add_option("--bins", boot_config.histogram_bins, "histogram bin count");
    boot->add_option("--hist-out", hist_out, "write the histogram CSV here");

    // batch
    auto* batch = app.add_subcommand("batch", "analyze every .json model in a directory");
    std::string batch_dir, batch_out, batch_measures = "cf,sf,emeriau,chsh,cbd";
    ctxkit::AnalyzeOptions batch_options;
    bool batch_renorm = false;
    batch->add_option("dir", batch_dir, "directory of model files")->required();
    batch->add_option("--out", batch_out, "write the CSV here (default: stdout)");
    batch->add_option("--measures", batch_measures, "comma list of cf,sf,emeriau,chsh,cbd");
    batch->add_option("--tol", batch_options.lp_tol, "LP and non-signalling tolerance");
    batch->add_option("--norm-tol", batch_options.normalization_tol,
                      "row normalization tolerance");
    batch->add_flag("--renormalize", batch_renorm, "divide each row by its sum before use");

    // dump
    auto* dump = app.add_subcommand("dump", "write a preset model as a model file");
    std::string dump_preset, dump_out;
    dump->add_option("--preset", dump_preset, "preset name")->required();
    dump->add_option("--out", dump_out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
        const std::size_t limit = global_limit_from_env();
        analyze_options.global_limit = limit;
        batch_options.global_limit = limit;

        if (*validate) return run_validate(validate_path, validate_tol, validate_renorm);
        if (*analyze) {
            if (!parse_measures(measures_list, analyze_options)) {
                std::cerr << "error: unknown measure in '" << measures_list << "'\n";
                return kExitUsage;
            }
            return run_analyze(analyze_source, analyze_options, format);
        }
        if (*boot) return run_bootstrap(boot_source, boot_config, counts_text, measure_name,
                                        hist_out);
        if (*batch) {
            if (!parse_measures(batch_measures, batch_options)) {
                std::cerr << "error: unknown measure in '" << batch_measures << "'\n";
                return kExitUsage;
            }
            return run_batch(batch_dir, batch_out, batch_options, batch_renorm);
        }
        if (*dump) return run_dump(dump_preset, dump_out);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    } catch (const ctxkit::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
