// End-to-end driver for the ctxkit binary. The binary path comes from the
// CTXKIT_BIN environment variable (set by CTest); every test works inside a
// throwaway temp directory.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

const std::string& binary() {
    static const std::string path = [] {
        const char* env = std::getenv("CTXKIT_BIN");
        REQUIRE_MESSAGE(env != nullptr, "CTXKIT_BIN must point at the ctxkit binary");
        return std::string(env);
    }();
    return path;
}

const fs::path& workdir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "ctxkit_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
    const fs::path out_file = workdir() / "stdout.txt";
    const fs::path err_file = workdir() / "stderr.txt";
    const std::string cmd = env_prefix + binary() + " " + args + " >" + out_file.string() +
                            " 2>" + err_file.string();
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = read_file(out_file);
    r.err = read_file(err_file);
    return r;
}

}  // namespace

TEST_CASE("dump then validate round trips cleanly") {
    const auto bell = workdir() / "bell.json";
    const auto dumped = run("dump --preset bell --out " + bell.string());
    CHECK(dumped.exit_code == 0);

    const auto validated = run("validate " + bell.string());
    CHECK(validated.exit_code == 0);
    CHECK(validated.out.find("valid") != std::string::npos);

    // byte-identical on a second dump
    const auto again = workdir() / "bell2.json";
    run("dump --preset bell --out " + again.string());
    CHECK(read_file(bell) == read_file(again));
}

TEST_CASE("sahara dump keeps the published digits and fails strict validation") {
    const auto sahara = workdir() / "sahara.json";
    REQUIRE(run("dump --preset sahara --out " + sahara.string()).exit_code == 0);
    const std::string text = read_file(sahara);
    CHECK(text.find("0.402") != std::string::npos);
    CHECK(text.find("0.455") != std::string::npos);

    const auto strict = run("validate " + sahara.string() + " --tol 1e-6");
    CHECK(strict.exit_code == 1);
    int normalization_lines = 0;
    std::istringstream lines(strict.out);
    for (std::string line; std::getline(lines, line);)
        if (line.find("sums to") != std::string::npos) ++normalization_lines;
    CHECK(normalization_lines == 4);

    CHECK(run("validate " + sahara.string() + " --renormalize").exit_code == 0);
}

TEST_CASE("malformed input exits with the usage/parse code") {
    const auto broken = workdir() / "broken.json";
    write_file(broken, "{ not json");
    CHECK(run("validate " + broken.string()).exit_code == 2);

    const auto unknown_key = workdir() / "unknown.json";
    write_file(unknown_key, R"({"scenario": {"observables": ["a"], "outcomes": ["0","1"],
        "contexts": [["a"]]}, "distributions": [["1","0"]], "surprise": true})");
    CHECK(run("validate " + unknown_key.string()).exit_code == 2);

    CHECK(run("validate " + (workdir() / "missing.json").string()).exit_code == 2);
    CHECK(run("dump --preset nope").exit_code == 2);
    CHECK(run("analyze --preset bell --measures cf,bogus").exit_code == 2);
    CHECK(run("analyze").exit_code == 2);  // neither file nor preset
    const auto bell_path = workdir() / "usage_bell.json";
    run("dump --preset bell --out " + bell_path.string());
    CHECK(run("analyze " + bell_path.string() + " --preset bell").exit_code == 2);  // both
    CHECK(run("frobnicate").exit_code == 2);
}

TEST_CASE("analyze reports the preset numbers") {
    const auto sahara = run("analyze --preset sahara");
    CHECK(sahara.exit_code == 0);
    CHECK(sahara.out.find("cf:") != std::string::npos);
    CHECK(sahara.out.find("0.098") != std::string::npos);
    CHECK(sahara.out.find("contextual") != std::string::npos);

    const auto ws = run("analyze --preset ws");
    CHECK(ws.exit_code == 0);
    CHECK(ws.out.find("deterministic, non-contextual") != std::string::npos);
    CHECK(ws.out.find("cf:               0 ") != std::string::npos);

    // inapplicable blocks carry a note instead of failing the run
    const auto ws_json = run("analyze --preset ws --format json");
    CHECK(ws_json.exit_code == 0);
    CHECK(ws_json.out.find("\"applicable\": false") != std::string::npos);
    CHECK(ws_json.out.find("not a rank-2 cycle") != std::string::npos);

    // json output is deterministic byte for byte
    const auto first = run("analyze --preset pr-box --format json");
    const auto second = run("analyze --preset pr-box --format json");
    CHECK(first.exit_code == 0);
    CHECK(first.out == second.out);
    CHECK(first.out.find("\"version\"") != std::string::npos);
}

TEST_CASE("analyze of a dumped model file matches the preset") {
    const auto bell = workdir() / "bell_file.json";
    run("dump --preset bell --out " + bell.string());
    const auto report = run("analyze " + bell.string());
    CHECK(report.exit_code == 0);
    CHECK(report.out.find("chsh violation:   0.5 ") != std::string::npos);
    CHECK(report.out.find("cf:               0.25") != std::string::npos);
}

TEST_CASE("bootstrap summary and histogram are seed-deterministic") {
    const auto hist1 = workdir() / "h1.csv";
    const auto hist2 = workdir() / "h2.csv";
    const std::string base =
        "bootstrap --preset sahara --samples 300 --counts 87 --seed 99 --hist-out ";
    const auto run1 = run(base + hist1.string());
    const auto run2 = run(base + hist2.string());
    CHECK(run1.exit_code == 0);
    CHECK(run1.out == run2.out);
    CHECK(read_file(hist1) == read_file(hist2));
    CHECK(read_file(hist1).rfind("bin_low,bin_high,count\n", 0) == 0);

    const auto pr = run("bootstrap --preset pr-box --samples 50 --counts 5 --seed 1");
    CHECK(pr.exit_code == 0);
    CHECK(pr.out.find("fraction_positive: 1") != std::string::npos);

    CHECK(run("bootstrap --preset pr-box --counts 0").exit_code == 2);
    CHECK(run("bootstrap --preset pr-box --counts 1,2").exit_code == 2);
}

TEST_CASE("batch analyzes a directory into one CSV row per file") {
    const auto dir = workdir() / "batch";
    fs::create_directories(dir);
    for (const char* preset : {"bell", "pr-box", "pr-prism", "ws", "gen-ws", "sahara"})
        REQUIRE(run(std::string("dump --preset ") + preset + " --out " +
                    (dir / (std::string(preset) + ".json")).string())
                    .exit_code == 0);

    const auto csv_path = workdir() / "batch.csv";
    const auto all = run("batch " + dir.string() + " --renormalize --out " + csv_path.string());
    CHECK(all.exit_code == 0);
    const std::string csv = read_file(csv_path);
    int lines = 0;
    std::istringstream stream(csv);
    for (std::string line; std::getline(stream, line);) ++lines;
    CHECK(lines == 7);  // header + 6 rows
    CHECK(csv.find("file,status,") == 0);
    CHECK(csv.find("pr-box.json,ok") != std::string::npos);
    // 3-cycle threshold column: 1/6
    CHECK(csv.find("0.16666666666666666") != std::string::npos);

    // without renormalize the rounded sahara rows produce an error row
    const auto strict = run("batch " + dir.string());
    CHECK(strict.exit_code == 1);
    CHECK(strict.out.find("sahara.json,error") != std::string::npos);

    // empty directory: header-only CSV
    const auto empty = workdir() / "empty";
    fs::create_directories(empty);
    const auto none = run("batch " + empty.string());
    CHECK(none.exit_code == 0);
    CHECK(none.out.rfind("file,status,", 0) == 0);
    CHECK(std::count(none.out.begin(), none.out.end(), '\n') == 1);
}

TEST_CASE("the global assignment cap is env-configurable") {
    const auto capped = run("analyze --preset bell --format json",
                            "CTXKIT_GLOBAL_LIMIT=8 ");
    CHECK(capped.exit_code == 0);  // cf fails per-measure, the rest survives
    CHECK(capped.out.find("exceeds the configured limit") != std::string::npos);
    CHECK(capped.out.find("\"sf\"") != std::string::npos);

    CHECK(run("analyze --preset bell", "CTXKIT_GLOBAL_LIMIT=banana ").exit_code == 2);
}
