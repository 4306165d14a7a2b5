#pragma once
// Run configuration, CSV/JSON writers and the subcommand drivers behind the
// command-line tool.

#include "sidv/catalog.hpp"
#include "sidv/miura.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sidv {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum ExitCode { kPass = 0, kCheckFailure = 1, kConfigError = 2, kRuntimeError = 3 };

/// Exact rational from "p/q", an integer, or a plain decimal ("0.25" -> 1/4).
Rational parseRational(const std::string& text);
std::string formatRational(const Rational& r);  ///< "p/q", or "p" when q = 1
/// 17 significant digits, shortest exponent form from %.17g.
std::string formatDouble(double v);

/// Flat key=value settings.  Values stay strings until a driver asks for a type.
class RunConfig {
public:
    std::string command;

    bool has(const std::string& key) const { return values_.count(key) > 0; }
    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    /// "key=value"; ConfigError if there is no '='.
    void apply(const std::string& assignment);
    /// Lines of key=value; '#' starts a comment; blank lines are skipped.
    void loadFile(const std::filesystem::path& path);
    /// Missing keys take `fallback`; malformed values raise ConfigError.
    std::string str(const std::string& key, const std::string& fallback = "") const;
    double real(const std::string& key, double fallback) const;
    int integer(const std::string& key, int fallback) const;
    Rational rational(const std::string& key, const Rational& fallback) const;
    bool flag(const std::string& key, bool fallback) const;

    const std::map<std::string, std::string>& values() const { return values_; }
    nlohmann::json toJson() const;
    static RunConfig fromJson(const nlohmann::json& j);
    bool operator==(const RunConfig& o) const { return command == o.command && values_ == o.values_; }

private:
    std::map<std::string, std::string> values_;
};

/// "kind:key=value,key=value" into a solution; ConfigError on unknown keys.
ClosedFormSolution parseSolution(const std::string& spec);
/// "const:w=1", "selfsimilar", "soliton:c=2,x0=0".
KdvPotential parsePotential(const std::string& spec);

/// RFC 4180 writer: '#' metadata lines, a header row, then rows.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& meta,
              const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);
    void row(const std::vector<std::string>& cells);

private:
    std::ofstream out_;
    size_t width_;
};
std::string csvQuote(const std::string& cell);

/// SIDV_OUT_DIR, when set, replaces out_dir.  Call after loading the config
/// file and before command-line overrides, so those still win.
void applyEnvironment(RunConfig& cfg);
std::filesystem::path outputDir(const RunConfig& cfg);  ///< out_dir, default "sidv_out"


/// Each driver writes its artifacts, prints a short report to `log` and returns
/// an ExitCode.  Module errors propagate; runCommand maps them to codes.
int runVerify(const RunConfig& cfg, std::ostream& log);
int runSimulate(const RunConfig& cfg, std::ostream& log);
int runMiuraMap(const RunConfig& cfg, std::ostream& log);
int runMiuraKernel(const RunConfig& cfg, std::ostream& log);
int runMiuraLift(const RunConfig& cfg, std::ostream& log);
int runWeakTest(const RunConfig& cfg, std::ostream& log);
int runCatalog(const RunConfig& cfg, std::ostream& log);

/// Dispatch on cfg.command; on error writes error.json to the output directory
/// (when possible) and a one-line JSON object to `err`.
int runCommand(const RunConfig& cfg, std::ostream& log, std::ostream& err);

}  // namespace sidv
