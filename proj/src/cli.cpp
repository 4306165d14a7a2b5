#include "sidv/cli.hpp"

#include "sidv/conserve.hpp"
#include "sidv/operators.hpp"
#include "sidv/solver.hpp"
#include "sidv/weakform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <random>
#include <regex>
#include <sstream>

namespace sidv {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n"), e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

/// "k=v,k=v" into a map
std::map<std::string, std::string> keyValues(const std::string& s) {
    std::map<std::string, std::string> m;
    for (auto& part : split(s, ',')) {
        auto eq = part.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + part + "'");
        m[trim(part.substr(0, eq))] = trim(part.substr(eq + 1));
    }
    return m;
}

double toDouble(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        double d = std::stod(v, &used);
        if (used != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        // exact rationals are accepted wherever a real is
        try {
            return parseRational(v).get_d();
        } catch (const ConfigError&) {
        }
        throw ConfigError(key + ": '" + v + "' is not a number");
    }
}

json seriesJson(const std::vector<std::pair<double, double>>& s) {
    json a = json::array();
    for (auto& [t, v] : s) a.push_back({t, v});
    return a;
}

void writeJson(const fs::path& p, const json& j) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << j.dump(2) << '\n';
}

fs::path prepareOut(const RunConfig& cfg) {
    fs::path d = outputDir(cfg);
    std::error_code ec;
    fs::create_directories(d, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + d.string() + ": " + ec.message());
    return d;
}

std::vector<std::string> metaLines(const RunConfig& cfg) {
    std::vector<std::string> m{"command=" + cfg.command};
    for (auto& [k, v] : cfg.values())
        if (k != "out_dir") m.push_back(k + "=" + v);
    return m;
}

BoundaryMode boundaryOf(const RunConfig& cfg, const std::string& fallback) {
    std::string b = cfg.str("boundary", fallback);
    if (b == "periodic") return BoundaryMode::Periodic;
    if (b == "clamped") return BoundaryMode::Clamped;
    throw ConfigError("boundary must be periodic or clamped, got '" + b + "'");
}

SolveOptions solveOptions(const RunConfig& cfg) {
    SolveOptions o;
    o.tEnd = cfg.real("tend", 1);
    o.cfl = cfg.real("cfl", o.cfl);
    o.outputEvery = cfg.real("output_every", o.tEnd / 10);
    // clamped tails of decaying data sit far below the library default
    o.uFloor = cfg.real("ufloor", 1e-12);
    o.hyperdiffusion = cfg.real("hyperdiffusion", o.hyperdiffusion);
    o.dealias = cfg.flag("dealias", o.dealias);
    std::string s = cfg.str("scheme", "fd4");
    if (s == "fd4")
        o.scheme = DerivativeScheme::FD4;
    else if (s == "spectral")
        o.scheme = DerivativeScheme::Spectral;
    else
        throw ConfigError("scheme must be fd4 or spectral, got '" + s + "'");
    std::string f = cfg.str("form", "direct");
    if (f == "direct")
        o.form = SolveForm::Direct;
    else if (f == "log")
        o.form = SolveForm::LogForm;
    else if (f == "lift")
        o.form = SolveForm::MiuraLift;
    else
        throw ConfigError("form must be direct, log or lift, got '" + f + "'");
    if (o.tEnd <= 0) throw ConfigError("tend must be positive");
    if (o.cfl <= 0 || o.cfl > 1) throw ConfigError("cfl must lie in (0, 1]");
    if (o.outputEvery < 0) throw ConfigError("output_every must be >= 0");
    return o;
}

void writeTrajectory(const fs::path& p, const std::vector<std::string>& meta, const std::vector<GridField>& snaps,
                     const std::string& name = "u") {
    CsvWriter w(p, meta, {"t", "x", name});
    for (const auto& s : snaps)
        for (int i = 0; i < s.size(); ++i) w.row(std::vector<double>{s.time, s.x(i), s.values[i]});
}

IntegralSpec integralFromName(const std::string& n) {
    if (n == "H0") return {IntegralKind::H0};
    if (n == "H1") return {IntegralKind::H1};
    if (n == "H2") return {IntegralKind::H2};
    static const std::regex hn("Hn([0-9]+)");
    std::smatch m;
    if (std::regex_match(n, m, hn)) return {IntegralKind::Hn, std::stoi(m[1])};
    throw ConfigError("unknown integral '" + n + "' (H0, H1, H2, Hn<k>)");
}

GridGeometry geometry(const RunConfig& cfg, double xMin, double xMax, int N) {
    GridGeometry g{cfg.real("xmin", xMin), cfg.real("xmax", xMax), cfg.integer("nx", N)};
    if (!(g.xMax > g.xMin)) throw ConfigError("xmax must exceed xmin");
    if (g.N < 16) throw ConfigError("nx must be at least 16");
    return g;
}

}  // namespace

// ------------------------------------------------------------ values

Rational parseRational(const std::string& text) {
    static const std::regex frac(R"(([+-]?\d+)(?:/(\d+))?)"), dec(R"(([+-]?)(\d*)\.(\d+))");
    std::string s = trim(text);
    std::smatch m;
    if (std::regex_match(s, m, frac)) {
        std::string num = m[1].str();
        if (num[0] == '+') num = num.substr(1);
        if (m[2].matched) {
            if (std::all_of(m[2].first, m[2].second, [](char c) { return c == '0'; }))
                throw ConfigError("zero denominator in '" + s + "'");
            Rational r(num + "/" + m[2].str());
            r.canonicalize();
            return r;
        }
        return Rational(num);
    }
    if (std::regex_match(s, m, dec)) {
        std::string digits = m[2].str() + m[3].str();
        digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
        Rational r(mpz_class(digits), mpz_class("1" + std::string(m[3].length(), '0')));
        r.canonicalize();
        return m[1] == "-" ? Rational(-r) : r;
    }
    throw ConfigError("'" + s + "' is not an exact rational (p/q, integer or decimal)");
}

std::string formatRational(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    return c.get_str();
}

std::string formatDouble(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ------------------------------------------------------------ RunConfig

void RunConfig::apply(const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + assignment + "'");
    std::string k = trim(assignment.substr(0, eq));
    if (k.empty()) throw ConfigError("empty key in '" + assignment + "'");
    values_[k] = trim(assignment.substr(eq + 1));
}

void RunConfig::loadFile(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (trim(line).empty()) continue;
        try {
            apply(line);
        } catch (const ConfigError& e) {
            throw ConfigError(path.string() + ":" + std::to_string(no) + ": " + e.what());
        }
    }
}

std::string RunConfig::str(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double RunConfig::real(const std::string& key, double fallback) const {
    return has(key) ? toDouble(key, str(key)) : fallback;
}

int RunConfig::integer(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const std::string v = str(key);
    try {
        size_t used = 0;
        long n = std::stol(v, &used);
        if (used == v.size() && n >= INT32_MIN && n <= INT32_MAX) return static_cast<int>(n);
    } catch (const std::exception&) {
    }
    throw ConfigError(key + ": '" + v + "' is not an integer");
}

Rational RunConfig::rational(const std::string& key, const Rational& fallback) const {
    if (!has(key)) return fallback;
    try {
        return parseRational(str(key));
    } catch (const ConfigError& e) {
        throw ConfigError(key + ": " + e.what());
    }
}

bool RunConfig::flag(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    std::string v = str(key);
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw ConfigError(key + ": '" + v + "' is not a boolean");
}

json RunConfig::toJson() const { return json{{"command", command}, {"settings", values_}}; }

RunConfig RunConfig::fromJson(const json& j) {
    RunConfig c;
    try {
        c.command = j.at("command").get<std::string>();
        for (auto& [k, v] : j.at("settings").items()) c.set(k, v.get<std::string>());
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config JSON: ") + e.what());
    }
    return c;
}

// ------------------------------------------------------------ specs

ClosedFormSolution parseSolution(const std::string& spec) {
    auto colon = spec.find(':');
    std::string kind = trim(spec.substr(0, colon));
    SolutionKind k;
    try {
        k = kindFromName(kind);
    } catch (const InvalidParameters& e) {
        throw ConfigError(e.what());
    }
    SolutionParams p;
    if (colon != std::string::npos) {
        for (auto& [key, v] : keyValues(spec.substr(colon + 1))) {
            if (key == "eps")
                p.eps = parseRational(v);
            else if (key == "a")
                p.a = parseRational(v);
            else if (key == "c")
                p.c = toDouble(key, v);
            else if (key == "x0")
                p.x0 = toDouble(key, v);
            else if (key == "c1")
                p.c1 = toDouble(key, v);
            else if (key == "c2")
                p.c2 = toDouble(key, v);
            else if (key == "k")
                p.k = toDouble(key, v);
            else if (key == "branch")
                p.branch = static_cast<int>(toDouble(key, v));
            else
                throw ConfigError("unknown solution parameter '" + key + "' in '" + spec + "'");
        }
    }
    return ClosedFormSolution(k, p);
}

KdvPotential parsePotential(const std::string& spec) {
    auto colon = spec.find(':');
    std::string kind = trim(spec.substr(0, colon));
    auto kv = colon == std::string::npos ? std::map<std::string, std::string>{} : keyValues(spec.substr(colon + 1));
    auto get = [&](const std::string& k, double fb) { return kv.count(k) ? toDouble(k, kv.at(k)) : fb; };
    auto only = [&](std::initializer_list<std::string> allowed) {
        for (auto& [k, v] : kv)
            if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
                throw ConfigError("unknown potential parameter '" + k + "' in '" + spec + "'");
    };
    if (kind == "const") {
        only({"w"});
        return KdvPotential::constant(get("w", 1));
    }
    if (kind == "selfsimilar") {
        only({});
        return KdvPotential::selfSimilar();
    }
    if (kind == "soliton" || kind == "kdvSoliton") {
        only({"c", "x0"});
        double c = get("c", 2);
        if (c <= 0) throw ConfigError("soliton potential needs c > 0");
        return KdvPotential::soliton(c, get("x0", 0));
    }
    throw ConfigError("unknown potential '" + kind + "' (const, selfsimilar, soliton)");
}

// ------------------------------------------------------------ CSV

std::string csvQuote(const std::string& cell) {
    if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
    std::string q = "\"";
    for (char c : cell) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

CsvWriter::CsvWriter(const fs::path& path, const std::vector<std::string>& meta, const std::vector<std::string>& columns)
    : out_(path, std::ios::binary), width_(columns.size()) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    for (auto& m : meta) {
        std::string line = m;
        std::replace(line.begin(), line.end(), '\n', ' ');
        out_ << "# " << line << "\r\n";
    }
    row(columns);
}

void CsvWriter::row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(formatDouble(v));
    row(cells);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::logic_error("CSV row width mismatch");
    for (size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << csvQuote(cells[i]);
    out_ << "\r\n";
}

void applyEnvironment(RunConfig& cfg) {
    if (const char* env = std::getenv("SIDV_OUT_DIR"); env && *env) cfg.set("out_dir", env);
}

fs::path outputDir(const RunConfig& cfg) { return cfg.str("out_dir", "sidv_out"); }

// ------------------------------------------------------------ verify

int runVerify(const RunConfig& cfg, std::ostream& log) {
    static const std::vector<std::string> all{"table1", "table2", "lax", "recursion", "mikhailov", "dispersion"};
    std::vector<std::string> suites = split(cfg.str("suite", "all"), ',');
    if (suites.size() == 1 && suites[0] == "all") suites = all;
    for (auto& s : suites)
        if (std::find(all.begin(), all.end(), s) == all.end())
            throw ConfigError("unknown suite '" + s + "' (table1, table2, lax, recursion, mikhailov, dispersion)");

    std::vector<std::pair<std::string, CheckRecord>> records;
    for (auto& s : suites) {
        std::vector<CheckRecord> r;
        if (s == "table1") r = suiteConservation();
        if (s == "table2") {
            int n = cfg.integer("n", 0);
            if (cfg.has("n") && (n < 1 || n > 4)) throw ConfigError("n must lie in 1..4 for table2");
            r = cfg.has("n") ? suiteHierarchy(n, n) : suiteHierarchy();
        }
        if (s == "lax") r = suiteLax();
        if (s == "recursion") r = suiteRecursion();
        if (s == "mikhailov") r = suiteMikhailov();
        if (s == "dispersion")
            r = suiteDispersion(cfg.has("eps") ? std::optional<Rational>(cfg.rational("eps", 0)) : std::nullopt);
        for (auto& x : r) records.emplace_back(s, x);
    }

    fs::path out = prepareOut(cfg);
    CsvWriter csv(out / "verify.csv", metaLines(cfg), {"suite", "id", "status", "informational", "residual", "note"});
    json jr = json::array();
    int nPass = 0, nFail = 0, nTypo = 0, nInfo = 0;
    for (auto& [s, r] : records) {
        csv.row(std::vector<std::string>{s, r.id, r.status, r.informational ? "1" : "0", r.residual, r.note});
        jr.push_back({{"suite", s},
                      {"id", r.id},
                      {"status", r.status},
                      {"informational", r.informational},
                      {"residual", r.residual},
                      {"note", r.note}});
        if (r.informational)
            ++nInfo;
        else if (r.status == "pass")
            ++nPass;
        else if (r.status == "typo-suspect")
            ++nTypo;
        else
            ++nFail;
        std::string tag = r.informational ? "INFO" : r.status == "pass" ? "PASS" : r.status == "typo-suspect" ? "TYPO" : "FAIL";
        log << std::left << std::setw(5) << tag << ' ' << std::setw(48) << r.id << ' ' << r.note << '\n';
    }
    writeJson(out / "verify.json", {{"config", cfg.toJson()},
                                    {"records", jr},
                                    {"summary", {{"pass", nPass}, {"fail", nFail}, {"typoSuspect", nTypo}, {"informational", nInfo}}}});
    log << nPass << " pass, " << nTypo << " typo-suspect, " << nFail << " fail, " << nInfo << " informational\n";
    return nFail ? kCheckFailure : kPass;
}

// ------------------------------------------------------------ simulate

int runSimulate(const RunConfig& cfg, std::ostream& log) {
    const std::string init = cfg.str("init", "sech2:c=1");
    std::optional<ClosedFormSolution> exact;
    ReferenceFn f0;
    if (init.rfind("bump", 0) == 0) {
        // not a solution, just positive data: base + amp*exp(-(x-x0)^2/width)
        auto colon = init.find(':');
        auto kv = colon == std::string::npos ? std::map<std::string, std::string>{} : keyValues(init.substr(colon + 1));
        double base = 1, amp = 0.3, width = 1, x0 = 0;
        for (auto& [k, v] : kv) {
            if (k == "base")
                base = toDouble(k, v);
            else if (k == "amp")
                amp = toDouble(k, v);
            else if (k == "width")
                width = toDouble(k, v);
            else if (k == "x0")
                x0 = toDouble(k, v);
            else
                throw ConfigError("unknown bump parameter '" + k + "'");
        }
        if (width <= 0) throw ConfigError("bump width must be positive");
        f0 = [=](double x, double) { return base + amp * std::exp(-(x - x0) * (x - x0) / width); };
    } else {
        exact = parseSolution(init);
        if (!exact->smooth()) throw ConfigError("peakons are not smooth; use weak-test");
        f0 = [s = *exact](double x, double t) { return s.eval(x, t); };
    }

    EquationSpec eq;
    std::string variant = cfg.str("variant", "family");
    if (variant == "family") {
        Rational eps = exact ? *exact->params().eps : Rational(1), a = exact ? *exact->params().a : Rational(1);
        eq = EquationSpec::family(cfg.rational("eps", eps), cfg.rational("a", a));
    } else if (variant == "l2") {
        eq = EquationSpec::variantL2(cfg.rational("delta", 0));
    } else if (variant == "cubic") {
        eq = EquationSpec::variantCubic(cfg.rational("delta", 0));
    } else {
        throw ConfigError("variant must be family, l2 or cubic");
    }

    GridGeometry g = geometry(cfg, -20, 20, 512);
    BoundaryMode mode = boundaryOf(cfg, exact ? "clamped" : "periodic");
    SolveOptions o = solveOptions(cfg);
    if (o.form == SolveForm::MiuraLift && exact && exact->kind() == SolutionKind::Kink)
        o.potentialReference = KdvPotential::soliton(exact->params().c, exact->params().x0).eval;
    GridField u0 = mode == BoundaryMode::Clamped ? GridField::clamped(g.N, g.xMin, g.xMax, f0)
                                                 : GridField::periodic(g.N, g.xMin, g.xMax, f0);

    Trajectory tr = solve(eq, u0, o);

    fs::path out = prepareOut(cfg);
    auto meta = metaLines(cfg);
    meta.push_back("equation=" + eq.name());
    writeTrajectory(out / "trajectory.csv", meta, tr.snapshots);

    json integrals = json::object();
    std::vector<std::string> names = split(cfg.str("integrals", "H0,H1"), ',');
    std::vector<std::string> cols{"t"};
    std::vector<std::vector<std::pair<double, double>>> series;
    IntegralAux aux;
    aux.eq = eq;
    aux.solve = o;
    for (auto& n : names) {
        IntegralSpec spec = integralFromName(n);
        try {
            DriftReport d = driftReport(spec, tr.snapshots, aux);
            integrals[n] = {{"maxDrift", d.maxDrift}, {"relative", d.relative}, {"series", seriesJson(d.series)}};
            cols.push_back(n);
            series.push_back(d.series);
            log << n << " drift " << formatDouble(d.maxDrift) << (d.relative ? " (relative)" : " (absolute)") << '\n';
        } catch (const NumericError& e) {
            integrals[n] = {{"skipped", e.what()}};
            log << n << " skipped: " << e.what() << '\n';
        }
    }
    {
        CsvWriter c(out / "conserved.csv", meta, cols);
        for (size_t k = 0; k < tr.snapshots.size(); ++k) {
            std::vector<double> row{tr.snapshots[k].time};
            for (auto& s : series) row.push_back(s[k].second);
            c.row(row);
        }
    }

    json manifest{{"config", cfg.toJson()},
                  {"equation", eq.name()},
                  {"grid", {{"xmin", g.xMin}, {"xmax", g.xMax}, {"nx", g.N}, {"boundary", cfg.str("boundary", mode == BoundaryMode::Clamped ? "clamped" : "periodic")}}},
                  {"steps", tr.steps},
                  {"dt", tr.dt},
                  {"integrals", integrals},
                  {"outputs", {"trajectory.csv", "conserved.csv"}}};
    int status = kPass;
    if (exact) {
        auto governs = exact->governs();
        ReferenceFn ref = f0;
        json errs = json::array();
        double worst = 0;
        int margin = mode == BoundaryMode::Clamped ? kClampMargin : 0;
        for (auto& s : tr.snapshots) {
            double e = maxAbsError(s, ref, margin);
            worst = std::max(worst, e);
            errs.push_back({s.time, e});
        }
        manifest["exact"] = {{"solution", exact->describe()},
                             {"solvesEquation", governs && governs->name() == eq.name()},
                             {"linfSeries", errs},
                             {"linfMax", worst}};
        log << "L_inf error vs " << exact->describe() << ": " << formatDouble(worst) << '\n';
        if (cfg.has("max_error") && worst > cfg.real("max_error", 0)) status = kCheckFailure;
    }
    if (cfg.has("max_drift")) {
        double lim = cfg.real("max_drift", 0);
        for (auto& [k, v] : integrals.items())
            if (v.contains("maxDrift") && v["maxDrift"].get<double>() > lim) status = kCheckFailure;
    }
    manifest["status"] = status == kPass ? "pass" : "fail";
    writeJson(out / "manifest.json", manifest);
    log << "steps " << tr.steps << ", dt " << formatDouble(tr.dt) << ", wrote " << out.string() << '\n';
    return status;
}

// ------------------------------------------------------------ miura

namespace {

/// Read x,u columns from a CSV written by this tool (or any x,u file).
GridField readField(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw ConfigError("cannot read input " + p.string());
    std::string line;
    std::vector<double> xs, us;
    bool header = false;
    int xi = 0, ui = 1;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto cells = split(line, ',');
        if (!header) {
            header = true;
            auto fx = std::find(cells.begin(), cells.end(), "x"), fu = std::find(cells.begin(), cells.end(), "u");
            if (fx == cells.end() || fu == cells.end()) throw ConfigError("input needs x and u columns");
            xi = static_cast<int>(fx - cells.begin());
            ui = static_cast<int>(fu - cells.begin());
            continue;
        }
        if (static_cast<int>(cells.size()) <= std::max(xi, ui)) throw ConfigError("short row in " + p.string());
        xs.push_back(toDouble("x", cells[xi]));
        us.push_back(toDouble("u", cells[ui]));
    }
    if (xs.size() < 16) throw ConfigError("input needs at least 16 rows");
    double h = (xs.back() - xs.front()) / (xs.size() - 1);
    for (size_t i = 1; i < xs.size(); ++i)
        if (std::abs(xs[i] - xs[0] - i * h) > 1e-9 * (1 + std::abs(xs[i]))) throw ConfigError("input grid is not uniform");
    GridField f;
    f.values = us;
    f.xMin = xs.front();
    f.xMax = xs.back();
    f.mode = BoundaryMode::Clamped;
    return f;
}

double interiorError(const GridField& f, const std::vector<double>& v, const KdvPotential& w) {
    double e = 0;
    for (int i = kClampMargin; i < f.size() - kClampMargin; ++i) e = std::max(e, std::abs(v[i] - w(f.x(i), f.time)));
    return e;
}

}  // namespace

int runMiuraMap(const RunConfig& cfg, std::ostream& log) {
    GridField u;
    if (cfg.has("input")) {
        u = readField(cfg.str("input"));
    } else {
        auto s = parseSolution(cfg.str("u", "kink:c=2"));
        GridGeometry g = geometry(cfg, -10, 10, 2048);
        u = GridField::clamped(g.N, g.xMin, g.xMax, [s](double x, double t) { return s.eval(x, t); }, cfg.real("t", 0));
    }
    GridField w = miuraMap(u, DerivativeScheme::FD4, cfg.real("ufloor", 1e-12));
    fs::path out = prepareOut(cfg);
    CsvWriter c(out / "w.csv", metaLines(cfg), {"x", "u", "w"});
    for (int i = 0; i < u.size(); ++i) c.row(std::vector<double>{u.x(i), u.values[i], w.values[i]});
    json m{{"config", cfg.toJson()}, {"outputs", {"w.csv"}}};
    int status = kPass;
    if (cfg.has("compare")) {
        KdvPotential ref = parsePotential(cfg.str("compare"));
        double e = interiorError(u, w.values, ref);
        m["compare"] = {{"potential", ref.description}, {"linfInterior", e}};
        log << "L_inf vs " << ref.description << " (interior): " << formatDouble(e) << '\n';
        if (e > cfg.real("tol", 1e-6)) status = kCheckFailure;
    }
    m["status"] = status == kPass ? "pass" : "fail";
    writeJson(out / "manifest.json", m);
    return status;
}

int runMiuraKernel(const RunConfig& cfg, std::ostream& log) {
    KdvPotential w = parsePotential(cfg.str("w", "const:w=1"));
    GridGeometry g = geometry(cfg, -5, 5, 1001);
    double t0 = cfg.real("t0", 0);
    KernelBasis b = kernelSolve(w, t0, g);
    fs::path out = prepareOut(cfg);
    {
        CsvWriter c(out / "basis.csv", metaLines(cfg), {"x", "u1", "u2", "u1x", "u2x", "wronskian"});
        for (int i = 0; i < g.N; ++i)
            c.row(std::vector<double>{g.x(i), b.u1[i], b.u2[i], b.u1x[i], b.u2x[i], b.wronskian[i]});
    }
    json m{{"config", cfg.toJson()}, {"potential", w.description}, {"wronskianDrift", b.wronskianDrift()}};
    log << "Wronskian drift " << formatDouble(b.wronskianDrift()) << '\n';
    int status = b.wronskianDrift() <= cfg.real("wronskian_tol", 1e-6) ? kPass : kCheckFailure;
    std::string ws = cfg.str("w", "const:w=1");
    if (ws.rfind("const", 0) == 0) {
        double wv = w(0, t0);
        if (wv > 0) {
            auto [r1, r2] = exponentialRates(b);
            m["rates"] = {r1, r2};
            log << "rates " << formatDouble(r1) << ", " << formatDouble(r2) << '\n';
        } else if (wv < 0) {
            double f = oscillationFrequency(b);
            m["frequency"] = f;
            log << "frequency " << formatDouble(f) << '\n';
        }
    }
    if (cfg.has("target")) {
        auto s = parseSolution(cfg.str("target"));
        std::vector<double> tv(g.N);
        for (int i = 0; i < g.N; ++i) tv[i] = s.eval(g.x(i), t0);
        Projection p = projectOntoKernel(b, tv);
        double scale = 0;
        for (double v : tv) scale = std::max(scale, std::abs(v));
        double rel = p.residual / std::max(scale, 1e-300);
        m["projection"] = {{"target", s.describe()}, {"alpha", p.alpha},       {"beta", p.beta},
                           {"residual", p.residual}, {"relativeResidual", rel}};
        log << "projection residual " << formatDouble(p.residual) << " (relative " << formatDouble(rel) << ")\n";
        if (rel > cfg.real("tol", 1e-6)) status = kCheckFailure;
    }
    m["status"] = status == kPass ? "pass" : "fail";
    m["outputs"] = {"basis.csv"};
    writeJson(out / "manifest.json", m);
    return status;
}

int runMiuraLift(const RunConfig& cfg, std::ostream& log) {
    const std::string ws = cfg.str("w", "soliton:c=2");
    KdvPotential w = parsePotential(ws);
    auto coeff = split(cfg.str("coeff", "1,0"), ',');
    if (coeff.size() != 2) throw ConfigError("coeff needs two numbers c1,c2");
    double c1 = toDouble("coeff", coeff[0]), c2 = toDouble("coeff", coeff[1]);
    if (c1 == 0 && c2 == 0) throw ConfigError("coeff must not vanish");

    // The closed form of the chosen kernel member pins the clamped margins.
    std::string kind = ws.substr(0, ws.find(':'));
    ReferenceFn ref;
    double t0 = 0, solitonC = 0;
    GridGeometry g;
    if (kind == "const") {
        double wv = w(0, 0);
        SolutionParams p;
        p.c1 = c1;
        p.c2 = c2;
        if (wv == 1)
            ref = [s = ClosedFormSolution(SolutionKind::KernelExp, p)](double x, double t) { return s.eval(x, t); };
        else if (wv == -1)
            ref = [s = ClosedFormSolution(SolutionKind::KernelTrig, p)](double x, double t) { return s.eval(x, t); };
        else
            throw ConfigError("lift with a constant potential supports w = 1 or w = -1");
        g = geometry(cfg, -2, 2, 64);
    } else if (kind == "selfsimilar") {
        SolutionParams p;
        p.c1 = c1;
        p.c2 = c2;
        ref = [s = ClosedFormSolution(SolutionKind::Airy, p)](double x, double t) { return s.eval(x, t); };
        t0 = cfg.real("t0", 0.5);
        if (t0 <= 0) throw ConfigError("the self-similar potential needs t0 > 0");
        g = geometry(cfg, -5, 5, 256);
    } else {
        if (c2 != 0)
            throw ConfigError("soliton lift supports coeff c1,0 only: the second Legendre mode has no closed-form "
                              "evolution to pin the margins");
        auto kv = keyValues(ws.find(':') == std::string::npos ? "" : ws.substr(ws.find(':') + 1));
        SolutionParams p;
        p.c = kv.count("c") ? toDouble("c", kv["c"]) : 2;
        p.x0 = kv.count("x0") ? toDouble("x0", kv["x0"]) : 0;
        solitonC = p.c;
        ref = [s = ClosedFormSolution(SolutionKind::Kink, p), c1](double x, double t) { return c1 * s.eval(x, t); };
        g = geometry(cfg, -12, 12, 256);
    }

    LiftOptions lo;
    lo.solve = solveOptions(cfg);
    lo.initialTol = cfg.real("initial_tol", lo.initialTol);
    lo.evolvedTol = cfg.real("evolved_tol", lo.evolvedTol);
    GridField u0 = GridField::clamped(g.N, g.xMin, g.xMax, ref, t0);

    fs::path out = prepareOut(cfg);
    json m{{"config", cfg.toJson()}, {"potential", w.description}};
    int status = kPass;
    try {
        LiftResult r = evolveInKernel(w, u0, lo);
        writeTrajectory(out / "trajectory.csv", metaLines(cfg), r.trajectory.snapshots);
        double worst = 0;
        for (auto& s : r.trajectory.snapshots) worst = std::max(worst, maxAbsError(s, ref, kClampMargin));
        m["kernelResiduals"] = r.kernelResiduals;
        m["linfVsClosedForm"] = worst;
        m["steps"] = r.trajectory.steps;
        m["dt"] = r.trajectory.dt;
        m["outputs"] = {"trajectory.csv"};
        log << "certified " << r.kernelResiduals.size() << " snapshots, max kernel residual "
            << formatDouble(*std::max_element(r.kernelResiduals.begin(), r.kernelResiduals.end()))
            << ", L_inf vs closed form " << formatDouble(worst) << '\n';
        if (kind == "soliton") {
            auto [A, B] = legendreCoefficients(r.trajectory.snapshots.back(), solitonC);
            m["legendre"] = {{"A", A}, {"B", B}};
            log << "Legendre A " << formatDouble(A) << ", B " << formatDouble(B) << '\n';
        }
        if (cfg.has("max_error") && worst > cfg.real("max_error", 0)) status = kCheckFailure;
    } catch (const KernelDrift& e) {
        m["certificate"] = e.what();
        log << "certificate failed: " << e.what() << '\n';
        status = kCheckFailure;
    }
    m["status"] = status == kPass ? "pass" : "fail";
    writeJson(out / "manifest.json", m);
    return status;
}

// ------------------------------------------------------------ weak form

int runWeakTest(const RunConfig& cfg, std::ostream& log) {
    std::string kind = cfg.str("kind", "exp");
    SolutionParams p;
    p.c = cfg.real("c", 2);
    SolutionKind sk;
    if (kind == "exp") {
        sk = SolutionKind::PeakonExp;
        p.a = cfg.rational("a", Rational(1));
    } else if (kind == "sin") {
        sk = SolutionKind::PeakonSin;
        p.a = cfg.rational("a", Rational(-1));
    } else {
        throw ConfigError("kind must be exp or sin");
    }
    PeakonData u(ClosedFormSolution(sk, p));
    Rational a = *u.sol.params().a;

    std::vector<Rational> epsList;
    for (auto& e : split(cfg.str("eps", "0,1/2,1,2"), ',')) epsList.push_back(parseRational(e));
    if (std::find(epsList.begin(), epsList.end(), Rational(0)) == epsList.end()) epsList.insert(epsList.begin(), 0);

    WeakWindow win{cfg.real("xmin", -10), cfg.real("xmax", 10), cfg.real("T", 2)};
    int nPhi = cfg.integer("phis", 24);
    if (nPhi < 1) throw ConfigError("phis must be positive");
    std::mt19937 rng(static_cast<unsigned>(cfg.integer("seed", 7)));
    double span = std::min(4.0, 0.4 * (win.xMax - win.xMin));
    double mid = 0.5 * (win.xMin + win.xMax);
    std::uniform_real_distribution<double> X(mid - span, mid + span), T(-0.05, 0.6 * win.T), RX(0.3, 2.5),
        RT(0.1, 0.3 * win.T);
    std::vector<TestFunction> phis;
    for (int i = 0; i < nPhi; ++i) {
        double x0 = X(rng), t0 = T(rng), rx = RX(rng), rt = RT(rng);
        phis.push_back({x0, t0, rx, rt});
    }

    fs::path out = prepareOut(cfg);
    CsvWriter csv(out / "residuals.csv", metaLines(cfg), {"phi", "x0", "t0", "rx", "rt", "eps", "residual", "ratio"});
    const double tol0 = cfg.real("tol", 1e-7), tolRatio = cfg.real("ratio_tol", 1e-6);
    double worst0 = 0, worstRatio = 0;
    json rows = json::array();
    for (int i = 0; i < nPhi; ++i) {
        const auto& f = phis[i];
        double r0 = weakResidual(u, 0, a, f, win);
        worst0 = std::max(worst0, std::abs(r0));
        std::optional<double> ref;
        for (auto& e : epsList) {
            double r = e == 0 ? r0 : weakResidual(u, e, a, f, win);
            double ratio = e == 0 ? 0 : (r - r0) / e.get_d();
            if (e != 0) {
                if (!ref) ref = ratio;
                worstRatio = std::max(worstRatio, std::abs(ratio - *ref) / std::max(std::abs(*ref), 1e-300));
            }
            csv.row(std::vector<std::string>{std::to_string(i), formatDouble(f.x0), formatDouble(f.t0), formatDouble(f.rx),
                                             formatDouble(f.rt), formatRational(e), formatDouble(r), formatDouble(ratio)});
            rows.push_back({{"phi", i}, {"eps", formatRational(e)}, {"residual", r}, {"ratio", ratio}});
        }
    }
    PeakSlopes sl = peakProfileCheck(u);
    auto gaps = initialConvergenceCheck(u);
    json g = json::array();
    for (auto& x : gaps) g.push_back({{"t", x.t}, {"valueGap", x.valueGap}, {"slopeGap", x.slopeGap}});

    bool ok = worst0 <= tol0 && worstRatio <= tolRatio;
    writeJson(out / "weak.json", {{"config", cfg.toJson()},
                                  {"solution", u.sol.describe()},
                                  {"window", {win.xMin, win.xMax, win.T}},
                                  {"maxResidualEps0", worst0},
                                  {"maxRatioSpread", worstRatio},
                                  {"slopes", {sl.left, sl.right}},
                                  {"initialGap", g},
                                  {"residuals", rows},
                                  {"status", ok ? "pass" : "fail"}});
    log << "max |residual| at eps=0: " << formatDouble(worst0) << '\n'
        << "eps-ratio spread: " << formatDouble(worstRatio) << '\n'
        << "crest slopes: " << formatDouble(sl.left) << ", " << formatDouble(sl.right) << '\n';
    for (auto& x : gaps)
        log << "t=" << formatDouble(x.t) << " value gap " << formatDouble(x.valueGap) << " slope gap "
            << formatDouble(x.slopeGap) << '\n';
    return ok ? kPass : kCheckFailure;
}

// ------------------------------------------------------------ catalog

int runCatalog(const RunConfig& cfg, std::ostream& log) {
    auto s = parseSolution(cfg.str("solution", "sech2:c=1"));
    GridGeometry g = geometry(cfg, -10, 10, 201);
    std::vector<double> times;
    for (auto& t : split(cfg.str("times", "0"), ',')) times.push_back(toDouble("times", t));
    if (times.empty()) throw ConfigError("times is empty");

    fs::path out = prepareOut(cfg);
    auto meta = metaLines(cfg);
    meta.insert(meta.begin(), s.describe());
    CsvWriter csv(out / "catalog.csv", meta, {"t", "x", "u"});
    for (double t : times)
        for (int i = 0; i < g.N; ++i) csv.row(std::vector<double>{t, g.x(i), s.eval(g.x(i), t)});

    json m{{"config", cfg.toJson()}, {"solution", s.describe()}, {"outputs", {"catalog.csv"}}};
    if (auto eq = s.governs()) m["equation"] = eq->name();
    int status = kPass;
    if (s.smooth()) {
        double worst = 0;
        for (double t : times) {
            double r = residualOnGrid(s, g, t);
            worst = std::isfinite(r) ? std::max(worst, r) : r;
            if (!std::isfinite(r)) break;
        }
        if (std::isfinite(worst)) {
            m["gridResidual"] = worst;
            log << s.describe() << ": grid residual " << formatDouble(worst) << '\n';
            if (cfg.has("tol") && worst > cfg.real("tol", 0)) status = kCheckFailure;
        } else {
            // u_x u_xx / u at a grid node where u = 0
            m["gridResidual"] = nullptr;
            m["note"] = "residual not evaluable: u vanishes at a node";
            log << s.describe() << ": residual not evaluable, u vanishes at a node\n";
        }
    } else {
        log << s.describe() << ": not smooth, no strong-form residual\n";
    }
    m["status"] = status == kPass ? "pass" : "fail";
    writeJson(out / "manifest.json", m);
    return status;
}

// ------------------------------------------------------------ dispatch

int runCommand(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
    int code = kRuntimeError;
    std::string kind, what;
    try {
        if (cfg.command == "verify") return runVerify(cfg, log);
        if (cfg.command == "simulate") return runSimulate(cfg, log);
        if (cfg.command == "miura map") return runMiuraMap(cfg, log);
        if (cfg.command == "miura kernel") return runMiuraKernel(cfg, log);
        if (cfg.command == "miura lift") return runMiuraLift(cfg, log);
        if (cfg.command == "weak-test") return runWeakTest(cfg, log);
        if (cfg.command == "catalog") return runCatalog(cfg, log);
        throw ConfigError("unknown command '" + cfg.command + "'");
    } catch (const ConfigError& e) {
        code = kConfigError, kind = "ConfigError", what = e.what();
    } catch (const InvalidParameters& e) {
        code = kConfigError, kind = "InvalidParameters", what = e.what();
    } catch (const SupportViolation& e) {
        code = kConfigError, kind = "SupportViolation", what = e.what();
    } catch (const NumericError& e) {
        kind = "NumericError", what = e.what();
    } catch (const SymbolicError& e) {
        kind = "SymbolicError", what = e.what();
    } catch (const std::exception& e) {
        kind = "RuntimeError", what = e.what();
    }
    json j{{"error", kind}, {"message", what}, {"exitCode", code}, {"command", cfg.command}};
    err << j.dump() << '\n';
    std::error_code ec;
    fs::path d = outputDir(cfg);
    fs::create_directories(d, ec);
    if (!ec) {
        std::ofstream out(d / "error.json");
        if (out) out << j.dump(2) << '\n';
    }
    return code;
}

}  // namespace sidv
