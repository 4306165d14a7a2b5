// sidv: symbolic checks, simulations, Miura tools and weak-form tests.
#include "sidv/cli.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <sstream>

namespace {

struct Flags {
    std::vector<std::pair<std::string, std::string>> given;  // key, value, in order
    std::vector<std::pair<std::string, std::string*>> slots;
    std::vector<std::unique_ptr<std::string>> store;

    void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
        store.push_back(std::make_unique<std::string>());
        app->add_option(flag, *store.back(), help);
        slots.emplace_back(key, store.back().get());
    }
    void collect(CLI::App& root) {
        for (auto& [key, s] : slots)
            if (!s->empty()) given.emplace_back(key, *s);
        (void)root;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Checks and simulations for the u_t = u_xxx + ... family of third-order equations"};
    app.require_subcommand(1);
    std::string configFile, outDir;
    std::vector<std::string> sets;
    app.add_option("--config", configFile, "key=value config file")->check(CLI::ExistingFile);
    app.add_option("--set", sets, "override, key=value (repeatable)");
    app.add_option("--out", outDir, "output directory (beats SIDV_OUT_DIR)");
    app.fallthrough();

    Flags f;
    auto* verify = app.add_subcommand("verify", "symbolic suites");
    f.add(verify, "--suite", "suite", "table1,table2,lax,recursion,mikhailov,dispersion or all");
    f.add(verify, "--n", "n", "hierarchy level for table2");
    f.add(verify, "--eps", "eps", "dispersion suite eps");

    auto* sim = app.add_subcommand("simulate", "integrate the PDE");
    f.add(sim, "--init", "init", "initial data, e.g. sech2:c=1 or bump:base=1,amp=0.3,width=16");
    f.add(sim, "--variant", "variant", "family, l2 or cubic");
    f.add(sim, "--eq", "eq", "equation, e.g. \"eps=1,a=1\" or \"variant=l2,delta=1/2\"");
    f.add(sim, "--eps", "eps", "family eps (p/q)");
    f.add(sim, "-a,--a", "a", "family a (p/q)");
    f.add(sim, "--delta", "delta", "variant delta (p/q)");
    f.add(sim, "--nx", "nx", "grid points");
    f.add(sim, "--xmin", "xmin", "left end");
    f.add(sim, "--xmax", "xmax", "right end");
    f.add(sim, "--boundary", "boundary", "periodic or clamped");
    f.add(sim, "--tend", "tend", "final time");
    f.add(sim, "--form", "form", "direct, log or lift");
    f.add(sim, "--scheme", "scheme", "fd4 or spectral");
    f.add(sim, "--integrals", "integrals", "e.g. H0,H1,Hn1");

    auto* miura = app.add_subcommand("miura", "Miura map and its inverse");
    miura->require_subcommand(1);
    auto* mmap = miura->add_subcommand("map", "w = u_xx/u");
    f.add(mmap, "--u", "u", "closed-form u, e.g. kink:c=2");
    f.add(mmap, "--input", "input", "CSV with x,u columns");
    f.add(mmap, "--compare", "compare", "reference potential");
    f.add(mmap, "--nx", "nx", "grid points");
    f.add(mmap, "-t,--t", "t", "time");
    auto* kern = miura->add_subcommand("kernel", "basis of u_xx = w u");
    f.add(kern, "--w", "w", "const:w=1, selfsimilar or soliton:c=2");
    f.add(kern, "--t0", "t0", "time slice");
    f.add(kern, "--target", "target", "closed form to project onto the kernel");
    f.add(kern, "--nx", "nx", "grid points");
    auto* lift = miura->add_subcommand("lift", "evolve a kernel member");
    f.add(lift, "--w", "w", "potential");
    f.add(lift, "--coeff", "coeff", "c1,c2");
    f.add(lift, "--tend", "tend", "final time");
    f.add(lift, "--nx", "nx", "grid points");

    auto* weak = app.add_subcommand("weak-test", "weak-form residuals for peakons");
    f.add(weak, "--kind", "kind", "exp or sin");
    f.add(weak, "--eps", "eps", "comma list of eps");
    f.add(weak, "--phis", "phis", "number of random test functions");
    f.add(weak, "--seed", "seed", "random seed");
    f.add(weak, "-c,--c", "c", "peakon speed");
    f.add(weak, "-a,--a", "a", "family a (p/q)");

    auto* cat = app.add_subcommand("catalog", "sample a closed-form solution");
    f.add(cat, "--solution", "solution", "e.g. kink:c=2");
    f.add(cat, "--times", "times", "comma list");
    f.add(cat, "--nx", "nx", "grid points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : sidv::kConfigError;
    }

    sidv::RunConfig cfg;
    if (verify->parsed()) cfg.command = "verify";
    if (sim->parsed()) cfg.command = "simulate";
    if (mmap->parsed()) cfg.command = "miura map";
    if (kern->parsed()) cfg.command = "miura kernel";
    if (lift->parsed()) cfg.command = "miura lift";
    if (weak->parsed()) cfg.command = "weak-test";
    if (cat->parsed()) cfg.command = "catalog";

    try {
        if (!configFile.empty()) cfg.loadFile(configFile);
        sidv::applyEnvironment(cfg);
        for (auto& s : sets) cfg.apply(s);
        f.collect(app);
        for (auto& [k, v] : f.given) {
            if (k != "eq") {
                cfg.set(k, v);
                continue;
            }
            std::stringstream in(v);
            for (std::string part; std::getline(in, part, ',');) cfg.apply(part);
        }
        if (!outDir.empty()) cfg.set("out_dir", outDir);
    } catch (const sidv::ConfigError& e) {
        std::cerr << nlohmann::json{{"error", "ConfigError"}, {"message", e.what()}, {"exitCode", 2}}.dump() << '\n';
        return sidv::kConfigError;
    }
    return sidv::runCommand(cfg, std::cout, std::cerr);
}
