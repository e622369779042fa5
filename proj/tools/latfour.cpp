// Command-line driver: runs one experiment suite per invocation and writes
// CSV/SVG reports. Exit codes: 0 all hard criteria pass, 1 a hard criterion
// failed or a module error occurred, 2 configuration error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <latfour/latfour.hpp>

namespace {

struct RawConfig {
    latfour::ExperimentConfig cfg;
    std::string config_file;
};

void add_common_options(CLI::App* sc, RawConfig& raw) {
    sc->add_option("--config", raw.config_file, "key=value config file (flags win)");
    sc->add_option("--lattice", raw.cfg.lattice,
                   "lattice source: identity:<d> | diag:v1,v2,... | a_d:<d> | "
                   "matrix:<r11 r12;r21 r22> | file:<path>");
    sc->add_option("--N", raw.cfg.n, "grid points per axis");
    sc->add_option("--K", raw.cfg.band, "band half-width (indices in [-K,K]^d)");
    sc->add_option("--oversample", raw.cfg.oversample,
                   "oversampling factor for synthesis-side norms");
    sc->add_option("--p", raw.cfg.p_list, "comma-separated exponents, fractions ok");
    sc->add_option("--q", raw.cfg.q_list,
                   "multiplier target exponents (default: conjugates of --p)");
    sc->add_option("--b", raw.cfg.b_list, "interpolation exponents for the hyp check");
    sc->add_option("--beta", raw.cfg.beta, "weight growth exponent");
    sc->add_option("--symbol", raw.cfg.symbol,
                   "gaussian | const:re[,im] | poly:<a1 a2=re[,im];...> | table:<csv>");
    sc->add_option("--weight", raw.cfg.weight, "power:<beta> | table:<csv>");
    sc->add_option("--trials", raw.cfg.trials, "random trials per check");
    sc->add_option("--samples", raw.cfg.samples, "Monte Carlo samples (tiling)");
    sc->add_option("--seed", raw.cfg.seed, "RNG seed (reports are reproducible)");
    sc->add_option("--out", raw.cfg.out_dir,
                   "output directory (default $LATFOURIER_OUT or ./reports)");
    sc->add_option("--jobs", raw.cfg.jobs, "parallel workers for independent items");
}

/// key=value file; '#' starts a comment; a flag given on the command line
/// always beats the file.
void merge_config_file(CLI::App* sc, RawConfig& raw) {
    if (raw.config_file.empty()) return;
    std::ifstream in(raw.config_file);
    if (!in)
        throw latfour::ConfigError("config: cannot open " + raw.config_file);
    const std::map<std::string, std::function<void(const std::string&)>> setters = {
        {"lattice", [&](const std::string& v) { raw.cfg.lattice = v; }},
        {"N", [&](const std::string& v) { raw.cfg.n = std::stoi(v); }},
        {"K", [&](const std::string& v) { raw.cfg.band = std::stoi(v); }},
        {"oversample", [&](const std::string& v) { raw.cfg.oversample = std::stoi(v); }},
        {"p", [&](const std::string& v) { raw.cfg.p_list = v; }},
        {"q", [&](const std::string& v) { raw.cfg.q_list = v; }},
        {"b", [&](const std::string& v) { raw.cfg.b_list = v; }},
        {"beta",
         [&](const std::string& v) { raw.cfg.beta = latfour::expdetail::parse_exponent(v); }},
        {"symbol", [&](const std::string& v) { raw.cfg.symbol = v; }},
        {"weight", [&](const std::string& v) { raw.cfg.weight = v; }},
        {"trials", [&](const std::string& v) { raw.cfg.trials = std::stoi(v); }},
        {"samples", [&](const std::string& v) { raw.cfg.samples = std::stoll(v); }},
        {"seed", [&](const std::string& v) { raw.cfg.seed = std::stoull(v); }},
        {"out", [&](const std::string& v) { raw.cfg.out_dir = v; }},
        {"jobs", [&](const std::string& v) { raw.cfg.jobs = std::stoi(v); }},
    };
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line.erase(0, line.find_first_not_of(" \t"));
        line.erase(line.find_last_not_of(" \t\r") + 1);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw latfour::ConfigError("config: line " + std::to_string(lineno) +
                                       " is not key=value: " + line);
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        key.erase(key.find_last_not_of(" \t") + 1);
        val.erase(0, val.find_first_not_of(" \t"));
        auto it = setters.find(key);
        if (it == setters.end())
            throw latfour::ConfigError("config: unknown key '" + key + "'");
        if (sc->count("--" + key) > 0) continue; // flag wins
        try {
            it->second(val);
        } catch (const latfour::ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw latfour::ConfigError("config: bad value for key '" + key + "': " + val);
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier analysis experiments on fundamental domains of lattices"};
    app.require_subcommand(1);
    RawConfig raw;

    const char* suites[] = {"transform-selftest", "tiling", "inequalities",
                            "multiplier", "report"};
    const char* descr[] = {
        "fast-vs-oracle transform checks on random inputs",
        "Monte Carlo tiling verification for fundamental domains",
        "norm inequality ratio experiments",
        "Fourier multiplier operator-norm experiments",
        "re-render SVG plots from an existing inequalities CSV"};
    for (int i = 0; i < 5; ++i)
        add_common_options(app.add_subcommand(suites[i], descr[i]), raw);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        merge_config_file(sub, raw);
        latfour::SuiteResult res = latfour::run(raw.cfg, sub->get_name());
        for (const std::string& line : res.lines) std::cout << line << "\n";
        std::cout << (res.pass ? "OK" : "FAILED") << ": suite " << res.suite << "\n";
        return res.pass ? 0 : 1;
    } catch (const latfour::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const latfour::Error& e) {
        std::cerr << "error in suite " << sub->get_name() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
