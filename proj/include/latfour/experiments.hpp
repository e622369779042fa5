#pragma once

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "domain.hpp"
#include "inequalities.hpp"
#include "io.hpp"
#include "multiplier.hpp"

namespace latfour {

/// One experiment invocation: lattice, discretization, exponents, inputs.
/// Exponent lists are comma-separated and accept fractions ("4/3").
struct ExperimentConfig {
    std::string lattice = "identity:2";
    int n = 32;
    int band = 8;
    int oversample = 4;
    std::string p_list = "1,1.25,4/3,1.5,2";
    std::string q_list;  // multiplier targets; empty = conjugate of each p
    std::string b_list;  // hyp interpolation exponents; empty = {p, midpoint, p'}
    double beta = 1.0;
    std::string symbol = "gaussian";
    std::string weight = "power:1";
    int trials = 50;
    std::int64_t samples = 10000;
    std::uint64_t seed = 1;
    std::string out_dir;  // empty: $LATFOURIER_OUT, else "reports"
    int jobs = 1;
};

struct SuiteResult {
    std::string suite;
    bool pass = true;
    std::vector<std::string> lines;

    explicit SuiteResult(std::string name) : suite(std::move(name)) {}

    void note(bool ok, const std::string& what) {
        pass = pass && ok;
        lines.push_back(std::string(ok ? "pass: " : "FAIL: ") + what);
    }

    void info(const std::string& what) { lines.push_back("      " + what); }
};

namespace expdetail {

inline double parse_exponent(const std::string& tok) {
    std::string s = tok;
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
    if (s.empty()) throw ConfigError("empty exponent token");
    if (s == "inf") return kInf;
    try {
        const auto slash = s.find('/');
        if (slash != std::string::npos)
            return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw ConfigError("trailing characters in number: " + s);
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse number: " + s);
    }
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::vector<double> parse_exponent_list(const std::string& s) {
    std::vector<double> out;
    if (s.empty()) return out;
    for (const std::string& tok : split(s, ','))
        out.push_back(parse_exponent(tok));
    return out;
}

/// Runs fn(0..n-1) on up to `jobs` threads. Results must be written to
/// preallocated slots so output order never depends on scheduling.
inline void parallel_for(int jobs, std::int64_t n,
                         const std::function<void(std::int64_t)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const int nt = int(std::min<std::int64_t>(jobs, n));
    std::atomic<std::int64_t> next{0};
    std::exception_ptr eptr = nullptr;
    std::mutex emu;
    std::vector<std::thread> threads;
    threads.reserve(std::size_t(nt));
    for (int t = 0; t < nt; ++t)
        threads.emplace_back([&] {
            for (;;) {
                const std::int64_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(emu);
                    if (!eptr) eptr = std::current_exception();
                    return;
                }
            }
        });
    for (auto& th : threads) th.join();
    if (eptr) std::rethrow_exception(eptr);
}

} // namespace expdetail

/// Parsed lattice source. `planar` always exists and carries transforms;
/// `embedded` is set for the a_d family (tiling in homogeneous coordinates).
struct LatticeChoice {
    std::string id;
    Lattice planar;
    std::optional<EmbeddedLattice> embedded;
};

inline LatticeChoice parse_lattice(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    try {
        if (kind == "identity") {
            const int d = std::stoi(arg);
            if (d < 1) throw ConfigError("lattice: dimension must be >= 1");
            return {spec, Lattice(Matrix::Identity(d, d)), std::nullopt};
        }
        if (kind == "diag") {
            const auto toks = expdetail::split(arg, ',');
            Vector v(std::int64_t(toks.size()));
            for (std::size_t i = 0; i < toks.size(); ++i)
                v(std::int64_t(i)) = expdetail::parse_exponent(toks[i]);
            return {spec, Lattice(Matrix(v.asDiagonal())), std::nullopt};
        }
        if (kind == "a_d") {
            const int d = std::stoi(arg);
            EmbeddedLattice emb = a_d_lattice(d);
            return {spec, emb.planar(), emb};
        }
        if (kind == "matrix") {
            const auto rows = expdetail::split(arg, ';');
            const int d = int(rows.size());
            Matrix a(d, d);
            for (int i = 0; i < d; ++i) {
                std::istringstream ls(rows[std::size_t(i)]);
                for (int j = 0; j < d; ++j)
                    if (!(ls >> a(i, j)))
                        throw ConfigError("lattice: matrix needs " + std::to_string(d) +
                                          " entries per row");
            }
            return {spec, Lattice(a), std::nullopt};
        }
        if (kind == "file") {
            std::ifstream in(arg);
            if (!in) throw ConfigError("lattice: cannot open file " + arg);
            return {spec, Lattice(load_generator(in)), std::nullopt};
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const SingularGenerator&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError("lattice: cannot parse '" + spec + "': " + e.what());
    }
    throw ConfigError("lattice: unknown source '" + spec +
                      "' (expected identity:, diag:, a_d:, matrix:, file:)");
}

inline Symbol parse_symbol(const std::string& spec, int d) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "gaussian") return Symbol::gaussian();
    if (kind == "const") {
        const auto toks = expdetail::split(arg, ',');
        if (toks.empty() || toks.size() > 2)
            throw ConfigError("symbol: const needs re[,im]");
        const double re = expdetail::parse_exponent(toks[0]);
        const double im = toks.size() == 2 ? expdetail::parse_exponent(toks[1]) : 0.0;
        return Symbol::constant({re, im});
    }
    if (kind == "poly") {
        Symbol::CoeffMap coeffs;
        for (const std::string& term : expdetail::split(arg, ';')) {
            if (term.empty()) continue;
            const auto eq = term.find('=');
            if (eq == std::string::npos)
                throw ConfigError("symbol: poly term needs '=': " + term);
            std::istringstream ls(term.substr(0, eq));
            std::vector<int> alpha(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i)
                if (!(ls >> alpha[std::size_t(i)]) || alpha[std::size_t(i)] < 0)
                    throw ConfigError("symbol: poly multi-index needs " +
                                      std::to_string(d) + " nonnegative ints: " + term);
            const auto toks = expdetail::split(term.substr(eq + 1), ',');
            if (toks.empty() || toks.size() > 2)
                throw ConfigError("symbol: poly coefficient needs re[,im]: " + term);
            const double re = expdetail::parse_exponent(toks[0]);
            const double im = toks.size() == 2 ? expdetail::parse_exponent(toks[1]) : 0.0;
            coeffs[alpha] = {re, im};
        }
        if (coeffs.empty()) throw ConfigError("symbol: poly needs at least one term");
        return Symbol::polynomial(std::move(coeffs));
    }
    if (kind == "table") {
        Symbol::CoeffMap values;
        for (auto& [key, vals] : io::read_indexed_table(arg, d, 2))
            values[key] = {vals[0], vals[1]};
        return Symbol::table(std::move(values));
    }
    throw ConfigError("symbol: unknown kind '" + spec +
                      "' (expected gaussian, const:, poly:, table:)");
}

inline WeightFunction parse_weight(const std::string& spec, const Lattice& lat,
                                   int band) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "power")
        return make_power_weight(lat, band, expdetail::parse_exponent(arg));
    if (kind == "table") {
        WeightFunction::Map m;
        for (auto& [key, vals] : io::read_indexed_table(arg, lat.dim(), 1))
            m[key] = vals[0];
        if (m.empty()) throw ConfigError("weight: table is empty");
        return WeightFunction(std::move(m));
    }
    throw ConfigError("weight: unknown kind '" + spec +
                      "' (expected power:<beta> or table:<path>)");
}

inline std::filesystem::path resolve_out_dir(const ExperimentConfig& cfg) {
    std::string dir = cfg.out_dir;
    if (dir.empty()) {
        const char* env = std::getenv("LATFOURIER_OUT");
        dir = env && *env ? env : "reports";
    }
    std::filesystem::create_directories(dir);
    return dir;
}

// ---------------------------------------------------------------------------
// transform-selftest

inline SuiteResult run_transform_selftest(const ExperimentConfig& cfg) {
    SuiteResult res{"transform-selftest"};
    const LatticeChoice lc = parse_lattice(cfg.lattice);
    const Lattice& lat = lc.planar;
    const int n = cfg.n, band = cfg.band;
    const int d = lat.dim();
    const auto path = resolve_out_dir(cfg) / "transform_selftest.csv";
    io::CsvWriter csv(path, {"check", "d", "N", "K", "value", "tol", "pass", "seed"});

    struct Row {
        const char* check;
        double value;
        double tol;
    };
    std::vector<Row> rows;

    auto random_grid = [&](std::int64_t trial) {
        rng::Stream st(rng::derive(cfg.seed, {900, trial}));
        GridFunction f = GridFunction::zero(lat, n);
        for (auto& v : f.samples()) v = st.cnormal();
        return f;
    };
    auto max_abs_diff = [](const Spectrum& a, const Spectrum& b) {
        double m = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
        return m;
    };

    {
        double worst = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            GridFunction f = random_grid(t);
            worst = std::max(worst, max_abs_diff(forward(f, band),
                                                 slow_forward_oracle(f, band)));
        }
        rows.push_back({"oracle_equivalence", worst, 1e-11});
    }
    {
        double worst = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            Spectrum c = random_spectrum(lat, band, cfg.seed, t);
            Spectrum back = forward(inverse(c, n), band);
            double sup = 0.0, diff = 0.0;
            for (std::size_t i = 0; i < c.size(); ++i) {
                sup = std::max(sup, std::abs(c.entries()[i]));
                diff = std::max(diff, std::abs(c.entries()[i] - back.entries()[i]));
            }
            worst = std::max(worst, diff / sup);
        }
        rows.push_back({"round_trip", worst, 1e-10});
    }
    {
        double worst = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            GridFunction f = inverse(random_spectrum(lat, band, cfg.seed, t), n);
            const double e2 = std::pow(lp_norm_domain(f, 2.0), 2);
            worst = std::max(worst, plancherel_defect(f, forward(f, band)) / e2);
        }
        rows.push_back({"plancherel", worst, 1e-10});
    }
    {
        double worst = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            GridFunction f = random_grid(2 * t), g = random_grid(2 * t + 1);
            rng::Stream st(rng::derive(cfg.seed, {901, t}));
            const Complex a = st.cnormal(), b = st.cnormal();
            GridFunction h = GridFunction::zero(lat, n);
            for (std::size_t i = 0; i < h.size(); ++i)
                h.samples()[i] = a * f.samples()[i] + b * g.samples()[i];
            Spectrum sf = forward(f, band), sg = forward(g, band), sh = forward(h, band);
            double diff = 0.0;
            for (std::size_t i = 0; i < sh.size(); ++i)
                diff = std::max(diff, std::abs(sh.entries()[i] - a * sf.entries()[i] -
                                               b * sg.entries()[i]));
            worst = std::max(worst, diff);
        }
        rows.push_back({"linearity", worst, 1e-11});
    }
    {
        double worst = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            GridFunction f = random_grid(t);
            rng::Stream st(rng::derive(cfg.seed, {902, t}));
            IVector tau(d);
            for (int i = 0; i < d; ++i) tau(i) = int(st.uniform_int(0, n - 1));
            GridFunction g = GridFunction::zero(lat, n);
            IVector j = IVector::Zero(d);
            std::size_t jf = 0;
            do {
                IVector src(d);
                for (int i = 0; i < d; ++i) src(i) = ((j(i) - tau(i)) % n + n) % n;
                g.samples()[jf++] = f.samples()[std::size_t(detail::flat_offset(src, n))];
            } while (detail::advance_grid(j, n));
            Spectrum sf = forward(f, band), sg = forward(g, band);
            double diff = 0.0;
            for (std::size_t i = 0; i < sf.size(); ++i) {
                const IVector& k = sf.points()[i].index;
                std::int64_t dot = 0;
                for (int c = 0; c < d; ++c) dot += std::int64_t(k(c)) * tau(c);
                const double ang = -2.0 * std::numbers::pi *
                                   double(((dot % n) + n) % n) / double(n);
                const Complex phase(std::cos(ang), std::sin(ang));
                diff = std::max(diff,
                                std::abs(sg.entries()[i] - phase * sf.entries()[i]));
            }
            worst = std::max(worst, diff);
        }
        rows.push_back({"translation", worst, 1e-10});
    }
    {
        double worst = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            GridFunction f = inverse(random_spectrum(lat, band, cfg.seed, t), n);
            GridFunction g =
                inverse(random_spectrum(lat, band, cfg.seed, 10'000 + t), n);
            Spectrum sf = forward(f, band), sg = forward(g, band);
            Complex grid = 0.0, spec = 0.0;
            for (std::size_t i = 0; i < f.size(); ++i)
                grid += f.samples()[i] * std::conj(g.samples()[i]);
            grid /= double(f.size());
            for (std::size_t i = 0; i < sf.size(); ++i)
                spec += sf.entries()[i] * std::conj(sg.entries()[i]);
            const double scale = lp_norm_domain(f, 2.0) * lp_norm_domain(g, 2.0);
            worst = std::max(worst, std::abs(grid - spec) / scale);
        }
        rows.push_back({"parseval", worst, 1e-10});
    }

    for (const Row& r : rows) {
        const bool ok = r.value <= r.tol;
        csv.row({r.check, io::fmt(d), io::fmt(n), io::fmt(band), io::fmt(r.value),
                 io::fmt(r.tol), ok ? "1" : "0", io::fmt(cfg.seed)});
        res.note(ok, std::string(r.check) + " (worst " + io::fmt(r.value) + ", tol " +
                         io::fmt(r.tol) + ")");
    }

    io::write_spectrum_csv(resolve_out_dir(cfg) / "spectrum.csv",
                           random_spectrum(lat, band, cfg.seed, 0));
    res.info("wrote " + path.string());
    return res;
}

// ---------------------------------------------------------------------------
// tiling

inline SuiteResult run_tiling(const ExperimentConfig& cfg) {
    SuiteResult res{"tiling"};
    const LatticeChoice lc = parse_lattice(cfg.lattice);
    const auto path = resolve_out_dir(cfg) / "tiling.csv";
    io::CsvWriter csv(path, {"domain_id", "n_samples", "fraction_exactly_one", "seed"});

    std::vector<TilingReport> reports;
    {
        Parallelotope dom(lc.planar);
        reports.push_back(tiling_check(dom, lc.planar, cfg.samples,
                                       suggested_shift_radius(lc.planar), cfg.seed,
                                       "parallelotope:" + lc.id));
    }
    if (lc.embedded) {
        HexDomainAd dom(lc.embedded->dim());
        reports.push_back(tiling_check(dom, *lc.embedded, cfg.samples,
                                       suggested_shift_radius(*lc.embedded), cfg.seed));
        res.info("mc measure of hex domain: " +
                 io::fmt(mc_measure(dom, std::max<std::int64_t>(cfg.samples, 100'000),
                                    cfg.seed)) +
                 " (exact " + io::fmt(dom.measure()) + ")");
    }
    for (const TilingReport& r : reports) {
        csv.row({r.domain_id, io::fmt(r.n_samples), io::fmt(r.fraction_exactly_one),
                 io::fmt(r.seed)});
        res.note(r.fraction_exactly_one >= 0.999,
                 r.domain_id + " fraction_exactly_one = " +
                     io::fmt(r.fraction_exactly_one));
    }
    res.info("wrote " + path.string());
    return res;
}

// ---------------------------------------------------------------------------
// inequalities

namespace expdetail {

inline GridFunction normalized_in_lp(const GridFunction& f, double p) {
    const double nrm = lp_norm_domain(f, p);
    GridFunction g = f;
    if (nrm > 0.0)
        for (auto& v : g.samples()) v /= nrm;
    return g;
}

struct IneqTask {
    InequalityName name;
    double p = kNaN;
    double b = kNaN;
    std::int64_t trial = 0;
};

} // namespace expdetail

inline SuiteResult run_inequalities(const ExperimentConfig& cfg) {
    SuiteResult res{"inequalities"};
    const LatticeChoice lc = parse_lattice(cfg.lattice);
    const Lattice& lat = lc.planar;
    const int n = cfg.n, band = cfg.band, d = lat.dim();
    if (2 * band + 1 > n)
        throw ConfigError("K: band does not fit the grid (2K+1 > N)");
    const WeightFunction phi = parse_weight(cfg.weight, lat, band);
    const std::vector<double> ps = expdetail::parse_exponent_list(cfg.p_list);
    if (ps.empty()) throw ConfigError("p: at least one exponent required");

    // Deterministic task list; tasks carry no shared state so --jobs only
    // changes wall time, never bytes.
    std::vector<expdetail::IneqTask> tasks;
    for (std::int64_t t = 0; t < cfg.trials; ++t)
        tasks.push_back({InequalityName::plancherel, 2.0, kNaN, t});
    for (double p : ps)
        if (p >= 1.0 && p <= 2.0)
            for (std::int64_t t = 0; t < cfg.trials; ++t)
                tasks.push_back({InequalityName::hy, p, kNaN, t});
    for (double p : ps)
        if (p >= 1.0 && p <= 2.0)
            for (std::int64_t t = 0; t < cfg.trials; ++t)
                tasks.push_back({InequalityName::hy_inverse, p, kNaN, t});
    for (double p : ps)
        if (p > 1.0 && p <= 2.0)
            for (std::int64_t t = 0; t < cfg.trials; ++t)
                tasks.push_back({InequalityName::paley, p, kNaN, t});
    for (double p : ps)
        if (p > 1.0 && p <= 2.0)
            for (std::int64_t t = 0; t < cfg.trials; ++t)
                tasks.push_back({InequalityName::hardy_littlewood, p, kNaN, t});
    for (double p : ps) {
        if (!(p > 1.0 && p <= 2.0)) continue;
        const double pp = conj_exponent(p);
        std::vector<double> bs = expdetail::parse_exponent_list(cfg.b_list);
        if (bs.empty()) bs = {p, 0.5 * (p + pp), pp};
        for (double b : bs) {
            if (!(b >= p && b <= pp)) continue;
            for (std::int64_t t = 0; t < cfg.trials; ++t)
                tasks.push_back({InequalityName::hyp, p, b, t});
        }
    }

    std::vector<InequalityReport> results(tasks.size());
    expdetail::parallel_for(cfg.jobs, std::int64_t(tasks.size()), [&](std::int64_t i) {
        const expdetail::IneqTask& tk = tasks[std::size_t(i)];
        Spectrum c = random_spectrum(lat, band, cfg.seed, tk.trial);
        switch (tk.name) {
            case InequalityName::plancherel:
                results[std::size_t(i)] =
                    check_plancherel(expdetail::normalized_in_lp(inverse(c, n), 2.0),
                                     band);
                break;
            case InequalityName::hy:
                results[std::size_t(i)] = check_hausdorff_young(
                    expdetail::normalized_in_lp(inverse(c, n), tk.p), band, tk.p);
                break;
            case InequalityName::hy_inverse: {
                const double nrm = lp_norm_dual(c, tk.p);
                if (nrm > 0.0)
                    for (auto& v : c.entries()) v /= nrm;
                results[std::size_t(i)] = check_hy_inverse(c, tk.p, cfg.oversample);
                break;
            }
            case InequalityName::paley:
                results[std::size_t(i)] = check_paley(
                    expdetail::normalized_in_lp(inverse(c, n), tk.p), band, tk.p, phi);
                break;
            case InequalityName::hardy_littlewood:
                results[std::size_t(i)] = check_hardy_littlewood(
                    expdetail::normalized_in_lp(inverse(c, n), tk.p), band, tk.p, phi,
                    cfg.beta);
                break;
            case InequalityName::hyp:
                results[std::size_t(i)] =
                    check_hyp(expdetail::normalized_in_lp(inverse(c, n), tk.p), band,
                              tk.p, tk.b, phi);
                break;
        }
    });

    const auto out = resolve_out_dir(cfg);
    const auto path = out / "inequalities.csv";
    io::CsvWriter csv(path, {"name", "d", "N", "K", "p", "b", "beta", "M_phi", "lhs",
                             "rhs_scaffold", "ratio", "seed"});
    std::map<std::string, io::SvgSeries> series;
    const std::map<std::string, std::string> palette = {
        {"plancherel", "#1f77b4"},     {"hy", "#d62728"},
        {"hy_inverse", "#2ca02c"},     {"paley", "#9467bd"},
        {"hardy_littlewood", "#ff7f0e"}, {"hyp", "#8c564b"}};
    struct Worst {
        double ratio = 0.0;
        bool pass = true;
    };
    std::map<std::string, Worst> worst;
    double hl_c = kNaN;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const InequalityReport& r = results[i];
        if (r.name == InequalityName::hardy_littlewood) hl_c = r.c_weight;
        const int n_used = r.name == InequalityName::hy_inverse
                               ? cfg.oversample * (2 * band + 1)
                               : n;
        csv.row({to_string(r.name), io::fmt(d), io::fmt(n_used), io::fmt(band),
                 io::fmt(r.p), io::fmt(r.b),
                 r.name == InequalityName::hardy_littlewood ? io::fmt(cfg.beta) : "",
                 io::fmt(r.m_phi), io::fmt(r.lhs), io::fmt(r.rhs_scaffold),
                 io::fmt(r.ratio), io::fmt(cfg.seed)});
        auto& s = series[to_string(r.name)];
        if (s.label.empty()) {
            s.label = to_string(r.name);
            s.color = palette.at(s.label);
        }
        s.points.emplace_back(r.p, r.ratio);
        auto& w = worst[to_string(r.name)];
        w.ratio = std::max(w.ratio, r.ratio);
        w.pass = w.pass && r.hard_pass();
    }
    for (const auto& [name, s] : series) {
        io::write_svg_scatter(out / ("inequalities_" + name + ".svg"),
                              std::string("ratio vs p: ") + name, "p", "lhs/rhs",
                              {s});
    }
    for (const auto& [name, w] : worst)
        res.note(w.pass, name + " max ratio " + io::fmt(w.ratio));
    if (!std::isnan(hl_c))
        res.info("hardy_littlewood weight sum C = " + io::fmt(hl_c));
    res.info("wrote " + path.string());
    return res;
}

// ---------------------------------------------------------------------------
// multiplier

inline SuiteResult run_multiplier(const ExperimentConfig& cfg) {
    SuiteResult res{"multiplier"};
    const LatticeChoice lc = parse_lattice(cfg.lattice);
    const Lattice& lat = lc.planar;
    const int n = cfg.n, band = cfg.band, d = lat.dim();
    if (2 * band + 1 > n)
        throw ConfigError("K: band does not fit the grid (2K+1 > N)");
    const Symbol sigma = parse_symbol(cfg.symbol, d);
    const std::vector<DualPoint> pts = Spectrum::zero(lat, band).points();
    const std::vector<DualPoint> pts2 = Spectrum::zero(lat, 2 * band).points();

    const auto out = resolve_out_dir(cfg);
    const auto path = out / "multiplier.csv";
    io::CsvWriter csv(path, {"check", "symbol", "d", "N", "K", "p", "q", "value",
                             "bound", "ratio", "stable", "pass", "seed"});

    std::vector<double> ps = expdetail::parse_exponent_list(cfg.p_list);
    if (ps.empty()) throw ConfigError("p: at least one exponent required");
    std::vector<double> qs = expdetail::parse_exponent_list(cfg.q_list);
    if (qs.empty())
        for (double p : ps) qs.push_back(conj_exponent(p));
    if (qs.size() != ps.size())
        throw ConfigError("q: need as many entries as p (pairs are zipped)");

    // L2 -> L2: exact bound sup|sigma| with a deterministic witness.
    {
        const double bound = l2_opnorm_bound(sigma, pts);
        const double emp = empirical_opnorm(sigma, lat, 2.0, 2.0, cfg.trials, n, band,
                                            cfg.seed, cfg.oversample);
        const bool ok = emp <= bound + 1e-9;
        csv.row({"l2_opnorm", cfg.symbol, io::fmt(d), io::fmt(n), io::fmt(band),
                 io::fmt(2.0), io::fmt(2.0), io::fmt(emp), io::fmt(bound),
                 io::fmt(detail::safe_ratio(emp, bound)), "", ok ? "1" : "0",
                 io::fmt(cfg.seed)});
        res.note(ok, "l2 empirical " + io::fmt(emp) + " <= sup|sigma| " +
                         io::fmt(bound) + " + 1e-9");

        const std::size_t am = argmax_position(sigma, pts);
        GridFunction mode = inverse(single_mode_spectrum(lat, band, pts[am].index), n);
        const double attained =
            lp_norm_domain(apply(sigma, mode, band), 2.0) / lp_norm_domain(mode, 2.0);
        const bool ok2 = std::abs(attained - bound) <= 1e-9;
        csv.row({"l2_argmax", cfg.symbol, io::fmt(d), io::fmt(n), io::fmt(band),
                 io::fmt(2.0), io::fmt(2.0), io::fmt(attained), io::fmt(bound),
                 io::fmt(detail::safe_ratio(attained, bound)), "", ok2 ? "1" : "0",
                 io::fmt(cfg.seed)});
        res.note(ok2, "argmax mode attains sup|sigma| (value " + io::fmt(attained) +
                          ")");
    }

    // Eigenfunction property over every band mode.
    {
        double worstres = 0.0;
        for (const DualPoint& pt : pts) {
            GridFunction mode = inverse(single_mode_spectrum(lat, band, pt.index), n);
            GridFunction am = apply(sigma, mode, band);
            const Complex sv = sigma.eval(pt);
            double diff = 0.0;
            for (std::size_t i = 0; i < am.size(); ++i)
                diff = std::max(diff,
                                std::abs(am.samples()[i] - sv * mode.samples()[i]));
            worstres = std::max(worstres, diff);
        }
        const bool ok = worstres <= 1e-11;
        csv.row({"eigenfunction", cfg.symbol, io::fmt(d), io::fmt(n), io::fmt(band),
                 "", "", io::fmt(worstres), io::fmt(1e-11), "", "", ok ? "1" : "0",
                 io::fmt(cfg.seed)});
        res.note(ok, "eigenfunction residual " + io::fmt(worstres) + " <= 1e-11");
    }

    // Adjoint defect on random band-limited pairs.
    {
        double worstdef = 0.0;
        const int pairs = std::min(cfg.trials, 100);
        for (int t = 0; t < pairs; ++t) {
            GridFunction f = inverse(random_spectrum(lat, band, cfg.seed, 20'000 + t), n);
            GridFunction g = inverse(random_spectrum(lat, band, cfg.seed, 30'000 + t), n);
            const double scale = lp_norm_domain(f, 2.0) * lp_norm_domain(g, 2.0);
            worstdef = std::max(worstdef,
                                adjoint_symbol_check(sigma, f, g, band) / scale);
        }
        const bool ok = worstdef <= 1e-10;
        csv.row({"adjoint", cfg.symbol, io::fmt(d), io::fmt(n), io::fmt(band), "", "",
                 io::fmt(worstdef), io::fmt(1e-10), "", "", ok ? "1" : "0",
                 io::fmt(cfg.seed)});
        res.note(ok, "adjoint defect " + io::fmt(worstdef) + " <= 1e-10");
    }

    // L^p -> L^q growth scaffolds; informational with a stability flag.
    // Table symbols are zero outside their support, so the doubled-band probe
    // only keeps the points they define (zeros never move the functional).
    const auto growth_at = [&sigma](const std::vector<DualPoint>& ptset, double p,
                                    double q) {
        std::vector<DualPoint> usable;
        usable.reserve(ptset.size());
        for (const DualPoint& pt : ptset)
            if (sigma.defined_at(pt)) usable.push_back(pt);
        return symbol_growth(sigma, usable, p, q);
    };
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const double p = ps[i], q = qs[i];
        const double g1 = growth_at(pts, p, q);
        const double g2 = growth_at(pts2, p, q);
        const bool stable = g1 > 0.0 && std::abs(g2 - g1) <= 0.01 * g1;
        const double emp = empirical_opnorm(sigma, lat, p, q, cfg.trials, n, band,
                                            cfg.seed, cfg.oversample);
        csv.row({"opnorm", cfg.symbol, io::fmt(d), io::fmt(n), io::fmt(band),
                 io::fmt(p), io::fmt(q), io::fmt(emp), io::fmt(g1),
                 io::fmt(detail::safe_ratio(emp, g1)), stable ? "1" : "0", "1",
                 io::fmt(cfg.seed)});
        res.info("opnorm p=" + io::fmt(p) + " q=" + io::fmt(q) + ": empirical " +
                 io::fmt(emp) + ", growth " + io::fmt(g1) +
                 (stable ? " (stable)" : " (growth unstable under K doubling)"));
    }

    res.info("wrote " + path.string());
    return res;
}

// ---------------------------------------------------------------------------
// report (re-render SVGs from an existing inequalities CSV)

inline SuiteResult run_report(const ExperimentConfig& cfg) {
    SuiteResult res{"report"};
    const auto out = resolve_out_dir(cfg);
    const auto path = out / "inequalities.csv";
    std::ifstream in(path);
    if (!in) throw ConfigError("report: missing " + path.string() +
                               " (run the inequalities suite first)");
    std::map<std::string, io::SvgSeries> series;
    const std::map<std::string, std::string> palette = {
        {"plancherel", "#1f77b4"},     {"hy", "#d62728"},
        {"hy_inverse", "#2ca02c"},     {"paley", "#9467bd"},
        {"hardy_littlewood", "#ff7f0e"}, {"hyp", "#8c564b"}};
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto cells = expdetail::split(line, ',');
        if (!saw_header) {
            saw_header = true;
            if (cells.size() < 12 || cells[0] != "name")
                throw ConfigError("report: unexpected CSV header in " + path.string());
            continue;
        }
        if (cells.size() < 12) throw ConfigError("report: short CSV row: " + line);
        const std::string& name = cells[0];
        if (!palette.count(name)) continue;
        if (cells[4].empty() || cells[10].empty()) continue;
        auto& s = series[name];
        if (s.label.empty()) {
            s.label = name;
            s.color = palette.at(name);
        }
        s.points.emplace_back(expdetail::parse_exponent(cells[4]),
                              expdetail::parse_exponent(cells[10]));
    }
    for (const auto& [name, s] : series)
        io::write_svg_scatter(out / ("inequalities_" + name + ".svg"),
                              std::string("ratio vs p: ") + name, "p", "lhs/rhs", {s});
    res.note(!series.empty(), "rendered " + std::to_string(series.size()) +
                                  " scatter plot(s) from " + path.string());
    return res;
}

/// Dispatch by suite name; returns the process exit code contract:
/// 0 pass, 1 hard-criterion failure.
inline SuiteResult run(const ExperimentConfig& cfg, const std::string& suite) {
    if (suite == "transform-selftest") return run_transform_selftest(cfg);
    if (suite == "tiling") return run_tiling(cfg);
    if (suite == "inequalities") return run_inequalities(cfg);
    if (suite == "multiplier") return run_multiplier(cfg);
    if (suite == "report") return run_report(cfg);
    throw ConfigError("unknown suite: " + suite);
}

} // namespace latfour
