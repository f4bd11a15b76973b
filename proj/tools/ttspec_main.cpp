// ttspec: spectral analysis of linearized homoclinic transition maps
// around partially hyperbolic tori. Commands: analyze, sweep, asymptotics,
// simulate, verify.

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <unistd.h>

#include "ttspec/asymptotics.hpp"
#include "ttspec/dynamics.hpp"
#include "ttspec/ensemble.hpp"
#include "ttspec/errors.hpp"
#include "ttspec/report_io.hpp"
#include "ttspec/transition.hpp"
#include "ttspec/verify.hpp"

namespace {

using namespace ttspec;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitOracleMismatch = 2;
constexpr int kExitConditioning = 3;
constexpr int kExitGate = 5;
constexpr int kExitUsage = 64;
constexpr int kExitIo = 74;

bool use_color() {
    const char* env = std::getenv("TT_SPEC_COLOR");
    if (env && std::string(env) == "never") return false;
    return isatty(fileno(stderr));
}

void diag(const std::string& msg) {
    if (use_color())
        std::cerr << "\033[31mttspec: error:\033[0m " << msg << "\n";
    else
        std::cerr << "ttspec: error: " << msg << "\n";
}

struct GlobalOpts {
    std::string config_path;
    std::string precision = "standard";
    std::uint64_t seed = 1;
    int jobs = 0;
    std::string output;
    std::string format = "csv";
    // tolerance overrides (negative = not set)
    double tol_spec = -1, tol_hyp = -1, tol_rank = -1, tol_eig = -1;
};

RunConfig build_config(const GlobalOpts& g) {
    RunConfig cfg;
    if (!g.config_path.empty()) {
        std::ifstream is(g.config_path);
        if (!is) throw Error("cannot read config file " + g.config_path);
        nlohmann::json j = nlohmann::json::parse(is);
        if (j.contains("precision")) {
            auto m = precision_mode_from_string(j["precision"].get<std::string>());
            if (!m) throw Error("config: unknown precision mode");
            cfg.precision = *m;
        }
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("tolerances")) {
            const auto& t = j["tolerances"];
            if (t.contains("tol_spec")) cfg.tol.tol_spec = t["tol_spec"].get<double>();
            if (t.contains("tol_hyp")) cfg.tol.tol_hyp = t["tol_hyp"].get<double>();
            if (t.contains("tol_rank")) cfg.tol.tol_rank = t["tol_rank"].get<double>();
            if (t.contains("tol_eig")) cfg.tol.tol_eig = t["tol_eig"].get<double>();
        }
    }
    // flags override file values
    auto m = precision_mode_from_string(g.precision);
    if (!m) throw Error("unknown precision mode: " + g.precision);
    cfg.precision = *m;
    cfg.seed = g.seed;
    if (g.tol_spec >= 0) cfg.tol.tol_spec = g.tol_spec;
    if (g.tol_hyp >= 0) cfg.tol.tol_hyp = g.tol_hyp;
    if (g.tol_rank >= 0) cfg.tol.tol_rank = g.tol_rank;
    if (g.tol_eig >= 0) cfg.tol.tol_eig = g.tol_eig;
    return cfg;
}

struct PiSpec {
    std::string pi_arg;       // "identity", a path, or 16 inline reals
    bool special_case = false;
    double delta = 0.0;
};

std::optional<Mat4> parse_inline_matrix(const std::string& text) {
    std::istringstream is(text);
    Mat4 m;
    int k = 0;
    double v;
    while (k < 16 && (is >> v)) m(k / 4, k % 4) = v, ++k;
    double extra;
    if (k == 16 && !(is >> extra)) return m;
    return std::nullopt;
}

HomoclinicMatrix load_pi(const PiSpec& spec, const Tolerances& tol) {
    if (spec.special_case) {
        Mat4 pi = Mat4::identity();
        pi(RHO, PHI) = spec.delta;
        return HomoclinicMatrix::checked(pi, tol.tol_spec);
    }
    if (spec.pi_arg.empty())
        throw Error("no homoclinic matrix given: use --pi or --special-case --delta");
    if (spec.pi_arg == "identity")
        return HomoclinicMatrix::checked(Mat4::identity(), tol.tol_spec);
    if (auto inline_m = parse_inline_matrix(spec.pi_arg))
        return HomoclinicMatrix::checked(*inline_m, tol.tol_spec);
    std::ifstream is(spec.pi_arg);
    if (!is) throw Error("cannot read matrix file " + spec.pi_arg);
    std::stringstream buf;
    buf << is.rdbuf();
    return HomoclinicMatrix::checked(parse_matrix16(buf.str()), tol.tol_spec);
}

void emit(const GlobalOpts& g, const std::string& content) {
    if (g.output.empty())
        std::cout << content;
    else
        write_file_atomic(g.output, content);
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) out.push_back(std::stod(item));
    if (out.empty()) throw Error("empty list: " + s);
    return out;
}

// ------------------------------------------------------------------ analyze

int cmd_analyze(const GlobalOpts& g, const PiSpec& pi_spec, double lambda, double nu,
                double omega, int n) {
    RunConfig cfg = build_config(g);
    HomoclinicMatrix h = load_pi(pi_spec, cfg.tol);
    LinearModelParams p(omega, nu, lambda);
    SpectrumReport r = full_report(h, p, n, cfg);
    nlohmann::json j = report_to_json(r);
    TransversalityReport tr = transversality_report(h, cfg.tol.tol_rank);
    j["Delta"] = tr.delta;
    j["d22"] = tr.d22;
    j["params"] = {{"lambda", lambda}, {"nu", nu}, {"omega", omega}};
    emit(g, j.dump(2) + "\n");
    return kExitOk;
}

// -------------------------------------------------------------------- sweep

struct SweepRow {
    double lambda, nu;
    std::string pi_label;
    int pi_index;
    int n;
    double delta, d22, a, b, min_dist;
    Classification cls;
    int n0_running; // 0 = none yet
};

int cmd_sweep(const GlobalOpts& g, const std::string& lambda_list,
              const std::string& nu_list, int n_lo, int n_hi,
              const std::string& pi_source) {
    RunConfig cfg = build_config(g);
    std::vector<double> lambdas = parse_list(lambda_list);
    for (double l : lambdas)
        if (!(l > 0.0 && l < 1.0)) throw Error("sweep: lambda values must be in (0,1)");
    std::vector<double> nus = parse_list(nu_list);
    if (n_lo < 1 || n_hi < n_lo) throw Error("sweep: bad n range");

    // pi_source: special_case:d1,d2,... | file:PATH | ensemble:count:seed | identity
    std::vector<std::pair<std::string, HomoclinicMatrix>> pis;
    if (pi_source.rfind("special_case:", 0) == 0) {
        for (double d : parse_list(pi_source.substr(13))) {
            std::ostringstream os;
            os << "special_case(delta=" << format_double(d) << ")";
            pis.emplace_back(os.str(), special_case_matrix(d));
        }
    } else if (pi_source.rfind("file:", 0) == 0) {
        PiSpec ps;
        ps.pi_arg = pi_source.substr(5);
        pis.emplace_back("file:" + ps.pi_arg, load_pi(ps, cfg.tol));
    } else if (pi_source.rfind("ensemble:", 0) == 0) {
        std::string rest = pi_source.substr(9);
        auto colon = rest.find(':');
        int count = std::stoi(rest.substr(0, colon));
        std::uint64_t seed = colon == std::string::npos
                                 ? cfg.seed
                                 : std::stoull(rest.substr(colon + 1));
        auto mats = symplectic_ensemble(seed, count);
        for (int i = 0; i < count; ++i) {
            std::ostringstream os;
            os << "ensemble[" << i << "]";
            pis.emplace_back(os.str(), HomoclinicMatrix::checked(mats[i], cfg.tol.tol_spec));
        }
    } else if (pi_source == "identity") {
        pis.emplace_back("identity", HomoclinicMatrix::checked(Mat4::identity()));
    } else {
        throw Error("sweep: unknown --pi-source " + pi_source);
    }

    // enumerate rows lexicographically (lambda, nu, pi, n), filter by guard
    struct Task {
        double lambda, nu;
        int pi_index, n;
    };
    std::vector<Task> tasks;
    long skipped = 0;
    for (double lambda : lambdas) {
        const int guard = guard_max_n(lambda, cfg.precision);
        for (double nu : nus)
            for (int pi = 0; pi < static_cast<int>(pis.size()); ++pi)
                for (int n = n_lo; n <= n_hi; ++n) {
                    if (n > guard) {
                        ++skipped;
                        continue;
                    }
                    tasks.push_back({lambda, nu, pi, n});
                }
    }
    if (skipped > 0)
        std::cerr << "ttspec: sweep: " << skipped
                  << " rows beyond the precision guard were skipped\n";

    std::vector<SweepRow> rows(tasks.size());
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failure_mutex;
    int jobs = g.jobs > 0 ? g.jobs : static_cast<int>(std::thread::hardware_concurrency());
    jobs = std::max(1, jobs);
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= tasks.size() || failed.load()) return;
            const Task& t = tasks[i];
            try {
                const HomoclinicMatrix& h = pis[t.pi_index].second;
                LinearModelParams p(0.0, t.nu, t.lambda);
                SpectrumReport rep = full_report(h, p, t.n, cfg);
                TransversalityReport tr = transversality_report(h, cfg.tol.tol_rank);
                rows[i] = {t.lambda, t.nu,   pis[t.pi_index].first, t.pi_index,
                           t.n,      tr.delta, tr.d22,              rep.a_n,
                           rep.b_n,  rep.min_unit_circle_distance,  rep.classification,
                           0};
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lk(failure_mutex);
                failed = true;
                failure = e.what();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failed) throw OracleMismatch("sweep: " + failure);

    // running smallest hyperbolic n per (lambda, nu, pi) cell
    std::map<std::tuple<double, double, int>, int> n0;
    for (SweepRow& r : rows) {
        auto key = std::make_tuple(r.lambda, r.nu, r.pi_index);
        bool hyp = r.cls == Classification::HyperbolicReal ||
                   r.cls == Classification::HyperbolicComplex;
        auto it = n0.find(key);
        if (it == n0.end() && hyp) it = n0.emplace(key, r.n).first;
        r.n0_running = (it == n0.end()) ? 0 : it->second;
    }

    std::ostringstream out;
    if (g.format == "csv") {
        out << "lambda,nu,pi,n,Delta,d22,A,B,classification,min_unit_circle_distance,"
               "N0_running\n";
        for (const SweepRow& r : rows) {
            out << format_double(r.lambda) << ',' << format_double(r.nu) << ','
                << r.pi_label << ',' << r.n << ',' << format_double(r.delta) << ','
                << format_double(r.d22) << ',' << format_double(r.a) << ','
                << format_double(r.b) << ',' << to_string(r.cls) << ','
                << format_double(r.min_dist) << ','
                << (r.n0_running > 0 ? std::to_string(r.n0_running) : "") << '\n';
        }
    } else if (g.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const SweepRow& r : rows) {
            nlohmann::json j;
            j["lambda"] = r.lambda;
            j["nu"] = r.nu;
            j["pi"] = r.pi_label;
            j["n"] = r.n;
            j["Delta"] = r.delta;
            j["d22"] = r.d22;
            j["A"] = r.a;
            j["B"] = r.b;
            j["classification"] = to_string(r.cls);
            j["min_unit_circle_distance"] = r.min_dist;
            if (r.n0_running > 0)
                j["N0_running"] = r.n0_running;
            else
                j["N0_running"] = nullptr;
            arr.push_back(j);
        }
        out << arr.dump(2) << "\n";
    } else {
        throw Error("sweep: unknown format " + g.format);
    }
    emit(g, out.str());
    return kExitOk;
}

// -------------------------------------------------------------- asymptotics

int cmd_asymptotics(const GlobalOpts& g, const PiSpec& pi_spec, double lambda, double nu,
                    const std::string& n_list) {
    RunConfig cfg = build_config(g);
    HomoclinicMatrix h = load_pi(pi_spec, cfg.tol);
    LinearModelParams p(0.0, nu, lambda);
    std::vector<int> ns;
    for (double v : parse_list(n_list)) ns.push_back(static_cast<int>(v));
    AsymptoticsTable t = asymptotic_table(h, p, ns, cfg);
    std::ostringstream out;
    out << asymptotics_table_csv(t);
    if (!t.rows.empty()) {
        const AsymptoticsRow& last = t.rows.back();
        out << "# ratio2 at n=" << last.n << ": " << format_double(last.ratio2) << "\n";
    }
    emit(g, out.str());
    return kExitOk;
}

// ----------------------------------------------------------------- simulate

int cmd_simulate(const GlobalOpts& g, const PiSpec& pi_spec, double lambda, double nu,
                 double omega, const std::string& p_plus_arg,
                 const std::string& p_minus_arg, double radius, double mu, int count,
                 const std::vector<std::string>& points, int k) {
    RunConfig cfg = build_config(g);
    HomoclinicMatrix h = load_pi(pi_spec, cfg.tol);
    LinearModelParams p(omega, nu, lambda);

    auto parse_pair = [](const std::string& s, const char* what) {
        auto lst = parse_list(s);
        if (lst.size() != 2) throw Error(std::string("expected two numbers for ") + what);
        return lst;
    };
    auto pp = parse_pair(p_plus_arg, "--p-plus (phi,s)");
    auto pm = parse_pair(p_minus_arg, "--p-minus (phi,u)");
    Vec4 p_plus(pp[0], pp[1], 0.0, 0.0);
    Vec4 p_minus(pm[0], 0.0, 0.0, pm[1]);
    if (radius <= 0.0) radius = WindowConfig::default_radius(p_plus, p_minus);
    if (mu <= 0.0) mu = radius / 2.0;
    WindowConfig w(p_plus, p_minus, radius, mu);

    if (std::fabs(std::remainder(omega, two_pi)) > 0.0) {
        // thin-alignment warning for rotation numbers that are rational with
        // a small denominator
        for (int qden = 1; qden <= 64; ++qden) {
            double frac = omega / two_pi * qden;
            if (std::fabs(frac - std::round(frac)) < 1e-12 * qden) {
                std::cerr << "ttspec: warning: omega/(2*pi) is rational (denominator "
                          << qden << "); return-time sets may be thin\n";
                break;
            }
        }
    }

    std::vector<std::array<double, 4>> starts;
    for (const std::string& s : points) {
        auto lst = parse_list(s);
        if (lst.size() != 4) throw Error("--point expects four window coordinates");
        starts.push_back({lst[0], lst[1], lst[2], lst[3]});
    }
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    while (static_cast<int>(starts.size()) < count + static_cast<int>(points.size())) {
        std::array<double, 4> c{unit(rng), unit(rng), unit(rng), unit(rng)};
        if (in_window_domain(c)) starts.push_back(c);
    }

    std::ostringstream out;
    size_t max_len = 0;
    double expansion = 0.0;
    std::vector<ReturnRecord> longest;
    for (const auto& c : starts) {
        auto recs = itinerary(h, w, p, c, k);
        if (recs.size() > max_len) {
            max_len = recs.size();
            longest = recs;
        }
        if (g.format == "json") {
            nlohmann::json j;
            j["start"] = {c[0], c[1], c[2], c[3]};
            nlohmann::json arr = nlohmann::json::array();
            for (const ReturnRecord& rec : recs) arr.push_back(return_record_to_json(rec));
            j["itinerary"] = arr;
            out << j.dump() << "\n";
        }
    }
    if (g.format == "csv") {
        if (starts.size() != 1)
            throw Error("simulate: csv orbit dumps need exactly one starting point");
        out << itinerary_orbit_csv(longest);
    } else {
        expansion = measured_u_expansion(w, longest);
        nlohmann::json summary;
        summary["max_itinerary_length"] = max_len;
        if (expansion > 0.0)
            summary["measured_u_expansion"] = expansion;
        else
            summary["measured_u_expansion"] = nullptr;
        out << summary.dump() << "\n";
    }
    emit(g, out.str());
    return kExitOk;
}

// ------------------------------------------------------------------- verify

int cmd_verify(const GlobalOpts& g, const std::vector<std::string>& suites) {
    RunConfig cfg = build_config(g);
    auto results = run_verify(cfg, suites, g.jobs);
    bool all_ok = true;
    std::ostringstream out;
    for (const SuiteResult& r : results) {
        all_ok = all_ok && r.passed;
        out << "suite " << r.name << ": " << (r.passed ? "PASS" : "FAIL") << " ("
            << r.checks << " checks, " << std::fixed << std::setprecision(2) << r.seconds
            << " s)";
        if (!r.detail.empty()) out << " — " << r.detail;
        out << "\n";
        out.unsetf(std::ios::fixed);
    }
    out << (all_ok ? "verify: all suites passed\n" : "verify: FAILURES\n");
    std::cout << out.str();
    return all_ok ? kExitOk : kExitVerifyFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral analysis of linearized homoclinic transition maps"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    GlobalOpts g;
    app.add_option("--config", g.config_path, "JSON config file");
    app.add_option("--precision", g.precision, "standard|extended|exact");
    app.add_option("--seed", g.seed, "RNG seed");
    app.add_option("--jobs", g.jobs, "worker threads (default: logical CPUs)");
    app.add_option("--output", g.output, "output path (atomic write); default stdout");
    app.add_option("--format", g.format, "csv|json");
    app.add_option("--tol-spec", g.tol_spec, "symplecticity tolerance override");
    app.add_option("--tol-hyp", g.tol_hyp, "unit-circle band override");
    app.add_option("--tol-rank", g.tol_rank, "transversality threshold override");
    app.add_option("--tol-eig", g.tol_eig, "eigen backward-error override");

    PiSpec pi_spec;
    double lambda = 0.5, nu = 1.0, omega = 0.0;
    int n = 1;

    auto add_pi_flags = [&](CLI::App* cmd) {
        cmd->add_option("--pi", pi_spec.pi_arg,
                        "homoclinic matrix: 'identity', a file, or 16 inline reals");
        cmd->add_flag("--special-case", pi_spec.special_case,
                      "use the shear model (identity plus delta in [rho][phi])");
        cmd->add_option("--delta", pi_spec.delta, "shear parameter for --special-case");
    };

    auto* analyze = app.add_subcommand("analyze", "one spectrum report as JSON");
    add_pi_flags(analyze);
    analyze->add_option("--lambda", lambda, "contraction rate in (0,1)")->required();
    analyze->add_option("--nu", nu, "torsion coefficient")->required();
    analyze->add_option("--omega", omega, "rotation per return (simulator only)");
    analyze->add_option("-n,--n", n, "return-map power")->required();

    auto* sweep = app.add_subcommand("sweep", "batch classification table");
    std::string lambda_values, nu_values, pi_source = "identity";
    int n_lo = 1, n_hi = 1;
    sweep->add_option("--lambda-values", lambda_values, "comma list in (0,1)")->required();
    sweep->add_option("--nu-values", nu_values, "comma list")->required();
    sweep->add_option("--n-lo", n_lo, "first n")->required();
    sweep->add_option("--n-hi", n_hi, "last n (inclusive)")->required();
    sweep->add_option("--pi-source", pi_source,
                      "special_case:d1,d2,... | file:PATH | ensemble:count:seed | identity");

    auto* asym = app.add_subcommand("asymptotics", "eigenvalue-law table as CSV");
    add_pi_flags(asym);
    std::string n_list;
    asym->add_option("--lambda", lambda, "contraction rate")->required();
    asym->add_option("--nu", nu, "torsion coefficient")->required();
    asym->add_option("--n-list", n_list, "comma list of n values")->required();

    auto* sim = app.add_subcommand("simulate", "window-map itineraries as JSON lines");
    add_pi_flags(sim);
    std::string p_plus_arg = "0.3,1.0", p_minus_arg = "4.0,1.0";
    double radius = 0.0, mu = 0.0;
    int count = 0, kiter = 5;
    sim->add_option("--lambda", lambda, "contraction rate")->required();
    sim->add_option("--nu", nu, "torsion coefficient")->required();
    sim->add_option("--omega", omega, "rotation per return");
    sim->add_option("--p-plus", p_plus_arg, "phi,s of the stable-side point");
    sim->add_option("--p-minus", p_minus_arg, "phi,u of the unstable-side point");
    sim->add_option("--radius", radius, "box half-width (default 0.1*min(|s+|,|u-|))");
    sim->add_option("--mu", mu, "window scale (default radius/2)");
    sim->add_option("--count", count, "number of seeded random starting points");
    std::vector<std::string> points;
    sim->add_option("--point", points, "window start cphi,cs,crho,cu (repeatable)");
    sim->add_option("-k,--iterations", kiter, "max returns per start");

    auto* verify = app.add_subcommand("verify", "run the property suites");
    std::vector<std::string> suites;
    verify->add_option("--suite", suites, "run only the named suite(s)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(g, pi_spec, lambda, nu, omega, n);
        if (sweep->parsed())
            return cmd_sweep(g, lambda_values, nu_values, n_lo, n_hi, pi_source);
        if (asym->parsed()) return cmd_asymptotics(g, pi_spec, lambda, nu, n_list);
        if (sim->parsed())
            return cmd_simulate(g, pi_spec, lambda, nu, omega, p_plus_arg, p_minus_arg,
                                radius, mu, count, points, kiter);
        if (verify->parsed()) return cmd_verify(g, suites);
    } catch (const ConditioningExceeded& e) {
        diag(e.what());
        return kExitConditioning;
    } catch (const OracleMismatch& e) {
        diag(e.what());
        return kExitOracleMismatch;
    } catch (const NotStronglyTransverse& e) {
        diag(e.what());
        return kExitGate;
    } catch (const NotWithTorsion& e) {
        diag(e.what());
        return kExitGate;
    } catch (const NotYetHyperbolic& e) {
        diag(e.what());
        return kExitGate;
    } catch (const std::filesystem::filesystem_error& e) {
        diag(e.what());
        return kExitIo;
    } catch (const Error& e) {
        // IO-flavored failures map to 74, malformed input to 64
        std::string what = e.what();
        diag(what);
        if (what.find("cannot") != std::string::npos ||
            what.find("write failed") != std::string::npos ||
            what.find("rename") != std::string::npos)
            return kExitIo;
        return kExitUsage;
    } catch (const std::exception& e) {
        diag(e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
