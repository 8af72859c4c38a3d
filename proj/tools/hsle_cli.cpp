#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "hsle/error.hpp"
#include "hsle/io.hpp"
#include "hsle/ising.hpp"
#include "hsle/loewner.hpp"
#include "hsle/mc.hpp"

namespace fs = std::filesystem;

namespace hsle::cli {

namespace {

std::vector<std::string> g_args;

std::string numbered(const std::string& stem, long i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s_%04ld.csv", stem.c_str(), i);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            fail(ErrorKind::Usage, std::string(what) + ": '" + item + "' is not a number");
        }
    }
    return out;
}

struct SimulateArgs {
    std::string driver = "bm";
    double kappa = 4.0;
    double nu = -2.0;
    std::string points;
    std::string rho;
    double dt = 1e-4;
    double T = 1.0;
    long n = 1;
    std::uint64_t seed = 0;
    std::string out = ".";
    bool trace = false;
    int stride = 1;
    int workers = 1;
};

DriverSpec build_driver(const SimulateArgs& a) {
    if (!(a.kappa > 0.0)) fail(ErrorKind::Usage, "--kappa must be positive");
    if (!(a.dt > 0.0) || !(a.T > 0.0)) fail(ErrorKind::Usage, "--dt and --T must be positive");
    if (a.n < 1) fail(ErrorKind::Usage, "--n must be at least 1");
    const std::vector<double> pts = a.points.empty() ? std::vector<double>{} : parse_list(a.points, "--points");
    if (a.driver == "bm") {
        if (!pts.empty() || !a.rho.empty()) fail(ErrorKind::Usage, "--driver bm takes no --points or --rho");
        return DriverSpec::bm(a.kappa);
    }
    if (a.driver == "sle-rho") {
        const std::vector<double> rho = a.rho.empty() ? std::vector<double>{} : parse_list(a.rho, "--rho");
        if (pts.size() != rho.size())
            fail(ErrorKind::Usage, "--driver sle-rho needs one --rho weight per --points entry (got " +
                                       std::to_string(pts.size()) + " points, " + std::to_string(rho.size()) +
                                       " weights)");
        std::vector<ForcePoint> fp;
        for (size_t i = 0; i < pts.size(); ++i) {
            if (pts[i] == 0.0) fail(ErrorKind::Usage, "--points: force points must differ from the seed 0");
            fp.push_back({pts[i], rho[i]});
        }
        return DriverSpec::sle_rho(a.kappa, fp);
    }
    if (a.driver == "hsle") {
        if (pts.size() != 2) fail(ErrorKind::Usage, "--driver hsle needs --points x,y with 0 < x < y");
        if (!(0.0 < pts[0] && pts[0] < pts[1]))
            fail(ErrorKind::Usage, "--driver hsle: marked points must satisfy 0 < x < y, got --points " + a.points);
        const Params par = Params::make(a.kappa, a.nu);  // rejects nu outside the admissible range
        (void)par;
        return DriverSpec::hsle(a.kappa, a.nu, pts[0], pts[1]);
    }
    fail(ErrorKind::Usage, "--driver must be bm, sle-rho or hsle");
}

std::uint64_t path_seed(std::uint64_t seed, long i) { return make_stream(seed, static_cast<std::uint64_t>(i))(); }

}  // namespace

const std::vector<std::string>& invocation() { return g_args; }

Command add_simulate(CLI::App& root) {
    auto a = std::make_shared<SimulateArgs>();
    a->seed = default_seed();
    CLI::App* app = root.add_subcommand("simulate", "sample Loewner driving functions (and traces)");
    app->add_option("--driver", a->driver, "bm | sle-rho | hsle")->check(CLI::IsMember({"bm", "sle-rho", "hsle"}));
    app->add_option("--kappa", a->kappa, "SLE parameter");
    app->add_option("--nu", a->nu, "hSLE parameter");
    app->add_option("--points", a->points, "marked points: x,y for hsle; force points for sle-rho");
    app->add_option("--rho", a->rho, "sle-rho weights, one per point");
    app->add_option("--dt", a->dt, "base time step");
    app->add_option("--T", a->T, "capacity horizon");
    app->add_option("--n", a->n, "number of paths");
    app->add_option("--seed", a->seed, "master seed (default HSLE_SEED)");
    app->add_option("--out", a->out, "output directory");
    app->add_flag("--trace", a->trace, "also write reconstructed traces");
    app->add_option("--stride", a->stride, "trace every stride-th sample")->check(CLI::PositiveNumber);
    app->add_option("--workers", a->workers, "worker threads (0: all cores)");
    return {app, [a]() {
                const auto t0 = std::chrono::steady_clock::now();
                const DriverSpec spec = build_driver(*a);
                fs::create_directories(a->out);
                const std::string manifest_name = "manifest.json";
                struct Out {
                    DrivingPath path;
                    Trace trace;
                    StopReason reason{};
                };
                const auto res = parallel_map<Out>(static_cast<size_t>(a->n), a->workers, [&](size_t i) {
                    Out o;
                    o.path = sample_path(spec, a->T, a->dt, path_seed(a->seed, static_cast<long>(i)), &o.reason);
                    if (a->trace) o.trace = trace_from_path(o.path, a->stride);
                    return o;
                });
                RunManifest m;
                m.command = "simulate";
                m.params = {{"driver", a->driver}, {"kappa", a->kappa}, {"nu", a->nu},     {"points", a->points},
                            {"rho", a->rho},       {"dt", a->dt},       {"T", a->T},       {"n", a->n},
                            {"trace", a->trace},   {"stride", a->stride}, {"describe", spec.describe()},
                            {"argv", invocation()}};
                m.seed = a->seed;
                m.workers = a->workers;
                std::vector<std::string> reasons;
                for (long i = 0; i < a->n; ++i) {
                    const Out& o = res[static_cast<size_t>(i)];
                    const std::string dname = numbered("driving", i);
                    CsvWriter d((fs::path(a->out) / dname).string(), "driving", manifest_name, {"t", "W"});
                    for (size_t k = 0; k < o.path.t.size(); ++k) d.row(std::vector<double>{o.path.t[k], o.path.W[k]});
                    m.outputs.push_back(dname);
                    reasons.push_back(to_string(o.reason));
                    if (a->trace) {
                        const std::string tname = numbered("trace", i);
                        CsvWriter t((fs::path(a->out) / tname).string(), "trace", manifest_name, {"t", "re", "im"});
                        for (size_t k = 0; k < o.trace.t.size(); ++k)
                            t.row(std::vector<double>{o.trace.t[k], o.trace.z[k].real(), o.trace.z[k].imag()});
                        m.outputs.push_back(tname);
                    }
                }
                m.params["stop_reasons"] = reasons;
                m.wall_clock_s = seconds_since(t0);
                const std::string mpath = (fs::path(a->out) / manifest_name).string();
                write_manifest(m, mpath);
                std::cout << mpath << '\n';
                return int(kPass);
            }};
}

Command add_ising(CLI::App& root) {
    struct Args {
        std::string domain;
        std::string dobrushin;
        long samples = 100;
        long steps = 0;
        std::uint64_t seed = 0;
        int workers = 1;
        std::string out = ".";
        std::string chirality = "left";
        int start_mark = 0;
        int max_points = 0;
    };
    auto a = std::make_shared<Args>();
    a->seed = default_seed();
    CLI::App* app = root.add_subcommand("ising", "critical Ising samples: crossings, interfaces, driving functions");
    auto* dom_opt = app->add_option("--domain", a->domain, "domain file (width/height/start/arcs)");
    auto* dob_opt = app->add_option("--dobrushin", a->dobrushin, "WxH Dobrushin rectangle instead of a file");
    dom_opt->excludes(dob_opt);
    app->add_option("--samples", a->samples, "independent configurations")->check(CLI::PositiveNumber);
    app->add_option("--steps", a->steps, "Wolff steps per sample (raised to the thermalization floor)");
    app->add_option("--seed", a->seed, "master seed (default HSLE_SEED)");
    app->add_option("--workers", a->workers, "worker threads (0: all cores)");
    app->add_option("--out", a->out, "output directory");
    app->add_option("--chirality", a->chirality, "tie-break at ambiguous vertices")->check(CLI::IsMember({"left", "right"}));
    app->add_option("--start-mark", a->start_mark, "marked point the interface starts from (0-based)");
    app->add_option("--max-points", a->max_points, "subsample interfaces to this many zipper points (0: all)");
    return {app, [a]() {
                const auto t0 = std::chrono::steady_clock::now();
                LatticeDomain dom;
                if (!a->domain.empty()) {
                    dom = LatticeDomain::load(a->domain);
                } else if (!a->dobrushin.empty()) {
                    int w = 0, h = 0;
                    char x = 0;
                    std::istringstream in(a->dobrushin);
                    if (!(in >> w >> x >> h) || x != 'x' || w < 2 || h < 2)
                        fail(ErrorKind::Usage, "--dobrushin expects WxH, e.g. 32x32");
                    dom = LatticeDomain::dobrushin(w, h);
                } else {
                    fail(ErrorKind::Usage, "ising: give --domain FILE or --dobrushin WxH");
                }
                const int nmarks = static_cast<int>(dom.arcs.size());
                if (a->start_mark < 0 || a->start_mark >= nmarks)
                    fail(ErrorKind::Usage, "--start-mark must lie in [0, " + std::to_string(nmarks - 1) + "]");
                const Chirality chir = a->chirality == "left" ? Chirality::TurnLeft : Chirality::TurnRight;
                SamplerOptions so;
                so.steps = a->steps;
                fs::create_directories(a->out);
                const std::string manifest_name = "manifest.json";

                struct Row {
                    CrossingEvents ev;
                    InterfacePath path;
                    DrivingPath driving;
                    bool has_driving = false;
                };
                const auto rows = parallel_map<Row>(static_cast<size_t>(a->samples), a->workers, [&](size_t i) {
                    const SpinConfig c = sample_critical(dom, path_seed(a->seed, static_cast<long>(i)), so);
                    Row r;
                    if (nmarks == 4) r.ev = crossing_events(c, dom);
                    if (nmarks >= 2) {
                        r.path = trace_interface(c, dom, a->start_mark, chir);
                        if (r.path.end_mark >= 0) {
                            r.driving = extract_driving(r.path, dom, a->max_points);
                            r.has_driving = true;
                        }
                    }
                    return r;
                });

                RunManifest m;
                m.command = "ising";
                m.params = {{"domain", dom.to_string()},  {"samples", a->samples},     {"steps", a->steps},
                            {"chirality", a->chirality}, {"start_mark", a->start_mark}, {"max_points", a->max_points},
                            {"thermalization_floor", thermalization_floor(dom)}, {"argv", invocation()}};
                m.seed = a->seed;
                m.workers = a->workers;
                nlohmann::json summary;
                summary["samples"] = a->samples;
                summary["width"] = dom.width;
                summary["height"] = dom.height;
                auto path_of = [&](const std::string& name) { return (fs::path(a->out) / name).string(); };
                if (nmarks == 4) {
                    CsvWriter ev(path_of("events.csv"), "ising_events", manifest_name,
                                 {"sample", "v_minus", "h_plus", "h_plus_star"});
                    long vm = 0, hp = 0, hs = 0;
                    for (long i = 0; i < a->samples; ++i) {
                        const CrossingEvents& e = rows[static_cast<size_t>(i)].ev;
                        ev.row(std::vector<double>{double(i), double(e.v_minus), double(e.h_plus), double(e.h_plus_star)});
                        vm += e.v_minus;
                        hp += e.h_plus;
                        hs += e.h_plus_star;
                    }
                    const double n = static_cast<double>(a->samples);
                    summary["freq_v_minus"] = vm / n;
                    summary["freq_h_plus"] = hp / n;
                    summary["freq_h_plus_star"] = hs / n;
                    m.outputs.push_back("events.csv");
                }
                std::vector<DrivingPath> drivings;
                if (nmarks >= 2) {
                    CsvWriter iw(path_of("interfaces.csv"), "interface", manifest_name,
                                 {"sample", "step", "x", "y", "end_mark"});
                    CsvWriter dw(path_of("driving.csv"), "ising_driving", manifest_name, {"sample", "t", "W"});
                    long ended = 0;
                    for (long i = 0; i < a->samples; ++i) {
                        const Row& r = rows[static_cast<size_t>(i)];
                        for (size_t k = 0; k < r.path.vertices.size(); ++k)
                            iw.row(std::vector<double>{double(i), double(k), double(r.path.vertices[k].first),
                                                       double(r.path.vertices[k].second), double(r.path.end_mark)});
                        if (r.has_driving) {
                            ++ended;
                            for (size_t k = 0; k < r.driving.t.size(); ++k)
                                dw.row(std::vector<double>{double(i), r.driving.t[k], r.driving.W[k]});
                            drivings.push_back(r.driving);
                        }
                    }
                    summary["interfaces_ending_at_a_mark"] = ended;
                    m.outputs.push_back("interfaces.csv");
                    m.outputs.push_back("driving.csv");
                }
                if (drivings.size() >= 200) {
                    const KappaEstimate ke = kappa_estimate(drivings, a->seed);
                    summary["kappa_slope"] = ke.slope;
                    summary["kappa_slope_stderr"] = ke.stderr_;
                    summary["kappa_window_t_max"] = ke.t_max;
                } else {
                    summary["kappa_slope"] = nullptr;
                    summary["kappa_slope_note"] = "needs at least 200 interfaces ending at a marked point";
                }
                summary["manifest"] = manifest_name;
                {
                    std::ofstream f(path_of("summary.json"));
                    f << summary.dump(2) << '\n';
                }
                m.outputs.push_back("summary.json");
                m.wall_clock_s = seconds_since(t0);
                write_manifest(m, path_of(manifest_name));
                std::cout << summary.dump(2) << '\n' << path_of(manifest_name) << '\n';
                return int(kPass);
            }};
}

namespace {

int dispatch(std::vector<std::string> args);

Command add_rerun(CLI::App& root) {
    auto manifest = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    CLI::App* app = root.add_subcommand("rerun", "repeat a run from its manifest");
    app->add_option("manifest", *manifest, "manifest.json of the earlier run")->required();
    app->add_option("--out", *out, "output directory (default: beside the manifest)");
    return {app, [manifest, out]() {
                const RunManifest m = read_manifest(*manifest);
                if (!m.params.contains("argv")) fail(ErrorKind::Usage, *manifest + ": no recorded invocation");
                std::vector<std::string> args = m.params.at("argv").get<std::vector<std::string>>();
                const std::string dir = out->empty() ? fs::path(*manifest).parent_path().string() : *out;
                std::vector<std::string> kept;
                for (size_t i = 0; i < args.size(); ++i) {
                    if (args[i] == "--out") {
                        ++i;
                        continue;
                    }
                    if (args[i].rfind("--out=", 0) == 0) continue;
                    kept.push_back(args[i]);
                }
                bool has_seed = false;
                for (const auto& x : kept) has_seed |= x == "--seed" || x.rfind("--seed=", 0) == 0;
                if (!has_seed) {
                    kept.push_back("--seed");
                    kept.push_back(std::to_string(m.seed));
                }
                kept.push_back("--out");
                kept.push_back(dir.empty() ? "." : dir);
                return dispatch(kept);
            }};
}

int dispatch(std::vector<std::string> args) {
    g_args = args;
    CLI::App root{"hSLE and multiple-SLE numerics"};
    root.set_version_flag("--version", kToolVersion);
    root.require_subcommand(1);
    const Command cmds[] = {add_simulate(root), add_verify(root), add_ising(root), add_rerun(root)};
    std::reverse(args.begin(), args.end());
    try {
        root.parse(args);
    } catch (const CLI::ParseError& e) {
        const int rc = root.exit(e);
        return rc == 0 ? int(kPass) : int(kUsage);
    }
    for (const Command& c : cmds)
        if (c.app->parsed()) return c.run();
    return int(kUsage);
}

}  // namespace

}  // namespace hsle::cli

int main(int argc, char** argv) {
    using namespace hsle;
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return cli::dispatch(args);
    } catch (const Error& e) {
        switch (e.kind()) {
            case ErrorKind::Invariant:
            case ErrorKind::StateCorruption:
                std::cerr << "internal error: " << e.what() << '\n';
                return cli::kInternal;
            default:
                std::cerr << "error: " << e.what() << '\n';
                return cli::kUsage;
        }
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return cli::kInternal;
    }
}
