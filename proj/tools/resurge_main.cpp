// resurge: Ecalle-Voronin invariants of simple parabolic germs via the
// resurgent residua series, with a dynamical horn-map cross-check.

#include "resurge/errors.hpp"
#include "resurge/fatou.hpp"
#include "resurge/horn.hpp"
#include "resurge/json_io.hpp"
#include "resurge/laplace.hpp"
#include "resurge/residua.hpp"
#include "resurge/selftest.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;
using namespace resurge;

namespace {

struct CommonArgs {
    std::string config_path;
    std::vector<int> m_override;
    int kmax_override = -1;
    int precision_override = -1;
    std::string out_override;
    bool quiet = false;
};

RunConfig load_config(const CommonArgs& args)
{
    std::ifstream in(args.config_path);
    if (!in)
        throw ConfigError("cannot open config file '" + args.config_path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    RunConfig cfg = parse_config(j);
    if (!args.m_override.empty())
        cfg.m_list = args.m_override;
    if (args.kmax_override >= 0)
        cfg.k_max = args.kmax_override;
    if (args.precision_override > 0)
        cfg.precision_bits = static_cast<unsigned>(args.precision_override);
    if (!args.out_override.empty())
        cfg.output = args.out_override;
    return cfg;
}

fs::path cache_dir(const RunConfig& cfg)
{
    if (const char* env = std::getenv("RESURGE_CACHE_DIR"))
        return fs::path(env);
    return fs::path(cfg.output) / "cache";
}

void write_text(const fs::path& p, const std::string& text)
{
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    out << text;
}

std::string kernel_cache_key(const RunConfig& cfg, const AlphaCtx& a, int depth,
                             double xi_max)
{
    std::ostringstream os;
    os << germ_key(cfg.germ) << "|alpha=" << real_to_string(a.alpha.re) << ","
       << real_to_string(a.alpha.im) << "|D=" << depth
       << "|P=" << precision_bits() << "|tol=" << cfg.kernel_tol
       << "|xi=" << std::ceil(xi_max);
    std::ostringstream hex;
    hex << std::hex << fnv1a64(os.str());
    return hex.str();
}

// Grid-independent per-m pipeline used by `invariants` and `compare`.
// The kernel table is content-addressed on disk; deleting the cache is safe.
ResiduaResult run_one_m(const RunConfig& cfg, FatouCtx& ctx, int m, bool quiet)
{
    AlphaCtx a = make_alpha_ctx(ctx, m);
    ResiduaConfig rcfg;
    rcfg.k_max = cfg.k_max;
    rcfg.grid = cfg.grid;
    rcfg.kernel_tol = cfg.kernel_tol;
    PathLog Gamma = cfg.path_override
                        ? make_polyline(*cfg.path_override, PathOptions{})
                        : make_path_gamma_m(m);
    PathLog gt = gamma_tilde(Gamma, a.omega);
    double xi_max = 0;
    for (const auto& z : gt.v)
        xi_max = std::max(xi_max, to_double(abs(z)));

    KernelTable kt;
    fs::path cpath = cache_dir(cfg) /
                     ("kernel_" + kernel_cache_key(cfg, a, ctx.depth(), xi_max) +
                      ".json");
    bool loaded = false;
    if (fs::exists(cpath)) {
        try {
            std::ifstream in(cpath);
            json j;
            in >> j;
            kt = kernel_from_json(j);
            loaded = true;
        } catch (...) {
            loaded = false; // stale or corrupt cache entry: rebuild
        }
    }
    if (!loaded) {
        kt = kernel_for_path(a, gt, cfg.kernel_tol);
        write_text(cpath, kernel_to_json(kt).dump() + "\n");
    }
    rcfg.kernel = &kt;
    if (!quiet)
        std::cerr << "  m = " << m << ": alpha = (" << to_double(a.alpha.re)
                  << ", " << to_double(a.alpha.im) << "), N = " << a.N
                  << (loaded ? " [kernel cache hit]" : "") << "\n";
    return residua(a, Gamma, rcfg);
}

json oracle_results(const RunConfig& cfg)
{
    PrecisionGuard guard(cfg.oracle.precision_bits);
    HornCtx horn = make_horn_ctx(cfg.germ, std::max(64, cfg.D), cfg.oracle);
    json out;
    out["low"] = fourier_to_json(horn_fourier(horn, HornSide::low));
    out["up"] = fourier_to_json(horn_fourier(horn, HornSide::up));
    return out;
}

json invariant_results(const RunConfig& cfg, std::map<int, Cplx>* a_out,
                       bool quiet)
{
    int abs_m = 1;
    for (int m : cfg.m_list)
        abs_m = std::max(abs_m, std::abs(m));
    RunPlan plan = plan_run(cfg.germ, abs_m, 3, cfg.D, cfg.precision_bits);
    PrecisionGuard guard(plan.precision);
    FatouCtx ctx = make_fatou_ctx(cfg.germ, plan.depth);
    json arr = json::array();
    for (int m : cfg.m_list) {
        ResiduaResult r = run_one_m(cfg, ctx, m, quiet);
        if (a_out)
            (*a_out)[m] = r.A;
        arr.push_back(residua_to_json(r));
    }
    return json{{"plan", json{{"depth", plan.depth}, {"precision", plan.precision}}},
                {"per_m", arr}};
}

int cmd_invariants(const CommonArgs& args)
{
    RunConfig cfg = load_config(args);
    auto t0 = std::chrono::steady_clock::now();
    json record;
    record["config"] = config_to_json(cfg);
    record["tool_version"] = "resurge 0.1.0";
    record["invariants"] = invariant_results(cfg, nullptr, args.quiet);
    write_text(fs::path(cfg.output) / "record.json", record.dump(2) + "\n");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_text(fs::path(cfg.output) / "timings.json",
               json{{"invariants_seconds", secs}}.dump(2) + "\n");
    if (!args.quiet)
        std::cout << "wrote " << (fs::path(cfg.output) / "record.json").string()
                  << std::endl;
    return 0;
}

int cmd_oracle(const CommonArgs& args)
{
    RunConfig cfg = load_config(args);
    json record;
    record["config"] = config_to_json(cfg);
    record["tool_version"] = "resurge 0.1.0";
    record["oracle"] = oracle_results(cfg);
    write_text(fs::path(cfg.output) / "record.json", record.dump(2) + "\n");
    if (!args.quiet)
        std::cout << record["oracle"].dump(2) << std::endl;
    return 0;
}

int cmd_compare(const CommonArgs& args)
{
    RunConfig cfg = load_config(args);
    std::map<int, Cplx> A_res;
    json record;
    record["config"] = config_to_json(cfg);
    record["tool_version"] = "resurge 0.1.0";
    record["invariants"] = invariant_results(cfg, &A_res, args.quiet);
    json orc = oracle_results(cfg);
    record["oracle"] = orc;

    bool all_pass = true;
    json table = json::array();
    for (int m : cfg.m_list) {
        // residua route: A_{-m}; oracle: low-horn A map for m > 0, up for m < 0
        const json& side = orc[m > 0 ? "low" : "up"];
        std::string key = std::to_string(std::abs(m));
        if (!side["A"].contains(key))
            throw NoiseFloorDominates("oracle has no A_" + key + " above the floor");
        Cplx a_orc = cplx_from_json(side["A"][key]);
        Cplx a_res = A_res.at(m);
        // the oracle value is meaningless below its amplified noise floor
        Real floor = real_from_string(side["residual_floor"].get<std::string>()) *
                         exp(two_pi() * Real(std::abs(m)) *
                             real_from_string(side["H"].get<std::string>())) +
                     Real(1e-12);
        Real denom = max(abs(a_res), abs(a_orc));
        double rel = denom < floor ? 0.0 : to_double(abs(a_res - a_orc) / denom);
        bool pass = rel <= cfg.compare_tol;
        all_pass = all_pass && pass;
        table.push_back(json{{"m", m},
                             {"index", m > 0 ? -m : std::abs(m)},
                             {"A_resurgent", cplx_to_json(a_res)},
                             {"A_oracle", cplx_to_json(a_orc)},
                             {"rel_diff", rel},
                             {"pass", pass}});
        if (!args.quiet)
            std::cout << "A_{" << (m > 0 ? -m : std::abs(m)) << "}  resurgent=("
                      << to_double(a_res.re) << "," << to_double(a_res.im)
                      << ")  oracle=(" << to_double(a_orc.re) << ","
                      << to_double(a_orc.im) << ")  rel=" << rel << "  "
                      << (pass ? "PASS" : "FAIL") << "\n";
    }
    record["comparison"] = table;
    write_text(fs::path(cfg.output) / "record.json", record.dump(2) + "\n");
    return all_pass ? 0 : 3;
}

int cmd_profile(const CommonArgs& args, int k)
{
    RunConfig cfg = load_config(args);
    RunPlan plan = plan_run(cfg.germ, 1, k + 1, cfg.D, cfg.precision_bits);
    PrecisionGuard guard(plan.precision);
    FatouCtx ctx = make_fatou_ctx(cfg.germ, plan.depth);
    AlphaCtx a = make_alpha_ctx(ctx, cfg.m_list.front());
    PathLog path;
    if (cfg.path_override) {
        path = make_polyline(*cfg.path_override, PathOptions{});
    } else {
        // default: Gamma~ stopped just short of omega
        Cplx stop = a.omega + polar(Real(0.05), arg(Cplx(1) - a.omega));
        std::vector<Cplx> v = {Cplx(), Cplx(1), a.omega + Cplx(1), stop};
        PathOptions opt;
        opt.relax = std::make_pair(a.omega, Real(0.2));
        path = make_polyline(std::move(v), opt);
    }
    ResiduaConfig rcfg;
    rcfg.grid = cfg.grid;
    rcfg.kernel_tol = cfg.kernel_tol;
    auto samples = profile_phi_k(a, path, k, rcfg);
    std::ostringstream csv;
    csv << "s,re_zeta,im_zeta,re_value,im_value,certified_error\n";
    for (const auto& p : samples)
        csv << to_double(p.s) << "," << to_double(p.zeta.re) << ","
            << to_double(p.zeta.im) << "," << real_to_string(p.value.re) << ","
            << real_to_string(p.value.im) << "," << cfg.grid.eval_tol << "\n";
    fs::path outp = fs::path(cfg.output) / ("profile_k" + std::to_string(k) + ".csv");
    write_text(outp, csv.str());
    if (!args.quiet)
        std::cout << "wrote " << outp.string() << std::endl;
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Ecalle-Voronin invariants from resurgent residua"};
    app.require_subcommand(1);

    CommonArgs args;
    int profile_k = 0;
    std::string selftest_only;

    auto add_common = [&](CLI::App* sub, bool need_config) {
        if (need_config)
            sub->add_option("--config", args.config_path, "JSON run configuration")
                ->required();
        sub->add_option("--m", args.m_override, "override m_list");
        sub->add_option("--kmax", args.kmax_override, "override k_max");
        sub->add_option("--precision", args.precision_override,
                        "override precision_bits");
        sub->add_option("--out", args.out_override, "override output directory");
        sub->add_flag("--quiet", args.quiet, "suppress progress output");
    };

    CLI::App* inv = app.add_subcommand("invariants",
                                       "residua route: S_k, S, A_{-m} per m");
    add_common(inv, true);
    CLI::App* orc = app.add_subcommand("oracle", "horn-map oracle Fourier data");
    add_common(orc, true);
    CLI::App* cmp = app.add_subcommand("compare",
                                       "both routes side by side with PASS/FAIL");
    add_common(cmp, true);
    CLI::App* prof = app.add_subcommand("profile",
                                        "CSV of cont Phi^_k along a path");
    add_common(prof, true);
    prof->add_option("--k", profile_k, "level k")->required();
    CLI::App* st = app.add_subcommand("selftest", "run the acceptance suite");
    st->add_option("--only", selftest_only, "comma-separated criterion ids");
    st->add_flag("--quiet", args.quiet, "suppress progress output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (inv->parsed())
            return cmd_invariants(args);
        if (orc->parsed())
            return cmd_oracle(args);
        if (cmp->parsed())
            return cmd_compare(args);
        if (prof->parsed())
            return cmd_profile(args, profile_k);
        if (st->parsed()) {
            selftest::Options opt;
            if (!selftest_only.empty()) {
                std::stringstream ss(selftest_only);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    opt.only.insert(std::stoi(tok));
            }
            return selftest::run_and_report(opt, std::cout) == 0 ? 0 : 3;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << std::endl;
        return 2;
    } catch (const ConvergenceNotDetected& e) {
        std::cerr << "convergence failure: " << e.what() << std::endl;
        return 3;
    } catch (const TailNotBounded& e) {
        std::cerr << "convergence failure: " << e.what() << std::endl;
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 3;
    }
    return 0;
}
