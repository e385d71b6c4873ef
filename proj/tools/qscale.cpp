// qscale: evaluate scaled q-series, run comparison sweeps against their
// asymptotic main terms, and check sweep results against stored regression
// ceilings.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "qscale/harness.hpp"

namespace fs = std::filesystem;
using namespace qscale;

namespace {

int default_digits() {
    if (const char* env = std::getenv("QSCALE_PRECISION")) {
        int d = std::atoi(env);
        if (d < 15)
            throw config_error("QSCALE_PRECISION must be an integer >= 15");
        return d;
    }
    return 50;
}

int run_eval(const std::string& function, const std::string& branch, long n,
             const std::string& v, const std::string& nu, const std::string& alpha,
             const std::string& ell, const std::string& alphas, const std::string& betas,
             const std::string& gammas, const std::string& lambda,
             const std::string& q_log_t, int precision, const std::string& eps) {
    SweepConfig cfg;
    cfg.function = parse_function(function);
    cfg.branch = branch == "plus" ? Branch::plus : Branch::minus;
    cfg.nu = nu;
    cfg.alpha = alpha;
    cfg.ell = ell;
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::string cur;
        for (char c : s) {
            if (c == ',') {
                if (!cur.empty())
                    out.push_back(cur);
                cur.clear();
            } else
                cur.push_back(c);
        }
        if (!cur.empty())
            out.push_back(cur);
        return out;
    };
    cfg.alphas = split(alphas);
    cfg.betas = split(betas);
    cfg.gammas = split(gammas);
    cfg.precision_digits = precision;
    cfg.eps = eps;
    cfg.n_list = {n};
    cfg.v_list = {v};

    EvalPoint pt;
    pt.n = n;
    pt.v = v;
    pt.lambda = lambda;
    pt.q_log_t = q_log_t;
    LogComplex value = eval_exact(cfg, pt);

    nlohmann::ordered_json out;
    if (value.is_zero()) {
        out["log10_magnitude"] = "-inf";
        out["quarter_phase"] = 0;
        out["decimal_value"] = "0";
    } else {
        PrecisionScope scope{Precision(precision)};
        Real l10 = value.magnitude().log10_magnitude();
        out["log10_magnitude"] = to_sci(l10, 20);
        out["quarter_phase"] = value.quarter();
        if (abs(l10) < 300) {
            Real dec = value.magnitude().value();
            if (value.quarter() >= 2)
                dec = -dec;
            out["decimal_value"] = to_sci(dec, precision - kGuardDigits);
        }
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_path,
                  const std::string& format) {
    SweepConfig cfg = SweepConfig::parse_file(config_path);
    auto records = run_sweep(cfg);
    EmitFormat fmt = parse_format(format);
    if (out_path.empty())
        std::cout << (fmt == EmitFormat::csv ? render_csv(records) : render_json(records));
    else
        emit(records, fmt, out_path);
    return 0;
}

std::vector<fs::path> preset_files(const std::string& dir) {
    std::vector<fs::path> files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec))
        if (entry.path().extension() == ".conf")
            files.push_back(entry.path());
    if (ec)
        throw config_error("cannot read preset directory '" + dir + "'");
    std::sort(files.begin(), files.end());
    return files;
}

int run_verify(const std::string& preset, bool all, const std::string& presets_dir,
               std::string ceilings, bool bootstrap) {
    if (ceilings.empty())
        ceilings = (fs::path(presets_dir) / "ceilings.json").string();

    std::vector<fs::path> files;
    if (all) {
        files = preset_files(presets_dir);
        if (files.empty())
            throw config_error("no presets found in '" + presets_dir + "'");
    } else if (!preset.empty()) {
        fs::path p = fs::path(presets_dir) / (preset + ".conf");
        if (!fs::exists(p))
            throw config_error("preset '" + preset + "' not found in '" + presets_dir + "'");
        files.push_back(p);
    } else {
        throw config_error("verify needs --preset NAME or --all");
    }

    bool pass = true;
    for (const auto& file : files) {
        std::string name = file.stem().string();
        SweepConfig cfg = SweepConfig::parse_file(file.string());
        auto records = run_sweep(cfg);
        if (bootstrap) {
            record_ceilings(name, records, ceilings);
            std::cout << "sweep " << name << ": recorded " << records.size()
                      << " ceiling(s)\n";
        } else {
            RegressionReport rep = regression_check(name, records, ceilings);
            std::cout << rep.text(name);
            pass = pass && rep.pass;
        }
    }
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"scaled q-series evaluation and asymptotics verification"};
    app.require_subcommand(1);

    // eval
    std::string function, branch = "minus", v = "0.25", nu = "0", alpha = "0", ell = "1";
    std::string alphas, betas, gammas, lambda, q_log_t, eps = "1e-40";
    long n = 64;
    int precision = 0;
    auto* eval = app.add_subcommand("eval", "evaluate one scaled exact value");
    eval->add_option("function", function,
                     "g|h|aq|jackson|confluent|ismail_masson|stieltjes_wigert|q_laguerre")
        ->required();
    eval->add_option("--n", n, "scale index (default 64)");
    eval->add_option("--v", v, "v in z = e^{2 pi v} (default 0.25)");
    eval->add_option("--branch", branch, "minus|plus (default minus)");
    eval->add_option("--nu", nu, "Bessel order");
    eval->add_option("--alpha", alpha, "q-Laguerre order");
    eval->add_option("--ell", ell, "Gaussian weight for g/h");
    eval->add_option("--alphas", alphas, "comma list of alpha exponents");
    eval->add_option("--betas", betas, "comma list of beta exponents");
    eval->add_option("--gammas", gammas, "comma list of gamma exponents (h)");
    eval->add_option("--lambda", lambda, "scale value lambda (q = e^{-pi/lambda})");
    eval->add_option("--q-log-t", q_log_t, "t with q = e^{-pi t}");
    eval->add_option("--precision", precision, "working decimal digits");
    eval->add_option("--eps", eps, "relative series tolerance");

    // sweep
    std::string config_path, out_path, format = "csv";
    auto* sweep = app.add_subcommand("sweep", "run a comparison sweep from a config file");
    sweep->add_option("--config", config_path, "flat key=value config file")->required();
    sweep->add_option("--out", out_path, "output path (default stdout)");
    sweep->add_option("--format", format, "csv|json (default csv)");

    // verify
    std::string preset, presets_dir = "presets", ceilings;
    bool all = false, bootstrap = false;
    auto* verify = app.add_subcommand("verify", "check sweeps against stored ceilings");
    verify->add_option("--preset", preset, "preset name (without .conf)");
    verify->add_flag("--all", all, "run every bundled preset");
    verify->add_option("--presets-dir", presets_dir, "preset directory (default presets)");
    verify->add_option("--ceilings", ceilings,
                       "ceilings file (default <presets-dir>/ceilings.json)");
    verify->add_flag("--bootstrap", bootstrap, "record ceilings instead of checking");

    CLI11_PARSE(app, argc, argv);

    try {
        if (precision == 0)
            precision = default_digits();
        if (eval->parsed())
            return run_eval(function, branch, n, v, nu, alpha, ell, alphas, betas, gammas,
                            lambda, q_log_t, precision, eps);
        if (sweep->parsed())
            return run_sweep_cmd(config_path, out_path, format);
        if (verify->parsed())
            return run_verify(preset, all, presets_dir, ceilings, bootstrap);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const precision_error& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return 3;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
