#include "qscale/harness.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qscale {

namespace {

using json = nlohmann::ordered_json;

Real parse_real(const std::string& text, const char* what) {
    try {
        return Real(text);
    } catch (const std::exception&) {
        throw config_error(std::string("cannot parse ") + what + " value '" + text + "'");
    }
}

long parse_long(const std::string& text, const char* what) {
    try {
        size_t used = 0;
        long v = std::stol(text, &used);
        if (used != text.size())
            throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw config_error(std::string("cannot parse ") + what + " value '" + text + "'");
    }
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            if (!cur.empty())
                out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

} // namespace

SweepFunction parse_function(const std::string& name) {
    if (name == "g")
        return SweepFunction::g;
    if (name == "h")
        return SweepFunction::h;
    if (name == "aq")
        return SweepFunction::aq;
    if (name == "jackson")
        return SweepFunction::jackson;
    if (name == "confluent")
        return SweepFunction::confluent;
    if (name == "ismail_masson")
        return SweepFunction::ismail_masson;
    if (name == "stieltjes_wigert")
        return SweepFunction::stieltjes_wigert;
    if (name == "q_laguerre")
        return SweepFunction::q_laguerre;
    throw config_error("unknown function '" + name + "'");
}

std::string function_name(SweepFunction f) {
    switch (f) {
    case SweepFunction::g: return "g";
    case SweepFunction::h: return "h";
    case SweepFunction::aq: return "aq";
    case SweepFunction::jackson: return "jackson";
    case SweepFunction::confluent: return "confluent";
    case SweepFunction::ismail_masson: return "ismail_masson";
    case SweepFunction::stieltjes_wigert: return "stieltjes_wigert";
    case SweepFunction::q_laguerre: return "q_laguerre";
    }
    return "?";
}

EmitFormat parse_format(const std::string& name) {
    if (name == "csv")
        return EmitFormat::csv;
    if (name == "json")
        return EmitFormat::json;
    throw config_error("unknown format '" + name + "' (expected csv or json)");
}

void SweepConfig::validate() const {
    for (size_t i = 0; i + 1 < n_list.size(); ++i)
        if (n_list[i] >= n_list[i + 1])
            throw config_error("n_list must be strictly increasing");
    for (long n : n_list) {
        if (n < 1)
            throw config_error("n_list entries must be >= 1");
        if (n >= 256 && precision_digits < 30)
            throw config_error("precision must be >= 30 digits for n >= 256 "
                               "(bracket cancellation)");
    }
    if (precision_digits < 15)
        throw config_error("precision must be >= 15 digits");
    try {
        scale.validate();
    } catch (const scale_error& e) {
        throw config_error(std::string("scale rejected: ") + e.what());
    }
    if (function == SweepFunction::confluent && (alphas.empty() && betas.empty()))
        throw config_error("confluent sweep needs alphas/betas exponent lists");
}

SweepConfig SweepConfig::parse(std::istream& in, const std::string& origin) {
    SweepConfig cfg;
    bool saw_function = false;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos)
            continue;
        size_t e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(origin + ":" + std::to_string(line_no) +
                               ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        auto strip = [](std::string s) {
            size_t b2 = s.find_first_not_of(" \t");
            size_t e2 = s.find_last_not_of(" \t");
            return b2 == std::string::npos ? std::string() : s.substr(b2, e2 - b2 + 1);
        };
        key = strip(key);
        value = strip(value);

        if (key == "function") {
            cfg.function = parse_function(value);
            saw_function = true;
        } else if (key == "branch") {
            if (value == "minus")
                cfg.branch = Branch::minus;
            else if (value == "plus")
                cfg.branch = Branch::plus;
            else
                throw config_error(origin + ": branch must be minus or plus");
        } else if (key == "scale") {
            try {
                cfg.scale = AdmissibleScale::parse(value);
            } catch (const scale_error& err) {
                throw config_error(origin + ": " + err.what());
            }
        } else if (key == "n_list") {
            cfg.n_list.clear();
            for (const auto& tok : split_list(value))
                cfg.n_list.push_back(parse_long(tok, "n_list"));
        } else if (key == "v_list") {
            cfg.v_list = split_list(value);
        } else if (key == "nu") {
            cfg.nu = value;
        } else if (key == "alpha") {
            cfg.alpha = value;
        } else if (key == "ell") {
            cfg.ell = value;
        } else if (key == "alphas") {
            cfg.alphas = split_list(value);
        } else if (key == "betas") {
            cfg.betas = split_list(value);
        } else if (key == "gammas") {
            cfg.gammas = split_list(value);
        } else if (key == "precision") {
            cfg.precision_digits = static_cast<int>(parse_long(value, "precision"));
        } else if (key == "eps") {
            cfg.eps = value;
        } else {
            throw config_error(origin + ":" + std::to_string(line_no) +
                               ": unknown key '" + key + "'");
        }
    }
    if (!saw_function)
        throw config_error(origin + ": missing 'function'");
    cfg.validate();
    return cfg;
}

SweepConfig SweepConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open config file '" + path + "'");
    return parse(in, path);
}

namespace {

constexpr int kNoiseMarginDigits = 6;
constexpr int kMaxEscalations = 3;

// Everything the sweep needs from one cell evaluated at one precision.
struct CellOutcome {
    LogComplex exact;
    LogComplex asym;
    Real rel_err; // bracket residual on plus branches
    bool resolved = false;
};

Real effective_ell(const SweepConfig& cfg) {
    switch (cfg.function) {
    case SweepFunction::g:
    case SweepFunction::h:
        return parse_real(cfg.ell, "ell");
    case SweepFunction::confluent: {
        int two_ell = static_cast<int>(cfg.betas.size()) + 1 -
                      static_cast<int>(cfg.alphas.size());
        if (two_ell <= 0)
            throw config_error("confluent sweep is not confluent (s + 1 - r <= 0)");
        return Real(two_ell) / 2;
    }
    default:
        return Real(1);
    }
}

std::vector<Real> parse_reals(const std::vector<std::string>& toks, const char* what) {
    std::vector<Real> out;
    out.reserve(toks.size());
    for (const auto& t : toks)
        out.push_back(parse_real(t, what));
    return out;
}

Real cell_v(const SweepConfig& cfg, const std::string& token) {
    if (token.rfind("coszero:", 0) == 0) {
        long m = parse_long(token.substr(8), "coszero index");
        return effective_ell(cfg) / (2 * cfg.scale.lambda(m));
    }
    return parse_real(token, "v");
}

// Exact side plus asymptotic side for one cell at the ambient precision.
struct CellSides {
    SeriesValue exact;
    LogComplex asym_main;  // minus branches
    CosBracket bracket;    // plus branches
};

CellSides evaluate_sides(const SweepConfig& cfg, const ScaledPoint& p, const Real& eps) {
    CellSides out;
    const QParameter& q = p.q;
    const bool minus = cfg.branch == Branch::minus;
    const int arg_sign = minus ? -1 : +1;
    const Real two_pi_v = 2 * pi() * p.v;

    switch (cfg.function) {
    case SweepFunction::g: {
        SeriesSpec spec;
        spec.alphas = parse_reals(cfg.alphas, "alphas");
        spec.betas = parse_reals(cfg.betas, "betas");
        spec.ell = parse_real(cfg.ell, "ell");
        LogReal z = LogReal::from_log(arg_sign, two_pi_v - 4 * p.n * spec.ell * q.log_q());
        out.exact = g_eval_traced(spec, q, z, eps);
        if (minus)
            out.asym_main = LogComplex(g_asym_minus(spec, p));
        else
            out.bracket = g_asym_plus_bracket(spec, p);
        break;
    }
    case SweepFunction::h: {
        SeriesSpec spec;
        spec.alphas = parse_reals(cfg.alphas, "alphas");
        spec.betas = parse_reals(cfg.betas, "betas");
        spec.gammas = parse_reals(cfg.gammas, "gammas");
        spec.ell = parse_real(cfg.ell, "ell");
        LogReal z = LogReal::from_log(arg_sign, two_pi_v - p.n * spec.ell * q.log_q());
        out.exact = h_eval_traced(spec, q, p.n, z, eps);
        if (minus)
            out.asym_main = LogComplex(h_asym_minus(spec, p));
        else
            out.bracket = h_asym_plus_bracket(spec, p);
        break;
    }
    case SweepFunction::aq: {
        LogReal z = LogReal::from_log(arg_sign, two_pi_v - 4 * p.n * q.log_q());
        out.exact = ramanujan_aq_traced(z, q, eps);
        if (minus)
            out.asym_main = LogComplex(cor_aq(p, Branch::minus));
        else
            out.bracket = cor_aq_bracket(p);
        break;
    }
    case SweepFunction::jackson: {
        Real nu = parse_real(cfg.nu, "nu");
        // 2 sqrt(z q^{-nu}) q^{-2n}, times i on the minus branch.
        Real lm = ln2() + pi() * p.v - nu / 2 * q.log_q() - 2 * p.n * q.log_q();
        LogComplex z = LogComplex::from_polar(minus ? 1 : 0, LogReal::exp_of(lm));
        out.exact = jackson_j2_traced(z, nu, q, eps);
        if (minus)
            out.asym_main = cor_jackson(p, nu, Branch::minus);
        else
            out.bracket = cor_jackson_bracket(p, nu);
        break;
    }
    case SweepFunction::confluent: {
        ConfluentParams params = ConfluentParams::make(parse_reals(cfg.alphas, "alphas"),
                                                       parse_reals(cfg.betas, "betas"));
        const Real& ell = params.spec.ell;
        // (-1)^{s+1-r} on the minus branch, (-1)^{s-r} on the plus branch,
        // argument z q^{-ell(4n-1)} exactly as displayed.
        int sign_exp = params.s() - params.r() + (minus ? 1 : 0);
        int sign = (sign_exp % 2 == 0) ? +1 : -1;
        LogReal z = LogReal::from_log(sign, two_pi_v - ell * (4 * p.n - 1) * q.log_q());
        out.exact = rphis_traced(params, q, z, eps);
        if (minus)
            out.asym_main = LogComplex(cor_confluent(params, p, Branch::minus));
        else
            out.bracket = cor_confluent_bracket(params, p);
        break;
    }
    case SweepFunction::ismail_masson: {
        // e^xi = i e^{pi v} for sinh(pi(v + i/2)), e^{pi v} for sinh(pi v).
        LogComplex xi_exp =
            LogComplex::from_polar(minus ? 1 : 0, LogReal::exp_of(pi() * p.v));
        out.exact = ismail_masson_h_traced(p.n, xi_exp, q);
        if (minus)
            out.asym_main = cor_ismail_masson(p, p.n, Branch::minus);
        else
            out.bracket = cor_ismail_masson_bracket(p, p.n);
        break;
    }
    case SweepFunction::stieltjes_wigert: {
        LogReal x = LogReal::from_log(arg_sign, two_pi_v - p.n * q.log_q());
        out.exact = stieltjes_wigert_traced(p.n, x, q, eps);
        if (minus)
            out.asym_main = LogComplex(cor_stieltjes_wigert(p, p.n, Branch::minus));
        else
            out.bracket = cor_stieltjes_wigert_bracket(p, p.n);
        break;
    }
    case SweepFunction::q_laguerre: {
        Real alpha = parse_real(cfg.alpha, "alpha");
        // The q-Laguerre display uses z = e^{-2 pi v}.
        LogReal x = LogReal::from_log(arg_sign, -two_pi_v - (alpha + p.n) * q.log_q());
        out.exact = q_laguerre_traced(p.n, alpha, x, q, eps);
        if (minus)
            out.asym_main = LogComplex(cor_q_laguerre(p, p.n, alpha, Branch::minus));
        else
            out.bracket = cor_q_laguerre_bracket(p, p.n, alpha);
        break;
    }
    }
    return out;
}

CellOutcome evaluate_cell(const SweepConfig& cfg, long n, const std::string& v_token,
                          int digits) {
    PrecisionScope scope{Precision(digits)};
    const Real eps = parse_real(cfg.eps, "eps");
    const Real v = cell_v(cfg, v_token);
    const ScaledPoint p = ScaledPoint::make(cfg.scale, n, v);

    CellSides sides = evaluate_sides(cfg, p, eps);
    CellOutcome out;
    out.exact = sides.exact.value;

    if (out.exact.is_zero())
        return out; // cancellation swallowed everything: escalate

    // Decimal digits lost to cancellation inside the exact-side sum.
    Real lost = sides.exact.peak_logmag - out.exact.magnitude().logmag();
    if (lost < 0)
        lost = 0;
    const Real noise_ln = lost + (kNoiseMarginDigits - digits) * log(Real(10));

    if (cfg.branch == Branch::minus) {
        out.asym = sides.asym_main;
        if (out.exact.quarter() != out.asym.quarter())
            return out; // phase not yet resolved at this precision
        LogComplex diff = out.exact - out.asym;
        if (diff.is_zero()) {
            out.rel_err = Real(0);
            out.resolved = true; // bit-identical agreement
            return out;
        }
        Real rel_ln = diff.magnitude().logmag() - out.asym.magnitude().logmag();
        out.rel_err = exp(rel_ln);
        out.resolved = rel_ln >= noise_ln + log(Real(10));
    } else {
        out.asym = sides.bracket.folded();
        LogComplex b = out.exact / sides.bracket.prefactor;
        if (!b.on_real_axis())
            return out;
        LogReal resid = b.real_signed() - LogReal::from_value(sides.bracket.cos_value);
        if (resid.is_zero())
            return out;
        // Noise floor is relative to the bracket scale, which is O(1).
        Real scale_ln = b.magnitude().logmag();
        if (sides.bracket.cos_value != 0) {
            Real c_ln = log(abs(sides.bracket.cos_value));
            if (c_ln > scale_ln)
                scale_ln = c_ln;
        }
        out.rel_err = exp(resid.logmag());
        out.resolved = resid.logmag() >= scale_ln + noise_ln + log(Real(10));
    }
    return out;
}

Real predicted_rate_for(const SweepConfig& cfg, const ScaledPoint& p, const Real& ell) {
    if (cfg.function == SweepFunction::confluent)
        return 1 / p.lambda;
    Real factor = cfg.branch == Branch::minus ? Real(1) : Real(2);
    return exp(-factor * pi() * p.lambda / ell);
}

} // namespace

LogComplex eval_exact(const SweepConfig& cfg, const EvalPoint& pt) {
    PrecisionScope scope{Precision(cfg.precision_digits)};
    const Real eps = parse_real(cfg.eps, "eps");
    if (!pt.lambda.empty() && !pt.q_log_t.empty())
        throw config_error("eval: lambda and q_log_t are mutually exclusive");
    Real lambda;
    if (!pt.lambda.empty())
        lambda = parse_real(pt.lambda, "lambda");
    else if (!pt.q_log_t.empty())
        lambda = 1 / parse_real(pt.q_log_t, "q_log_t");
    else
        lambda = cfg.scale.lambda(pt.n);
    if (!(lambda > 0))
        throw config_error("eval: lambda must be positive");
    const Real v = parse_real(pt.v, "v");
    const ScaledPoint p = ScaledPoint::make(pt.n, v, lambda);
    return evaluate_sides(cfg, p, eps).exact.value;
}

std::vector<ComparisonRecord> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    std::vector<ComparisonRecord> records;
    records.reserve(cfg.n_list.size() * cfg.v_list.size());

    for (long n : cfg.n_list) {
        for (const auto& v_token : cfg.v_list) {
            CellOutcome cell;
            int digits = cfg.precision_digits;
            bool done = false;
            for (int attempt = 0; attempt <= kMaxEscalations; ++attempt) {
                cell = evaluate_cell(cfg, n, v_token, digits);
                if (cell.resolved) {
                    done = true;
                    break;
                }
                digits *= 2;
            }
            if (!done)
                throw precision_error("sweep cell " + function_name(cfg.function) +
                                      " n=" + std::to_string(n) + " v=" + v_token +
                                      " still cancellation-limited at " +
                                      std::to_string(digits / 2) + " digits");

            PrecisionScope scope{Precision(digits)};
            ComparisonRecord rec;
            rec.n = n;
            rec.lambda = cfg.scale.lambda(n);
            rec.v = cell_v(cfg, v_token);
            rec.v_token = v_token;
            rec.exact = cell.exact;
            rec.asym = cell.asym;
            rec.rel_err = cell.rel_err;
            ScaledPoint p = ScaledPoint::make(cfg.scale, n, rec.v);
            rec.predicted_rate = predicted_rate_for(cfg, p, effective_ell(cfg));
            rec.normalized_err = rec.rel_err / rec.predicted_rate;
            records.push_back(std::move(rec));
        }
    }
    return records;
}

namespace {

std::string log10_field(const LogComplex& z) {
    if (z.is_zero())
        return "-inf";
    return to_sci(z.magnitude().log10_magnitude(), 20);
}

} // namespace

std::string render_csv(const std::vector<ComparisonRecord>& records) {
    std::ostringstream os;
    os << "n,lambda_n,v,exact_log10,exact_phase_quarter,asym_log10,asym_phase_quarter,"
          "rel_err,predicted_rate,normalized_err\n";
    for (const auto& r : records) {
        os << r.n << ',' << to_sci(r.lambda, 20) << ',' << to_sci(r.v, 20) << ','
           << log10_field(r.exact) << ',' << r.exact.quarter() << ','
           << log10_field(r.asym) << ',' << r.asym.quarter() << ','
           << to_sci(r.rel_err, 20) << ',' << to_sci(r.predicted_rate, 20) << ','
           << to_sci(r.normalized_err, 20) << '\n';
    }
    return os.str();
}

std::string render_json(const std::vector<ComparisonRecord>& records) {
    // Real-valued fields are rendered as 20-significant-digit strings so
    // they survive any JSON parser bit-for-bit.
    json arr = json::array();
    for (const auto& r : records) {
        json obj;
        obj["n"] = r.n;
        obj["lambda_n"] = to_sci(r.lambda, 20);
        obj["v"] = to_sci(r.v, 20);
        obj["exact_log10"] = log10_field(r.exact);
        obj["exact_phase_quarter"] = r.exact.quarter();
        obj["asym_log10"] = log10_field(r.asym);
        obj["asym_phase_quarter"] = r.asym.quarter();
        obj["rel_err"] = to_sci(r.rel_err, 20);
        obj["predicted_rate"] = to_sci(r.predicted_rate, 20);
        obj["normalized_err"] = to_sci(r.normalized_err, 20);
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

void emit(const std::vector<ComparisonRecord>& records, EmitFormat format,
          const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw io_error("cannot open '" + path + "' for writing");
    out << (format == EmitFormat::csv ? render_csv(records) : render_json(records));
    if (!out)
        throw io_error("write to '" + path + "' failed");
}

namespace {

std::string cell_key(const ComparisonRecord& r) {
    return "n=" + std::to_string(r.n) + ",v=" + r.v_token;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

std::string RegressionReport::text(const std::string& name) const {
    std::ostringstream os;
    os << "sweep " << name << ": " << (pass ? "PASS" : "FAIL") << " checked=" << checked
       << " new=" << new_cells.size();
    if (checked > 0)
        os << " worst=" << format_double(worst_ratio) << "x @ " << worst_cell;
    os << '\n';
    for (const auto& f : failures)
        os << "  over-ceiling: " << f << '\n';
    for (const auto& c : new_cells)
        os << "  new-cell: " << c << '\n';
    return os.str();
}

RegressionReport regression_check(const std::string& name,
                                  const std::vector<ComparisonRecord>& records,
                                  const std::string& ceilings_path) {
    std::ifstream in(ceilings_path);
    if (!in)
        throw config_error("ceilings file '" + ceilings_path +
                           "' does not exist (run a bootstrap first)");
    json root;
    try {
        in >> root;
    } catch (const std::exception& e) {
        throw config_error("ceilings file '" + ceilings_path + "': " + e.what());
    }

    RegressionReport rep;
    const json sweeps = root.value("sweeps", json::object());
    const json cells = sweeps.value(name, json::object());
    for (const auto& r : records) {
        std::string key = cell_key(r);
        if (!cells.contains(key)) {
            rep.new_cells.push_back(key);
            continue;
        }
        double ceiling = cells[key].get<double>();
        double norm = r.normalized_err.convert_to<double>();
        double ratio = ceiling > 0 ? norm / ceiling
                                   : (norm > 0 ? std::numeric_limits<double>::infinity()
                                               : 0.0);
        ++rep.checked;
        if (ratio > rep.worst_ratio) {
            rep.worst_ratio = ratio;
            rep.worst_cell = key;
        }
        if (ratio > 2.0) {
            rep.pass = false;
            rep.failures.push_back(key + ": normalized_err=" + format_double(norm) +
                                   " ceiling=" + format_double(ceiling));
        }
    }
    return rep;
}

void record_ceilings(const std::string& name,
                     const std::vector<ComparisonRecord>& records,
                     const std::string& ceilings_path) {
    json root = json::object();
    {
        std::ifstream in(ceilings_path);
        if (in) {
            try {
                in >> root;
            } catch (const std::exception& e) {
                throw config_error("ceilings file '" + ceilings_path + "': " + e.what());
            }
        }
    }
    if (!root.contains("sweeps"))
        root["sweeps"] = json::object();
    json cells = json::object();
    for (const auto& r : records)
        cells[cell_key(r)] = r.normalized_err.convert_to<double>();
    root["sweeps"][name] = std::move(cells);

    std::ofstream out(ceilings_path, std::ios::binary);
    if (!out)
        throw io_error("cannot open '" + ceilings_path + "' for writing");
    out << root.dump(2) << '\n';
}

} // namespace qscale
