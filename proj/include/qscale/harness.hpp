#ifndef QSCALE_HARNESS_HPP
#define QSCALE_HARNESS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "qscale/asymptotics.hpp"

namespace qscale {

enum class SweepFunction {
    g,
    h,
    aq,
    jackson,
    confluent,
    ismail_masson,
    stieltjes_wigert,
    q_laguerre,
};

SweepFunction parse_function(const std::string& name);
std::string function_name(SweepFunction f);

// One sweep: a function/branch pair, a scale, the (n, v) grid, and precision
// controls. v entries are decimal literals, or "coszero:<m>" for the v that
// puts the plus-branch cosine at a zero for index m (m even).
struct SweepConfig {
    SweepFunction function = SweepFunction::aq;
    Branch branch = Branch::minus;
    AdmissibleScale scale = AdmissibleScale::power(0.4);
    std::vector<long> n_list;
    std::vector<std::string> v_list;
    std::string nu = "0";
    std::string alpha = "0";
    std::string ell = "1";
    std::vector<std::string> alphas, betas, gammas;
    int precision_digits = 50;
    std::string eps = "1e-40";

    void validate() const;

    // Flat key=value lines; '#' starts a comment; lists comma-separated;
    // unknown keys are errors.
    static SweepConfig parse(std::istream& in, const std::string& origin);
    static SweepConfig parse_file(const std::string& path);
};

// One grid cell: the exact value, the asymptotic main term, and the measured
// gap normalized by the predicted rate. On plus branches rel_err holds the
// bracket residual |exact/prefactor - cos|.
struct ComparisonRecord {
    long n = 0;
    Real lambda;
    Real v;
    LogComplex exact;
    LogComplex asym;
    Real rel_err;
    Real predicted_rate;
    Real normalized_err;
    std::string v_token; // config token; keys regression cells, not emitted
};

// Evaluates every (n, v) cell, n-major, v-minor. Exact sides are re-run at
// doubled precision (up to 8x) when series cancellation eats into the guard
// digits; a cell that stays unresolved raises precision_error naming it.
std::vector<ComparisonRecord> run_sweep(const SweepConfig& cfg);

// One-off evaluation point for the CLI eval subcommand. lambda or q_log_t
// (q = e^{-pi t}) pin the base directly; otherwise the config scale is used.
struct EvalPoint {
    long n = 64;
    std::string v = "0.25";
    std::string lambda;
    std::string q_log_t;
};

// Exact side of a single cell at the config precision (CLI eval).
LogComplex eval_exact(const SweepConfig& cfg, const EvalPoint& pt);

enum class EmitFormat { csv, json };
EmitFormat parse_format(const std::string& name);

std::string render_csv(const std::vector<ComparisonRecord>& records);
std::string render_json(const std::vector<ComparisonRecord>& records);
void emit(const std::vector<ComparisonRecord>& records, EmitFormat format,
          const std::string& path);

struct RegressionReport {
    bool pass = true;
    long checked = 0;
    std::vector<std::string> failures;  // cells over 2x their stored ceiling
    std::vector<std::string> new_cells; // cells with no stored ceiling (non-failing)
    std::string worst_cell;
    double worst_ratio = 0; // normalized_err / ceiling, max over checked cells

    std::string text(const std::string& name) const;
};

// Compares normalized errors against the stored ceilings (2x slack). Missing
// file is a config error; missing cells are reported but do not fail.
RegressionReport regression_check(const std::string& name,
                                  const std::vector<ComparisonRecord>& records,
                                  const std::string& ceilings_path);

// Bootstrap: store the observed normalized errors as the new ceilings for
// this sweep, merging with whatever the file already holds.
void record_ceilings(const std::string& name,
                     const std::vector<ComparisonRecord>& records,
                     const std::string& ceilings_path);

} // namespace qscale

#endif
