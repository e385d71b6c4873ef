#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qscale/harness.hpp"
#include "testutil.hpp"

using namespace qscale;
using namespace qscale::test;

namespace {

SweepConfig parse_text(const std::string& text) {
    std::istringstream in(text);
    return SweepConfig::parse(in, "<inline>");
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/qscale_test_" + name) {
        std::remove(path.c_str());
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("config parsing: keys, lists, comments, errors") {
    SweepConfig cfg = parse_text("# comment\n"
                                 "function = aq\n"
                                 "branch = minus\n"
                                 "scale = n^0.4\n"
                                 "n_list = 8, 16, 32\n"
                                 "v_list = 0.25, coszero:16\n"
                                 "precision = 40\n"
                                 "eps = 1e-30\n");
    CHECK(cfg.function == SweepFunction::aq);
    CHECK(cfg.n_list == std::vector<long>{8, 16, 32});
    CHECK(cfg.v_list.size() == 2);
    CHECK(cfg.precision_digits == 40);

    CHECK_THROWS_AS(parse_text("function = aq\nwhatever = 3\n"), config_error);
    CHECK_THROWS_AS(parse_text("n_list = 4\n"), config_error); // missing function
    CHECK_THROWS_AS(parse_text("function = nosuch\n"), config_error);
    CHECK_THROWS_AS(parse_text("function = aq\nscale = n^0.6\n"), config_error);
    CHECK_THROWS_AS(parse_text("function = aq\nn_list = 16, 8\n"), config_error);
    CHECK_THROWS_AS(parse_text("function = aq\nn_list = 256\nprecision = 20\n"),
                    config_error);
}

TEST_CASE("run_sweep: ordering, record counts, empty grids") {
    SweepConfig cfg = parse_text("function = aq\n"
                                 "branch = minus\n"
                                 "scale = n^0.4\n"
                                 "n_list = 8, 16\n"
                                 "v_list = 0.25, 0.5\n"
                                 "precision = 40\n"
                                 "eps = 1e-30\n");
    auto records = run_sweep(cfg);
    REQUIRE(records.size() == 4);
    CHECK(records[0].n == 8);
    CHECK(records[1].n == 8);
    CHECK(records[2].n == 16);
    CHECK(records[0].v_token == "0.25");
    CHECK(records[1].v_token == "0.5");
    for (const auto& r : records) {
        CHECK(r.rel_err >= 0);
        CHECK(r.normalized_err > 0);
        CHECK(boost::multiprecision::isfinite(r.normalized_err));
    }

    cfg.n_list.clear();
    CHECK(run_sweep(cfg).empty());
}

TEST_CASE("run_sweep: plus branch carries bracket residuals") {
    SweepConfig cfg = parse_text("function = stieltjes_wigert\n"
                                 "branch = plus\n"
                                 "scale = n^0.4\n"
                                 "n_list = 16\n"
                                 "v_list = 0.25, coszero:16\n"
                                 "precision = 40\n"
                                 "eps = 1e-30\n");
    auto records = run_sweep(cfg);
    REQUIRE(records.size() == 2);
    // residual ~ e^{-2 pi lambda}: normalized by the predicted rate it is O(1)-ish
    for (const auto& r : records) {
        CHECK(r.rel_err > 0);
        CHECK(r.rel_err < 1); // a residual, not a relative error of ~cos scale
        CHECK(r.normalized_err < 1000);
    }
}

TEST_CASE("emit: csv header, byte determinism, json round-trip") {
    SweepConfig cfg = parse_text("function = aq\n"
                                 "branch = minus\n"
                                 "scale = n^0.4\n"
                                 "n_list = 8, 16\n"
                                 "v_list = 0.25\n"
                                 "precision = 40\n"
                                 "eps = 1e-30\n");

    std::string empty_csv = render_csv({});
    CHECK(empty_csv ==
          "n,lambda_n,v,exact_log10,exact_phase_quarter,asym_log10,asym_phase_quarter,"
          "rel_err,predicted_rate,normalized_err\n");

    auto r1 = run_sweep(cfg);
    auto r2 = run_sweep(cfg);
    CHECK(render_csv(r1) == render_csv(r2)); // identical bytes across runs
    CHECK(render_json(r1) == render_json(r2));

    // all 20 rendered digits survive a JSON parse
    auto parsed = nlohmann::json::parse(render_json(r1));
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == r1.size());
    for (size_t i = 0; i < r1.size(); ++i) {
        CHECK(parsed[i]["n"].get<long>() == r1[i].n);
        CHECK(parsed[i]["rel_err"].get<std::string>() == to_sci(r1[i].rel_err, 20));
        CHECK(parsed[i]["normalized_err"].get<std::string>() ==
              to_sci(r1[i].normalized_err, 20));
    }

    TempFile out("emit.csv");
    emit(r1, EmitFormat::csv, out.path);
    std::ifstream in(out.path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == render_csv(r1));

    CHECK_THROWS_AS(emit(r1, EmitFormat::csv, "/nonexistent-dir/x.csv"), io_error);
}

TEST_CASE("regression_check: bootstrap, pass, fail, new cells") {
    SweepConfig cfg = parse_text("function = aq\n"
                                 "branch = minus\n"
                                 "scale = n^0.4\n"
                                 "n_list = 8, 16\n"
                                 "v_list = 0.25\n"
                                 "precision = 40\n"
                                 "eps = 1e-30\n");
    auto records = run_sweep(cfg);
    TempFile ceil("ceilings.json");

    CHECK_THROWS_AS(regression_check("unit", records, ceil.path), config_error);

    record_ceilings("unit", records, ceil.path);
    RegressionReport rep = regression_check("unit", records, ceil.path);
    CHECK(rep.pass);
    CHECK(rep.checked == 2);
    CHECK(rep.new_cells.empty());
    CHECK(rep.worst_ratio <= 1.0 + 1e-12);

    // zeroed ceilings name the offending cell
    {
        nlohmann::json root;
        std::ifstream in(ceil.path);
        in >> root;
        root["sweeps"]["unit"]["n=8,v=0.25"] = 0.0;
        std::ofstream out(ceil.path);
        out << root.dump(2);
    }
    RegressionReport bad = regression_check("unit", records, ceil.path);
    CHECK(!bad.pass);
    REQUIRE(bad.failures.size() == 1);
    CHECK(bad.failures[0].find("n=8,v=0.25") != std::string::npos);

    // unknown sweep: everything is a new cell, non-failing
    RegressionReport fresh = regression_check("other", records, ceil.path);
    CHECK(fresh.pass);
    CHECK(fresh.new_cells.size() == 2);
    CHECK(fresh.text("other").find("new-cell") != std::string::npos);
}

TEST_CASE("normalized_err is insensitive to the series tolerance") {
    auto run_at = [&](const char* eps) {
        SweepConfig cfg = parse_text(std::string("function = aq\n"
                                                 "branch = minus\n"
                                                 "scale = n^0.4\n"
                                                 "n_list = 64\n"
                                                 "v_list = 0.25\n"
                                                 "precision = 50\n"
                                                 "eps = ") +
                                     eps + "\n");
        return run_sweep(cfg).at(0).normalized_err;
    };
    Real a = run_at("1e-30");
    Real b = run_at("1e-31");
    CHECK(abs(a / b - 1) < Real(1) / 100); // the measured gap, not the tolerance
}

TEST_CASE("eval_exact: pinned lambda and scale fallback") {
    SweepConfig cfg;
    cfg.function = SweepFunction::aq;
    cfg.branch = Branch::minus;
    cfg.precision_digits = 40;
    cfg.eps = "1e-30";

    EvalPoint pt;
    pt.n = 8;
    pt.v = "0.25";
    pt.lambda = "8";
    LogComplex via_lambda = eval_exact(cfg, pt);

    EvalPoint pt2 = pt;
    pt2.lambda.clear();
    pt2.q_log_t = "0.125"; // t = 1/lambda
    LogComplex via_t = eval_exact(cfg, pt2);
    CHECK(via_lambda.quarter() == via_t.quarter());
    CHECK(rel_close(via_lambda, via_t, pow(Real(10), -25)));

    EvalPoint both = pt;
    both.q_log_t = "0.125";
    CHECK_THROWS_AS(eval_exact(cfg, both), config_error);
}
