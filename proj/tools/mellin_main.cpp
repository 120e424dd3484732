// mellin: symbol calculus for Mellin pseudodifferential operators.
//
// Subcommands:
//   analyze        norms, moduli, membership evidence for a symbol
//   regularize     boundary gate + regularizer construction + certificates
//   fredholm       full pipeline with finite-section residual profiling
//   apply          apply Op(a) to sampled data on a log grid
//   verify-lemmas  measured checks of the closed-form lemma values
//
// Exit codes: 0 success, 1 negative mathematical verdict,
// 2 usage/parse error, 3 numerical non-convergence.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mellin/classify.hpp"
#include "mellin/dsl/symbol_file.hpp"
#include "mellin/fredholm.hpp"
#include "mellin/lemma_suite.hpp"
#include "mellin/norms.hpp"
#include "mellin/report_io.hpp"

namespace {

using namespace mellin;

constexpr int kExitOk = 0;
constexpr int kExitNegativeVerdict = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNonConvergence = 3;

struct CommonOpts {
    std::string symbol_arg;
    double tol = 1e-9;
    int tgrid_kmin = -20, tgrid_kmax = 20;
    std::string json_path, csv_path;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--symbol", o.symbol_arg, "symbol spec file or inline expression")
        ->required();
    cmd->add_option("--tol", o.tol, "quadrature tolerance");
    cmd->add_option("--tgrid", [&o](const std::vector<std::string>& vals) {
            const std::string& s = vals.back();
            const auto colon = s.find(':');
            if (colon == std::string::npos) return false;
            o.tgrid_kmin = std::stoi(s.substr(0, colon));
            o.tgrid_kmax = std::stoi(s.substr(colon + 1));
            return o.tgrid_kmin <= o.tgrid_kmax;
        },
        "dyadic t-grid exponents, kmin:kmax");
    cmd->add_option("--json", o.json_path, "write the JSON report here");
    cmd->add_option("--csv", o.csv_path, "write the flat CSV report here");
}

int run_analyze(const CommonOpts& o) {
    dsl::LoadedSymbol loaded = dsl::load_symbol_arg(o.symbol_arg);
    SweepConfig cfg;
    cfg.tgrid = dyadic_tgrid(o.tgrid_kmin, o.tgrid_kmax);
    cfg.quad.tol = o.tol;

    nlohmann::json j;
    CsvTable csv;
    j["label"] = loaded.sym.label;
    int exit_code = kExitOk;
    try {
        VNormReport rep = analyze_norms(loaded.sym, cfg);
        j["norms"] = to_json(rep);
        csv.add("sup_norm", "t=" + dsl::format_double(rep.argmax_t), rep.sup_norm);
        csv.add("variation", "t=" + dsl::format_double(rep.argmax_t), rep.variation,
                rep.quadrature_error_bound);
        csv.add("v_norm", "t=" + dsl::format_double(rep.argmax_t), rep.v_norm,
                rep.quadrature_error_bound);
        for (auto [r, v] : rep.cm_values) csv.add("cm", "r=" + dsl::format_double(r), v);
        for (auto [h, v] : rep.translate_defects)
            csv.add("translate_defect", "h=" + dsl::format_double(h), v);
        for (auto [m, v] : rep.tail_defects)
            csv.add("tail_defect", "m=" + dsl::format_double(m), v);
        std::printf("|a|_CbV = %.12g  (sup %.12g + var %.12g at t=%g)\n", rep.v_norm,
                    rep.sup_norm, rep.variation, rep.argmax_t);
    } catch (const NonConvergence& ex) {
        j["norms"] = {{"error", ex.what()}};
        std::printf("norms: %s\n", ex.what());
        exit_code = kExitNonConvergence;
    }
    MembershipDiagnostic diag = classify(loaded.sym, cfg);
    j["membership"] = to_json(diag);
    std::printf("membership evidence: SO %s, E %s, E~ %s\n", to_string(diag.so),
                to_string(diag.e), to_string(diag.etilde));
    if (!o.json_path.empty()) write_json(j, o.json_path);
    if (!o.csv_path.empty()) csv.write(o.csv_path);
    return exit_code;
}

int run_regularize(const CommonOpts& o, bool allow_nonconverged) {
    dsl::LoadedSymbol loaded = dsl::load_symbol_arg(o.symbol_arg);
    BoundaryCheckConfig bcfg;
    bcfg.tgrid = dyadic_tgrid(o.tgrid_kmin, o.tgrid_kmax);
    bcfg.allow_nonconverged = allow_nonconverged;
    nlohmann::json j;
    j["label"] = loaded.sym.label;
    BoundaryVerdict verdict = boundary_check(loaded.sym, bcfg);
    j["boundary"] = to_json(verdict);
    if (!verdict.ok) {
        j["outcome"] = "boundary degeneracy: no regularizer";
        if (!o.json_path.empty()) write_json(j, o.json_path);
        std::printf("boundary check failed (min modulus %.3g); no regularizer\n",
                    verdict.min_modulus);
        return kExitNegativeVerdict;
    }
    FindRConfig fcfg;
    fcfg.allow_nonconverged = allow_nonconverged;
    RegularizerResult reg = build_regularizer(loaded.sym, find_r(loaded.sym, fcfg),
                                              bcfg.tgrid);
    reg.certificates = verify_regularizer(loaded.sym, reg);
    j["regularizer"] = to_json(reg);
    if (loaded.compiled.ast)
        j["derived_symbol"] =
            dsl::derived_regularizer_spec(loaded.compiled, reg.r,
                                          "reg(" + loaded.sym.label + ")");
    bool all_passed = true;
    CsvTable csv;
    csv.add("r", "", reg.r);
    csv.add("A_minus", "", reg.A_minus);
    csv.add("A_plus", "", reg.A_plus);
    csv.add("A_of_r", "", reg.A_of_r);
    csv.add("C", "", reg.C);
    for (const CertificateEntry& c : reg.certificates) {
        all_passed = all_passed && c.passed;
        csv.add("certificate:" + c.name, c.passed ? "pass" : "fail", c.measured,
                c.threshold);
        std::printf("[%s] %-24s measured %.6g vs threshold %.6g\n",
                    c.passed ? "PASS" : "FAIL", c.name.c_str(), c.measured, c.threshold);
    }
    std::printf("r=%g A-=%.6g A+=%.6g A(r)=%.6g C=%.6g\n", reg.r, reg.A_minus,
                reg.A_plus, reg.A_of_r, reg.C);
    if (!o.json_path.empty()) write_json(j, o.json_path);
    if (!o.csv_path.empty()) csv.write(o.csv_path);
    return all_passed ? kExitOk : kExitNegativeVerdict;
}

int run_fredholm(const CommonOpts& o, bool strong, bool allow_nonconverged,
                 std::vector<int> ladder, double umin, double umax) {
    dsl::LoadedSymbol loaded = dsl::load_symbol_arg(o.symbol_arg);
    FredholmConfig cfg;
    cfg.boundary.tgrid = dyadic_tgrid(o.tgrid_kmin, o.tgrid_kmax);
    cfg.boundary.allow_nonconverged = allow_nonconverged;
    if (!ladder.empty()) cfg.n_ladder = ladder;
    cfg.u_min = umin;
    cfg.u_max = umax;
    cfg.quad.tol = o.tol;
    FredholmReport rep =
        strong ? strong_regularize(loaded.sym, cfg) : fredholm_analyze(loaded.sym, cfg);
    if (!o.json_path.empty()) write_json(to_json(rep), o.json_path);
    if (!o.csv_path.empty()) {
        CsvTable csv;
        decay_csv(csv, "sigma_right", rep.residual_right);
        decay_csv(csv, "sigma_left", rep.residual_left);
        decay_csv(csv, "sigma_ab_minus_1", rep.degenerate_product);
        csv.write(o.csv_path);
    }
    std::printf("%s\n", rep.verdict_text.c_str());
    for (const auto& c : rep.verdict.caveats) std::printf("caveat: %s\n", c.c_str());
    if (rep.construction_failed) {
        std::printf("%s\n", rep.construction_error.c_str());
        return kExitNonConvergence;
    }
    if (!rep.verdict.ok && !strong) {
        std::printf("boundary: min modulus %.3g (xline %.3g at t=%g, x=%sinf)\n",
                    rep.verdict.min_modulus, rep.verdict.xline_min,
                    rep.verdict.xline_argmin_t,
                    rep.verdict.xline_argmin_sign < 0 ? "-" : "+");
        return kExitNegativeVerdict;
    }
    return rep.fredholm_evidence ? kExitOk : kExitNegativeVerdict;
}

int run_apply(const std::string& symbol_arg, const std::string& input,
              const std::string& output, int n, double umin, double umax,
              const std::string& dump_section) {
    dsl::LoadedSymbol loaded = dsl::load_symbol_arg(symbol_arg);
    LogGrid g = LogGrid::make(n, umin, umax);
    std::ifstream in(input);
    if (!in) throw Error("cannot open input CSV: " + input);
    std::vector<double> ts;
    std::vector<Cplx> fv;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.find_first_of("0123456789+-.") != 0) continue;  // header
        std::istringstream ss(line);
        std::string cell;
        double vals[3] = {0, 0, 0};
        int col = 0;
        while (std::getline(ss, cell, ',') && col < 3) vals[col++] = std::stod(cell);
        if (col < 2) throw Error("apply: bad CSV row: " + line);
        ts.push_back(vals[0]);
        fv.push_back(Cplx(vals[1], vals[2]));
    }
    if (static_cast<int>(ts.size()) != g.n)
        throw Error("apply: input has " + std::to_string(ts.size()) +
                    " samples, grid needs " + std::to_string(g.n));
    for (int k = 0; k < g.n; ++k) {
        const double expect = g.t(k);
        if (std::abs(ts[static_cast<size_t>(k)] - expect) >
            1e-9 * std::max(1.0, std::abs(expect)))
            throw Error("apply: sample " + std::to_string(k) + " at t=" +
                        std::to_string(ts[static_cast<size_t>(k)]) +
                        " is off the grid point t=" + std::to_string(expect));
    }
    OperatorSection sec = assemble_op_section(loaded.sym, g);
    if (!dump_section.empty()) write_section(sec, dump_section);
    Eigen::VectorXcd v(g.n);
    for (int k = 0; k < g.n; ++k) v(k) = fv[static_cast<size_t>(k)];
    Eigen::VectorXcd w = sec.entries * v;
    std::ofstream out(output);
    if (!out) throw Error("cannot write output CSV: " + output);
    out << "t,re,im\n";
    for (int k = 0; k < g.n; ++k)
        out << dsl::format_double(g.t(k)) << ',' << dsl::format_double(w(k).real())
            << ',' << dsl::format_double(w(k).imag()) << '\n';
    return kExitOk;
}

int run_verify_lemmas(const std::string& json_path, const std::string& csv_path) {
    std::vector<LemmaCheck> checks = run_lemma_suite();
    nlohmann::json j = nlohmann::json::array();
    CsvTable csv;
    bool all = true;
    for (const LemmaCheck& c : checks) {
        all = all && c.passed;
        std::printf("[%s] %s: measured %.12g vs %.12g\n", c.passed ? "PASS" : "FAIL",
                    c.name.c_str(), c.measured, c.reference);
        j.push_back({{"name", c.name},
                     {"measured", c.measured},
                     {"reference", c.reference},
                     {"tolerance", c.tolerance},
                     {"passed", c.passed}});
        csv.add(c.name, c.passed ? "pass" : "fail", c.measured, c.tolerance);
    }
    if (!json_path.empty()) write_json(j, json_path);
    if (!csv_path.empty()) csv.write(csv_path);
    return all ? kExitOk : kExitNegativeVerdict;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mellin pseudodifferential symbol calculus"};
    app.require_subcommand(1);

    CommonOpts an_opts, reg_opts, fr_opts;
    bool reg_allow = false, fr_allow = false, fr_strong = false;
    std::vector<int> fr_ladder;
    double fr_umin = -20.0, fr_umax = 20.0;

    CLI::App* an = app.add_subcommand("analyze", "norms and membership evidence");
    add_common(an, an_opts);

    CLI::App* rg = app.add_subcommand("regularize", "construct and certify the regularizer");
    add_common(rg, reg_opts);
    rg->add_flag("--allow-nonconverged-fibers", reg_allow,
                 "consume non-converged boundary profiles (research use)");

    CLI::App* fr = app.add_subcommand("fredholm", "full Fredholm pipeline");
    add_common(fr, fr_opts);
    fr->add_flag("--allow-nonconverged-fibers", fr_allow,
                 "consume non-converged boundary profiles (research use)");
    fr->add_flag("--strong", fr_strong,
                 "strong route: require inf |a| > 0 and use 1/a directly");
    fr->add_option("--n-ladder", fr_ladder, "section sizes (powers of two)");
    fr->add_option("--umin", fr_umin, "lower u = ln t bound");
    fr->add_option("--umax", fr_umax, "upper u = ln t bound");

    std::string ap_symbol, ap_in, ap_out, ap_dump;
    int ap_n = 256;
    double ap_umin = -10.0, ap_umax = 10.0;
    CLI::App* ap = app.add_subcommand("apply", "apply Op(a) to CSV samples (t,re,im)");
    ap->add_option("--symbol", ap_symbol, "symbol spec file or inline expression")->required();
    ap->add_option("--input", ap_in, "input CSV")->required();
    ap->add_option("--output", ap_out, "output CSV")->required();
    ap->add_option("--n", ap_n, "grid size (power of two)");
    ap->add_option("--umin", ap_umin, "lower u bound");
    ap->add_option("--umax", ap_umax, "upper u bound");
    ap->add_option("--dump-section", ap_dump, "also write the section matrix here");

    std::string vl_json, vl_csv;
    CLI::App* vl = app.add_subcommand("verify-lemmas", "measured lemma checks");
    vl->add_option("--json", vl_json, "write the JSON report here");
    vl->add_option("--csv", vl_csv, "write the flat CSV report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (an->parsed()) return run_analyze(an_opts);
        if (rg->parsed()) return run_regularize(reg_opts, reg_allow);
        if (fr->parsed())
            return run_fredholm(fr_opts, fr_strong, fr_allow, fr_ladder, fr_umin, fr_umax);
        if (ap->parsed())
            return run_apply(ap_symbol, ap_in, ap_out, ap_n, ap_umin, ap_umax, ap_dump);
        if (vl->parsed()) return run_verify_lemmas(vl_json, vl_csv);
    } catch (const dsl::ParseError& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return kExitUsage;
    } catch (const NonConvergence& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return kExitNonConvergence;
    } catch (const DegenerateSymbol& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return kExitNegativeVerdict;
    } catch (const Error& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return kExitUsage;
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return kExitUsage;
    }
    return kExitUsage;
}
