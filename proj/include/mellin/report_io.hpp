// Report emission: JSON records, the flat CSV table
// (quantity, parameter, value, error_bound), and the binary section
// format (one JSON header line with n, u_min, u_max, symbol_label,
// then n*n row-major little-endian re/im double pairs).
#pragma once

#include <array>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mellin/classify.hpp"
#include "mellin/dsl/ast.hpp"
#include "mellin/fredholm.hpp"
#include "mellin/norms.hpp"
#include "mellin/op_section.hpp"
#include "mellin/reciprocal.hpp"
#include "mellin/regularizer.hpp"

namespace mellin {

struct CsvTable {
    std::vector<std::array<std::string, 4>> rows;

    void add(const std::string& quantity, const std::string& parameter, double value,
             double error_bound = 0.0) {
        rows.push_back({quantity, parameter, dsl::format_double(value),
                        dsl::format_double(error_bound)});
    }

    void write(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw Error("cannot write CSV: " + path);
        out << "quantity,parameter,value,error_bound\n";
        for (const auto& r : rows)
            out << r[0] << ',' << r[1] << ',' << r[2] << ',' << r[3] << '\n';
    }
};

inline void write_json(const nlohmann::json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write JSON: " + path);
    out << j.dump(2) << '\n';
}

inline nlohmann::json to_json(const VNormReport& r) {
    nlohmann::json j;
    j["sup_norm"] = r.sup_norm;
    j["variation"] = r.variation;
    j["v_norm"] = r.v_norm;
    j["argmax_t"] = r.argmax_t;
    j["quadrature_error_bound"] = r.quadrature_error_bound;
    j["cm_values"] = r.cm_values;
    j["translate_defects"] = r.translate_defects;
    j["tail_defects"] = r.tail_defects;
    return j;
}

inline nlohmann::json to_json(const TrendSeries& s) {
    return {{"points", s.points}, {"verdict", to_string(s.verdict)}, {"note", s.note}};
}

inline nlohmann::json to_json(const MembershipDiagnostic& d) {
    nlohmann::json j;
    j["so_at_zero"] = to_json(d.so_zero);
    j["so_at_inf"] = to_json(d.so_inf);
    j["translation"] = to_json(d.translation);
    j["derivative_tails"] = to_json(d.tails);
    j["so"] = to_string(d.so);
    j["e"] = to_string(d.e);
    j["e_tilde"] = to_string(d.etilde);
    return j;
}

inline nlohmann::json to_json(const CertificateEntry& c) {
    return {{"name", c.name},
            {"passed", c.passed},
            {"measured", c.measured},
            {"threshold", c.threshold},
            {"details", c.details}};
}

inline nlohmann::json to_json(const BoundaryVerdict& v) {
    nlohmann::json j;
    j["ok"] = v.ok;
    j["xline_ok"] = v.xline_ok;
    j["tfiber_ok"] = v.tfiber_ok;
    j["xline_min"] = v.xline_min;
    j["xline_argmin_t"] = v.xline_argmin_t;
    j["xline_argmin_x"] = v.xline_argmin_sign < 0 ? "-inf" : "+inf";
    j["min_modulus"] = v.min_modulus;
    j["fiber_witness_x"] = v.fiber_witness_x;
    j["fiber_witness_side"] = v.fiber_witness_side == BoundarySide::zero ? "0" : "inf";
    j["caveats"] = v.caveats;
    return j;
}

inline nlohmann::json to_json(const RegularizerResult& r) {
    nlohmann::json j;
    j["r"] = r.r;
    j["A_minus"] = r.A_minus;
    j["A_plus"] = r.A_plus;
    j["A_of_r"] = r.A_of_r;
    j["C"] = r.C;
    j["certificates"] = nlohmann::json::array();
    for (const auto& c : r.certificates) j["certificates"].push_back(to_json(c));
    return j;
}

inline nlohmann::json to_json(const DecayProfile& p, int k_max) {
    nlohmann::json j;
    j["n"] = p.n;
    j["K"] = p.K;
    std::vector<double> head(p.sigmas.begin(),
                             p.sigmas.begin() + std::min<size_t>(p.sigmas.size(),
                                                                 static_cast<size_t>(k_max)));
    j["sigmas"] = head;
    return j;
}

inline nlohmann::json to_json(const FredholmReport& r, int k_max = 96) {
    nlohmann::json j;
    j["verdict"] = to_json(r.verdict);
    j["verdict_text"] = r.verdict_text;
    j["fredholm_evidence"] = r.fredholm_evidence;
    j["construction_failed"] = r.construction_failed;
    if (r.construction_failed) j["construction_error"] = r.construction_error;
    if (r.has_regularizer) j["regularizer"] = to_json(r.reg);
    j["decay_ok_left"] = r.decay_ok_left;
    j["decay_ok_right"] = r.decay_ok_right;
    j["norm_ratio"] = r.norm_ratio;
    auto ladder = [k_max](const std::vector<DecayProfile>& v) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& p : v) a.push_back(to_json(p, k_max));
        return a;
    };
    j["residual_left"] = ladder(r.residual_left);
    j["residual_right"] = ladder(r.residual_right);
    j["degenerate_product"] = ladder(r.degenerate_product);
    return j;
}

inline void decay_csv(CsvTable& csv, const std::string& name,
                      const std::vector<DecayProfile>& ladder) {
    for (const DecayProfile& p : ladder)
        for (size_t k = 0; k < p.sigmas.size(); ++k)
            csv.add(name, "n=" + std::to_string(p.n) + ",k=" + std::to_string(k + 1),
                    p.sigmas[k]);
}

// ------------------------------------------------------ section files

inline void write_section(const OperatorSection& sec, const std::string& path) {
    nlohmann::json hdr;
    hdr["n"] = sec.grid.n;
    hdr["u_min"] = sec.grid.u_min;
    hdr["u_max"] = sec.grid.u_max;
    hdr["symbol_label"] = sec.symbol_label;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write section: " + path);
    out << hdr.dump() << '\n';
    const int n = sec.grid.n;
    std::vector<double> buf(2 * static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            buf[2 * static_cast<size_t>(l)] = sec.entries(k, l).real();
            buf[2 * static_cast<size_t>(l) + 1] = sec.entries(k, l).imag();
        }
        out.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(buf.size() * sizeof(double)));
    }
}

inline OperatorSection read_section(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read section: " + path);
    std::string header;
    std::getline(in, header);
    nlohmann::json hdr = nlohmann::json::parse(header);
    OperatorSection sec;
    sec.grid = LogGrid::make(hdr.at("n").get<int>(), hdr.at("u_min").get<double>(),
                             hdr.at("u_max").get<double>());
    sec.symbol_label = hdr.value("symbol_label", "");
    const int n = sec.grid.n;
    sec.entries.resize(n, n);
    std::vector<double> buf(2 * static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        in.read(reinterpret_cast<char*>(buf.data()),
                static_cast<std::streamsize>(buf.size() * sizeof(double)));
        if (!in) throw Error("section file truncated: " + path);
        for (int l = 0; l < n; ++l)
            sec.entries(k, l) = Cplx(buf[2 * static_cast<size_t>(l)],
                                     buf[2 * static_cast<size_t>(l) + 1]);
    }
    return sec;
}

}  // namespace mellin
