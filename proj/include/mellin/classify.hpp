// Membership evidence for the symbol algebras: slow oscillation at 0
// and infinity (cm_r -> 0), the translation condition (sup_t
// |a - a^h|_V -> 0 as h -> 0), and the derivative-tail condition
// (sup_t of the tail integral -> 0 as m -> infinity). The definitions
// are limits, so finite sampling yields evidence, not proof: a series
// passes when it decreases monotonically to below 1e-3, fails when it
// stays clearly bounded away from zero, and is inconclusive otherwise.
#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "mellin/norms.hpp"

namespace mellin {

enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        default: return "inconclusive";
    }
}

struct TrendSeries {
    std::vector<std::pair<double, double>> points;  // (parameter, defect)
    Verdict verdict = Verdict::inconclusive;
    std::string note;
};

namespace detail {

inline Verdict series_verdict(const std::vector<std::pair<double, double>>& pts) {
    if (pts.empty()) return Verdict::inconclusive;
    bool monotone = true;
    double mn = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < pts.size(); ++i) {
        if (!std::isfinite(pts[i].second)) return Verdict::fail;
        mn = std::min(mn, pts[i].second);
        if (i > 0 && pts[i].second > pts[i - 1].second * 1.05 + 1e-12)
            monotone = false;
    }
    if (monotone && pts.back().second < 1e-3) return Verdict::pass;
    if (mn > 0.05) return Verdict::fail;
    return Verdict::inconclusive;
}

inline Verdict worst(Verdict a, Verdict b) {
    if (a == Verdict::fail || b == Verdict::fail) return Verdict::fail;
    if (a == Verdict::inconclusive || b == Verdict::inconclusive)
        return Verdict::inconclusive;
    return Verdict::pass;
}

}  // namespace detail

struct MembershipDiagnostic {
    TrendSeries so_zero;      // cm_r along r -> 0
    TrendSeries so_inf;       // cm_r along r -> infinity
    TrendSeries translation;  // translation defect along h -> 0
    TrendSeries tails;        // derivative tails along m -> infinity
    Verdict so = Verdict::inconclusive;
    Verdict e = Verdict::inconclusive;       // SO + translation
    Verdict etilde = Verdict::inconclusive;  // E + tails
};

inline MembershipDiagnostic classify(const Symbol& a, const SweepConfig& cfg = {}) {
    MembershipDiagnostic d;
    // both r-grids are already ordered along their limit direction
    for (double r : cfg.r_grid_zero)
        d.so_zero.points.emplace_back(r, cm_modulus(a, r, cfg.cm_tol));
    for (double r : cfg.r_grid_inf)
        d.so_inf.points.emplace_back(r, cm_modulus(a, r, cfg.cm_tol));
    d.so_zero.verdict = detail::series_verdict(d.so_zero.points);
    d.so_inf.verdict = detail::series_verdict(d.so_inf.points);

    // h decreasing toward 0 is already the limit direction
    for (double h : cfg.h_grid) {
        double v;
        try {
            v = translate_defect(a, h, cfg.tgrid, cfg.quad);
        } catch (const NonConvergence& ex) {
            v = std::numeric_limits<double>::quiet_NaN();
            d.translation.note = ex.what();
        }
        d.translation.points.emplace_back(h, v);
    }
    d.translation.verdict = detail::series_verdict(d.translation.points);

    for (double m : cfg.m_grid) {
        double v;
        try {
            v = tail_variation(a, m, cfg.tgrid, cfg.quad);
        } catch (const NonConvergence& ex) {
            v = std::numeric_limits<double>::quiet_NaN();
            d.tails.note = ex.what();
        }
        d.tails.points.emplace_back(m, v);
    }
    d.tails.verdict = detail::series_verdict(d.tails.points);

    d.so = detail::worst(d.so_zero.verdict, d.so_inf.verdict);
    d.e = detail::worst(d.so, d.translation.verdict);
    d.etilde = detail::worst(d.e, d.tails.verdict);
    return d;
}

}  // namespace mellin
