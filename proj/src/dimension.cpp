#include "fisdim/dimension.hpp"

#include <cmath>
#include <ostream>

#include <json.hpp>

namespace fisdim::dim {

namespace {

double pow_int(double b, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= b;
    return r;
}

}  // namespace

double dim_upper(double rho_star_hat, int N) {
    if (!(rho_star_hat > 0.0)) throw ValidationError("dim_upper: rho must be positive");
    return std::max(2.0, 1.0 + std::log(rho_star_hat) / std::log(static_cast<double>(N)));
}

LowerBoundResult dim_lower(double rho_lower_hat, int N, bool diverging,
                           const scaling::ConditionReport& conditions) {
    LowerBoundResult res;
    if (!conditions.gamma_condition && !conditions.sign_definite) {
        res.reason = "neither sign-definiteness nor the gamma_* condition verified";
        return res;
    }
    if (!diverging) {
        res.reason = "limsup hypothesis not evidenced";
        return res;
    }
    if (!(rho_lower_hat > 0.0)) {
        res.reason = "lower spectral enclosure is zero";
        return res;
    }
    res.available = true;
    res.value = std::max(2.0, 1.0 + std::log(rho_lower_hat) / std::log(static_cast<double>(N)));
    return res;
}

ExactResult dim_exact(const scaling::ConditionReport& conditions, double rho_lower_hat,
                      double rho_upper_hat, int N, Verdict divergence) {
    ExactResult res;
    if (!conditions.sign_definite) {
        res.kind = ExactResult::Kind::Inconclusive;
        return res;
    }
    if (rho_upper_hat <= static_cast<double>(N) || divergence == Verdict::Bounded) {
        res.kind = ExactResult::Kind::Two;
        res.lo = res.hi = 2.0;
        return res;
    }
    if (rho_lower_hat > static_cast<double>(N) && divergence == Verdict::Diverging) {
        res.kind = ExactResult::Kind::Interval;
        res.lo = 1.0 + std::log(rho_lower_hat) / std::log(static_cast<double>(N));
        res.hi = 1.0 + std::log(rho_upper_hat) / std::log(static_cast<double>(N));
        return res;
    }
    res.kind = ExactResult::Kind::Inconclusive;
    return res;
}

BoxCountResult boxcount(const fif::GridFunction& gf, int n_lo, int n_hi) {
    if (n_hi + 2 > gf.level) throw ResolutionError("boxcount needs gf level >= n_hi + 2");
    if (n_lo < 1 || n_lo > n_hi) throw ValidationError("boxcount: bad regression window");
    const double side = gf.step * (gf.size - 1);
    BoxCountResult res;
    res.n_lo = n_lo;
    res.n_hi = n_hi;
    for (int n = 1; n <= n_hi; ++n) {
        const double eps = side * pow_int(1.0 / gf.N, n);
        int span = gf.size - 1;
        for (int k = 0; k < n; ++k) span /= gf.N;
        const int blocks = (gf.size - 1) / span;
        double total = 0.0;
        for (int br = 0; br < blocks; ++br) {
            for (int bc = 0; bc < blocks; ++bc) {
                double lo = gf.at(br * span, bc * span), hi = lo;
                for (int r = br * span; r <= (br + 1) * span; ++r) {
                    for (int c = bc * span; c <= (bc + 1) * span; ++c) {
                        const double v = gf.at(r, c);
                        lo = std::min(lo, v);
                        hi = std::max(hi, v);
                    }
                }
                total += std::floor(hi / eps) - std::floor(lo / eps) + 1.0;
            }
        }
        res.table.push_back({n, eps, total});
    }
    // least squares: log count = slope * (n log N) + c over [n_lo, n_hi]
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const auto& row : res.table) {
        if (row.n < n_lo || row.n > n_hi) continue;
        const double x = row.n * std::log(static_cast<double>(gf.N));
        const double y = std::log(row.count);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt >= 2) res.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    return res;
}

std::vector<double> osc_estimator(const fif::GridFunction& gf, int n_max) {
    if (n_max + 2 > gf.level) throw ResolutionError("osc_estimator needs gf level >= n_max + 2");
    std::vector<double> e;
    for (int n = 1; n <= n_max; ++n) {
        const double on = osc::osc_sum(gf, n, grid::Word::empty());
        const double nn = pow_int(static_cast<double>(gf.N), n);
        e.push_back(1.0 + std::log(on + nn) / (n * std::log(static_cast<double>(gf.N))));
    }
    return e;
}

DivergenceResult divergence_diagnostic(const fif::GridFunction& gf, int p_max) {
    if (p_max + 2 > gf.level)
        throw ResolutionError("divergence_diagnostic needs gf level >= p_max + 2");
    DivergenceResult res;
    for (int p = 1; p <= p_max; ++p) {
        const double op = osc::osc_sum(gf, p, grid::Word::empty());
        res.ratios.push_back(op / pow_int(static_cast<double>(gf.N), p));
    }
    if (p_max >= 5) {
        bool growing = true;
        for (int p = p_max - 3; p < p_max; ++p) {
            // index p is ratio r_{p+1}; compare with two levels earlier
            if (!(res.ratios[p] >= 1.2 * res.ratios[p - 2])) growing = false;
        }
        bool flat = true;
        for (int p = p_max - 2; p < p_max; ++p) {
            const double a = res.ratios[p], b = res.ratios[p - 1];
            if (b == 0.0 || std::abs(a / b - 1.0) > 0.02) flat = false;
        }
        if (growing)
            res.verdict = Verdict::Diverging;
        else if (flat)
            res.verdict = Verdict::Bounded;
    }
    return res;
}

DimensionReport full_report(fif::FisSystem& sys, const ReportOptions& opt) {
    DimensionReport rep;
    rep.N = sys.nodes.N;
    rep.n_max = opt.n_max;
    rep.refine = opt.refine;
    rep.tol = opt.tol;
    rep.eval_level = opt.eval_level > 0 ? opt.eval_level : std::max(opt.n_max + 2, 6);

    const fif::GridFunction gf = fif::evaluate_and_record(sys, rep.eval_level);
    rep.lambda_S = sys.lambda_S;
    rep.lambda_q = sys.lambda_q;
    rep.M_f = sys.M_f;
    rep.s_max = sys.s_max;

    rep.rho_seq = scaling::rho_sequence(sys.S, sys.nodes, opt.n_max, opt.refine, opt.tol);
    rep.rho_upper_hat = rep.rho_seq.back().upper.rho_hi;
    rep.rho_lower_hat = rep.rho_seq.back().lower.rho_lo;
    rep.conditions = scaling::check_conditions(sys.S, sys.nodes, sys.lambda_S);

    const int p_max = rep.eval_level - 2;
    rep.divergence = divergence_diagnostic(gf, p_max);

    rep.upper_hypothesis_verified = rep.conditions.not_identically_zero;
    rep.upper_bound = dim_upper(rep.rho_upper_hat, rep.N);
    rep.lower_bound = dim_lower(rep.rho_lower_hat, rep.N,
                                rep.divergence.verdict == Verdict::Diverging, rep.conditions);
    rep.exact = dim_exact(rep.conditions, rep.rho_lower_hat, rep.rho_upper_hat, rep.N,
                          rep.divergence.verdict);

    const int n_hi = rep.eval_level - 2;
    rep.boxcount = boxcount(gf, std::min(2, n_hi), n_hi);
    rep.osc_estimator = osc_estimator(gf, n_hi);
    return rep;
}

namespace {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Diverging: return "diverging";
        case Verdict::Bounded: return "bounded";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

nlohmann::json exact_json(const ExactResult& e) {
    switch (e.kind) {
        case ExactResult::Kind::Two: return 2.0;
        case ExactResult::Kind::Interval: return {{"lo", e.lo}, {"hi", e.hi}};
        case ExactResult::Kind::Inconclusive: return "inconclusive";
    }
    return nullptr;
}

}  // namespace

std::string to_json(const DimensionReport& rep) {
    nlohmann::json j;
    j["inputs"] = {{"N", rep.N},       {"eval_level", rep.eval_level}, {"n_max", rep.n_max},
                   {"refine", rep.refine}, {"tol", rep.tol}};
    j["system"] = {{"lambda_S", rep.lambda_S},
                   {"lambda_q", rep.lambda_q},
                   {"M_f", rep.M_f},
                   {"s_max", rep.s_max}};
    nlohmann::json rho = nlohmann::json::array();
    for (const auto& e : rep.rho_seq) {
        rho.push_back({{"n", e.n},
                       {"rho_upper", {{"lo", e.upper.rho_lo}, {"hi", e.upper.rho_hi}}},
                       {"rho_lower", {{"lo", e.lower.rho_lo}, {"hi", e.lower.rho_hi}}},
                       {"upper_primitive", e.upper_primitive},
                       {"lower_primitive", e.lower_primitive},
                       {"lower_certified", e.lower.certified}});
    }
    j["rho_sequence"] = rho;
    j["rho_upper_hat"] = rep.rho_upper_hat;
    j["rho_lower_hat"] = rep.rho_lower_hat;
    j["conditions"] = {{"sign_definite", rep.conditions.sign_definite},
                       {"sign_refuted", rep.conditions.sign_refuted},
                       {"sign", rep.conditions.sign},
                       {"zero_cells", rep.conditions.zero_cells},
                       {"zero_curve", rep.conditions.zero_curve},
                       {"gamma_star", rep.conditions.gamma_star},
                       {"gamma_condition", rep.conditions.gamma_condition},
                       {"not_identically_zero", rep.conditions.not_identically_zero}};
    j["upper_bound"] = rep.upper_bound;
    j["upper_hypothesis_verified"] = rep.upper_hypothesis_verified;
    if (rep.lower_bound.available)
        j["lower_bound"] = rep.lower_bound.value;
    else
        j["lower_bound"] = {{"unavailable", rep.lower_bound.reason}};
    j["exact"] = exact_json(rep.exact);
    nlohmann::json bc = nlohmann::json::array();
    for (const auto& row : rep.boxcount.table)
        bc.push_back({{"n", row.n}, {"eps", row.eps}, {"count", row.count}});
    j["boxcount"] = {{"table", bc},
                     {"n_lo", rep.boxcount.n_lo},
                     {"n_hi", rep.boxcount.n_hi},
                     {"slope", rep.boxcount.slope}};
    j["osc_estimator"] = rep.osc_estimator;
    j["divergence"] = {{"verdict", verdict_name(rep.divergence.verdict)},
                       {"ratios", rep.divergence.ratios}};
    return j.dump(2);
}

void write_text(const DimensionReport& rep, std::ostream& out) {
    char buf[200];
    out << "fisdim dimension report\n";
    std::snprintf(buf, sizeof(buf), "  N=%d eval_level=%d n_max=%d refine=%d tol=%g\n", rep.N,
                  rep.eval_level, rep.n_max, rep.refine, rep.tol);
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "  lambda_S=%.6g lambda_q=%.6g M_f=%.6g s_max=%.6g (estimates)\n", rep.lambda_S,
                  rep.lambda_q, rep.M_f, rep.s_max);
    out << buf;
    out << "  rho sequence (n, [rho_lower], [rho_upper]):\n";
    for (const auto& e : rep.rho_seq) {
        std::snprintf(buf, sizeof(buf), "    %d  [%.10g, %.10g]  [%.10g, %.10g]%s\n", e.n,
                      e.lower.rho_lo, e.lower.rho_hi, e.upper.rho_lo, e.upper.rho_hi,
                      e.lower.certified ? "" : "  (lower not certified)");
        out << buf;
    }
    std::snprintf(buf, sizeof(buf), "  upper bound: %.8g%s\n", rep.upper_bound,
                  rep.upper_hypothesis_verified ? "" : "  (hypothesis not verified)");
    out << buf;
    if (rep.lower_bound.available) {
        std::snprintf(buf, sizeof(buf), "  lower bound: %.8g\n", rep.lower_bound.value);
        out << buf;
    } else {
        out << "  lower bound: unavailable (" << rep.lower_bound.reason << ")\n";
    }
    switch (rep.exact.kind) {
        case ExactResult::Kind::Two: out << "  exact: 2\n"; break;
        case ExactResult::Kind::Interval:
            std::snprintf(buf, sizeof(buf), "  exact: [%.8g, %.8g]\n", rep.exact.lo, rep.exact.hi);
            out << buf;
            break;
        case ExactResult::Kind::Inconclusive: out << "  exact: inconclusive\n"; break;
    }
    std::snprintf(buf, sizeof(buf), "  boxcount slope over n=[%d,%d]: %.6g\n", rep.boxcount.n_lo,
                  rep.boxcount.n_hi, rep.boxcount.slope);
    out << buf;
    out << "  divergence: " << verdict_name(rep.divergence.verdict) << "\n";
}

void write_plot_csv(const DimensionReport& rep, std::ostream& out) {
    out << "series,index,value\n";
    for (const auto& row : rep.boxcount.table)
        out << "log_count," << row.n << ',' << std::log(row.count) << "\n";
    for (std::size_t i = 0; i < rep.osc_estimator.size(); ++i)
        out << "osc_estimator," << (i + 1) << ',' << rep.osc_estimator[i] << "\n";
    for (std::size_t i = 0; i < rep.divergence.ratios.size(); ++i)
        out << "divergence_ratio," << (i + 1) << ',' << rep.divergence.ratios[i] << "\n";
}

}  // namespace fisdim::dim
