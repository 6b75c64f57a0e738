#include "scldpcl/density_evolution.hpp"

#include <algorithm>
#include <cmath>

namespace scldpcl {

DEGraph::DEGraph(const Protograph& g) : vns_(g.num_vns()), cns_(g.num_cns()) {
    by_vn_.resize(vns_);
    by_cn_.resize(cns_);
    for (int c = 0; c < cns_; ++c)
        for (int v = 0; v < vns_; ++v)
            for (int k = 0; k < g(c, v); ++k) {
                int s = static_cast<int>(strands_.size());
                strands_.push_back({c, v});
                by_cn_[c].push_back(s);
                by_vn_[v].push_back(s);
            }
}

int DEGraph::strand_index(int cn, int vn, int k) const {
    int seen = 0;
    for (int s : by_cn_[cn])
        if (strands_[s].vn == vn && seen++ == k) return s;
    return -1;
}

namespace {

struct Workspace {
    std::vector<double> x, x_next, u, p;
    std::vector<double> scratch;  // exclude-one products
    std::vector<char> active;
};

// u[s] for strands of one node: 1 - factor * prod_{s' != s} (1 - x[s']).
// Prefix/suffix products avoid dividing by possibly-zero terms.
inline void cn_update(const std::vector<int>& strands, double factor,
                      const std::vector<double>& x, std::vector<double>& u,
                      std::vector<double>& scratch) {
    const size_t d = strands.size();
    scratch.resize(d + 1);
    scratch[0] = 1.0;
    for (size_t i = 0; i < d; ++i) scratch[i + 1] = scratch[i] * (1.0 - x[strands[i]]);
    double suffix = 1.0;
    for (size_t i = d; i-- > 0;) {
        u[strands[i]] = 1.0 - factor * scratch[i] * suffix;
        suffix *= 1.0 - x[strands[i]];
    }
}

DEResult de_run_impl(const DEGraph& dg, const ErasureConstellation& eps,
                     const BoundaryInjection& boundary, const std::vector<int>& active_vns,
                     const DEConfig& cfg,
                     const std::function<void(int, const std::vector<double>&)>* trace) {
    const int nv = dg.num_vns();
    const int nc = dg.num_cns();
    const int ns = dg.num_strands();
    if (static_cast<int>(eps.size()) != nv)
        throw ConstructionError("erasure constellation length must equal the VN count");

    Workspace w;
    w.x.assign(ns, 1.0);
    w.x_next.assign(ns, 1.0);
    w.u.assign(ns, 1.0);
    w.p.assign(nv, 1.0);
    w.active.assign(nv, active_vns.empty() ? 1 : 0);
    for (int v : active_vns) w.active[v] = 1;

    std::vector<double> cn_factor(nc, 1.0);
    for (const auto& [c, delta] : boundary.delta) cn_factor[c] = 1.0 - delta;

    DEResult res;
    res.vn_erasure.assign(nv, 1.0);
    double mono_slack = 0.0;

    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        for (int c = 0; c < nc; ++c) cn_update(dg.cn_strands(c), cn_factor[c], w.x, w.u, w.scratch);

        double max_change = 0.0;
        bool all_below = nv > 0;
        for (int v = 0; v < nv; ++v) {
            const auto& strands = dg.vn_strands(v);
            if (!w.active[v]) {
                w.p[v] = 1.0;
                continue;
            }
            const size_t d = strands.size();
            w.scratch.resize(d + 1);
            w.scratch[0] = 1.0;
            for (size_t i = 0; i < d; ++i) w.scratch[i + 1] = w.scratch[i] * w.u[strands[i]];
            double suffix = 1.0;
            for (size_t i = d; i-- > 0;) {
                int s = strands[i];
                double nx = eps[v] * w.scratch[i] * suffix;
                suffix *= w.u[s];
                max_change = std::max(max_change, std::abs(nx - w.x[s]));
                mono_slack = std::max(mono_slack, nx - w.x[s]);
                w.x_next[s] = nx;
            }
            w.p[v] = eps[v] * w.scratch[d];
            all_below &= (w.p[v] <= cfg.erasure_floor);
        }
        std::swap(w.x, w.x_next);
        res.iterations = iter;
        if (trace) (*trace)(iter, w.x);
        if (all_below) {
            // messages are non-increasing, so the floor is never left again
            res.success = true;
            res.converged = true;
            break;
        }
        if (max_change < cfg.conv_tol) {
            res.converged = true;
            break;
        }
    }

    res.vn_erasure = w.p;
    res.x_edge = std::move(w.x);
    res.u_edge = std::move(w.u);
    res.monotonicity_slack = mono_slack;
    return res;
}

}  // namespace

DEResult de_run(const DEGraph& dg, const ErasureConstellation& eps,
                const BoundaryInjection& boundary, const std::vector<int>& active_vns,
                const DEConfig& cfg) {
    return de_run_impl(dg, eps, boundary, active_vns, cfg, nullptr);
}

DEResult de_run(const Protograph& g, const ErasureConstellation& eps,
                const BoundaryInjection& boundary, const std::vector<int>& active_vns,
                const DEConfig& cfg) {
    DEGraph dg(g);
    return de_run_impl(dg, eps, boundary, active_vns, cfg, nullptr);
}

DEResult de_run_traced(const DEGraph& dg, const ErasureConstellation& eps,
                       const BoundaryInjection& boundary, const std::vector<int>& active_vns,
                       const DEConfig& cfg,
                       const std::function<void(int, const std::vector<double>&)>& trace) {
    return de_run_impl(dg, eps, boundary, active_vns, cfg, &trace);
}

double bisect_threshold(const std::function<bool(double)>& succeeds, const DEConfig& cfg) {
    if (!succeeds(cfg.zero_probe)) return 0.0;
    if (succeeds(1.0)) return 1.0;
    double lo = cfg.zero_probe, hi = 1.0;
    while (hi - lo > cfg.bisect_tol) {
        double mid = 0.5 * (lo + hi);
        (succeeds(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double bp_threshold(const Protograph& g, const BoundaryInjection& boundary,
                    const std::vector<int>& active_vns, const DEConfig& cfg) {
    DEGraph dg(g);
    ErasureConstellation eps(g.num_vns(), 1.0);
    auto probe = [&](double e) {
        if (active_vns.empty()) {
            std::fill(eps.begin(), eps.end(), e);
        } else {
            for (int v : active_vns) eps[v] = e;
        }
        return de_run(dg, eps, boundary, active_vns, cfg).success;
    };
    return bisect_threshold(probe, cfg);
}

double bp_threshold(const Protograph& g, const DEConfig& cfg) {
    return bp_threshold(g, {}, {}, cfg);
}

std::vector<double> local_thresholds(const CoupledProtograph& g, const CheckClassification& cls,
                                     const DEConfig& cfg) {
    std::vector<double> out(g.num_sub_blocks());
    for (int m = 0; m < g.num_sub_blocks(); ++m)
        out[m] = bp_threshold(local_protograph(g, cls, m), cfg);
    return out;
}

std::vector<double> local_thresholds(const CoupledProtograph& g, const DEConfig& cfg) {
    return local_thresholds(g, classify_checks(g), cfg);
}

SandwichResult threshold_sandwich_check(const Protograph& h, const std::vector<int>& rows,
                                        const std::vector<int>& cols, const DEConfig& cfg) {
    if (rows.empty() || cols.empty())
        throw ConstructionError("sandwich check needs nonempty row and column sets");
    SandwichResult r;
    r.lower = bp_threshold(h.sub_rows(rows), cfg);
    r.mid = bp_threshold(h, cfg);
    r.upper = bp_threshold(h.sub_columns(cols), cfg);
    const double slack = 2 * cfg.bisect_tol;
    r.holds = (r.lower <= r.mid + slack) && (r.mid <= r.upper + slack);
    return r;
}

}  // namespace scldpcl
