#include "scldpcl/semi_global.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace scldpcl {

ChainSides chain_sides(const CoupledProtograph& g, const CheckClassification& cls, int m) {
    if (g.params.memory != 1 || g.cn_origin.empty())
        throw ConstructionError("chain sides need a constructed memory-1 protograph");
    if (m < 0 || m >= g.num_sub_blocks())
        throw ConstructionError("sub-block index out of range: " + std::to_string(m));
    ChainSides sides;
    for (int c : cls.coupling_checks) {
        const auto& o = g.cn_origin[c];
        if (o.block_row == m + 1) sides.left.push_back(c);
        if (o.block_row == m + 2) sides.right.push_back(c);
    }
    auto by_row = [&](int a, int b) { return g.cn_origin[a].row < g.cn_origin[b].row; };
    std::sort(sides.left.begin(), sides.left.end(), by_row);
    std::sort(sides.right.begin(), sides.right.end(), by_row);
    return sides;
}

SGPassResult decode_pass(const CoupledProtograph& g, const CheckClassification& cls, int m,
                         double eps, const std::map<int, double>& cc_delta, const DEConfig& cfg) {
    if (m < 0 || m >= g.num_sub_blocks())
        throw ConstructionError("sub-block index out of range: " + std::to_string(m));

    SGPassResult pass;
    pass.sub_block = m;
    pass.vn_ids = g.sub_blocks[m];
    pass.cn_ids = cls.local_checks[m];
    pass.num_local_cns = static_cast<int>(pass.cn_ids.size());
    for (int c : cls.coupling_checks) {
        bool incident = false;
        for (int v : pass.vn_ids) incident |= (g.graph(c, v) > 0);
        if (incident) pass.cn_ids.push_back(c);
    }

    pass.sub = g.graph.sub_rows(pass.cn_ids).sub_columns(pass.vn_ids);
    BoundaryInjection inj;
    for (size_t i = pass.num_local_cns; i < pass.cn_ids.size(); ++i) {
        auto it = cc_delta.find(pass.cn_ids[i]);
        inj.delta[static_cast<int>(i)] = (it == cc_delta.end()) ? 1.0 : it->second;
    }

    ErasureConstellation constellation(pass.vn_ids.size(), eps);
    pass.de = de_run(pass.sub, constellation, inj, {}, cfg);

    for (size_t i = pass.num_local_cns; i < pass.cn_ids.size(); ++i) {
        double known = 1.0;
        for (size_t j = 0; j < pass.vn_ids.size(); ++j)
            for (int k = 0; k < pass.sub(static_cast<int>(i), static_cast<int>(j)); ++k)
                known *= 1.0 - pass.de.vn_erasure[j];
        pass.outgoing[pass.cn_ids[i]] = 1.0 - known;
    }
    return pass;
}

SGPassResult helper_pass(const CoupledProtograph& g, const CheckClassification& cls, int m,
                         const std::map<Side, std::vector<double>>& incoming, double eps,
                         const DEConfig& cfg) {
    ChainSides sides = chain_sides(g, cls, m);
    std::map<int, double> cc_delta;
    for (const auto& [side, vec] : incoming) {
        const auto& ccs = (side == Side::Left) ? sides.left : sides.right;
        if (vec.size() != ccs.size())
            throw ConstructionError("injection vector length must match the side's coupling checks");
        for (size_t i = 0; i < ccs.size(); ++i) cc_delta[ccs[i]] = vec[i];
    }
    return decode_pass(g, cls, m, eps, cc_delta, cfg);
}

SGPassResult target_pass(const CoupledProtograph& g, const CheckClassification& cls, int m,
                         const std::vector<double>& delta_left,
                         const std::vector<double>& delta_right, double eps, const DEConfig& cfg) {
    ChainSides sides = chain_sides(g, cls, m);
    std::map<int, double> cc_delta;
    if (!sides.left.empty()) {
        if (delta_left.size() != sides.left.size())
            throw ConstructionError("delta_left length must be t");
        for (size_t i = 0; i < sides.left.size(); ++i) cc_delta[sides.left[i]] = delta_left[i];
    }
    if (!sides.right.empty()) {
        if (delta_right.size() != sides.right.size())
            throw ConstructionError("delta_right length must be t");
        for (size_t i = 0; i < sides.right.size(); ++i) cc_delta[sides.right[i]] = delta_right[i];
    }
    return decode_pass(g, cls, m, eps, cc_delta, cfg);
}

double epsilon_star_target(const CoupledProtograph& g, const CheckClassification& cls, int m,
                           const std::vector<double>& delta_left,
                           const std::vector<double>& delta_right, const DEConfig& cfg) {
    return bisect_threshold(
        [&](double e) { return target_pass(g, cls, m, delta_left, delta_right, e, cfg).success(); },
        cfg);
}

std::vector<double> delta_pass(int l, int r, int t, double eps, const std::vector<double>& delta_in,
                               Side incoming, const DEConfig& cfg) {
    if (t < 1) throw ConstructionError("helper transfer needs t >= 1");
    if (r % (t + 1) != 0)
        throw ConstructionError("helper transfer assumes (t+1) | r (side-symmetric sub-blocks)");
    if (static_cast<int>(delta_in.size()) != t)
        throw ConstructionError("delta_in length must be t");

    CoupledProtograph g = build_scldpcl(l, r, t, 3);
    CheckClassification cls = classify_checks(g);
    ChainSides sides = chain_sides(g, cls, 1);
    const auto& in = (incoming == Side::Right) ? sides.right : sides.left;
    const auto& out = (incoming == Side::Right) ? sides.left : sides.right;

    std::map<int, double> cc_delta;
    for (int i = 0; i < t; ++i) cc_delta[in[i]] = delta_in[i];
    SGPassResult pass = decode_pass(g, cls, 1, eps, cc_delta, cfg);

    std::vector<double> delta_out(t);
    for (int i = 0; i < t; ++i) delta_out[i] = pass.outgoing.at(out[i]);
    return delta_out;
}

std::vector<double> delta_fn(int l, int r, int t, double eps, const std::vector<double>& delta_in,
                             const DEConfig& cfg) {
    return delta_pass(l, r, t, eps, delta_in, Side::Right, cfg);
}

std::vector<double> delta_k(int l, int r, int t, const std::vector<double>& eps_list,
                            const std::vector<double>& delta_in, Side incoming,
                            const DEConfig& cfg) {
    if (eps_list.empty()) throw ConstructionError("delta_k needs at least one epsilon");
    std::vector<double> delta = delta_in;
    for (size_t i = eps_list.size(); i-- > 0;)
        delta = delta_pass(l, r, t, eps_list[i], delta, incoming, cfg);
    return delta;
}

SGSchedule chain_balanced_schedule(int M, int m, int d) {
    if (m < 0 || m >= M) throw ConstructionError("target out of range");
    if (d < 0 || d > M - 1) throw ConstructionError("need 0 <= d <= M-1");
    const int left_room = m, right_room = M - 1 - m;
    int lhs = d / 2, rhs = d / 2;
    if (d % 2) {
        // odd d: the extra helper goes to the side farther from the boundary
        if (right_room - rhs >= left_room - lhs) ++rhs;
        else ++lhs;
    }
    if (lhs > left_room) {
        rhs += lhs - left_room;
        lhs = left_room;
    }
    if (rhs > right_room) {
        lhs += rhs - right_room;
        rhs = right_room;
    }
    if (lhs > left_room) throw ConstructionError("d exceeds available helpers on the chain");

    SGSchedule s;
    s.target = m;
    for (int k = std::max(lhs, rhs); k >= 1; --k) {
        std::vector<int> step;
        if (k <= lhs) step.push_back(m - k);
        if (k <= rhs) step.push_back(m + k);
        if (!step.empty()) s.helper_steps.push_back(std::move(step));
    }
    return s;
}

namespace {

// Injection for a coupling check during a pass on sub-block m: the product of
// (1 - message) over all its neighbors outside the block, message = final
// erasure probability from the neighbor's pass, 1 while undecoded.
double derived_delta(const CoupledProtograph& g, int cc, int m, const std::vector<double>& mu) {
    double known = 1.0;
    for (int v = 0; v < g.graph.num_vns(); ++v) {
        if (g.sub_block_of(v) == m) continue;
        int mult = g.graph(cc, v);
        for (int k = 0; k < mult; ++k) known *= 1.0 - mu[v];
    }
    return 1.0 - known;
}

}  // namespace

ScheduleRun run_schedule(const CoupledProtograph& g, const CheckClassification& cls,
                         const SGSchedule& schedule, const std::vector<double>& eps_per_sb,
                         const std::map<int, double>& far_injections, const DEConfig& cfg,
                         bool keep_passes) {
    const int M = g.num_sub_blocks();
    if (static_cast<int>(eps_per_sb.size()) != M)
        throw ConstructionError("eps_per_sb length must equal the sub-block count");
    std::set<int> seen;
    for (const auto& step : schedule.helper_steps)
        for (int s : step) {
            if (s < 0 || s >= M) throw ConstructionError("schedule references unknown sub-block");
            if (!seen.insert(s).second) throw ConstructionError("sub-block scheduled twice");
        }
    if (schedule.target < 0 || schedule.target >= M || seen.count(schedule.target))
        throw ConstructionError("target must appear exactly once, last");

    std::vector<double> mu(g.graph.num_vns(), 1.0);
    auto pass_deltas = [&](int m) {
        std::map<int, double> cc_delta;
        for (int c : cls.coupling_checks) {
            bool incident = false;
            for (int v : g.sub_blocks[m]) incident |= (g.graph(c, v) > 0);
            if (!incident) continue;
            auto far = far_injections.find(c);
            cc_delta[c] = (far != far_injections.end()) ? far->second : derived_delta(g, c, m, mu);
        }
        return cc_delta;
    };

    ScheduleRun run;
    for (const auto& step : schedule.helper_steps) {
        std::vector<std::pair<int, SGPassResult>> results;
        for (int s : step)
            results.emplace_back(s, decode_pass(g, cls, s, eps_per_sb[s], pass_deltas(s), cfg));
        // commit after the whole step so in-step passes see identical state
        for (auto& [s, pass] : results) {
            for (size_t j = 0; j < pass.vn_ids.size(); ++j) mu[pass.vn_ids[j]] = pass.de.vn_erasure[j];
            if (keep_passes) run.helpers.push_back(std::move(pass));
        }
    }
    run.target = decode_pass(g, cls, schedule.target, eps_per_sb[schedule.target],
                             pass_deltas(schedule.target), cfg);
    run.target_success = run.target.success();
    return run;
}

double evaluate_schedule(const CoupledProtograph& g, const CheckClassification& cls,
                         const SGSchedule& schedule, const DEConfig& cfg) {
    std::vector<double> eps(g.num_sub_blocks());
    return bisect_threshold(
        [&](double e) {
            std::fill(eps.begin(), eps.end(), e);
            return run_schedule(g, cls, schedule, eps, {}, cfg).target_success;
        },
        cfg);
}

double sg_threshold(const CoupledProtograph& g, const CheckClassification& cls, int m, int d,
                    const DEConfig& cfg) {
    return evaluate_schedule(g, cls, chain_balanced_schedule(g.num_sub_blocks(), m, d), cfg);
}

SGComplexity sg_complexity(int l, int r, int t, int M, int d) {
    if (l < 3 || r <= l || t < 0 || M < 1 || d < 0)
        throw ConstructionError("bad complexity parameters");
    if (t > 0 && r % (t + 1) != 0)
        throw ConstructionError("complexity formula assumes (t+1) | r");
    const long lr = static_cast<long>(l) * r;
    const int w = (t > 0) ? r / (t + 1) : r;
    SGComplexity c;
    c.global_edges = static_cast<long>(M) * lr;
    c.sg_edges = static_cast<long>(d) * (lr - static_cast<long>(w) * t * (t + 1) / 2) + lr;
    c.reduction = 1.0 - (d * (l - t / 2.0) + l) / (static_cast<double>(M) * l);
    return c;
}

SGLabeling sg_labeling(int l, int r, int t) {
    if (t < 0 || t > l - 1) throw ConstructionError("labeling needs 0 <= t <= l-1");
    SGLabeling lab;
    lab.l = l;
    lab.r = r;
    lab.t = t;
    lab.w = r / (t + 1);
    return lab;
}

T1Curves t1_curves(int l, int r, double eps, double delta_left, double delta_right,
                   int grid_points, const DEConfig& cfg) {
    if (l < 3 || r <= l) throw ConstructionError("need 3 <= l < r");
    const int w = r / 2;
    auto lc1 = [&](double x1, double x2) {
        return 1.0 - std::pow(1.0 - x1, w - 1) * std::pow(1.0 - x2, r - w);
    };
    auto lc2 = [&](double x1, double x2) {
        return 1.0 - std::pow(1.0 - x1, w) * std::pow(1.0 - x2, r - w - 1);
    };
    auto f = [&](double x1, double x2) {
        double u1 = lc1(x1, x2);
        double x4 = eps * std::pow(u1, l - 1);
        return eps * std::pow(u1, l - 2) * (1.0 - std::pow(1.0 - x4, w - 1) * (1.0 - delta_left));
    };
    auto gfun = [&](double x1, double x2) {
        double u2 = lc2(x1, x2);
        double x3 = eps * std::pow(u2, l - 1);
        return eps * std::pow(u2, l - 2) *
               (1.0 - std::pow(1.0 - x3, r - w - 1) * (1.0 - delta_right));
    };

    T1Curves out;
    out.w = w;
    if (grid_points > 1) {
        out.grid.resize(grid_points);
        for (int i = 0; i < grid_points; ++i)
            out.grid[i] = eps * static_cast<double>(i) / (grid_points - 1);
        out.f_vals.assign(grid_points, std::vector<double>(grid_points));
        out.g_vals.assign(grid_points, std::vector<double>(grid_points));
        for (int i = 0; i < grid_points; ++i)
            for (int j = 0; j < grid_points; ++j) {
                out.f_vals[i][j] = f(out.grid[i], out.grid[j]);
                out.g_vals[i][j] = gfun(out.grid[i], out.grid[j]);
            }
    }

    // four-variable iteration of the t = 1 message recursion
    double x1 = 1, x2 = 1, x3 = 1, x4 = 1;
    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        double u1 = lc1(x1, x2), u2 = lc2(x1, x2);
        double n1 = eps * std::pow(u1, l - 2) *
                    (1.0 - std::pow(1.0 - x4, w - 1) * (1.0 - delta_left));
        double n2 = eps * std::pow(u2, l - 2) *
                    (1.0 - std::pow(1.0 - x3, r - w - 1) * (1.0 - delta_right));
        double n3 = eps * std::pow(u2, l - 1);
        double n4 = eps * std::pow(u1, l - 1);
        double change = std::max(std::max(std::abs(n1 - x1), std::abs(n2 - x2)),
                                 std::max(std::abs(n3 - x3), std::abs(n4 - x4)));
        x1 = n1;
        x2 = n2;
        x3 = n3;
        x4 = n4;
        out.trajectory.push_back({x1, x2});
        if (change < cfg.conv_tol) break;
    }
    out.x1_limit = x1;
    out.x2_limit = x2;
    out.decoded = (x1 <= cfg.erasure_floor && x2 <= cfg.erasure_floor);
    return out;
}

}  // namespace scldpcl
