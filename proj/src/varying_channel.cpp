#include "scldpcl/varying_channel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "scldpcl/parallel.hpp"
#include "scldpcl/rng.hpp"

namespace scldpcl {

ChannelCdf ChannelCdf::step(double eps) {
    if (eps < 0 || eps > 1) throw ConstructionError("step CDF needs eps in [0,1]");
    ChannelCdf f;
    f.kind_ = Kind::Step;
    f.pts_ = {{eps, 1.0}};
    return f;
}

ChannelCdf ChannelCdf::uniform(double a, double b) {
    if (!(a < b) || a < 0 || b > 1) throw ConstructionError("uniform CDF needs 0 <= a < b <= 1");
    ChannelCdf f;
    f.kind_ = Kind::Uniform;
    f.pts_ = {{a, 0.0}, {b, 1.0}};
    return f;
}

ChannelCdf ChannelCdf::piecewise(std::vector<std::array<double, 2>> points) {
    if (points.size() < 2) throw ConstructionError("piecewise CDF needs at least two points");
    for (size_t i = 0; i < points.size(); ++i) {
        if (points[i][0] < 0 || points[i][0] > 1 || points[i][1] < 0 || points[i][1] > 1)
            throw ConstructionError("piecewise CDF points must lie in [0,1]^2");
        if (i > 0 && (points[i][0] < points[i - 1][0] || points[i][1] < points[i - 1][1]))
            throw ConstructionError("piecewise CDF points must be non-decreasing");
    }
    if (points.back()[1] != 1.0) throw ConstructionError("piecewise CDF must reach 1");
    ChannelCdf f;
    f.kind_ = Kind::Piecewise;
    f.pts_ = std::move(points);
    return f;
}

double ChannelCdf::cdf(double x) const {
    switch (kind_) {
        case Kind::Step:
            return x >= pts_[0][0] ? 1.0 : 0.0;
        case Kind::Uniform: {
            double a = pts_[0][0], b = pts_[1][0];
            return std::clamp((x - a) / (b - a), 0.0, 1.0);
        }
        case Kind::Piecewise: {
            if (x < pts_.front()[0]) return 0.0;
            if (x >= pts_.back()[0]) return pts_.back()[1];
            for (size_t i = 1; i < pts_.size(); ++i) {
                if (x > pts_[i][0]) continue;
                double x0 = pts_[i - 1][0], x1 = pts_[i][0];
                double y0 = pts_[i - 1][1], y1 = pts_[i][1];
                if (x1 == x0) return std::max(y0, y1);
                // at an interior knot shared by two segments take the later (max) value
                if (x == x0) return y0;
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
            }
            return pts_.back()[1];
        }
    }
    return 0.0;
}

double ChannelCdf::cdf_left(double x) const {
    switch (kind_) {
        case Kind::Step:
            return x > pts_[0][0] ? 1.0 : 0.0;
        case Kind::Uniform:
            return cdf(x);
        case Kind::Piecewise: {
            if (x <= pts_.front()[0]) return 0.0;
            if (x > pts_.back()[0]) return pts_.back()[1];
            double best = 0.0;
            for (size_t i = 1; i < pts_.size(); ++i) {
                double x0 = pts_[i - 1][0], x1 = pts_[i][0];
                double y0 = pts_[i - 1][1], y1 = pts_[i][1];
                if (x > x1) {
                    best = y1;
                    continue;
                }
                if (x1 == x0) {
                    if (x > x0) best = std::max(best, y1);
                    return std::max(best, y0);
                }
                if (x <= x0) return best;
                return std::max(best, y0 + (y1 - y0) * (x - x0) / (x1 - x0));
            }
            return best;
        }
    }
    return 0.0;
}

double ChannelCdf::quantile(double u) const {
    switch (kind_) {
        case Kind::Step:
            return pts_[0][0];
        case Kind::Uniform:
            return pts_[0][0] + u * (pts_[1][0] - pts_[0][0]);
        case Kind::Piecewise: {
            if (u <= pts_.front()[1]) return pts_.front()[0];
            for (size_t i = 1; i < pts_.size(); ++i) {
                if (u > pts_[i][1]) continue;
                double x0 = pts_[i - 1][0], x1 = pts_[i][0];
                double y0 = pts_[i - 1][1], y1 = pts_[i][1];
                if (y1 == y0) return x0;
                return x0 + (x1 - x0) * (u - y0) / (y1 - y0);
            }
            return pts_.back()[0];
        }
    }
    return 0.0;
}

void QuantizationPartition::validate() const {
    if (points.size() < 2) throw ConstructionError("partition needs at least two points");
    if (points.front() != 0.0 || points.back() != 1.0)
        throw ConstructionError("partition must run from 0 to 1");
    for (size_t i = 1; i < points.size(); ++i)
        if (!(points[i] > points[i - 1]))
            throw ConstructionError("partition points must be strictly increasing");
}

QuantizationPartition default_partition(int K, double eps_l, double eps_s) {
    if (K < 4) throw ConstructionError("default partition needs K >= 4");
    if (!(eps_l > 0) || eps_l > eps_s || !(eps_s < 1))
        throw ConstructionError("anchors must satisfy 0 < eps_l <= eps_s < 1");
    QuantizationPartition p;
    p.points.push_back(0.0);
    const int mid = K / 2;
    const int tail = K - 1 - mid;
    if (eps_s > eps_l) {
        for (int i = 0; i <= mid; ++i)
            p.points.push_back(eps_l + (eps_s - eps_l) * static_cast<double>(i) / mid);
        for (int i = 1; i < tail; ++i)
            p.points.push_back(eps_s + (1.0 - eps_s) * static_cast<double>(i) / tail);
    } else {
        // collapsed anchors: single anchor point, remaining intervals above it
        p.points.push_back(eps_l);
        for (int i = 1; i < K - 1; ++i)
            p.points.push_back(eps_l + (1.0 - eps_l) * static_cast<double>(i) / (K - 1));
    }
    p.points.push_back(1.0);
    p.validate();
    return p;
}

double p0_exact(const ChannelCdf& f, const CoupledProtograph& g, const CheckClassification& cls,
                int m, const std::vector<double>& delta1, const std::vector<double>& delta2,
                const DEConfig& cfg) {
    return f.cdf_left(epsilon_star_target(g, cls, m, delta1, delta2, cfg));
}

ExtremeProbs extreme_probs(const ChannelCdf& f, const CoupledProtograph& g,
                           const CheckClassification& cls, int m, const DEConfig& cfg) {
    const int t = g.params.t;
    const std::vector<double> ones(t, 1.0), zeros(t, 0.0);
    ExtremeProbs ex;
    ex.p_local = f.cdf_left(epsilon_star_target(g, cls, m, ones, ones, cfg));
    ex.p_single = f.cdf_left(epsilon_star_target(g, cls, m, ones, zeros, cfg));
    ex.p_double = f.cdf_left(epsilon_star_target(g, cls, m, zeros, zeros, cfg));
    return ex;
}

HelperChainProbs helper_chain_probs(const ChannelCdf& f, int l, int r, int t,
                                    const DEConfig& cfg) {
    CoupledProtograph g = build_scldpcl(l, r, t, 3);
    CheckClassification cls = classify_checks(g);
    auto full_decode_threshold = [&](double delta_in) {
        std::map<Side, std::vector<double>> incoming{
            {Side::Right, std::vector<double>(t, delta_in)}};
        return bisect_threshold(
            [&](double e) { return helper_pass(g, cls, 1, incoming, e, cfg).success(); }, cfg);
    };
    HelperChainProbs hp;
    hp.full_given_known = f.cdf_left(full_decode_threshold(0.0));
    hp.full_given_erased = f.cdf_left(full_decode_threshold(1.0));
    return hp;
}

double quantized_lower_bound(int l, int r, int t, const ChannelCdf& f,
                             const QuantizationPartition& partition, int j,
                             const std::vector<double>& delta1, const std::vector<double>& delta2,
                             const DEConfig& cfg, long tuple_budget) {
    partition.validate();
    if (j < 0 || j % 2 != 0) throw ConstructionError("quantized bound needs even j >= 0");
    const int K = partition.intervals();
    double tuples = std::pow(static_cast<double>(K), j);
    if (tuples > static_cast<double>(tuple_budget))
        throw ConstructionError("K^j exceeds the evaluation budget; lower K or j");

    CoupledProtograph g = build_scldpcl(l, r, t, 3);
    CheckClassification cls = classify_checks(g);
    if (j == 0) return p0_exact(f, g, cls, 1, delta1, delta2, cfg);

    const int half = j / 2;
    std::vector<double> weight(K);
    for (int i = 0; i < K; ++i)
        weight[i] = f.cdf(partition.points[i + 1]) - f.cdf(partition.points[i]);

    // All helper-chain outputs per side: level h holds Delta compositions for
    // every tuple of length h, indexed by mixed-radix K. The innermost helper
    // (adjacent to the target) is the last composition applied.
    auto side_outputs = [&](const std::vector<double>& far, Side incoming) {
        std::vector<std::vector<double>> level{far};
        for (int h = 0; h < half; ++h) {
            std::vector<std::vector<double>> next;
            next.reserve(level.size() * K);
            for (const auto& delta : level)
                for (int i = 0; i < K; ++i)
                    next.push_back(delta_pass(l, r, t, partition.points[i + 1], delta, incoming, cfg));
            level = std::move(next);
        }
        return level;  // K^half entries; index = sum_k i_k * K^(position)
    };
    // left chain moves rightward (incoming side Left), right chain leftward
    std::vector<std::vector<double>> left = side_outputs(delta1, Side::Left);
    std::vector<std::vector<double>> right = side_outputs(delta2, Side::Right);

    // weight of a composite index: product of interval weights of its digits
    auto tuple_weight = [&](size_t idx) {
        double w = 1.0;
        for (int h = 0; h < half; ++h) {
            w *= weight[idx % K];
            idx /= K;
        }
        return w;
    };

    double bound = 0.0;
    for (size_t a = 0; a < left.size(); ++a) {
        double wa = tuple_weight(a);
        if (wa == 0.0) continue;
        for (size_t b = 0; b < right.size(); ++b) {
            double wb = tuple_weight(b);
            if (wb == 0.0) continue;
            double y = epsilon_star_target(g, cls, 1, left[a], right[b], cfg);
            bound += f.cdf_left(y) * wa * wb;
        }
    }
    return bound;
}

namespace {

// Probability that a chain of n helpers hands a fully-known boundary to its
// inner neighbor, under the two-state (known / erased) relaxation.
double chain_delivery(const HelperChainProbs& hp, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        s = hp.full_given_known * s + hp.full_given_erased * (1.0 - s);
    return s;
}

}  // namespace

double recursive_lower_bound(const ExtremeProbs& ex, const HelperChainProbs& hp, int j) {
    if (j < 0 || j % 2 != 0) throw ConstructionError("recursive bound needs even j >= 0");
    if (j == 0) return ex.p_local;
    double s = chain_delivery(hp, j / 2);
    return ex.p_local * (1 - s) * (1 - s) + 2 * ex.p_single * s * (1 - s) +
           ex.p_double * s * s;
}

double one_sided_lower_bound(const ExtremeProbs& ex, const HelperChainProbs& hp, int j) {
    if (j < 0) throw ConstructionError("one-sided bound needs j >= 0");
    double s = chain_delivery(hp, j);
    return ex.p_single * s + ex.p_local * (1 - s);
}

McEstimate mc_success_prob(int l, int r, int t, int d, const ChannelCdf& f, long trials,
                           uint64_t seed, const DEConfig& cfg, int jobs) {
    if (d < 0 || d % 2 != 0) throw ConstructionError("Monte-Carlo oracle needs even d >= 0");
    if (trials < 1) throw ConstructionError("need at least one trial");

    // Chain long enough that no helper touches a terminated end block.
    const int M = d + 3;
    const int m = d / 2 + 1;
    CoupledProtograph g = build_scldpcl(l, r, t, M);
    CheckClassification cls = classify_checks(g);
    SGSchedule schedule = chain_balanced_schedule(M, m, d);

    // Far inputs fixed to all-erased: this estimates p_d(1,1). Dormant is the
    // derived default, so no explicit far injections are needed.
    std::vector<int> involved;
    for (int s = m - d / 2; s <= m + d / 2; ++s) involved.push_back(s);

    std::atomic<long> successes{0};
    parallel_chunks(trials, jobs, [&](long b, long e) {
        std::vector<double> eps(M, 1.0);
        long local = 0;
        for (long k = b; k < e; ++k) {
            SplitMix64 rng(derive_seed(seed, static_cast<uint64_t>(k)));
            for (int s : involved) eps[s] = f.quantile(rng.next_unit());
            if (run_schedule(g, cls, schedule, eps, {}, cfg).target_success) ++local;
        }
        successes += local;
    });

    McEstimate est;
    est.successes = successes.load();
    est.trials = trials;
    est.estimate = static_cast<double>(est.successes) / static_cast<double>(trials);
    est.std_error = std::sqrt(std::max(est.estimate * (1.0 - est.estimate), 0.0) /
                              static_cast<double>(trials));
    return est;
}

}  // namespace scldpcl
