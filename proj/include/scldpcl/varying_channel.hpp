#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "scldpcl/semi_global.hpp"

namespace scldpcl {

// CDF of the per-sub-block erasure parameter E. Supports point evaluation,
// the left limit Pr(E < x), and inverse-CDF sampling.
class ChannelCdf {
public:
    enum class Kind { Step, Uniform, Piecewise };

    static ChannelCdf step(double eps);
    static ChannelCdf uniform(double a, double b);
    // (x, F(x)) knots; x non-decreasing, F non-decreasing, F reaches 1
    static ChannelCdf piecewise(std::vector<std::array<double, 2>> points);

    double cdf(double x) const;       // Pr(E <= x)
    double cdf_left(double x) const;  // Pr(E < x)
    double quantile(double u) const;  // u in [0,1)

    Kind kind() const { return kind_; }
    const std::vector<std::array<double, 2>>& points() const { return pts_; }

private:
    Kind kind_ = Kind::Step;
    std::vector<std::array<double, 2>> pts_;
};

// Quantization grid 0 = e_0 < e_1 < ... < e_K = 1.
struct QuantizationPartition {
    std::vector<double> points;
    int intervals() const { return static_cast<int>(points.size()) - 1; }
    void validate() const;
};

// K intervals anchored at the two extreme target thresholds: one interval
// below eps_l, floor(K/2) equal intervals on [eps_l, eps_s], the rest up to 1.
QuantizationPartition default_partition(int K, double eps_l, double eps_s);

// Success probabilities of the target under the three extreme injections.
struct ExtremeProbs {
    double p_local = 0;   // P_L = Pr(E < eps*(1,1))
    double p_single = 0;  // P_S = Pr(E < eps*(1,0))
    double p_double = 0;  // P_D = Pr(E < eps*(0,0))
};

// Probabilities that one helper fully decodes, by incoming-side state.
struct HelperChainProbs {
    double full_given_known = 0;   // Pr(E < sup{eps : helper with delta_in = 0 decodes})
    double full_given_erased = 0;  // Pr(E < sup{eps : helper with delta_in = 1 decodes})
};

double p0_exact(const ChannelCdf& f, const CoupledProtograph& g, const CheckClassification& cls,
                int m, const std::vector<double>& delta1, const std::vector<double>& delta2,
                const DEConfig& cfg);

ExtremeProbs extreme_probs(const ChannelCdf& f, const CoupledProtograph& g,
                           const CheckClassification& cls, int m, const DEConfig& cfg);

HelperChainProbs helper_chain_probs(const ChannelCdf& f, int l, int r, int t, const DEConfig& cfg);

// Quantized lower bound on p_j(delta1, delta2) for the generic inner target of
// the (l,r,t) chain: sums F(eps*(chained helper outputs)) over grid tuples.
// Refuses evaluations beyond tuple_budget.
double quantized_lower_bound(int l, int r, int t, const ChannelCdf& f,
                             const QuantizationPartition& partition, int j,
                             const std::vector<double>& delta1, const std::vector<double>& delta2,
                             const DEConfig& cfg, long tuple_budget = 20000000L);

// Two-state recursive bound on the balanced strategy p_j(1,1).
double recursive_lower_bound(const ExtremeProbs& ex, const HelperChainProbs& hp, int j);

// Two-state recursive bound on the one-sided strategy p_hat_j(1).
double one_sided_lower_bound(const ExtremeProbs& ex, const HelperChainProbs& hp, int j);

struct McEstimate {
    double estimate = 0;
    double std_error = 0;
    long successes = 0;
    long trials = 0;
};

// Monte-Carlo oracle: d/2 helper chains on both sides of a generic inner
// target, per-sub-block erasure parameters drawn i.i.d. from f, full DE passes
// per trial. Far-side inputs are all-erased (the p_d(1,1) quantity).
McEstimate mc_success_prob(int l, int r, int t, int d, const ChannelCdf& f, long trials,
                           uint64_t seed, const DEConfig& cfg, int jobs = 0);

}  // namespace scldpcl
