#pragma once

#include <array>
#include <map>
#include <vector>

#include "scldpcl/density_evolution.hpp"
#include "scldpcl/protograph.hpp"

namespace scldpcl {

enum class Side { Left, Right };

// Coupling checks of a sub-block in a memory-1 chain, in construction-row
// order: left[i] faces sub-block m-1, right[i] faces m+1.
struct ChainSides {
    std::vector<int> left, right;
};
ChainSides chain_sides(const CoupledProtograph& g, const CheckClassification& cls, int m);

// One decoding pass over a sub-block: DE on the induced sub-graph made of the
// block's VNs, its local checks, and every incident coupling check carrying a
// constant injection delta (1 = nothing known beyond the block, i.e. dormant).
struct SGPassResult {
    int sub_block = 0;
    std::vector<int> vn_ids;            // global VN ids (ascending)
    std::vector<int> cn_ids;            // local checks first, then coupling checks
    int num_local_cns = 0;
    Protograph sub;                     // induced bi-adjacency matrix
    DEResult de;                        // per-edge finals, P(v), success
    std::map<int, double> outgoing;     // coupling-check id -> outgoing erasure fraction

    bool success() const { return de.success; }
};

SGPassResult decode_pass(const CoupledProtograph& g, const CheckClassification& cls, int m,
                         double eps, const std::map<int, double>& cc_delta, const DEConfig& cfg);

// Helper-side pass: only the named sides carry injections, everything else is
// dormant; outgoing fractions are evaluated on every incident coupling check.
SGPassResult helper_pass(const CoupledProtograph& g, const CheckClassification& cls, int m,
                         const std::map<Side, std::vector<double>>& incoming, double eps,
                         const DEConfig& cfg);

// Target pass with explicit left/right injection vectors (length t each).
SGPassResult target_pass(const CoupledProtograph& g, const CheckClassification& cls, int m,
                         const std::vector<double>& delta_left,
                         const std::vector<double>& delta_right, double eps, const DEConfig& cfg);

// Threshold of the target given fixed incoming erasure vectors.
double epsilon_star_target(const CoupledProtograph& g, const CheckClassification& cls, int m,
                           const std::vector<double>& delta_left,
                           const std::vector<double>& delta_right, const DEConfig& cfg);

// Helper transfer function on a generic inner sub-block of the (l,r,t) chain:
// incoming erasure vector on one side, outgoing vector on the other. Requires
// (t+1) | r so both orientations are symmetric. delta_fn is the canonical
// right-incoming orientation.
std::vector<double> delta_pass(int l, int r, int t, double eps, const std::vector<double>& delta_in,
                               Side incoming, const DEConfig& cfg);
std::vector<double> delta_fn(int l, int r, int t, double eps, const std::vector<double>& delta_in,
                             const DEConfig& cfg);

// Chained helper transfer: eps_list.back() is applied first (outermost helper),
// eps_list.front() last (helper adjacent to the consumer).
std::vector<double> delta_k(int l, int r, int t, const std::vector<double>& eps_list,
                            const std::vector<double>& delta_in, Side incoming, const DEConfig& cfg);

// Helper phase as ordered steps of sub-blocks decoded in parallel, then the
// target. Injections for a step are computed from the previous steps' outputs
// only, so results are order-independent within a step.
struct SGSchedule {
    std::vector<std::vector<int>> helper_steps;
    int target = 0;
};

SGSchedule chain_balanced_schedule(int M, int m, int d);

struct ScheduleRun {
    bool target_success = false;
    SGPassResult target;
    std::vector<SGPassResult> helpers;  // filled only when keep_passes
};

// far_injections: explicit delta for specific coupling checks (takes
// precedence over the value derived from already-decoded neighbors); used for
// the incoming erasure probabilities at the outermost helpers.
ScheduleRun run_schedule(const CoupledProtograph& g, const CheckClassification& cls,
                         const SGSchedule& schedule, const std::vector<double>& eps_per_sb,
                         const std::map<int, double>& far_injections, const DEConfig& cfg,
                         bool keep_passes = false);

// Bisection over the uniform channel parameter for a schedule / for the
// balanced chain schedule with d helpers.
double evaluate_schedule(const CoupledProtograph& g, const CheckClassification& cls,
                         const SGSchedule& schedule, const DEConfig& cfg);
double sg_threshold(const CoupledProtograph& g, const CheckClassification& cls, int m, int d,
                    const DEConfig& cfg);

struct SGComplexity {
    long global_edges = 0;  // chi_G
    long sg_edges = 0;      // chi_SG
    double reduction = 0;
};
SGComplexity sg_complexity(int l, int r, int t, int M, int d);

// Node/edge labels of the semi-global graph of an (l,r,t) sub-block.
struct SGLabeling {
    int l = 0, r = 0, t = 0, w = 0;

    static int s_index(int k, int t) { return t + 1 + (k - 1) * (k - 2) / 2; }
    static int v_index(int k, int t) {
        return 2 * t + 1 + t * (t - 1) / 2 + (k - 1) * (2 * t - k) / 2;
    }
    int vn_label(int j) const {  // j: 0-based VN position in the sub-block
        int k = j / w + 1;
        return k > t + 1 ? t + 1 : k;
    }
    int lc_edge_label(int j) const { return vn_label(j); }
    int rcc_edge_label(int j, int i) const { return s_index(vn_label(j), t) + i; }  // i in 1..t
    int lcc_edge_label(int j, int i) const { return v_index(vn_label(j), t) + i; }
    int num_target_labels() const { return (t + 1) * (t + 1); }
    int num_helper_labels() const { return (t * t + 3 * t + 2) / 2; }
};
SGLabeling sg_labeling(int l, int r, int t);

// Two-dimensional reduction for t = 1: the x1/x2 fixed-point curves, the
// iteration trajectory, and its limit.
struct T1Curves {
    int w = 0;
    std::vector<double> grid;                      // sample points for both axes
    std::vector<std::vector<double>> f_vals;       // f(eps, dL, x1_i, x2_j)
    std::vector<std::vector<double>> g_vals;       // g(eps, dR, x1_i, x2_j)
    std::vector<std::array<double, 2>> trajectory; // (x1_l, x2_l)
    double x1_limit = 0, x2_limit = 0;
    bool decoded = false;  // limit reached the origin
};
T1Curves t1_curves(int l, int r, double eps, double delta_left, double delta_right,
                   int grid_points, const DEConfig& cfg);

}  // namespace scldpcl
