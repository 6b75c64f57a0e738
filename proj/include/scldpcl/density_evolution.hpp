#pragma once

#include <functional>
#include <map>
#include <vector>

#include "scldpcl/protograph.hpp"

namespace scldpcl {

struct DEConfig {
    int max_iters = 5000;
    double conv_tol = 1e-12;      // max-norm per-edge fixed-point stop
    double erasure_floor = 1e-9;  // success criterion on P(v)
    double bisect_tol = 1e-4;
    double zero_probe = 1e-3;  // threshold reported as 0 when this eps already fails
};

// Per-VN channel erasure probabilities.
using ErasureConstellation = std::vector<double>;

// Fixed erasure scalar attached to a CN as one extra constant incoming edge:
// the CN update gains a (1 - delta) factor. CNs absent from the map get none.
struct BoundaryInjection {
    std::map<int, double> delta;
};

// Strand layout of a protograph (one strand per unit of edge multiplicity),
// reusable across runs. Strands are enumerated CN-major.
class DEGraph {
public:
    explicit DEGraph(const Protograph& g);

    struct Strand {
        int cn, vn;
    };

    int num_strands() const { return static_cast<int>(strands_.size()); }
    int num_vns() const { return vns_; }
    int num_cns() const { return cns_; }
    const Strand& strand(int s) const { return strands_[s]; }
    // k-th parallel strand between cn and vn; -1 if absent
    int strand_index(int cn, int vn, int k = 0) const;
    const std::vector<int>& vn_strands(int v) const { return by_vn_[v]; }
    const std::vector<int>& cn_strands(int c) const { return by_cn_[c]; }

private:
    int vns_ = 0, cns_ = 0;
    std::vector<Strand> strands_;
    std::vector<std::vector<int>> by_vn_, by_cn_;
};

struct DEResult {
    std::vector<double> vn_erasure;      // P(v); 1 for inactive VNs
    std::vector<double> x_edge, u_edge;  // final per-strand message fractions
    bool converged = false;
    int iterations = 0;
    bool success = false;            // all active P(v) <= erasure_floor
    double monotonicity_slack = 0;   // largest per-strand increase seen across iterations
};

// Iterates the erasure message recursion from the all-ones start until the
// per-strand change drops below conv_tol, all active VNs fall below the
// erasure floor, or max_iters. VNs outside active_vns (empty = all active)
// never update: their outgoing messages stay 1.
DEResult de_run(const DEGraph& dg, const ErasureConstellation& eps,
                const BoundaryInjection& boundary, const std::vector<int>& active_vns,
                const DEConfig& cfg);
DEResult de_run(const Protograph& g, const ErasureConstellation& eps,
                const BoundaryInjection& boundary, const std::vector<int>& active_vns,
                const DEConfig& cfg);

// Same, invoking trace(iteration, x) after every iteration.
DEResult de_run_traced(const DEGraph& dg, const ErasureConstellation& eps,
                       const BoundaryInjection& boundary, const std::vector<int>& active_vns,
                       const DEConfig& cfg,
                       const std::function<void(int, const std::vector<double>&)>& trace);

// Generic bisection over [0,1]: probes cfg.zero_probe first and reports 0 on
// failure there; probes 1 and reports 1 on success there; otherwise narrows
// to bisect_tol and returns the bracket midpoint.
double bisect_threshold(const std::function<bool(double)>& succeeds, const DEConfig& cfg);

// Largest uniform eps on active_vns for which the recursion drives all active
// erasure probabilities below the floor.
double bp_threshold(const Protograph& g, const BoundaryInjection& boundary,
                    const std::vector<int>& active_vns, const DEConfig& cfg);
double bp_threshold(const Protograph& g, const DEConfig& cfg);

std::vector<double> local_thresholds(const CoupledProtograph& g, const DEConfig& cfg);
std::vector<double> local_thresholds(const CoupledProtograph& g, const CheckClassification& cls,
                                     const DEConfig& cfg);

struct SandwichResult {
    double lower = 0, mid = 0, upper = 0;
    bool holds = false;
};

// Row sub-matrix threshold <= full threshold <= column sub-matrix threshold,
// checked with 2 * bisect_tol slack.
SandwichResult threshold_sandwich_check(const Protograph& h, const std::vector<int>& rows,
                                        const std::vector<int>& cols, const DEConfig& cfg);

}  // namespace scldpcl
