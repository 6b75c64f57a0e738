#pragma once

#include <string>
#include <vector>

#include "scldpcl/protograph.hpp"
#include "scldpcl/semi_global.hpp"

namespace scldpcl {

// Sub-blocks as nodes, coupling checks as (hyper)edges. Parallel coupling
// checks over the same node set are merged; cn_ids keeps the multiplicity.
struct ISBGraph {
    int num_sub_blocks = 0;
    struct Hyperedge {
        std::vector<int> members;  // sorted sub-block ids, size >= 2
        std::vector<int> cn_ids;   // underlying coupling checks
    };
    std::vector<Hyperedge> edges;

    std::vector<int> node_degrees() const;  // hyperedge incidences per node
};

ISBGraph build_isb(const CoupledProtograph& g, const CheckClassification& cls);

// Rectangular sub-block layout: node m = row * cols + col. Columns advance
// with the memory-1 coupling, rows with the memory-T coupling (T = cols).
struct GridTopology {
    int rows = 0, cols = 0;
    int node(int row, int col) const { return row * cols + col; }
    bool inside(int row, int col) const { return row >= 0 && row < rows && col >= 0 && col < cols; }
};

enum class ScheduleKind { Vertical, Cross, Diamond, ChainBalanced };

struct NamedSchedule {
    ScheduleKind kind = ScheduleKind::ChainBalanced;
    SGSchedule schedule;
    int helper_count() const;
};

// Grid schedules decode shells outermost-first:
//   vertical: column cells within `steps` of the target;
//   cross: row and column cells within `steps`;
//   diamond: all cells with Manhattan distance <= steps.
NamedSchedule make_schedule(ScheduleKind kind, const GridTopology& grid, int target_row,
                            int target_col, int steps);
NamedSchedule make_schedule_chain(int M, int target, int d);

ScheduleKind schedule_kind_from_name(const std::string& name);
std::string schedule_kind_name(ScheduleKind kind);

}  // namespace scldpcl
