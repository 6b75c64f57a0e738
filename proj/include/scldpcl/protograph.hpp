#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scldpcl/errors.hpp"

namespace scldpcl {

// Bi-adjacency matrix of a protograph: rows are check nodes, columns are
// variable nodes, an entry counts parallel edges between the pair.
class Protograph {
public:
    Protograph() = default;
    Protograph(int num_cns, int num_vns)
        : cns_(num_cns), vns_(num_vns),
          a_(static_cast<size_t>(num_cns) * static_cast<size_t>(num_vns), 0) {}

    static Protograph from_rows(const std::vector<std::vector<int>>& rows);
    static Protograph all_ones(int num_cns, int num_vns);

    int num_cns() const { return cns_; }
    int num_vns() const { return vns_; }

    int operator()(int cn, int vn) const { return a_[idx(cn, vn)]; }
    int& operator()(int cn, int vn) { return a_[idx(cn, vn)]; }

    int cn_degree(int cn) const;
    int vn_degree(int vn) const;
    long num_edges() const;
    bool row_is_zero(int cn) const;
    bool row_is_full(int cn) const;  // every entry >= 1

    Protograph sub_rows(const std::vector<int>& rows) const;
    Protograph sub_columns(const std::vector<int>& cols) const;

    bool operator==(const Protograph&) const = default;

private:
    size_t idx(int cn, int vn) const {
        return static_cast<size_t>(cn) * static_cast<size_t>(vns_) + static_cast<size_t>(vn);
    }
    int cns_ = 0;
    int vns_ = 0;
    std::vector<int> a_;
};

// Index matrix P of the generalized coupling: entry tau in {0..memory} sends
// the corresponding base-matrix one into B_tau. Rows below the coupling rows
// must be all-zero so the local graph stays (l-t, r)-regular.
struct PartitionMatrix {
    int memory = 1;                      // T
    std::vector<std::vector<int>> rows;  // l rows of width r

    int l() const { return static_cast<int>(rows.size()); }
    int r() const { return rows.empty() ? 0 : static_cast<int>(rows[0].size()); }
    int coupling_rows() const;  // t: number of leading rows holding a nonzero entry
    void validate() const;      // throws ConstructionError

    bool operator==(const PartitionMatrix&) const = default;
};

struct ConstructionParams {
    int l = 0;               // VN degree
    int r = 0;               // sub-block width
    int t = 0;               // coupling rows
    int memory = 1;          // T
    int num_sub_blocks = 0;  // M
};

// Where a CN sits in the unfolded diagonal block layout (before all-zero-row
// removal). Kept so coupling checks can be mapped back to construction rows.
struct CnOrigin {
    int block_row = 0;  // 1-based chain block row
    int row = 0;        // 0-based row within the block
};

struct CoupledProtograph {
    Protograph graph;
    std::vector<std::vector<int>> sub_blocks;  // M disjoint VN index lists, chain order
    std::vector<int> vn_sub_block;             // per VN
    ConstructionParams params;
    std::optional<PartitionMatrix> partition;
    std::vector<CnOrigin> cn_origin;  // per CN; empty for graphs without construction provenance

    int num_sub_blocks() const { return static_cast<int>(sub_blocks.size()); }
    int sub_block_of(int vn) const { return vn_sub_block[vn]; }
};

struct CheckClassification {
    std::vector<std::vector<int>> local_checks;  // per sub-block, CN ids
    std::vector<int> coupling_checks;            // CN ids
    std::vector<int> owner;                      // per CN: sub-block id, or -1 for coupling checks
};

// Memory-T coupling of base matrices B_0..B_T: M block columns, diagonal
// placement, truncation, all-zero rows removed top to bottom.
CoupledProtograph couple_base_matrices(const std::vector<Protograph>& b, int M);

// The (l,r,t) staircase construction with M sub-blocks.
CoupledProtograph build_scldpcl(int l, int r, int t, int M);

// The partition matrix implied by build_scldpcl (memory 1).
PartitionMatrix scldpcl_partition(int l, int r, int t);

// Generalized construction from an explicit partition matrix.
CoupledProtograph build_generalized(const PartitionMatrix& p, int M);

// Two-dimensional coupling: row 1 carries the memory-1 (horizontal) link,
// row 2 the memory-T (vertical) link; t = 2.
PartitionMatrix make_grid_partition(int l, int r, int T);

CheckClassification classify_checks(const CoupledProtograph& g);
Protograph local_protograph(const CoupledProtograph& g, int m);
Protograph local_protograph(const CoupledProtograph& g, const CheckClassification& cls, int m);

double design_rate(const Protograph& g);
double design_rate(const CoupledProtograph& g);

// True iff at most one row of the vertical stack (b0; b1) is all-ones.
// Inputs must be binary with b0 + b1 = all-ones.
bool has_no_two_full_rows(const Protograph& b0, const Protograph& b1);

// Line-oriented text formats. Both round-trip byte-identically.
std::string to_text(const CoupledProtograph& g);
CoupledProtograph coupled_from_text(const std::string& text);
std::string to_text(const PartitionMatrix& p);
PartitionMatrix partition_from_text(const std::string& text);

}  // namespace scldpcl
