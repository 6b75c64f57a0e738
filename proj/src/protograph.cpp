#include "scldpcl/protograph.hpp"

#include <algorithm>
#include <sstream>

namespace scldpcl {

Protograph Protograph::from_rows(const std::vector<std::vector<int>>& rows) {
    if (rows.empty()) throw ConstructionError("protograph needs at least one row");
    Protograph g(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int c = 0; c < g.num_cns(); ++c) {
        if (static_cast<int>(rows[c].size()) != g.num_vns())
            throw ConstructionError("ragged protograph rows");
        for (int v = 0; v < g.num_vns(); ++v) {
            if (rows[c][v] < 0) throw ConstructionError("negative edge multiplicity");
            g(c, v) = rows[c][v];
        }
    }
    return g;
}

Protograph Protograph::all_ones(int num_cns, int num_vns) {
    Protograph g(num_cns, num_vns);
    for (int c = 0; c < num_cns; ++c)
        for (int v = 0; v < num_vns; ++v) g(c, v) = 1;
    return g;
}

int Protograph::cn_degree(int cn) const {
    int d = 0;
    for (int v = 0; v < vns_; ++v) d += (*this)(cn, v);
    return d;
}

int Protograph::vn_degree(int vn) const {
    int d = 0;
    for (int c = 0; c < cns_; ++c) d += (*this)(c, vn);
    return d;
}

long Protograph::num_edges() const {
    long e = 0;
    for (int x : a_) e += x;
    return e;
}

bool Protograph::row_is_zero(int cn) const { return cn_degree(cn) == 0; }

bool Protograph::row_is_full(int cn) const {
    for (int v = 0; v < vns_; ++v)
        if ((*this)(cn, v) == 0) return false;
    return true;
}

Protograph Protograph::sub_rows(const std::vector<int>& rows) const {
    Protograph g(static_cast<int>(rows.size()), vns_);
    for (int i = 0; i < g.num_cns(); ++i)
        for (int v = 0; v < vns_; ++v) g(i, v) = (*this)(rows[i], v);
    return g;
}

Protograph Protograph::sub_columns(const std::vector<int>& cols) const {
    Protograph g(cns_, static_cast<int>(cols.size()));
    for (int c = 0; c < cns_; ++c)
        for (int j = 0; j < g.num_vns(); ++j) g(c, j) = (*this)(c, cols[j]);
    return g;
}

int PartitionMatrix::coupling_rows() const {
    int t = 0;
    for (int i = 0; i < l(); ++i) {
        bool nonzero = false;
        for (int x : rows[i]) nonzero |= (x != 0);
        if (nonzero) t = i + 1;
    }
    return t;
}

void PartitionMatrix::validate() const {
    if (rows.empty()) throw ConstructionError("partition matrix is empty");
    const int ll = l(), rr = r();
    if (ll < 3) throw ConstructionError("partition matrix needs l >= 3 rows");
    if (rr <= ll) throw ConstructionError("partition matrix needs r > l columns");
    if (memory < 1) throw ConstructionError("partition memory T must be >= 1");
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != rr) throw ConstructionError("ragged partition rows");
        for (int x : row)
            if (x < 0 || x > memory)
                throw ConstructionError("partition entries must lie in {0..T}");
    }
    const int t = coupling_rows();
    // nonzero rows must form a prefix: an all-zero row above a nonzero one
    // breaks the (l-t, r)-regular local graph
    for (int i = 0; i < t; ++i) {
        bool nonzero = false;
        for (int x : rows[i]) nonzero |= (x != 0);
        if (!nonzero) throw ConstructionError("locality violated: zero row above a coupling row");
    }
    if (t > ll - 2)
        throw ConstructionError("locality violated: coupling rows t=" + std::to_string(t) +
                                " exceed l-2=" + std::to_string(ll - 2));
}

CoupledProtograph couple_base_matrices(const std::vector<Protograph>& b, int M) {
    if (b.empty()) throw ConstructionError("need at least B_0");
    const int T = static_cast<int>(b.size()) - 1;
    const int l = b[0].num_cns();
    const int r = b[0].num_vns();
    for (const auto& bt : b)
        if (bt.num_cns() != l || bt.num_vns() != r)
            throw ConstructionError("B_tau matrices must share dimensions");
    if (M < T + 1)
        throw ConstructionError("need M >= T+1 sub-blocks, got M=" + std::to_string(M) +
                                ", T=" + std::to_string(T));

    // Block row i (1..M+T) holds B_tau at block column i - tau.
    const int block_rows = M + T;
    Protograph full(block_rows * l, M * r);
    for (int i = 1; i <= block_rows; ++i) {
        for (int tau = 0; tau <= T; ++tau) {
            int col_block = i - tau;
            if (col_block < 1 || col_block > M) continue;
            for (int p = 0; p < l; ++p)
                for (int v = 0; v < r; ++v)
                    full((i - 1) * l + p, (col_block - 1) * r + v) = b[tau](p, v);
        }
    }

    // Truncation leaves all-zero rows; drop them top to bottom.
    std::vector<int> kept;
    std::vector<CnOrigin> origin;
    for (int c = 0; c < full.num_cns(); ++c) {
        if (full.row_is_zero(c)) continue;
        kept.push_back(c);
        origin.push_back({c / l + 1, c % l});
    }

    CoupledProtograph g;
    g.graph = full.sub_rows(kept);
    g.cn_origin = std::move(origin);
    g.sub_blocks.resize(M);
    g.vn_sub_block.resize(M * r);
    for (int m = 0; m < M; ++m) {
        g.sub_blocks[m].resize(r);
        for (int v = 0; v < r; ++v) {
            g.sub_blocks[m][v] = m * r + v;
            g.vn_sub_block[m * r + v] = m;
        }
    }

    // Count rows whose ones span more than one memory tap.
    int t = 0;
    for (int p = 0; p < l; ++p) {
        int taps = 0;
        for (int tau = 0; tau <= T; ++tau) taps += b[tau].row_is_zero(p) ? 0 : 1;
        if (taps > 1) ++t;
    }
    g.params = {l, r, t, T, M};
    return g;
}

PartitionMatrix scldpcl_partition(int l, int r, int t) {
    const int w = (t + 1 > 0) ? r / (t + 1) : r;
    PartitionMatrix p;
    p.memory = 1;
    p.rows.assign(l, std::vector<int>(r, 0));
    // staircase row i couples columns beyond i*w to the previous sub-block
    for (int i = 0; i < t; ++i)
        for (int j = (i + 1) * w; j < r; ++j) p.rows[i][j] = 1;
    return p;
}

CoupledProtograph build_scldpcl(int l, int r, int t, int M) {
    if (l < 3) throw ConstructionError("need l >= 3, got l=" + std::to_string(l));
    if (r <= l) throw ConstructionError("need r > l, got r=" + std::to_string(r));
    if (t < 0 || t > l - 1)
        throw ConstructionError("need 0 <= t <= l-1, got t=" + std::to_string(t));
    if (M < 2) throw ConstructionError("need M >= 2, got M=" + std::to_string(M));

    const int w = r / (t + 1);
    Protograph b0(l, r), b1(l, r);
    for (int i = 0; i < t; ++i) {
        // A_1 row i: i+1 all-ones blocks of width w, zeros to the right
        for (int j = 0; j < r; ++j) b0(i, j) = (j < (i + 1) * w) ? 1 : 0;
    }
    for (int i = t; i < l; ++i)
        for (int j = 0; j < r; ++j) b0(i, j) = 1;  // A_2
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < r; ++j) b1(i, j) = 1 - b0(i, j);

    CoupledProtograph g = couple_base_matrices({b0, b1}, M);
    g.params = {l, r, t, 1, M};
    g.partition = scldpcl_partition(l, r, t);
    return g;
}

CoupledProtograph build_generalized(const PartitionMatrix& p, int M) {
    p.validate();
    const int l = p.l(), r = p.r(), T = p.memory;
    std::vector<Protograph> b(T + 1, Protograph(l, r));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < r; ++j) b[p.rows[i][j]](i, j) = 1;
    CoupledProtograph g = couple_base_matrices(b, M);
    g.params = {l, r, p.coupling_rows(), T, M};
    g.partition = p;
    return g;
}

PartitionMatrix make_grid_partition(int l, int r, int T) {
    if (l < 4) throw ConstructionError("grid partition needs l >= 4");
    if (r % 4 != 0) throw ConstructionError("grid partition needs 4 | r");
    if (T <= 2) throw ConstructionError("grid partition needs T > 2");
    PartitionMatrix p;
    p.memory = T;
    p.rows.assign(l, std::vector<int>(r, 0));
    for (int j = r / 4; j < 3 * r / 4; ++j) p.rows[0][j] = 1;  // horizontal link
    for (int j = r / 2; j < r; ++j) p.rows[1][j] = T;          // vertical link
    return p;
}

CheckClassification classify_checks(const CoupledProtograph& g) {
    CheckClassification cls;
    const int M = g.num_sub_blocks();
    cls.local_checks.resize(M);
    cls.owner.assign(g.graph.num_cns(), -1);
    for (int c = 0; c < g.graph.num_cns(); ++c) {
        int home = -2;  // -2: unseen, -1: spans several sub-blocks
        for (int v = 0; v < g.graph.num_vns(); ++v) {
            if (g.graph(c, v) == 0) continue;
            int m = g.sub_block_of(v);
            if (home == -2) home = m;
            else if (home != m) home = -1;
        }
        if (home >= 0) {
            cls.local_checks[home].push_back(c);
            cls.owner[c] = home;
        } else {
            cls.coupling_checks.push_back(c);
        }
    }
    return cls;
}

Protograph local_protograph(const CoupledProtograph& g, const CheckClassification& cls, int m) {
    if (m < 0 || m >= g.num_sub_blocks())
        throw ConstructionError("sub-block index out of range: " + std::to_string(m));
    return g.graph.sub_rows(cls.local_checks[m]).sub_columns(g.sub_blocks[m]);
}

Protograph local_protograph(const CoupledProtograph& g, int m) {
    return local_protograph(g, classify_checks(g), m);
}

double design_rate(const Protograph& g) {
    return 1.0 - static_cast<double>(g.num_cns()) / static_cast<double>(g.num_vns());
}

double design_rate(const CoupledProtograph& g) { return design_rate(g.graph); }

bool has_no_two_full_rows(const Protograph& b0, const Protograph& b1) {
    if (b0.num_cns() != b1.num_cns() || b0.num_vns() != b1.num_vns())
        throw ConstructionError("decomposition parts must share dimensions");
    for (int c = 0; c < b0.num_cns(); ++c)
        for (int v = 0; v < b0.num_vns(); ++v) {
            int x0 = b0(c, v), x1 = b1(c, v);
            if ((x0 != 0 && x0 != 1) || (x1 != 0 && x1 != 1) || x0 + x1 != 1)
                throw ConstructionError("not a binary decomposition of the all-ones matrix");
        }
    int full = 0;
    for (int c = 0; c < b0.num_cns(); ++c) full += b0.row_is_full(c) ? 1 : 0;
    for (int c = 0; c < b1.num_cns(); ++c) full += b1.row_is_full(c) ? 1 : 0;
    return full <= 1;
}

std::string to_text(const CoupledProtograph& g) {
    std::ostringstream out;
    out << g.graph.num_cns() << ' ' << g.graph.num_vns() << ' ' << g.num_sub_blocks() << '\n';
    for (int c = 0; c < g.graph.num_cns(); ++c) {
        for (int v = 0; v < g.graph.num_vns(); ++v) {
            if (v) out << ' ';
            out << g.graph(c, v);
        }
        out << '\n';
    }
    for (int m = 0; m < g.num_sub_blocks(); ++m) {
        if (m) out << ' ';
        out << g.sub_blocks[m].front() << '-' << g.sub_blocks[m].back();
    }
    out << '\n';
    return out.str();
}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

std::vector<long> parse_ints(const std::string& line, const char* what) {
    std::istringstream in(line);
    std::vector<long> out;
    std::string tok;
    while (in >> tok) {
        try {
            size_t pos = 0;
            out.push_back(std::stol(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ParseError(std::string("bad integer in ") + what + ": '" + tok + "'");
        }
    }
    return out;
}

}  // namespace

CoupledProtograph coupled_from_text(const std::string& text) {
    auto lines = split_lines(text);
    if (lines.size() < 3) throw ParseError("protograph file too short");
    auto header = parse_ints(lines[0], "header");
    if (header.size() != 3) throw ParseError("header must be 'CNs VNs M'");
    const int cns = static_cast<int>(header[0]);
    const int vns = static_cast<int>(header[1]);
    const int M = static_cast<int>(header[2]);
    if (cns < 1 || vns < 1 || M < 1) throw ParseError("header counts must be positive");
    if (static_cast<int>(lines.size()) < cns + 2) throw ParseError("missing matrix rows");

    CoupledProtograph g;
    g.graph = Protograph(cns, vns);
    for (int c = 0; c < cns; ++c) {
        auto row = parse_ints(lines[1 + c], "matrix row");
        if (static_cast<int>(row.size()) != vns) throw ParseError("ragged matrix row");
        for (int v = 0; v < vns; ++v) {
            if (row[v] < 0) throw ParseError("negative matrix entry");
            g.graph(c, v) = static_cast<int>(row[v]);
        }
    }

    std::istringstream in(lines[1 + cns]);
    std::string tok;
    g.sub_blocks.clear();
    g.vn_sub_block.assign(vns, -1);
    while (in >> tok) {
        auto dash = tok.find('-');
        if (dash == std::string::npos) throw ParseError("sub-block range must be 'a-b'");
        int a, bgn = 0;
        try {
            a = std::stoi(tok.substr(0, dash));
            bgn = std::stoi(tok.substr(dash + 1));
        } catch (const std::exception&) {
            throw ParseError("bad sub-block range: '" + tok + "'");
        }
        if (a < 0 || bgn < a || bgn >= vns) throw ParseError("sub-block range out of bounds");
        std::vector<int> block;
        for (int v = a; v <= bgn; ++v) {
            if (g.vn_sub_block[v] != -1) throw ParseError("overlapping sub-block ranges");
            g.vn_sub_block[v] = static_cast<int>(g.sub_blocks.size());
            block.push_back(v);
        }
        g.sub_blocks.push_back(std::move(block));
    }
    if (static_cast<int>(g.sub_blocks.size()) != M)
        throw ParseError("sub-block count does not match header");
    for (int v = 0; v < vns; ++v)
        if (g.vn_sub_block[v] == -1) throw ParseError("VN not covered by any sub-block");
    g.params.num_sub_blocks = M;
    g.params.r = static_cast<int>(g.sub_blocks[0].size());
    return g;
}

std::string to_text(const PartitionMatrix& p) {
    std::ostringstream out;
    out << p.l() << ' ' << p.r() << ' ' << p.memory << '\n';
    for (const auto& row : p.rows) {
        for (size_t j = 0; j < row.size(); ++j) {
            if (j) out << ' ';
            out << row[j];
        }
        out << '\n';
    }
    return out.str();
}

PartitionMatrix partition_from_text(const std::string& text) {
    auto lines = split_lines(text);
    if (lines.size() < 2) throw ParseError("partition file too short");
    auto header = parse_ints(lines[0], "header");
    if (header.size() != 3) throw ParseError("header must be 'l r T'");
    const int l = static_cast<int>(header[0]);
    const int r = static_cast<int>(header[1]);
    PartitionMatrix p;
    p.memory = static_cast<int>(header[2]);
    if (static_cast<int>(lines.size()) < 1 + l) throw ParseError("missing partition rows");
    for (int i = 0; i < l; ++i) {
        auto row = parse_ints(lines[1 + i], "partition row");
        if (static_cast<int>(row.size()) != r) throw ParseError("ragged partition row");
        p.rows.emplace_back(row.begin(), row.end());
    }
    p.validate();
    return p;
}

}  // namespace scldpcl
