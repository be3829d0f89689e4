#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bicycle/bbcode.hpp"
#include "bicycle/logical.hpp"

namespace bicycle {

// ---------------------------------------------------------------------------
// Auxiliary-graph data. Vertex labels are monomials with an L/R tag naming the
// code qubit the vertex attaches to. Cycle walks are written with an explicit
// closing vertex. These tables are transcriptions; the loader validates every
// walk against derived edges and the whole census against the published
// tables, and a checksum pins the text.

struct LpuGraphData {
    const char* identified_l;
    const char* identified_r;
    std::vector<const char*> gl_expander_edges;  // "a|b" pairs
    std::vector<const char*> gr_expander_edges;
    std::vector<const char*> ul_cycles;  // "v1>v2>...>v1"
    std::vector<const char*> ur_cycles;
    std::vector<const char*> gl_bridge_path;  // vertex sequences, same length
    std::vector<const char*> gr_bridge_path;
    const char* special_bridge_cycle;  // walk through the identified vertex
};

inline const LpuGraphData& gross_lpu_data() {
    static const LpuGraphData d{
        "x^4R",
        "x^9*yL",
        {},
        {},
        {
            "x^4L>x^3*y^2R>x^3*yR>x^5L>x^4L",
            "x^3*y^5R>x^3R>x^6*y^5L>x^4*y^2L>x^3*y^5R",
            "x^3*y^5R>x^3R>x^6*y^5L>x^4R>x^5*y^4L>x^3*y^5R",
            "x^4L>x^3*y^2R>x^6*yL>x^5*y^4L>x^4R>x^4L",
            "x^3*yR>x^3*y^2R>x^6*yL>x^4*y^2R>x^5L>x^3*yR",
        },
        {
            "x^9*yL>x^8*y^4R>x^8*y^5R>x^11*y^4L>x^9*yL",
            "x*yL>xR>x^4*y^4R>x^3*y^4L>x*yL",
            "1L>y^5R>x^9R>x^9*yL>x^8*y^4R>1L",
        },
        {"x^6*y^5L", "x^4*y^2L", "x^3*y^5R", "x^5*y^4L", "x^6*yL", "x^4*y^2R",
         "x^5L", "x^4L", "x^3*y^2R", "x^3*yR", "x^3R"},
        {"x^11*y^4L", "x^8*y^5R", "x^8*y^4R", "1L", "xR", "x^4*y^4R",
         "x^8L", "x^9R", "y^5R", "x^3*y^4L", "x*yL"},
        "x^4R>x^6*y^5L>x^11*y^4L>x^4R",
    };
    return d;
}

inline const LpuGraphData& two_gross_lpu_data() {
    static const LpuGraphData d{
        "x^3*y^2R",
        "x^10*y^11L",
        {"x^3*y^3L|x^7*y^11L", "x*y^9R|x^8*y^5R"},
        {"x^5*y^5L|x^11*y^10R", "x^11*y^9R|x^2*y^6R"},
        {
            "x^2L>x^3*y^3L>x^4*y^3L>x^2L",
            "x^7*y^11L>x^8*y^2L>x^9*y^2L>x^7*y^11L",
            "x*y^10R>x*y^9R>x^4*y^8R>x*y^10R",
            "x^8*y^5R>x^8*y^4R>x^11*y^3R>x^8*y^5R",
            "x^6*y^7L>x^5*y^3R>x^8*y^2L>x^7*y^11L>x^6*y^7R>x^6*y^7L",
            "x^3*y^3L>x^4*y^3L>x^5*y^3R>x^8*y^2L>x^7*y^11L>x^3*y^3L",
            "x^7*y^11L>x^6*y^7R>x^8*y^6L>x^7*y^3R>x^9*y^2L>x^7*y^11L",
            "x^2*y^2L>x*y^10R>x*y^9R>x^8*y^5R>x^11*y^3R>x^2*y^2L",
            "x^7*y^4L>x^7*y^3R>x^8*y^6L>x^8*y^5R>x^8*y^4R>x^7*y^4L",
            "x^2*y^2L>x^11*y^3R>x^8*y^4R>x^7*y^4L>x^3*y^2R>x^2*y^2L",
            "x^3*y^3L>x^3*y^2R>x^7*y^4L>x^7*y^3R>x^9*y^2L>x^7*y^11L>x^3*y^3L",
        },
        {
            "x^11*y^2L>x*y^5L>y^5L>x^11*y^2L",
            "x^4*y^2L>x^5*y^5L>x^6*y^5L>x^4*y^2L",
            "x^11*y^8R>x^2*y^6R>x^11*y^9R>x^11*y^8R",
            "x^11*y^8R>x^2*y^6R>x^11*y^7R>x^11*y^8R",
            "x^2*y^10R>x^2*y^9R>x^5*y^8R>x^2*y^10R",
            "x^5*y^5L>x^2*y^6R>x^11*y^9R>x^11*y^10R>x^5*y^5L",
            "x^5*y^5L>x^6*y^5L>x^8*y^8L>x^10*y^11L>x^11*y^10R>x^5*y^5L",
            "x^11*y^2L>x*y^5L>x^11*y^6R>x^8*y^7R>x^8*y^8L>x^10*y^11L>x^11*y^2L",
            "y^5L>x*y^8L>x^11*y^9R>x^11*y^10R>x^10*y^11L>x^11*y^2L>y^5L",
        },
        {"x^7*y^4L", "x^7*y^3R", "x^8*y^6L", "x^6*y^7R", "x^7*y^11L", "x^3*y^3L",
         "x^2L", "x^4*y^3L", "x^5*y^3R", "x^6*y^7L", "x^4*y^8R", "x*y^9R",
         "x*y^10R", "x^2*y^2L", "x^11*y^3R", "x^8*y^5R", "x^8*y^4R"},
        {"x^8*y^8L", "x^6*y^5L", "x^4*y^2L", "x^5*y^5L", "x^2*y^6R", "x^11*y^9R",
         "x^11*y^10R", "x^2*y^9R", "x^5*y^8R", "x^2*y^10R", "x^2*y^11L", "x*y^8L",
         "y^5L", "x^11*y^2L", "x*y^5L", "x^11*y^6R", "x^8*y^7R"},
        "x^3*y^2R>x^7*y^4L>x^8*y^8L>x^3*y^2R",
    };
    return d;
}

inline uint64_t lpu_data_checksum(const LpuGraphData& d) {
    uint64_t h = 1469598103934665603ull;
    auto eat = [&](const char* s) {
        for (const char* p = s; *p; ++p) h = (h ^ uint64_t(uint8_t(*p))) * 1099511628211ull;
        h = (h ^ 0x7cu) * 1099511628211ull;
    };
    eat(d.identified_l);
    eat(d.identified_r);
    for (auto* s : d.gl_expander_edges) eat(s);
    for (auto* s : d.gr_expander_edges) eat(s);
    for (auto* s : d.ul_cycles) eat(s);
    for (auto* s : d.ur_cycles) eat(s);
    for (auto* s : d.gl_bridge_path) eat(s);
    for (auto* s : d.gr_bridge_path) eat(s);
    eat(d.special_bridge_cycle);
    return h;
}

// Pinned after transcription; a silent edit of the tables fails loudly.
inline constexpr uint64_t kGrossLpuChecksum = 0x2a65c2686157fdbbull;
inline constexpr uint64_t kTwoGrossLpuChecksum = 0xfea97d0f2e093544ull;

// ---------------------------------------------------------------------------

enum class LpuSide { Left, Right };
enum class EdgeClass { El, Er, Bridge };
enum class CycleClass { Ul, Ur, UB };

struct AuxVertex {
    QubitBlock block;  // the L/R tag of the labeling code qubit
    Monomial cell;
    LpuSide side = LpuSide::Left;  // for the identified vertex: both; flag below
    bool is_bell = false;
    // code attachments: (qubit index, X-role basis op, Z-role basis op)
    // roles index {X1, Z1, X7, Z7} as 0..3; -1 when absent
    struct Attachment {
        int qubit = -1;
        int x_role = -1;
        int z_role = -1;
    };
    std::vector<Attachment> attachments;
    std::vector<int> edges;  // incident edge ids
    std::string label;
};

struct AuxEdge {
    int v0 = -1, v1 = -1;
    EdgeClass cls = EdgeClass::El;
    bool expander = false;
    // code checks the edge qubit hooks into (absent for bridge/expander edges)
    int z_check_cell = -1;  // Z check shared by the two X-role qubits
    int x_check_cell = -1;  // dual X check shared by the two Z-role qubits
    std::vector<int> cycles;
};

struct AuxCycle {
    CycleClass cls = CycleClass::Ul;
    std::vector<int> edges;
};

struct DegreeCensus {
    std::map<int, int> v_l, e_l, u_l, bridge, u_b, u_r, e_r, v_r;
    std::pair<int, int> bell_sides{0, 0};
};

// The LPU attached to one BB code: the auxiliary graph, its cycle basis, the
// attachments into the code, and the derived budget u.
class LpuSpec {
  public:
    LpuSpec(const BBCode& code, const LogicalBasis& basis)
        : code_(&code), basis_(&basis) {
        const LpuGraphData& data =
            code.name() == "gross" ? gross_lpu_data() : two_gross_lpu_data();
        uint64_t want = code.name() == "gross" ? kGrossLpuChecksum : kTwoGrossLpuChecksum;
        if (lpu_data_checksum(data) != want)
            throw std::logic_error("LPU table checksum mismatch for " + code.name());
        build(data);
    }

    const BBCode& code() const { return *code_; }
    const LogicalBasis& basis() const { return *basis_; }
    const std::vector<AuxVertex>& vertices() const { return vertices_; }
    const std::vector<AuxEdge>& edges() const { return edges_; }
    const std::vector<AuxCycle>& cycles() const { return cycles_; }
    int bell_vertex() const { return bell_vertex_; }

    // qubit budget u: one qubit per edge, one per vertex (two for the Bell
    // check), one per cycle check
    int qubit_budget() const {
        return int(edges_.size()) + int(vertices_.size()) + 1 + int(cycles_.size());
    }

    int vertex_graph_degree(int v, std::optional<LpuSide> side_filter = {}) const {
        int d = 0;
        for (int e : vertices_[v].edges) {
            if (side_filter) {
                EdgeClass c = edges_[e].cls;
                bool left = c == EdgeClass::El;
                bool right = c == EdgeClass::Er;
                if (*side_filter == LpuSide::Left && !(left || c == EdgeClass::Bridge)) continue;
                if (*side_filter == LpuSide::Right && !(right || c == EdgeClass::Bridge)) continue;
            }
            ++d;
        }
        return d;
    }

    DegreeCensus census() const {
        DegreeCensus c;
        for (size_t v = 0; v < vertices_.size(); ++v) {
            if (int(v) == bell_vertex_) continue;
            int deg = int(vertices_[v].edges.size()) + int(vertices_[v].attachments.size());
            (vertices_[v].side == LpuSide::Left ? c.v_l : c.v_r)[deg]++;
        }
        for (const auto& e : edges_) {
            int deg = 2 + int(e.cycles.size()) + (e.z_check_cell >= 0 ? 1 : 0) +
                      (e.x_check_cell >= 0 ? 1 : 0);
            switch (e.cls) {
                case EdgeClass::El: c.e_l[deg]++; break;
                case EdgeClass::Er: c.e_r[deg]++; break;
                case EdgeClass::Bridge: c.bridge[deg]++; break;
            }
        }
        for (const auto& cy : cycles_) {
            int deg = int(cy.edges.size());
            switch (cy.cls) {
                case CycleClass::Ul: c.u_l[deg]++; break;
                case CycleClass::Ur: c.u_r[deg]++; break;
                case CycleClass::UB: c.u_b[deg]++; break;
            }
        }
        // Bell check: one check qubit per side, each sees its side's edges,
        // one code attachment, and the entangling link.
        const AuxVertex& b = vertices_[bell_vertex_];
        int left_edges = 0, right_edges = 0;
        for (int e : b.edges) (edges_[e].cls == EdgeClass::El ? left_edges : right_edges)++;
        c.bell_sides = {left_edges + 1 + 1, right_edges + 1 + 1};
        return c;
    }

    int find_vertex(QubitBlock blk, const Monomial& cell) const {
        for (size_t v = 0; v < vertices_.size(); ++v) {
            const AuxVertex& av = vertices_[v];
            if (av.block == blk && av.cell == cell) return int(v);
            if (av.is_bell) {
                // the identified vertex answers to both labels
                for (const auto& at : av.attachments) {
                    auto [b2, c2] = code_->qubit_label(at.qubit);
                    if (b2 == blk && c2 == cell) return int(v);
                }
            }
        }
        return -1;
    }

  private:
    struct Label {
        QubitBlock block;
        Monomial cell;
    };

    Label parse_label(const std::string& text) const {
        if (text.empty()) throw std::invalid_argument("empty LPU label");
        char tag = text.back();
        if (tag != 'L' && tag != 'R') throw std::invalid_argument("LPU label missing L/R: " + text);
        BivariatePoly p = parse_poly(text.substr(0, text.size() - 1), code_->params());
        if (p.weight() != 1) throw std::invalid_argument("LPU label is not a monomial: " + text);
        return {tag == 'L' ? QubitBlock::L : QubitBlock::R, p.terms()[0]};
    }

    int vertex_id(const Label& lb) const {
        auto it = vertex_index_.find({int(lb.block), lb.cell.i, lb.cell.j});
        if (it == vertex_index_.end())
            throw std::logic_error("unknown LPU vertex " + to_string(lb.cell));
        return it->second;
    }

    int edge_between(int a, int b) const {
        for (int e : vertices_[a].edges)
            if (edges_[e].v0 == b || edges_[e].v1 == b) return e;
        return -1;
    }

    void add_vertex(QubitBlock blk, const Monomial& cell, LpuSide side, int x_role, int z_role) {
        AuxVertex v;
        v.block = blk;
        v.cell = cell;
        v.side = side;
        v.label = to_string(cell) + (blk == QubitBlock::L ? "L" : "R");
        const TorusParams& tp = code_->params();
        int q = code_->qubit_index(blk, cell);
        Monomial dual_cell = mul(Monomial{1, 1}, transpose(cell, tp), tp);
        QubitBlock dual_blk = blk == QubitBlock::L ? QubitBlock::R : QubitBlock::L;
        int qd = code_->qubit_index(dual_blk, dual_cell);
        v.attachments.push_back({q, x_role, -1});
        v.attachments.push_back({qd, -1, z_role});
        vertex_index_[{int(blk), cell.i, cell.j}] = int(vertices_.size());
        vertices_.push_back(std::move(v));
    }

    void derive_side_edges(LpuSide side, const std::vector<int>& side_vertices) {
        // one edge per Z check shared by two support qubits
        int want_role = side == LpuSide::Left ? 0 : 2;  // X1 or X7
        std::map<int, std::vector<int>> by_check;  // z check cell -> vertex ids
        for (int v : side_vertices) {
            const AuxVertex& av = vertices_[v];
            int q = -1;
            for (const auto& at : av.attachments)
                if (at.x_role == want_role) q = at.qubit;
            if (q < 0) throw std::logic_error("vertex lacks the side's X-role attachment");
            for (int cell = 0; cell < code_->num_cells(); ++cell) {
                if (code_->z_checks().rows[cell].z.get(q)) by_check[cell].push_back(v);
            }
        }
        for (auto& [cell, vs] : by_check) {
            if (vs.size() == 1) continue;
            if (vs.size() != 2)
                throw std::logic_error("Z check overlaps logical support on >2 qubits");
            AuxEdge e;
            e.v0 = vs[0];
            e.v1 = vs[1];
            e.cls = side == LpuSide::Left ? EdgeClass::El : EdgeClass::Er;
            e.z_check_cell = cell;
            const TorusParams& tp = code_->params();
            Monomial xc = mul(Monomial{1, 1}, transpose(code_->cell_of_index(cell), tp), tp);
            e.x_check_cell = code_->cell_index(xc);
            push_edge(std::move(e));
        }
    }

    void push_edge(AuxEdge e) {
        int id = int(edges_.size());
        vertices_[e.v0].edges.push_back(id);
        vertices_[e.v1].edges.push_back(id);
        edges_.push_back(std::move(e));
    }

    std::vector<int> parse_walk(const std::string& text) const {
        std::vector<int> verts;
        size_t pos = 0;
        while (pos <= text.size()) {
            size_t nxt = text.find('>', pos);
            std::string tok = text.substr(pos, nxt == std::string::npos ? nxt : nxt - pos);
            verts.push_back(vertex_id(parse_label_checked(tok)));
            if (nxt == std::string::npos) break;
            pos = nxt + 1;
        }
        return verts;
    }

    Label parse_label_checked(const std::string& tok) const { return parse_label(tok); }

    void add_cycle_from_walk(const std::string& walk, CycleClass cls) {
        std::vector<int> vs = parse_walk(walk);
        if (vs.size() < 3 || vs.front() != vs.back())
            throw std::logic_error("LPU cycle walk is not closed: " + walk);
        AuxCycle cy;
        cy.cls = cls;
        for (size_t i = 0; i + 1 < vs.size(); ++i) {
            int e = edge_between(vs[i], vs[i + 1]);
            if (e < 0) throw std::logic_error("LPU cycle walk uses a non-edge: " + walk);
            cy.edges.push_back(e);
        }
        int id = int(cycles_.size());
        for (int e : cy.edges) edges_[e].cycles.push_back(id);
        cycles_.push_back(std::move(cy));
    }

    void build(const LpuGraphData& data) {
        const TorusParams& tp = code_->params();
        Label idl = parse_label(data.identified_l);
        Label idr = parse_label(data.identified_r);
        {
            // consistency: the two identified labels are each other's duals
            Monomial dual = mul(Monomial{1, 1}, transpose(idl.cell, tp), tp);
            QubitBlock dual_blk = idl.block == QubitBlock::L ? QubitBlock::R : QubitBlock::L;
            if (!(dual == idr.cell && dual_blk == idr.block))
                throw std::logic_error("identified vertices are not dual labels");
        }

        // roles: 0 = X1, 1 = Z1, 2 = X7, 3 = Z7
        std::vector<int> left_ids, right_ids;
        auto add_side = [&](const BivariatePoly& pl, const BivariatePoly& pr, LpuSide side) {
            int x_role = side == LpuSide::Left ? 0 : 2;
            int z_role = side == LpuSide::Left ? 3 : 1;
            std::vector<int>& ids = side == LpuSide::Left ? left_ids : right_ids;
            for (const auto& t : pl.terms()) {
                if (side == LpuSide::Right && t == idr.cell && idr.block == QubitBlock::L) continue;
                if (side == LpuSide::Left && t == idl.cell && idl.block == QubitBlock::L) continue;
                add_vertex(QubitBlock::L, t, side, x_role, z_role);
                ids.push_back(int(vertices_.size()) - 1);
            }
            for (const auto& t : pr.terms()) {
                if (side == LpuSide::Right && t == idr.cell && idr.block == QubitBlock::R) continue;
                if (side == LpuSide::Left && t == idl.cell && idl.block == QubitBlock::R) continue;
                add_vertex(QubitBlock::R, t, side, x_role, z_role);
                ids.push_back(int(vertices_.size()) - 1);
            }
        };
        add_side(basis_->p, basis_->q, LpuSide::Left);
        add_side(basis_->r, basis_->s, LpuSide::Right);

        // identified vertex: one vertex, both labels, Bell realization
        {
            AuxVertex v;
            v.block = idl.block;
            v.cell = idl.cell;
            v.side = LpuSide::Left;
            v.is_bell = true;
            v.label = std::string(data.identified_l) + "=" + data.identified_r;
            int ql = code_->qubit_index(idl.block, idl.cell);
            int qr = code_->qubit_index(idr.block, idr.cell);
            v.attachments.push_back({ql, 0, 1});  // X1 and Z1 meet here
            v.attachments.push_back({qr, 2, 3});  // X7 and Z7 meet here
            bell_vertex_ = int(vertices_.size());
            vertex_index_[{int(idl.block), idl.cell.i, idl.cell.j}] = bell_vertex_;
            vertex_index_[{int(idr.block), idr.cell.i, idr.cell.j}] = bell_vertex_;
            vertices_.push_back(std::move(v));
        }
        std::vector<int> left_all = left_ids, right_all = right_ids;
        left_all.push_back(bell_vertex_);
        right_all.push_back(bell_vertex_);

        derive_side_edges(LpuSide::Left, left_all);
        size_t el_count = edges_.size();
        derive_side_edges(LpuSide::Right, right_all);
        size_t er_count = edges_.size() - el_count;
        (void)er_count;

        auto add_expander = [&](const char* pair, LpuSide side) {
            std::string s(pair);
            size_t bar = s.find('|');
            if (bar == std::string::npos) throw std::logic_error("bad expander pair");
            AuxEdge e;
            e.v0 = vertex_id(parse_label(s.substr(0, bar)));
            e.v1 = vertex_id(parse_label(s.substr(bar + 1)));
            e.cls = side == LpuSide::Left ? EdgeClass::El : EdgeClass::Er;
            e.expander = true;
            push_edge(std::move(e));
        };
        for (auto* s : data.gl_expander_edges) add_expander(s, LpuSide::Left);
        for (auto* s : data.gr_expander_edges) add_expander(s, LpuSide::Right);

        for (auto* s : data.ul_cycles) add_cycle_from_walk(s, CycleClass::Ul);
        for (auto* s : data.ur_cycles) add_cycle_from_walk(s, CycleClass::Ur);

        // bridge edges
        if (data.gl_bridge_path.size() != data.gr_bridge_path.size())
            throw std::logic_error("bridge paths differ in length");
        std::vector<int> lpath, rpath;
        for (auto* s : data.gl_bridge_path) lpath.push_back(vertex_id(parse_label(s)));
        for (auto* s : data.gr_bridge_path) rpath.push_back(vertex_id(parse_label(s)));
        // the paths must be paths in their side graphs avoiding the identified vertex
        for (size_t i = 0; i + 1 < lpath.size(); ++i)
            if (edge_between(lpath[i], lpath[i + 1]) < 0)
                throw std::logic_error("left bridge path not a path");
        for (size_t i = 0; i + 1 < rpath.size(); ++i)
            if (edge_between(rpath[i], rpath[i + 1]) < 0)
                throw std::logic_error("right bridge path not a path");
        std::vector<int> bridge_ids;
        for (size_t i = 0; i < lpath.size(); ++i) {
            AuxEdge e;
            e.v0 = lpath[i];
            e.v1 = rpath[i];
            e.cls = EdgeClass::Bridge;
            bridge_ids.push_back(int(edges_.size()));
            push_edge(std::move(e));
        }
        // square cycles between consecutive bridge rungs
        for (size_t i = 0; i + 1 < lpath.size(); ++i) {
            AuxCycle cy;
            cy.cls = CycleClass::UB;
            cy.edges = {edge_between(lpath[i], lpath[i + 1]), bridge_ids[i + 1],
                        edge_between(rpath[i + 1], rpath[i]), bridge_ids[i]};
            int id = int(cycles_.size());
            for (int e : cy.edges) edges_[e].cycles.push_back(id);
            cycles_.push_back(std::move(cy));
        }
        add_cycle_from_walk(data.special_bridge_cycle, CycleClass::UB);
    }

    const BBCode* code_;
    const LogicalBasis* basis_;
    std::vector<AuxVertex> vertices_;
    std::vector<AuxEdge> edges_;
    std::vector<AuxCycle> cycles_;
    std::map<std::tuple<int, int, int>, int> vertex_index_;
    int bell_vertex_ = -1;
};

}  // namespace bicycle
