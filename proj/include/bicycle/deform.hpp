#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bicycle/lpu.hpp"

namespace bicycle {

// Target of a logical measurement: a nonzero mask over {X1, Z1, X7, Z7}.
struct MeasureTarget {
    bool x1 = false, z1 = false, x7 = false, z7 = false;

    static MeasureTarget from_mask(int mask) {
        return {bool(mask & 1), bool(mask & 2), bool(mask & 4), bool(mask & 8)};
    }
    int mask() const { return int(x1) | (int(z1) << 1) | (int(x7) << 2) | (int(z7) << 3); }
    bool nontrivial() const { return mask() != 0; }
    bool in_left_group() const { return !z1 && !x7; }    // <X1, Z7>
    bool in_right_group() const { return !x1 && !z7; }   // <X7, Z1>
    bool role_active(int role) const {                   // role: 0=X1,1=Z1,2=X7,3=Z7
        switch (role) {
            case 0: return x1;
            case 1: return z1;
            case 2: return x7;
            case 3: return z7;
        }
        return false;
    }
    std::string name() const {
        std::string s;
        if (x1 && z1) s += "Y1";
        else if (x1) s += "X1";
        else if (z1) s += "Z1";
        if (x7 && z7) s += "Y7";
        else if (x7) s += "X7";
        else if (z7) s += "Z7";
        return s.empty() ? "I" : s;
    }
};

inline const std::array<MeasureTarget, 9>& representative_targets() {
    // X1, Z1, Y1, X1X7, X1Z7, Z1X7, X1Y7, Y1X7, Y1Y7 (the published table's nine)
    static const std::array<MeasureTarget, 9> t = {
        MeasureTarget::from_mask(1),  MeasureTarget::from_mask(2),
        MeasureTarget::from_mask(3),  MeasureTarget::from_mask(5),
        MeasureTarget::from_mask(9),  MeasureTarget::from_mask(6),
        MeasureTarget::from_mask(13), MeasureTarget::from_mask(7),
        MeasureTarget::from_mask(15)};
    return t;
}

// Pauli the target measures, on the code qubits.
inline PauliOperator target_pauli(const LogicalBasis& basis, const MeasureTarget& t) {
    PauliOperator p(basis.xs[0].pauli.num_qubits());
    if (t.x1) p.mul_inplace(basis.xs[0].pauli);
    if (t.x7) p.mul_inplace(basis.xs[6].pauli);
    if (t.z1) p.mul_inplace(basis.zs[0].pauli);
    if (t.z7) p.mul_inplace(basis.zs[6].pauli);
    return p;
}

enum class CheckKind { CodeX, CodeZ, Vertex, Cycle, BellIdent, JointCycle };

// A stabilizer code obtained by switching on part of one or two LPUs.
// Qubits: code blocks first (in module order), then the active edge qubits.
class DeformedCode {
  public:
    struct Check {
        PauliOperator pauli;
        CheckKind kind;
        int module = 0;
        int ref = -1;  // cell index / vertex id / cycle id, per kind
        // realization: one or two physical check qubits, each with its share
        // of the data support; two children are Bell-linked
        std::vector<std::vector<int>> children;
    };

    std::vector<const LpuSpec*> lpus;
    std::vector<int> code_offsets;
    int n_code_total = 0;
    int total_qubits = 0;
    std::vector<std::pair<int, int>> edge_qubits;  // (module, edge id)
    std::map<std::pair<int, int>, int> edge_qubit_of;
    std::vector<Check> checks;
    PauliOperator target;                              // over all qubits
    std::vector<std::pair<int, int>> active_vertices;  // (module, vertex id), incl. Bell idents as (-1, i)
    std::vector<MeasureTarget> module_targets;
    std::string label;

    int edge_qubit(int module, int edge) const { return edge_qubit_of.at({module, edge}); }

    // --- validation -------------------------------------------------------
    bool is_abelian() const {
        for (size_t i = 0; i < checks.size(); ++i)
            for (size_t j = i + 1; j < checks.size(); ++j)
                if (!symplectic_commutes(checks[i].pauli, checks[j].pauli)) return false;
        return true;
    }

    // product over all vertex-class checks equals the measured operator
    bool vertex_product_is_target() const {
        PauliOperator prod(total_qubits);
        for (const auto& c : checks)
            if (c.kind == CheckKind::Vertex || c.kind == CheckKind::BellIdent)
                prod.mul_inplace(c.pauli);
        return prod == target;
    }

    // Raw stabilizer count: the measured operator is itself a product of
    // vertex checks, so one logical class is already fixed.
    int logical_qubit_count_raw() const {
        F2Mat m(0, 2 * total_qubits);
        for (const auto& c : checks) m.add_row(symplectic_row(c.pauli));
        return total_qubits - int(m.rank());
    }

    // Count before measurement accounting: the deformation itself preserves
    // every logical qubit; the target class is then gauge-fixed by the
    // measurement. Verifies the target really is in the stabilizer span.
    int logical_qubit_count_before_measurement() const {
        F2Mat m(0, 2 * total_qubits);
        for (const auto& c : checks) m.add_row(symplectic_row(c.pauli));
        bool fixed = m.express_in_rowspace(symplectic_row(target)).has_value();
        return total_qubits - int(m.rank()) + (fixed ? 1 : 0);
    }

    BitVec symplectic_row(const PauliOperator& p) const {
        BitVec v(2 * total_qubits);
        for (size_t q : p.x.ones()) v.set(q, true);
        for (size_t q : p.z.ones()) v.set(total_qubits + q, true);
        return v;
    }

    // maximum connectivity degree over data qubits and physical check qubits
    int max_degree() const {
        std::vector<int> data_deg(total_qubits, 0);
        int worst = 0;
        for (const auto& c : checks) {
            bool bell = c.children.size() == 2;
            for (const auto& child : c.children) {
                int d = int(child.size()) + (bell ? 1 : 0);
                worst = std::max(worst, d);
                for (int q : child) data_deg[q]++;
            }
        }
        for (int q = 0; q < total_qubits; ++q) worst = std::max(worst, data_deg[q]);
        return worst;
    }

    std::string export_sparse_text() const {
        std::ostringstream os;
        static const char* names = "IXZY";
        for (const auto& c : checks) {
            bool pure_x = !c.pauli.z.any(), pure_z = !c.pauli.x.any();
            if (pure_x) {
                os << "X";
                for (size_t q : c.pauli.x.ones()) os << " " << q;
            } else if (pure_z) {
                os << "Z";
                for (size_t q : c.pauli.z.ones()) os << " " << q;
            } else {
                os << "M";
                for (int q = 0; q < total_qubits; ++q)
                    if (c.pauli.pauli_at(q)) os << " " << q << ":" << names[c.pauli.pauli_at(q)];
            }
            os << "\n";
        }
        return os.str();
    }
};

namespace detail {

struct ActiveSets {
    std::vector<int> vertices, edges, cycles;
};

inline ActiveSets active_sets(const LpuSpec& lpu, const MeasureTarget& t) {
    ActiveSets s;
    bool left = t.in_left_group(), right = t.in_right_group(), full = !left && !right;
    auto side_ok = [&](LpuSide sd) {
        if (full) return true;
        return left ? sd == LpuSide::Left : sd == LpuSide::Right;
    };
    for (size_t v = 0; v < lpu.vertices().size(); ++v)
        if (int(v) == lpu.bell_vertex() || side_ok(lpu.vertices()[v].side)) s.vertices.push_back(int(v));
    for (size_t e = 0; e < lpu.edges().size(); ++e) {
        EdgeClass c = lpu.edges()[e].cls;
        if (c == EdgeClass::Bridge ? full
                                   : side_ok(c == EdgeClass::El ? LpuSide::Left : LpuSide::Right))
            s.edges.push_back(int(e));
    }
    for (size_t cy = 0; cy < lpu.cycles().size(); ++cy) {
        CycleClass c = lpu.cycles()[cy].cls;
        if (c == CycleClass::UB ? full
                                : side_ok(c == CycleClass::Ul ? LpuSide::Left : LpuSide::Right))
            s.cycles.push_back(int(cy));
    }
    return s;
}

}  // namespace detail

// Builds the deformed code measuring one of the 15 in-module targets.
inline DeformedCode deform(const LpuSpec& lpu, const MeasureTarget& t) {
    if (!t.nontrivial()) throw std::invalid_argument("trivial measurement target");
    const BBCode& code = lpu.code();
    DeformedCode dc;
    dc.lpus = {&lpu};
    dc.code_offsets = {0};
    dc.n_code_total = code.num_qubits();
    dc.module_targets = {t};
    dc.label = code.name() + ":" + t.name();

    detail::ActiveSets act = detail::active_sets(lpu, t);
    for (int e : act.edges) {
        dc.edge_qubit_of[{0, e}] = dc.n_code_total + int(dc.edge_qubits.size());
        dc.edge_qubits.push_back({0, e});
    }
    dc.total_qubits = dc.n_code_total + int(dc.edge_qubits.size());

    std::set<int> active_edge_set(act.edges.begin(), act.edges.end());

    // code checks, deformed where the target's support demands it
    std::vector<std::optional<int>> z_fix(code.num_cells()), x_fix(code.num_cells());
    for (int e : act.edges) {
        const AuxEdge& ae = lpu.edges()[e];
        if (ae.z_check_cell < 0) continue;
        int x_role = ae.cls == EdgeClass::El ? 0 : 2;
        int z_role = ae.cls == EdgeClass::El ? 3 : 1;
        if (t.role_active(x_role)) z_fix[ae.z_check_cell] = e;
        if (t.role_active(z_role)) x_fix[ae.x_check_cell] = e;
    }
    auto widen = [&](const PauliOperator& p) {
        PauliOperator w(dc.total_qubits);
        for (size_t q : p.x.ones()) w.x.set(q, true);
        for (size_t q : p.z.ones()) w.z.set(q, true);
        return w;
    };
    for (int cell = 0; cell < code.num_cells(); ++cell) {
        DeformedCode::Check cx;
        cx.kind = CheckKind::CodeX;
        cx.ref = cell;
        cx.pauli = widen(code.x_checks().rows[cell]);
        if (x_fix[cell]) cx.pauli.z.set(dc.edge_qubit(0, *x_fix[cell]), true);
        cx.children.push_back({});
        for (int q = 0; q < dc.total_qubits; ++q)
            if (cx.pauli.pauli_at(q)) cx.children[0].push_back(q);
        dc.checks.push_back(std::move(cx));

        DeformedCode::Check cz;
        cz.kind = CheckKind::CodeZ;
        cz.ref = cell;
        cz.pauli = widen(code.z_checks().rows[cell]);
        if (z_fix[cell]) cz.pauli.z.set(dc.edge_qubit(0, *z_fix[cell]), true);
        cz.children.push_back({});
        for (int q = 0; q < dc.total_qubits; ++q)
            if (cz.pauli.pauli_at(q)) cz.children[0].push_back(q);
        dc.checks.push_back(std::move(cz));
    }

    // vertex checks: X on active incident edges, target Pauli on attachments
    for (int v : act.vertices) {
        const AuxVertex& av = lpu.vertices()[v];
        DeformedCode::Check ck;
        ck.kind = CheckKind::Vertex;
        ck.ref = v;
        ck.pauli = PauliOperator(dc.total_qubits);
        for (int e : av.edges)
            if (active_edge_set.count(e)) ck.pauli.x.set(dc.edge_qubit(0, e), true);
        for (const auto& at : av.attachments) {
            bool xbit = at.x_role >= 0 && t.role_active(at.x_role);
            bool zbit = at.z_role >= 0 && t.role_active(at.z_role);
            if (xbit) ck.pauli.x.set(at.qubit, true);
            if (zbit) ck.pauli.z.set(at.qubit, true);
        }
        // realization: the Bell vertex splits by side when both sides active
        if (av.is_bell) {
            std::vector<int> left_child, right_child;
            for (int e : av.edges) {
                if (!active_edge_set.count(e)) continue;
                (lpu.edges()[e].cls == EdgeClass::El ? left_child : right_child)
                    .push_back(dc.edge_qubit(0, e));
            }
            auto add_attach = [&](const AuxVertex::Attachment& at, std::vector<int>& child) {
                bool xb = at.x_role >= 0 && t.role_active(at.x_role);
                bool zb = at.z_role >= 0 && t.role_active(at.z_role);
                if (xb || zb) child.push_back(at.qubit);
            };
            add_attach(av.attachments[0], left_child);   // the side-l labeled qubit
            add_attach(av.attachments[1], right_child);  // the side-r labeled qubit
            if (!left_child.empty() && !right_child.empty()) {
                ck.children.push_back(left_child);
                ck.children.push_back(right_child);
            } else {
                std::vector<int> all = left_child;
                all.insert(all.end(), right_child.begin(), right_child.end());
                ck.children.push_back(all);
            }
        } else {
            ck.children.push_back({});
            for (int q = 0; q < dc.total_qubits; ++q)
                if (ck.pauli.pauli_at(q)) ck.children[0].push_back(q);
        }
        dc.active_vertices.push_back({0, v});
        dc.checks.push_back(std::move(ck));
    }

    // cycle checks: Z on their edges
    for (int cyid : act.cycles) {
        DeformedCode::Check ck;
        ck.kind = CheckKind::Cycle;
        ck.ref = cyid;
        ck.pauli = PauliOperator(dc.total_qubits);
        ck.children.push_back({});
        for (int e : lpu.cycles()[cyid].edges) {
            ck.pauli.z.set(dc.edge_qubit(0, e), true);
            ck.children[0].push_back(dc.edge_qubit(0, e));
        }
        dc.checks.push_back(std::move(ck));
    }

    dc.target = widen(target_pauli(lpu.basis(), t));
    return dc;
}

// Extra check qubits joining two modules (code-code) or a module and factory.
struct Adapter {
    enum Kind { CodeCode, CodeFactory } kind = CodeCode;
    int check_qubits = 0;  // a or a'
    int couplers = 0;
    std::vector<std::pair<std::string, std::string>> coupler_manifest;
};

// Joins two LPUs through their bridges with 1-1 Bell checks and measures
// targetA (x) targetB across the modules. Each target must lie in
// <X1,Z7> or <X7,Z1>; 36 legal combinations.
inline std::pair<DeformedCode, Adapter> merge_code_code(const LpuSpec& lpu_a,
                                                        const LpuSpec& lpu_b,
                                                        const MeasureTarget& ta,
                                                        const MeasureTarget& tb) {
    for (const MeasureTarget* t : {&ta, &tb})
        if (!t->nontrivial() || !(t->in_left_group() || t->in_right_group()))
            throw std::invalid_argument("inter-module target must lie in <X1,Z7> or <X7,Z1>");
    const BBCode& ca = lpu_a.code();
    const BBCode& cb = lpu_b.code();
    DeformedCode dc;
    dc.lpus = {&lpu_a, &lpu_b};
    dc.code_offsets = {0, ca.num_qubits()};
    dc.n_code_total = ca.num_qubits() + cb.num_qubits();
    dc.module_targets = {ta, tb};
    dc.label = ca.name() + ":" + ta.name() + " (x) " + cb.name() + ":" + tb.name();

    // active structure per module: its half plus all of its bridge qubits
    std::array<detail::ActiveSets, 2> act;
    std::array<const LpuSpec*, 2> lp = {&lpu_a, &lpu_b};
    for (int m = 0; m < 2; ++m) {
        act[m] = detail::active_sets(*lp[m], dc.module_targets[m]);
        for (size_t e = 0; e < lp[m]->edges().size(); ++e)
            if (lp[m]->edges()[e].cls == EdgeClass::Bridge) act[m].edges.push_back(int(e));
        for (int e : act[m].edges) {
            dc.edge_qubit_of[{m, e}] = dc.n_code_total + int(dc.edge_qubits.size());
            dc.edge_qubits.push_back({m, e});
        }
    }
    dc.total_qubits = dc.n_code_total + int(dc.edge_qubits.size());

    auto widen_at = [&](const PauliOperator& p, int off) {
        PauliOperator w(dc.total_qubits);
        for (size_t q : p.x.ones()) w.x.set(off + q, true);
        for (size_t q : p.z.ones()) w.z.set(off + q, true);
        return w;
    };

    for (int m = 0; m < 2; ++m) {
        const LpuSpec& lpu = *lp[m];
        const BBCode& code = lpu.code();
        const MeasureTarget& t = dc.module_targets[m];
        int off = dc.code_offsets[m];
        std::set<int> active_edge_set(act[m].edges.begin(), act[m].edges.end());

        std::vector<std::optional<int>> z_fix(code.num_cells()), x_fix(code.num_cells());
        for (int e : act[m].edges) {
            const AuxEdge& ae = lpu.edges()[e];
            if (ae.z_check_cell < 0) continue;
            int x_role = ae.cls == EdgeClass::El ? 0 : 2;
            int z_role = ae.cls == EdgeClass::El ? 3 : 1;
            if (t.role_active(x_role)) z_fix[ae.z_check_cell] = e;
            if (t.role_active(z_role)) x_fix[ae.x_check_cell] = e;
        }
        for (int cell = 0; cell < code.num_cells(); ++cell) {
            DeformedCode::Check cx;
            cx.kind = CheckKind::CodeX;
            cx.module = m;
            cx.ref = cell;
            cx.pauli = widen_at(code.x_checks().rows[cell], off);
            if (x_fix[cell]) cx.pauli.z.set(dc.edge_qubit(m, *x_fix[cell]), true);
            cx.children.push_back({});
            for (int q = 0; q < dc.total_qubits; ++q)
                if (cx.pauli.pauli_at(q)) cx.children[0].push_back(q);
            dc.checks.push_back(std::move(cx));
            DeformedCode::Check cz;
            cz.kind = CheckKind::CodeZ;
            cz.module = m;
            cz.ref = cell;
            cz.pauli = widen_at(code.z_checks().rows[cell], off);
            if (z_fix[cell]) cz.pauli.z.set(dc.edge_qubit(m, *z_fix[cell]), true);
            cz.children.push_back({});
            for (int q = 0; q < dc.total_qubits; ++q)
                if (cz.pauli.pauli_at(q)) cz.children[0].push_back(q);
            dc.checks.push_back(std::move(cz));
        }
        for (int v : act[m].vertices) {
            const AuxVertex& av = lpu.vertices()[v];
            DeformedCode::Check ck;
            ck.kind = CheckKind::Vertex;
            ck.module = m;
            ck.ref = v;
            ck.pauli = PauliOperator(dc.total_qubits);
            for (int e : av.edges)
                if (active_edge_set.count(e)) ck.pauli.x.set(dc.edge_qubit(m, e), true);
            for (const auto& at : av.attachments) {
                bool xbit = at.x_role >= 0 && t.role_active(at.x_role);
                bool zbit = at.z_role >= 0 && t.role_active(at.z_role);
                if (xbit) ck.pauli.x.set(off + at.qubit, true);
                if (zbit) ck.pauli.z.set(off + at.qubit, true);
            }
            ck.children.push_back({});
            for (int q = 0; q < dc.total_qubits; ++q)
                if (ck.pauli.pauli_at(q)) ck.children[0].push_back(q);
            dc.active_vertices.push_back({m, v});
            dc.checks.push_back(std::move(ck));
        }
        for (int cyid : act[m].cycles) {
            DeformedCode::Check ck;
            ck.kind = CheckKind::Cycle;
            ck.module = m;
            ck.ref = cyid;
            ck.pauli = PauliOperator(dc.total_qubits);
            ck.children.push_back({});
            for (int e : lp[m]->cycles()[cyid].edges) {
                ck.pauli.z.set(dc.edge_qubit(m, e), true);
                ck.children[0].push_back(dc.edge_qubit(m, e));
            }
            dc.checks.push_back(std::move(ck));
        }
    }

    // bridge identification: 1-1 Bell checks X_{bA} X_{bB}, plus the joint
    // path-square cycle checks spanning the modules (the weight-3 special
    // bridge cycles stay inactive)
    std::array<std::vector<int>, 2> bridges;
    for (int m = 0; m < 2; ++m)
        for (size_t e = 0; e < lp[m]->edges().size(); ++e)
            if (lp[m]->edges()[e].cls == EdgeClass::Bridge) bridges[m].push_back(int(e));
    if (bridges[0].size() != bridges[1].size())
        throw std::invalid_argument("cannot join LPUs with different bridge sizes");
    Adapter adapter;
    adapter.kind = Adapter::CodeCode;
    adapter.check_qubits = 2 * int(bridges[0].size());
    adapter.couplers = int(bridges[0].size()) + int(bridges[0].size()) - 1;
    for (size_t i = 0; i < bridges[0].size(); ++i) {
        DeformedCode::Check ck;
        ck.kind = CheckKind::BellIdent;
        ck.ref = int(i);
        ck.pauli = PauliOperator(dc.total_qubits);
        int qa = dc.edge_qubit(0, bridges[0][i]);
        int qb = dc.edge_qubit(1, bridges[1][i]);
        ck.pauli.x.set(qa, true);
        ck.pauli.x.set(qb, true);
        ck.children = {{qa}, {qb}};
        dc.active_vertices.push_back({-1, int(i)});
        dc.checks.push_back(std::move(ck));
        adapter.coupler_manifest.push_back(
            {"A.bridge" + std::to_string(i), "B.bridge" + std::to_string(i)});
    }
    // joint squares: bridge i, i+1 of both modules plus the active-side path
    // edge between the rungs' endpoints in each module
    auto path_edge = [&](int m, size_t i) {
        const LpuSpec& lpu = *lp[m];
        const AuxEdge& b0 = lpu.edges()[bridges[m][i]];
        const AuxEdge& b1 = lpu.edges()[bridges[m][i + 1]];
        bool left = dc.module_targets[m].in_left_group();
        // bridge rungs connect an El-side vertex and an Er-side vertex; pick
        // the endpoints on the active side and find their joining edge
        auto side_vertex = [&](const AuxEdge& e) {
            const AuxVertex& v0 = lpu.vertices()[e.v0];
            bool v0_left = v0.side == LpuSide::Left && !v0.is_bell;
            return (v0_left == left) ? e.v0 : e.v1;
        };
        int p0 = side_vertex(b0), p1 = side_vertex(b1);
        for (int e : lpu.vertices()[p0].edges) {
            const AuxEdge& ae = lpu.edges()[e];
            if (ae.cls == EdgeClass::Bridge) continue;
            if (ae.v0 == p1 || ae.v1 == p1) return e;
        }
        throw std::logic_error("bridge path edge missing on active side");
    };
    for (size_t i = 0; i + 1 < bridges[0].size(); ++i) {
        DeformedCode::Check ck;
        ck.kind = CheckKind::JointCycle;
        ck.ref = int(i);
        ck.pauli = PauliOperator(dc.total_qubits);
        ck.children = {{}, {}};
        for (int m = 0; m < 2; ++m) {
            int qs[3] = {dc.edge_qubit(m, bridges[m][i]), dc.edge_qubit(m, bridges[m][i + 1]),
                         dc.edge_qubit(m, path_edge(m, i))};
            for (int q : qs) {
                ck.pauli.z.set(q, true);
                ck.children[m].push_back(q);
            }
        }
        dc.checks.push_back(std::move(ck));
    }
    PauliOperator tpauli = widen_at(target_pauli(lpu_a.basis(), ta), 0);
    tpauli.mul_inplace(widen_at(target_pauli(lpu_b.basis(), tb), dc.code_offsets[1]));
    dc.target = tpauli;
    return {std::move(dc), std::move(adapter)};
}

// Plans the code-factory adapter: a path of d_factory vertices through the
// LPU graph (bridge edges included) that avoids saturated-degree nodes, so the
// factory's Zbar_T qubits couple to path vertices and its adjacent X checks
// couple to path edges. a' = 2 d_factory - 1 check qubits.
inline std::optional<Adapter> code_factory_adapter(const LpuSpec& lpu, int d_factory) {
    DegreeCensus census = lpu.census();
    (void)census;
    // per-vertex and per-edge degrees with attachments included
    std::vector<int> vdeg(lpu.vertices().size());
    for (size_t v = 0; v < lpu.vertices().size(); ++v) {
        if (int(v) == lpu.bell_vertex()) {
            vdeg[v] = 5;  // each Bell side: 3 edges + attachment + link
            continue;
        }
        vdeg[v] = int(lpu.vertices()[v].edges.size()) + int(lpu.vertices()[v].attachments.size());
    }
    std::vector<int> edeg(lpu.edges().size());
    for (size_t e = 0; e < lpu.edges().size(); ++e) {
        const AuxEdge& ae = lpu.edges()[e];
        edeg[e] = 2 + int(ae.cycles.size()) + (ae.z_check_cell >= 0 ? 1 : 0) +
                  (ae.x_check_cell >= 0 ? 1 : 0);
    }
    std::vector<int> path;
    std::vector<char> used(lpu.vertices().size(), 0);
    std::function<bool(int)> dfs = [&](int v) -> bool {
        path.push_back(v);
        used[v] = 1;
        if (int(path.size()) == d_factory) return true;
        for (int e : lpu.vertices()[v].edges) {
            if (edeg[e] >= 7) continue;
            const AuxEdge& ae = lpu.edges()[e];
            int w = ae.v0 == v ? ae.v1 : ae.v0;
            if (used[w] || vdeg[w] >= 7) continue;
            if (dfs(w)) return true;
        }
        path.pop_back();
        used[v] = 0;
        return false;
    };
    bool found = false;
    for (size_t start = 0; start < lpu.vertices().size() && !found; ++start) {
        if (vdeg[start] >= 7) continue;
        path.clear();
        std::fill(used.begin(), used.end(), 0);
        found = dfs(int(start));
    }
    if (!found) return std::nullopt;
    Adapter a;
    a.kind = Adapter::CodeFactory;
    a.check_qubits = 2 * d_factory - 1;
    a.couplers = 2 * d_factory - 1;
    for (int i = 0; i < d_factory; ++i)
        a.coupler_manifest.push_back(
            {"lpu.vertex:" + lpu.vertices()[path[i]].label, "factory.ZT[" + std::to_string(i) + "]"});
    for (int i = 0; i + 1 < d_factory; ++i)
        a.coupler_manifest.push_back({"lpu.edge(" + lpu.vertices()[path[i]].label + "," +
                                          lpu.vertices()[path[i + 1]].label + ")",
                                      "factory.Xcheck[" + std::to_string(i) + "]"});
    return a;
}

// ---------------------------------------------------------------------------
// Gauging-measurement classical post-processing.

struct OutcomeRuleResult {
    int logical_bit = 0;  // 0 = +1 outcome
    PauliOperator correction;
    bool cycles_consistent = true;
};

// vertex_outcomes / edge_outcomes: +-1 per active vertex check (by order in
// dc.active_vertices) and per active edge qubit (by edge-qubit index order).
inline OutcomeRuleResult measurement_outcome_rule(const DeformedCode& dc,
                                                  const std::vector<int>& vertex_outcomes,
                                                  const std::vector<int>& edge_outcomes,
                                                  int root_override = -1) {
    if (vertex_outcomes.size() != dc.active_vertices.size())
        throw std::invalid_argument("need one outcome per active vertex check");
    if (edge_outcomes.size() != dc.edge_qubits.size())
        throw std::invalid_argument("need one outcome per active edge qubit");
    OutcomeRuleResult res;
    res.correction = PauliOperator(dc.total_qubits);
    int prod = 1;
    for (int o : vertex_outcomes) prod *= o;
    res.logical_bit = prod == 1 ? 0 : 1;

    // graph over active vertices; Bell-ident checks are degree-2 pseudo-vertices
    size_t nv = dc.active_vertices.size();
    std::map<std::pair<int, int>, int> vid;  // (module, vertex) -> node
    for (size_t i = 0; i < nv; ++i) vid[dc.active_vertices[i]] = int(i);
    std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (neighbor, edge qubit idx)
    for (size_t ei = 0; ei < dc.edge_qubits.size(); ++ei) {
        auto [m, e] = dc.edge_qubits[ei];
        const AuxEdge& ae = dc.lpus[m]->edges()[e];
        auto it0 = vid.find({m, ae.v0});
        auto it1 = vid.find({m, ae.v1});
        if (it0 != vid.end() && it1 != vid.end()) {
            adj[it0->second].push_back({it1->second, int(ei)});
            adj[it1->second].push_back({it0->second, int(ei)});
        } else if (it0 != vid.end() || it1 != vid.end()) {
            // dangling bridge edge: its far end is the Bell-ident pseudo-vertex
            int near = it0 != vid.end() ? it0->second : it1->second;
            // find the ident check touching this edge qubit
            for (size_t ci = 0, identpos = 0; ci < dc.checks.size(); ++ci) {
                if (dc.checks[ci].kind != CheckKind::BellIdent) continue;
                if (dc.checks[ci].pauli.x.get(dc.n_code_total + int(ei))) {
                    auto itp = vid.find({-1, dc.checks[ci].ref});
                    if (itp != vid.end()) {
                        adj[near].push_back({itp->second, int(ei)});
                        adj[itp->second].push_back({near, int(ei)});
                    }
                }
                (void)identpos;
            }
        }
    }
    // BFS spanning tree from the lexicographically smallest vertex label
    int root = root_override;
    if (root < 0) {
        std::string best;
        for (size_t i = 0; i < nv; ++i) {
            auto [m, v] = dc.active_vertices[i];
            std::string lab = m < 0 ? ("~ident" + std::to_string(v))
                                    : (std::to_string(m) + ":" + dc.lpus[m]->vertices()[v].label);
            if (root < 0 || lab < best) {
                best = lab;
                root = int(i);
            }
        }
    }
    std::vector<int> parity(nv, -2);  // -2 unvisited; else 0/1 path parity of -1 outcomes
    std::vector<int> order{root};
    parity[root] = 0;
    for (size_t h = 0; h < order.size(); ++h) {
        int u = order[h];
        for (auto [w, ei] : adj[u]) {
            if (parity[w] != -2) continue;
            parity[w] = parity[u] ^ (edge_outcomes[ei] == -1 ? 1 : 0);
            order.push_back(w);
        }
    }
    for (size_t i = 0; i < nv; ++i) {
        if (parity[i] != 1) continue;
        // correction: the vertex check's code-qubit support (its L_q share)
        const DeformedCode::Check* chk = nullptr;
        for (const auto& c : dc.checks) {
            bool ident = dc.active_vertices[i].first < 0;
            if (ident && c.kind == CheckKind::BellIdent && c.ref == dc.active_vertices[i].second)
                chk = &c;
            if (!ident && c.kind == CheckKind::Vertex && c.module == dc.active_vertices[i].first &&
                c.ref == dc.active_vertices[i].second)
                chk = &c;
            if (chk) break;
        }
        for (int q = 0; q < dc.n_code_total; ++q) {
            if (chk->pauli.x.get(q)) res.correction.x.flip(q);
            if (chk->pauli.z.get(q)) res.correction.z.flip(q);
        }
    }
    // cycle consistency: any basis cycle with odd -1 parity flags residual error
    for (const auto& c : dc.checks) {
        if (c.kind != CheckKind::Cycle && c.kind != CheckKind::JointCycle) continue;
        int par = 1;
        for (size_t ei = 0; ei < dc.edge_qubits.size(); ++ei)
            if (c.pauli.z.get(dc.n_code_total + int(ei))) par *= edge_outcomes[ei];
        if (par != 1) res.cycles_consistent = false;
    }
    return res;
}

// Gauge-group view of the deformation: gauge = deformed checks plus single-Z
// on every edge qubit; center = deformed checks minus the vertex-class checks.
struct GaugeDecomposition {
    std::vector<PauliOperator> gauge;
    std::vector<PauliOperator> center;
    PauliOperator measured;
};

inline GaugeDecomposition subsystem_gauge_decomposition(const DeformedCode& dc) {
    GaugeDecomposition g;
    for (const auto& c : dc.checks) g.gauge.push_back(c.pauli);
    for (size_t ei = 0; ei < dc.edge_qubits.size(); ++ei) {
        PauliOperator z(dc.total_qubits);
        z.z.set(dc.n_code_total + int(ei), true);
        g.gauge.push_back(z);
    }
    for (const auto& c : dc.checks)
        if (c.kind != CheckKind::Vertex && c.kind != CheckKind::BellIdent)
            g.center.push_back(c.pauli);
    g.measured = dc.target;
    return g;
}

}  // namespace bicycle
