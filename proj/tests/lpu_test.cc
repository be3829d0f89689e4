#include "bicycle/lpu.hpp"

#include <gtest/gtest.h>

#include "bicycle/deform.hpp"

using namespace bicycle;

namespace {

struct Fixture {
    BBCode code;
    LogicalBasis basis;
    LpuSpec lpu;
    explicit Fixture(const std::string& name)
        : code(make_code_by_name(name)), basis(build_basis(code)), lpu(code, basis) {}
};

Fixture& gross_fx() {
    static Fixture f("gross");
    return f;
}
Fixture& two_gross_fx() {
    static Fixture f("two-gross");
    return f;
}

using Hist = std::map<int, int>;

}  // namespace

TEST(Lpu, GrossBudgetAndCounts) {
    auto& f = gross_fx();
    EXPECT_EQ(f.lpu.qubit_budget(), 90);
    EXPECT_EQ(f.lpu.vertices().size(), 23u);
    EXPECT_EQ(f.lpu.edges().size(), 47u);   // 18 + 18 + 11
    EXPECT_EQ(f.lpu.cycles().size(), 19u);  // 5 + 3 + 11
}

TEST(Lpu, TwoGrossBudgetAndCounts) {
    auto& f = two_gross_fx();
    EXPECT_EQ(f.lpu.qubit_budget(), 158);
    EXPECT_EQ(f.lpu.vertices().size(), 39u);
    EXPECT_EQ(f.lpu.edges().size(), 81u);   // 32 + 32 + 17
    EXPECT_EQ(f.lpu.cycles().size(), 37u);  // 11 + 9 + 17
}

TEST(Lpu, GrossCensusMatchesPublishedTable) {
    DegreeCensus c = gross_fx().lpu.census();
    EXPECT_EQ(c.v_l, (Hist{{6, 11}}));
    EXPECT_EQ(c.e_l, (Hist{{4, 1}, {5, 2}, {6, 13}, {7, 2}}));
    EXPECT_EQ(c.u_l, (Hist{{4, 2}, {5, 3}}));
    EXPECT_EQ(c.bridge, (Hist{{3, 1}, {4, 10}}));
    EXPECT_EQ(c.u_b, (Hist{{3, 1}, {4, 10}}));
    EXPECT_EQ(c.u_r, (Hist{{4, 2}, {5, 1}}));
    EXPECT_EQ(c.e_r, (Hist{{4, 2}, {5, 8}, {6, 8}}));
    EXPECT_EQ(c.v_r, (Hist{{6, 11}}));
    EXPECT_EQ(c.bell_sides, (std::pair<int, int>{5, 5}));
}

TEST(Lpu, TwoGrossCensusMatchesPublishedTable) {
    DegreeCensus c = two_gross_fx().lpu.census();
    EXPECT_EQ(c.v_l, (Hist{{5, 2}, {6, 13}, {7, 4}}));
    EXPECT_EQ(c.e_l, (Hist{{3, 1}, {4, 1}, {5, 8}, {6, 12}, {7, 10}}));
    EXPECT_EQ(c.u_l, (Hist{{3, 4}, {5, 6}, {6, 1}}));
    EXPECT_EQ(c.bridge, (Hist{{3, 1}, {4, 16}}));
    EXPECT_EQ(c.u_b, (Hist{{3, 1}, {4, 16}}));
    EXPECT_EQ(c.u_r, (Hist{{3, 5}, {4, 1}, {5, 1}, {6, 2}}));
    EXPECT_EQ(c.e_r, (Hist{{4, 4}, {5, 11}, {6, 13}, {7, 4}}));
    EXPECT_EQ(c.v_r, (Hist{{5, 2}, {6, 13}, {7, 4}}));
}

TEST(Lpu, DataChecksumsPinned) {
    EXPECT_EQ(lpu_data_checksum(gross_lpu_data()), kGrossLpuChecksum);
    EXPECT_EQ(lpu_data_checksum(two_gross_lpu_data()), kTwoGrossLpuChecksum);
}

TEST(Lpu, VertexAttachmentsAreDualPairs) {
    for (Fixture* f : {&gross_fx(), &two_gross_fx()}) {
        const TorusParams& tp = f->code.params();
        for (const auto& v : f->lpu.vertices()) {
            ASSERT_EQ(v.attachments.size(), 2u);
            auto [b0, c0] = f->code.qubit_label(v.attachments[0].qubit);
            auto [b1, c1] = f->code.qubit_label(v.attachments[1].qubit);
            EXPECT_NE(b0, b1);
            EXPECT_EQ(mul(Monomial{1, 1}, transpose(c0, tp), tp), c1);
        }
    }
}

TEST(Deform, HalfLpuSelection) {
    auto& f = gross_fx();
    // X1 uses only the left half: 18 edge qubits, 12 vertices, 5 cycles
    DeformedCode dx1 = deform(f.lpu, MeasureTarget::from_mask(1));
    EXPECT_EQ(dx1.edge_qubits.size(), 18u);
    EXPECT_EQ(dx1.active_vertices.size(), 12u);
    // Y1Y7 uses the full LPU
    DeformedCode dall = deform(f.lpu, MeasureTarget::from_mask(15));
    EXPECT_EQ(dall.edge_qubits.size(), 47u);
    EXPECT_EQ(dall.active_vertices.size(), 23u);
}

TEST(Deform, AllFifteenTargetsValid) {
    for (Fixture* f : {&gross_fx(), &two_gross_fx()}) {
        for (int mask = 1; mask < 16; ++mask) {
            DeformedCode dc = deform(f->lpu, MeasureTarget::from_mask(mask));
            EXPECT_TRUE(dc.is_abelian()) << dc.label;
            EXPECT_TRUE(dc.vertex_product_is_target()) << dc.label;
            EXPECT_EQ(dc.logical_qubit_count_before_measurement(), 12) << dc.label;
            EXPECT_EQ(dc.logical_qubit_count_raw(), 11) << dc.label;
            EXPECT_LE(dc.max_degree(), 7) << dc.label;
        }
    }
}

TEST(Deform, MergeCodeCode) {
    auto& f = gross_fx();
    int legal = 0;
    for (int ma = 1; ma < 16; ++ma) {
        MeasureTarget ta = MeasureTarget::from_mask(ma);
        if (!(ta.in_left_group() || ta.in_right_group())) continue;
        for (int mb = 1; mb < 16; ++mb) {
            MeasureTarget tb = MeasureTarget::from_mask(mb);
            if (!(tb.in_left_group() || tb.in_right_group())) continue;
            ++legal;
        }
    }
    EXPECT_EQ(legal, 36);

    auto [dc, adapter] = merge_code_code(f.lpu, f.lpu, MeasureTarget::from_mask(1),
                                         MeasureTarget::from_mask(1));
    EXPECT_EQ(adapter.check_qubits, 22);  // a = 2(d-1)
    EXPECT_TRUE(dc.is_abelian());
    EXPECT_TRUE(dc.vertex_product_is_target());
    EXPECT_LE(dc.max_degree(), 7);
    // a couple more target combinations, including mixed halves
    for (auto [ma, mb] : {std::pair<int, int>{9, 6}, {6, 9}, {8, 8}}) {
        auto [dc2, ad2] = merge_code_code(f.lpu, f.lpu, MeasureTarget::from_mask(ma),
                                          MeasureTarget::from_mask(mb));
        EXPECT_TRUE(dc2.is_abelian()) << dc2.label;
        EXPECT_TRUE(dc2.vertex_product_is_target()) << dc2.label;
        EXPECT_LE(dc2.max_degree(), 7) << dc2.label;
        (void)ad2;
    }
    EXPECT_THROW(merge_code_code(f.lpu, f.lpu, MeasureTarget::from_mask(3),
                                 MeasureTarget::from_mask(1)),
                 std::invalid_argument);
}

TEST(Deform, TwoGrossMergeAdapterSize) {
    auto& f = two_gross_fx();
    auto [dc, adapter] = merge_code_code(f.lpu, f.lpu, MeasureTarget::from_mask(8),
                                         MeasureTarget::from_mask(2));
    EXPECT_EQ(adapter.check_qubits, 34);
    EXPECT_TRUE(dc.is_abelian());
    EXPECT_TRUE(dc.vertex_product_is_target());
    EXPECT_LE(dc.max_degree(), 7);
}

TEST(Deform, BridgeCountsAreDistanceMinusOne) {
    auto count_bridge = [](const LpuSpec& l) {
        int b = 0;
        for (const auto& e : l.edges())
            if (e.cls == EdgeClass::Bridge) ++b;
        return b;
    };
    EXPECT_EQ(count_bridge(gross_fx().lpu), 11);      // d - 1 = 11
    EXPECT_EQ(count_bridge(two_gross_fx().lpu), 17);  // d - 1 = 17
}

TEST(Deform, FactoryAdapterSizes) {
    auto& g = gross_fx();
    auto& t = two_gross_fx();
    auto a15 = code_factory_adapter(g.lpu, 15);
    ASSERT_TRUE(a15.has_value());
    EXPECT_EQ(a15->check_qubits, 29);
    auto a7 = code_factory_adapter(g.lpu, 7);
    ASSERT_TRUE(a7.has_value());
    EXPECT_EQ(a7->check_qubits, 13);
    auto a15t = code_factory_adapter(t.lpu, 15);
    ASSERT_TRUE(a15t.has_value());
    EXPECT_EQ(a15t->check_qubits, 29);
    auto a25 = code_factory_adapter(t.lpu, 25);
    ASSERT_TRUE(a25.has_value());
    EXPECT_EQ(a25->check_qubits, 49);
}

TEST(Deform, OutcomeRuleTrivialCase) {
    auto& f = gross_fx();
    DeformedCode dc = deform(f.lpu, MeasureTarget::from_mask(1));
    std::vector<int> vouts(dc.active_vertices.size(), +1);
    std::vector<int> eouts(dc.edge_qubits.size(), +1);
    auto res = measurement_outcome_rule(dc, vouts, eouts);
    EXPECT_EQ(res.logical_bit, 0);
    EXPECT_TRUE(res.correction.is_identity());
    EXPECT_TRUE(res.cycles_consistent);
}

TEST(Deform, OutcomeRuleSingleEdgeFlip) {
    auto& f = gross_fx();
    DeformedCode dc = deform(f.lpu, MeasureTarget::from_mask(1));
    std::vector<int> vouts(dc.active_vertices.size(), +1);
    vouts[3] = -1;
    std::vector<int> eouts(dc.edge_qubits.size(), +1);
    eouts[0] = -1;
    auto res = measurement_outcome_rule(dc, vouts, eouts);
    EXPECT_EQ(res.logical_bit, 1);
    EXPECT_FALSE(res.correction.is_identity());
    EXPECT_FALSE(res.cycles_consistent);  // a lone flipped edge breaks its cycles
}

TEST(Deform, OutcomeRuleRootInvariance) {
    // Corrections from different roots differ by stabilizers and possibly the
    // measured logical itself.
    auto& f = gross_fx();
    DeformedCode dc = deform(f.lpu, MeasureTarget::from_mask(1));
    Rng rng(17);
    // consistent edge outcomes: parity of each basis cycle +1; build from a
    // random vertex potential (edge outcome = product of endpoint potentials)
    std::vector<int> potential(dc.active_vertices.size());
    for (auto& p : potential) p = rng.coin() ? -1 : 1;
    std::map<std::pair<int, int>, int> vpos;
    for (size_t i = 0; i < dc.active_vertices.size(); ++i) vpos[dc.active_vertices[i]] = int(i);
    std::vector<int> eouts(dc.edge_qubits.size(), +1);
    for (size_t ei = 0; ei < dc.edge_qubits.size(); ++ei) {
        auto [m, e] = dc.edge_qubits[ei];
        const AuxEdge& ae = dc.lpus[m]->edges()[e];
        eouts[ei] = potential[vpos[{m, ae.v0}]] * potential[vpos[{m, ae.v1}]];
    }
    std::vector<int> vouts(dc.active_vertices.size(), +1);
    auto r0 = measurement_outcome_rule(dc, vouts, eouts, 0);
    auto r1 = measurement_outcome_rule(dc, vouts, eouts, 5);
    EXPECT_TRUE(r0.cycles_consistent);
    EXPECT_TRUE(r1.cycles_consistent);
    PauliOperator diff = r0.correction;
    diff.mul_inplace(r1.correction);
    // diff must lie in <stabilizers, target>
    F2Mat rows(0, 2 * dc.total_qubits);
    for (const auto& c : dc.checks) rows.add_row(dc.symplectic_row(c.pauli));
    rows.add_row(dc.symplectic_row(dc.target));
    EXPECT_TRUE(rows.express_in_rowspace(dc.symplectic_row(diff)).has_value());
}

TEST(Deform, GaugeDecomposition) {
    auto& f = gross_fx();
    DeformedCode dc = deform(f.lpu, MeasureTarget::from_mask(1));
    GaugeDecomposition g = subsystem_gauge_decomposition(dc);
    // single-qubit Z on an edge anticommutes with its adjacent vertex checks
    PauliOperator ze(dc.total_qubits);
    ze.z.set(dc.n_code_total, true);
    bool anti = false;
    for (const auto& c : dc.checks)
        if (c.kind == CheckKind::Vertex && !symplectic_commutes(ze, c.pauli)) anti = true;
    EXPECT_TRUE(anti);
    // center commutes with every gauge generator
    for (const auto& c : g.center)
        for (const auto& gg : g.gauge) EXPECT_TRUE(symplectic_commutes(c, gg));
    // vertex checks are gauge but not center
    size_t vertex_checks = 0;
    for (const auto& c : dc.checks)
        if (c.kind == CheckKind::Vertex) ++vertex_checks;
    EXPECT_EQ(g.center.size() + vertex_checks, g.gauge.size() - dc.edge_qubits.size());
}
