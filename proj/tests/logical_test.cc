#include "bicycle/logical.hpp"

#include <gtest/gtest.h>

#include "bicycle/rng.hpp"

using namespace bicycle;

TEST(Logical, PaperBasesAreLogical) {
    for (const char* name : {"gross", "two-gross"}) {
        BBCode code = make_code_by_name(name);
        LogicalBasis b = build_basis(code);
        EXPECT_TRUE(is_x_logical(code, b.p, b.q));
        EXPECT_TRUE(is_x_logical(code, b.r, b.s));
        // zero operator is trivially logical
        BivariatePoly zero(code.params());
        EXPECT_TRUE(is_x_logical(code, zero, zero));
    }
}

TEST(Logical, DeletedTermBreaksLogicality) {
    BBCode code = make_gross_code();
    LogicalBasis b = build_basis(code);
    BivariatePoly p2 = b.p;
    p2.add_term(b.p.terms()[0]);  // XOR deletes the first term
    EXPECT_FALSE(is_x_logical(code, p2, b.q));
}

TEST(Logical, CommutationMembershipTest) {
    BBCode code = make_gross_code();
    LogicalBasis b = build_basis(code);
    // X1 vs Z7 commute; X1 vs Z1 anticommute
    EXPECT_TRUE(logicals_commute(b.xs[0].a, b.xs[0].b, b.zs[6].a, b.zs[6].b));
    EXPECT_FALSE(logicals_commute(b.xs[0].a, b.xs[0].b, b.zs[0].a, b.zs[0].b));
    EXPECT_TRUE(symplectic_commutes(b.xs[0].pauli, b.xs[0].pauli));
}

TEST(Logical, BasisWeights) {
    {
        BBCode code = make_gross_code();
        LogicalBasis b = build_basis(code);
        for (const auto* op : {&b.xs[0], &b.xs[6]}) EXPECT_EQ(op->pauli.weight(), 12u);
        for (const auto* op : {&b.zs[0], &b.zs[6]}) EXPECT_EQ(op->pauli.weight(), 12u);
    }
    {
        BBCode code = make_two_gross_code();
        LogicalBasis b = build_basis(code);
        for (const auto* op : {&b.xs[0], &b.xs[6]}) EXPECT_EQ(op->pauli.weight(), 20u);
        for (const auto* op : {&b.zs[0], &b.zs[6]}) EXPECT_EQ(op->pauli.weight(), 20u);
    }
}

TEST(Logical, BasisPropertiesHold) {
    for (const char* name : {"gross", "two-gross"}) {
        BBCode code = make_code_by_name(name);
        LogicalBasis b = build_basis(code);
        auto rep = validate_basis_properties(code, b);
        EXPECT_TRUE(rep.anticommutation_pattern) << name;
        EXPECT_TRUE(rep.generates_logical_group) << name;
        EXPECT_TRUE(rep.overlap_structure) << name;
        EXPECT_TRUE(rep.check_disjointness) << name;
    }
}

TEST(Logical, BrokenBasisFailsGeneration) {
    BBCode code = make_gross_code();
    LogicalBasis b = build_basis(code);
    // Replace X7 with a shift of X1: rank must drop below 24.
    size_t n = code.num_qubits();
    F2Mat stab(0, 2 * n);
    auto add_row = [&](F2Mat& mat, const PauliOperator& p) {
        BitVec v(2 * n);
        for (size_t qb : p.x.ones()) v.set(qb, true);
        for (size_t qb : p.z.ones()) v.set(n + qb, true);
        mat.add_row(v);
    };
    for (const auto& r : code.x_checks().rows) add_row(stab, r);
    for (const auto& r : code.z_checks().rows) add_row(stab, r);
    size_t sr = stab.rank();
    F2Mat all = stab;
    auto perm = code.shift_permutation(Monomial{2, 3});
    for (int i = 0; i < 12; ++i)
        add_row(all, i == 6 ? BBCode::permute(b.xs[0].pauli, perm) : b.xs[i].pauli);
    for (int i = 0; i < 12; ++i) add_row(all, b.zs[i].pauli);
    EXPECT_LT(all.rank() - sr, 24u);
}

TEST(Logical, ZxDuality) {
    for (const char* name : {"gross", "two-gross"}) {
        BBCode code = make_code_by_name(name);
        LogicalBasis b = build_basis(code);
        LogicalOperator d = zx_dual(code, b.xs[0]);
        EXPECT_EQ(d.kind, LogicalOperator::Z);
        EXPECT_TRUE(is_z_logical(code, d.a, d.b));
        LogicalOperator dd = zx_dual(code, d);
        EXPECT_EQ(dd.a, b.xs[0].a);
        EXPECT_EQ(dd.b, b.xs[0].b);
        LogicalOperator d7 = zx_dual(code, b.xs[6]);
        EXPECT_TRUE(is_z_logical(code, d7.a, d7.b));
    }
}

TEST(Logical, ShiftClosure) {
    Rng rng(77);
    for (const char* name : {"gross", "two-gross"}) {
        BBCode code = make_code_by_name(name);
        LogicalBasis b = build_basis(code);
        for (int it = 0; it < 50; ++it) {
            Monomial a{int(rng.below(code.params().ell)), int(rng.below(code.params().m))};
            EXPECT_TRUE(is_x_logical(code, mul(a, b.p), mul(a, b.q)));
        }
    }
}

TEST(Logical, LowWeightSearchFindsDistanceGross) {
    BBCode code = make_gross_code();
    Rng rng(2024);
    auto res = low_weight_logical_search(code, CheckType::X, 12, 3000, rng);
    ASSERT_GT(res.by_weight.size(), 0u);
    EXPECT_EQ(res.min_weight_found, 12);
    // every enumerated logical commutes with all checks and pairs with the basis
    LogicalBasis b = build_basis(code);
    const auto& ops = res.by_weight.at(12);
    int checked = 0;
    for (const auto& v : ops) {
        PauliOperator p(code.num_qubits());
        p.x = v;
        for (size_t r = 0; r < code.z_checks().rows.size(); r += 7)
            EXPECT_TRUE(symplectic_commutes(p, code.z_checks().rows[r]));
        bool anti = false;
        for (int i = 0; i < 12; ++i)
            if (!symplectic_commutes(p, b.zs[i].pauli)) anti = true;
        EXPECT_TRUE(anti);
        if (++checked >= 12) break;
    }
}

TEST(Logical, NoWeight11GrossLogicals) {
    BBCode code = make_gross_code();
    Rng rng(5);
    auto res = low_weight_logical_search(code, CheckType::X, 11, 1500, rng, /*early_stop=*/false);
    EXPECT_TRUE(res.by_weight.empty());
}

TEST(Logical, CensusCsvFormat) {
    BBCode code = make_gross_code();
    Rng rng(11);
    auto res = low_weight_logical_search(code, CheckType::X, 12, 800, rng);
    std::string csv = census_csv(res);
    EXPECT_EQ(csv.rfind("weight,shift_unique,total\n", 0), 0u);
}
