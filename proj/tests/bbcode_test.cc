#include "bicycle/bbcode.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "bicycle/rng.hpp"

using namespace bicycle;

TEST(BBCode, GrossParameters) {
    BBCode code = make_gross_code();
    EXPECT_EQ(code.num_qubits(), 144);
    EXPECT_EQ(code.logical_qubit_count(), 12);
}

TEST(BBCode, TwoGrossParameters) {
    BBCode code = make_two_gross_code();
    EXPECT_EQ(code.num_qubits(), 288);
    EXPECT_EQ(code.logical_qubit_count(), 12);
}

TEST(BBCode, ChecksWeightSixAndCommute) {
    for (const char* name : {"gross", "two-gross"}) {
        BBCode code = make_code_by_name(name);
        for (const auto& r : code.x_checks().rows) EXPECT_EQ(r.weight(), 6u);
        for (const auto& r : code.z_checks().rows) EXPECT_EQ(r.weight(), 6u);
        // Hx Hz^T = 0 verified row-by-row in the constructor; spot check here.
        EXPECT_TRUE(symplectic_commutes(code.x_checks().rows[5], code.z_checks().rows[17]));
    }
}

TEST(BBCode, SymplecticCommutesExamples) {
    PauliOperator x0(4), z0(4), z1(4);
    x0.x.set(0, true);
    z0.z.set(0, true);
    z1.z.set(1, true);
    EXPECT_FALSE(symplectic_commutes(x0, z0));
    EXPECT_TRUE(symplectic_commutes(x0, z1));
    PauliOperator bad(5);
    EXPECT_THROW(symplectic_commutes(x0, bad), std::invalid_argument);
}

TEST(BBCode, TranslationalSymmetry) {
    Rng rng(4242);
    for (const char* name : {"gross", "two-gross"}) {
        BBCode code = make_code_by_name(name);
        auto row_set = [&](const CheckMatrix& h) {
            std::set<std::string> s;
            for (const auto& r : h.rows) s.insert(to_string(r));
            return s;
        };
        auto xs = row_set(code.x_checks());
        auto zs = row_set(code.z_checks());
        for (int it = 0; it < 4; ++it) {
            Monomial delta{int(rng.below(code.params().ell)), int(rng.below(code.params().m))};
            auto perm = code.shift_permutation(delta);
            std::set<std::string> xs2, zs2;
            for (const auto& r : code.x_checks().rows) xs2.insert(to_string(BBCode::permute(r, perm)));
            for (const auto& r : code.z_checks().rows) zs2.insert(to_string(BBCode::permute(r, perm)));
            EXPECT_EQ(xs, xs2);
            EXPECT_EQ(zs, zs2);
        }
    }
}

TEST(BBCode, RejectsDegenerateInputs) {
    TorusParams tp = kGross;
    EXPECT_THROW(BBCode(tp, parse_poly("1+y", tp), parse_poly("1+x+x^-1*y^-3", tp)),
                 std::invalid_argument);
}

TEST(BBCode, SparseExportShape) {
    BBCode code = make_gross_code();
    std::istringstream in(code.export_sparse_text());
    std::string line;
    int nx = 0, nz = 0;
    while (std::getline(in, line)) {
        ASSERT_FALSE(line.empty());
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        int q, cnt = 0;
        while (ls >> q) {
            EXPECT_GE(q, 0);
            EXPECT_LT(q, code.num_qubits());
            ++cnt;
        }
        EXPECT_EQ(cnt, 6);
        if (kind == "X") ++nx;
        else if (kind == "Z") ++nz;
        else FAIL() << "bad row kind " << kind;
    }
    EXPECT_EQ(nx, 72);
    EXPECT_EQ(nz, 72);
}

TEST(BBCode, AlistExportHeader) {
    BBCode code = make_gross_code();
    std::istringstream in(code.export_alist(CheckType::X));
    int n, m, dc, dr;
    in >> n >> m >> dc >> dr;
    EXPECT_EQ(n, 144);
    EXPECT_EQ(m, 72);
    EXPECT_EQ(dc, 3);
    EXPECT_EQ(dr, 6);
}
