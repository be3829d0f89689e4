#pragma once

#include <array>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bicycle/bbcode.hpp"
#include "bicycle/logical.hpp"

namespace bicycle {

// One of the twelve physically implementable shift instructions. L qubits
// travel through X checks (via a pair of A terms) or through Z checks (via a
// pair of B terms); the swap circuit takes 6 timesteps plus one syndrome
// cycle, 14 timesteps in total.
struct ShiftAutomorphism {
    Monomial delta;
    enum Route { ViaXChecks, ViaZChecks } route = ViaXChecks;
    int term_i = 0, term_j = 0;  // which polynomial terms the two swap stages use
    static constexpr int kDuration = 14;
};

inline std::vector<ShiftAutomorphism> basic_shifts(const BBCode& code) {
    std::vector<ShiftAutomorphism> out;
    const TorusParams& tp = code.params();
    auto add = [&](const BivariatePoly& poly, ShiftAutomorphism::Route route) {
        const auto& terms = poly.terms();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                ShiftAutomorphism s;
                s.delta = mul(terms[i], transpose(terms[j], tp), tp);
                s.route = route;
                s.term_i = i;
                s.term_j = j;
                out.push_back(s);
            }
    };
    add(code.A(), ShiftAutomorphism::ViaXChecks);
    add(code.B(), ShiftAutomorphism::ViaZChecks);
    if (out.size() != 12) throw std::logic_error("expected 12 basic shifts");
    return out;
}

// Shifts in <x^6, y^6> act as the logical identity.
inline bool is_logically_trivial(const Monomial& delta, const TorusParams& tp) {
    // the subgroup generated by x^6 and y^6 inside Z_ell x Z_m
    for (int a = 0; a * 6 < 2 * tp.ell; ++a)
        for (int b = 0; b * 6 < 2 * tp.m; ++b) {
            Monomial g = Monomial::make(6 * a, 6 * b, tp);
            if (g == delta) return true;
        }
    return false;
}

// Canonical representative of delta's logical class (exponents mod 6).
inline std::pair<int, int> shift_class(const Monomial& delta) {
    return {delta.i % 6, delta.j % 6};
}

inline int count_nontrivial_shift_classes(const TorusParams& tp) {
    std::set<std::pair<int, int>> classes;
    for (int i = 0; i < tp.ell; ++i)
        for (int j = 0; j < tp.m; ++j)
            if (!is_logically_trivial(Monomial{i, j}, tp)) classes.insert(shift_class(Monomial{i, j}));
    return int(classes.size());
}

// 6x6 invertible matrix over F2; the full 12-qubit action is block-diagonal
// (the same block acting on logical qubits 1-6 and 7-12).
struct LogicalActionMatrix {
    std::array<std::array<uint8_t, 6>, 6> a{};

    bool operator==(const LogicalActionMatrix& o) const { return a == o.a; }

    LogicalActionMatrix multiply(const LogicalActionMatrix& o) const {
        LogicalActionMatrix r;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                uint8_t s = 0;
                for (int k = 0; k < 6; ++k) s ^= a[i][k] & o.a[k][j];
                r.a[i][j] = s;
            }
        return r;
    }

    static LogicalActionMatrix identity() {
        LogicalActionMatrix r;
        for (int i = 0; i < 6; ++i) r.a[i][i] = 1;
        return r;
    }

    int order(int cap = 64) const {
        LogicalActionMatrix m = *this;
        for (int k = 1; k <= cap; ++k) {
            if (m == identity()) return k;
            m = m.multiply(*this);
        }
        return -1;
    }

    std::optional<LogicalActionMatrix> inverse() const {
        // Gauss-Jordan on [A | I]
        std::array<std::array<uint8_t, 12>, 6> w{};
        for (int i = 0; i < 6; ++i) {
            for (int j = 0; j < 6; ++j) w[i][j] = a[i][j];
            w[i][6 + i] = 1;
        }
        int r = 0;
        for (int c = 0; c < 6 && r < 6; ++c) {
            int sel = r;
            while (sel < 6 && !w[sel][c]) ++sel;
            if (sel == 6) return std::nullopt;
            std::swap(w[r], w[sel]);
            for (int k = 0; k < 6; ++k)
                if (k != r && w[k][c])
                    for (int j = 0; j < 12; ++j) w[k][j] ^= w[r][j];
            ++r;
        }
        LogicalActionMatrix inv;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) inv.a[i][j] = w[i][6 + j];
        return inv;
    }

    LogicalActionMatrix transposed() const {
        LogicalActionMatrix r;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) r.a[i][j] = a[j][i];
        return r;
    }

    std::string to_text() const {
        std::ostringstream os;
        for (int i = 0; i < 6; ++i) {
            for (int j = 0; j < 6; ++j) os << int(a[i][j]) << (j + 1 < 6 ? " " : "\n");
        }
        return os.str();
    }
};

namespace detail {

// Expresses the X-type operator `op` in the span of <X-stabilizers, given logicals>.
// Returns the 6 coefficients on the logicals, or nullopt.
inline std::optional<std::array<uint8_t, 6>> express_x_in(
    const BBCode& code, const std::array<const PauliOperator*, 6>& logicals,
    const PauliOperator& op) {
    F2Mat rows(0, code.num_qubits());
    for (const auto& r : code.x_checks().rows) rows.add_row(r.x);
    for (int i = 0; i < 6; ++i) rows.add_row(logicals[i]->x);
    auto coeff = rows.express_in_rowspace(op.x);
    if (!coeff) return std::nullopt;
    std::array<uint8_t, 6> out{};
    size_t base = code.x_checks().rows.size();
    for (int i = 0; i < 6; ++i) out[i] = coeff->get(base + i);
    return out;
}

inline std::optional<std::array<uint8_t, 6>> express_z_in(
    const BBCode& code, const std::array<const PauliOperator*, 6>& logicals,
    const PauliOperator& op) {
    F2Mat rows(0, code.num_qubits());
    for (const auto& r : code.z_checks().rows) rows.add_row(r.z);
    for (int i = 0; i < 6; ++i) rows.add_row(logicals[i]->z);
    auto coeff = rows.express_in_rowspace(op.z);
    if (!coeff) return std::nullopt;
    std::array<uint8_t, 6> out{};
    size_t base = code.z_checks().rows.size();
    for (int i = 0; i < 6; ++i) out[i] = coeff->get(base + i);
    return out;
}

}  // namespace detail

// Computes the 6x6 block A of delta's logical CNOT action in the fixed basis:
// column i holds the expansion of the shifted Xbar_(i+1) over Xbar_1..Xbar_6.
// The same unitary acts on qubits 7-12; because the high block's labels carry
// a transpose (beta_i^T, alpha_i^T), its transport matrices come out flipped.
// Validates the full 12-qubit structure:
//   X1..X6 -> A,  X7..X12 -> A^T,  Z1..Z6 -> A^-T,  Z7..Z12 -> A^-1.
inline LogicalActionMatrix logical_action(const BBCode& code, const LogicalBasis& basis,
                                          const Monomial& delta) {
    auto perm = code.shift_permutation(delta);
    std::array<const PauliOperator*, 6> x_lo, x_hi, z_lo, z_hi;
    for (int i = 0; i < 6; ++i) {
        x_lo[i] = &basis.xs[i].pauli;
        x_hi[i] = &basis.xs[i + 6].pauli;
        z_lo[i] = &basis.zs[i].pauli;
        z_hi[i] = &basis.zs[i + 6].pauli;
    }
    LogicalActionMatrix m;
    for (int i = 0; i < 6; ++i) {
        PauliOperator moved = BBCode::permute(*x_lo[i], perm);
        auto col = detail::express_x_in(code, x_lo, moved);
        if (!col) throw std::logic_error("shifted X logical left the low block");
        for (int r = 0; r < 6; ++r) m.a[r][i] = (*col)[r];
    }
    auto minv = m.inverse();
    if (!minv) throw std::logic_error("logical action not invertible");
    LogicalActionMatrix want_xhi = m.transposed();
    LogicalActionMatrix want_zlo = minv->transposed();
    LogicalActionMatrix want_zhi = *minv;
    for (int i = 0; i < 6; ++i) {
        auto col_xhi = detail::express_x_in(code, x_hi, BBCode::permute(*x_hi[i], perm));
        auto col_zlo = detail::express_z_in(code, z_lo, BBCode::permute(*z_lo[i], perm));
        auto col_zhi = detail::express_z_in(code, z_hi, BBCode::permute(*z_hi[i], perm));
        if (!col_xhi || !col_zlo || !col_zhi)
            throw std::logic_error("shifted logical left its block");
        for (int r = 0; r < 6; ++r) {
            if ((*col_xhi)[r] != want_xhi.a[r][i])
                throw std::logic_error("X high block is not A^T");
            if ((*col_zlo)[r] != want_zlo.a[r][i])
                throw std::logic_error("Z low block is not A^-T");
            if ((*col_zhi)[r] != want_zhi.a[r][i])
                throw std::logic_error("Z high block is not A^-1");
        }
    }
    return m;
}

// Symplectic action of the shift delta on 12-qubit logical Paulis expressed in
// basis coordinates (x-part coefficients of X1..X12, z-part of Z1..Z12).
struct LogicalSymplecticAction {
    LogicalActionMatrix x_lo, x_hi, z_lo, z_hi;

    static LogicalSymplecticAction from(const LogicalActionMatrix& a) {
        LogicalSymplecticAction s;
        s.x_lo = a;
        s.x_hi = a.transposed();
        auto inv = a.inverse();
        if (!inv) throw std::logic_error("singular action matrix");
        s.z_hi = *inv;
        s.z_lo = inv->transposed();
        return s;
    }

    // coeffs: 24 bits (x1..x12, z1..z12)
    std::array<uint8_t, 24> apply(const std::array<uint8_t, 24>& v) const {
        std::array<uint8_t, 24> out{};
        auto mulv = [](const LogicalActionMatrix& m, const uint8_t* in, uint8_t* o) {
            for (int r = 0; r < 6; ++r) {
                uint8_t s = 0;
                for (int c = 0; c < 6; ++c) s ^= m.a[r][c] & in[c];
                o[r] = s;
            }
        };
        mulv(x_lo, v.data(), out.data());
        mulv(x_hi, v.data() + 6, out.data() + 6);
        mulv(z_lo, v.data() + 12, out.data() + 12);
        mulv(z_hi, v.data() + 18, out.data() + 18);
        return out;
    }
};

// Decomposes a logically nontrivial shift into at most two basic shifts whose
// product lies in delta's class. Prefers a single generator, then the
// lexicographically smallest pair of generator indices.
inline std::vector<ShiftAutomorphism> two_generator_decomposition(
    const BBCode& code, const Monomial& delta) {
    const TorusParams& tp = code.params();
    if (is_logically_trivial(delta, tp))
        throw std::invalid_argument("delta acts as the logical identity");
    auto gens = basic_shifts(code);
    auto same_class = [&](const Monomial& a) {
        return shift_class(a) == shift_class(delta);
    };
    for (const auto& g : gens)
        if (same_class(g.delta)) return {g};
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = 0; j < gens.size(); ++j) {
            Monomial prod = mul(gens[i].delta, gens[j].delta, tp);
            if (same_class(prod)) return {gens[i], gens[j]};
        }
    throw std::logic_error("shift class not reachable with two basic shifts");
}

}  // namespace bicycle
