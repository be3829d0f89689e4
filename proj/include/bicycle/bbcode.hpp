#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bicycle/f2.hpp"
#include "bicycle/torus.hpp"

namespace bicycle {

// Pauli on n qubits as a symplectic bit pair (x|z); the sign is tracked but
// ignored by commutation and weight logic.
struct PauliOperator {
    BitVec x, z;
    int sign = +1;

    PauliOperator() = default;
    explicit PauliOperator(size_t n) : x(n), z(n) {}

    size_t num_qubits() const { return x.size(); }

    size_t weight() const {
        size_t c = 0;
        for (size_t w = 0; w < x.words(); ++w) c += std::popcount(x.word(w) | z.word(w));
        return c;
    }

    bool is_identity() const { return !x.any() && !z.any(); }

    void mul_inplace(const PauliOperator& o) {  // sign-free product
        x ^= o.x;
        z ^= o.z;
    }

    // 0 = I, 1 = X, 2 = Z, 3 = Y
    int pauli_at(size_t q) const { return int(x.get(q)) | (int(z.get(q)) << 1); }
    void set_pauli(size_t q, int p) {
        x.set(q, p & 1);
        z.set(q, (p >> 1) & 1);
    }

    bool operator==(const PauliOperator& o) const { return x == o.x && z == o.z; }
};

inline bool symplectic_commutes(const PauliOperator& a, const PauliOperator& b) {
    if (a.num_qubits() != b.num_qubits())
        throw std::invalid_argument("Pauli length mismatch");
    return !(a.x.dot(b.z) ^ a.z.dot(b.x));
}

inline std::string to_string(const PauliOperator& p) {
    static const char* names = "IXZY";
    std::string s;
    for (size_t q = 0; q < p.num_qubits(); ++q) s += names[p.pauli_at(q)];
    return s;
}

enum class QubitBlock { L = 0, R = 1 };
enum class CheckType { X = 0, Z = 1 };

// A checkmatrix is just a list of Paulis; pure-CSS for plain BB codes,
// general for deformed codes.
struct CheckMatrix {
    std::vector<PauliOperator> rows;

    F2Mat symplectic_rows(size_t n) const {
        F2Mat m(rows.size(), 2 * n);
        for (size_t r = 0; r < rows.size(); ++r) {
            for (size_t q = 0; q < n; ++q) {
                if (rows[r].x.get(q)) m.set(r, q, true);
                if (rows[r].z.get(q)) m.set(r, n + q, true);
            }
        }
        return m;
    }
};

// Bivariate bicycle code on an ell x m torus built from three-term polynomials
// A and B. The X check in cell c acts on L qubits cA and R qubits cB; the Z
// check acts on L qubits cB^T and R qubits cA^T.
class BBCode {
  public:
    BBCode(const TorusParams& tp, const BivariatePoly& A, const BivariatePoly& B,
           std::string name = "")
        : tp_(tp), A_(A), B_(B), name_(std::move(name)) {
        if (A.params() != tp || B.params() != tp)
            throw std::invalid_argument("A/B on wrong torus");
        if (A.weight() != 3 || B.weight() != 3)
            throw std::invalid_argument("A and B must each have exactly 3 terms");
        n_ = 2 * tp.cells();
        build_checks();
    }

    const TorusParams& params() const { return tp_; }
    const BivariatePoly& A() const { return A_; }
    const BivariatePoly& B() const { return B_; }
    const std::string& name() const { return name_; }
    int num_qubits() const { return n_; }
    int num_cells() const { return tp_.cells(); }

    // Row-major over (j, i); L block before R block.
    int cell_index(const Monomial& c) const { return c.j * tp_.ell + c.i; }
    Monomial cell_of_index(int idx) const { return Monomial{idx % tp_.ell, idx / tp_.ell}; }
    int qubit_index(QubitBlock b, const Monomial& c) const {
        return (b == QubitBlock::L ? 0 : tp_.cells()) + cell_index(c);
    }
    std::pair<QubitBlock, Monomial> qubit_label(int q) const {
        QubitBlock b = q < tp_.cells() ? QubitBlock::L : QubitBlock::R;
        return {b, cell_of_index(q % tp_.cells())};
    }
    int check_index(CheckType t, const Monomial& c) const {
        return (t == CheckType::X ? 0 : tp_.cells()) + cell_index(c);
    }

    PauliOperator check_pauli(CheckType t, const Monomial& c) const {
        PauliOperator p(n_);
        if (t == CheckType::X) {
            for (const auto& a : A_.terms()) p.x.set(qubit_index(QubitBlock::L, mul(c, a, tp_)), true);
            for (const auto& b : B_.terms()) p.x.set(qubit_index(QubitBlock::R, mul(c, b, tp_)), true);
        } else {
            for (const auto& b : B_.terms())
                p.z.set(qubit_index(QubitBlock::L, mul(c, transpose(b, tp_), tp_)), true);
            for (const auto& a : A_.terms())
                p.z.set(qubit_index(QubitBlock::R, mul(c, transpose(a, tp_), tp_)), true);
        }
        return p;
    }

    const CheckMatrix& x_checks() const { return hx_; }
    const CheckMatrix& z_checks() const { return hz_; }

    // X-type support matrix (cells x n) over the X-bit space, and dually for Z.
    F2Mat x_support_matrix() const { return support_matrix(hx_, /*use_x=*/true); }
    F2Mat z_support_matrix() const { return support_matrix(hz_, /*use_x=*/false); }

    int logical_qubit_count() const {
        return n_ - int(x_support_matrix().rank()) - int(z_support_matrix().rank());
    }

    PauliOperator x_operator(const BivariatePoly& p, const BivariatePoly& q) const {
        PauliOperator op(n_);
        for (const auto& t : p.terms()) op.x.set(qubit_index(QubitBlock::L, t), true);
        for (const auto& t : q.terms()) op.x.set(qubit_index(QubitBlock::R, t), true);
        return op;
    }
    PauliOperator z_operator(const BivariatePoly& r, const BivariatePoly& s) const {
        PauliOperator op(n_);
        for (const auto& t : r.terms()) op.z.set(qubit_index(QubitBlock::L, t), true);
        for (const auto& t : s.terms()) op.z.set(qubit_index(QubitBlock::R, t), true);
        return op;
    }

    // Qubit permutation induced by the shift automorphism delta.
    std::vector<int> shift_permutation(const Monomial& delta) const {
        std::vector<int> perm(n_);
        for (int q = 0; q < n_; ++q) {
            auto [b, c] = qubit_label(q);
            perm[q] = qubit_index(b, mul(delta, c, tp_));
        }
        return perm;
    }

    static PauliOperator permute(const PauliOperator& p, const std::vector<int>& perm) {
        PauliOperator r(p.num_qubits());
        for (size_t q = 0; q < p.num_qubits(); ++q) {
            if (p.x.get(q)) r.x.set(perm[q], true);
            if (p.z.get(q)) r.z.set(perm[q], true);
        }
        r.sign = p.sign;
        return r;
    }

    // "X|Z <qubit indices>" rows, one check per line.
    std::string export_sparse_text() const {
        std::ostringstream os;
        for (const auto& row : hx_.rows) {
            os << "X";
            for (size_t q : row.x.ones()) os << " " << q;
            os << "\n";
        }
        for (const auto& row : hz_.rows) {
            os << "Z";
            for (size_t q : row.z.ones()) os << " " << q;
            os << "\n";
        }
        return os.str();
    }

    // MacKay alist for one CSS half.
    std::string export_alist(CheckType t) const {
        const CheckMatrix& h = t == CheckType::X ? hx_ : hz_;
        int M = int(h.rows.size());
        int N = n_;
        std::vector<std::vector<int>> row_lists(M), col_lists(N);
        for (int r = 0; r < M; ++r) {
            const BitVec& bits = t == CheckType::X ? h.rows[r].x : h.rows[r].z;
            for (size_t q : bits.ones()) {
                row_lists[r].push_back(int(q) + 1);
                col_lists[q].push_back(r + 1);
            }
        }
        size_t dmax_c = 0, dmax_r = 0;
        for (auto& v : col_lists) dmax_c = std::max(dmax_c, v.size());
        for (auto& v : row_lists) dmax_r = std::max(dmax_r, v.size());
        std::ostringstream os;
        os << N << " " << M << "\n" << dmax_c << " " << dmax_r << "\n";
        for (int c = 0; c < N; ++c) os << col_lists[c].size() << (c + 1 < N ? " " : "\n");
        for (int r = 0; r < M; ++r) os << row_lists[r].size() << (r + 1 < M ? " " : "\n");
        for (int c = 0; c < N; ++c) {
            for (size_t k = 0; k < dmax_c; ++k)
                os << (k < col_lists[c].size() ? col_lists[c][k] : 0) << (k + 1 < dmax_c ? " " : "\n");
        }
        for (int r = 0; r < M; ++r) {
            for (size_t k = 0; k < dmax_r; ++k)
                os << (k < row_lists[r].size() ? row_lists[r][k] : 0) << (k + 1 < dmax_r ? " " : "\n");
        }
        return os.str();
    }

  private:
    F2Mat support_matrix(const CheckMatrix& h, bool use_x) const {
        F2Mat m(h.rows.size(), n_);
        for (size_t r = 0; r < h.rows.size(); ++r) {
            const BitVec& bits = use_x ? h.rows[r].x : h.rows[r].z;
            for (size_t q : bits.ones()) m.set(r, q, true);
        }
        return m;
    }

    void build_checks() {
        for (int idx = 0; idx < tp_.cells(); ++idx) {
            Monomial c = cell_of_index(idx);
            PauliOperator px = check_pauli(CheckType::X, c);
            PauliOperator pz = check_pauli(CheckType::Z, c);
            if (px.weight() != 6 || pz.weight() != 6)
                throw std::logic_error("check weight is not 6");
            hx_.rows.push_back(std::move(px));
            hz_.rows.push_back(std::move(pz));
        }
        // Hx . Hz^T = 0 must hold by construction; assert anyway.
        for (const auto& rx : hx_.rows)
            for (const auto& rz : hz_.rows)
                if (!symplectic_commutes(rx, rz))
                    throw std::logic_error("non-commuting BB construction");
    }

    TorusParams tp_;
    BivariatePoly A_, B_;
    std::string name_;
    int n_ = 0;
    CheckMatrix hx_, hz_;
};

// The two codes used throughout.
inline BBCode make_gross_code() {
    TorusParams tp = kGross;
    return BBCode(tp, parse_poly("1+y+x^3*y^-1", tp), parse_poly("1+x+x^-1*y^-3", tp), "gross");
}
inline BBCode make_two_gross_code() {
    TorusParams tp = kTwoGross;
    return BBCode(tp, parse_poly("1+y+x^3*y^-1", tp), parse_poly("1+x+x^-1*y^-3", tp), "two-gross");
}
inline BBCode make_code_by_name(const std::string& name) {
    if (name == "gross") return make_gross_code();
    if (name == "two-gross") return make_two_gross_code();
    throw std::invalid_argument("unknown code name: " + name + " (expected gross|two-gross)");
}

}  // namespace bicycle
