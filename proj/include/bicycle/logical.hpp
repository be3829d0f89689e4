#pragma once

#include <array>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bicycle/bbcode.hpp"
#include "bicycle/isd.hpp"

namespace bicycle {

// X(p,q) is a logical operator iff pB + qA = 0.
inline bool is_x_logical(const BBCode& code, const BivariatePoly& p, const BivariatePoly& q) {
    return add(mul(p, code.B()), mul(q, code.A())).is_zero();
}
// Z(r,s) is a logical operator iff rA^T + sB^T = 0.
inline bool is_z_logical(const BBCode& code, const BivariatePoly& r, const BivariatePoly& s) {
    return add(mul(r, transpose(code.A())), mul(s, transpose(code.B()))).is_zero();
}

// X(px,qx) and Z(pz,qz) commute iff 1 is not a term of px*pz^T + qx*qz^T.
inline bool logicals_commute(const BivariatePoly& px, const BivariatePoly& qx,
                             const BivariatePoly& pz, const BivariatePoly& qz) {
    return !contains_one(add(mul(px, transpose(pz)), mul(qx, transpose(qz))));
}

struct LogicalOperator {
    enum Kind { X, Z } kind = X;
    BivariatePoly a, b;  // X(a,b) or Z(a,b)
    PauliOperator pauli;
    std::string label;
};

inline LogicalOperator zx_dual(const BBCode& code, const LogicalOperator& op) {
    LogicalOperator d;
    d.a = transpose(op.b);
    d.b = transpose(op.a);
    if (op.kind == LogicalOperator::X) {
        d.kind = LogicalOperator::Z;
        d.pauli = code.z_operator(d.a, d.b);
    } else {
        d.kind = LogicalOperator::X;
        d.pauli = code.x_operator(d.a, d.b);
    }
    d.label = op.label.empty() ? "" : ("dual(" + op.label + ")");
    return d;
}

// The fixed pqrs bases with mu = nu = xy and the alpha/beta shift choices.
struct LogicalBasis {
    std::string code_name;
    TorusParams tp;
    BivariatePoly p, q, r, s;
    Monomial mu, nu;
    std::array<Monomial, 6> alpha, beta;
    std::array<LogicalOperator, 12> xs;  // X1..X12
    std::array<LogicalOperator, 12> zs;  // Z1..Z12
};

namespace detail {

inline LogicalBasis make_basis(const BBCode& code) {
    LogicalBasis b;
    b.code_name = code.name();
    b.tp = code.params();
    const TorusParams& tp = b.tp;
    if (code.name() == "gross") {
        b.p = parse_poly("x^4+x^5+x^6*y+x^4*y^2+x^5*y^4+x^6*y^5", tp);
        b.q = parse_poly("x^3+x^4+x^3*y+x^3*y^2+x^4*y^2+x^3*y^5", tp);
        b.r = parse_poly("1+x^8+x*y+x^9*y+x^3*y^4+x^11*y^4", tp);
        b.s = parse_poly("x+x^9+x^4*y^4+x^8*y^4+y^5+x^8*y^5", tp);
        b.alpha = {Monomial{0, 0}, Monomial{3, 5}, Monomial{11, 5},
                   Monomial{10, 1}, Monomial{5, 4}, Monomial{4, 2}};
        b.beta = {Monomial{0, 0}, Monomial{2, 4}, Monomial{1, 2},
                  Monomial{2, 5}, Monomial{1, 1}, Monomial{3, 1}};
    } else if (code.name() == "two-gross") {
        b.p = parse_poly("x^2+x^2*y^2+x^8*y^2+x^9*y^2+x^3*y^3+x^4*y^3+x^7*y^4+x^8*y^6+x^6*y^7+x^7*y^11", tp);
        b.q = parse_poly("x^3*y^2+x^5*y^3+x^7*y^3+x^11*y^3+x^8*y^4+x^8*y^5+x^6*y^7+x^4*y^8+x*y^9+x*y^10", tp);
        b.r = parse_poly("x^4*y^2+x^11*y^2+y^5+x*y^5+x^5*y^5+x^6*y^5+x*y^8+x^8*y^8+x^2*y^11+x^10*y^11", tp);
        b.s = parse_poly("x^2*y^6+x^11*y^6+x^2*y^9+x^11*y^9+x^2*y^10+x^11*y^10+x^8*y^7+x^11*y^7+x^5*y^8+x^11*y^8", tp);
        b.alpha = {Monomial{0, 0}, Monomial{0, 3}, Monomial{3, 7},
                   Monomial{11, 11}, Monomial{2, 9}, Monomial{7, 4}};
        b.beta = {Monomial{0, 0}, Monomial{1, 1}, Monomial{4, 0},
                  Monomial{5, 4}, Monomial{4, 3}, Monomial{3, 5}};
    } else {
        throw std::invalid_argument("no fixed logical basis for code " + code.name());
    }
    b.mu = Monomial{1, 1};
    b.nu = Monomial{1, 1};
    return b;
}

}  // namespace detail

// Materializes X1..X12 and Z1..Z12:
//   Xi     = X(alpha_i p, alpha_i q)          Zi     = Z(beta_i nu s^T, beta_i nu r^T)
//   X(i+6) = X(beta_i^T r, beta_i^T s)        Z(i+6) = Z(alpha_i^T mu q^T, alpha_i^T mu p^T)
// Validates logicality, the symplectic pairing, and that the 24 operators
// generate the full logical group (rank 24 modulo stabilizers).
inline LogicalBasis build_basis(const BBCode& code) {
    LogicalBasis b = detail::make_basis(code);
    const TorusParams& tp = b.tp;
    auto mono_T = [&](const Monomial& m) { return transpose(m, tp); };
    for (int i = 0; i < 6; ++i) {
        {
            LogicalOperator op;
            op.kind = LogicalOperator::X;
            op.a = mul(b.alpha[i], b.p);
            op.b = mul(b.alpha[i], b.q);
            op.pauli = code.x_operator(op.a, op.b);
            op.label = "X" + std::to_string(i + 1);
            b.xs[i] = op;
        }
        {
            LogicalOperator op;
            op.kind = LogicalOperator::X;
            op.a = mul(mono_T(b.beta[i]), b.r);
            op.b = mul(mono_T(b.beta[i]), b.s);
            op.pauli = code.x_operator(op.a, op.b);
            op.label = "X" + std::to_string(i + 7);
            b.xs[i + 6] = op;
        }
        {
            LogicalOperator op;
            op.kind = LogicalOperator::Z;
            op.a = mul(b.beta[i], mul(b.nu, transpose(b.s)));
            op.b = mul(b.beta[i], mul(b.nu, transpose(b.r)));
            op.pauli = code.z_operator(op.a, op.b);
            op.label = "Z" + std::to_string(i + 1);
            b.zs[i] = op;
        }
        {
            LogicalOperator op;
            op.kind = LogicalOperator::Z;
            op.a = mul(mono_T(b.alpha[i]), mul(b.mu, transpose(b.q)));
            op.b = mul(mono_T(b.alpha[i]), mul(b.mu, transpose(b.p)));
            op.pauli = code.z_operator(op.a, op.b);
            op.label = "Z" + std::to_string(i + 7);
            b.zs[i + 6] = op;
        }
    }
    for (int i = 0; i < 12; ++i) {
        if (!is_x_logical(code, b.xs[i].a, b.xs[i].b))
            throw std::logic_error("basis X operator not logical: " + b.xs[i].label);
        if (!is_z_logical(code, b.zs[i].a, b.zs[i].b))
            throw std::logic_error("basis Z operator not logical: " + b.zs[i].label);
        for (int j = 0; j < 12; ++j) {
            bool want_commute = i != j;
            if (symplectic_commutes(b.xs[i].pauli, b.zs[j].pauli) != want_commute)
                throw std::logic_error("basis symplectic pairing broken");
        }
    }
    // Generation: the 24 images must have rank 24 modulo the stabilizer rows.
    size_t n = code.num_qubits();
    F2Mat stab(0, 2 * n);
    auto add_pauli_row = [&](F2Mat& mat, const PauliOperator& p) {
        BitVec v(2 * n);
        for (size_t qb : p.x.ones()) v.set(qb, true);
        for (size_t qb : p.z.ones()) v.set(n + qb, true);
        mat.add_row(v);
    };
    for (const auto& row : code.x_checks().rows) add_pauli_row(stab, row);
    for (const auto& row : code.z_checks().rows) add_pauli_row(stab, row);
    size_t stab_rank = stab.rank();
    F2Mat both = stab;
    for (int i = 0; i < 12; ++i) add_pauli_row(both, b.xs[i].pauli);
    for (int i = 0; i < 12; ++i) add_pauli_row(both, b.zs[i].pauli);
    if (both.rank() - stab_rank != 24)
        throw std::logic_error("basis does not generate the logical group");
    return b;
}

// App-A properties 1-4 of the chosen basis; each is reported individually.
struct BasisPropertyReport {
    bool anticommutation_pattern = false;   // property 1
    bool generates_logical_group = false;   // property 2
    bool overlap_structure = false;         // property 3
    bool check_disjointness = false;        // property 4
    bool all() const {
        return anticommutation_pattern && generates_logical_group && overlap_structure &&
               check_disjointness;
    }
};

inline BasisPropertyReport validate_basis_properties(const BBCode& code, const LogicalBasis& b) {
    BasisPropertyReport rep;
    const PauliOperator &x1 = b.xs[0].pauli, &x7 = b.xs[6].pauli;
    const PauliOperator &z1 = b.zs[0].pauli, &z7 = b.zs[6].pauli;

    rep.anticommutation_pattern = !symplectic_commutes(x1, z1) && !symplectic_commutes(x7, z7) &&
                                  symplectic_commutes(x1, z7) && symplectic_commutes(x7, z1) &&
                                  symplectic_commutes(x1, x7) && symplectic_commutes(z1, z7);

    {  // property 2 via rank of the four operators' shifts
        size_t n = code.num_qubits();
        F2Mat stab(0, 2 * n);
        auto add_row = [&](F2Mat& mat, const PauliOperator& p) {
            BitVec v(2 * n);
            for (size_t qb : p.x.ones()) v.set(qb, true);
            for (size_t qb : p.z.ones()) v.set(n + qb, true);
            mat.add_row(v);
        };
        for (const auto& row : code.x_checks().rows) add_row(stab, row);
        for (const auto& row : code.z_checks().rows) add_row(stab, row);
        size_t sr = stab.rank();
        F2Mat all = stab;
        for (int c = 0; c < code.num_cells(); ++c) {
            Monomial d = code.cell_of_index(c);
            auto perm = code.shift_permutation(d);
            add_row(all, BBCode::permute(x1, perm));
            add_row(all, BBCode::permute(x7, perm));
            add_row(all, BBCode::permute(z1, perm));
            add_row(all, BBCode::permute(z7, perm));
        }
        rep.generates_logical_group = (all.rank() - sr) == 24;
    }

    {  // property 3: commuting pairs disjoint, anticommuting pairs overlap exactly once
        auto overlap = [&](const PauliOperator& a, const PauliOperator& c) {
            size_t cnt = 0;
            for (size_t q = 0; q < a.num_qubits(); ++q)
                if (a.pauli_at(q) && c.pauli_at(q)) ++cnt;
            return cnt;
        };
        const PauliOperator* ops[4] = {&x1, &x7, &z1, &z7};
        bool ok = true;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                size_t ov = overlap(*ops[i], *ops[j]);
                bool comm = symplectic_commutes(*ops[i], *ops[j]);
                if (comm && ov != 0) ok = false;
                if (!comm && ov != 1) ok = false;
            }
        rep.overlap_structure = ok;
    }

    {  // property 4: adjacent-check disjointness
        auto checks_touching = [&](const CheckMatrix& h, const PauliOperator& op) {
            std::set<int> out;
            for (size_t r = 0; r < h.rows.size(); ++r) {
                size_t ov = 0;
                for (size_t q = 0; q < op.num_qubits(); ++q)
                    if (h.rows[r].pauli_at(q) && op.pauli_at(q)) ++ov;
                if (ov) out.insert(int(r));
            }
            return out;
        };
        auto zx1 = checks_touching(code.z_checks(), x1);
        auto zx7 = checks_touching(code.z_checks(), x7);
        auto xz1 = checks_touching(code.x_checks(), z1);
        auto xz7 = checks_touching(code.x_checks(), z7);
        bool ok = true;
        for (int c : zx1) if (zx7.count(c)) ok = false;
        for (int c : xz1) if (xz7.count(c)) ok = false;
        rep.check_disjointness = ok;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Low-weight logical enumeration by randomized information-set search.

struct LogicalCensusEntry {
    int weight = 0;
    uint64_t shift_unique = 0;
    uint64_t total = 0;
};

struct LowWeightSearchResult {
    int min_weight_found = -1;
    std::map<int, std::set<BitVec>> by_weight;  // all distinct supports, shifts included
    std::vector<LogicalCensusEntry> census() const {
        std::vector<LogicalCensusEntry> rows;
        for (const auto& [w, ops] : by_weight) {
            LogicalCensusEntry e;
            e.weight = w;
            e.total = ops.size();
            rows.push_back(e);
        }
        return rows;
    }
    std::map<int, uint64_t> shift_unique_by_weight;
    uint64_t trials_run = 0;
};

// Searches for logicals of the given CSS type with weight <= target_weight.
// Every found operator's full shift orbit is added (shifts of logicals are
// logicals); dedup is exact and also by shift-canonical form (lex-smallest
// shifted copy). Stops early once 10x the shift-unique count of consecutive
// finds yield nothing new, mirroring the enumeration stopping rule.
inline LowWeightSearchResult low_weight_logical_search(const BBCode& code,
                                                       CheckType type, int target_weight,
                                                       uint64_t budget, Rng& rng,
                                                       bool early_stop = true) {
    size_t n = code.num_qubits();
    LogicalBasis basis = build_basis(code);
    // X-type logicals: v with Hz v = 0 anticommuting with some Z basis logical.
    F2Mat H = type == CheckType::X ? code.z_support_matrix() : code.x_support_matrix();
    std::vector<BitVec> opposite;  // supports pairing the searched type
    for (int i = 0; i < 12; ++i) {
        const PauliOperator& p = type == CheckType::X ? basis.zs[i].pauli : basis.xs[i].pauli;
        opposite.push_back(type == CheckType::X ? p.z : p.x);
    }
    std::vector<BitVec> kernel = H.nullspace();

    // Shift orbit machinery.
    std::vector<std::vector<int>> perms;
    for (int c = 0; c < code.num_cells(); ++c)
        perms.push_back(code.shift_permutation(code.cell_of_index(c)));
    auto shifted = [&](const BitVec& v, const std::vector<int>& perm) {
        BitVec r(n);
        for (size_t q : v.ones()) r.set(perm[q], true);
        return r;
    };

    LowWeightSearchResult res;
    std::set<BitVec> canonical_seen;
    uint64_t consecutive_non_novel = 0;
    uint64_t shift_unique_total = 0;

    WeightMetric wm;  // plain Hamming on the support
    IsdOptions opt;
    opt.trials = 1;
    opt.order2_samples = 128;
    opt.collect_cap = target_weight;

    std::vector<BitVec> work;
    std::vector<size_t> perm_buf(n);
    std::iota(perm_buf.begin(), perm_buf.end(), 0);

    for (uint64_t t = 0; t < budget; ++t) {
        // random nontrivial logical class to anticommute with
        BitVec zvec(n);
        while (true) {
            uint64_t mask = rng.below((1ull << 12) - 1) + 1;
            zvec.clear();
            for (int i = 0; i < 12; ++i)
                if ((mask >> i) & 1) zvec ^= opposite[i];
            if (zvec.any()) break;
        }
        // affine space: g* + span of zvec-orthogonalized kernel
        AffineSpace space;
        space.cols = n;
        int star = -1;
        for (size_t i = 0; i < kernel.size(); ++i)
            if (kernel[i].dot(zvec)) { star = int(i); break; }
        if (star < 0) continue;  // zvec acts trivially (cannot happen for a valid basis)
        space.origin = kernel[star];
        space.basis.clear();
        for (size_t i = 0; i < kernel.size(); ++i) {
            if (int(i) == star) continue;
            BitVec g = kernel[i];
            if (g.dot(zvec)) g ^= kernel[star];
            space.basis.push_back(std::move(g));
        }

        bool novel_this_trial = false;
        auto sink = [&](const BitVec& v, size_t w) {
            (void)w;
            // canonical form: lex-smallest shifted copy
            BitVec canon = v;
            for (const auto& p : perms) {
                BitVec s = shifted(v, p);
                if (s < canon) canon = s;
            }
            if (canonical_seen.count(canon)) return;
            canonical_seen.insert(canon);
            novel_this_trial = true;
            ++shift_unique_total;
            // admit the whole orbit
            for (const auto& p : perms) {
                BitVec s = shifted(v, p);
                int wt = int(s.popcount());
                res.by_weight[wt].insert(std::move(s));
                ++res.shift_unique_by_weight[wt];  // adjusted below
            }
        };
        IsdResult r;
        r.witness = BitVec(n);
        detail::isd_trial(space, wm, rng, work, perm_buf, opt, r, sink);
        res.trials_run++;
        if (novel_this_trial) consecutive_non_novel = 0;
        else ++consecutive_non_novel;
        if (early_stop && shift_unique_total > 0 &&
            consecutive_non_novel >= 10 * shift_unique_total && res.trials_run >= 200)
            break;
    }
    // shift_unique_by_weight was over-counted per orbit member; recompute properly.
    res.shift_unique_by_weight.clear();
    std::set<BitVec> canon_by;
    for (auto& [w, ops] : res.by_weight) {
        std::set<BitVec> canon;
        for (const auto& v : ops) {
            BitVec best = v;
            for (const auto& p : perms) {
                BitVec s = shifted(v, p);
                if (s < best) best = s;
            }
            canon.insert(best);
        }
        res.shift_unique_by_weight[w] = canon.size();
        if (res.min_weight_found < 0 || w < res.min_weight_found) res.min_weight_found = w;
    }
    return res;
}

inline std::string census_csv(const LowWeightSearchResult& res) {
    std::ostringstream os;
    os << "weight,shift_unique,total\n";
    for (const auto& [w, ops] : res.by_weight) {
        uint64_t su = 0;
        auto it = res.shift_unique_by_weight.find(w);
        if (it != res.shift_unique_by_weight.end()) su = it->second;
        os << w << "," << su << "," << ops.size() << "\n";
    }
    return os.str();
}

}  // namespace bicycle
