#pragma once

#include <functional>
#include <numeric>
#include <optional>
#include <thread>
#include <vector>

#include "bicycle/f2.hpp"
#include "bicycle/rng.hpp"

namespace bicycle {

// Randomized information-set search for low-weight elements of an affine
// space origin + span(basis). Each trial row-reduces the basis under a random
// column order, sweeps the origin against the pivots, then scans weight-1/2
// combinations of the reduced rows. This is the min-weight workhorse behind
// the logical-operator census and all fault-distance upper bounds.
struct AffineSpace {
    std::vector<BitVec> basis;
    BitVec origin;
    size_t cols = 0;
};

// Weight metric: plain Hamming, or Pauli weight on a padded symplectic layout
// where bit q is X_q and bit 64*W + q is Z_q (W = words per half).
struct WeightMetric {
    bool pauli = false;
    size_t half_words = 0;

    size_t eval(const BitVec& v) const {
        if (!pauli) return v.popcount();
        size_t c = 0;
        for (size_t i = 0; i < half_words; ++i)
            c += std::popcount(v.word(i) | v.word(i + half_words));
        return c;
    }
};

struct IsdOptions {
    uint64_t trials = 10000;
    int order2_samples = 256;   // random pairs per trial; 0 disables
    bool full_order2 = false;   // exhaustive pairs (small spaces only)
    size_t collect_cap = 0;     // report candidates of weight <= cap via sink
    int threads = 1;
};

struct IsdResult {
    size_t best_weight = SIZE_MAX;
    BitVec witness;
    uint64_t trials_run = 0;
};

namespace detail {

inline void isd_trial(const AffineSpace& space, const WeightMetric& wm, Rng& rng,
                      std::vector<BitVec>& work, std::vector<size_t>& perm,
                      const IsdOptions& opt, IsdResult& best,
                      const std::function<void(const BitVec&, size_t)>& sink) {
    size_t m = space.basis.size();
    work.assign(space.basis.begin(), space.basis.end());
    // random column order
    for (size_t i = perm.size(); i-- > 1;) std::swap(perm[i], perm[rng.below(i + 1)]);
    // eliminate
    size_t r = 0;
    std::vector<std::pair<size_t, size_t>> pivots;  // (col, row)
    for (size_t ci = 0; ci < perm.size() && r < m; ++ci) {
        size_t c = perm[ci];
        size_t sel = r;
        while (sel < m && !work[sel].get(c)) ++sel;
        if (sel == m) continue;
        std::swap(work[r], work[sel]);
        for (size_t k = 0; k < m; ++k)
            if (k != r && work[k].get(c)) work[k] ^= work[r];
        pivots.push_back({c, r});
        ++r;
    }
    BitVec cand = space.origin;
    for (auto [c, row] : pivots)
        if (cand.get(c)) cand ^= work[row];

    auto consider = [&](const BitVec& v) {
        size_t w = wm.eval(v);
        if (w < best.best_weight) {
            best.best_weight = w;
            best.witness = v;
        }
        if (sink && opt.collect_cap && w <= opt.collect_cap) sink(v, w);
    };
    consider(cand);
    BitVec tmp = cand;
    for (size_t i = 0; i < m; ++i) {
        tmp = cand;
        tmp ^= work[i];
        consider(tmp);
    }
    if (opt.full_order2) {
        BitVec t2 = cand;
        for (size_t i = 0; i < m; ++i) {
            t2 = cand;
            t2 ^= work[i];
            for (size_t j = i + 1; j < m; ++j) {
                tmp = t2;
                tmp ^= work[j];
                consider(tmp);
            }
        }
    } else {
        for (int s = 0; s < opt.order2_samples && m >= 2; ++s) {
            size_t i = rng.below(m), j = rng.below(m);
            if (i == j) continue;
            tmp = cand;
            tmp ^= work[i];
            tmp ^= work[j];
            consider(tmp);
        }
    }
}

}  // namespace detail

// Runs opt.trials randomized trials; sink (optional) receives collected
// candidates (weight <= collect_cap) and may be called with duplicates.
inline IsdResult isd_min_weight(const AffineSpace& space, const WeightMetric& wm, Rng& rng,
                                const IsdOptions& opt,
                                const std::function<void(const BitVec&, size_t)>& sink = nullptr) {
    int nthreads = std::max(1, opt.threads);
    if (nthreads == 1 || sink) {
        IsdResult best;
        best.witness = BitVec(space.cols);
        std::vector<BitVec> work;
        std::vector<size_t> perm(space.cols);
        std::iota(perm.begin(), perm.end(), 0);
        for (uint64_t t = 0; t < opt.trials; ++t)
            detail::isd_trial(space, wm, rng, work, perm, opt, best, sink);
        best.trials_run = opt.trials;
        return best;
    }
    std::vector<IsdResult> results(nthreads);
    std::vector<std::thread> pool;
    for (int ti = 0; ti < nthreads; ++ti) {
        Rng child = rng.spawn(ti);
        pool.emplace_back([&, ti, child]() mutable {
            IsdResult best;
            best.witness = BitVec(space.cols);
            std::vector<BitVec> work;
            std::vector<size_t> perm(space.cols);
            std::iota(perm.begin(), perm.end(), 0);
            uint64_t share = opt.trials / nthreads + (uint64_t(ti) < opt.trials % nthreads ? 1 : 0);
            for (uint64_t t = 0; t < share; ++t)
                detail::isd_trial(space, wm, child, work, perm, opt, best, nullptr);
            best.trials_run = share;
            results[ti] = best;
        });
    }
    for (auto& th : pool) th.join();
    IsdResult best = results[0];
    for (int ti = 1; ti < nthreads; ++ti) {
        best.trials_run += results[ti].trials_run;
        if (results[ti].best_weight < best.best_weight) {
            best.best_weight = results[ti].best_weight;
            best.witness = results[ti].witness;
        }
    }
    return best;
}

// Solution set of K v = rhs as an affine space (origin + kernel basis).
inline std::optional<AffineSpace> solve_affine(const F2Mat& K, const BitVec& rhs) {
    auto origin = K.solve(rhs);
    if (!origin) return std::nullopt;
    AffineSpace s;
    s.origin = *origin;
    s.basis = K.nullspace();
    s.cols = K.cols();
    return s;
}

}  // namespace bicycle
