#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bicycle {

// Dense bit-vector over F2, packed into 64-bit words.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(size_t nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    size_t size() const { return nbits_; }
    size_t words() const { return w_.size(); }
    uint64_t word(size_t i) const { return w_[i]; }
    uint64_t& word(size_t i) { return w_[i]; }

    bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i, bool v) {
        uint64_t m = uint64_t(1) << (i & 63);
        if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }
    void flip(size_t i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }

    void clear() { std::fill(w_.begin(), w_.end(), 0); }

    void operator^=(const BitVec& o) {
        assert(o.nbits_ == nbits_);
        for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    }

    bool any() const {
        for (uint64_t x : w_) if (x) return true;
        return false;
    }

    size_t popcount() const {
        size_t c = 0;
        for (uint64_t x : w_) c += std::popcount(x);
        return c;
    }

    // parity of <this, o> over F2
    bool dot(const BitVec& o) const {
        assert(o.nbits_ == nbits_);
        uint64_t acc = 0;
        for (size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
        return std::popcount(acc) & 1;
    }

    bool operator==(const BitVec& o) const { return nbits_ == o.nbits_ && w_ == o.w_; }
    bool operator<(const BitVec& o) const {  // lexicographic by bit index
        assert(nbits_ == o.nbits_);
        for (size_t i = 0; i < w_.size(); ++i) {
            if (w_[i] != o.w_[i]) {
                // lowest differing bit decides; the vector with that bit set is larger
                uint64_t d = w_[i] ^ o.w_[i];
                uint64_t low = d & (~d + 1);
                return !(w_[i] & low);
            }
        }
        return false;
    }

    std::vector<size_t> ones() const {
        std::vector<size_t> r;
        for (size_t wi = 0; wi < w_.size(); ++wi) {
            uint64_t x = w_[wi];
            while (x) {
                r.push_back(wi * 64 + std::countr_zero(x));
                x &= x - 1;
            }
        }
        return r;
    }

  private:
    size_t nbits_ = 0;
    std::vector<uint64_t> w_;
};

// Row-major bit matrix with in-place elimination.
class F2Mat {
  public:
    F2Mat() = default;
    F2Mat(size_t rows, size_t cols) : cols_(cols), rows_(rows, BitVec(cols)) {}

    size_t rows() const { return rows_.size(); }
    size_t cols() const { return cols_; }
    BitVec& row(size_t r) { return rows_[r]; }
    const BitVec& row(size_t r) const { return rows_[r]; }
    void add_row(const BitVec& v) {
        assert(v.size() == cols_ || cols_ == 0);
        if (cols_ == 0) cols_ = v.size();
        rows_.push_back(v);
    }

    bool get(size_t r, size_t c) const { return rows_[r].get(c); }
    void set(size_t r, size_t c, bool v) { rows_[r].set(c, v); }

    // In-place row reduction. Returns pivot columns (in order). If col_order is
    // given, columns are considered for pivots in that order.
    std::vector<size_t> rref(const std::vector<size_t>* col_order = nullptr) {
        std::vector<size_t> pivots;
        size_t r = 0;
        size_t nc = cols_;
        for (size_t ci = 0; ci < nc && r < rows_.size(); ++ci) {
            size_t c = col_order ? (*col_order)[ci] : ci;
            size_t sel = r;
            while (sel < rows_.size() && !rows_[sel].get(c)) ++sel;
            if (sel == rows_.size()) continue;
            std::swap(rows_[r], rows_[sel]);
            for (size_t k = 0; k < rows_.size(); ++k)
                if (k != r && rows_[k].get(c)) rows_[k] ^= rows_[r];
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    size_t rank() const {
        F2Mat tmp = *this;
        return tmp.rref().size();
    }

    // Basis of {x : A x = 0} (kernel in the column space).
    std::vector<BitVec> nullspace() const {
        F2Mat tmp = *this;
        std::vector<size_t> pivots = tmp.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (size_t c : pivots) is_pivot[c] = true;
        std::vector<BitVec> basis;
        for (size_t c = 0; c < cols_; ++c) {
            if (is_pivot[c]) continue;
            BitVec v(cols_);
            v.set(c, true);
            for (size_t pi = 0; pi < pivots.size(); ++pi)
                if (tmp.rows_[pi].get(c)) v.set(pivots[pi], true);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    // One solution of A x = b, if any.
    std::optional<BitVec> solve(const BitVec& b) const {
        assert(b.size() == rows_.size());
        // Reduce the augmented system [A | b] by rows.
        F2Mat aug(rows_.size(), cols_ + 1);
        for (size_t r = 0; r < rows_.size(); ++r) {
            for (size_t w = 0; w < rows_[r].words(); ++w) aug.rows_[r].word(w) = rows_[r].word(w);
            // careful: widen, then set the last column bit
            aug.rows_[r].set(cols_, b.get(r));
        }
        size_t rr = 0;
        std::vector<size_t> pivots;
        for (size_t c = 0; c < cols_ && rr < aug.rows_.size(); ++c) {
            size_t sel = rr;
            while (sel < aug.rows_.size() && !aug.rows_[sel].get(c)) ++sel;
            if (sel == aug.rows_.size()) continue;
            std::swap(aug.rows_[rr], aug.rows_[sel]);
            for (size_t k = 0; k < aug.rows_.size(); ++k)
                if (k != rr && aug.rows_[k].get(c)) aug.rows_[k] ^= aug.rows_[rr];
            pivots.push_back(c);
            ++rr;
        }
        for (size_t r = rr; r < aug.rows_.size(); ++r)
            if (aug.rows_[r].get(cols_)) return std::nullopt;
        BitVec x(cols_);
        for (size_t pi = 0; pi < pivots.size(); ++pi)
            if (aug.rows_[pi].get(cols_)) x.set(pivots[pi], true);
        return x;
    }

    // Coefficients expressing b as a combination of this matrix's rows, if possible.
    std::optional<BitVec> express_in_rowspace(const BitVec& b) const {
        assert(b.size() == cols_);
        size_t m = rows_.size();
        // Augment each row with an identity tag, reduce, then reduce b.
        std::vector<BitVec> work;
        work.reserve(m);
        for (size_t r = 0; r < m; ++r) {
            BitVec v(cols_ + m);
            for (size_t w = 0; w < rows_[r].words(); ++w) v.word(w) = rows_[r].word(w);
            // re-set tail bits cleanly
            BitVec v2(cols_ + m);
            for (size_t c = 0; c < cols_; ++c) if (rows_[r].get(c)) v2.set(c, true);
            v2.set(cols_ + r, true);
            work.push_back(std::move(v2));
        }
        // eliminate
        size_t rr = 0;
        std::vector<std::pair<size_t, size_t>> pivots;  // (col,row)
        for (size_t c = 0; c < cols_ && rr < m; ++c) {
            size_t sel = rr;
            while (sel < m && !work[sel].get(c)) ++sel;
            if (sel == m) continue;
            std::swap(work[rr], work[sel]);
            for (size_t k = 0; k < m; ++k)
                if (k != rr && work[k].get(c)) work[k] ^= work[rr];
            pivots.push_back({c, rr});
            ++rr;
        }
        BitVec acc(cols_ + m);
        for (size_t c = 0; c < cols_; ++c) if (b.get(c)) acc.set(c, true);
        for (auto [c, r] : pivots)
            if (acc.get(c)) acc ^= work[r];
        for (size_t c = 0; c < cols_; ++c)
            if (acc.get(c)) return std::nullopt;
        BitVec coeff(m);
        for (size_t r = 0; r < m; ++r) if (acc.get(cols_ + r)) coeff.set(r, true);
        return coeff;
    }

  private:
    size_t cols_ = 0;
    std::vector<BitVec> rows_;
};

}  // namespace bicycle
