#pragma once

#include <cctype>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bicycle {

// Dimensions of the torus of unit cells. gross = (12,6), two-gross = (12,12).
struct TorusParams {
    int ell = 0;
    int m = 0;
    bool operator==(const TorusParams& o) const { return ell == o.ell && m == o.m; }
    bool operator!=(const TorusParams& o) const { return !(*this == o); }
    int cells() const { return ell * m; }
};

inline const TorusParams kGross{12, 6};
inline const TorusParams kTwoGross{12, 12};

// x^i y^j with canonical exponents 0 <= i < ell, 0 <= j < m.
struct Monomial {
    int i = 0;
    int j = 0;
    static Monomial make(int i, int j, const TorusParams& tp) {
        Monomial r;
        r.i = ((i % tp.ell) + tp.ell) % tp.ell;
        r.j = ((j % tp.m) + tp.m) % tp.m;
        return r;
    }
    bool operator==(const Monomial& o) const { return i == o.i && j == o.j; }
    bool operator<(const Monomial& o) const { return i != o.i ? i < o.i : j < o.j; }
};

inline Monomial mul(const Monomial& a, const Monomial& b, const TorusParams& tp) {
    return Monomial::make(a.i + b.i, a.j + b.j, tp);
}
inline Monomial transpose(const Monomial& a, const TorusParams& tp) {
    return Monomial::make(-a.i, -a.j, tp);
}

inline std::string to_string(const Monomial& a) {
    if (a.i == 0 && a.j == 0) return "1";
    std::ostringstream os;
    if (a.i == 1) os << "x";
    else if (a.i != 0) os << "x^" << a.i;
    if (a.j == 1) os << "y";
    else if (a.j != 0) os << "y^" << a.j;
    return os.str();
}

// Element of F2[x,y]/(x^ell-1, y^m-1): a set of coefficient-1 monomials.
// Terms are kept sorted by (i, j); addition is symmetric difference.
class BivariatePoly {
  public:
    BivariatePoly() = default;
    explicit BivariatePoly(const TorusParams& tp) : tp_(tp) {}
    BivariatePoly(const TorusParams& tp, std::vector<Monomial> terms) : tp_(tp) {
        for (auto& t : terms) add_term(t);
    }

    const TorusParams& params() const { return tp_; }
    const std::vector<Monomial>& terms() const { return terms_; }
    size_t weight() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Monomial& t_raw) {  // XOR semantics
        Monomial t = Monomial::make(t_raw.i, t_raw.j, tp_);
        auto it = std::lower_bound(terms_.begin(), terms_.end(), t);
        if (it != terms_.end() && *it == t) terms_.erase(it);
        else terms_.insert(it, t);
    }

    bool has_term(const Monomial& t_raw) const {
        Monomial t = Monomial::make(t_raw.i, t_raw.j, tp_);
        auto it = std::lower_bound(terms_.begin(), terms_.end(), t);
        return it != terms_.end() && *it == t;
    }

    bool operator==(const BivariatePoly& o) const { return tp_ == o.tp_ && terms_ == o.terms_; }

  private:
    TorusParams tp_;
    std::vector<Monomial> terms_;
};

inline void require_same_torus(const BivariatePoly& a, const BivariatePoly& b) {
    if (a.params() != b.params())
        throw std::invalid_argument("polynomials live on different tori");
}

inline BivariatePoly add(const BivariatePoly& a, const BivariatePoly& b) {
    require_same_torus(a, b);
    BivariatePoly r = a;
    for (const auto& t : b.terms()) r.add_term(t);
    return r;
}

inline BivariatePoly mul(const BivariatePoly& a, const BivariatePoly& b) {
    require_same_torus(a, b);
    BivariatePoly r(a.params());
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms()) r.add_term(mul(ta, tb, a.params()));
    return r;
}

inline BivariatePoly mul(const Monomial& a, const BivariatePoly& b) {
    BivariatePoly r(b.params());
    for (const auto& tb : b.terms()) r.add_term(mul(a, tb, b.params()));
    return r;
}

inline BivariatePoly transpose(const BivariatePoly& a) {
    BivariatePoly r(a.params());
    for (const auto& t : a.terms()) r.add_term(transpose(t, a.params()));
    return r;
}

// True iff the constant monomial 1 is a term; the commutation membership test.
inline bool contains_one(const BivariatePoly& a) { return a.has_term(Monomial{0, 0}); }

inline std::string to_string(const BivariatePoly& a) {
    if (a.is_zero()) return "0";
    std::string s;
    for (size_t k = 0; k < a.terms().size(); ++k) {
        if (k) s += "+";
        s += to_string(a.terms()[k]);
    }
    return s;
}

// Parses the paper's polynomial notation, e.g. "1+x+x^-1*y^-3".
// Terms separated by '+'; each term a product (with '*' or juxtaposition) of
// 'x^e' / 'y^e' factors with optional integer exponents, or '1'.
inline BivariatePoly parse_poly(const std::string& text, const TorusParams& tp) {
    BivariatePoly out(tp);
    size_t pos = 0;
    auto skip_ws = [&] { while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos; };
    auto parse_int = [&]() -> int {
        skip_ws();
        bool neg = false;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) neg = text[pos++] == '-';
        if (pos >= text.size() || !std::isdigit((unsigned char)text[pos]))
            throw std::invalid_argument("bad exponent in polynomial literal: " + text);
        long v = 0;
        while (pos < text.size() && std::isdigit((unsigned char)text[pos])) v = v * 10 + (text[pos++] - '0');
        return int(neg ? -v : v);
    };
    while (true) {
        skip_ws();
        int ei = 0, ej = 0;
        bool saw_factor = false;
        while (pos < text.size()) {
            skip_ws();
            if (pos >= text.size()) break;
            char c = text[pos];
            if (c == '1') {
                ++pos;
                saw_factor = true;
            } else if (c == 'x' || c == 'y') {
                ++pos;
                int e = 1;
                skip_ws();
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    e = parse_int();
                }
                (c == 'x' ? ei : ej) += e;
                saw_factor = true;
            } else if (c == '*') {
                ++pos;
                continue;
            } else {
                break;
            }
        }
        if (!saw_factor) throw std::invalid_argument("empty term in polynomial literal: " + text);
        out.add_term(Monomial::make(ei, ej, tp));
        skip_ws();
        if (pos >= text.size()) break;
        if (text[pos] != '+') throw std::invalid_argument("unexpected character in polynomial literal: " + text);
        ++pos;
    }
    return out;
}

}  // namespace bicycle
