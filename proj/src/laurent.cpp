#include "cff/laurent.hpp"

#include <algorithm>
#include <stdexcept>

#include "cff/linalg.hpp"

namespace cff {

namespace {

std::int64_t clamp_prec(std::int64_t p) { return is_inf_prec(p) ? kInfPrec : p; }

const Field* larger(const Field* a, const Field* b) {
    if (!a) return b;
    if (!b) return a;
    return a->size() >= b->size() ? a : b;
}

}  // namespace

void Laurent::normalize() {
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead) {
        c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
        val_ += static_cast<std::int64_t>(lead);
    }
    if (!is_exact() && !c_.empty()) {
        std::int64_t keep = prec_ - val_;
        if (keep <= 0) c_.clear();
        else if (static_cast<std::int64_t>(c_.size()) > keep) c_.resize(static_cast<std::size_t>(keep));
    }
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
    if (c_.empty()) val_ = prec_;
}

Laurent Laurent::monomial(const Field* F, int ram, Elem c, std::int64_t e) {
    Laurent r(F, ram);
    if (c) {
        r.val_ = e;
        r.c_ = {c};
    }
    return r;
}

Laurent Laurent::from_poly(const Poly& a, int ram) {
    const Field* F = a.field();
    Laurent r(F, ram);
    if (a.is_zero()) return r;
    const std::int64_t n = a.deg();
    r.val_ = -ram * n;
    r.c_.assign(static_cast<std::size_t>(ram * n + 1), 0);
    const Elem m1 = F->neg(1);
    for (std::int64_t i = 0; i <= n; ++i) {
        Elem c = a[static_cast<std::size_t>(i)];
        if (ram > 1 && (i & 1)) c = F->mul(c, m1);   // T = -u^{-ram}
        r.c_[static_cast<std::size_t>(ram * (n - i))] = c;
    }
    r.normalize();
    return r;
}

Laurent Laurent::from_ratfunc(const RatFunc& x, int ram, std::int64_t prec) {
    Laurent n = from_poly(x.num(), ram);
    if (x.is_poly()) return n.truncated(prec);
    return n.div(from_poly(x.den(), ram), prec).truncated(prec);
}

Elem Laurent::coeff(std::int64_t e) const {
    if (e < val_) return 0;
    std::int64_t i = e - val_;
    return i < static_cast<std::int64_t>(c_.size()) ? c_[static_cast<std::size_t>(i)] : 0;
}

Laurent Laurent::operator+(const Laurent& o) const {
    const Field* G = larger(F_, o.F_);
    Laurent r(G, std::max(ram_, o.ram_), std::min(prec_, o.prec_));
    if (is_zero() && o.is_zero()) return r;
    std::int64_t lo = std::min(is_zero() ? o.val_ : val_, o.is_zero() ? val_ : o.val_);
    std::int64_t hi = std::max(is_zero() ? lo - 1 : top(), o.is_zero() ? lo - 1 : o.top());
    if (!r.is_exact()) hi = std::min(hi, r.prec_ - 1);
    if (hi < lo) return r;
    r.val_ = lo;
    r.c_.assign(static_cast<std::size_t>(hi - lo + 1), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        std::int64_t e = val_ + static_cast<std::int64_t>(i);
        if (e > hi) break;
        r.c_[static_cast<std::size_t>(e - lo)] = c_[i];
    }
    for (std::size_t i = 0; i < o.c_.size(); ++i) {
        std::int64_t e = o.val_ + static_cast<std::int64_t>(i);
        if (e > hi) break;
        Elem& t = r.c_[static_cast<std::size_t>(e - lo)];
        t = G->add(t, o.c_[i]);
    }
    r.normalize();
    return r;
}

Laurent Laurent::operator-() const {
    Laurent r = *this;
    for (auto& x : r.c_) x = F_->neg(x);
    return r;
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + (-o); }

Laurent Laurent::operator*(const Laurent& o) const {
    const Field* G = larger(F_, o.F_);
    std::int64_t va = val(), vb = o.val();
    std::int64_t p = clamp_prec(std::min(clamp_prec(prec_ + vb), clamp_prec(o.prec_ + va)));
    if (is_exact() && o.is_exact()) p = kInfPrec;
    Laurent r(G, std::max(ram_, o.ram_), p);
    if (is_zero() || o.is_zero()) return r;
    std::int64_t lo = va + vb;
    std::int64_t hi = top() + o.top();
    if (!r.is_exact()) hi = std::min(hi, p - 1);
    if (hi < lo) return r;
    const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
    r.val_ = lo;
    if (G->is_prime()) {
        const std::uint64_t pp = G->size();
        std::vector<std::uint64_t> acc(n, 0);
        for (std::size_t i = 0; i < c_.size() && i < n; ++i) {
            if (!c_[i]) continue;
            const std::uint64_t a = c_[i];
            const std::size_t lim = std::min(o.c_.size(), n - i);
            for (std::size_t j = 0; j < lim; ++j) acc[i + j] += a * o.c_[j];
            if ((i & 1023) == 1023)
                for (auto& x : acc) x %= pp;
        }
        r.c_.resize(n);
        for (std::size_t k = 0; k < n; ++k) r.c_[k] = static_cast<Elem>(acc[k] % pp);
    } else {
        r.c_.assign(n, 0);
        for (std::size_t i = 0; i < c_.size() && i < n; ++i) {
            if (!c_[i]) continue;
            const std::size_t lim = std::min(o.c_.size(), n - i);
            for (std::size_t j = 0; j < lim; ++j)
                if (o.c_[j]) r.c_[i + j] = G->add(r.c_[i + j], G->mul(c_[i], o.c_[j]));
        }
    }
    r.normalize();
    return r;
}

Laurent Laurent::scaled(Elem s) const {
    Laurent r = *this;
    if (s == 0) {
        r.c_.clear();
        r.normalize();
        return r;
    }
    for (auto& x : r.c_) x = F_->mul(x, s);
    return r;
}

Laurent Laurent::shifted(std::int64_t k) const {
    Laurent r = *this;
    r.val_ += k;
    r.prec_ = clamp_prec(r.prec_ + (r.is_exact() ? 0 : k));
    if (r.c_.empty()) r.val_ = r.prec_;
    return r;
}

Laurent Laurent::truncated(std::int64_t p) const {
    Laurent r = *this;
    r.prec_ = std::min(prec_, p);
    r.normalize();
    return r;
}

Laurent Laurent::inv(std::int64_t target) const {
    if (is_zero()) throw std::domain_error("inverse of a series with no known nonzero coefficient");
    const std::int64_t v = val_;
    std::int64_t p = is_exact() ? target : std::min(prec_ - 2 * v, target);
    if (is_exact() && c_.size() == 1) return monomial(F_, ram_, F_->inv(c_[0]), -v);
    if (is_inf_prec(p)) throw std::invalid_argument("inverse of an exact non-monomial needs a target precision");
    Laurent r(F_, ram_, p);
    if (p <= -v) return r;
    const std::size_t n = static_cast<std::size_t>(p + v);
    r.val_ = -v;
    r.c_.assign(n, 0);
    const Elem c0i = F_->inv(c_[0]);
    r.c_[0] = c0i;
    for (std::size_t k = 1; k < n; ++k) {
        Elem s = 0;
        const std::size_t lim = std::min(k, c_.size() - 1);
        for (std::size_t j = 1; j <= lim; ++j)
            if (c_[j] && r.c_[k - j]) s = F_->add(s, F_->mul(c_[j], r.c_[k - j]));
        r.c_[k] = F_->neg(F_->mul(s, c0i));
    }
    r.normalize();
    return r;
}

Laurent Laurent::pow(std::uint64_t n) const {
    Laurent result = monomial(F_, ram_, 1, 0);
    Laurent base = *this;
    while (n) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

Laurent Laurent::qpow(std::uint64_t q) const {
    Laurent r(F_, ram_, is_exact() ? kInfPrec : clamp_prec(prec_ * static_cast<std::int64_t>(q)));
    if (is_zero()) return r;
    const std::int64_t qq = static_cast<std::int64_t>(q);
    r.val_ = val_ * qq;
    std::size_t n = (c_.size() - 1) * q + 1;
    if (!r.is_exact()) n = std::min<std::size_t>(n, static_cast<std::size_t>(std::max<std::int64_t>(0, r.prec_ - r.val_)));
    r.c_.assign(n, 0);
    const bool fixed = F_->size() == q;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        std::size_t k = i * q;
        if (k >= n) break;
        r.c_[k] = fixed ? c_[i] : F_->pow(c_[i], q);
    }
    r.normalize();
    return r;
}

Laurent Laurent::with_field(const Field* G) const {
    Laurent r = *this;
    r.F_ = G;
    return r;
}

Laurent Laurent::from_coeffs(const Field* F, int ram, std::int64_t val, std::vector<Elem> c, std::int64_t prec) {
    Laurent r(F, ram, prec);
    r.val_ = val;
    r.c_ = std::move(c);
    r.normalize();
    return r;
}

Laurent Laurent::map_coeffs_frob() const {
    Laurent r = *this;
    for (auto& c : r.c_) c = F_->frob(c);
    return r;
}

Laurent Laurent::to_ramified(int rr) const {
    if (ram_ != 1) throw std::logic_error("to_ramified expects an element of k_inf");
    if (rr == 1) return *this;
    Laurent r(F_, rr, is_exact() ? kInfPrec : clamp_prec(prec_ * rr));
    if (is_zero()) return r;
    r.val_ = val_ * rr;
    r.c_.assign((c_.size() - 1) * static_cast<std::size_t>(rr) + 1, 0);
    const Elem m1 = F_->neg(1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        std::int64_t e = val_ + static_cast<std::int64_t>(i);
        r.c_[i * static_cast<std::size_t>(rr)] = (e & 1) ? F_->mul(c_[i], m1) : c_[i];
    }
    r.normalize();
    return r;
}

Poly Laurent::poly_part() const {
    if (ram_ != 1) throw std::logic_error("poly_part expects ram = 1");
    if (prec_ <= 0) throw std::domain_error("polynomial part not determined at this precision");
    Poly out(F_);
    if (is_zero() || val_ > 0) return out;
    std::vector<Elem> c(static_cast<std::size_t>(-val_ + 1), 0);
    for (std::int64_t e = val_; e <= 0; ++e) c[static_cast<std::size_t>(-e)] = coeff(e);
    return Poly(F_, c);
}

std::vector<Laurent> Laurent::components() const {
    const int r = ram_;
    std::vector<Laurent> out;
    for (int j = 0; j < r; ++j) {
        std::int64_t cp = kInfPrec;
        if (!is_exact()) {
            // exponent e = r s - j is known iff e < prec
            std::int64_t num = prec_ + j - 1;
            std::int64_t fl = num >= 0 ? num / r : -((-num + r - 1) / r);
            cp = fl + 1;
        }
        out.emplace_back(F_, 1, cp);
    }
    if (r == 1) {
        out[0] = *this;
        out[0].ram_ = 1;
        return out;
    }
    const Elem m1 = F_->neg(1);
    std::vector<std::vector<std::pair<std::int64_t, Elem>>> buckets(r);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        std::int64_t e = val_ + static_cast<std::int64_t>(i);
        // u^e = Y^{-e}, -e = r t + j
        std::int64_t me = -e;
        std::int64_t t = me >= 0 ? me / r : -((-me + r - 1) / r);
        int j = static_cast<int>(me - r * t);
        Elem c = (t & 1) ? F_->mul(c_[i], m1) : c_[i];
        buckets[j].push_back({-t, c});   // (-1)^t T^t = (-1)^t u1^{-t}
    }
    for (int j = 0; j < r; ++j) {
        Laurent acc = out[j];
        for (auto [s, c] : buckets[j]) acc = acc + monomial(F_, 1, c, s);
        out[j] = acc;
    }
    return out;
}

std::string Laurent::to_string(int max_terms) const {
    // u = 1/T unramified, otherwise the uniformizer of the ramified extension
    const std::string var = ram_ == 1 ? "(1/T)" : "u";
    std::string s;
    int shown = 0;
    bool cut = false;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        if (shown == max_terms) {
            cut = true;
            break;
        }
        const std::int64_t e = val_ + static_cast<std::int64_t>(i);
        const std::string coeff = c_[i] == 1 ? "" : F_->elem_to_string(c_[i]);
        std::string term;
        if (e == 0) term = coeff.empty() ? "1" : coeff;
        else term = (coeff.empty() ? "" : coeff + "*") + var + (e == 1 ? "" : "^" + std::to_string(e));
        if (!s.empty()) s += " + ";
        s += term;
        ++shown;
    }
    if (s.empty()) s = "0";
    if (cut) s += " + ...";
    if (!is_exact()) s += " + O(" + var + "^" + std::to_string(prec_) + ")";
    return s;
}

Agreement compare(const Laurent& a, const Laurent& b) {
    Agreement g;
    g.overlap = std::min(a.prec(), b.prec());
    if (is_inf_prec(g.overlap)) g.overlap = std::max(a.top(), b.top()) + 1;
    std::int64_t lo = std::min(a.val(), b.val());
    g.equal = true;
    for (std::int64_t e = lo; e < g.overlap; ++e) {
        if (a.coeff(e) != b.coeff(e)) {
            g.equal = false;
            g.first_difference = e;
            break;
        }
    }
    return g;
}

Laurent pi_bar(const Field* Fq, std::int64_t prec) {
    const std::int64_t q = Fq->size();
    const int r = static_cast<int>(q - 1);
    Laurent out(Fq, r, prec);
    std::int64_t len = prec + q;   // coefficients of u^{-q + i}, i < len
    if (len <= 0) return out;
    std::vector<Elem> s(static_cast<std::size_t>(len), 0);
    s[0] = 1;
    for (std::int64_t qn = q;; qn *= q) {
        std::int64_t e = r * (qn - 1);
        if (e >= len) break;
        for (std::int64_t i = e; i < len; ++i)
            s[static_cast<std::size_t>(i)] = Fq->add(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(i - e)]);
    }
    for (std::int64_t i = 0; i < len; ++i)
        if (s[static_cast<std::size_t>(i)]) out += Laurent::monomial(Fq, r, s[static_cast<std::size_t>(i)], i - q).truncated(prec);
    return out;
}

RatFunc pade_recognize(const Laurent& s, int deg_num, int deg_den, int guard) {
    if (s.ram() != 1) throw std::invalid_argument("pade_recognize expects a series in 1/T");
    const Field* F = s.field();
    const std::int64_t p = s.prec();
    for (int dd = 0; dd <= deg_den; ++dd) {
        // unknowns b_0..b_{dd-1}, b_dd = 1; coefficient of u^e in s b is sum_j b_j s_{e+j}
        std::vector<std::int64_t> rows;
        std::int64_t lo = s.val() - dd;
        for (std::int64_t e = lo; e <= -deg_num - 1; ++e) rows.push_back(e);
        std::int64_t hi = is_inf_prec(p) ? s.top() + deg_den + guard + 1 : p - dd;
        for (std::int64_t e = 1; e < hi; ++e) rows.push_back(e);
        if (static_cast<std::int64_t>(rows.size()) < dd + guard) {
            throw std::runtime_error("pade_recognize: not enough known coefficients");
        }
        Mat A(rows.size(), std::vector<Elem>(static_cast<std::size_t>(dd), 0));
        std::vector<Elem> rhs(rows.size(), 0);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            for (int j = 0; j < dd; ++j) A[i][static_cast<std::size_t>(j)] = s.coeff(rows[i] + j);
            rhs[i] = F->neg(s.coeff(rows[i] + dd));
        }
        auto sol = dd == 0 ? std::optional<std::vector<Elem>>(std::vector<Elem>{}) : solve(*F, A, rhs);
        if (dd == 0) {
            bool ok = true;
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (rhs[i]) ok = false;
            if (!ok) continue;
        }
        if (!sol) continue;
        std::vector<Elem> bc = *sol;
        bc.push_back(1);
        Poly b(F, bc);
        Laurent sb = s * Laurent::from_poly(b, 1);
        Poly a = sb.poly_part();
        if (a.deg() > deg_num) continue;
        return RatFunc(a, b);
    }
    throw std::runtime_error("pade_recognize: no approximant within the degree bounds");
}

}  // namespace cff
