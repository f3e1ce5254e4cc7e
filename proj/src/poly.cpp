#include "cff/poly.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace cff {

const Field* common_field(const Field* a, const Field* b) {
    if (!a) return b;
    if (!b) return a;
    return a->size() >= b->size() ? a : b;
}

Poly Poly::monomial(const Field* F, Elem c, std::size_t k) {
    if (!c) return Poly(F);
    std::vector<Elem> v(k + 1, 0);
    v[k] = c;
    return Poly(F, std::move(v));
}

void Poly::set(std::size_t i, Elem v) {
    if (i >= c_.size()) {
        if (!v) return;
        c_.resize(i + 1, 0);
    }
    c_[i] = v;
    trim();
}

Poly Poly::operator+(const Poly& o) const {
    const Field* F = common_field(F_, o.F_);
    std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = F->add((*this)[i], o[i]);
    return Poly(F, std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
    const Field* F = common_field(F_, o.F_);
    std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = F->sub((*this)[i], o[i]);
    return Poly(F, std::move(r));
}

Poly Poly::operator-() const {
    std::vector<Elem> r(c_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = F_->neg(c_[i]);
    return Poly(F_, std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
    const Field* F = common_field(F_, o.F_);
    if (c_.empty() || o.c_.empty()) return Poly(F);
    const size_t n = c_.size(), m = o.c_.size();
    if (F->is_prime()) {
        const std::uint64_t p = F->characteristic();
        std::vector<std::uint64_t> acc(n + m - 1, 0);
        // products are < 2^32; flush every 2^31 terms is never reached here
        for (size_t i = 0; i < n; ++i) {
            const std::uint64_t a = c_[i];
            if (!a) continue;
            std::uint64_t* row = acc.data() + i;
            for (size_t j = 0; j < m; ++j) row[j] += a * o.c_[j];
        }
        std::vector<Elem> r(acc.size());
        for (size_t k = 0; k < r.size(); ++k) r[k] = static_cast<Elem>(acc[k] % p);
        return Poly(F, std::move(r));
    }
    std::vector<Elem> r(n + m - 1, 0);
    for (size_t i = 0; i < n; ++i) {
        if (!c_[i]) continue;
        for (size_t j = 0; j < m; ++j)
            if (o.c_[j]) r[i + j] = F->add(r[i + j], F->mul(c_[i], o.c_[j]));
    }
    return Poly(F, std::move(r));
}

Poly Poly::scaled(Elem s) const {
    if (!s) return Poly(F_);
    std::vector<Elem> r(c_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = F_->mul(c_[i], s);
    return Poly(F_, std::move(r));
}

Poly Poly::monic() const {
    if (c_.empty() || c_.back() == 1) return *this;
    return scaled(F_->inv(c_.back()));
}

Poly Poly::shifted(std::size_t k) const {
    if (c_.empty()) return *this;
    std::vector<Elem> r(k, 0);
    r.insert(r.end(), c_.begin(), c_.end());
    return Poly(F_, std::move(r));
}

Poly Poly::truncated(std::size_t n) const {
    if (c_.size() <= n) return *this;
    return Poly(F_, std::vector<Elem>(c_.begin(), c_.begin() + n));
}

Poly Poly::pow(std::uint64_t e) const {
    Poly r = one(F_), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

Poly Poly::subs_power(std::uint64_t k) const {
    if (c_.empty() || k == 1) return *this;
    if (k == 0) {
        Elem s = 0;
        for (Elem c : c_) s = F_->add(s, c);
        return constant(F_, s);
    }
    std::vector<Elem> r((c_.size() - 1) * k + 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) r[i * k] = c_[i];
    return Poly(F_, std::move(r));
}

Poly Poly::map_coeffs_frob() const {
    std::vector<Elem> r(c_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = F_->frob(c_[i]);
    return Poly(F_, std::move(r));
}

Poly Poly::with_field(const Field* G) const { return Poly(G, c_); }

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly(F_);
    std::vector<Elem> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = F_->mul(F_->from_int(static_cast<std::int64_t>(i)), c_[i]);
    return Poly(F_, std::move(r));
}

Elem Poly::eval_in(const Field& G, Elem x) const {
    Elem r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = G.add(G.mul(r, x), c_[i]);
    return r;
}

std::string Poly::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::string out;
    for (size_t i = c_.size(); i-- > 0;) {
        Elem c = c_[i];
        if (!c) continue;
        if (!out.empty()) out += "+";
        std::string cs = F_->elem_to_string(c);
        if (i == 0) {
            out += cs;
            continue;
        }
        if (c != 1) out += cs + "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const Field* F = common_field(a.field(), b.field());
    if (a.deg() < b.deg()) return {Poly(F), a};
    std::vector<Elem> r = a.coeffs();
    const size_t db = static_cast<size_t>(b.deg());
    std::vector<Elem> q(r.size() - db, 0);
    const Elem li = F->inv(b.lead());
    const auto& bc = b.coeffs();
    for (size_t k = r.size(); k-- > db;) {
        Elem c = r[k];
        if (!c) continue;
        if (li != 1) c = F->mul(c, li);
        q[k - db] = c;
        for (size_t j = 0; j <= db; ++j)
            if (bc[j]) r[k - db + j] = F->sub(r[k - db + j], F->mul(c, bc[j]));
    }
    r.resize(db);
    return {Poly(F, std::move(q)), Poly(F, std::move(r))};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

bool divides(const Poly& a, const Poly& b) { return (b % a).is_zero(); }

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.field());
    return (a / gcd(a, b) * b).monic();
}

ExtGcd ext_gcd(const Poly& a, const Poly& b) {
    const Field* F = common_field(a.field(), b.field());
    Poly r0 = a, r1 = b, s0 = Poly::one(F), s1(F), t0(F), t1 = Poly::one(F);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Elem li = F->inv(r0.lead());
    return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

Poly powmod(const Poly& a, std::uint64_t e, const Poly& m) {
    Poly r = Poly::one(m.field()) % m, b = a % m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        e >>= 1;
        if (e) b = mulmod(b, b, m);
    }
    return r;
}

Poly invmod(const Poly& a, const Poly& m) {
    auto g = ext_gcd(a % m, m);
    if (!g.g.is_one()) throw std::domain_error("polynomial not invertible modulo m");
    return g.s % m;
}

bool is_irreducible(const Poly& f) {
    if (f.deg() <= 0) return false;
    if (f.deg() == 1) return true;
    const Field* F = f.field();
    const Poly x = Poly::var(F);
    Poly xp = x;
    for (std::int64_t i = 1; i <= f.deg() / 2; ++i) {
        xp = powmod(xp, F->size(), f);
        if (!gcd(f, xp - x).is_one()) return false;
    }
    return true;
}

int valuation(const Poly& a, const Poly& P, Poly* unit) {
    if (a.is_zero()) throw std::domain_error("valuation of zero");
    int v = 0;
    Poly x = a;
    for (;;) {
        auto [q, r] = divmod(x, P);
        if (!r.is_zero()) break;
        x = std::move(q);
        ++v;
    }
    if (unit) *unit = x;
    return v;
}

bool poly_less(const Poly& a, const Poly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg();
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

std::vector<Poly> monic_of_degree(const Field* F, int n) {
    std::vector<Poly> out;
    if (n < 0) return out;
    const std::uint64_t q = F->size();
    std::uint64_t count = 1;
    for (int i = 0; i < n; ++i) count *= q;
    out.reserve(count);
    std::vector<Elem> c(n + 1, 0);
    c[n] = 1;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::uint64_t t = idx;
        for (int i = 0; i < n; ++i) {
            c[i] = static_cast<Elem>(t % q);
            t /= q;
        }
        out.emplace_back(F, c);
    }
    return out;
}

std::vector<Poly> monic_irreducibles_up_to(const Field* F, int n) {
    std::vector<Poly> out;
    for (int k = 1; k <= n; ++k)
        for (auto& f : monic_of_degree(F, k))
            if (is_irreducible(f)) out.push_back(f);
    return out;
}

Poly parse_poly(const std::string& text, const Field* F, char var) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty polynomial");
    Poly result(F);
    size_t i = 0;
    bool first = true;
    while (i < s.size()) {
        bool negative = false;
        if (s[i] == '+' || s[i] == '-') {
            negative = s[i] == '-';
            ++i;
        } else if (!first) {
            throw std::invalid_argument("expected + or - in polynomial: " + text);
        }
        first = false;
        size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string term = s.substr(i, j - i);
        i = j;
        if (term.empty()) throw std::invalid_argument("empty term in polynomial: " + text);
        Elem coef = 1;
        std::uint64_t power = 0;
        size_t vpos = term.find(var);
        std::string cpart = vpos == std::string::npos ? term : term.substr(0, vpos);
        if (!cpart.empty() && cpart.back() == '*') cpart.pop_back();
        if (!cpart.empty()) coef = F->parse_elem(cpart);
        if (vpos != std::string::npos) {
            std::string rest = term.substr(vpos + 1);
            power = 1;
            if (!rest.empty()) {
                if (rest[0] != '^' || rest.size() < 2) throw std::invalid_argument("bad exponent in term: " + term);
                for (size_t k = 1; k < rest.size(); ++k)
                    if (!std::isdigit(static_cast<unsigned char>(rest[k])))
                        throw std::invalid_argument("bad exponent in term: " + term);
                power = std::stoull(rest.substr(1));
            }
        }
        if (negative) coef = F->neg(coef);
        result += Poly::monomial(F, coef, power);
    }
    return result;
}

}  // namespace cff
