#include "cff/ratfunc.hpp"

#include <stdexcept>

namespace cff {

RatFunc::RatFunc(const Poly& n, const Poly& d) {
    if (d.is_zero()) throw std::domain_error("rational function with zero denominator");
    const Field* F = d.field();
    if (n.is_zero()) {
        num_ = Poly(F);
        den_ = Poly::one(F);
        return;
    }
    Poly g = gcd(n, d);
    Poly nn = g.is_one() ? n : n / g;
    Poly dd = g.is_one() ? d : d / g;
    Elem li = F->inv(dd.lead());
    num_ = nn.scaled(li);
    den_ = dd.scaled(li);
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
    Poly g = gcd(den_, o.den_);
    if (g.is_one()) return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_, true);
    Poly a = o.den_ / g;
    return RatFunc(num_ * a + o.num_ * (den_ / g), den_ * a);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
    if (is_zero() || o.is_zero()) return RatFunc(field());
    Poly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
    Poly n = (num_ / g1) * (o.num_ / g2);
    Poly d = (den_ / g2) * (o.den_ / g1);
    Elem li = field()->inv(d.lead());
    return RatFunc(n.scaled(li), d.scaled(li), true);
}

RatFunc RatFunc::inv() const {
    if (is_zero()) throw std::domain_error("inverse of zero rational function");
    Elem li = field()->inv(num_.lead());
    return RatFunc(den_.scaled(li), num_.scaled(li), true);
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inv(); }

RatFunc RatFunc::map_coeffs_frob() const { return RatFunc(num_.map_coeffs_frob(), den_.map_coeffs_frob(), true); }

std::int64_t RatFunc::degree() const {
    if (is_zero()) return kNegInfDeg;
    return num_.deg() - den_.deg();
}

std::string RatFunc::to_string(const std::string& var) const {
    if (den_.is_one()) return num_.to_string(var);
    return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

}  // namespace cff
