#pragma once

#include <string>

#include "cff/poly.hpp"

namespace cff {

// Element of K(T) for a finite field K, kept in lowest terms with monic
// denominator.  Serves both as k = F_q(T) and as F (x) k = F(T).
class RatFunc {
public:
    RatFunc() = default;
    explicit RatFunc(const Field* F) : num_(F), den_(Poly::one(F)) {}
    explicit RatFunc(const Poly& p) : num_(p), den_(Poly::one(p.field())) {}
    RatFunc(const Poly& n, const Poly& d);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const Field* field() const { return den_.field(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.is_one(); }

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator-() const { return RatFunc(-num_, den_, true); }
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }
    RatFunc inv() const;
    RatFunc scaled(Elem s) const { return RatFunc(num_.scaled(s), den_, true); }
    RatFunc map_coeffs_frob() const;
    RatFunc with_field(const Field* G) const { return RatFunc(num_.with_field(G), den_.with_field(G), true); }
    // degree of num minus degree of den (minus the infinite valuation)
    std::int64_t degree() const;

    std::string to_string(const std::string& var = "T") const;

private:
    RatFunc(Poly n, Poly d, bool) : num_(std::move(n)), den_(std::move(d)) {}
    Poly num_, den_;
};

}  // namespace cff
