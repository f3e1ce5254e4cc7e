#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "cff/field.hpp"

namespace cff {

// Degree of the zero polynomial.  Far enough from zero that sums of a few
// sentinels stay recognisably negative.
inline constexpr std::int64_t kNegInfDeg = std::numeric_limits<std::int64_t>::min() / 8;

inline bool is_neg_inf(std::int64_t d) { return d <= kNegInfDeg / 2; }

// Univariate polynomial over a finite Field, coefficients lowest degree
// first, no trailing zeros.  The Field must outlive the polynomial.
class Poly {
public:
    Poly() = default;
    explicit Poly(const Field* F) : F_(F) {}
    Poly(const Field* F, std::vector<Elem> c) : F_(F), c_(std::move(c)) { trim(); }

    static Poly constant(const Field* F, Elem c) { return Poly(F, {c}); }
    static Poly one(const Field* F) { return Poly(F, {1}); }
    static Poly monomial(const Field* F, Elem c, std::size_t k);
    static Poly var(const Field* F) { return monomial(F, 1, 1); }

    const Field* field() const { return F_; }
    const std::vector<Elem>& coeffs() const { return c_; }
    std::int64_t deg() const { return c_.empty() ? kNegInfDeg : static_cast<std::int64_t>(c_.size()) - 1; }
    std::size_t size() const { return c_.size(); }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    Elem lead() const { return c_.empty() ? 0 : c_.back(); }
    Elem operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    void set(std::size_t i, Elem v);

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scaled(Elem s) const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return c_ != o.c_; }

    Poly monic() const;
    Poly shifted(std::size_t k) const;            // times T^k
    Poly truncated(std::size_t n) const;          // mod T^n
    Poly pow(std::uint64_t e) const;
    Poly subs_power(std::uint64_t k) const;       // T -> T^k
    Poly map_coeffs_frob() const;                 // c -> c^{|base|}
    Poly with_field(const Field* G) const;        // reinterpret coefficients
    Poly derivative() const;

    // Horner evaluation at x in a field G containing the coefficients.
    Elem eval_in(const Field& G, Elem x) const;
    Elem eval(Elem x) const { return eval_in(*F_, x); }

    std::string to_string(const std::string& var = "T") const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    const Field* F_ = nullptr;
    std::vector<Elem> c_;
};

// Operands over F_q and over an extension packed compatibly with it mix
// freely; results live in the larger field.
const Field* common_field(const Field* a, const Field* b);

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
bool divides(const Poly& a, const Poly& b);  // a | b
Poly gcd(Poly a, Poly b);                    // monic (or zero)
Poly lcm(const Poly& a, const Poly& b);
// g = s a + t b with g monic gcd.
struct ExtGcd {
    Poly g, s, t;
};
ExtGcd ext_gcd(const Poly& a, const Poly& b);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const Poly& a, std::uint64_t e, const Poly& m);
Poly invmod(const Poly& a, const Poly& m);  // throws if not invertible
bool is_irreducible(const Poly& f);
// Exact valuation at the monic polynomial P; fills *unit with a / P^v.
int valuation(const Poly& a, const Poly& P, Poly* unit = nullptr);
// Lexicographic comparison by (degree, coefficients from the top).
bool poly_less(const Poly& a, const Poly& b);

// All monic polynomials of a given degree, in lexicographic order.
std::vector<Poly> monic_of_degree(const Field* F, int n);
std::vector<Poly> monic_irreducibles_up_to(const Field* F, int n);

// Text grammar: terms c*T^k joined by + and -, c decimal or g^j.
Poly parse_poly(const std::string& text, const Field* F, char var = 'T');

}  // namespace cff
