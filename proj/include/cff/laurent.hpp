#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "cff/poly.hpp"
#include "cff/ratfunc.hpp"

namespace cff {

inline constexpr std::int64_t kInfPrec = std::numeric_limits<std::int64_t>::max() / 8;

inline bool is_inf_prec(std::int64_t p) { return p >= kInfPrec / 2; }

// Laurent series in a uniformizer u at infinity, known modulo u^prec.
//   ram = 1     : u = 1/T, the field k_inf (with coefficients in a finite field)
//   ram = q - 1 : u = 1/Y with Y^{q-1} = -T, so u^{q-1} = -1/T.
// For q = 2 the two descriptions coincide.  The valuation is measured in
// u-units, so v(1/T) = ram.  Exact elements carry prec = kInfPrec.
//
// The coefficient field may be F_q or any extension packed compatibly with
// it (F (x) k_inf); mixed operands use the larger field.
class Laurent {
public:
    Laurent() = default;
    Laurent(const Field* F, int ram, std::int64_t prec = kInfPrec) : F_(F), ram_(ram), val_(prec), prec_(prec) {}

    static Laurent monomial(const Field* F, int ram, Elem c, std::int64_t e);
    // Exact image of a polynomial in T.
    static Laurent from_poly(const Poly& a, int ram);
    static Laurent from_ratfunc(const RatFunc& x, int ram, std::int64_t prec);
    // c[i] is the coefficient of u^{val + i}
    static Laurent from_coeffs(const Field* F, int ram, std::int64_t val, std::vector<Elem> c, std::int64_t prec = kInfPrec);

    const Field* field() const { return F_; }
    int ram() const { return ram_; }
    bool is_zero() const { return c_.empty(); }
    bool is_exact() const { return is_inf_prec(prec_); }
    // Least exponent with a nonzero coefficient; prec when no such exponent is known.
    std::int64_t val() const { return c_.empty() ? prec_ : val_; }
    std::int64_t prec() const { return prec_; }
    Elem coeff(std::int64_t e) const;
    Elem lead() const { return c_.empty() ? 0 : c_[0]; }
    // Largest exponent stored (exact elements); val() - 1 when zero.
    std::int64_t top() const { return val_ + static_cast<std::int64_t>(c_.size()) - 1; }

    Laurent operator+(const Laurent& o) const;
    Laurent operator-(const Laurent& o) const;
    Laurent operator-() const;
    Laurent operator*(const Laurent& o) const;
    Laurent& operator+=(const Laurent& o) { return *this = *this + o; }
    Laurent& operator-=(const Laurent& o) { return *this = *this - o; }
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }
    Laurent scaled(Elem s) const;
    Laurent shifted(std::int64_t k) const;   // times u^k
    Laurent truncated(std::int64_t prec) const;
    // Inverse of a unit; exact inputs with more than one term yield prec target.
    Laurent inv(std::int64_t target = kInfPrec) const;
    Laurent div(const Laurent& o, std::int64_t target = kInfPrec) const { return *this * o.inv(target); }
    Laurent pow(std::uint64_t n) const;
    // x -> x^q with coefficients raised to the q-th power: u^e -> u^{qe}.
    Laurent qpow(std::uint64_t q) const;
    Laurent with_field(const Field* G) const;
    // coefficients c -> c^{|base|}, exponents unchanged
    Laurent map_coeffs_frob() const;
    // Image of an element of k_inf (ram = 1) in the completion with ram = r,
    // via 1/T = -u^r.
    Laurent to_ramified(int r) const;

    // Polynomial part in T (ram = 1 only): exponents <= 0.
    Poly poly_part() const;

    // Coefficients as T-Laurent series: component j of c_0 + c_1 Y + ... + c_{r-1} Y^{r-1}
    // with r = ram.  Each component has ram = 1.
    std::vector<Laurent> components() const;

    std::string to_string(int max_terms = 8) const;

private:
    void normalize();
    const Field* F_ = nullptr;
    int ram_ = 1;
    std::int64_t val_ = 0;
    std::vector<Elem> c_;   // c_[i] is the coefficient of u^{val_ + i}
    std::int64_t prec_ = kInfPrec;
};

// Comparison on the certified overlap min(prec a, prec b).
struct Agreement {
    bool equal = false;
    std::int64_t overlap = 0;               // exponents below this bound were compared
    std::int64_t first_difference = 0;      // meaningful when !equal
};
Agreement compare(const Laurent& a, const Laurent& b);

// Carlitz period in the ramified completion: Y^q prod_{n>=1} (1 - T^{1-q^n})^{-1},
// known modulo u^prec (u = 1/Y).  ram = q - 1 (so = 1 for q = 2).
Laurent pi_bar(const Field* Fq, std::int64_t prec);

// a/b with deg a <= deg_num, deg b <= deg_den, b monic, minimal deg b, agreeing with
// s (ram = 1) on all known coefficients; at least guard constraints beyond the
// unknowns must be available.  Throws std::runtime_error on failure.
RatFunc pade_recognize(const Laurent& s, int deg_num, int deg_den, int guard = 2);

}  // namespace cff
