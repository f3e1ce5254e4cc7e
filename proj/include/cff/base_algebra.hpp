#pragma once

#include <cstdint>
#include <vector>

#include "cff/field.hpp"
#include "cff/poly.hpp"
#include "cff/ratfunc.hpp"

namespace cff {

// F = A/PA for a monic irreducible P in A = F_q[T], realized as the Field
// extension of F_q by P.  theta is the class of T.
class ResidueField {
public:
    ResidueField() = default;
    ResidueField(FieldPtr Fq, const Poly& P);

    const Field* base() const { return Fq_.get(); }
    FieldPtr base_ptr() const { return Fq_; }
    const Field* field() const { return F_.get(); }
    FieldPtr field_ptr() const { return F_; }
    const Poly& P() const { return P_; }
    int d() const { return d_; }
    std::uint64_t q() const { return Fq_->size(); }
    std::uint64_t size() const { return F_->size(); }   // q^d
    std::uint64_t units() const { return F_->size() - 1; }
    Elem theta() const { return theta_; }

    Elem from_poly(const Poly& a) const;   // reduction mod P
    Poly to_poly(Elem x) const;            // representative of degree < d
    Elem frob(Elem x) const { return F_->frob(x); }
    Elem frob_inv(Elem x) const { return F_->frob_inv(x); }

private:
    FieldPtr Fq_, F_;
    Poly P_;
    int d_ = 0;
    Elem theta_ = 0;
};

// Throws std::invalid_argument for non-monic or reducible P.
ResidueField residue_field(FieldPtr Fq, const Poly& P);

// Orbits of n -> q n on {0, ..., q^d - 2}, each sorted, listed by least element.
std::vector<std::vector<std::uint64_t>> frobenius_orbits(std::uint64_t q, int d);

// Substitution T -> theta.  Accepts elements of k (coefficients in F_q) and
// of F (x) k (coefficients in F).  Throws std::domain_error when the
// denominator vanishes at theta.
Elem rat_reduce_mod_P(const RatFunc& x, const ResidueField& R);
Elem poly_reduce_mod_P(const Poly& x, const ResidueField& R);

}  // namespace cff
