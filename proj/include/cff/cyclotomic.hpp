#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cff/base_algebra.hpp"
#include "cff/carlitz.hpp"
#include "cff/laurent.hpp"
#include "cff/padic.hpp"

namespace cff {

// Element of K = k[X]/(psi) (or of F (x) K) as (sum c_i lambda^i)/den with
// c_i in F_q[T] (or F[T]) and den monic, gcd(content, den) = 1.
struct CycElem {
    std::vector<Poly> c;
    Poly den;
    bool is_integral() const { return den.is_one(); }
    bool is_zero() const;
    bool operator==(const CycElem& o) const { return c == o.c && den == o.den; }
    bool operator!=(const CycElem& o) const { return !(*this == o); }
};

// Character omega^n of Delta = (A/PA)^x, omega(sigma_b) = b mod P.
struct Character {
    std::uint64_t n = 0;
    bool odd = false;   // n = 1 mod (q-1)
    std::size_t orbit = 0;
};

// Element of K_inf = K (x)_k k_inf as coordinates over k_inf in the lambda basis.
using KInfCoords = std::vector<Laurent>;
// Values at the places above infinity, one element of K_v per place.
using KInfTuple = std::vector<Laurent>;

class CycField {
public:
    CycField(FieldPtr Fq, const Poly& P);
    CycField(const CycField&) = delete;
    CycField& operator=(const CycField&) = delete;

    const Field* Fq() const { return Fq_.get(); }
    FieldPtr Fq_ptr() const { return Fq_; }
    const ResidueField& residue() const { return R_; }
    const Field* F() const { return R_.field(); }
    const CarlitzTables& tables() const { return tabs_; }
    const Poly& P() const { return P_; }
    int d() const { return d_; }
    std::uint64_t q() const { return q_; }
    std::uint64_t n0() const { return n0_; }   // q^d - 1 = [K : k] = |Delta|
    const std::vector<Poly>& psi() const { return psi_; }
    const Poly& torsion_bound() const { return Q_tors_; }

    // Delta is indexed by packed residues b = 1..n0; index = b - 1.
    Poly residue_poly(Elem b) const { return R_.to_poly(b); }
    Elem residue_of(const Poly& b) const { return R_.from_poly(b); }
    const std::vector<Elem>& coset_reps() const { return coset_reps_; }

    // ring structure
    CycElem zero(const Field* G = nullptr) const;
    CycElem one(const Field* G = nullptr) const;
    CycElem lambda() const;
    CycElem lambda_pow(std::uint64_t m) const;
    const CycElem& lambda_inv() const { return lambda_inv_; }
    CycElem from_poly(const Poly& a) const;
    CycElem from_ratfunc(const RatFunc& a) const;
    CycElem make(std::vector<Poly> c, Poly den) const;
    CycElem add(const CycElem& a, const CycElem& b) const;
    CycElem sub(const CycElem& a, const CycElem& b) const;
    CycElem neg(const CycElem& a) const;
    CycElem mul(const CycElem& a, const CycElem& b) const;
    CycElem scale(Elem s, const CycElem& a) const;
    CycElem scale(const Poly& s, const CycElem& a) const;
    CycElem scale(const RatFunc& s, const CycElem& a) const;
    CycElem pow(const CycElem& a, std::uint64_t e) const;
    CycElem to_F(const CycElem& a) const;          // 1 (x) a
    CycElem frob_tensor(const CycElem& a) const;  // Frobenius (x) id
    // Descends F (x) K -> K when every coefficient lies in F_q.
    std::optional<CycElem> descend(const CycElem& a) const;

    // phi_a(x) via the Carlitz polynomial
    CycElem carlitz_act(const Poly& a, const CycElem& x) const;
    // x -> x^q on K (coefficients in F_q)
    CycElem qpow(const CycElem& x) const;
    // id (x) Frobenius on F (x) K: coefficients in F are left alone
    CycElem qpow_linear(const CycElem& x) const;

    // Galois action; b a nonzero residue.  Throws for b = 0.
    CycElem sigma(Elem b, const CycElem& x) const;
    CycElem sigma_poly(const Poly& b, const CycElem& x) const;
    const CycElem& sigma_lambda_pow(Elem b, std::uint64_t i) const { return sigma_pow_[b - 1][i]; }
    std::vector<CycElem> all_sigma(const CycElem& x) const;   // index b - 1

    // characters
    Character character(std::uint64_t n) const;
    Elem chi(std::uint64_t n, Elem b) const { return F()->pow(b, n % n0_); }
    std::uint64_t inverse_exponent(std::uint64_t n) const { return (n0_ - n % n0_) % n0_; }
    const std::vector<std::vector<std::uint64_t>>& orbits() const { return orbits_; }
    std::size_t orbit_of(std::uint64_t n) const { return orbit_index_[n % n0_]; }

    // e_chi x = -sum_b chi(b)^{-1} sigma_b(x)
    CycElem idempotent(std::uint64_t n, const CycElem& x) const;
    // all e_chi x from one batch of sigma images; index n
    std::vector<CycElem> idempotents(const CycElem& x) const;
    CycElem idempotent_from_images(std::uint64_t n, const std::vector<CycElem>& images) const;

    // Gauss-Thakur sums, with lambda replaced by sigma_c(lambda) when c != 1
    CycElem gauss_thakur(std::uint64_t n, Elem c = 1) const;
    CycElem gauss_thakur_direct_qpower(int i, Elem c = 1) const;   // tau(omega^{q^i}) from the defining sum
    CycElem eta() const;
    // B_{1, omega^n} with e_chi(1 (x) lambda^{-1}) = B tau(chi); throws if no ratio exists.
    RatFunc b1(std::uint64_t n, Elem c = 1) const;

    // embeddings
    // exp_C(b pi_bar / P) for every coset representative b, in K_v with ram q - 1.
    std::vector<Laurent> lambda_at_places(std::int64_t prec) const;
    int ram() const { return static_cast<int>(q_ - 1); }
    KInfTuple embed_infty(const CycElem& x, std::int64_t prec) const;
    // K_inf coordinates -> values at places, using precomputed lambda values.
    KInfTuple places_from_coords(const KInfCoords& x, const std::vector<Laurent>& lam) const;
    PadicCycRing padic_ring(int N) const { return PadicCycRing(P_, N, psi_); }
    PadicCycRing::Vec embed_padic(const CycElem& x, const PadicCycRing& ring) const;

    // K_inf coordinate arithmetic
    KInfCoords coords_of(const CycElem& x, std::int64_t prec) const;   // over k only
    KInfCoords coords_sigma(Elem b, const KInfCoords& x) const;
    // e_chi on coordinates over F (x) k_inf
    KInfCoords coords_idempotent(std::uint64_t n, const KInfCoords& x) const;

private:
    CycElem qpow_impl(const CycElem& x, bool frob_coeffs) const;
    CycElem reduce_long(std::vector<Poly> c, Poly den) const;

    FieldPtr Fq_;
    ResidueField R_;
    CarlitzTables tabs_;
    Poly P_;
    int d_;
    std::uint64_t q_, n0_;
    std::vector<Poly> psi_;
    std::vector<std::vector<CycElem>> sigma_pow_;   // [b-1][i] = sigma_b(lambda)^i, i < n0
    std::vector<CycElem> sigma_lam_;   // [b-1] = sigma_b(lambda)
    CycElem lambda_inv_;
    std::vector<Elem> coset_reps_;
    Poly Q_tors_;
    std::vector<std::vector<std::uint64_t>> orbits_;
    std::vector<std::size_t> orbit_index_;
    std::vector<CycElem> tau_qpow_;   // tau(omega^{q^i}) for the standard lambda
    mutable std::mutex lam_mu_;
    mutable std::vector<Laurent> lam_cache_;
    mutable std::int64_t lam_prec_ = 0;
};

// Exact determinant of a square matrix over K[T] by fraction-free elimination.
Poly poly_det(std::vector<std::vector<Poly>> M);

// Per-orbit monic generator of the ideal of maximal minors of a presentation
// matrix over F[T]; transported to all characters of the orbit by Frobenius.
// Throws std::domain_error when the minors all vanish (module not finite).
struct EquivariantPoly {
    std::vector<Poly> by_char;   // index n
};
EquivariantPoly fitting_generator(const CycField& K, const std::vector<std::vector<std::vector<Poly>>>& per_orbit);
Poly fitting_generator_single(const std::vector<std::vector<Poly>>& presentation);

// alpha(chi^q) = Frobenius(alpha(chi)) for all chi
bool descends(const CycField& K, const std::vector<Poly>& by_char);
bool descends(const CycField& K, const std::vector<RatFunc>& by_char);
bool descends(const CycField& K, const std::vector<Laurent>& by_char);

// Normalized index [Lambda1 : Lambda2] per character: the ratio of the given
// generators over F (x) k_inf scaled to leading coefficient 1.  The generators
// are coordinate vectors; all nonzero coordinates must give the same ratio on
// the certified overlap.
struct LatticeIndex {
    std::vector<Laurent> by_char;
    std::vector<bool> consistent;
};
LatticeIndex lattice_index(const std::vector<std::vector<Laurent>>& lambda1, const std::vector<std::vector<Laurent>>& lambda2);

Laurent normalize_leading(const Laurent& x);

}  // namespace cff
