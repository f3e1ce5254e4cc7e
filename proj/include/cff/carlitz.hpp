#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include "cff/base_algebra.hpp"
#include "cff/laurent.hpp"
#include "cff/padic.hpp"
#include "cff/poly.hpp"
#include "cff/ratfunc.hpp"

namespace cff {

// An F_q-linear polynomial sum_i c_i X^{q^i} with c_i in A.
using TauPoly = std::vector<Poly>;

TauPoly tau_add(const TauPoly& f, const TauPoly& g);
// (f o g)_{i+j} += f_i g_j^{q^i}
TauPoly tau_compose(const TauPoly& f, const TauPoly& g);
// phi_a for the Carlitz module, phi_T = T + tau.
TauPoly carlitz_poly(const Poly& a);

// phi(x) in any ring with an F_q-linear q-power map.
template <class V, class Add, class Scale, class Qpow>
V carlitz_apply(const TauPoly& phi, const V& x, Add add, Scale scale, Qpow qpow) {
    V acc = scale(phi[0], x);
    V y = x;
    for (std::size_t i = 1; i < phi.size(); ++i) {
        y = qpow(y);
        acc = add(acc, scale(phi[i], y));
    }
    return acc;
}

// Memoized D_i, L_i and Carlitz factorials over a fixed F_q.  Lookups are
// guarded by a mutex; returned references stay valid (node-based storage).
class CarlitzTables {
public:
    explicit CarlitzTables(const Field* Fq) : Fq_(Fq) {}
    const Field* field() const { return Fq_; }
    std::uint64_t q() const { return Fq_->size(); }

    // prod_{j<i} (T^{q^i} - T^{q^j})
    const Poly& D(int i) const;
    // prod_{1<=j<=i} (T^{q^j} - T)
    const Poly& L(int i) const;
    // prod D_i^{n_i} over the q-adic digits of n
    Poly factorial(std::uint64_t n) const;

private:
    const Field* Fq_;
    mutable std::mutex mu_;
    mutable std::map<int, Poly> D_, L_;
};

// v_P(D_i) predicted by the divisibility rule: sum of q^j over j < i with d | (i - j).
std::uint64_t predicted_vP_D(std::uint64_t q, int d, int i);
// v_P(L_i) = floor(i / d).
inline int predicted_vP_L(int d, int i) { return i / d; }

// Residues of BC'_n mod P for n = 0..n_max via the sparse recurrence.
// Requires n_max < q^d - 1 (throws std::invalid_argument otherwise).
std::vector<Elem> bc_stream_mod_P(const ResidueField& R, std::uint64_t n_max);

struct BCValue {
    std::uint64_t n = 0;
    RatFunc bc_prime;   // BC'_n
    RatFunc bc;         // BC_n = BC'_n Pi(n)
};
// Exact BC'_n, BC_n for n = 0..n_max by series inversion over k.
// Throws std::length_error past work_limit.
std::vector<BCValue> bc_exact_table(const CarlitzTables& tabs, std::uint64_t n_max, std::uint64_t work_limit = 512);
BCValue bc_exact(const CarlitzTables& tabs, std::uint64_t n, std::uint64_t work_limit = 512);

// Sum_i z^{q^i}/D_i at infinity with all omitted terms of valuation >= target.
// The result is known modulo u^{min(target, prec z)}.
Laurent exp_eval(const CarlitzTables& tabs, const Laurent& z, std::int64_t target);

// P-adic Carlitz exponential and logarithm on m^2, results modulo P^N of ring.
// Throw std::domain_error when v_m(z) < 2.
PadicCycRing::Vec padic_exp(const CarlitzTables& tabs, const PadicCycRing& ring, const PadicCycRing::Vec& z);
PadicCycRing::Vec padic_log(const CarlitzTables& tabs, const PadicCycRing& ring, const PadicCycRing::Vec& z);
// phi_a on O_{K,P}/P^N.
PadicCycRing::Vec padic_carlitz_act(const PadicCycRing& ring, const Poly& a, const PadicCycRing::Vec& z);

}  // namespace cff
