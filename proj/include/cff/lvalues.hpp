#pragma once

#include <cstdint>
#include <vector>

#include "cff/cyclotomic.hpp"

namespace cff {

// Sums of 1/a over monic a of degree n in one residue class mod P, at infinity.
// Classes are packed residues c = 0..q^d-1; c = 0 is the class of PA.
struct ClassSumTable {
    int depth = 0;
    std::int64_t prec = 0;                  // every entry is known modulo u^prec, u = 1/T
    std::vector<std::vector<Laurent>> R;    // [n][c]
    // sum over n <= depth
    Laurent class_total(Elem c) const;
};

// Throws std::length_error when the enumeration exceeds budget leaves.
ClassSumTable class_sums_inf(const CycField& K, int depth, std::uint64_t budget = 400'000'000ULL);
// Brute-force enumeration of every monic a; for cross-checks on small depths.
ClassSumTable class_sums_inf_naive(const CycField& K, int depth);

struct LValue {
    std::uint64_t n = 0;   // chi = omega^n
    Laurent value;         // in F (x) k_inf
    int depth = 0;
    std::int64_t certified = 0;   // exponents below this are exact
};

// sum over monic a of chi(a)/a, with chi(a) = 1 on PA for the trivial character
LValue l_inf(const CycField& K, const ClassSumTable& tab, std::uint64_t n);
// The same sum without the PA classes (the sum over Delta only).
Laurent l_inf_prime_to_P(const CycField& K, const ClassSumTable& tab, std::uint64_t n);

struct EquivariantLaurent {
    std::vector<Laurent> by_char;
    bool descends = false;
    bool unit = false;   // each component has valuation 0 and leading coefficient 1
};
EquivariantLaurent l_inf_equivariant(const CycField& K, const ClassSumTable& tab);

// prod over monic irreducible f of degree <= B of (1 - chi(f)/f)^{-1}, modulo u^{B+1}.
LValue euler_product(const CycField& K, std::uint64_t n, int B);

// Characteristic polynomial (in Z, over F) of x -> T x + x^q on e_chi(F (x) O_K / f).
Poly euler_factor_charpoly(const CycField& K, std::uint64_t n, const Poly& f);
// chi(f) with the convention chi(PA) = 1 for the trivial character and 0 otherwise
Elem chi_of_poly(const CycField& K, std::uint64_t n, const Poly& f);

// P-adic class sums modulo P^N for classes c = 1..q^d-1, degrees 0..max_deg.
struct PadicClassSums {
    int N = 0;
    int max_deg = 0;
    std::vector<std::vector<Poly>> S;   // [n][c - 1], over F_q, reduced mod P^N
};
PadicClassSums class_sums_padic(const CycField& K, int N, int max_deg, std::uint64_t budget = 50'000'000ULL);

struct PadicLValue {
    std::uint64_t n = 0;
    Poly value;            // in A / P^N, characters lifted by Teichmueller
    int N = 0;
    int vP = 0;            // N when the value vanishes mod P^N
    int truncation_degree = 0;
};
// Sums degree blocks 0..N d (further blocks vanish mod P^N).
PadicLValue l_padic(const CycField& K, const PadicClassSums& tab, std::uint64_t n);
// The degree-deg block of the P-adic sum for chi = omega^n.
Poly l_padic_block(const CycField& K, const PadicClassSums& tab, std::uint64_t n, int deg);

}  // namespace cff
