#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cff/lvalues.hpp"

namespace cff {

enum class CheckStatus { pass, fail, indeterminate };
const char* to_string(CheckStatus s);

// Precision fields use kExact for exact quantities.
inline constexpr std::int64_t kExact = -1;

struct Check {
    std::string id;
    CheckStatus status = CheckStatus::indeterminate;
    std::int64_t lhs_precision = kExact;
    std::int64_t rhs_precision = kExact;
    std::string detail;
};

struct VerificationReport {
    std::string suite;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<Check> checks;

    void param(const std::string& key, const std::string& value) { params.emplace_back(key, value); }
    Check& add(std::string id, CheckStatus s, std::string detail = {}, std::int64_t lhs = kExact, std::int64_t rhs = kExact);
    Check& add_bool(std::string id, bool ok, std::string detail = {});
    // pass on a nonempty overlap with at least min_coeffs compared coefficients
    // at or above the valuation of b; indeterminate when fewer are certified.
    Check& add_agreement(std::string id, const Laurent& a, const Laurent& b, std::int64_t min_coeffs, std::string detail = {});
    std::size_t count(CheckStatus s) const;
    bool all_pass() const { return count(CheckStatus::pass) == checks.size(); }
};

// Anderson's point L_m = sum_sigma sigma(lambda)^m (x) sum_{a = sigma, monic} 1/a,
// summed over Delta, classes truncated at the table depth.
struct SpecialPointInf {
    std::uint64_t m = 0;
    KInfTuple value;          // one element of K_v per coset representative
    int depth = 0;
    std::int64_t certified = 0;   // min precision over places, in u-units
};
SpecialPointInf special_point_inf(const CycField& K, const ClassSumTable& tab, std::uint64_t m);
// Coordinates of L_m over k_inf in the lambda basis.
KInfCoords special_point_coords(const CycField& K, const ClassSumTable& tab, std::uint64_t m);

struct SpecialPointPadic {
    std::uint64_t m = 0;
    PadicCycRing::Vec value;
    int truncation_degree = 0;   // degree blocks n <= N d were summed
    int valuation = 0;
};
// Throws std::logic_error when m >= 2 and the value is not in m^2.
SpecialPointPadic special_point_padic(const CycField& K, const PadicClassSums& tab, const PadicCycRing& ring, std::uint64_t m);

// O_K element with the given values at the places, found through the trace
// dual basis lambda/P * beta_i and rounding to polynomial parts.
struct Recognition {
    std::optional<CycElem> value;
    bool precision_short = false;   // some coordinate not known past the guard
    std::int64_t certified = 0;     // least 1/T-precision over coordinates
    std::string failure;
};
Recognition recognize_integral(const CycField& K, const KInfTuple& x, int guard = 6);

// exp_C(scale * L_m) in O_K; deepens tab (doubling) until recognition
// succeeds, throws std::runtime_error past depth_cap.
CycElem exp_special_point(const CycField& K, ClassSumTable& tab, std::uint64_t m, int guard, int depth_cap, const Poly* scale = nullptr);
// depth at which the infinite-place suites start, and their doubling cap
int default_inf_depth(const CycField& K);
int default_depth_cap(const CycField& K);

VerificationReport verify_anderson(const CycField& K, const std::vector<std::uint64_t>& ms, int N, int depth, int guard = 6);
// Normal basis, content gcd, lattice index against L(1, chi), descent.
VerificationReport verify_cnf(const CycField& K, int depth, std::int64_t min_coeffs = 10);
// Throws std::invalid_argument for even chi.
VerificationReport verify_b1_formula(const CycField& K, std::uint64_t n, int depth, std::int64_t min_coeffs = 12);
// All odd characters plus the Gauss-Thakur product identity.
VerificationReport verify_b1_all(const CycField& K, int depth, std::int64_t min_coeffs = 12);
VerificationReport verify_congruence(const CycField& K);
VerificationReport verify_euler(const CycField& K, int B);
VerificationReport verify_charpoly(const CycField& K, int max_deg_f);
// exp/log round trips on random elements of m^2, valuation preservation, and
// parity vanishing of the P-adic L-values with the degree-block truncation.
VerificationReport verify_padic_explog(const CycField& K, int N, int samples = 50, std::uint64_t seed = 1);

// Herbrand-Ribet scan over n with (q-1) | n, 1 < n < q^d - 1.
enum class HrMode { exact_small, streaming };
struct HrScan {
    std::vector<std::uint64_t> indices;     // scanned n
    std::vector<Elem> residues;             // BC'_n mod P, parallel to indices
    std::vector<std::uint64_t> irregular;   // n with BC'_n = 0 mod P
};
// exact_small throws std::length_error past the exact work limit.
HrScan hr_scan(const ResidueField& R, HrMode mode, std::uint64_t work_limit = 512);
// BC'_n mod P, n <= n_max, by Newton inversion of exp_C(X)/X over A/PA.
std::vector<Elem> bc_newton_mod_P(const ResidueField& R, std::uint64_t n_max);
// Streaming against the exact oracle where it runs and against Newton
// inversion on a random window of window_fraction of the range.
VerificationReport verify_hr(const ResidueField& R, double window_fraction = 0.01, std::uint64_t seed = 1, std::uint64_t work_limit = 512);

enum class FittingCase { trivial = 1, frobenius_twist = 2, generic = 3 };
struct OddFittingRow {
    std::uint64_t n = 0;
    FittingCase kind = FittingCase::generic;
    RatFunc b1_inverse;     // B_{1, chi^{-1}}
    Poly generator;         // monic generator of I over F[T]
    bool generator_integral = false;
    int vP_b1 = 0;
    int length = 0;         // length of e_chi(A_P (x) H)
};
struct OddFittingReport {
    std::vector<OddFittingRow> rows;
    bool descends = false;   // generators form an element of A[Delta]
};
OddFittingReport odd_fitting_report(const CycField& K, int N = 8);

struct EvenLedgerRow {
    std::uint64_t n = 0;
    int vP = 0;
    bool certified = false;   // false when L_P vanishes to precision N
};
struct EvenLedger {
    int N = 0;
    std::vector<EvenLedgerRow> rows;
};
EvenLedger padic_ledger(const CycField& K, int N);
extern const char* const kEvenLedgerCaveat;
extern const char* const kEvenPartCitation;

}  // namespace cff
