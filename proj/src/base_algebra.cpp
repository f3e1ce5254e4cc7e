#include "cff/base_algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace cff {

ResidueField::ResidueField(FieldPtr Fq, const Poly& P) : Fq_(std::move(Fq)), P_(P) {
    if (!P.is_monic() || P.deg() < 1) throw std::invalid_argument("P must be monic of positive degree");
    if (!is_irreducible(P)) throw std::invalid_argument("P must be irreducible");
    d_ = static_cast<int>(P.deg());
    F_ = Field::extension(Fq_, P.coeffs());
    theta_ = from_poly(Poly::var(Fq_.get()));
}

Elem ResidueField::from_poly(const Poly& a) const {
    Poly r = a.field() == Fq_.get() ? a % P_ : a.with_field(Fq_.get()) % P_;
    std::vector<Elem> dg(d_, 0);
    for (int i = 0; i < d_; ++i) dg[i] = r[i];
    return F_->from_digits(dg);
}

Poly ResidueField::to_poly(Elem x) const { return Poly(Fq_.get(), F_->digits(x)); }

ResidueField residue_field(FieldPtr Fq, const Poly& P) { return ResidueField(std::move(Fq), P); }

std::vector<std::vector<std::uint64_t>> frobenius_orbits(std::uint64_t q, int d) {
    std::uint64_t m = 1;
    for (int i = 0; i < d; ++i) m *= q;
    m -= 1;
    std::vector<char> seen(m, 0);
    std::vector<std::vector<std::uint64_t>> out;
    for (std::uint64_t n = 0; n < m; ++n) {
        if (seen[n]) continue;
        std::vector<std::uint64_t> orb;
        std::uint64_t x = n;
        while (!seen[x]) {
            seen[x] = 1;
            orb.push_back(x);
            x = (x * q) % m;
        }
        std::sort(orb.begin(), orb.end());
        out.push_back(std::move(orb));
    }
    return out;
}

Elem poly_reduce_mod_P(const Poly& x, const ResidueField& R) {
    if (x.field() == R.base()) return R.from_poly(x);
    return x.eval_in(*R.field(), R.theta());
}

Elem rat_reduce_mod_P(const RatFunc& x, const ResidueField& R) {
    Elem d = poly_reduce_mod_P(x.den(), R);
    if (!d) throw std::domain_error("denominator vanishes at theta");
    return R.field()->div(poly_reduce_mod_P(x.num(), R), d);
}

}  // namespace cff
