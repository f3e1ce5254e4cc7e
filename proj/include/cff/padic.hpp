#pragma once

#include <memory>
#include <vector>

#include "cff/base_algebra.hpp"
#include "cff/poly.hpp"

namespace cff {

// A/P^N A together with cached powers of P.
class PadicContext {
public:
    PadicContext(const Poly& P, int N);

    const Field* base() const { return P_.field(); }
    const Poly& P() const { return P_; }
    int N() const { return N_; }
    int d() const { return static_cast<int>(P_.deg()); }
    const Poly& P_pow(int k) const;      // 0 <= k <= N
    Poly reduce(const Poly& x, int prec) const { return x % P_pow(prec); }
    Poly reduce(const Poly& x) const { return reduce(x, N_); }
    // v_P of x mod P^prec; prec when x vanishes to that precision.
    int valuation(const Poly& x, int prec) const;

private:
    Poly P_;
    int N_;
    std::vector<Poly> pows_;
};

// Element of A_P known modulo P^prec, prec <= N of its context.
class PadicElem {
public:
    PadicElem() = default;
    PadicElem(const PadicContext* ctx, const Poly& v, int prec);
    PadicElem(const PadicContext* ctx, const Poly& v) : PadicElem(ctx, v, ctx->N()) {}

    const PadicContext* context() const { return ctx_; }
    const Poly& value() const { return v_; }
    int prec() const { return prec_; }
    int valuation() const { return ctx_->valuation(v_, prec_); }
    bool is_zero() const { return v_.is_zero(); }

    PadicElem operator+(const PadicElem& o) const;
    PadicElem operator-(const PadicElem& o) const;
    PadicElem operator-() const;
    PadicElem operator*(const PadicElem& o) const;
    // Requires v_P(o) <= v_P(*this); loses v_P(o) digits of precision.
    PadicElem operator/(const PadicElem& o) const;
    bool operator==(const PadicElem& o) const;

private:
    const PadicContext* ctx_ = nullptr;
    Poly v_;
    int prec_ = 0;
};

// The unique y mod P^N with y = x mod P and y^{q^d} = y.
Poly teichmuller_lift(const ResidueField& R, Elem x, int N);

// Teichmueller section F -> A/P^N, F_q-linear, built from the lift of theta.
class Teichmuller {
public:
    Teichmuller(const ResidueField& R, int N);
    int N() const { return N_; }
    const Poly& lift_theta() const { return theta_; }
    Poly lift(Elem x) const;

private:
    const ResidueField* R_;
    int N_;
    Poly P_N_;
    std::vector<Poly> theta_pow_;
    Poly theta_;
};

// Image of x in F (x) k inside k_P: coefficients through the Teichmueller
// section, T fixed.  value = x / P^vP modulo P^N.
struct TensorPadicImage {
    int vP = 0;
    Poly unit_part;   // x P^{-vP} mod P^N, a P-adic unit
    Poly value;       // x mod P^N when vP >= 0
};
// Throws std::domain_error when vP <= -N.
TensorPadicImage embed_tensor_to_padic(const RatFunc& x, const ResidueField& R, int N);

// O_{K,P}/P^N = (A/P^N)[X]/(psi) for an Eisenstein psi of degree n0.
class PadicCycRing {
public:
    // psi over A, lowest coefficient first, monic of degree n0.
    PadicCycRing(const Poly& P, int N, const std::vector<Poly>& psi);

    const PadicContext* context() const { return ctx_.get(); }
    const Poly& P() const { return ctx_->P(); }
    const std::vector<Poly>& psi() const { return psi_full_; }
    // Same ring at another P-adic precision.
    PadicCycRing at_precision(int N) const { return PadicCycRing(ctx_->P(), N, psi_full_); }
    int n0() const { return n0_; }
    int N() const { return ctx_->N(); }
    std::uint64_t q() const { return ctx_->base()->size(); }
    int m_precision() const { return ctx_->N() * n0_; }

    using Vec = std::vector<Poly>;
    Vec zero() const;
    Vec one() const;
    Vec lambda() const;
    Vec from_A(const Poly& a) const;
    Vec add(const Vec& a, const Vec& b) const;
    Vec sub(const Vec& a, const Vec& b) const;
    Vec neg(const Vec& a) const;
    Vec mul(const Vec& a, const Vec& b) const;
    Vec scale(const Poly& s, const Vec& a) const;
    Vec qpow(const Vec& a) const;             // x -> x^q
    Vec pow(const Vec& a, std::uint64_t e) const;
    Vec reduce(const Vec& a) const;            // coefficients mod P^N
    // m-adic valuation, v(lambda) = 1; m_precision() when zero.
    int valuation(const Vec& a) const;
    bool equal(const Vec& a, const Vec& b) const { return valuation(sub(a, b)) >= m_precision(); }
    // Reduce an arbitrary-length lambda-polynomial.
    Vec reduce_long(std::vector<Poly> c) const;

private:
    std::shared_ptr<const PadicContext> ctx_;
    std::vector<Poly> psi_full_, psi_;
    int n0_;
};

}  // namespace cff
