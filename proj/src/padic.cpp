#include "cff/padic.hpp"

#include <algorithm>
#include <stdexcept>

namespace cff {

PadicContext::PadicContext(const Poly& P, int N) : P_(P), N_(N) {
    if (N < 1) throw std::invalid_argument("P-adic precision must be at least 1");
    pows_.push_back(Poly::one(P.field()));
    for (int k = 1; k <= N; ++k) pows_.push_back(pows_.back() * P);
}

const Poly& PadicContext::P_pow(int k) const {
    if (k < 0 || k > N_) throw std::out_of_range("P power outside the context precision");
    return pows_[static_cast<std::size_t>(k)];
}

int PadicContext::valuation(const Poly& x, int prec) const {
    Poly r = reduce(x, prec);
    if (r.is_zero()) return prec;
    return std::min(prec, cff::valuation(r, P_));
}

PadicElem::PadicElem(const PadicContext* ctx, const Poly& v, int prec)
    : ctx_(ctx), v_(ctx->reduce(v, prec)), prec_(prec) {}

PadicElem PadicElem::operator+(const PadicElem& o) const {
    return PadicElem(ctx_, v_ + o.v_, std::min(prec_, o.prec_));
}
PadicElem PadicElem::operator-(const PadicElem& o) const {
    return PadicElem(ctx_, v_ - o.v_, std::min(prec_, o.prec_));
}
PadicElem PadicElem::operator-() const { return PadicElem(ctx_, -v_, prec_); }
PadicElem PadicElem::operator*(const PadicElem& o) const {
    return PadicElem(ctx_, v_ * o.v_, std::min(prec_, o.prec_));
}

PadicElem PadicElem::operator/(const PadicElem& o) const {
    int vo = o.valuation();
    if (vo >= o.prec_) throw std::domain_error("P-adic division by an element indistinguishable from zero");
    int vs = valuation();
    if (vs < vo) throw std::domain_error("P-adic quotient is not integral");
    int prec = std::min(prec_, o.prec_) - vo;
    const Poly& Pk = ctx_->P_pow(vo);
    Poly num = v_ / Pk, den = o.v_ / Pk;
    Poly mod = ctx_->P_pow(prec);
    return PadicElem(ctx_, mulmod(num, invmod(den % mod, mod), mod), prec);
}

bool PadicElem::operator==(const PadicElem& o) const {
    int p = std::min(prec_, o.prec_);
    return ctx_->reduce(v_ - o.v_, p).is_zero();
}

Poly teichmuller_lift(const ResidueField& R, Elem x, int N) {
    const std::uint64_t q = R.q();
    Poly PN = R.P().pow(static_cast<std::uint64_t>(N));
    Poly y = R.to_poly(x);
    // (sum c_i T^i)^q = sum c_i T^{qi} since c_i lies in F_q
    for (;;) {
        Poly z = y;
        for (int i = 0; i < R.d(); ++i) z = z.subs_power(q) % PN;
        if (z == y) return y;
        y = z;
    }
}

Teichmuller::Teichmuller(const ResidueField& R, int N) : R_(&R), N_(N) {
    P_N_ = R.P().pow(static_cast<std::uint64_t>(N));
    theta_ = teichmuller_lift(R, R.theta(), N);
    theta_pow_.push_back(Poly::one(R.base()));
    for (int j = 1; j < R.d(); ++j) theta_pow_.push_back(mulmod(theta_pow_.back(), theta_, P_N_));
}

Poly Teichmuller::lift(Elem x) const {
    auto dg = R_->field()->digits(x);
    Poly out(R_->base());
    for (std::size_t j = 0; j < dg.size(); ++j)
        if (dg[j]) out += theta_pow_[j].scaled(dg[j]);
    return out;
}

namespace {

Poly lift_coefficients(const Poly& g, const Teichmuller& tm, const Poly& mod, const ResidueField& R) {
    Poly out(R.base());
    if (g.field() == R.base()) return g % mod;
    Poly Tpow = Poly::one(R.base());
    const Poly T = Poly::var(R.base());
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i]) out = (out + mulmod(tm.lift(g[i]), Tpow, mod));
        Tpow = mulmod(Tpow, T, mod);
    }
    return out % mod;
}

}  // namespace

TensorPadicImage embed_tensor_to_padic(const RatFunc& x, const ResidueField& R, int N) {
    TensorPadicImage img;
    if (x.is_zero()) {
        img.vP = N;
        img.unit_part = Poly(R.base());
        img.value = Poly(R.base());
        return img;
    }
    for (int W = N + 4;; W *= 2) {
        Teichmuller tm(R, W);
        Poly mod = R.P().pow(static_cast<std::uint64_t>(W));
        Poly n = lift_coefficients(x.num(), tm, mod, R);
        Poly d = lift_coefficients(x.den(), tm, mod, R);
        if (n.is_zero() || d.is_zero()) continue;
        Poly nu, du;
        int vn = valuation(n, R.P(), &nu);
        int vd = valuation(d, R.P(), &du);
        if (std::max(vn, vd) + N > W) continue;
        img.vP = vn - vd;
        if (img.vP <= -N) throw std::domain_error("pole at P beyond the requested precision");
        Poly PN = R.P().pow(static_cast<std::uint64_t>(N));
        img.unit_part = mulmod(nu % PN, invmod(du % PN, PN), PN);
        img.value = img.vP >= 0 ? mulmod(img.unit_part, R.P().pow(static_cast<std::uint64_t>(img.vP)), PN) : Poly(R.base());
        return img;
    }
}

PadicCycRing::PadicCycRing(const Poly& P, int N, const std::vector<Poly>& psi)
    : ctx_(std::make_shared<PadicContext>(P, N)), psi_full_(psi) {
    n0_ = static_cast<int>(psi.size()) - 1;
    if (n0_ < 1 || !psi.back().is_one()) throw std::invalid_argument("psi must be monic of positive degree");
    for (const auto& c : psi) psi_.push_back(ctx_->reduce(c));
}

PadicCycRing::Vec PadicCycRing::zero() const { return Vec(static_cast<std::size_t>(n0_), Poly(ctx_->base())); }

PadicCycRing::Vec PadicCycRing::one() const { return from_A(Poly::one(ctx_->base())); }

PadicCycRing::Vec PadicCycRing::lambda() const {
    if (n0_ == 1) return reduce_long({Poly(ctx_->base()), Poly::one(ctx_->base())});
    Vec v = zero();
    v[1] = Poly::one(ctx_->base());
    return v;
}

PadicCycRing::Vec PadicCycRing::from_A(const Poly& a) const {
    Vec v = zero();
    v[0] = ctx_->reduce(a);
    return v;
}

PadicCycRing::Vec PadicCycRing::add(const Vec& a, const Vec& b) const {
    Vec r(a.size(), Poly(ctx_->base()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

PadicCycRing::Vec PadicCycRing::sub(const Vec& a, const Vec& b) const {
    Vec r(a.size(), Poly(ctx_->base()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

PadicCycRing::Vec PadicCycRing::neg(const Vec& a) const {
    Vec r(a.size(), Poly(ctx_->base()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

PadicCycRing::Vec PadicCycRing::reduce(const Vec& a) const {
    Vec r(a.size(), Poly(ctx_->base()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = ctx_->reduce(a[i]);
    return r;
}

PadicCycRing::Vec PadicCycRing::reduce_long(std::vector<Poly> c) const {
    for (std::size_t k = c.size(); k-- > static_cast<std::size_t>(n0_);) {
        if (c[k].is_zero()) continue;
        Poly t = ctx_->reduce(c[k]);
        c[k] = Poly(ctx_->base());
        const std::size_t base = k - static_cast<std::size_t>(n0_);
        for (int i = 0; i < n0_; ++i)
            if (!psi_[static_cast<std::size_t>(i)].is_zero())
                c[base + static_cast<std::size_t>(i)] -= t * psi_[static_cast<std::size_t>(i)];
    }
    c.resize(static_cast<std::size_t>(n0_), Poly(ctx_->base()));
    return reduce(c);
}

PadicCycRing::Vec PadicCycRing::mul(const Vec& a, const Vec& b) const {
    std::vector<Poly> c(2 * static_cast<std::size_t>(n0_) - 1, Poly(ctx_->base()));
    for (int i = 0; i < n0_; ++i) {
        if (a[static_cast<std::size_t>(i)].is_zero()) continue;
        for (int j = 0; j < n0_; ++j) {
            if (b[static_cast<std::size_t>(j)].is_zero()) continue;
            c[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
        }
    }
    for (auto& x : c) x = ctx_->reduce(x);
    return reduce_long(std::move(c));
}

PadicCycRing::Vec PadicCycRing::scale(const Poly& s, const Vec& a) const {
    Vec r(a.size(), Poly(ctx_->base()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = ctx_->reduce(s * a[i]);
    return r;
}

PadicCycRing::Vec PadicCycRing::qpow(const Vec& a) const {
    const std::uint64_t qq = q();
    std::vector<Poly> c((static_cast<std::size_t>(n0_) - 1) * qq + 1, Poly(ctx_->base()));
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero()) c[i * qq] = ctx_->reduce(a[i].subs_power(qq));
    return reduce_long(std::move(c));
}

PadicCycRing::Vec PadicCycRing::pow(const Vec& a, std::uint64_t e) const {
    Vec r = one(), b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

int PadicCycRing::valuation(const Vec& a) const {
    int best = m_precision();
    for (int j = 0; j < n0_; ++j) {
        const Poly& c = a[static_cast<std::size_t>(j)];
        if (c.is_zero()) continue;
        int v = ctx_->valuation(c, ctx_->N());
        best = std::min(best, n0_ * v + j);
    }
    return best;
}

}  // namespace cff
