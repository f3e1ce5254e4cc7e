#include "cff/cyclotomic.hpp"

#include <algorithm>
#include <stdexcept>

namespace cff {

bool CycElem::is_zero() const {
    for (const auto& x : c)
        if (!x.is_zero()) return false;
    return true;
}

namespace {

Poly frob_poly(const Poly& a, const Field* F) { return a.with_field(F).map_coeffs_frob(); }

}  // namespace

CycField::CycField(FieldPtr Fq, const Poly& P)
    : Fq_(Fq), R_(residue_field(Fq, P)), tabs_(Fq.get()), P_(P), d_(static_cast<int>(P.deg())), q_(Fq->size()) {
    n0_ = R_.units();
    const Field* G = Fq_.get();
    TauPoly phi = carlitz_poly(P_);
    psi_.assign(n0_ + 1, Poly(G));
    std::uint64_t qi = 1;
    for (std::size_t i = 0; i < phi.size(); ++i, qi *= q_) psi_[qi - 1] = phi[i];
    if (psi_[0] != P_ || !psi_[n0_].is_one()) throw std::logic_error("psi is not Eisenstein at P");
    for (std::uint64_t i = 1; i < n0_; ++i)
        if (!divides(P_, psi_[i])) throw std::logic_error("psi is not Eisenstein at P");

    // lambda^{-1} = -(psi_1 + psi_2 lambda + ... + lambda^{n0-1}) / P
    {
        std::vector<Poly> c(n0_, Poly(G));
        for (std::uint64_t i = 1; i <= n0_; ++i) c[i - 1] = -psi_[i];
        lambda_inv_ = make(std::move(c), P_);
    }

    sigma_pow_.resize(n0_);
    for (Elem b = 1; b <= n0_; ++b) {
        auto& row = sigma_pow_[b - 1];
        CycElem s = carlitz_act(R_.to_poly(b), lambda());
        sigma_lam_.push_back(s);
        row.push_back(one());
        for (std::uint64_t i = 1; i < n0_; ++i) row.push_back(mul(row.back(), s));
    }

    for (Elem b = 1; b <= n0_; ++b)
        if (R_.to_poly(b).is_monic()) coset_reps_.push_back(b);
    std::sort(coset_reps_.begin(), coset_reps_.end(),
              [&](Elem a, Elem b) { return poly_less(R_.to_poly(a), R_.to_poly(b)); });

    Q_tors_ = q_ > 2 ? P_ : lcm(P_, parse_poly("T^2+T", G));

    orbits_ = frobenius_orbits(q_, d_);
    orbit_index_.assign(n0_, 0);
    for (std::size_t o = 0; o < orbits_.size(); ++o)
        for (auto n : orbits_[o]) orbit_index_[n] = o;

    CycElem t1 = gauss_thakur_direct_qpower(0);
    tau_qpow_.push_back(t1);
    for (int i = 1; i < d_; ++i) tau_qpow_.push_back(frob_tensor(tau_qpow_.back()));

    // e_chi carries a sign that is easy to lose; check idempotence once on lambda
    CycElem e = idempotent(1 % n0_, lambda());
    if (idempotent(1 % n0_, e) != e) throw std::logic_error("e_chi is not idempotent");
}

CycElem CycField::zero(const Field* G) const {
    if (!G) G = Fq_.get();
    return CycElem{std::vector<Poly>(n0_, Poly(G)), Poly::one(G)};
}

CycElem CycField::one(const Field* G) const {
    CycElem r = zero(G);
    r.c[0] = Poly::one(r.den.field());
    return r;
}

CycElem CycField::lambda() const { return lambda_pow(1); }

CycElem CycField::lambda_pow(std::uint64_t m) const {
    if (m < n0_) {
        CycElem r = zero();
        r.c[m] = Poly::one(Fq_.get());
        return r;
    }
    if (m < 2 * n0_) {
        std::vector<Poly> c(m + 1, Poly(Fq_.get()));
        c[m] = Poly::one(Fq_.get());
        return reduce_long(std::move(c), Poly::one(Fq_.get()));
    }
    return pow(lambda_pow(1), m);
}

CycElem CycField::from_poly(const Poly& a) const {
    CycElem r = zero(a.field());
    r.c[0] = a;
    return r;
}

CycElem CycField::from_ratfunc(const RatFunc& a) const {
    CycElem r = zero(a.field());
    r.c[0] = a.num();
    r.den = a.den();
    return r;
}

CycElem CycField::make(std::vector<Poly> c, Poly den) const {
    if (den.is_zero()) throw std::domain_error("zero denominator");
    const Field* G = den.field();
    for (const auto& x : c)
        if (x.field()) G = common_field(G, x.field());
    c.resize(n0_, Poly(G));
    for (auto& x : c) x = x.field() == G ? x : x.with_field(G);
    if (den.field() != G) den = den.with_field(G);
    bool all_zero = true;
    for (const auto& x : c) all_zero = all_zero && x.is_zero();
    if (all_zero) return CycElem{std::move(c), Poly::one(G)};
    if (!den.is_monic()) {
        Elem s = G->inv(den.lead());
        den = den.scaled(s);
        for (auto& x : c) x = x.scaled(s);
    }
    if (!den.is_one()) {
        Poly g = den;
        for (const auto& x : c) {
            if (g.is_one()) break;
            if (!x.is_zero()) g = gcd(g, x);
        }
        if (!g.is_one()) {
            den = den / g;
            for (auto& x : c) x = x / g;
        }
    }
    return CycElem{std::move(c), std::move(den)};
}

CycElem CycField::reduce_long(std::vector<Poly> c, Poly den) const {
    for (std::size_t k = c.size(); k-- > n0_;) {
        if (c[k].is_zero()) continue;
        const Poly top = c[k];
        for (std::uint64_t i = 0; i < n0_; ++i)
            if (!psi_[i].is_zero()) c[k - n0_ + i] -= top * psi_[i];
        c[k] = Poly(top.field());
    }
    if (c.size() > n0_) c.resize(n0_);
    return make(std::move(c), std::move(den));
}

CycElem CycField::add(const CycElem& a, const CycElem& b) const {
    if (a.den == b.den) {
        std::vector<Poly> c(n0_);
        for (std::uint64_t i = 0; i < n0_; ++i) c[i] = a.c[i] + b.c[i];
        return make(std::move(c), a.den);
    }
    Poly g = gcd(a.den, b.den);
    Poly fa = b.den / g, fb = a.den / g;
    std::vector<Poly> c(n0_);
    for (std::uint64_t i = 0; i < n0_; ++i) c[i] = a.c[i] * fa + b.c[i] * fb;
    return make(std::move(c), a.den * fa);
}

CycElem CycField::neg(const CycElem& a) const {
    CycElem r = a;
    for (auto& x : r.c) x = -x;
    return r;
}

CycElem CycField::sub(const CycElem& a, const CycElem& b) const { return add(a, neg(b)); }

CycElem CycField::mul(const CycElem& a, const CycElem& b) const {
    const Field* G = common_field(a.den.field(), b.den.field());
    std::vector<Poly> c(2 * n0_ - 1, Poly(G));
    for (std::uint64_t i = 0; i < n0_; ++i) {
        if (a.c[i].is_zero()) continue;
        for (std::uint64_t j = 0; j < n0_; ++j)
            if (!b.c[j].is_zero()) c[i + j] += a.c[i] * b.c[j];
    }
    return reduce_long(std::move(c), a.den * b.den);
}

CycElem CycField::scale(Elem s, const CycElem& a) const {
    const Field* G = a.den.field();
    if (G == Fq_.get() && s >= q_) G = F();
    std::vector<Poly> c(n0_);
    for (std::uint64_t i = 0; i < n0_; ++i) c[i] = a.c[i].with_field(G).scaled(s);
    return make(std::move(c), a.den.with_field(G));
}

CycElem CycField::scale(const Poly& s, const CycElem& a) const {
    std::vector<Poly> c(n0_);
    for (std::uint64_t i = 0; i < n0_; ++i) c[i] = a.c[i] * s;
    return make(std::move(c), a.den);
}

CycElem CycField::scale(const RatFunc& s, const CycElem& a) const {
    std::vector<Poly> c(n0_);
    for (std::uint64_t i = 0; i < n0_; ++i) c[i] = a.c[i] * s.num();
    return make(std::move(c), a.den * s.den());
}

CycElem CycField::pow(const CycElem& a, std::uint64_t e) const {
    CycElem r = one(a.den.field()), b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

CycElem CycField::to_F(const CycElem& a) const {
    CycElem r = a;
    for (auto& x : r.c) x = x.with_field(F());
    r.den = r.den.with_field(F());
    return r;
}

CycElem CycField::frob_tensor(const CycElem& a) const {
    CycElem r = to_F(a);
    for (auto& x : r.c) x = x.map_coeffs_frob();
    r.den = r.den.map_coeffs_frob();
    return r;
}

std::optional<CycElem> CycField::descend(const CycElem& a) const {
    auto in_base = [&](const Poly& p) {
        for (Elem x : p.coeffs())
            if (x >= q_) return false;
        return true;
    };
    CycElem r = a;
    for (auto& x : r.c) {
        if (!in_base(x)) return std::nullopt;
        x = x.with_field(Fq_.get());
    }
    if (!in_base(r.den)) return std::nullopt;
    r.den = r.den.with_field(Fq_.get());
    return r;
}

CycElem CycField::qpow(const CycElem& x) const { return qpow_impl(x, x.den.field() != Fq_.get()); }

CycElem CycField::qpow_linear(const CycElem& x) const { return qpow_impl(x, false); }

CycElem CycField::qpow_impl(const CycElem& x, bool ext) const {
    std::vector<Poly> c((n0_ - 1) * q_ + 1, Poly(x.den.field()));
    for (std::uint64_t i = 0; i < n0_; ++i) {
        if (x.c[i].is_zero()) continue;
        Poly y = ext ? x.c[i].map_coeffs_frob() : x.c[i];
        c[i * q_] = y.subs_power(q_);
    }
    Poly den = ext ? x.den.map_coeffs_frob() : x.den;
    return reduce_long(std::move(c), den.subs_power(q_));
}

CycElem CycField::carlitz_act(const Poly& a, const CycElem& x) const {
    return carlitz_apply(
        carlitz_poly(a), x, [&](const CycElem& u, const CycElem& v) { return add(u, v); },
        [&](const Poly& s, const CycElem& u) { return scale(s, u); }, [&](const CycElem& u) { return qpow(u); });
}

CycElem CycField::sigma(Elem b, const CycElem& x) const {
    if (b == 0 || b > n0_) throw std::domain_error("sigma_b needs b prime to P");
    const auto& sp = sigma_pow_[b - 1];
    const Field* G = x.den.field();
    std::vector<Poly> acc(n0_, Poly(G));
    for (std::uint64_t i = 0; i < n0_; ++i) {
        if (x.c[i].is_zero()) continue;
        for (std::uint64_t k = 0; k < n0_; ++k)
            if (!sp[i].c[k].is_zero()) acc[k] += x.c[i] * sp[i].c[k];
    }
    return make(std::move(acc), x.den);
}

CycElem CycField::sigma_poly(const Poly& b, const CycElem& x) const { return sigma(R_.from_poly(b), x); }

std::vector<CycElem> CycField::all_sigma(const CycElem& x) const {
    std::vector<CycElem> r;
    r.reserve(n0_);
    for (Elem b = 1; b <= n0_; ++b) r.push_back(sigma(b, x));
    return r;
}

Character CycField::character(std::uint64_t n) const {
    Character ch;
    ch.n = n % n0_;
    ch.odd = ch.n % (q_ - 1) == 1 % (q_ - 1);
    ch.orbit = orbit_of(ch.n);
    return ch;
}

CycElem CycField::idempotent_from_images(std::uint64_t n, const std::vector<CycElem>& images) const {
    const Field* FF = F();
    const std::uint64_t inv_n = inverse_exponent(n);
    std::vector<Poly> acc(n0_, Poly(FF));
    for (Elem b = 1; b <= n0_; ++b) {
        const Elem s = FF->neg(FF->pow(b, inv_n));
        const CycElem& y = images[b - 1];
        for (std::uint64_t k = 0; k < n0_; ++k)
            if (!y.c[k].is_zero()) acc[k] += y.c[k].with_field(FF).scaled(s);
    }
    return make(std::move(acc), images[0].den.with_field(FF));
}

CycElem CycField::idempotent(std::uint64_t n, const CycElem& x) const { return idempotent_from_images(n, all_sigma(x)); }

std::vector<CycElem> CycField::idempotents(const CycElem& x) const {
    auto images = all_sigma(x);
    std::vector<CycElem> r;
    r.reserve(n0_);
    for (std::uint64_t n = 0; n < n0_; ++n) r.push_back(idempotent_from_images(n, images));
    return r;
}

CycElem CycField::gauss_thakur_direct_qpower(int i, Elem c) const {
    const Field* FF = F();
    std::uint64_t e = 1;
    for (int k = 0; k < i; ++k) e = e * q_ % n0_;
    const std::uint64_t inv_e = inverse_exponent(e);
    std::vector<Poly> acc(n0_, Poly(FF));
    for (Elem b = 1; b <= n0_; ++b) {
        const Elem s = FF->neg(FF->pow(b, inv_e));
        const CycElem& y = sigma_lam_[FF->mul(b, c) - 1];
        for (std::uint64_t k = 0; k < n0_; ++k)
            if (!y.c[k].is_zero()) acc[k] += y.c[k].with_field(FF).scaled(s);
    }
    return make(std::move(acc), Poly::one(FF));
}

CycElem CycField::gauss_thakur(std::uint64_t n, Elem c) const {
    n %= n0_;
    std::vector<CycElem> base;
    if (c == 1) {
        base = tau_qpow_;
    } else {
        for (int i = 0; i < d_; ++i) base.push_back(gauss_thakur_direct_qpower(i, c));
    }
    CycElem r = one(F());
    for (int i = 0; n; ++i, n /= q_)
        if (n % q_) r = mul(r, pow(base[static_cast<std::size_t>(i)], n % q_));
    return r;
}

CycElem CycField::eta() const {
    CycElem s = zero(F());
    for (std::uint64_t n = 0; n < n0_; ++n) s = add(s, gauss_thakur(n));
    auto e = descend(s);
    if (!e) throw std::logic_error("sum of Gauss-Thakur sums does not descend");
    return *e;
}

RatFunc CycField::b1(std::uint64_t n, Elem c) const {
    const CycElem linv = c == 1 ? lambda_inv_ : sigma(c, lambda_inv_);
    const CycElem e = idempotent(n, linv);
    const CycElem t = gauss_thakur(n, c);
    std::size_t j = n0_;
    for (std::size_t i = 0; i < n0_; ++i)
        if (!t.c[i].is_zero()) {
            j = i;
            break;
        }
    if (j == n0_) throw std::logic_error("Gauss-Thakur sum vanishes");
    // e = B t coordinatewise: e_i t_j = e_j t_i
    for (std::size_t i = 0; i < n0_; ++i)
        if (e.c[i] * t.c[j] != e.c[j] * t.c[i]) throw std::logic_error("e_chi(lambda^-1) is not a multiple of tau(chi)");
    return RatFunc(e.c[j].with_field(F()), (e.den * t.c[j]).with_field(F()));
}

std::vector<Laurent> CycField::lambda_at_places(std::int64_t prec) const {
    std::lock_guard<std::mutex> lock(lam_mu_);
    if (lam_prec_ < prec) {
        const int r = ram();
        std::vector<Laurent> out;
        for (Elem b : coset_reps_) {
            const Poly bp = R_.to_poly(b);
            std::int64_t W = prec + static_cast<std::int64_t>(q_) + r * (d_ + bp.deg()) + 4;
            for (;;) {
                Laurent z = pi_bar(Fq_.get(), W) * Laurent::from_poly(bp, r) * Laurent::from_poly(P_, r).inv(W);
                Laurent e = exp_eval(tabs_, z, prec);
                if (e.prec() >= prec) {
                    out.push_back(e.truncated(prec));
                    break;
                }
                W += prec - e.prec() + 4;
            }
        }
        lam_cache_ = std::move(out);
        lam_prec_ = prec;
    }
    std::vector<Laurent> r;
    for (const auto& x : lam_cache_) r.push_back(x.truncated(prec));
    return r;
}

KInfTuple CycField::embed_infty(const CycElem& x, std::int64_t prec) const {
    const int r = ram();
    std::int64_t W = prec + 8;
    for (int attempt = 0; attempt < 16; ++attempt) {
        auto lam = lambda_at_places(W);
        KInfTuple out;
        std::int64_t got = kInfPrec;
        for (const auto& E : lam) {
            Laurent acc(x.den.field(), r);
            for (std::size_t i = n0_; i-- > 0;) {
                acc = acc * E;
                if (!x.c[i].is_zero()) acc += Laurent::from_poly(x.c[i], r);
            }
            if (!x.den.is_one()) acc = acc * Laurent::from_poly(x.den, r).inv(W);
            got = std::min(got, acc.prec());
            out.push_back(std::move(acc));
        }
        if (got >= prec) {
            for (auto& v : out) v = v.truncated(prec);
            return out;
        }
        W += prec - got + 8;
    }
    throw std::runtime_error("embed_infty: precision exhausted");
}

KInfTuple CycField::places_from_coords(const KInfCoords& x, const std::vector<Laurent>& lam) const {
    const int r = ram();
    KInfTuple out;
    for (const auto& E : lam) {
        Laurent acc(E.field(), r);
        for (std::size_t i = n0_; i-- > 0;) acc = acc * E + x[i].to_ramified(r);
        out.push_back(std::move(acc));
    }
    return out;
}

PadicCycRing::Vec CycField::embed_padic(const CycElem& x, const PadicCycRing& ring) const {
    const int N = ring.N();
    PadicCycRing::Vec out(n0_, Poly(Fq_.get()));
    if (x.den.field() != Fq_.get()) {
        for (std::uint64_t i = 0; i < n0_; ++i) {
            if (x.c[i].is_zero()) continue;
            auto img = embed_tensor_to_padic(RatFunc(x.c[i], x.den), R_, N);
            if (img.vP < 0) throw std::domain_error("embed_padic: element is not P-integral");
            out[i] = img.value;
        }
        return out;
    }
    if (divides(P_, x.den)) throw std::domain_error("embed_padic: element is not P-integral");
    const Poly& mod = ring.context()->P_pow(N);
    const Poly inv = invmod(x.den % mod, mod);
    for (std::uint64_t i = 0; i < n0_; ++i) out[i] = mulmod(x.c[i], inv, mod);
    return out;
}

KInfCoords CycField::coords_of(const CycElem& x, std::int64_t prec) const {
    KInfCoords out;
    for (std::uint64_t i = 0; i < n0_; ++i) out.push_back(Laurent::from_ratfunc(RatFunc(x.c[i], x.den), 1, prec));
    return out;
}

KInfCoords CycField::coords_sigma(Elem b, const KInfCoords& x) const {
    if (b == 0 || b > n0_) throw std::domain_error("sigma_b needs b prime to P");
    const auto& sp = sigma_pow_[b - 1];
    KInfCoords out(n0_, Laurent(x[0].field(), 1));
    for (std::uint64_t i = 0; i < n0_; ++i) {
        if (x[i].is_zero() && x[i].is_exact()) continue;
        for (std::uint64_t k = 0; k < n0_; ++k)
            if (!sp[i].c[k].is_zero()) out[k] += x[i] * Laurent::from_poly(sp[i].c[k], 1);
    }
    // exponents below the worst input precision are certified
    std::int64_t p = kInfPrec;
    for (const auto& y : x) p = std::min(p, y.prec());
    for (auto& y : out) y = y.truncated(std::min(y.prec(), p));
    return out;
}

KInfCoords CycField::coords_idempotent(std::uint64_t n, const KInfCoords& x) const {
    const Field* FF = F();
    const std::uint64_t inv_n = inverse_exponent(n);
    KInfCoords out(n0_, Laurent(FF, 1));
    for (Elem b = 1; b <= n0_; ++b) {
        const Elem s = FF->neg(FF->pow(b, inv_n));
        KInfCoords y = coords_sigma(b, x);
        for (std::uint64_t k = 0; k < n0_; ++k) out[k] += y[k].with_field(FF).scaled(s);
    }
    return out;
}

Poly poly_det(std::vector<std::vector<Poly>> M) {
    const std::size_t n = M.size();
    if (n == 0) throw std::invalid_argument("poly_det of an empty matrix");
    const Field* G = nullptr;
    for (const auto& row : M)
        for (const auto& x : row)
            if (x.field()) G = G ? common_field(G, x.field()) : x.field();
    bool flip = false;
    Poly prev = Poly::one(G);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M[k][k].is_zero()) {
            std::size_t i = k + 1;
            while (i < n && M[i][k].is_zero()) ++i;
            if (i == n) return Poly(G);
            std::swap(M[i], M[k]);
            flip = !flip;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
            M[i][k] = Poly(G);
        }
        prev = M[k][k];
    }
    Poly r = M[n - 1][n - 1].field() ? M[n - 1][n - 1] : Poly(G);
    return flip ? -r : r;
}

Poly fitting_generator_single(const std::vector<std::vector<Poly>>& pres) {
    const std::size_t m = pres.size();
    if (m == 0) throw std::domain_error("empty presentation");
    const std::size_t k = pres[0].size();
    if (k == 0) throw std::domain_error("presentation without generators");
    if (m < k) throw std::domain_error("module not finite: fewer relations than generators");
    Poly g;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        std::vector<std::vector<Poly>> sub;
        for (auto r : idx) sub.push_back(pres[r]);
        Poly minor = poly_det(sub);
        if (!minor.is_zero()) g = g.field() ? gcd(g, minor) : minor.monic();
        if (g.field() && g.is_one()) break;
        // next k-subset of rows
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!g.field()) throw std::domain_error("module not finite: all maximal minors vanish");
    return g;
}

EquivariantPoly fitting_generator(const CycField& K, const std::vector<std::vector<std::vector<Poly>>>& per_orbit) {
    const auto& orbits = K.orbits();
    if (per_orbit.size() != orbits.size()) throw std::invalid_argument("one presentation per orbit expected");
    const std::uint64_t n0 = K.n0();
    EquivariantPoly out;
    out.by_char.assign(n0, Poly(K.F()));
    for (std::size_t o = 0; o < orbits.size(); ++o) {
        Poly g = fitting_generator_single(per_orbit[o]).with_field(K.F());
        Poly back = g;
        for (std::size_t j = 0; j < orbits[o].size(); ++j) back = back.map_coeffs_frob();
        if (back != g) throw std::invalid_argument("presentation is not defined over the orbit field");
        std::uint64_t n = orbits[o][0];
        for (std::size_t j = 0; j < orbits[o].size(); ++j) {
            out.by_char[n] = g;
            g = g.map_coeffs_frob();
            n = n * K.q() % n0;
        }
    }
    return out;
}

bool descends(const CycField& K, const std::vector<Poly>& by_char) {
    const std::uint64_t n0 = K.n0();
    for (std::uint64_t n = 0; n < n0; ++n)
        if (by_char[n * K.q() % n0] != frob_poly(by_char[n], K.F())) return false;
    return true;
}

bool descends(const CycField& K, const std::vector<RatFunc>& by_char) {
    const std::uint64_t n0 = K.n0();
    for (std::uint64_t n = 0; n < n0; ++n)
        if (by_char[n * K.q() % n0] != by_char[n].with_field(K.F()).map_coeffs_frob()) return false;
    return true;
}

bool descends(const CycField& K, const std::vector<Laurent>& by_char) {
    const std::uint64_t n0 = K.n0();
    for (std::uint64_t n = 0; n < n0; ++n)
        if (!compare(by_char[n * K.q() % n0], by_char[n].with_field(K.F()).map_coeffs_frob()).equal) return false;
    return true;
}

Laurent normalize_leading(const Laurent& x) {
    if (x.is_zero()) return x;
    return x.scaled(x.field()->inv(x.lead()));
}

LatticeIndex lattice_index(const std::vector<std::vector<Laurent>>& l1, const std::vector<std::vector<Laurent>>& l2) {
    if (l1.size() != l2.size()) throw std::invalid_argument("lattice_index: character counts differ");
    LatticeIndex out;
    for (std::size_t n = 0; n < l1.size(); ++n) {
        const auto& a = l1[n];
        const auto& b = l2[n];
        std::size_t j = a.size();
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!a[i].is_zero() && (j == a.size() || a[i].val() < a[j].val())) j = i;
        if (j == a.size() || b[j].is_zero()) throw std::invalid_argument("lattice_index: input is not a basis");
        std::int64_t target = kInfPrec;
        if (!a[j].is_exact()) target = a[j].prec() - 2 * a[j].val() + b[j].val();
        if (!b[j].is_exact()) target = std::min(target, b[j].prec() - a[j].val());
        if (is_inf_prec(target)) target = 64 + b[j].val() - a[j].val();
        Laurent f = b[j] * a[j].inv(target + a[j].val() - b[j].val());
        f = f.truncated(std::min(f.prec(), target));
        bool ok = true;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == j) continue;
            if (!compare(b[i] * a[j], b[j] * a[i]).equal) ok = false;
        }
        out.by_char.push_back(normalize_leading(f));
        out.consistent.push_back(ok);
    }
    return out;
}

}  // namespace cff
