#include "cff/carlitz.hpp"

#include <algorithm>
#include <stdexcept>

namespace cff {

TauPoly tau_add(const TauPoly& f, const TauPoly& g) {
    const Field* F = f.empty() ? g.at(0).field() : f[0].field();
    TauPoly r(std::max(f.size(), g.size()), Poly(F));
    for (std::size_t i = 0; i < f.size(); ++i) r[i] += f[i];
    for (std::size_t i = 0; i < g.size(); ++i) r[i] += g[i];
    while (r.size() > 1 && r.back().is_zero()) r.pop_back();
    return r;
}

TauPoly tau_compose(const TauPoly& f, const TauPoly& g) {
    if (f.empty() || g.empty()) return {};
    const Field* F = f[0].field();
    const std::uint64_t q = F->size();
    TauPoly r(f.size() + g.size() - 1, Poly(F));
    std::uint64_t qi = 1;
    for (std::size_t i = 0; i < f.size(); ++i, qi *= q) {
        if (f[i].is_zero()) continue;
        for (std::size_t j = 0; j < g.size(); ++j)
            if (!g[j].is_zero()) r[i + j] += f[i] * g[j].subs_power(qi);
    }
    while (r.size() > 1 && r.back().is_zero()) r.pop_back();
    return r;
}

TauPoly carlitz_poly(const Poly& a) {
    const Field* F = a.field();
    const std::uint64_t q = F->size();
    const Poly T = Poly::var(F);
    TauPoly acc;
    TauPoly cur = {Poly::one(F)};   // phi_{T^k}
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (k > 0) {
            TauPoly nxt(cur.size() + 1, Poly(F));
            for (std::size_t j = 0; j < cur.size(); ++j) {
                nxt[j] += T * cur[j];
                nxt[j + 1] += cur[j].subs_power(q);
            }
            cur = std::move(nxt);
        }
        if (a[k] == 0) continue;
        TauPoly term(cur.size(), Poly(F));
        for (std::size_t j = 0; j < cur.size(); ++j) term[j] = cur[j].scaled(a[k]);
        acc = acc.empty() ? term : tau_add(acc, term);
    }
    if (acc.empty()) acc = {Poly(F)};
    return acc;
}

const Poly& CarlitzTables::D(int i) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = D_.find(i);
    if (it != D_.end()) return it->second;
    const std::uint64_t q = Fq_->size();
    std::uint64_t qi = 1;
    for (int k = 0; k < i; ++k) qi *= q;
    Poly prod = Poly::one(Fq_);
    std::uint64_t qj = 1;
    for (int j = 0; j < i; ++j, qj *= q) prod *= Poly::monomial(Fq_, 1, qi) - Poly::monomial(Fq_, 1, qj);
    return D_.emplace(i, std::move(prod)).first->second;
}

const Poly& CarlitzTables::L(int i) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = L_.find(i);
    if (it != L_.end()) return it->second;
    const std::uint64_t q = Fq_->size();
    Poly prod = Poly::one(Fq_);
    std::uint64_t qj = 1;
    for (int j = 1; j <= i; ++j) {
        qj *= q;
        prod *= Poly::monomial(Fq_, 1, qj) - Poly::var(Fq_);
    }
    return L_.emplace(i, std::move(prod)).first->second;
}

Poly CarlitzTables::factorial(std::uint64_t n) const {
    const std::uint64_t q = Fq_->size();
    Poly r = Poly::one(Fq_);
    for (int i = 0; n; ++i, n /= q) {
        std::uint64_t digit = n % q;
        if (digit) r *= D(i).pow(digit);
    }
    return r;
}

std::uint64_t predicted_vP_D(std::uint64_t q, int d, int i) {
    std::uint64_t s = 0, qj = 1;
    for (int j = 0; j < i; ++j, qj *= q)
        if ((i - j) % d == 0) s += qj;
    return s;
}

std::vector<Elem> bc_stream_mod_P(const ResidueField& R, std::uint64_t n_max) {
    const std::uint64_t q = R.q();
    const std::uint64_t qd = R.size();
    if (n_max + 1 >= qd) throw std::invalid_argument("bc_stream_mod_P needs n_max < q^d - 1");
    const Field& F = *R.field();
    // theta^{q^j} for j <= d
    std::vector<Elem> thp{R.theta()};
    for (int j = 1; j < R.d(); ++j) thp.push_back(F.frob(thp.back()));
    std::vector<std::uint64_t> qpow{1};
    std::vector<Elem> invD{1};
    for (int i = 1; qpow.back() * q <= n_max + 1; ++i) {
        qpow.push_back(qpow.back() * q);
        Elem prod = 1;
        for (int j = 0; j < i; ++j) prod = F.mul(prod, F.sub(thp[static_cast<std::size_t>(i)], thp[static_cast<std::size_t>(j)]));
        invD.push_back(F.inv(prod));
    }
    std::vector<Elem> b(n_max + 1, 0);
    for (std::uint64_t N = 1; N <= n_max + 1; ++N) {
        Elem s = N == 1 ? 1 : 0;
        for (std::size_t i = 1; i < qpow.size() && qpow[i] <= N; ++i) {
            Elem prev = b[N - qpow[i]];
            if (prev) s = F.sub(s, F.mul(prev, invD[i]));
        }
        b[N - 1] = s;
    }
    return b;
}

std::vector<BCValue> bc_exact_table(const CarlitzTables& tabs, std::uint64_t n_max, std::uint64_t work_limit) {
    if (n_max > work_limit) throw std::length_error("bc_exact: index beyond the work limit");
    const Field* Fq = tabs.field();
    const std::uint64_t q = tabs.q();
    std::vector<std::uint64_t> qpow{1};
    while (qpow.back() * q <= n_max + 1) qpow.push_back(qpow.back() * q);
    std::vector<RatFunc> b(n_max + 1, RatFunc(Fq));
    for (std::uint64_t N = 1; N <= n_max + 1; ++N) {
        RatFunc s = N == 1 ? RatFunc(Poly::one(Fq)) : RatFunc(Fq);
        for (std::size_t i = 1; i < qpow.size() && qpow[i] <= N; ++i) {
            const RatFunc& prev = b[N - qpow[i]];
            if (prev.is_zero()) continue;
            s -= prev * RatFunc(Poly::one(Fq), tabs.D(static_cast<int>(i)));
        }
        b[N - 1] = s;
    }
    std::vector<BCValue> out;
    out.reserve(n_max + 1);
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        BCValue v;
        v.n = n;
        v.bc_prime = b[n];
        v.bc = b[n].is_zero() ? b[n] : b[n] * RatFunc(tabs.factorial(n));
        out.push_back(std::move(v));
    }
    return out;
}

BCValue bc_exact(const CarlitzTables& tabs, std::uint64_t n, std::uint64_t work_limit) {
    return bc_exact_table(tabs, n, work_limit).back();
}

Laurent exp_eval(const CarlitzTables& tabs, const Laurent& z, std::int64_t target) {
    if (z.is_zero()) return Laurent(z.field(), z.ram(), std::min(target, z.prec()));
    const std::uint64_t q = tabs.q();
    const std::int64_t v = z.val();
    const int ram = z.ram();
    Laurent acc = z.truncated(target);
    Laurent y = z;
    std::int64_t qi = 1;
    for (int i = 1;; ++i) {
        qi *= static_cast<std::int64_t>(q);
        const std::int64_t growth = v + static_cast<std::int64_t>(ram) * i;
        if (growth > 0 && qi * growth >= target) break;
        if (static_cast<double>(qi) * i > 2e6) throw std::runtime_error("exp_eval: argument valuation too small for a finite truncation");
        y = y.qpow(q);
        if (y.is_zero()) {
            acc = acc.truncated(y.prec());
            continue;
        }
        Laurent invD = Laurent::from_poly(tabs.D(i), ram).inv(target - y.val());
        acc += y * invD;
    }
    return acc.truncated(target);
}

namespace {

using Vec = PadicCycRing::Vec;

Vec divide_exact(const PadicCycRing& W, const Vec& y, const Poly& D, const Poly& P) {
    Poly unit;
    int v = valuation(D, P, &unit);
    const Poly& Pv = W.context()->P_pow(v);
    Vec r = y;
    for (auto& c : r) {
        auto [quo, rem] = divmod(c, Pv);
        if (!rem.is_zero()) throw std::logic_error("P-adic series term is not integral");
        c = quo;
    }
    const Poly& mod = W.context()->P_pow(W.N());
    return W.scale(invmod(unit % mod, mod), r);
}

Vec lift_to(const PadicCycRing& W, const Vec& z) {
    Vec r = z;
    for (auto& c : r) c = W.context()->reduce(c);
    return r;
}

}  // namespace

Vec padic_exp(const CarlitzTables& tabs, const PadicCycRing& ring, const Vec& z) {
    const int v = ring.valuation(z);
    if (v < 2) throw std::domain_error("padic_exp needs an argument in m^2");
    const std::uint64_t q = tabs.q();
    const int target = ring.m_precision();
    // terms i with q^i (v - 1) < target
    int I = 0;
    for (std::uint64_t qi = q; static_cast<std::int64_t>(qi) * (v - 1) < target; qi *= q) ++I;
    int extra = 0;
    for (int i = 1; i <= I; ++i) extra = std::max(extra, valuation(tabs.D(i), ring.P()));
    PadicCycRing W = ring.at_precision(ring.N() + extra);
    Vec y = lift_to(W, z), acc = lift_to(W, z);
    for (int i = 1; i <= I; ++i) {
        y = W.qpow(y);
        acc = W.add(acc, divide_exact(W, y, tabs.D(i), ring.P()));
    }
    return ring.reduce(acc);
}

Vec padic_log(const CarlitzTables& tabs, const PadicCycRing& ring, const Vec& z) {
    const int v = ring.valuation(z);
    if (v < 2) throw std::domain_error("padic_log needs an argument in m^2");
    const std::uint64_t q = tabs.q();
    const int target = ring.m_precision();
    const int n0 = ring.n0();
    const int d = ring.context()->d();
    int I = 0;
    {
        std::int64_t qi = 1;
        for (int i = 1;; ++i) {
            qi *= static_cast<std::int64_t>(q);
            if (qi * v - static_cast<std::int64_t>(n0) * (i / d) >= target) break;
            I = i;
        }
    }
    int extra = 0;
    for (int i = 1; i <= I; ++i) extra = std::max(extra, valuation(tabs.L(i), ring.P()));
    PadicCycRing W = ring.at_precision(ring.N() + extra);
    Vec y = lift_to(W, z), acc = lift_to(W, z);
    for (int i = 1; i <= I; ++i) {
        y = W.qpow(y);
        Vec t = divide_exact(W, y, tabs.L(i), ring.P());
        acc = (i & 1) ? W.sub(acc, t) : W.add(acc, t);
    }
    return ring.reduce(acc);
}

Vec padic_carlitz_act(const PadicCycRing& ring, const Poly& a, const Vec& z) {
    return carlitz_apply(
        carlitz_poly(a), z, [&](const Vec& x, const Vec& y) { return ring.add(x, y); },
        [&](const Poly& s, const Vec& x) { return ring.scale(s, x); }, [&](const Vec& x) { return ring.qpow(x); });
}

}  // namespace cff
