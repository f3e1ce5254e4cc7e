#include "doctest.h"

#include <random>

#include "cff/laurent.hpp"
#include "cff/padic.hpp"

using namespace cff;

namespace {

Poly rpoly(const Field* F, int deg, std::mt19937& rng, bool monic = false) {
    std::vector<Elem> c(deg + 1);
    for (auto& x : c) x = rng() % F->size();
    if (monic) c.back() = 1;
    return Poly(F, c);
}

Laurent random_unit(const Field* F, int ram, std::mt19937& rng, std::int64_t prec) {
    Laurent x = Laurent::monomial(F, ram, 1 + rng() % (F->size() - 1), static_cast<std::int64_t>(rng() % 7) - 3);
    for (int i = 1; i < 10; ++i) x += Laurent::monomial(F, ram, rng() % F->size(), x.val() + i);
    return x.truncated(prec);
}

}  // namespace

TEST_CASE("Laurent valuation laws") {
    std::mt19937 rng(3);
    auto F3 = make_field(3, 1);
    for (int ram : {1, 2}) {
        for (int t = 0; t < 50; ++t) {
            Laurent x = random_unit(F3.get(), ram, rng, 20), y = random_unit(F3.get(), ram, rng, 20);
            CHECK((x * y).val() == x.val() + y.val());
            Laurent s = x + y;
            CHECK(s.val() >= std::min(x.val(), y.val()));
            if (x.val() != y.val()) CHECK(s.val() == std::min(x.val(), y.val()));
            CHECK((x * y).prec() == std::min(x.prec() + y.val(), y.prec() + x.val()));
            Laurent one = x * x.inv();
            auto g = compare(one, Laurent::monomial(F3.get(), ram, 1, 0));
            CHECK(g.equal);
            CHECK(g.overlap == 20 - x.val());
        }
    }
}

TEST_CASE("ramified completion relations") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto Fq = make_field(p, 1);
        const Field* F = Fq.get();
        const int r = static_cast<int>(p - 1);
        Laurent Y = Laurent::monomial(F, r, 1, -1);
        Laurent T = Laurent::from_poly(Poly::var(F), r);
        CHECK((Y.pow(p - 1) + T).is_zero());
        // norm of Y: product of its conjugates zeta Y over zeta in F_q^x
        Laurent norm = Laurent::monomial(F, r, 1, 0);
        for (Elem z = 1; z < p; ++z) norm *= Y.scaled(z);
        CHECK(compare(norm, T).equal);
        auto comps = T.components();
        CHECK(comps[0].coeff(-1) == 1);
    }
}

TEST_CASE("pi bar") {
    auto F2 = make_field(2, 1);
    {
        // q = 2: T^2 prod (1 - T^{1-2^n})^{-1}; coefficient of T^{2-k} is the parity of the
        // number of partitions of k into parts of the form 2^n - 1
        Laurent pb = pi_bar(F2.get(), 12);
        CHECK(pb.val() == -2);
        CHECK(pb.prec() == 12);
        auto count = [](int k) {
            std::vector<long> ways(k + 1, 0);
            ways[0] = 1;
            for (int part = 1; part <= k; part = 2 * part + 1)
                for (int i = part; i <= k; ++i) ways[i] += ways[i - part];
            return ways[k];
        };
        for (int e = -2; e < 12; ++e) CHECK(pb.coeff(e) == static_cast<Elem>(count(e + 2) % 2));
    }
    for (std::uint32_t p : {3u, 5u}) {
        auto Fq = make_field(p, 1);
        const Field* F = Fq.get();
        const std::int64_t q = p;
        Laurent pb = pi_bar(F, 80);
        CHECK(pb.val() == -q);   // v = -q/(q-1) in 1/T units
        // pi^{q-1} = (-T)^q prod (1 - T^{1-q^n})^{-(q-1)} lies in k_inf
        Laurent lhs = pb.pow(q - 1);
        Poly mT = -Poly::var(F);
        Laurent rhs = Laurent::from_poly(mT.pow(q), 1);
        for (std::int64_t qn = q; qn - 1 < 80; qn *= q) {
            // 1 - T^{1-q^n} = (T^{q^n-1} - 1)/T^{q^n-1}
            Laurent fac = Laurent::from_poly(Poly::monomial(F, 1, qn - 1) - Poly::one(F), 1).shifted(qn - 1);
            rhs = rhs * fac.inv(100).pow(q - 1);
        }
        auto comps = lhs.components();
        for (std::size_t j = 1; j < comps.size(); ++j) CHECK(comps[j].is_zero());
        auto g = compare(comps[0], rhs);
        CHECK(g.equal);
        CHECK(g.overlap >= 10);
        if (p == 3) {
            // Y^3 (1 + T^{-2} + ...)
            Laurent unit = pb * Laurent::monomial(F, 2, 1, -3).inv();
            auto c = unit.components();
            CHECK(c[0].coeff(0) == 1);
            CHECK(c[0].coeff(1) == 0);
            CHECK(c[0].coeff(2) == 1);
            CHECK(c[1].is_zero());
        }
    }
}

TEST_CASE("Pade recognition") {
    auto F2 = make_field(2, 1);
    auto F3 = make_field(3, 1);
    const Field* F = F2.get();
    Poly T = Poly::var(F), one = Poly::one(F);
    {
        RatFunc x(one, T - one);
        Laurent s = Laurent::from_ratfunc(x, 1, 12);
        CHECK(pade_recognize(s, 0, 1) == x);
    }
    CHECK(pade_recognize(Laurent::from_poly(T, 1).truncated(8), 1, 0) == RatFunc(T));
    {
        Poly P = parse_poly("T^3+T+1", F);
        Laurent s = Laurent::from_ratfunc(RatFunc(P + one, T * T + T), 1, 12);
        RatFunc r = pade_recognize(s, 3, 2);
        CHECK(r == RatFunc(T + one));
    }
    std::mt19937 rng(17);
    for (int t = 0; t < 40; ++t) {
        const Field* G = F3.get();
        Poly a = rpoly(G, rng() % 4, rng), b = rpoly(G, rng() % 4, rng, true);
        RatFunc x(a, b);
        Laurent s = Laurent::from_ratfunc(x, 1, 16);
        CHECK(pade_recognize(s, 3, 3) == x);
    }
    CHECK_THROWS(pade_recognize(Laurent::from_ratfunc(RatFunc(Poly::one(F3.get()), parse_poly("T^3+2", F3.get())), 1, 6), 0, 3, 2));
}

TEST_CASE("Teichmueller lift") {
    auto F3 = make_field(3, 1);
    const Field* F = F3.get();
    Poly P = parse_poly("T^2+1", F);
    ResidueField R(F3, P);
    CHECK(teichmuller_lift(R, 0, 3).is_zero());
    CHECK(teichmuller_lift(R, 1, 3).is_one());
    // N = 2: among T + P(a + bT) exactly one satisfies y^9 = y mod P^2
    Poly P2 = P * P;
    Poly lifted = teichmuller_lift(R, R.theta(), 2);
    int found = 0;
    for (Elem a = 0; a < 3; ++a)
        for (Elem b = 0; b < 3; ++b) {
            Poly y = Poly::var(F) + P * Poly(F, {a, b});
            if (powmod(y, 9, P2) == y % P2) {
                ++found;
                CHECK(y % P2 == lifted);
            }
        }
    CHECK(found == 1);
    Teichmuller tm(R, 4);
    Poly P4 = P.pow(4);
    const Field* FF = R.field();
    for (Elem x = 0; x < R.size(); ++x) {
        for (Elem y = 0; y < R.size(); ++y) {
            CHECK(mulmod(tm.lift(x), tm.lift(y), P4) == tm.lift(FF->mul(x, y)));
            CHECK((tm.lift(x) + tm.lift(y)) % P4 == tm.lift(FF->add(x, y)));
        }
        CHECK(tm.lift(x) == teichmuller_lift(R, x, 4));
    }
    for (Elem c = 0; c < 3; ++c) CHECK(tm.lift(c) == Poly::constant(F, c));
}

TEST_CASE("tensor elements into k_P") {
    auto F3 = make_field(3, 1);
    const Field* F = F3.get();
    Poly P = parse_poly("T^2+1", F);
    ResidueField R(F3, P);
    const Field* FF = R.field();
    auto img = embed_tensor_to_padic(RatFunc(P.with_field(FF)), R, 3);
    CHECK(img.vP == 1);
    CHECK(img.value == P);
    auto th = embed_tensor_to_padic(RatFunc(Poly::constant(FF, R.theta())), R, 3);
    CHECK(th.vP == 0);
    CHECK(th.value == teichmuller_lift(R, R.theta(), 3));
    // 1 (x) T - theta (x) 1: T - lift(theta) is divisible by P exactly once
    Poly x(FF, {FF->neg(R.theta()), 1});
    auto v = embed_tensor_to_padic(RatFunc(x), R, 3);
    CHECK(v.vP == 1);
    Poly direct = (Poly::var(F) - teichmuller_lift(R, R.theta(), 4)) % P.pow(3);
    CHECK(v.value == direct);
    auto inv = embed_tensor_to_padic(RatFunc(Poly::one(FF), x), R, 3);
    CHECK(inv.vP == -1);
    CHECK_THROWS_AS(embed_tensor_to_padic(RatFunc(Poly::one(FF), x * x * x), R, 3), std::domain_error);
}

TEST_CASE("P-adic elements") {
    auto F2 = make_field(2, 1);
    Poly P = parse_poly("T^2+T+1", F2.get());
    PadicContext ctx(P, 5);
    PadicElem a(&ctx, P * Poly::var(F2.get())), b(&ctx, P);
    CHECK(a.valuation() == 1);
    PadicElem c = a / b;
    CHECK(c.prec() == 4);
    CHECK(c == PadicElem(&ctx, Poly::var(F2.get())));
    CHECK_THROWS(b / a * PadicElem(&ctx, P * P) / PadicElem(&ctx, P.pow(3)));
    CHECK(PadicElem(&ctx, Poly(F2.get())).valuation() == 5);
}
