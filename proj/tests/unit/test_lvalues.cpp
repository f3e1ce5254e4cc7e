#include "doctest.h"

#include "cff/lvalues.hpp"

using namespace cff;

namespace {

struct Case {
    std::uint32_t p;
    const char* P;
};

}  // namespace

TEST_CASE("class sums at infinity") {
    for (auto cs : {Case{2, "T^2+T+1"}, Case{3, "T^2+1"}, Case{2, "T^3+T+1"}, Case{3, "T+1"}}) {
        auto Fq = make_field(cs.p, 1);
        CycField K(Fq, parse_poly(cs.P, Fq.get()));
        for (int depth : {0, 1, 5, 8}) {
            auto fast = class_sums_inf(K, depth);
            auto slow = class_sums_inf_naive(K, depth);
            for (int n = 0; n <= depth; ++n)
                for (Elem c = 0; c <= K.n0(); ++c) {
                    auto g = compare(fast.R[n][c], slow.R[n][c]);
                    CHECK(g.equal);
                    CHECK(g.overlap == depth + 1);
                    CHECK(fast.R[n][c].val() >= n);
                }
        }
        auto t = class_sums_inf(K, 3);
        CHECK(compare(t.R[0][1], Laurent::monomial(Fq.get(), 1, 1, 0)).equal);
        for (Elem c = 2; c <= K.n0(); ++c) CHECK(t.R[0][c].is_zero());
    }
    auto F2 = make_field(2, 1);
    const Field* F = F2.get();
    CycField K(F2, parse_poly("T^2+T+1", F));
    auto t = class_sums_inf(K, 10);
    Poly T = Poly::var(F), one = Poly::one(F);
    CHECK(compare(t.R[1][K.residue_of(T)], Laurent::from_ratfunc(RatFunc(one, T), 1, 11)).equal);
    CHECK(compare(t.R[1][K.residue_of(T + one)], Laurent::from_ratfunc(RatFunc(one, T + one), 1, 11)).equal);
    CHECK_THROWS_AS(class_sums_inf(K, 60, 1000), std::length_error);
}

TEST_CASE("L-values at infinity") {
    {
        auto F2 = make_field(2, 1);
        const Field* F = F2.get();
        Poly P = parse_poly("T^2+T+1", F);
        CycField K(F2, P);
        auto tab = class_sums_inf(K, 20);
        for (std::uint64_t n = 0; n < K.n0(); ++n) {
            auto L = l_inf(K, tab, n);
            CHECK(L.value.val() == 0);
            CHECK(L.value.lead() == 1);
            CHECK(L.certified == 21);
        }
        // trivial character: pi_bar / (T^2 + T)
        Laurent rhs = pi_bar(F, 40) * Laurent::from_poly(parse_poly("T^2+T", F), 1).inv(40);
        auto g = compare(l_inf(K, tab, 0).value, rhs);
        CHECK(g.equal);
        CHECK(g.overlap == 21);
        // PA classes: (1/P) sum_{deg b <= depth - d} 1/b
        Laurent s(F, 1);
        for (int n = 0; n <= 18; ++n)
            for (Elem c = 0; c <= K.n0(); ++c) s += tab.R[n][c];
        CHECK(compare(tab.class_total(0), s * Laurent::from_poly(P, 1).inv(30)).equal);
        auto eq = l_inf_equivariant(K, tab);
        CHECK(eq.descends);
        CHECK(eq.unit);
    }
    {
        auto F3 = make_field(3, 1);
        CycField K(F3, parse_poly("T+1", F3.get()));
        auto tab = class_sums_inf(K, 12);
        auto eq = l_inf_equivariant(K, tab);
        CHECK(eq.by_char.size() == 2);
        CHECK(eq.descends);
        CHECK(eq.unit);
        for (std::uint64_t n = 0; n < 2; ++n) CHECK(compare(eq.by_char[n], l_inf(K, tab, n).value).equal);
    }
}

TEST_CASE("odd L-values through B_{1,chi} and Gauss-Thakur sums") {
    for (auto cs : {Case{2, "T^2+T+1"}, Case{3, "T^2+1"}, Case{2, "T^3+T+1"}}) {
        auto Fq = make_field(cs.p, 1);
        const Field* F = Fq.get();
        Poly P = parse_poly(cs.P, F);
        CycField K(Fq, P);
        const int r = K.ram();
        auto tab = class_sums_inf(K, 16);
        const std::int64_t W = 17 * r + 20;
        Laurent pi_over_P = pi_bar(F, W) * Laurent::from_poly(P, r).inv(W);
        for (std::uint64_t n = 1; n < K.n0(); ++n) {
            if (!K.character(n).odd) continue;
            std::uint64_t m = K.inverse_exponent(n);
            Laurent tau = K.embed_infty(K.gauss_thakur(m), W)[0];
            Laurent B = Laurent::from_ratfunc(K.b1(m), r, W);
            Laurent rhs = pi_over_P * B * tau;
            Laurent lhs = l_inf(K, tab, n).value.to_ramified(r);
            auto g = compare(lhs, rhs);
            CHECK(g.equal);
            CHECK(g.overlap - lhs.val() >= 12);
        }
    }
}

TEST_CASE("Euler products") {
    for (auto cs : {Case{2, "T^2+T+1"}, Case{3, "T^2+1"}}) {
        auto Fq = make_field(cs.p, 1);
        CycField K(Fq, parse_poly(cs.P, Fq.get()));
        const int B = 8;
        auto tab = class_sums_inf(K, B);
        for (std::uint64_t n = 0; n < K.n0(); ++n) {
            auto e = euler_product(K, n, B);
            auto g = compare(e.value, l_inf(K, tab, n).value);
            CHECK(g.equal);
            CHECK(g.overlap == B + 1);
        }
    }
}

TEST_CASE("Euler factor characteristic polynomial") {
    for (auto cs : {Case{2, "T^2+T+1"}, Case{3, "T^2+1"}, Case{2, "T^3+T+1"}}) {
        auto Fq = make_field(cs.p, 1);
        CycField K(Fq, parse_poly(cs.P, Fq.get()));
        const Field* FF = K.F();
        for (const Poly& f : monic_irreducibles_up_to(Fq.get(), 3))
            for (std::uint64_t n = 0; n < K.n0(); ++n) {
                Poly expect = f.with_field(FF) - Poly::constant(FF, chi_of_poly(K, n, f));
                CHECK(euler_factor_charpoly(K, n, f) == expect);
            }
    }
    auto F2 = make_field(2, 1);
    CycField K(F2, parse_poly("T^2+T+1", F2.get()));
    const Field* FF = K.F();
    CHECK(euler_factor_charpoly(K, 1, Poly::var(F2.get())) == Poly(FF, {FF->neg(K.residue().theta()), 1}));
}

TEST_CASE("P-adic L-values") {
    for (auto [text, N] : {std::pair{"T+1", 6}, std::pair{"T^2+1", 4}}) {
        auto F3 = make_field(3, 1);
        CycField K(F3, parse_poly(text, F3.get()));
        auto tab = class_sums_padic(K, N, N * K.d() + K.d());
        for (std::uint64_t n = 0; n < K.n0(); ++n) {
            auto L = l_padic(K, tab, n);
            if (K.character(n).odd) {
                CHECK(L.value.is_zero());
            } else {
                CHECK(!L.value.is_zero());
                CHECK(L.vP < N);
            }
            for (int deg = N * K.d() + 1; deg <= N * K.d() + K.d(); ++deg) CHECK(l_padic_block(K, tab, n, deg).is_zero());
        }
    }
    // trivial character at T + 1, N = 4, against an exact rational sum
    auto F3 = make_field(3, 1);
    const Field* F = F3.get();
    Poly P = parse_poly("T+1", F);
    CycField K(F3, P);
    auto tab = class_sums_padic(K, 4, 4);
    RatFunc s(F);
    for (int n = 0; n <= 4; ++n)
        for (const Poly& a : monic_of_degree(F, n))
            if (!divides(P, a)) s += RatFunc(Poly::one(F), a);
    Poly mod = P.pow(4);
    Poly expect = mulmod(s.num(), invmod(s.den() % mod, mod), mod);
    CHECK(l_padic(K, tab, 0).value == expect);
}
