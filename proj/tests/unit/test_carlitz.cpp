#include "doctest.h"

#include <random>

#include "cff/carlitz.hpp"

using namespace cff;

namespace {

Poly rpoly(const Field* F, int deg, std::mt19937& rng) {
    std::vector<Elem> c(deg + 1);
    for (auto& x : c) x = rng() % F->size();
    return Poly(F, c);
}

// psi = phi_P(X)/X as a dense coefficient vector in X
std::vector<Poly> psi_of(const Poly& P) {
    const Field* F = P.field();
    const std::uint64_t q = F->size();
    TauPoly phi = carlitz_poly(P);
    std::uint64_t n0 = 1;
    for (std::size_t i = 1; i < phi.size(); ++i) n0 *= q;
    std::vector<Poly> psi(n0, Poly(F));
    std::uint64_t qi = 1;
    for (std::size_t i = 0; i < phi.size(); ++i, qi *= q) psi[qi - 1] = phi[i];
    return psi;
}

}  // namespace

TEST_CASE("Carlitz polynomials") {
    auto F2 = make_field(2, 1);
    const Field* F = F2.get();
    Poly T = Poly::var(F);
    CHECK(carlitz_poly(Poly::one(F)) == TauPoly{Poly::one(F)});
    CHECK(carlitz_poly(T) == TauPoly{T, Poly::one(F)});
    CHECK(carlitz_poly(T * T) == TauPoly{T * T, T * T + T, Poly::one(F)});
    std::mt19937 rng(1);
    for (std::uint32_t p : {2u, 3u}) {
        auto Fq = make_field(p, 1);
        for (int t = 0; t < 20; ++t) {
            Poly a = rpoly(Fq.get(), rng() % 5, rng), b = rpoly(Fq.get(), rng() % 5, rng);
            if (a.is_zero() || b.is_zero()) continue;
            CHECK(carlitz_poly(a + b) == tau_add(carlitz_poly(a), carlitz_poly(b)));
            CHECK(carlitz_poly(a * b) == tau_compose(carlitz_poly(a), carlitz_poly(b)));
        }
    }
}

TEST_CASE("Carlitz factorials") {
    for (std::uint32_t p : {2u, 3u}) {
        auto Fq = make_field(p, 1);
        const Field* F = Fq.get();
        CarlitzTables tabs(F);
        const std::uint64_t q = p;
        std::uint64_t qi = 1;
        for (int i = 0; i <= 4; ++i, qi *= q) {
            CHECK(tabs.D(i).deg() == static_cast<std::int64_t>(i * qi));
            // D_i = (T^{q^i} - T) D_{i-1}^q
            if (i > 0) CHECK(tabs.D(i) == (Poly::monomial(F, 1, qi) - Poly::var(F)) * tabs.D(i - 1).pow(q));
            if (i > 0) CHECK(tabs.L(i) == tabs.L(i - 1) * (Poly::monomial(F, 1, qi) - Poly::var(F)));
        }
        CHECK(tabs.factorial(0).is_one());
        CHECK(tabs.factorial(q) == tabs.D(1));
        CHECK(tabs.factorial(q * q + 1) == tabs.D(2));
        CHECK(tabs.factorial((q - 1) * q + 1) == tabs.D(1).pow(q - 1));
        for (const Poly& P : monic_irreducibles_up_to(F, 3)) {
            int d = static_cast<int>(P.deg());
            for (int i = 0; i <= 2 * d && i <= 5; ++i) {
                CHECK(valuation(tabs.D(i), P) == static_cast<int>(predicted_vP_D(q, d, i)));
                CHECK(valuation(tabs.L(i), P) == predicted_vP_L(d, i));
            }
            std::uint64_t qd = 1;
            for (int i = 0; i < d; ++i) qd *= q;
            for (std::uint64_t n = 0; n < qd; ++n) CHECK(!divides(P, tabs.factorial(n)));
        }
    }
}

TEST_CASE("Bernoulli-Carlitz numbers") {
    auto F2 = make_field(2, 1);
    auto F3 = make_field(3, 1);
    {
        CarlitzTables tabs(F2.get());
        Poly T = Poly::var(F2.get());
        auto bc = bc_exact(tabs, 1);
        CHECK(bc.bc == RatFunc(Poly::one(F2.get()), T * T + T));
        ResidueField R(F2, parse_poly("T^2+T+1", F2.get()));
        auto s = bc_stream_mod_P(R, 2);
        CHECK(s[0] == 1);
        CHECK(s[1] == 1);
        CHECK_THROWS_AS(bc_stream_mod_P(R, 3), std::invalid_argument);
    }
    {
        const Field* F = F3.get();
        CarlitzTables tabs(F);
        Poly D1 = tabs.D(1);
        CHECK(D1 == Poly::monomial(F, 1, 3) - Poly::var(F));
        auto bc2 = bc_exact(tabs, 2);
        CHECK(bc2.bc_prime == -RatFunc(Poly::one(F), D1));
        CHECK(bc2.bc == bc2.bc_prime);
        ResidueField R(F3, parse_poly("T^2+1", F));
        auto s = bc_stream_mod_P(R, 7);
        CHECK(s[2] == R.field()->neg(R.field()->inv(poly_reduce_mod_P(D1, R))));
        auto table = bc_exact_table(tabs, 60);
        CHECK(table[0].bc_prime == RatFunc(Poly::one(F)));
        for (auto& v : table)
            if (v.n % 2) CHECK(v.bc.is_zero());
    }
    // streaming residues agree with the exact values reduced at theta
    for (auto [p, text] : {std::pair{2u, "T^2+T+1"}, std::pair{3u, "T^2+1"}, std::pair{2u, "T^3+T+1"}, std::pair{3u, "T^3+2*T+1"}}) {
        auto Fq = make_field(p, 1);
        CarlitzTables tabs(Fq.get());
        ResidueField R(Fq, parse_poly(text, Fq.get()));
        std::uint64_t n_max = R.size() - 2;
        auto s = bc_stream_mod_P(R, n_max);
        auto ex = bc_exact_table(tabs, n_max);
        for (std::uint64_t n = 0; n <= n_max; ++n) CHECK(s[n] == rat_reduce_mod_P(ex[n].bc_prime, R));
    }
    // (X / exp X) (exp X / X) = 1 as truncated series over k
    {
        const Field* F = F3.get();
        CarlitzTables tabs(F);
        auto ex = bc_exact_table(tabs, 40);
        for (std::uint64_t n = 0; n <= 40; ++n) {
            RatFunc s(F);
            for (std::uint64_t qi = 1, i = 0; qi - 1 <= n; qi *= 3, ++i)
                s += ex[n - (qi - 1)].bc_prime * RatFunc(Poly::one(F), tabs.D(static_cast<int>(i)));
            CHECK(s == (n == 0 ? RatFunc(Poly::one(F)) : RatFunc(F)));
        }
    }
}

TEST_CASE("exponential at infinity") {
    std::mt19937 rng(4);
    for (std::uint32_t p : {2u, 3u}) {
        auto Fq = make_field(p, 1);
        const Field* F = Fq.get();
        CarlitzTables tabs(F);
        for (int ram : {1, static_cast<int>(p - 1)}) {
            CHECK(exp_eval(tabs, Laurent(F, ram), 20).is_zero());
            const Laurent T = Laurent::from_poly(Poly::var(F), ram);
            for (int t = 0; t < 10; ++t) {
                Laurent z = Laurent::monomial(F, ram, 1, static_cast<std::int64_t>(rng() % 5) - 2);
                for (int i = 1; i < 12; ++i) z += Laurent::monomial(F, ram, rng() % p, z.val() + i);
                const std::int64_t target = 30;
                Laurent lhs = exp_eval(tabs, T * z, target);
                Laurent ez = exp_eval(tabs, z, target + 2 * ram);
                Laurent rhs = T * ez + ez.qpow(p);
                auto g = compare(lhs, rhs);
                CHECK(g.equal);
                CHECK(g.overlap >= target);
            }
        }
    }
}

TEST_CASE("P-adic exponential and logarithm") {
    for (auto [p, text, N] : {std::tuple{2u, "T^2+T+1", 4}, std::tuple{3u, "T^2+1", 3}, std::tuple{3u, "T+1", 4}}) {
        auto Fq = make_field(p, 1);
        const Field* F = Fq.get();
        CarlitzTables tabs(F);
        Poly P = parse_poly(text, F);
        PadicCycRing ring(P, N, psi_of(P));
        auto lam = ring.lambda();
        // Eisenstein relation: lambda^{n0} reduces to an element of valuation n0
        CHECK(ring.valuation(ring.pow(lam, static_cast<std::uint64_t>(ring.n0()))) == ring.n0());
        CHECK(ring.valuation(padic_carlitz_act(ring, P, lam)) == ring.m_precision());
        auto z = ring.mul(lam, lam);
        auto e = padic_exp(tabs, ring, z);
        CHECK(ring.valuation(e) == ring.valuation(z));
        CHECK(ring.equal(padic_log(tabs, ring, e), z));
        CHECK(ring.equal(padic_exp(tabs, ring, padic_log(tabs, ring, z)), z));
        auto Tz = ring.scale(Poly::var(F), z);
        CHECK(ring.equal(padic_exp(tabs, ring, Tz), padic_carlitz_act(ring, Poly::var(F), e)));
        CHECK_THROWS_AS(padic_exp(tabs, ring, lam), std::domain_error);
        // graded pieces: v(x - exp x) > v(x)
        CHECK(ring.valuation(ring.sub(e, z)) > ring.valuation(z));
    }
}
