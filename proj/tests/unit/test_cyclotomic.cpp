#include "doctest.h"

#include <random>

#include "cff/cyclotomic.hpp"

using namespace cff;

namespace {

struct Case {
    std::uint32_t p;
    const char* P;
};
const Case kSmall[] = {{2, "T^2+T+1"}, {3, "T^2+1"}, {2, "T^3+T+1"}};

// Laplace expansion; only for tiny matrices
Poly cofactor_det(const std::vector<std::vector<Poly>>& M, const Field* F) {
    const std::size_t n = M.size();
    if (n == 1) return M[0][0];
    Poly s(F);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<Poly>> sub;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Poly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(M[i][k]);
            sub.push_back(row);
        }
        Poly t = M[0][j] * cofactor_det(sub, F);
        s = (j % 2) ? s - t : s + t;
    }
    return s;
}

Poly rpoly(const Field* F, int deg, std::mt19937& rng) {
    std::vector<Elem> c(deg + 1);
    for (auto& x : c) x = rng() % F->size();
    return Poly(F, c);
}

CycElem relem(const CycField& K, std::mt19937& rng) {
    std::vector<Poly> c;
    for (std::uint64_t i = 0; i < K.n0(); ++i) c.push_back(rpoly(K.Fq(), rng() % 3, rng));
    return K.make(c, Poly::one(K.Fq()));
}

}  // namespace

TEST_CASE("psi and the field K") {
    auto F2 = make_field(2, 1);
    auto F3 = make_field(3, 1);
    {
        CycField K(F2, parse_poly("T", F2.get()));
        CHECK(K.n0() == 1);
        CHECK(K.psi() == std::vector<Poly>{Poly::var(F2.get()), Poly::one(F2.get())});
    }
    {
        CycField K(F3, parse_poly("T", F3.get()));
        const Field* F = F3.get();
        CHECK(K.psi() == std::vector<Poly>{Poly::var(F), Poly(F), Poly::one(F)});
        CHECK(K.torsion_bound() == Poly::var(F));
    }
    {
        const Field* F = F2.get();
        Poly P = parse_poly("T^2+T+1", F);
        CycField K(F2, P);
        CHECK(K.psi() == std::vector<Poly>{P, P, Poly(F), Poly::one(F)});
        CHECK(K.torsion_bound() == P * parse_poly("T^2+T", F));
        // lambda lambda^{-1} = 1
        CHECK(K.mul(K.lambda(), K.lambda_inv()) == K.one());
    }
    CHECK_THROWS_AS(CycField(F2, parse_poly("T^2+1", F2.get())), std::invalid_argument);
    for (auto cs : kSmall) {
        auto Fq = make_field(cs.p, 1);
        CycField K(Fq, parse_poly(cs.P, Fq.get()));
        std::uint64_t odd = 0;
        for (std::uint64_t n = 0; n < K.n0(); ++n) odd += K.character(n).odd;
        CHECK(odd == K.coset_reps().size());
        CHECK(K.coset_reps().size() == K.n0() / (cs.p - 1));
        CHECK(K.residue_poly(K.coset_reps()[0]).is_one());
    }
}

TEST_CASE("Galois action") {
    auto F3 = make_field(3, 1);
    const Field* F = F3.get();
    CycField K(F3, parse_poly("T^2+1", F));
    {
        std::vector<Poly> c(K.n0(), Poly(F));
        c[1] = Poly::var(F);
        c[3] = Poly::one(F);
        CHECK(K.sigma_poly(Poly::var(F), K.lambda()) == K.make(c, Poly::one(F)));
    }
    CHECK(K.sigma(1, K.lambda()) == K.lambda());
    CHECK_THROWS_AS(K.sigma_poly(K.P(), K.lambda()), std::domain_error);
    std::mt19937 rng(5);
    const Field* FF = K.F();
    for (int t = 0; t < 20; ++t) {
        Elem b = 1 + rng() % K.n0(), c = 1 + rng() % K.n0();
        CycElem x = relem(K, rng), y = relem(K, rng);
        CHECK(K.sigma(b, K.sigma(c, x)) == K.sigma(FF->mul(b, c), x));
        CHECK(K.sigma(b, K.mul(x, y)) == K.mul(K.sigma(b, x), K.sigma(b, y)));
        // sigma_b(lambda) is again a root of psi
        CycElem s = K.sigma(b, K.lambda());
        CycElem acc = K.zero();
        for (std::size_t i = K.psi().size(); i-- > 0;) acc = K.add(K.mul(acc, s), K.from_poly(K.psi()[i]));
        CHECK(acc.is_zero());
    }
}

TEST_CASE("idempotents") {
    for (auto cs : kSmall) {
        auto Fq = make_field(cs.p, 1);
        CycField K(Fq, parse_poly(cs.P, Fq.get()));
        std::mt19937 rng(7);
        CycElem x = relem(K, rng);
        auto es = K.idempotents(x);
        CycElem s = K.zero(K.F());
        for (const auto& e : es) s = K.add(s, e);
        CHECK(s == K.to_F(x));
        for (std::uint64_t n = 0; n < K.n0(); ++n) {
            CHECK(K.idempotent(n, es[n]) == es[n]);
            CHECK(K.idempotent((n + 1) % K.n0(), es[n]).is_zero() == (K.n0() > 1));
            Elem b = 1 + rng() % K.n0();
            CHECK(K.sigma(b, es[n]) == K.scale(K.chi(n, b), es[n]));
        }
    }
}

TEST_CASE("Gauss-Thakur sums") {
    for (auto cs : kSmall) {
        auto Fq = make_field(cs.p, 1);
        const Field* F = Fq.get();
        Poly P = parse_poly(cs.P, F);
        CycField K(Fq, P);
        CHECK(K.gauss_thakur(0) == K.one(K.F()));
        Poly sP = K.d() % 2 ? -P : P;
        CycElem tw = K.gauss_thakur_direct_qpower(0);
        for (int i = 0; i < K.d(); ++i) {
            CHECK(K.gauss_thakur_direct_qpower(i) == tw);
            tw = K.frob_tensor(tw);
        }
        int N = 2;
        auto ring = K.padic_ring(N);
        for (std::uint64_t n = 0; n < K.n0(); ++n) {
            CycElem t = K.gauss_thakur(n);
            CHECK(t.is_integral());
            CHECK(K.idempotent(n, t) == t);
            if (n) CHECK(K.mul(t, K.gauss_thakur(K.inverse_exponent(n))) == K.from_poly(sP.with_field(K.F())));
            // tau(omega^n) = lambda^n / Pi(n) modulo m^{n+1}
            auto lhs = K.embed_padic(t, ring);
            const Poly& mod = ring.context()->P_pow(N);
            auto rhs = ring.scale(invmod(K.tables().factorial(n) % mod, mod), ring.pow(ring.lambda(), n));
            CHECK(ring.valuation(ring.sub(lhs, rhs)) >= static_cast<int>(n + 1));
            CHECK(ring.valuation(lhs) == static_cast<int>(n));
        }
    }
}

TEST_CASE("normal basis generator") {
    for (auto cs : kSmall) {
        auto Fq = make_field(cs.p, 1);
        CycField K(Fq, parse_poly(cs.P, Fq.get()));
        CycElem eta = K.eta();
        CHECK(eta.is_integral());
        for (std::uint64_t n = 0; n < K.n0(); ++n) CHECK(K.idempotent(n, eta) == K.gauss_thakur(n));
        std::vector<std::vector<Poly>> M;
        for (Elem b = 1; b <= K.n0(); ++b) M.push_back(K.sigma(b, eta).c);
        Poly det = poly_det(M);
        CHECK(det.deg() == 0);
    }
}

TEST_CASE("polynomial determinant") {
    auto F3 = make_field(3, 1);
    std::mt19937 rng(9);
    for (int t = 0; t < 30; ++t) {
        std::size_t n = 1 + rng() % 4;
        std::vector<std::vector<Poly>> M(n);
        for (auto& row : M)
            for (std::size_t j = 0; j < n; ++j) row.push_back(rng() % 4 ? rpoly(F3.get(), rng() % 3, rng) : Poly(F3.get()));
        CHECK(poly_det(M) == cofactor_det(M, F3.get()));
    }
}

TEST_CASE("B_{1,chi}") {
    auto F2 = make_field(2, 1);
    for (const char* text : {"T", "T+1", "T^2+T+1", "T^3+T+1", "T^3+T^2+1"}) {
        const Field* F = F2.get();
        Poly P = parse_poly(text, F);
        CycField K(F2, P);
        Poly T = Poly::var(F);
        CHECK(K.b1(0) == RatFunc(P + Poly::one(F), T * T + T).with_field(K.F()));
    }
    for (auto cs : kSmall) {
        auto Fq = make_field(cs.p, 1);
        CycField K(Fq, parse_poly(cs.P, Fq.get()));
        if (cs.p > 2) CHECK(K.b1(0).is_zero());
        std::vector<RatFunc> all;
        for (std::uint64_t n = 0; n < K.n0(); ++n) {
            RatFunc b = K.b1(n);
            all.push_back(b);
            for (Elem c = 2; c <= K.n0(); ++c) CHECK(K.b1(n, c) == b);
            // nonzero only when the inverse character is odd
            if (!K.character(K.inverse_exponent(n)).odd) CHECK(b.is_zero());
        }
        CHECK(descends(K, all));
    }
}

TEST_CASE("Fitting generators") {
    auto F3 = make_field(3, 1);
    const Field* F = F3.get();
    Poly T = Poly::var(F), one = Poly::one(F);
    CHECK(fitting_generator_single({{T, Poly(F)}, {Poly(F), T}}) == T * T);
    CHECK(fitting_generator_single({{one, Poly(F)}, {Poly(F), one}}) == one);
    CHECK(fitting_generator_single({{(T + one).scaled(2)}}) == T + one);
    CHECK(fitting_generator_single({{T, T}, {T * T, T}, {T, T + one}}) == T);
    CHECK_THROWS_AS(fitting_generator_single({{T, T}, {one, one}}), std::domain_error);
    CycField K(F3, parse_poly("T^2+1", F));
    const Field* FF = K.F();
    std::vector<std::vector<std::vector<Poly>>> pres;
    std::size_t singleton = 0;
    for (std::size_t o = 0; o < K.orbits().size(); ++o) {
        // an element of the orbit field F_{q^s}
        std::uint64_t s = K.orbits()[o].size(), qs = 1;
        for (std::uint64_t i = 0; i < s; ++i) qs *= K.q();
        Elem a = FF->exp((o + 1) * (K.n0() / (qs - 1)));
        pres.push_back({{Poly(FF, {a, 1}).scaled(a)}, {Poly(FF, {a, 1}).pow(2)}});
        if (s == 1 && o > 0) singleton = o;
    }
    auto g = fitting_generator(K, pres);
    CHECK(descends(K, g.by_char));
    for (std::uint64_t n = 0; n < K.n0(); ++n) CHECK(g.by_char[n].is_monic());
    REQUIRE(singleton > 0);
    pres[singleton] = {{Poly(FF, {FF->exp(1), 1})}};
    CHECK_THROWS_AS(fitting_generator(K, pres), std::invalid_argument);
}

TEST_CASE("lattice index") {
    auto F3 = make_field(3, 1);
    const Field* F = F3.get();
    Laurent T = Laurent::from_poly(Poly::var(F), 1);
    std::vector<std::vector<Laurent>> l1 = {{Laurent::monomial(F, 1, 2, 3).truncated(20), Laurent::monomial(F, 1, 1, -1)}};
    auto same = lattice_index(l1, l1);
    CHECK(compare(same.by_char[0], Laurent::monomial(F, 1, 1, 0)).equal);
    CHECK(same.consistent[0]);
    std::vector<std::vector<Laurent>> l2 = {{l1[0][0] * T.scaled(2), l1[0][1] * T.scaled(2)}};
    auto idx = lattice_index(l1, l2);
    CHECK(compare(idx.by_char[0], T).equal);
    CHECK(idx.consistent[0]);
    l2[0][1] = l2[0][1] + Laurent::monomial(F, 1, 1, 4);
    CHECK(!lattice_index(l1, l2).consistent[0]);
    CHECK_THROWS_AS(lattice_index({{Laurent(F, 1), Laurent(F, 1)}}, l2), std::invalid_argument);
}

TEST_CASE("embeddings") {
    for (auto cs : kSmall) {
        auto Fq = make_field(cs.p, 1);
        const Field* F = Fq.get();
        CycField K(Fq, parse_poly(cs.P, F));
        const std::int64_t prec = 30;
        auto lam = K.embed_infty(K.lambda(), prec);
        CHECK(lam.size() == K.coset_reps().size());
        for (const auto& E : lam) {
            CHECK(E.prec() == prec);
            Laurent acc(F, K.ram());
            for (std::size_t i = K.psi().size(); i-- > 0;) acc = acc * E + Laurent::from_poly(K.psi()[i], K.ram());
            CHECK(acc.is_zero());
            CHECK(acc.prec() >= prec - 4 * K.ram() * K.d());
        }
        // places are distinct
        for (std::size_t i = 0; i < lam.size(); ++i)
            for (std::size_t j = i + 1; j < lam.size(); ++j) CHECK(!compare(lam[i], lam[j]).equal);
        std::mt19937 rng(11);
        CycElem x = relem(K, rng), y = relem(K, rng);
        auto ex = K.embed_infty(x, prec), ey = K.embed_infty(y, prec), exy = K.embed_infty(K.mul(x, y), prec);
        for (std::size_t j = 0; j < ex.size(); ++j) CHECK(compare(ex[j] * ey[j], exy[j]).equal);
        auto coords = K.places_from_coords(K.coords_of(x, 200), K.lambda_at_places(prec));
        for (std::size_t j = 0; j < ex.size(); ++j) CHECK(compare(coords[j], ex[j]).equal);
        auto ring = K.padic_ring(3);
        auto v = K.embed_padic(K.lambda(), ring);
        CHECK(v == ring.lambda());
        CHECK_THROWS_AS(K.embed_padic(K.lambda_inv(), ring), std::domain_error);
    }
}

TEST_CASE("B_{1,chi} against Bernoulli-Carlitz numbers mod P") {
    for (auto cs : kSmall) {
        auto Fq = make_field(cs.p, 1);
        CycField K(Fq, parse_poly(cs.P, Fq.get()));
        const auto& R = K.residue();
        const std::uint64_t n0 = K.n0();
        auto bc = bc_exact_table(K.tables(), n0);
        for (std::uint64_t n = 2; n <= n0; ++n) {
            Elem lhs = rat_reduce_mod_P(K.b1(K.inverse_exponent(n)), R);
            RatFunc r = RatFunc(K.tables().factorial(n0 - n), K.tables().factorial(n0 + 1 - n)) * bc[n0 + 1 - n].bc;
            CHECK(lhs == rat_reduce_mod_P(r, R));
        }
    }
}
