#include "doctest.h"

#include <random>

#include "cff/special_points.hpp"

using namespace cff;

namespace {

struct Case {
    std::uint32_t p;
    const char* P;
};
const Case kSmall[] = {{2, "T^2+T+1"}, {3, "T^2+1"}, {2, "T^3+T+1"}};

void check_all_pass(const VerificationReport& r) {
    for (const auto& c : r.checks) {
        INFO(r.suite << " " << c.id << ": " << c.detail);
        CHECK(c.status == CheckStatus::pass);
    }
    CHECK(!r.checks.empty());
}

}  // namespace

TEST_CASE("integral recognition inverts the infinite embedding") {
    std::mt19937 rng(7);
    for (auto cs : kSmall) {
        auto Fq = make_field(cs.p, 1);
        const Field* F = Fq.get();
        CycField K(Fq, parse_poly(cs.P, F));
        const std::int64_t W = 40 * K.ram();
        auto l3 = recognize_integral(K, K.embed_infty(K.lambda_pow(3), W));
        REQUIRE(l3.value);
        CHECK(*l3.value == K.lambda_pow(3));
        auto tl = recognize_integral(K, K.embed_infty(K.scale(Poly::var(F), K.lambda()), W));
        REQUIRE(tl.value);
        CHECK(*tl.value == K.scale(Poly::var(F), K.lambda()));
        for (int t = 0; t < 10; ++t) {
            std::vector<Poly> c;
            for (std::uint64_t i = 0; i < K.n0(); ++i) {
                std::vector<Elem> e(rng() % 6);
                for (auto& x : e) x = rng() % F->size();
                c.push_back(Poly(F, e));
            }
            CycElem x = K.make(c, Poly::one(F));
            auto r = recognize_integral(K, K.embed_infty(x, W));
            REQUIRE(r.value);
            CHECK(*r.value == x);
        }
        // a non-integral element is refused
        CycElem half = K.scale(RatFunc(Poly::one(F), K.P()), K.lambda());
        auto bad = recognize_integral(K, K.embed_infty(half, W));
        CHECK(!bad.value);
        CHECK(!bad.precision_short);
        // too little precision is flagged as such
        auto shortp = recognize_integral(K, K.embed_infty(K.lambda(), 4), 6);
        CHECK(!shortp.value);
        CHECK(shortp.precision_short);
    }
}

TEST_CASE("special points at infinity") {
    for (auto cs : kSmall) {
        auto Fq = make_field(cs.p, 1);
        CycField K(Fq, parse_poly(cs.P, Fq.get()));
        const int r = K.ram();
        auto tab = class_sums_inf(K, 20);
        // m = 0 collapses to the scalar sum over Delta
        Laurent s(K.Fq(), 1);
        for (Elem b = 1; b <= K.n0(); ++b) s += tab.class_total(b);
        auto L0 = special_point_inf(K, tab, 0);
        for (const auto& v : L0.value) CHECK(compare(v, s.to_ramified(r)).equal);
        // the place values agree with the coordinate description
        auto lam = K.lambda_at_places(r * 40);
        for (std::uint64_t m : {1u, 2u, 5u}) {
            auto direct = special_point_inf(K, tab, m);
            auto via = K.places_from_coords(special_point_coords(K, tab, m), lam);
            for (std::size_t j = 0; j < via.size(); ++j) {
                auto g = compare(direct.value[j], via[j]);
                CHECK(g.equal);
                CHECK(g.overlap >= r * (tab.prec - 8));
            }
        }
        // sigma_b L_m is the A-combination of L_i given by sigma_b(lambda^m)
        for (Elem b : {Elem(2), Elem(K.n0())}) {
            const std::uint64_t m = 2;
            auto lhs = K.coords_sigma(b, special_point_coords(K, tab, m));
            const CycElem a = K.sigma(b, K.lambda_pow(m));
            KInfCoords rhs(K.n0(), Laurent(K.Fq(), 1));
            for (std::uint64_t i = 0; i < K.n0(); ++i) {
                if (a.c[i].is_zero()) continue;
                auto Li = special_point_coords(K, tab, i);
                for (std::uint64_t k = 0; k < K.n0(); ++k) rhs[k] += Li[k] * Laurent::from_poly(a.c[i], 1);
            }
            for (std::uint64_t k = 0; k < K.n0(); ++k) CHECK(compare(lhs[k], rhs[k]).equal);
        }
    }
}

TEST_CASE("P-adic special points") {
    auto F3 = make_field(3, 1);
    CycField K(F3, parse_poly("T^2+1", F3.get()));
    for (int N : {2, 3}) {
        auto ring = K.padic_ring(N);
        auto tab = class_sums_padic(K, N, N * K.d());
        for (std::uint64_t m = 2; m <= 6; ++m) CHECK(special_point_padic(K, tab, ring, m).valuation >= 2);
        auto shallow = class_sums_padic(K, N, N * K.d() - 1);
        CHECK_THROWS_AS(special_point_padic(K, shallow, ring, 2), std::out_of_range);
    }
}

TEST_CASE("exp of special points is integral") {
    auto F2 = make_field(2, 1);
    CycField K(F2, parse_poly("T^2+T+1", F2.get()));
    auto tab = class_sums_inf(K, 20);
    CycElem x = exp_special_point(K, tab, 2, 6, 40);
    CHECK(x.is_integral());
    // recognition is stable under more depth
    auto deeper = class_sums_inf(K, 30);
    CHECK(exp_special_point(K, deeper, 2, 6, 40) == x);
}

TEST_CASE("Anderson identities") {
    for (auto [p, text, N] : {std::tuple{2u, "T^2+T+1", 4}, std::tuple{3u, "T^2+1", 3}}) {
        auto Fq = make_field(p, 1);
        CycField K(Fq, parse_poly(text, Fq.get()));
        check_all_pass(verify_anderson(K, {1, 2, 3, 4, 5}, N, default_inf_depth(K)));
    }
    // the two sides are not interchangeable across m
    auto F3 = make_field(3, 1);
    CycField K(F3, parse_poly("T^2+1", F3.get()));
    auto tab = class_sums_inf(K, default_inf_depth(K));
    auto ring = K.padic_ring(3);
    auto ptab = class_sums_padic(K, 3, 6);
    CycElem x2 = exp_special_point(K, tab, 2, 6, 40);
    CHECK(x2 == K.lambda_pow(2));
    for (std::uint64_t m : {3u, 4u}) CHECK(!ring.equal(K.embed_padic(x2, ring), padic_exp(K.tables(), ring, special_point_padic(K, ptab, ring, m).value)));
}

TEST_CASE("lattice index against L-values") {
    for (auto cs : {Case{2, "T^2+T+1"}, Case{3, "T^2+1"}, Case{3, "T"}}) {
        auto Fq = make_field(cs.p, 1);
        CycField K(Fq, parse_poly(cs.P, Fq.get()));
        auto rep = verify_cnf(K, default_inf_depth(K));
        check_all_pass(rep);
        CHECK(rep.checks.size() == 3 * K.n0() + 2);
    }
}

TEST_CASE("B_{1,chi} formula suite") {
    for (auto cs : kSmall) {
        auto Fq = make_field(cs.p, 1);
        CycField K(Fq, parse_poly(cs.P, Fq.get()));
        check_all_pass(verify_b1_all(K, 16));
    }
    auto F3 = make_field(3, 1);
    CycField K(F3, parse_poly("T^2+1", F3.get()));
    CHECK_THROWS_AS(verify_b1_formula(K, 0, 8), std::invalid_argument);
    CHECK_THROWS_AS(verify_b1_formula(K, 2, 8), std::invalid_argument);
}

TEST_CASE("congruence, Euler and charpoly suites") {
    for (auto cs : kSmall) {
        auto Fq = make_field(cs.p, 1);
        CycField K(Fq, parse_poly(cs.P, Fq.get()));
        auto cong = verify_congruence(K);
        check_all_pass(cong);
        CHECK(cong.checks.size() == K.n0() - 1);
        check_all_pass(verify_charpoly(K, 3));
    }
    auto F3 = make_field(3, 1);
    CycField K(F3, parse_poly("T^2+1", F3.get()));
    check_all_pass(verify_euler(K, 8));
}

TEST_CASE("P-adic exp/log suite") {
    for (auto [text, N] : {std::pair{"T+1", 6}, std::pair{"T^2+1", 4}}) {
        auto F3 = make_field(3, 1);
        CycField K(F3, parse_poly(text, F3.get()));
        check_all_pass(verify_padic_explog(K, N, 20));
    }
}

TEST_CASE("Herbrand-Ribet scan") {
    auto F2 = make_field(2, 1);
    auto F3 = make_field(3, 1);
    {
        auto R = residue_field(F2, parse_poly("T^2+T+1", F2.get()));
        auto s = hr_scan(R, HrMode::streaming);
        CHECK(s.indices == std::vector<std::uint64_t>{2});
        CHECK(s.irregular.empty());
    }
    {
        auto R = residue_field(F3, parse_poly("T^2+1", F3.get()));
        auto s = hr_scan(R, HrMode::streaming);
        CHECK(s.indices == std::vector<std::uint64_t>{2, 4, 6});
        auto e = hr_scan(R, HrMode::exact_small);
        CHECK(e.residues == s.residues);
    }
    for (auto [p, text] : {std::pair{2u, "T^3+T+1"}, std::pair{3u, "T^3-T+1"}, std::pair{2u, "T^5+T^2+1"}}) {
        auto Fq = make_field(p, 1);
        auto R = residue_field(Fq, parse_poly(text, Fq.get()));
        auto s = hr_scan(R, HrMode::streaming);
        CHECK(hr_scan(R, HrMode::exact_small).residues == s.residues);
        auto g = bc_newton_mod_P(R, R.size() - 2);
        auto st = bc_stream_mod_P(R, R.size() - 2);
        CHECK(g == st);
        check_all_pass(verify_hr(R, 0.3));
    }
}

TEST_CASE("odd Fitting data and the even ledger") {
    auto F2 = make_field(2, 1);
    auto F3 = make_field(3, 1);
    {
        CycField K(F2, parse_poly("T^2+T+1", F2.get()));
        auto rep = odd_fitting_report(K);
        REQUIRE(rep.rows.size() == 3);
        CHECK(rep.rows[0].kind == FittingCase::trivial);
        CHECK(rep.rows[0].generator.is_one());
        CHECK(rep.rows[0].length == 0);
        CHECK(rep.descends);
        CHECK(padic_ledger(K, 4).rows.empty());
    }
    {
        CycField K(F3, parse_poly("T^2+1", F3.get()));
        auto rep = odd_fitting_report(K);
        CHECK(rep.rows.size() == 4);
        for (const auto& row : rep.rows) {
            CHECK(row.generator_integral);
            if (row.n == 1) CHECK(row.length == row.vP_b1 + 1);
            if (row.n == 1 || row.n == 3) CHECK(row.kind == FittingCase::frobenius_twist);
            else CHECK(row.kind == FittingCase::generic);
        }
        CHECK(rep.descends);
    }
    {
        CycField K(F2, parse_poly("T^3+T+1", F2.get()));
        auto rep = odd_fitting_report(K);
        CHECK(rep.rows.size() == 7);
        for (const auto& row : rep.rows) CHECK(row.generator_integral);
    }
    {
        CycField K(F3, parse_poly("T+1", F3.get()));
        auto led = padic_ledger(K, 6);
        REQUIRE(led.rows.size() == 1);
        CHECK(led.rows[0].certified);
        CHECK(led.rows[0].vP < 6);
    }
}
