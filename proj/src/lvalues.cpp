#include "cff/lvalues.hpp"

#include <functional>
#include <stdexcept>

#include "cff/linalg.hpp"

namespace cff {

Laurent ClassSumTable::class_total(Elem c) const {
    Laurent s(R.empty() ? nullptr : R[0][0].field(), 1, prec);
    for (const auto& row : R) s += row[c];
    return s;
}

namespace {

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

ClassSumTable class_sums_inf(const CycField& K, int depth, std::uint64_t budget) {
    if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
    const Field& Fq = *K.Fq();
    const Field& FF = *K.F();
    const std::uint64_t q = K.q();
    const int d = K.d();
    const std::size_t classes = K.n0() + 1;
    const int D = depth;

    // leaf count: q^{relevant digits} per block
    {
        std::uint64_t leaves = 0;
        for (int n = 0; n <= D; ++n) {
            int k = std::max(0, 2 * n - D);
            if (k > d) continue;
            leaves += ipow(q, static_cast<std::uint64_t>(n - k));
            if (leaves > budget) throw std::length_error("class_sums_inf: depth exceeds the enumeration budget");
        }
    }

    std::vector<Elem> theta_pow{1};
    for (int i = 1; i <= D; ++i) theta_pow.push_back(FF.mul(theta_pow.back(), K.residue().theta()));

    ClassSumTable tab;
    tab.depth = D;
    tab.prec = D + 1;
    tab.R.assign(static_cast<std::size_t>(D + 1), std::vector<Laurent>(classes, Laurent(K.Fq(), 1, D + 1)));
    for (int n = 0; n <= D; ++n) {
        const int L = D + 1 - n;          // coefficients of 1/U needed, U = a / T^n in u = 1/T
        const int k = std::max(0, 2 * n - D);   // low digits that do not reach the window
        if (k > d) continue;                    // equidistributed q^{k-d} times: vanishes
        const int r = n - k;                    // digits a_{n-1} .. a_{k}, chosen from the top
        std::vector<std::vector<Elem>> G(classes, std::vector<Elem>(static_cast<std::size_t>(L), 0));
        std::vector<Elem> U(static_cast<std::size_t>(n + 1), 0), w(static_cast<std::size_t>(L), 0);
        U[0] = 1;
        w[0] = 1;
        std::function<void(int, Elem)> dfs = [&](int j, Elem cls) {
            if (j > r) {
                // remaining w_j depend only on chosen digits (the others are zero or out of range)
                for (int t = r + 1; t < L; ++t) {
                    Elem s = 0;
                    for (int i = 1; i <= std::min(t, r); ++i)
                        if (U[i]) s = Fq.add(s, Fq.mul(U[i], w[t - i]));
                    w[t] = Fq.neg(s);
                }
                auto& g = G[cls];
                for (int t = 0; t < L; ++t)
                    if (w[t]) g[t] = Fq.add(g[t], w[t]);
                return;
            }
            const int pos = n - j;   // exponent of T carried by this digit
            for (Elem a = 0; a < q; ++a) {
                U[j] = a;
                if (j < L) {
                    Elem s = 0;
                    for (int i = 1; i <= j; ++i)
                        if (U[i]) s = Fq.add(s, Fq.mul(U[i], w[j - i]));
                    w[j] = Fq.neg(s);
                }
                dfs(j + 1, a ? FF.add(cls, FF.mul(a, theta_pow[pos])) : cls);
            }
            U[j] = 0;
        };
        dfs(1, theta_pow[n]);
        // spread over the residues of the low digits
        const std::uint64_t low = ipow(q, static_cast<std::uint64_t>(k));
        for (std::size_t c = 0; c < classes; ++c) {
            std::vector<Elem> acc(static_cast<std::size_t>(L), 0);
            for (Elem l = 0; l < low; ++l) {
                const auto& g = G[FF.sub(static_cast<Elem>(c), l)];
                for (int t = 0; t < L; ++t)
                    if (g[t]) acc[t] = Fq.add(acc[t], g[t]);
            }
            tab.R[n][c] = Laurent::from_coeffs(K.Fq(), 1, n, std::move(acc), D + 1);
        }
    }
    return tab;
}

ClassSumTable class_sums_inf_naive(const CycField& K, int depth) {
    ClassSumTable tab;
    tab.depth = depth;
    tab.prec = depth + 1;
    tab.R.assign(static_cast<std::size_t>(depth + 1), std::vector<Laurent>(K.n0() + 1, Laurent(K.Fq(), 1, depth + 1)));
    for (int n = 0; n <= depth; ++n)
        for (const Poly& a : monic_of_degree(K.Fq(), n)) {
            Elem c = K.residue_of(a);
            tab.R[n][c] += Laurent::from_poly(a, 1).inv(depth + 1);
        }
    return tab;
}

namespace {

Laurent weighted(const CycField& K, const ClassSumTable& tab, std::uint64_t n, bool with_PA) {
    const Field* FF = K.F();
    Laurent s(FF, 1, tab.prec);
    for (Elem c = 1; c <= K.n0(); ++c) {
        Laurent t = tab.class_total(c);
        s += t.with_field(FF).scaled(K.chi(n, c));
    }
    if (with_PA) s += tab.class_total(0).with_field(FF);
    return s;
}

}  // namespace

LValue l_inf(const CycField& K, const ClassSumTable& tab, std::uint64_t n) {
    LValue r;
    r.n = n % K.n0();
    r.depth = tab.depth;
    r.value = weighted(K, tab, r.n, r.n == 0);
    r.certified = r.value.prec();
    return r;
}

Laurent l_inf_prime_to_P(const CycField& K, const ClassSumTable& tab, std::uint64_t n) {
    return weighted(K, tab, n % K.n0(), false);
}

EquivariantLaurent l_inf_equivariant(const CycField& K, const ClassSumTable& tab) {
    EquivariantLaurent out;
    out.unit = true;
    for (std::uint64_t n = 0; n < K.n0(); ++n) {
        Laurent v = l_inf(K, tab, n).value;
        out.unit = out.unit && v.val() == 0 && v.lead() == 1;
        out.by_char.push_back(std::move(v));
    }
    out.descends = descends(K, out.by_char);
    return out;
}

Elem chi_of_poly(const CycField& K, std::uint64_t n, const Poly& f) {
    n %= K.n0();
    Elem c = K.residue_of(f);
    if (c == 0) return n == 0 ? 1 : 0;
    return K.chi(n, c);
}

LValue euler_product(const CycField& K, std::uint64_t n, int B) {
    const Field* FF = K.F();
    const std::int64_t prec = B + 1;
    Laurent prod = Laurent::monomial(FF, 1, 1, 0).truncated(prec);
    const Laurent one = Laurent::monomial(FF, 1, 1, 0);
    for (const Poly& f : monic_irreducibles_up_to(K.Fq(), B)) {
        Elem c = chi_of_poly(K, n, f);
        if (!c) continue;
        Laurent y = Laurent::from_poly(f, 1).inv(prec).with_field(FF).scaled(c);
        prod = prod * (one - y).inv(prec);
    }
    LValue r;
    r.n = n % K.n0();
    r.depth = B;
    r.value = prod.truncated(prec);
    r.certified = r.value.prec();
    return r;
}

Poly euler_factor_charpoly(const CycField& K, std::uint64_t n, const Poly& f) {
    if (!f.is_monic() || !is_irreducible(f)) throw std::invalid_argument("f must be monic irreducible");
    const Field* FF = K.F();
    const Field& G = *FF;
    const std::size_t df = static_cast<std::size_t>(f.deg());
    const std::size_t n0 = K.n0();
    const std::size_t m = df * n0;
    const Poly fF = f.with_field(FF);

    auto to_vec = [&](const CycElem& x) {
        if (!x.is_integral()) throw std::logic_error("euler_factor_charpoly: non-integral element");
        std::vector<Elem> v(m, 0);
        for (std::size_t i = 0; i < n0; ++i) {
            Poly r = x.c[i].with_field(FF) % fF;
            for (std::size_t j = 0; j < df; ++j) v[i * df + j] = r[j];
        }
        return v;
    };
    auto from_vec = [&](const std::vector<Elem>& v) {
        std::vector<Poly> c;
        for (std::size_t i = 0; i < n0; ++i)
            c.push_back(Poly(FF, std::vector<Elem>(v.begin() + static_cast<std::ptrdiff_t>(i * df), v.begin() + static_cast<std::ptrdiff_t>((i + 1) * df))));
        return K.make(std::move(c), Poly::one(FF));
    };

    // e_chi image: spanned by e_chi of the basis T^j lambda^i
    Mat rows;
    for (std::size_t i = 0; i < n0; ++i)
        for (std::size_t j = 0; j < df; ++j) {
            std::vector<Poly> c(n0, Poly(FF));
            c[i] = Poly::monomial(FF, 1, j);
            rows.push_back(to_vec(K.idempotent(n, K.make(std::move(c), Poly::one(FF)))));
        }
    auto piv = rref(G, rows);
    const std::size_t r = piv.size();
    if (r != df) throw std::logic_error("e_chi(F (x) O_K/f) has unexpected dimension");
    rows.resize(r);

    // columns of the basis matrix
    Mat basis(m, std::vector<Elem>(r, 0));
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t t = 0; t < m; ++t) basis[t][k] = rows[k][t];
    Mat M(r, std::vector<Elem>(r, 0));
    const Poly T = Poly::var(FF);
    for (std::size_t k = 0; k < r; ++k) {
        CycElem x = from_vec(rows[k]);
        CycElem y = K.add(K.scale(T, x), K.qpow_linear(x));
        auto sol = solve(G, basis, to_vec(y));
        if (!sol) throw std::logic_error("T + tau does not preserve e_chi(F (x) O_K/f)");
        for (std::size_t t = 0; t < r; ++t) M[t][k] = (*sol)[t];
    }
    return charpoly(G, M);
}

PadicClassSums class_sums_padic(const CycField& K, int N, int max_deg, std::uint64_t budget) {
    if (N < 1) throw std::invalid_argument("N must be positive");
    std::uint64_t total = 0;
    for (int n = 0; n <= max_deg; ++n) {
        total += ipow(K.q(), static_cast<std::uint64_t>(n));
        if (total > budget) throw std::length_error("class_sums_padic: enumeration exceeds the budget");
    }
    PadicContext ctx(K.P(), N);
    const Poly& mod = ctx.P_pow(N);
    PadicClassSums tab;
    tab.N = N;
    tab.max_deg = max_deg;
    tab.S.assign(static_cast<std::size_t>(max_deg + 1), std::vector<Poly>(K.n0(), Poly(K.Fq())));
    for (int n = 0; n <= max_deg; ++n)
        for (const Poly& a : monic_of_degree(K.Fq(), n)) {
            Elem c = K.residue_of(a);
            if (!c) continue;
            auto& s = tab.S[n][c - 1];
            s = (s + invmod(a % mod, mod)) % mod;
        }
    return tab;
}

namespace {

std::vector<Poly> teich_chi(const CycField& K, int N, std::uint64_t n) {
    Teichmuller tm(K.residue(), N);
    std::vector<Poly> out;
    for (Elem c = 1; c <= K.n0(); ++c) out.push_back(tm.lift(K.chi(n, c)));
    return out;
}

}  // namespace

Poly l_padic_block(const CycField& K, const PadicClassSums& tab, std::uint64_t n, int deg) {
    if (deg > tab.max_deg) throw std::out_of_range("l_padic_block: degree beyond the table");
    auto chi = teich_chi(K, tab.N, n % K.n0());
    const Poly mod = K.P().pow(static_cast<std::uint64_t>(tab.N));
    Poly s(K.Fq());
    for (Elem c = 1; c <= K.n0(); ++c) s += mulmod(chi[c - 1], tab.S[deg][c - 1], mod);
    return s % mod;
}

PadicLValue l_padic(const CycField& K, const PadicClassSums& tab, std::uint64_t n) {
    const int top = tab.N * K.d();
    if (top > tab.max_deg) throw std::out_of_range("l_padic: table shallower than N d");
    auto chi = teich_chi(K, tab.N, n % K.n0());
    const Poly mod = K.P().pow(static_cast<std::uint64_t>(tab.N));
    Poly s(K.Fq());
    for (int deg = 0; deg <= top; ++deg)
        for (Elem c = 1; c <= K.n0(); ++c) s += mulmod(chi[c - 1], tab.S[deg][c - 1], mod);
    PadicLValue r;
    r.n = n % K.n0();
    r.value = s % mod;
    r.N = tab.N;
    r.truncation_degree = top;
    r.vP = r.value.is_zero() ? tab.N : valuation(r.value, K.P());
    return r;
}

}  // namespace cff
