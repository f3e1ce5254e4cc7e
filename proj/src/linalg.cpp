#include "cff/linalg.hpp"

#include <stdexcept>

namespace cff {

std::vector<std::size_t> rref(const Field& F, Mat& A) {
    std::vector<std::size_t> piv;
    if (A.empty()) return piv;
    const std::size_t rows = A.size(), cols = A[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t s = r;
        while (s < rows && A[s][c] == 0) ++s;
        if (s == rows) continue;
        std::swap(A[r], A[s]);
        Elem li = F.inv(A[r][c]);
        for (auto& x : A[r]) x = F.mul(x, li);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            Elem f = F.neg(A[i][c]);
            for (std::size_t j = c; j < cols; ++j)
                if (A[r][j]) A[i][j] = F.add(A[i][j], F.mul(f, A[r][j]));
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

std::size_t rank(const Field& F, Mat A) { return rref(F, A).size(); }

Elem det(const Field& F, Mat A) {
    const std::size_t n = A.size();
    Elem d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t s = c;
        while (s < n && A[s][c] == 0) ++s;
        if (s == n) return 0;
        if (s != c) {
            std::swap(A[s], A[c]);
            d = F.neg(d);
        }
        d = F.mul(d, A[c][c]);
        Elem li = F.inv(A[c][c]);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (A[i][c] == 0) continue;
            Elem f = F.neg(F.mul(A[i][c], li));
            for (std::size_t j = c; j < n; ++j) A[i][j] = F.add(A[i][j], F.mul(f, A[c][j]));
        }
    }
    return d;
}

std::optional<std::vector<Elem>> solve(const Field& F, const Mat& A, const std::vector<Elem>& b) {
    const std::size_t rows = A.size();
    const std::size_t cols = rows ? A[0].size() : 0;
    Mat M(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        M[i] = A[i];
        M[i].push_back(b[i]);
    }
    auto piv = rref(F, M);
    if (!piv.empty() && piv.back() == cols) return std::nullopt;
    std::vector<Elem> x(cols, 0);
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = M[i][cols];
    return x;
}

Poly charpoly(const Field& F, Mat A) {
    const std::size_t n = A.size();
    // similarity transform to upper Hessenberg form
    for (std::size_t c = 0; c + 2 < n; ++c) {
        std::size_t s = c + 1;
        while (s < n && A[s][c] == 0) ++s;
        if (s == n) continue;
        if (s != c + 1) {
            std::swap(A[s], A[c + 1]);
            for (auto& row : A) std::swap(row[s], row[c + 1]);
        }
        Elem li = F.inv(A[c + 1][c]);
        for (std::size_t i = c + 2; i < n; ++i) {
            if (A[i][c] == 0) continue;
            Elem f = F.mul(A[i][c], li);
            // row_i -= f row_{c+1}; col_{c+1} += f col_i
            for (std::size_t j = 0; j < n; ++j) A[i][j] = F.sub(A[i][j], F.mul(f, A[c + 1][j]));
            for (std::size_t j = 0; j < n; ++j) A[j][c + 1] = F.add(A[j][c + 1], F.mul(f, A[j][i]));
        }
    }
    // p_k = det(Z - H_k) for the leading k x k block
    std::vector<Poly> p(n + 1, Poly(&F));
    p[0] = Poly::one(&F);
    const Poly Z = Poly::var(&F);
    for (std::size_t k = 1; k <= n; ++k) {
        p[k] = (Z - Poly::constant(&F, A[k - 1][k - 1])) * p[k - 1];
        Elem prod = 1;
        for (std::size_t i = k - 1; i-- > 0;) {
            prod = F.mul(prod, A[i + 1][i]);
            if (prod == 0) break;
            Elem t = F.mul(prod, A[i][k - 1]);
            p[k] -= p[i].scaled(t);
        }
    }
    return p[n];
}

}  // namespace cff
