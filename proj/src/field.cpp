#include "cff/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace cff {

namespace {

constexpr std::uint32_t kTableLimit = 1u << 20;

using Vec = std::vector<Elem>;

void trim(Vec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Polynomial helpers over an arbitrary Field, used only for the
// irreducibility test of large moduli (no tables available there).
Vec vmulmod(const Field& K, const Vec& a, const Vec& b, const Vec& m) {
    if (a.empty() || b.empty()) return {};
    Vec r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = K.add(r[i + j], K.mul(a[i], b[j]));
    }
    const size_t dm = m.size() - 1;
    for (size_t k = r.size(); k-- > dm;) {
        Elem c = r[k];
        if (!c) continue;
        for (size_t j = 0; j <= dm; ++j) r[k - dm + j] = K.sub(r[k - dm + j], K.mul(c, m[j]));
    }
    if (r.size() > dm) r.resize(dm);
    trim(r);
    return r;
}

Vec vmod(const Field& K, Vec a, const Vec& m) {
    const size_t dm = m.size() - 1;
    Elem li = K.inv(m.back());
    for (size_t k = a.size(); k-- > dm;) {
        Elem c = K.mul(a[k], li);
        if (!c) continue;
        for (size_t j = 0; j <= dm; ++j) a[k - dm + j] = K.sub(a[k - dm + j], K.mul(c, m[j]));
    }
    if (a.size() > dm) a.resize(dm);
    trim(a);
    return a;
}

Vec vgcd(const Field& K, Vec a, Vec b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        a = vmod(K, a, b);
        std::swap(a, b);
    }
    return a;
}

Vec vpowmod(const Field& K, Vec base, std::uint64_t e, const Vec& m) {
    Vec r{1};
    base = vmod(K, base, m);
    while (e) {
        if (e & 1) r = vmulmod(K, r, base, m);
        e >>= 1;
        if (e) base = vmulmod(K, base, base, m);
    }
    return r;
}

bool vec_irreducible(const Field& K, const Vec& f) {
    const int n = static_cast<int>(f.size()) - 1;
    if (n <= 0) return false;
    if (n == 1) return true;
    Vec x{0, 1};
    Vec xp = x;
    for (int i = 1; i <= n / 2; ++i) {
        xp = vpowmod(K, xp, K.size(), f);
        Vec t = xp;
        if (t.size() < 2) t.resize(2, 0);
        t[1] = K.sub(t[1], 1);
        trim(t);
        Vec g = vgcd(K, f, t);
        if (g.size() != 1) return false;
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

bool is_prime_number(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldPtr Field::prime(std::uint32_t p) {
    if (!is_prime_number(p)) throw std::invalid_argument("characteristic must be prime");
    if (p > (1u << 16)) throw std::invalid_argument("prime too large for this library");
    std::shared_ptr<Field> F(new Field());
    F->p_ = p;
    F->size_ = p;
    F->deg_ = 1;
    F->absdeg_ = 1;
    F->inv_small_.assign(p, 0);
    for (std::uint32_t a = 1; a < p; ++a) {
        std::uint64_t r = 1, b = a, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        F->inv_small_[a] = static_cast<Elem>(r);
    }
    F->gen_ = 1;
    if (p > 2) {
        auto fac = prime_factors(p - 1);
        for (Elem g = 2; g < p; ++g) {
            bool ok = true;
            for (auto f : fac)
                if (F->pow(g, (p - 1) / f) == 1) ok = false;
            if (ok) {
                F->gen_ = g;
                break;
            }
        }
    }
    return F;
}

FieldPtr Field::extension(FieldPtr base, std::vector<Elem> modulus) {
    if (!base) throw std::invalid_argument("extension needs a base field");
    trim(modulus);
    if (modulus.size() < 2 || modulus.back() != 1)
        throw std::invalid_argument("modulus must be monic of positive degree");
    for (Elem c : modulus)
        if (c >= base->size()) throw std::invalid_argument("modulus coefficient outside base field");
    const int n = static_cast<int>(modulus.size()) - 1;
    std::uint64_t sz = 1;
    for (int i = 0; i < n; ++i) {
        sz *= base->size();
        if (sz > (1ull << 31)) throw std::invalid_argument("field too large");
    }
    std::shared_ptr<Field> F(new Field());
    F->p_ = base->characteristic();
    F->size_ = static_cast<std::uint32_t>(sz);
    F->deg_ = n;
    F->absdeg_ = n * base->absolute_degree();
    F->base_ = base;
    F->modulus_ = modulus;
    if (!vec_irreducible(*base, modulus)) throw std::invalid_argument("modulus is reducible");
    if (F->size_ <= kTableLimit) F->build_tables();
    return F;
}

void Field::build_tables() {
    const std::uint32_t m = size_ - 1;
    auto fac = prime_factors(m);
    auto slow_pow = [&](Elem a, std::uint64_t e) {
        Elem r = 1;
        while (e) {
            if (e & 1) r = slow_mul(r, a);
            e >>= 1;
            if (e) a = slow_mul(a, a);
        }
        return r;
    };
    gen_ = 0;
    for (Elem g = 1; g < size_ && !gen_; ++g) {
        bool ok = true;
        for (auto f : fac)
            if (slow_pow(g, m / f) == 1) ok = false;
        if (ok) gen_ = g;
    }
    if (!gen_) throw std::logic_error("no primitive element");
    exp_.assign(2 * static_cast<size_t>(m), 0);
    log_.assign(size_, 0);
    Elem x = 1;
    for (std::uint32_t k = 0; k < m; ++k) {
        exp_[k] = exp_[k + m] = x;
        log_[x] = k;
        x = slow_mul(x, gen_);
    }
    if (p_ != 2) {
        zech_.assign(m, -1);
        for (std::uint32_t k = 0; k < m; ++k) {
            Elem s = slow_add(1, exp_[k]);
            zech_[k] = s ? static_cast<std::int32_t>(log_[s]) : -1;
        }
    }
}

Elem Field::slow_add(Elem a, Elem b) const {
    if (!base_) return (a + b) % p_;
    if (p_ == 2) return a ^ b;
    const std::uint32_t B = base_->size();
    Elem r = 0, mult = 1;
    for (int i = 0; i < deg_; ++i) {
        Elem da = a % B, db = b % B;
        a /= B;
        b /= B;
        r += base_->add(da, db) * mult;
        mult *= B;
    }
    return r;
}

Elem Field::slow_mul(Elem a, Elem b) const {
    if (!base_) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
    Vec da = digits(a), db = digits(b);
    Vec r(2 * deg_, 0);
    for (int i = 0; i < deg_; ++i) {
        if (!da[i]) continue;
        for (int j = 0; j < deg_; ++j) r[i + j] = base_->add(r[i + j], base_->mul(da[i], db[j]));
    }
    for (int k = 2 * deg_ - 1; k >= deg_; --k) {
        Elem c = r[k];
        if (!c) continue;
        for (int j = 0; j <= deg_; ++j) r[k - deg_ + j] = base_->sub(r[k - deg_ + j], base_->mul(c, modulus_[j]));
    }
    r.resize(deg_);
    return from_digits(r);
}

Elem Field::add(Elem a, Elem b) const {
    if (!base_) {
        Elem s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    if (p_ == 2) return a ^ b;
    if (zech_.empty()) return slow_add(a, b);
    if (!a) return b;
    if (!b) return a;
    const std::uint32_t m = size_ - 1;
    std::uint32_t la = log_[a], lb = log_[b];
    std::uint32_t d = lb >= la ? lb - la : lb + m - la;
    std::int32_t z = zech_[d];
    if (z < 0) return 0;
    return exp_[la + static_cast<std::uint32_t>(z)];
}

Elem Field::neg(Elem a) const {
    if (!a || p_ == 2) return a;
    if (!base_) return p_ - a;
    if (!exp_.empty()) {
        // -1 = g^{(size-1)/2} for odd characteristic
        return exp_[log_[a] + (size_ - 1) / 2];
    }
    const std::uint32_t B = base_->size();
    Elem r = 0, mult = 1;
    for (int i = 0; i < deg_; ++i) {
        r += base_->neg(a % B) * mult;
        a /= B;
        mult *= B;
    }
    return r;
}

Elem Field::mul(Elem a, Elem b) const {
    if (!a || !b) return 0;
    if (!base_) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
    if (!exp_.empty()) return exp_[log_[a] + log_[b]];
    return slow_mul(a, b);
}

Elem Field::inv(Elem a) const {
    if (!a) throw std::domain_error("inverse of zero");
    if (!base_) return inv_small_[a];
    if (!exp_.empty()) {
        std::uint32_t l = log_[a];
        return exp_[l ? (size_ - 1) - l : 0];
    }
    return pow(a, size_ - 2);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (!a) return 0;
    if (!exp_.empty()) return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % (size_ - 1))) % (size_ - 1)];
    Elem r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        e >>= 1;
        if (e) a = mul(a, a);
    }
    return r;
}

Elem Field::frob_inv(Elem a) const {
    // inverse of x -> x^b is x -> x^{b^{deg-1}}
    Elem r = a;
    for (int i = 0; i + 1 < deg_; ++i) r = frob(r);
    return r;
}

Elem Field::from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
}

std::vector<Elem> Field::digits(Elem a) const {
    const std::uint32_t B = base_size();
    Vec d(deg_, 0);
    for (int i = 0; i < deg_; ++i) {
        d[i] = a % B;
        a /= B;
    }
    return d;
}

Elem Field::from_digits(const std::vector<Elem>& d) const {
    const std::uint32_t B = base_size();
    Elem r = 0;
    for (size_t i = d.size(); i-- > 0;) r = r * B + d[i];
    return r;
}

std::string Field::elem_to_string(Elem a) const {
    if (!base_) return std::to_string(a);
    if (!a) return "0";
    if (!exp_.empty()) return "g^" + std::to_string(log_[a]);
    return "[" + std::to_string(a) + "]";
}

Elem Field::parse_elem(const std::string& s) const {
    if (s.empty()) throw std::invalid_argument("empty coefficient");
    if (s[0] == 'g') {
        if (!base_ || exp_.empty()) throw std::invalid_argument("g^j notation needs an extension field");
        std::uint64_t j = 1;
        if (s.size() > 1) {
            if (s[1] != '^') throw std::invalid_argument("bad coefficient: " + s);
            j = std::stoull(s.substr(2));
        }
        return exp(j);
    }
    std::uint64_t v = std::stoull(s);
    if (v >= p_) throw std::invalid_argument("coefficient out of range: " + s);
    return static_cast<Elem>(v);
}

FieldPtr make_field(std::uint32_t p, int e) {
    if (e < 1) throw std::invalid_argument("extension degree must be >= 1");
    FieldPtr Fp = Field::prime(p);
    if (e == 1) return Fp;
    // enumerate (a_{e-1}, ..., a_0) in lexicographic order
    std::uint64_t count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        Vec m(e + 1, 0);
        m[e] = 1;
        std::uint64_t t = idx;
        for (int i = 0; i < e; ++i) {
            m[i] = static_cast<Elem>(t % p);
            t /= p;
        }
        if (m[0] == 0) continue;
        if (!vec_irreducible(*Fp, m)) continue;
        return Field::extension(Fp, m);
    }
    throw std::logic_error("no irreducible polynomial found");
}

}  // namespace cff
