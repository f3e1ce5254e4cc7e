#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace cff {

using Elem = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// A finite field realized as a tower: either F_p, or base[x]/(modulus) for a
// monic irreducible modulus over a smaller Field.  Elements are packed
// integers: the base-|base| digits are the coefficients of the residue
// polynomial, lowest degree in the least significant digit.  Elements of the
// base field therefore embed as themselves.
class Field {
public:
    static FieldPtr prime(std::uint32_t p);
    // Throws std::invalid_argument if modulus is not monic irreducible.
    static FieldPtr extension(FieldPtr base, std::vector<Elem> modulus);

    std::uint32_t characteristic() const { return p_; }
    std::uint32_t size() const { return size_; }
    std::uint32_t base_size() const { return base_ ? base_->size() : p_; }
    int degree() const { return deg_; }  // over base
    int absolute_degree() const { return absdeg_; }
    const Field* base() const { return base_.get(); }
    FieldPtr base_ptr() const { return base_; }
    const std::vector<Elem>& modulus() const { return modulus_; }
    bool is_prime() const { return !base_; }
    bool has_tables() const { return !exp_.empty(); }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const;
    Elem from_int(std::int64_t v) const;  // image of an integer
    // x -> x^{|base|}, and its inverse.
    Elem frob(Elem a) const { return pow(a, base_size()); }
    Elem frob_inv(Elem a) const;
    bool in_base(Elem a) const { return a < base_size(); }

    std::vector<Elem> digits(Elem a) const;
    Elem from_digits(const std::vector<Elem>& d) const;

    // Primitive element and discrete log (tables only).
    Elem generator() const { return gen_; }
    std::uint32_t log(Elem a) const { return log_[a]; }
    Elem exp(std::uint64_t k) const { return exp_[k % (size_ - 1)]; }

    // Coefficient text: decimal for prime fields, "g^j" (or 0) otherwise.
    std::string elem_to_string(Elem a) const;
    Elem parse_elem(const std::string& s) const;

private:
    Field() = default;
    void build_tables();
    Elem slow_mul(Elem a, Elem b) const;
    Elem slow_add(Elem a, Elem b) const;

    std::uint32_t p_ = 2;
    std::uint32_t size_ = 2;
    int deg_ = 1;
    int absdeg_ = 1;
    FieldPtr base_;
    std::vector<Elem> modulus_;  // over base, monic, low -> high

    Elem gen_ = 1;
    std::vector<Elem> exp_;            // length 2(size-1)
    std::vector<std::uint32_t> log_;   // log_[0] unused
    std::vector<std::int32_t> zech_;   // log(1 + g^k), -1 when 1 + g^k = 0
    std::vector<Elem> inv_small_;      // prime fields
};

bool is_prime_number(std::uint64_t n);

// F_q with q = p^e; for e > 1 the modulus is the least monic irreducible of
// degree e over F_p, comparing coefficient tuples (a_{e-1}, ..., a_0).
FieldPtr make_field(std::uint32_t p, int e);

}  // namespace cff
