#pragma once

#include <cstdint>
#include <concepts>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace pbwlab {

/// Which exact coefficient field a computation runs over.
struct FieldSpec {
    enum class Kind { rationals, prime_field };
    Kind kind = Kind::rationals;
    std::uint32_t p = 0;  // prime modulus, meaningful iff kind == prime_field

    static FieldSpec rationals() { return {Kind::rationals, 0}; }
    static FieldSpec gf(std::uint32_t p) { return {Kind::prime_field, p}; }

    bool operator==(const FieldSpec&) const = default;
};

inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline void validate(const FieldSpec& fs) {
    if (fs.kind == FieldSpec::Kind::prime_field) {
        if (!is_prime_u32(fs.p))
            throw std::invalid_argument("field modulus " + std::to_string(fs.p) + " is not prime");
        if (fs.p >= (1u << 31))
            throw std::invalid_argument("field modulus must be < 2^31");
    }
}

/// A field is a small value object; scalars are K::Elem and all arithmetic
/// goes through the field so GF(p) scalars can stay plain uint32_t.
template <class K>
concept Field = requires(const K k, typename K::Elem a, typename K::Elem b) {
    { k.zero() } -> std::same_as<typename K::Elem>;
    { k.one() } -> std::same_as<typename K::Elem>;
    { k.add(a, b) } -> std::same_as<typename K::Elem>;
    { k.sub(a, b) } -> std::same_as<typename K::Elem>;
    { k.mul(a, b) } -> std::same_as<typename K::Elem>;
    { k.neg(a) } -> std::same_as<typename K::Elem>;
    { k.inv(a) } -> std::same_as<typename K::Elem>;
    { k.is_zero(a) } -> std::same_as<bool>;
    { k.eq(a, b) } -> std::same_as<bool>;
    { k.from_int(std::int64_t{}) } -> std::same_as<typename K::Elem>;
    { k.to_string(a) } -> std::same_as<std::string>;
    { k.spec() } -> std::same_as<FieldSpec>;
};

/// Exact rationals, unbounded precision, always canonical (lowest terms).
struct QField {
    using Elem = mpq_class;

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw std::domain_error("division by zero");
        return 1 / a;
    }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem from_int(std::int64_t n) const { return Elem(static_cast<long>(n)); }
    std::string to_string(const Elem& a) const { return a.get_str(); }
    std::optional<Elem> parse(const std::string& s) const {
        mpq_class v;
        if (v.set_str(s, 10) != 0) return std::nullopt;
        v.canonicalize();
        return v;
    }
    FieldSpec spec() const { return FieldSpec::rationals(); }
    std::int64_t characteristic() const { return 0; }
};

/// Prime field GF(p), p < 2^31; scalars are residues in [0, p).
struct GFpField {
    using Elem = std::uint32_t;
    std::uint32_t p = 2;

    GFpField() = default;
    explicit GFpField(std::uint32_t prime) : p(prime) { validate(FieldSpec::gf(prime)); }

    Elem zero() const { return 0; }
    Elem one() const { return p == 1 ? 0 : 1; }
    Elem add(Elem a, Elem b) const {
        std::uint64_t s = std::uint64_t(a) + b;
        return s >= p ? Elem(s - p) : Elem(s);
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
    Elem mul(Elem a, Elem b) const { return Elem((std::uint64_t(a) * b) % p); }
    Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
    Elem inv(Elem a) const {
        if (a == 0) throw std::domain_error("division by zero");
        // extended Euclid
        std::int64_t t = 0, nt = 1, r = p, nr = a;
        while (nr != 0) {
            std::int64_t q = r / nr;
            std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        if (t < 0) t += p;
        return Elem(t);
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }
    Elem from_int(std::int64_t n) const {
        std::int64_t r = n % std::int64_t(p);
        if (r < 0) r += p;
        return Elem(r);
    }
    std::string to_string(Elem a) const { return std::to_string(a); }
    std::optional<Elem> parse(const std::string& s) const {
        if (s.empty()) return std::nullopt;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return std::nullopt;
        std::int64_t v = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') return std::nullopt;
            v = v * 10 + (s[i] - '0');
            if (v > (std::int64_t(1) << 62) / 8) v %= p;  // keep bounded while scanning
        }
        if (s[0] == '-') v = -v;
        return from_int(v);
    }
    FieldSpec spec() const { return FieldSpec::gf(p); }
    std::int64_t characteristic() const { return p; }
};

static_assert(Field<QField>);
static_assert(Field<GFpField>);

}  // namespace pbwlab
