#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "kisin/error.hpp"

namespace kisin {

/// Specification of F_{p^m}: characteristic, degree, and a monic irreducible
/// modulus over F_p (coefficient list, constant term first, size m+1).
/// Instances are interned and immortal, so elements can hold raw pointers.
class FieldSpec {
public:
    static constexpr int kMaxDegree = 8;

    int p;
    int m;
    std::vector<uint8_t> modulus;

    long long q() const { return q_; }

    /// Canonical field for (p, m) from the built-in Conway-style table,
    /// p in {2,3,5}, m <= 4.
    static const FieldSpec* get(int p, int m);

    /// Field with a user-supplied monic modulus (irreducibility is checked).
    static const FieldSpec* get_custom(int p, const std::vector<uint8_t>& modulus);

    std::string describe() const;

private:
    FieldSpec(int p_, std::vector<uint8_t> mod);
    static const FieldSpec* intern(int p, const std::vector<uint8_t>& modulus);

    long long q_;
};

/// Element of F_{p^m} as a coefficient vector of length m over Z/p.
/// Immutable value type; arithmetic requires matching specs.
class FieldElement {
public:
    FieldElement() : spec_(nullptr), c_{} {}
    explicit FieldElement(const FieldSpec* spec) : spec_(spec), c_{} {}
    FieldElement(const FieldSpec* spec, long long value);
    FieldElement(const FieldSpec* spec, const std::vector<int>& coeffs);

    static FieldElement zero(const FieldSpec* s) { return FieldElement(s); }
    static FieldElement one(const FieldSpec* s) { return FieldElement(s, 1); }
    /// The class of x modulo the modulus (for m >= 2); 1 for prime fields.
    static FieldElement generator(const FieldSpec* s);

    const FieldSpec* spec() const { return spec_; }
    bool is_zero() const;
    int coeff(int i) const { return c_[static_cast<size_t>(i)]; }
    std::vector<int> coeffs() const;

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    FieldElement operator-() const;

    FieldElement inv() const;                 // throws ZeroInverse on 0
    FieldElement pow(long long e) const;
    FieldElement frobenius() const { return pow(spec_->p); }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.spec_ == b.spec_ && a.c_ == b.c_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
    /// Deterministic total order (spec pointer equality assumed by callers).
    friend bool operator<(const FieldElement& a, const FieldElement& b) { return a.c_ < b.c_; }

    /// Image under an embedding F_{p^m} -> F_{p^{m*k}}; the embedding maps the
    /// modulus root to a fixed root of the same modulus in the target field
    /// (found by scan and cached). Prime fields embed as constants.
    FieldElement embed_into(const FieldSpec* target) const;

    std::string str() const;

    /// All q elements of the field, in deterministic order.
    static std::vector<FieldElement> all(const FieldSpec* s);

private:
    static void check_same(const FieldElement& a, const FieldElement& b);
    void reduce_raw(const int* raw, int raw_len); // schoolbook reduction by modulus

    const FieldSpec* spec_;
    std::array<uint8_t, FieldSpec::kMaxDegree> c_;
};

} // namespace kisin
