#include "kisin/gf.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace kisin {

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Polynomial arithmetic over Z/p on small int vectors (constant term first).
std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& b, int p) {
    // b monic
    int db = static_cast<int>(b.size()) - 1;
    while (static_cast<int>(a.size()) > db) {
        int da = static_cast<int>(a.size()) - 1;
        int lead = a.back() % p;
        if (lead != 0) {
            for (int i = 0; i <= db; ++i) {
                int& t = a[static_cast<size_t>(da - db + i)];
                t = ((t - lead * b[static_cast<size_t>(i)]) % p + p) % p;
            }
        }
        a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

// Irreducibility over F_p by trial factor search: no roots, and for degree >= 4
// no monic quadratic divisors. Sufficient for degree <= 5.
bool is_irreducible(const std::vector<uint8_t>& mod, int p) {
    int m = static_cast<int>(mod.size()) - 1;
    if (m < 1) return false;
    if (mod[static_cast<size_t>(m)] != 1) return false;
    if (m > 5) throw Error("FieldSpec: irreducibility check supports degree <= 5");
    if (m == 1) return true;
    std::vector<int> f(mod.begin(), mod.end());
    for (int r = 0; r < p; ++r) {
        long long v = 0;
        for (int i = m; i >= 0; --i) v = (v * r + f[static_cast<size_t>(i)]) % p;
        if (v == 0) return false;
    }
    if (m >= 4) {
        for (int c1 = 0; c1 < p; ++c1)
            for (int c0 = 0; c0 < p; ++c0) {
                std::vector<int> quad = {c0, c1, 1};
                if (poly_mod(f, quad, p).empty()) return false;
            }
    }
    return true;
}

struct Registry {
    std::mutex mu;
    std::map<std::pair<int, std::vector<uint8_t>>, std::unique_ptr<FieldSpec>> specs;
    // embedding cache: (from, to) -> image of from's generator in to
    std::map<std::pair<const FieldSpec*, const FieldSpec*>, FieldElement> embeddings;
};

Registry& registry() {
    static Registry* r = new Registry; // immortal
    return *r;
}

// Conway polynomials for p in {2,3,5}, m <= 4 (constant term first).
const std::map<std::pair<int, int>, std::vector<uint8_t>> kConwayTable = {
    {{2, 1}, {1, 1}},
    {{2, 2}, {1, 1, 1}},
    {{2, 3}, {1, 1, 0, 1}},
    {{2, 4}, {1, 1, 0, 0, 1}},
    {{3, 1}, {1, 1}},
    {{3, 2}, {2, 2, 1}},
    {{3, 3}, {1, 2, 0, 1}},
    {{3, 4}, {2, 0, 0, 2, 1}},
    {{5, 1}, {3, 1}},
    {{5, 2}, {2, 4, 1}},
    {{5, 3}, {3, 3, 0, 1}},
    {{5, 4}, {2, 4, 4, 0, 1}},
};

} // namespace

FieldSpec::FieldSpec(int p_, std::vector<uint8_t> mod) : p(p_), m(static_cast<int>(mod.size()) - 1), modulus(std::move(mod)) {
    if (!is_prime(p)) throw Error("FieldSpec: p must be prime");
    if (m < 1 || m > kMaxDegree) throw Error("FieldSpec: degree out of supported range");
    for (auto c : modulus)
        if (c >= p) throw Error("FieldSpec: modulus coefficients must be reduced mod p");
    if (!is_irreducible(modulus, p)) throw Error("FieldSpec: modulus is reducible over F_p");
    q_ = 1;
    for (int i = 0; i < m; ++i) q_ *= p;
}

const FieldSpec* FieldSpec::intern(int p, const std::vector<uint8_t>& modulus) {
    auto& reg = registry();
    std::lock_guard<std::mutex> lock(reg.mu);
    auto key = std::make_pair(p, modulus);
    auto it = reg.specs.find(key);
    if (it != reg.specs.end()) return it->second.get();
    auto spec = std::unique_ptr<FieldSpec>(new FieldSpec(p, modulus));
    const FieldSpec* ptr = spec.get();
    reg.specs.emplace(std::move(key), std::move(spec));
    return ptr;
}

const FieldSpec* FieldSpec::get(int p, int m) {
    auto it = kConwayTable.find({p, m});
    if (it == kConwayTable.end())
        throw Error("FieldSpec: no table entry for p=" + std::to_string(p) + ", m=" + std::to_string(m) +
                    " (table covers p in {2,3,5}, m <= 4; use get_custom)");
    return intern(p, it->second);
}

const FieldSpec* FieldSpec::get_custom(int p, const std::vector<uint8_t>& modulus) {
    return intern(p, modulus);
}

std::string FieldSpec::describe() const {
    std::ostringstream os;
    os << "F_" << q_ << " = F_" << p << "[x]/(";
    bool first = true;
    for (int i = m; i >= 0; --i) {
        int c = modulus[static_cast<size_t>(i)];
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || c != 1) os << c;
        if (i >= 1) os << "x";
        if (i >= 2) os << "^" << i;
    }
    os << ")";
    return os.str();
}

FieldElement::FieldElement(const FieldSpec* spec, long long value) : spec_(spec), c_{} {
    long long v = value % spec->p;
    if (v < 0) v += spec->p;
    c_[0] = static_cast<uint8_t>(v);
}

FieldElement::FieldElement(const FieldSpec* spec, const std::vector<int>& coeffs) : spec_(spec), c_{} {
    if (static_cast<int>(coeffs.size()) > spec->m)
        throw Error("FieldElement: too many coefficients");
    for (size_t i = 0; i < coeffs.size(); ++i) {
        int v = coeffs[i] % spec->p;
        if (v < 0) v += spec->p;
        c_[i] = static_cast<uint8_t>(v);
    }
}

FieldElement FieldElement::generator(const FieldSpec* s) {
    if (s->m == 1) return one(s);
    FieldElement g(s);
    g.c_[1] = 1;
    return g;
}

bool FieldElement::is_zero() const {
    for (int i = 0; i < spec_->m; ++i)
        if (c_[static_cast<size_t>(i)] != 0) return false;
    return true;
}

std::vector<int> FieldElement::coeffs() const {
    std::vector<int> out(static_cast<size_t>(spec_->m));
    for (int i = 0; i < spec_->m; ++i) out[static_cast<size_t>(i)] = c_[static_cast<size_t>(i)];
    return out;
}

void FieldElement::check_same(const FieldElement& a, const FieldElement& b) {
    if (a.spec_ != b.spec_) throw SpecMismatch("FieldElement: mixed field specs");
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    FieldElement::check_same(a, b);
    FieldElement r(a.spec_);
    int p = a.spec_->p;
    for (int i = 0; i < a.spec_->m; ++i) {
        int s = a.c_[static_cast<size_t>(i)] + b.c_[static_cast<size_t>(i)];
        if (s >= p) s -= p;
        r.c_[static_cast<size_t>(i)] = static_cast<uint8_t>(s);
    }
    return r;
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement FieldElement::operator-() const {
    FieldElement r(spec_);
    int p = spec_->p;
    for (int i = 0; i < spec_->m; ++i) {
        int v = c_[static_cast<size_t>(i)];
        r.c_[static_cast<size_t>(i)] = static_cast<uint8_t>(v == 0 ? 0 : p - v);
    }
    return r;
}

void FieldElement::reduce_raw(const int* raw, int raw_len) {
    int p = spec_->p;
    int m = spec_->m;
    std::array<int, 2 * FieldSpec::kMaxDegree> w{};
    for (int i = 0; i < raw_len; ++i) w[static_cast<size_t>(i)] = raw[i] % p;
    for (int i = raw_len - 1; i >= m; --i) {
        int lead = w[static_cast<size_t>(i)] % p;
        if (lead != 0) {
            for (int j = 0; j <= m; ++j) {
                int& t = w[static_cast<size_t>(i - m + j)];
                t = (t - lead * spec_->modulus[static_cast<size_t>(j)]) % p;
            }
        }
    }
    for (int i = 0; i < m; ++i) {
        int v = w[static_cast<size_t>(i)] % p;
        if (v < 0) v += p;
        c_[static_cast<size_t>(i)] = static_cast<uint8_t>(v);
    }
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    FieldElement::check_same(a, b);
    int m = a.spec_->m;
    std::array<int, 2 * FieldSpec::kMaxDegree> raw{};
    for (int i = 0; i < m; ++i) {
        int ai = a.c_[static_cast<size_t>(i)];
        if (ai == 0) continue;
        for (int j = 0; j < m; ++j)
            raw[static_cast<size_t>(i + j)] += ai * b.c_[static_cast<size_t>(j)];
    }
    FieldElement r(a.spec_);
    r.reduce_raw(raw.data(), 2 * m - 1);
    return r;
}

FieldElement FieldElement::pow(long long e) const {
    if (is_zero()) {
        if (e < 0) throw ZeroInverse("FieldElement: 0 has no inverse");
        return e == 0 ? one(spec_) : *this;
    }
    long long order = spec_->q() - 1;
    long long k = e % order;
    if (k < 0) k += order;
    FieldElement base = *this;
    FieldElement acc = one(spec_);
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

FieldElement FieldElement::inv() const {
    if (is_zero()) throw ZeroInverse("FieldElement: 0 has no inverse");
    return pow(spec_->q() - 2);
}

std::vector<FieldElement> FieldElement::all(const FieldSpec* s) {
    std::vector<FieldElement> out;
    out.reserve(static_cast<size_t>(s->q()));
    std::vector<int> digits(static_cast<size_t>(s->m), 0);
    for (long long k = 0; k < s->q(); ++k) {
        out.emplace_back(s, digits);
        for (int i = 0; i < s->m; ++i) {
            if (++digits[static_cast<size_t>(i)] < s->p) break;
            digits[static_cast<size_t>(i)] = 0;
        }
    }
    return out;
}

FieldElement FieldElement::embed_into(const FieldSpec* target) const {
    if (spec_ == target) return *this;
    if (target->p != spec_->p) throw SpecMismatch("FieldElement: embedding must preserve characteristic");
    if (target->m % spec_->m != 0) throw SpecMismatch("FieldElement: no embedding (degree does not divide)");
    if (spec_->m == 1) {
        FieldElement r(target);
        r.c_[0] = c_[0];
        return r;
    }
    auto& reg = registry();
    FieldElement root;
    {
        std::lock_guard<std::mutex> lock(reg.mu);
        auto it = reg.embeddings.find({spec_, target});
        if (it != reg.embeddings.end()) root = it->second;
    }
    if (root.spec() == nullptr) {
        // Scan target for a root of this field's modulus; fields are tiny.
        bool found = false;
        for (const auto& cand : all(target)) {
            FieldElement acc = zero(target);
            for (int i = spec_->m; i >= 0; --i)
                acc = acc * cand + FieldElement(target, spec_->modulus[static_cast<size_t>(i)]);
            if (acc.is_zero()) { root = cand; found = true; break; }
        }
        if (!found) throw Error("FieldElement: no modulus root in target field");
        std::lock_guard<std::mutex> lock(reg.mu);
        reg.embeddings.emplace(std::make_pair(spec_, target), root);
    }
    FieldElement acc = zero(target);
    for (int i = spec_->m - 1; i >= 0; --i)
        acc = acc * root + FieldElement(target, c_[static_cast<size_t>(i)]);
    return acc;
}

std::string FieldElement::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < spec_->m; ++i) {
        if (i) os << ",";
        os << static_cast<int>(c_[static_cast<size_t>(i)]);
    }
    os << "]";
    return os.str();
}

} // namespace kisin
