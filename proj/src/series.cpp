#include "kisin/series.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace kisin {

void LaurentElement::check_same(const LaurentElement& a, const LaurentElement& b) {
    if (a.spec_ != b.spec_) throw SpecMismatch("LaurentElement: mixed field specs");
}

void LaurentElement::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<std::pair<int, FieldElement>> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second = out.back().second + t.second;
        else
            out.push_back(t);
    }
    terms_.clear();
    for (auto& t : out) {
        if (t.second.is_zero()) continue;
        if (horizon_ && t.first >= *horizon_) continue;
        terms_.push_back(std::move(t));
    }
}

LaurentElement LaurentElement::monomial(const FieldElement& c, int e) {
    LaurentElement r(c.spec());
    if (!c.is_zero()) r.terms_.push_back({e, c});
    return r;
}

LaurentElement LaurentElement::from_terms(const FieldSpec* s,
                                          std::vector<std::pair<int, FieldElement>> terms,
                                          std::optional<int> horizon) {
    LaurentElement r(s);
    for (auto& t : terms)
        if (t.second.spec() != s) throw SpecMismatch("LaurentElement: term coefficient from wrong field");
    r.terms_ = std::move(terms);
    r.horizon_ = horizon;
    r.normalize();
    return r;
}

int LaurentElement::val() const {
    if (!terms_.empty()) return terms_.front().first;
    if (is_exact()) throw ZeroValuation("LaurentElement: valuation of exact 0");
    throw InsufficientPrecision("LaurentElement: valuation unknown below horizon " +
                                std::to_string(*horizon_));
}

FieldElement LaurentElement::coeff(int e) const {
    if (horizon_ && e >= *horizon_)
        throw InsufficientPrecision("LaurentElement: coefficient beyond horizon");
    for (const auto& t : terms_)
        if (t.first == e) return t.second;
    return FieldElement::zero(spec_);
}

LaurentElement operator+(const LaurentElement& a, const LaurentElement& b) {
    LaurentElement::check_same(a, b);
    LaurentElement r(a.spec_);
    if (a.horizon_ && b.horizon_) r.horizon_ = std::min(*a.horizon_, *b.horizon_);
    else if (a.horizon_) r.horizon_ = a.horizon_;
    else if (b.horizon_) r.horizon_ = b.horizon_;
    r.terms_ = a.terms_;
    r.terms_.insert(r.terms_.end(), b.terms_.begin(), b.terms_.end());
    r.normalize();
    return r;
}

LaurentElement LaurentElement::operator-() const {
    LaurentElement r(spec_);
    r.horizon_ = horizon_;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.first, -t.second});
    return r;
}

LaurentElement operator-(const LaurentElement& a, const LaurentElement& b) { return a + (-b); }

LaurentElement operator*(const LaurentElement& a, const LaurentElement& b) {
    LaurentElement::check_same(a, b);
    LaurentElement r(a.spec_);

    // Exact zero annihilates unknown tails too.
    if (a.is_zero() || b.is_zero()) return r;

    // Horizon of the product: each factor's unknown tail is scaled by at least
    // the other factor's valuation. An all-unknown factor contributes from its
    // horizon itself.
    auto low = [](const LaurentElement& x) {
        return x.terms_.empty() ? *x.horizon_ : x.terms_.front().first;
    };
    std::optional<int> h;
    if (a.horizon_) h = *a.horizon_ + low(b);
    if (b.horizon_) {
        int hb = *b.horizon_ + low(a);
        h = h ? std::min(*h, hb) : hb;
    }
    r.horizon_ = h;

    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_)
            r.terms_.push_back({ta.first + tb.first, ta.second * tb.second});
    r.normalize();
    return r;
}

LaurentElement LaurentElement::operator*(const FieldElement& c) const {
    if (c.spec() != spec_) throw SpecMismatch("LaurentElement: scalar from wrong field");
    LaurentElement r(spec_);
    if (c.is_zero()) return r; // exact 0 kills the unknown tail too
    r.horizon_ = horizon_;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.first, t.second * c});
    return r;
}

LaurentElement LaurentElement::shifted(int k) const {
    LaurentElement r(spec_);
    if (horizon_) r.horizon_ = *horizon_ + k;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.first + k, t.second});
    return r;
}

LaurentElement LaurentElement::substitute_upow(int N) const {
    if (N < 1) throw Error("LaurentElement: substitution exponent must be >= 1");
    LaurentElement r(spec_);
    if (horizon_) r.horizon_ = *horizon_ * N;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.first * N, t.second});
    return r;
}

LaurentElement LaurentElement::truncated(int h) const {
    LaurentElement r(spec_);
    r.horizon_ = horizon_ ? std::min(*horizon_, h) : h;
    for (const auto& t : terms_)
        if (t.first < *r.horizon_) r.terms_.push_back(t);
    return r;
}

LaurentElement LaurentElement::inv(int prec) const {
    if (prec < 1) throw Error("LaurentElement: inversion precision must be >= 1");
    if (terms_.empty()) {
        if (is_exact()) throw ZeroInverse("LaurentElement: inverse of 0");
        throw InsufficientPrecision("LaurentElement: cannot invert, valuation unknown");
    }
    int v = terms_.front().first;
    if (!known_below(v + prec))
        throw InsufficientPrecision("LaurentElement: operand known to relative precision " +
                                    std::to_string(*horizon_ - v) + " < " + std::to_string(prec));
    // w = u^{-v} * this is a unit; invert it term by term mod u^prec.
    std::map<int, FieldElement> w;
    for (const auto& t : terms_)
        if (t.first - v < prec) w.emplace(t.first - v, t.second);
    FieldElement lead_inv = w.at(0).inv();
    std::vector<FieldElement> c(static_cast<size_t>(prec), FieldElement::zero(spec_));
    c[0] = lead_inv;
    for (int k = 1; k < prec; ++k) {
        // coefficient of u^k in w * c must vanish
        FieldElement acc = FieldElement::zero(spec_);
        for (const auto& [e, we] : w) {
            if (e == 0 || e > k) continue;
            acc = acc + we * c[static_cast<size_t>(k - e)];
        }
        c[static_cast<size_t>(k)] = -(lead_inv * acc);
    }
    LaurentElement r(spec_);
    r.horizon_ = -v + prec;
    for (int k = 0; k < prec; ++k)
        if (!c[static_cast<size_t>(k)].is_zero()) r.terms_.push_back({k - v, c[static_cast<size_t>(k)]});
    return r;
}

bool LaurentElement::agree_below(const LaurentElement& a, const LaurentElement& b, int h) {
    check_same(a, b);
    if (!a.known_below(h) || !b.known_below(h)) return false;
    LaurentElement d = a - b;
    for (const auto& t : d.terms_)
        if (t.first < h) return false;
    return true;
}

bool operator<(const LaurentElement& a, const LaurentElement& b) {
    if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size();
    for (size_t i = 0; i < a.terms_.size(); ++i) {
        if (a.terms_[i].first != b.terms_[i].first) return a.terms_[i].first < b.terms_[i].first;
        if (!(a.terms_[i].second == b.terms_[i].second)) return a.terms_[i].second < b.terms_[i].second;
    }
    auto ah = a.horizon_ ? *a.horizon_ : INT32_MAX;
    auto bh = b.horizon_ ? *b.horizon_ : INT32_MAX;
    return ah < bh;
}

std::string LaurentElement::str() const {
    std::ostringstream os;
    if (terms_.empty()) os << "0";
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        os << t.second.str();
        if (t.first != 0) os << "*u^" << t.first;
    }
    if (horizon_) os << " + O(u^" << *horizon_ << ")";
    return os.str();
}

} // namespace kisin
