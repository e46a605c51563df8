#include "rbgs/element.hpp"

#include <algorithm>
#include <stdexcept>

namespace rbgs {

Element Element::word(RBWord w, Rational c) {
    Element e;
    if (c != 0) e.terms_.emplace_back(std::move(w), std::move(c));
    return e;
}

Element Element::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
        return compare(a.first, b.first) == std::strong_ordering::greater;
    });
    Element e;
    for (auto& t : terms) {
        if (!e.terms_.empty() && e.terms_.back().first == t.first)
            e.terms_.back().second += t.second;
        else
            e.terms_.push_back(std::move(t));
        if (!e.terms_.empty() && e.terms_.back().second == 0) e.terms_.pop_back();
    }
    return e;
}

Element& Element::operator+=(const Element& other) {
    if (other.is_zero()) return *this;
    std::vector<Term> merged;
    merged.reserve(terms_.size() + other.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < other.terms_.size()) {
        if (i == terms_.size()) {
            merged.push_back(other.terms_[j++]);
        } else if (j == other.terms_.size()) {
            merged.push_back(std::move(terms_[i++]));
        } else {
            auto c = compare(terms_[i].first, other.terms_[j].first);
            if (c == std::strong_ordering::greater) {
                merged.push_back(std::move(terms_[i++]));
            } else if (c == std::strong_ordering::less) {
                merged.push_back(other.terms_[j++]);
            } else {
                Rational sum = terms_[i].second + other.terms_[j].second;
                if (sum != 0) merged.emplace_back(std::move(terms_[i].first), std::move(sum));
                ++i, ++j;
            }
        }
    }
    terms_ = std::move(merged);
    return *this;
}

Element& Element::operator-=(const Element& other) {
    Element neg = other;
    neg *= Rational(-1);
    return *this += neg;
}

Element& Element::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.second *= c;
    return *this;
}

bool operator==(const Element& a, const Element& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].second != b.terms_[i].second || !(a.terms_[i].first == b.terms_[i].first))
            return false;
    return true;
}

Rational Element::coeff(const RBWord& w) const {
    for (const auto& t : terms_)
        if (t.first == w) return t.second;
    return Rational(0);
}

Element multiply(const Element& a, const Element& b) {
    std::vector<Element::Term> terms;
    terms.reserve(a.term_count() * b.term_count());
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms())
            terms.emplace_back(concat(wa, wb), ca * cb);
    return Element::from_terms(std::move(terms));
}

Element multiply(const Element& a, const RBWord& w) {
    return multiply(a, Element::word(w));
}

Element multiply(const RBWord& w, const Element& a) {
    return multiply(Element::word(w), a);
}

Element apply_r(const Element& e) {
    std::vector<Element::Term> terms;
    terms.reserve(e.term_count());
    for (const auto& [w, c] : e.terms())
        terms.emplace_back(word_of({Atom::bracket(w)}), c);
    return Element::from_terms(std::move(terms));
}

std::pair<RBWord, Rational> leading(const Element& e) {
    if (e.is_zero()) throw std::domain_error("leading: zero element");
    return e.terms().front();
}

Element substitute(const StarContext& q, const Element& e) {
    std::vector<Element::Term> terms;
    terms.reserve(e.term_count());
    for (const auto& [w, c] : e.terms())
        terms.emplace_back(substitute(q, w), c);
    return Element::from_terms(std::move(terms));
}

std::string to_string(const Element& e, const GenNames& names) {
    if (e.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : e.terms()) {
        Rational a = c;
        if (first) {
            if (a < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        if (a != 1) {
            out += to_string(a);
            out += ' ';
        }
        out += to_string(w, names);
        first = false;
    }
    return out;
}

}  // namespace rbgs
