#pragma once

#include "rbgs/rational.hpp"
#include "rbgs/term.hpp"

#include <utility>
#include <vector>

namespace rbgs {

// A finite linear combination of RBWords with exact rational coefficients.
// Terms are kept sorted descending in the monomial order with no zero
// coefficients, so the leading word is terms().front() and iteration
// order is deterministic.
class Element {
public:
    using Term = std::pair<RBWord, Rational>;

    Element() = default;
    static Element zero() { return Element(); }
    static Element word(RBWord w, Rational c = 1);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Element& operator+=(const Element& other);
    Element& operator-=(const Element& other);
    Element& operator*=(const Rational& c);

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(const Rational& c, Element e) { return e *= c; }
    friend Element operator-(Element e) { return e *= Rational(-1); }
    friend bool operator==(const Element&, const Element&);

    // Coefficient of w (zero if absent).
    Rational coeff(const RBWord& w) const;

    // Builds from an unsorted term list, combining duplicates.
    static Element from_terms(std::vector<Term> terms);

private:
    std::vector<Term> terms_;
};

// Bilinear concatenation product in RAs<X>.
Element multiply(const Element& a, const Element& b);
// Right/left multiplication by a single word.
Element multiply(const Element& a, const RBWord& w);
Element multiply(const RBWord& w, const Element& a);

// w -> R(w), extended linearly.
Element apply_r(const Element& e);

// Leading word and its coefficient; throws std::domain_error on zero.
std::pair<RBWord, Rational> leading(const Element& e);

// Substitution through a star context, extended linearly.
Element substitute(const StarContext& q, const Element& e);

std::string to_string(const Element& e, const GenNames& names);

}  // namespace rbgs
