#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rbgs/element.hpp"
#include "rbgs/term.hpp"

using namespace rbgs;

namespace {

const Letter a0{0, 0}, a1{0, 1}, b0{1, 0}, b1{1, 1};

RBWord L(std::initializer_list<Letter> ls) { return word_of_letters(ls); }
Atom R(const RBWord& w) { return Atom::bracket(w); }

bool less(const RBWord& u, const RBWord& v) {
    return compare(u, v) == std::strong_ordering::less;
}

}  // namespace

TEST_CASE("deg_r counts R symbols at all depths") {
    CHECK(deg_r(word_of({R(word_of({R(L({a0})), Atom::letter(a0)}))})) == 2);
    CHECK(deg_r(L({a0, b0})) == 0);
    CHECK(deg_r(word_of({R(L({a0})), Atom::letter(a0), R(L({b0}))})) == 2);
}

TEST_CASE("breadth counts atoms over X_inf") {
    CHECK(breadth(word_of({R(L({a0})), Atom::letter(a0), R(L({b0}))})) == 3);
    CHECK(breadth(L({a0})) == 1);
    CHECK(breadth(word_of({R(L({a0, b0, b0}))})) == 1);
}

TEST_CASE("monomial order examples") {
    // deg_R dominates breadth
    CHECK(less(L({a0, a0, a0}), word_of({R(L({a0}))})));
    // letters by (gen, level)
    CHECK(less(L({a0}), L({a1})));
    CHECK(less(L({a1}), L({b0})));
    // same deg_R and breadth: letters below R-letters
    CHECK(less(word_of({Atom::letter(a0), R(L({a0}))}), word_of({R(L({a0})), Atom::letter(a0)})));
    CHECK(compare(word_of({R(L({b1}))}), word_of({R(L({b1}))})) == std::strong_ordering::equal);
    // R(a) < R(b) iff a < b
    CHECK(less(word_of({R(L({a0}))}), word_of({R(L({a1}))})));
}

TEST_CASE("substitute replaces the star preserving structure") {
    // q = R(*) a0, u = a0 b0 -> R(a0 b0) a0
    StarContext q(std::vector<StarContext::Frame>{
        StarContext::Frame{{}, {Atom::letter(a0)}},
        StarContext::Frame{{}, {}},
    });
    RBWord result = substitute(q, L({a0, b0}));
    CHECK(result == word_of({R(L({a0, b0})), Atom::letter(a0)}));

    CHECK(substitute(StarContext(), L({a0, b0})) == L({a0, b0}));

    // q = R(R(*)), u = a0 -> R(R(a0))
    StarContext nested(std::vector<StarContext::Frame>{
        StarContext::Frame{{}, {}},
        StarContext::Frame{{}, {}},
        StarContext::Frame{{}, {}},
    });
    CHECK(substitute(nested, L({a0})) == word_of({R(word_of({R(L({a0}))}))}));
}

TEST_CASE("occurrences finds every context, outside-in and left to right") {
    auto occ = occurrences(L({a0, a0}), L({a0}));
    REQUIRE(occ.size() == 2);
    CHECK(substitute(occ[0], L({a0})) == L({a0, a0}));
    CHECK(substitute(occ[1], L({a0})) == L({a0, a0}));
    CHECK(occ[0].frames().back().prefix.empty());
    CHECK(occ[1].frames().back().prefix.size() == 1);

    auto inner = occurrences(word_of({R(L({a0, b0}))}), L({a0, b0}));
    REQUIRE(inner.size() == 1);
    CHECK(inner[0].depth() == 1);
    CHECK(substitute(inner[0], L({a0, b0})) == word_of({R(L({a0, b0}))}));

    CHECK(occurrences(L({a0}), L({b0})).empty());
}

TEST_CASE("every returned occurrence substitutes back to the original word") {
    RBWord w = word_of({Atom::letter(a0), R(L({a0, a0})), Atom::letter(a0)});
    for (const RBWord& t : {L({a0}), L({a0, a0})}) {
        for (const StarContext& q : occurrences(w, t)) CHECK(substitute(q, t) == w);
    }
}

TEST_CASE("deg_r is additive under substitution") {
    RBWord u = word_of({R(L({a0}))});
    RBWord v = L({b0, b0});
    RBWord w = word_of({Atom::letter(a0), R(u), Atom::letter(b0)});
    for (const StarContext& q : occurrences(w, u)) {
        RBWord wu = substitute(q, u);
        RBWord wv = substitute(q, v);
        CHECK(deg_r(wu) == deg_r(wv) + deg_r(u) - deg_r(v));
    }
}

TEST_CASE("rendering is canonical and injective on samples") {
    GenNames names{{"a", "b"}};
    CHECK(to_string(L({a0, b0}), names) == "a b");
    CHECK(to_string(word_of({R(L({a1}))}), names) == "R(P^1(a))");
    CHECK(to_string(word_of({Atom::letter(b1), R(L({a0, a0}))}), names) == "P^1(b) R(a a)");
}

TEST_CASE("element arithmetic and leading") {
    Element e = Element::word(L({a0, b0})) - Element::word(L({b0, a0}));
    auto [lw, lc] = leading(e);
    CHECK(lw == L({b0, a0}));
    CHECK(lc == Rational(-1));

    CHECK(leading(Element::word(L({a0}))).second == Rational(1));

    Element f = Rational(3) * Element::word(word_of({R(L({a0}))})) + Element::word(L({a1}));
    CHECK(leading(f).first == word_of({R(L({a0}))}));
    CHECK(leading(f).second == Rational(3));

    CHECK_THROWS_AS(leading(Element::zero()), std::domain_error);
}

TEST_CASE("multiply is bilinear concatenation") {
    Element x = Element::word(L({a0}));
    Element y = Element::word(L({b0}));
    CHECK(multiply(x, y) == Element::word(L({a0, b0})));
    CHECK(multiply(x + y, x) == Element::word(L({a0, a0})) + Element::word(L({b0, a0})));
    Element two_w = Rational(2) * Element::word(L({a0}));
    Element half_v = Rational(1, 2) * Element::word(L({b0}));
    CHECK(multiply(two_w, half_v) == Element::word(L({a0, b0})));
}

TEST_CASE("apply_r is linear and nests") {
    Element e = Element::word(L({a0})) + Rational(2) * Element::word(L({b0}));
    Element re = apply_r(e);
    CHECK(re == Element::word(word_of({R(L({a0}))})) +
                    Rational(2) * Element::word(word_of({R(L({b0}))})));
    CHECK(apply_r(Element::word(word_of({R(L({a0}))}))) ==
          Element::word(word_of({R(word_of({R(L({a0}))}))})));
    CHECK(apply_r(Element::zero()).is_zero());
}

TEST_CASE("multiply is associative on samples") {
    Element x = Element::word(L({a0})) - Rational(2) * Element::word(word_of({R(L({b0}))}));
    Element y = Element::word(L({b0, a1}));
    Element z = Element::word(L({b1})) + Element::word(L({a0}));
    CHECK(multiply(multiply(x, y), z) == multiply(x, multiply(y, z)));
}
