#include "rbgs/formulas.hpp"

#include <cassert>
#include <stdexcept>

namespace rbgs {

namespace {

Element product_of(const std::vector<Element>& factors) {
    assert(!factors.empty());
    Element acc = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) acc = multiply(acc, factors[i]);
    return acc;
}

Element letter_element(Letter l) { return Element::word(word_of_letters({l})); }

// One position of the hat expansion: how it renders unhatted and hatted.
struct Position {
    Element unhatted;
    Element hatted;
    bool in_block = false;
};

// explicit_r: spell R of a letter as an R-letter instead of identifying it
// with the letter one level up.
std::vector<Position> build_positions(const DeltaSlots& slots, bool explicit_r) {
    std::vector<Position> ps;
    auto push_z = [&](const Element& z) {
        ps.push_back(Position{apply_r(z), z, false});
    };
    auto r_of_letter = [&](Letter l) {
        return explicit_r ? apply_r(letter_element(l)) : letter_element(l.up());
    };
    if (slots.lead) push_z(*slots.lead);
    assert(slots.vecs.empty() || slots.interior.size() + 1 == slots.vecs.size());
    for (std::size_t i = 0; i < slots.vecs.size(); ++i) {
        for (Letter x : slots.vecs[i]) {
            if (x.level < 1) throw std::invalid_argument("eq5: run letter of level 0");
            ps.push_back(Position{r_of_letter(x.down()), letter_element(x.down()), false});
        }
        if (i < slots.interior.size()) push_z(slots.interior[i]);
    }
    for (unsigned i = 0; i <= slots.k; ++i)
        ps.push_back(Position{r_of_letter(slots.beta), letter_element(slots.beta), true});
    if (slots.trail) push_z(*slots.trail);
    return ps;
}

Element hat_product(const std::vector<Position>& ps, const std::vector<bool>& hats) {
    std::vector<Element> factors;
    factors.reserve(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i)
        factors.push_back(hats[i] ? ps[i].hatted : ps[i].unhatted);
    return product_of(factors);
}

}  // namespace

Element eq3_defect(Letter y, Letter x, unsigned l, const BracketOracle& oracle) {
    Element ye = letter_element(y);
    Element xe = letter_element(x);
    auto x_pow = [&](unsigned p) {
        std::vector<Atom> atoms(p, Atom::letter(x));
        return atoms.empty() ? std::optional<RBWord>() : std::optional<RBWord>(RBWord(atoms));
    };

    // (l+1) y x^l
    std::vector<Atom> lead_atoms{Atom::letter(y)};
    for (unsigned i = 0; i < l; ++i) lead_atoms.push_back(Atom::letter(x));
    Element defect = Element::word(RBWord(lead_atoms), Rational(Integer(l + 1)));

    // - sum_{i=2}^{l+1} (-1)^i C(l+1,i) [y, x^(i-1)] x^{l+1-i}
    for (unsigned i = 2; i <= l + 1; ++i) {
        Element term = oracle.iterated_bracket(y, x, i - 1);
        if (auto tail = x_pow(l + 1 - i)) term = multiply(term, *tail);
        Rational coeff = Rational(binomial(l + 1, i));
        if (i % 2 == 1) coeff = -coeff;
        defect -= coeff * term;
    }

    // - (y x^l + x y x^{l-1} + ... + x^l y)
    for (unsigned j = 0; j <= l; ++j) {
        std::vector<Atom> atoms;
        for (unsigned t = 0; t < j; ++t) atoms.push_back(Atom::letter(x));
        atoms.push_back(Atom::letter(y));
        for (unsigned t = 0; t < l - j; ++t) atoms.push_back(Atom::letter(x));
        defect -= Element::word(RBWord(atoms));
    }
    return defect;
}

Element eq4_element(const std::vector<Element>& bs, const Rational& lambda) {
    const std::size_t t = bs.size();
    if (t == 0) throw std::invalid_argument("eq4: empty factor list");

    std::vector<Element> lead_factors;
    for (const Element& b : bs) lead_factors.push_back(apply_r(b));
    Element result = product_of(lead_factors);

    Element sum;
    for (std::size_t mask = 1; mask < (std::size_t(1) << t); ++mask) {
        unsigned hats = static_cast<unsigned>(__builtin_popcountll(mask));
        Rational coeff = pow_rational(lambda, hats - 1);
        if (coeff == 0) continue;
        std::vector<Element> factors;
        for (std::size_t i = 0; i < t; ++i)
            factors.push_back((mask >> i) & 1 ? bs[i] : apply_r(bs[i]));
        sum += coeff * product_of(factors);
    }
    return result - apply_r(sum);
}

// Shared core of the two Delta spellings. iterated_br(p) supplies
// [b_l, R(b_l)^(p)] in the chosen spelling.
template <typename BracketFn>
Element delta_core(const DeltaSlots& slots, const Rational& lambda, bool explicit_r,
                   BracketFn&& iterated_br) {
    const std::vector<Position> ps = build_positions(slots, explicit_r);
    const std::size_t t = ps.size();
    const unsigned k = slots.k;
    const Rational inv(Integer(1), Integer(k + 1));

    std::vector<bool> no_hats(t, false);
    Element delta = inv * hat_product(ps, no_hats);

    Element sigma;

    // bracket terms: positions before the block, then [b_l, R(b_l)^(i-1)],
    // then R(b_l)^{k+1-i}, then the trailing flank
    std::size_t block_begin = t;
    for (std::size_t i = 0; i < t; ++i)
        if (ps[i].in_block) {
            block_begin = i;
            break;
        }
    for (unsigned i = 2; i <= k + 1; ++i) {
        Element br = iterated_br(i - 1);
        if (br.is_zero()) continue;
        std::vector<Element> factors;
        for (std::size_t p = 0; p < block_begin; ++p) factors.push_back(ps[p].unhatted);
        factors.push_back(br);
        for (unsigned j = 0; j < k + 1 - i; ++j) factors.push_back(ps[block_begin].unhatted);
        for (std::size_t p = block_begin + k + 1; p < t; ++p) factors.push_back(ps[p].unhatted);
        Rational coeff = Rational(binomial(k + 1, i));
        if (i % 2 == 1) coeff = -coeff;
        sigma += coeff * product_of(factors);
    }

    // single-hat terms at positions outside the block
    for (std::size_t p = 0; p < t; ++p) {
        if (ps[p].in_block) continue;
        std::vector<bool> hats(t, false);
        hats[p] = true;
        sigma -= hat_product(ps, hats);
    }

    // lambda-weighted multi-hat terms over all index tuples
    if (lambda != 0 && t >= 2) {
        for (std::size_t mask = 1; mask < (std::size_t(1) << t); ++mask) {
            unsigned hats_count = static_cast<unsigned>(__builtin_popcountll(mask));
            if (hats_count < 2) continue;
            std::vector<bool> hats(t, false);
            for (std::size_t i = 0; i < t; ++i) hats[i] = (mask >> i) & 1;
            sigma -= pow_rational(lambda, hats_count - 1) * hat_product(ps, hats);
        }
    }

    delta += inv * apply_r(sigma);
    return delta;
}

Element eq5_delta(const DeltaSlots& slots, const Rational& lambda, const BracketOracle& oracle) {
    return delta_core(slots, lambda, /*explicit_r=*/false, [&](unsigned p) {
        return oracle.iterated_bracket(slots.beta, slots.beta.up(), p);
    });
}

Element eq5_delta_explicit_free(const DeltaSlots& slots, const Rational& lambda) {
    Element c = letter_element(slots.beta);
    Element x = apply_r(c);
    return delta_core(slots, lambda, /*explicit_r=*/true, [&](unsigned p) {
        Element acc = c;
        for (unsigned i = 0; i < p; ++i) acc = multiply(acc, x) - multiply(x, acc);
        return acc;
    });
}

std::vector<Element> eq5_b_list(const DeltaSlots& slots) {
    std::vector<Element> bs;
    if (slots.lead) bs.push_back(*slots.lead);
    for (std::size_t i = 0; i < slots.vecs.size(); ++i) {
        for (Letter x : slots.vecs[i]) bs.push_back(letter_element(x.down()));
        if (i < slots.interior.size()) bs.push_back(slots.interior[i]);
    }
    for (unsigned i = 0; i <= slots.k; ++i) bs.push_back(letter_element(slots.beta));
    if (slots.trail) bs.push_back(*slots.trail);
    return bs;
}

Element eq5_delta(std::optional<Element> z1, std::vector<std::vector<Letter>> vecs,
                  std::vector<Element> zs, Letter beta, unsigned k,
                  std::optional<Element> zlast, const Rational& lambda,
                  const BracketOracle& oracle) {
    DeltaSlots slots;
    slots.lead = std::move(z1);
    slots.vecs = std::move(vecs);
    slots.interior = std::move(zs);
    slots.beta = beta;
    slots.k = k;
    slots.trail = std::move(zlast);
    return eq5_delta(slots, lambda, oracle);
}

Element eq5_lhs_explicit(const DeltaSlots& slots) {
    std::vector<Element> factors;
    auto push_z = [&](const Element& z) { factors.push_back(apply_r(z)); };
    if (slots.lead) push_z(*slots.lead);
    for (std::size_t i = 0; i < slots.vecs.size(); ++i) {
        for (Letter x : slots.vecs[i]) {
            if (x.level < 1) throw std::invalid_argument("eq5: run letter of level 0");
            factors.push_back(apply_r(Element::word(word_of_letters({x.down()}))));
        }
        if (i < slots.interior.size()) push_z(slots.interior[i]);
    }
    factors.push_back(Element::word(word_of_letters({slots.beta})));
    for (unsigned i = 0; i < slots.k; ++i)
        factors.push_back(apply_r(Element::word(word_of_letters({slots.beta}))));
    if (slots.trail) push_z(*slots.trail);
    return apply_r(product_of(factors));
}

}  // namespace rbgs
