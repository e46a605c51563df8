#pragma once

#include "rbgs/element.hpp"
#include "rbgs/oracle.hpp"

#include <optional>
#include <vector>

namespace rbgs {

// LHS minus RHS of the enveloping-algebra lemma
//   (l+1) y x^l = sum_{i=2}^{l+1} (-1)^i C(l+1,i) [y, x^(i-1)] x^{l+1-i}
//               + (y x^l + x y x^{l-1} + ... + x^l y),
// with the iterated brackets expanded through the oracle. Rewrites to zero
// under the commutator relation alone.
Element eq3_defect(Letter y, Letter x, unsigned l, const BracketOracle& oracle);

// R(b_1)...R(b_t) minus R of the sum over all nonempty hat subsets with
// coefficient lambda^(#hats - 1). Rewrites to zero under the RB relation
// alone.
Element eq4_element(const std::vector<Element>& bs, const Rational& lambda);

// The content slots of the long relation, in word order: an optional
// leading R-content, letter runs alternating with interior R-contents, the
// distinguished letter x_{beta,r} with its repetition count, and an
// optional trailing R-content.
struct DeltaSlots {
    std::optional<Element> lead;            // z_1
    std::vector<std::vector<Letter>> vecs;  // runs of letters with level >= 1; last may be empty
    std::vector<Element> interior;          // z_2 .. z_s  (vecs.size() - 1 entries)
    Letter beta{};                          // x_{beta,r}
    unsigned k = 0;                         // number of trailing x_{beta,r+1}
    std::optional<Element> trail;           // z_{s+1}
};

// The full right-hand side Delta: the 1/(k+1) top-level term plus
// 1/(k+1) R(bracket terms - single-hat terms - lambda-weighted multi-hat
// terms), with R of a letter identified with the letter one level up.
Element eq5_delta(const DeltaSlots& slots, const Rational& lambda, const BracketOracle& oracle);

Element eq5_delta(std::optional<Element> z1, std::vector<std::vector<Letter>> vecs,
                  std::vector<Element> zs, Letter beta, unsigned k,
                  std::optional<Element> zlast, const Rational& lambda,
                  const BracketOracle& oracle);

// The matching left-hand side R(R(b_1)...R(b_{l-1}) b_l R(b_l)^k R(b_{l+k+1}))
// with every R spelled as an actual R-letter (no level identification).
// Subtracting eq5_delta from this must rewrite to zero using only the
// commutator relation, the RB relation and the degenerate long relation.
Element eq5_lhs_explicit(const DeltaSlots& slots);

// Delta with every R spelled as an R-letter and the bracket terms expanded
// as free commutators; no oracle, no level identification. Satisfies the
// exact identity
//   (k+1) (eq5_lhs_explicit - eq5_delta_explicit_free) + eq4_element(b-list) = 0,
// which pins the hat index sets, signs and binomials of the builder.
Element eq5_delta_explicit_free(const DeltaSlots& slots, const Rational& lambda);

// The factor list b_1 .. b_{l+k+1} of the instance (flanks and interior
// contents as elements, run letters tilded, the block letter k+1 times).
std::vector<Element> eq5_b_list(const DeltaSlots& slots);

}  // namespace rbgs
