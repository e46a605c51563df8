#pragma once

#include "rbgs/element.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rbgs {

// Raised when a bracket [u, v] is demanded that neither the base rules nor
// RB-coherence determine and the policy is not `zero`. Names the pair.
class OracleIncomplete : public std::runtime_error {
public:
    OracleIncomplete(Letter u, Letter v, const std::string& what)
        : std::runtime_error(what), u_(u), v_(v) {}
    Letter first() const { return u_; }
    Letter second() const { return v_; }

private:
    Letter u_, v_;
};

struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::string> incomplete_pairs;
    bool ok() const { return violations.empty(); }
};

// A pre-Lie or post-Lie algebra C given by structure constants over an
// ordered basis Y. The pre case has one product and weight 0; the post
// case has the product, a Lie bracket and a nonzero weight.
struct PrePostLie {
    enum class Case { pre, post };

    Case kind = Case::pre;
    std::vector<std::string> gens;
    Rational weight = 0;
    // product[i][j] / bracket_c[i][j]: coordinates over Y of y_i * y_j, [y_i, y_j].
    std::vector<std::vector<std::vector<Rational>>> product;
    std::vector<std::vector<std::vector<Rational>>> bracket_c;  // post only

    std::size_t dim() const { return gens.size(); }
    GenNames names() const { return GenNames{gens}; }

    // Checks weight/case compatibility plus the defining identities on all
    // basis triples: the pre-Lie identity, or antisymmetry + Jacobi + the
    // two post-Lie identities.
    ValidationReport validate() const;

    static PrePostLie trivial(Case kind, std::size_t n, Rational weight);
};

enum class HigherPolicy { error, zero, table };

// The presentation of the Lie RB-algebra L with basis X = {x_{alpha,k}} and
// operator P shifting level by one. Base rules give brackets on low levels;
// brackets with both levels >= 1 are always derived through
//   [P(a), P(b)] = P([P(a),b] + [a,P(b)] + lambda [a,b]).
class BracketOracle {
public:
    BracketOracle(std::size_t gen_count, Rational weight, HigherPolicy policy,
                  GenNames names = {});

    std::size_t gen_count() const { return gen_count_; }
    const Rational& weight() const { return weight_; }
    HigherPolicy policy() const { return policy_; }
    const GenNames& names() const { return names_; }

    // Base rule [u, v] = value (value supported on letters). Stored with the
    // pair canonicalized by antisymmetry.
    void set_base(Letter u, Letter v, Element value);
    bool has_base(Letter u, Letter v) const;

    // [u, v] as a combination of letters. Derived recursively by
    // RB-coherence when both levels >= 1; antisymmetry applied
    // automatically. Throws OracleIncomplete when no rule applies and the
    // policy demands an answer.
    Element bracket(Letter u, Letter v) const;
    // Bilinear extension to letter-supported elements.
    Element bracket(const Element& u, const Element& v) const;
    // Iterated bracket [y, x^(p)] = [[..[y,x],x]..],x].
    Element iterated_bracket(Letter y, Letter x, unsigned p) const;

    // Level shift: P applied to a letter-supported element.
    static Element shift_up(const Element& e);

    // Antisymmetry + Jacobi on all letter triples up to level_bound,
    // RB-coherence against any user-set high-level entries, and the
    // image-subalgebra condition.
    ValidationReport validate(std::uint32_t level_bound) const;

    // Total zero oracle (the abelian L).
    static std::shared_ptr<const BracketOracle> abelian(std::size_t gen_count, Rational weight,
                                                        GenNames names = {});

private:
    Element bracket_uncached(Letter u, Letter v) const;

    std::size_t gen_count_;
    Rational weight_;
    HigherPolicy policy_;
    GenNames names_;
    std::map<std::pair<Letter, Letter>, Element> base_;
    mutable std::map<std::pair<Letter, Letter>, Element> memo_;
    mutable std::mutex memo_mutex_;
};

// The oracle forced by the envelope relations: [x_{a,1}, x_{b,0}] = a*b and,
// in the post case, [x_{a,0}, x_{b,0}] = (1/lambda) [a,b]_C. Everything with
// both levels >= 1 is derived; all other pairs follow `policy`.
std::shared_ptr<BracketOracle> forced_oracle(const PrePostLie& c,
                                             HigherPolicy policy = HigherPolicy::error);

// The doubled Lie RB-algebra on C + C' of Theorem 2's proof sketch. Basis
// indices 0..m-1 are the C sector, m..2m-1 the C' sector (the embedded copy).
struct DoubledAlgebra {
    PrePostLie base;
    // bracket[i][j]: coordinates of [e_i, e_j] over the 2m basis vectors.
    std::vector<std::vector<std::vector<Rational>>> bracket;
    // p[i]: coordinates of P(e_i).
    std::vector<std::vector<Rational>> p;

    std::size_t dim() const { return 2 * base.dim(); }
    std::string basis_name(std::size_t i) const;
};

// Builds the doubled algebra. The bracket formulas are a reconstruction and
// must pass check_doubling before any downstream use.
DoubledAlgebra doubling(const PrePostLie& c);

// Verifies on all basis pairs/triples: the RB identity for P in Lie form,
// antisymmetry, Jacobi, and the embedding identities [P(a'), b'] = (a.b)'
// and (post) lambda [a', b'] = [a,b]_C'.
ValidationReport check_doubling(const DoubledAlgebra& d);

}  // namespace rbgs
