#pragma once

#include "rbgs/formulas.hpp"

#include <atomic>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

namespace rbgs {

enum class RelKind { comm, rb, long9 };

// One instantiated element of the relation set S, monic with its leading
// word cached.
struct Relation {
    RelKind kind;
    Element element;
    RBWord leading;
    std::string provenance;
};

// Parsed decomposition of a single R-letter against the long-relation
// leading word R(R(z_1) vec_1 R(z_2) ... R(z_s) vec_s x_{b,r} x_{b,r+1}^k R(z_{s+1})).
struct Pattern9 {
    std::optional<RBWord> lead_flank;       // z_1
    std::vector<std::vector<Letter>> vecs;  // vec_1 .. vec_s (the last may be empty)
    std::vector<RBWord> interior;           // z_2 .. z_s
    Letter beta{};
    unsigned k = 0;
    std::optional<RBWord> trail_flank;      // z_{s+1}

    bool degenerate() const;  // content is the bare letter beta
    RBWord leading_word() const;
    DeltaSlots slots() const;
};

// Canonical match of a single-R-letter word: tries the maximal-k
// decomposition (trailing equal-letter run with its level predecessor
// just before), then the k = 0 decomposition; validates all side
// conditions. Returns nullopt if neither is admissible.
std::optional<Pattern9> match9(const RBWord& w);

// Every admissible decomposition, canonical first (at most two exist).
std::vector<Pattern9> all_matches9(const RBWord& w);

struct Reduction {
    Relation relation;
    StarContext context;
};

// Rewriting engine for the relation set S over a fixed presentation
// (oracle + weight). Rule kinds can be masked for the identity suites that
// rewrite with a single family.
class Engine {
public:
    struct Rules {
        bool comm = true;
        bool rb = true;
        bool long9 = true;
        bool long_degenerate_only = false;  // only R(x_{b,r}) -> x_{b,r+1}
        bool long_derived = true;           // completion rules beyond the printed family
        bool perturb_rb = false;            // negative control: weight+1 in the ab term of (8)
    };

    explicit Engine(std::shared_ptr<const BracketOracle> oracle);
    Engine(std::shared_ptr<const BracketOracle> oracle, Rules rules);

    const BracketOracle& oracle() const { return *oracle_; }
    const Rational& weight() const { return oracle_->weight(); }
    const GenNames& names() const { return oracle_->names(); }
    const Rules& rules() const { return rules_; }

    Relation make_comm(Letter x, Letter y) const;  // requires x > y
    Relation make_rb(const RBWord& a, const RBWord& b) const;
    Relation make_long(const Pattern9& p) const;
    // Completion rule for a single R-letter word outside the printed
    // family, resolved from the critical pair of the RB relation with the
    // degenerate long relation at R(u)R(f~); nullopt when the instance
    // carries no information (the word stays irreducible).
    std::optional<Relation> derived_long(const RBWord& w) const;

    // Leftmost-outermost scan with priority comm > rb > long. Returns
    // nullopt iff w is in Irr(S).
    std::optional<Reduction> find_reduction(const RBWord& w) const;
    bool is_irreducible(const RBWord& w) const { return !find_reduction(w).has_value(); }

    // Every available redex (both long decompositions included).
    std::vector<Reduction> all_reductions(const RBWord& w) const;

    Element normal_form(const Element& e) const;
    Element normal_form_word(const RBWord& w) const;

    // Reduction with redexes chosen by rng; unmemoized, so different seeds
    // follow genuinely different strategies.
    Element random_normal_form(const Element& e, std::mt19937_64& rng) const;

    // Total count of word reductions applied (memoized words count once).
    std::size_t reduction_steps() const { return steps_.load(); }

private:
    std::optional<Reduction> scan(const std::vector<Atom>& atoms,
                                  std::vector<StarContext::Frame>& enclosing) const;
    void scan_all(const std::vector<Atom>& atoms, std::vector<StarContext::Frame>& enclosing,
                  std::vector<Reduction>& out) const;
    Element rewrite_once(const RBWord& w, const Reduction& r) const;
    Element random_nf_word(const RBWord& w, std::mt19937_64& rng, int depth) const;

    std::optional<Reduction> scan_derived(const std::vector<Atom>& atoms,
                                          std::vector<StarContext::Frame>& enclosing) const;
    std::optional<Element> derived_delta(const RBWord& w) const;

    std::shared_ptr<const BracketOracle> oracle_;
    Rules rules_;
    mutable std::unordered_map<RBWord, Element, RBWordHash> memo_;
    mutable std::mutex memo_mutex_;
    mutable std::atomic<std::size_t> steps_{0};
    // completion-rule cache; nullopt marks words whose derivation is void
    mutable std::unordered_map<RBWord, std::optional<Element>, RBWordHash> derived_;
    mutable std::unordered_map<RBWord, int, RBWordHash> in_progress_;
    mutable std::mutex derived_mutex_;
    mutable std::atomic<int> guard_depth_{0};
};

// ---- compositions --------------------------------------------------------

// Enumeration bounds for ambiguity words: total atom count through nesting,
// total R-degree, maximum letter level, and the generator count.
struct CompositionBounds {
    int max_size = 5;
    int max_rdeg = 2;
    std::uint32_t max_level = 3;
    std::size_t gen_count = 2;
};

struct Composition {
    enum class Kind { intersection, inclusion };
    Kind kind;
    Relation f, g;
    RBWord word;          // the ambiguity word
    StarContext context;  // inclusion: q with substitute(q, g.leading) == f.leading
    Element residual;     // f mu - nu g, or f - q|_g
};

// All words with total size <= max_size, deg_R <= max_rdeg and letter
// levels <= max_level, in a fixed deterministic order.
std::vector<RBWord> enumerate_words(const CompositionBounds& b, int max_size, int max_rdeg);

// All compositions of intersection and inclusion among instances of S whose
// ambiguity word fits the bounds.
std::vector<Composition> enumerate_compositions(const Engine& engine,
                                                const CompositionBounds& b);

struct CompositionCheck {
    Element normal_form;
    std::size_t steps = 0;
    bool trivial() const { return normal_form.is_zero(); }
};

CompositionCheck check_composition(const Engine& engine, const Composition& c);

// The explicit left-hand side of the long formula minus the Delta built by
// eq5_delta, rewritten using only the commutator relation, the RB relation
// and the degenerate long relation. Zero certifies that the Delta builder
// matches the derivation of the formula.
Element eq5_consistency_defect(const DeltaSlots& slots,
                               std::shared_ptr<const BracketOracle> oracle);

}  // namespace rbgs
