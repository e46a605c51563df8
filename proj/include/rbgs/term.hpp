#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace rbgs {

// A basis symbol x_{gen,level} = P^level(x_gen) of the Lie RB-algebra L.
// gen indexes the ordered finite generator set Omega, level counts the
// applications of the operator P.
struct Letter {
    std::uint32_t gen = 0;
    std::uint32_t level = 0;

    friend std::strong_ordering operator<=>(const Letter&, const Letter&) = default;

    // x one level down / up: P^(level-1)(gen), P^(level+1)(gen).
    Letter down() const { return Letter{gen, level - 1}; }
    Letter up() const { return Letter{gen, level + 1}; }
};

class RBWord;
using RBWordPtr = std::shared_ptr<const RBWord>;

// One symbol of the alphabet X_inf: a letter, or an R-letter R(w).
class Atom {
public:
    static Atom letter(Letter l) { return Atom(l, nullptr); }
    static Atom bracket(RBWord content);
    static Atom bracket(RBWordPtr content);

    bool is_letter() const { return content_ == nullptr; }
    bool is_bracket() const { return content_ != nullptr; }
    Letter as_letter() const { return letter_; }
    const RBWord& content() const { return *content_; }
    RBWordPtr content_ptr() const { return content_; }

    int deg_r() const;
    int size() const;  // total atom count through nesting (a letter is 1)

    friend bool operator==(const Atom&, const Atom&);

private:
    Atom(Letter l, RBWordPtr c) : letter_(l), content_(std::move(c)) {}
    Letter letter_{};
    RBWordPtr content_;
};

// A nonempty word over X_inf: the monomial type of the free operated
// algebra RAs<X>. Juxtaposition is free; adjacent R-letters are legal
// (relation (8) removes them from normal forms, not from the grammar).
class RBWord {
public:
    explicit RBWord(std::vector<Atom> atoms);

    const std::vector<Atom>& atoms() const { return atoms_; }
    int breadth() const { return static_cast<int>(atoms_.size()); }
    int deg_r() const { return deg_r_; }
    int size() const { return size_; }
    std::size_t hash() const { return hash_; }
    std::uint32_t max_level() const { return max_level_; }

    friend bool operator==(const RBWord&, const RBWord&);

private:
    std::vector<Atom> atoms_;
    int deg_r_ = 0;
    int size_ = 0;
    std::uint32_t max_level_ = 0;
    std::size_t hash_ = 0;
};

struct RBWordHash {
    std::size_t operator()(const RBWord& w) const { return w.hash(); }
};

RBWord word_of(std::initializer_list<Atom> atoms);
RBWord word_of_letters(std::initializer_list<Letter> letters);
RBWord concat(const RBWord& a, const RBWord& b);

// deg_R: total number of R symbols at all depths.
inline int deg_r(const RBWord& w) { return w.deg_r(); }
// breadth: length of the word over X_inf (an R-letter counts 1).
inline int breadth(const RBWord& w) { return w.breadth(); }

// The monomial order: deg_R first, then breadth, then left-to-right
// lexicographic over X_inf where every letter is below every R-letter,
// letters compare by (gen, level) and R(a) < R(b) iff a < b.
std::strong_ordering compare(const RBWord& u, const RBWord& v);
std::strong_ordering compare(const Atom& a, const Atom& b);

struct WordLess {
    bool operator()(const RBWord& a, const RBWord& b) const {
        return compare(a, b) == std::strong_ordering::less;
    }
};
struct WordGreater {
    bool operator()(const RBWord& a, const RBWord& b) const {
        return compare(a, b) == std::strong_ordering::greater;
    }
};

// A word with exactly one occurrence of the placeholder star, possibly
// nested inside R-brackets. Substitution splices a word into the hole.
class StarContext {
public:
    struct Frame {
        std::vector<Atom> prefix;
        std::vector<Atom> suffix;
    };

    // The trivial context "*".
    StarContext() : frames_(1) {}
    explicit StarContext(std::vector<Frame> frames) : frames_(std::move(frames)) {}

    const std::vector<Frame>& frames() const { return frames_; }
    bool is_star_only() const;
    // Nesting depth of the star (0 = star at top level).
    int depth() const { return static_cast<int>(frames_.size()) - 1; }

    // Context with the star wrapped one bracket deeper: q -> q|_{R(pre * suf)}.
    StarContext descend(std::vector<Atom> prefix, std::vector<Atom> suffix) const;

    friend bool operator==(const StarContext&, const StarContext&);

private:
    std::vector<Frame> frames_;  // outermost first; star sits in the last frame
};

// q|_u: replace the star by u, preserving all surrounding structure.
RBWord substitute(const StarContext& q, const RBWord& u);

// All q with substitute(q, t) == w, in deterministic pre-order
// (left to right, outside before inside).
std::vector<StarContext> occurrences(const RBWord& w, const RBWord& t);

// ---- rendering ----------------------------------------------------------

// Generator display names; falls back to a, b, c, ... then g<i>.
struct GenNames {
    std::vector<std::string> names;
    std::string name(std::uint32_t gen) const;
};

// Canonical text: letters as g / P^k(g), R-brackets as R(...), atoms
// space-separated. Injective on words; used as the stable sort key.
std::string to_string(const Letter& l, const GenNames& names);
std::string to_string(const Atom& a, const GenNames& names);
std::string to_string(const RBWord& w, const GenNames& names);
std::string to_string(const StarContext& q, const GenNames& names);

}  // namespace rbgs
