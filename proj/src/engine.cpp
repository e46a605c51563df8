#include "rbgs/engine.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace rbgs {

// ---- Pattern9 ------------------------------------------------------------

bool Pattern9::degenerate() const {
    bool vec_empty = vecs.empty() || (vecs.size() == 1 && vecs[0].empty());
    return !lead_flank && !trail_flank && interior.empty() && vec_empty && k == 0;
}

RBWord Pattern9::leading_word() const {
    std::vector<Atom> content;
    if (lead_flank) content.push_back(Atom::bracket(*lead_flank));
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        for (Letter x : vecs[i]) content.push_back(Atom::letter(x));
        if (i < interior.size()) content.push_back(Atom::bracket(interior[i]));
    }
    content.push_back(Atom::letter(beta));
    for (unsigned i = 0; i < k; ++i) content.push_back(Atom::letter(beta.up()));
    if (trail_flank) content.push_back(Atom::bracket(*trail_flank));
    return word_of({Atom::bracket(RBWord(std::move(content)))});
}

DeltaSlots Pattern9::slots() const {
    DeltaSlots s;
    if (lead_flank) s.lead = Element::word(*lead_flank);
    s.vecs = vecs;
    for (const RBWord& z : interior) s.interior.push_back(Element::word(z));
    s.beta = beta;
    s.k = k;
    if (trail_flank) s.trail = Element::word(*trail_flank);
    return s;
}

namespace {

struct ContentParse {
    std::optional<RBWord> lead;
    std::vector<std::vector<Letter>> runs;  // all nonempty except possibly none; last run nonempty
    std::vector<RBWord> interior;
    std::optional<RBWord> trail;
};

// Splits an R-letter content into flanks, letter runs and interior
// R-letters; fails on adjacent R-letters or a missing final run.
std::optional<ContentParse> parse_content(const RBWord& content) {
    ContentParse p;
    const auto& atoms = content.atoms();
    std::vector<Letter> run;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (atoms[i].is_letter()) {
            run.push_back(atoms[i].as_letter());
            continue;
        }
        if (i == 0) {
            p.lead = atoms[i].content();
            continue;
        }
        if (run.empty()) return std::nullopt;  // adjacent R-letters
        if (i + 1 == atoms.size()) {
            p.runs.push_back(std::move(run));
            p.trail = atoms[i].content();
            run.clear();
        } else {
            p.runs.push_back(std::move(run));
            p.interior.push_back(atoms[i].content());
            run.clear();
        }
    }
    if (!run.empty()) p.runs.push_back(std::move(run));
    if (p.runs.empty() || p.runs.size() != p.interior.size() + 1) return std::nullopt;
    return p;
}

bool z_admissible(const RBWord& z) { return z.deg_r() >= 1; }

// beta may equal a run letter: with a strict comparison the critical pair
// of the RB relation with the degenerate long relation at R(x_{a,0})R(x_{a,1})
// leaves the nonzero residual x_{a,1}x_{a,2} - R(x_{a,1}x_{a,1}) - R(x_{a,0}x_{a,2})
// over irreducible words, so the basis theorem forces the weak inequality.
bool vec_admissible(const std::vector<Letter>& vec, Letter beta) {
    for (Letter x : vec) {
        if (x.level < 1) return false;
        if (beta < x) return false;
    }
    return true;
}

std::optional<Pattern9> assemble(const ContentParse& p, std::size_t beta_pos) {
    const std::vector<Letter>& last = p.runs.back();
    Letter beta = last[beta_pos];
    unsigned k = static_cast<unsigned>(last.size() - 1 - beta_pos);
    std::vector<Letter> vec(last.begin(), last.begin() + beta_pos);
    if (!vec_admissible(vec, beta)) return std::nullopt;
    for (std::size_t i = 0; i + 1 < p.runs.size(); ++i) {
        for (Letter x : p.runs[i])
            if (x.level < 1) return std::nullopt;
    }
    if (p.lead && !z_admissible(*p.lead)) return std::nullopt;
    if (p.trail && !z_admissible(*p.trail)) return std::nullopt;
    for (const RBWord& z : p.interior)
        if (!z_admissible(z)) return std::nullopt;

    Pattern9 out;
    out.lead_flank = p.lead;
    out.vecs.assign(p.runs.begin(), p.runs.end() - 1);
    out.vecs.push_back(std::move(vec));
    out.interior = p.interior;
    out.beta = beta;
    out.k = k;
    out.trail_flank = p.trail;
    return out;
}

std::vector<Pattern9> matches9_content(const RBWord& content) {
    std::vector<Pattern9> out;
    auto parsed = parse_content(content);
    if (!parsed) return out;
    const std::vector<Letter>& last = parsed->runs.back();
    const std::size_t m = last.size();

    // maximal trailing equal-letter run
    std::size_t j = 1;
    while (j < m && last[m - 1 - j] == last[m - 1]) ++j;

    // candidate with maximal k: the run is x_{b,r+1}^j and its level
    // predecessor sits immediately before
    if (j < m && last[m - 1].level >= 1 && last[m - 1 - j] == last[m - 1].down()) {
        if (auto pat = assemble(*parsed, m - 1 - j)) out.push_back(std::move(*pat));
    }
    // candidate with k = 0: the run's last letter is x_{b,r}
    if (auto pat = assemble(*parsed, m - 1)) out.push_back(std::move(*pat));
    return out;
}

bool single_r_letter(const RBWord& w) {
    return w.breadth() == 1 && w.atoms()[0].is_bracket();
}

}  // namespace

std::optional<Pattern9> match9(const RBWord& w) {
    if (!single_r_letter(w)) return std::nullopt;
    auto all = matches9_content(w.atoms()[0].content());
    if (all.empty()) return std::nullopt;
    return all.front();
}

std::vector<Pattern9> all_matches9(const RBWord& w) {
    if (!single_r_letter(w)) return {};
    return matches9_content(w.atoms()[0].content());
}

// ---- Engine --------------------------------------------------------------

Engine::Engine(std::shared_ptr<const BracketOracle> oracle)
    : Engine(std::move(oracle), Rules{}) {}

Engine::Engine(std::shared_ptr<const BracketOracle> oracle, Rules rules)
    : oracle_(std::move(oracle)), rules_(rules) {}

Relation Engine::make_comm(Letter x, Letter y) const {
    if (!(x > y)) throw std::invalid_argument("make_comm: requires x > y");
    Element e = Element::word(word_of_letters({x, y}));
    e -= Element::word(word_of_letters({y, x}));
    e -= oracle_->bracket(x, y);
    Relation r{RelKind::comm, std::move(e), word_of_letters({x, y}),
               "comm(" + to_string(x, names()) + ", " + to_string(y, names()) + ")"};
    assert(leading(r.element).first == r.leading);
    return r;
}

Relation Engine::make_rb(const RBWord& a, const RBWord& b) const {
    Element ea = Element::word(a), eb = Element::word(b);
    Element inner = multiply(apply_r(ea), eb);
    inner += multiply(ea, apply_r(eb));
    Rational lam = weight();
    if (rules_.perturb_rb) lam += 1;
    inner += lam * multiply(ea, eb);
    RBWord lead = word_of({Atom::bracket(a), Atom::bracket(b)});
    Element e = Element::word(lead) - apply_r(inner);
    Relation r{RelKind::rb, std::move(e), lead,
               "rb(" + to_string(a, names()) + " | " + to_string(b, names()) + ")"};
    assert(leading(r.element).first == r.leading);
    return r;
}

Relation Engine::make_long(const Pattern9& p) const {
    RBWord lead = p.leading_word();
    Element e = Element::word(lead) - eq5_delta(p.slots(), weight(), *oracle_);
    Relation r{RelKind::long9, std::move(e), lead, "long(" + to_string(lead, names()) + ")"};
    assert(leading(r.element).first == r.leading);
    return r;
}

std::optional<Element> Engine::derived_delta(const RBWord& w) const {
    if (!single_r_letter(w)) return std::nullopt;
    const RBWord& content = w.atoms()[0].content();
    if (content.breadth() < 2) return std::nullopt;
    const Atom& last_atom = content.atoms().back();
    if (!last_atom.is_letter() || last_atom.as_letter().level < 1) return std::nullopt;
    if (match9(w)) return std::nullopt;  // the printed family already covers it

    bool outermost = false;
    {
        std::lock_guard<std::mutex> lock(derived_mutex_);
        if (auto it = derived_.find(w); it != derived_.end()) return it->second;
        if (in_progress_.count(w)) return std::nullopt;  // re-entrant: hold the word fixed
        outermost = in_progress_.empty();
        in_progress_.emplace(w, 1);
    }

    // Resolve the critical pair of the RB relation with the degenerate long
    // relation at R(u)R(f~), where the content is u.f and R(f~) = f:
    //   R(u.f) = nf(R(u) f) - nf(R(R(u) f~)) - lambda nf(R(u f~)).
    // Occurrences of w itself survive normalization (guarded) and are
    // solved for afterwards; a unit coefficient means the pair carries no
    // rule and the word stays irreducible.
    std::optional<Element> result;
    guard_depth_.fetch_add(1);
    try {
        Letter f = last_atom.as_letter();
        std::vector<Atom> u_atoms(content.atoms().begin(), content.atoms().end() - 1);
        RBWord u(std::move(u_atoms));
        Atom ru = Atom::bracket(u);
        Rational lam = weight();
        if (rules_.perturb_rb) lam += 1;

        Element t1 = normal_form(Element::word(word_of({ru, Atom::letter(f)})));
        Element t2 = normal_form(
            Element::word(word_of({Atom::bracket(word_of({ru, Atom::letter(f.down())}))})));
        Element t3 = normal_form(
            Element::word(word_of({Atom::bracket(concat(u, word_of_letters({f.down()})))})));
        Element delta = t1 - t2 - lam * t3;

        Rational c = delta.coeff(w);
        if (c == 1) {
            if ((delta - Element::word(w)).is_zero()) result = std::nullopt;  // void
            else result = std::nullopt;  // unresolved here; compositions will flag it
        } else {
            if (c != 0) {
                delta -= c * Element::word(w);
                delta *= Rational(1) / (Rational(1) - c);
            }
            bool ordered = true;
            for (const auto& [v, coeff] : delta.terms())
                if (compare(v, w) != std::strong_ordering::less) ordered = false;
            result = ordered ? std::optional<Element>(std::move(delta)) : std::nullopt;
        }
    } catch (...) {
        guard_depth_.fetch_sub(1);
        std::lock_guard<std::mutex> lock(derived_mutex_);
        in_progress_.erase(w);
        throw;
    }
    guard_depth_.fetch_sub(1);

    std::lock_guard<std::mutex> lock(derived_mutex_);
    in_progress_.erase(w);
    // nested verdicts can depend on words held fixed further up the stack;
    // only the outermost construction is safe to cache
    if (outermost) derived_.emplace(w, result);
    return result;
}

std::optional<Relation> Engine::derived_long(const RBWord& w) const {
    auto delta = derived_delta(w);
    if (!delta) return std::nullopt;
    Element e = Element::word(w) - *delta;
    return Relation{RelKind::long9, std::move(e), w, "long~(" + to_string(w, names()) + ")"};
}

namespace {

StarContext window_context(const std::vector<StarContext::Frame>& enclosing,
                           const std::vector<Atom>& atoms, std::size_t i, std::size_t len) {
    std::vector<StarContext::Frame> frames = enclosing;
    StarContext::Frame inner;
    inner.prefix.assign(atoms.begin(), atoms.begin() + i);
    inner.suffix.assign(atoms.begin() + i + len, atoms.end());
    frames.push_back(std::move(inner));
    return StarContext(std::move(frames));
}

}  // namespace

std::optional<Reduction> Engine::scan(const std::vector<Atom>& atoms,
                                      std::vector<StarContext::Frame>& enclosing) const {
    const std::size_t n = atoms.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i + 1 < n) {
            if (rules_.comm && atoms[i].is_letter() && atoms[i + 1].is_letter() &&
                atoms[i].as_letter() > atoms[i + 1].as_letter()) {
                return Reduction{make_comm(atoms[i].as_letter(), atoms[i + 1].as_letter()),
                                 window_context(enclosing, atoms, i, 2)};
            }
            if (rules_.rb && atoms[i].is_bracket() && atoms[i + 1].is_bracket()) {
                return Reduction{make_rb(atoms[i].content(), atoms[i + 1].content()),
                                 window_context(enclosing, atoms, i, 2)};
            }
        }
        if (rules_.long9 && atoms[i].is_bracket()) {
            const RBWord& content = atoms[i].content();
            if (rules_.long_degenerate_only) {
                if (content.breadth() == 1 && content.atoms()[0].is_letter()) {
                    Pattern9 p;
                    p.beta = content.atoms()[0].as_letter();
                    return Reduction{make_long(p), window_context(enclosing, atoms, i, 1)};
                }
            } else if (auto p = match9(word_of({atoms[i]}))) {
                return Reduction{make_long(*p), window_context(enclosing, atoms, i, 1)};
            }
        }
        if (atoms[i].is_bracket()) {
            StarContext::Frame frame;
            frame.prefix.assign(atoms.begin(), atoms.begin() + i);
            frame.suffix.assign(atoms.begin() + i + 1, atoms.end());
            enclosing.push_back(std::move(frame));
            auto found = scan(atoms[i].content().atoms(), enclosing);
            enclosing.pop_back();
            if (found) return found;
        }
    }
    return std::nullopt;
}

std::optional<Reduction> Engine::find_reduction(const RBWord& w) const {
    std::vector<StarContext::Frame> enclosing;
    if (auto r = scan(w.atoms(), enclosing)) return r;
    if (rules_.long9 && rules_.long_derived && !rules_.long_degenerate_only) {
        enclosing.clear();
        return scan_derived(w.atoms(), enclosing);
    }
    return std::nullopt;
}

std::optional<Reduction> Engine::scan_derived(const std::vector<Atom>& atoms,
                                              std::vector<StarContext::Frame>& enclosing) const {
    const std::size_t n = atoms.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!atoms[i].is_bracket()) continue;
        if (auto rel = derived_long(word_of({atoms[i]})))
            return Reduction{*std::move(rel), window_context(enclosing, atoms, i, 1)};
        StarContext::Frame frame;
        frame.prefix.assign(atoms.begin(), atoms.begin() + i);
        frame.suffix.assign(atoms.begin() + i + 1, atoms.end());
        enclosing.push_back(std::move(frame));
        auto found = scan_derived(atoms[i].content().atoms(), enclosing);
        enclosing.pop_back();
        if (found) return found;
    }
    return std::nullopt;
}

void Engine::scan_all(const std::vector<Atom>& atoms, std::vector<StarContext::Frame>& enclosing,
                      std::vector<Reduction>& out) const {
    const std::size_t n = atoms.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i + 1 < n) {
            if (rules_.comm && atoms[i].is_letter() && atoms[i + 1].is_letter() &&
                atoms[i].as_letter() > atoms[i + 1].as_letter())
                out.push_back(Reduction{make_comm(atoms[i].as_letter(), atoms[i + 1].as_letter()),
                                        window_context(enclosing, atoms, i, 2)});
            if (rules_.rb && atoms[i].is_bracket() && atoms[i + 1].is_bracket())
                out.push_back(Reduction{make_rb(atoms[i].content(), atoms[i + 1].content()),
                                        window_context(enclosing, atoms, i, 2)});
        }
        if (rules_.long9 && atoms[i].is_bracket()) {
            const RBWord& content = atoms[i].content();
            if (rules_.long_degenerate_only) {
                if (content.breadth() == 1 && content.atoms()[0].is_letter()) {
                    Pattern9 p;
                    p.beta = content.atoms()[0].as_letter();
                    out.push_back(Reduction{make_long(p), window_context(enclosing, atoms, i, 1)});
                }
            } else {
                for (const Pattern9& p : all_matches9(word_of({atoms[i]})))
                    out.push_back(Reduction{make_long(p), window_context(enclosing, atoms, i, 1)});
                if (rules_.long_derived) {
                    if (auto rel = derived_long(word_of({atoms[i]})))
                        out.push_back(Reduction{*std::move(rel),
                                                window_context(enclosing, atoms, i, 1)});
                }
            }
        }
        if (atoms[i].is_bracket()) {
            StarContext::Frame frame;
            frame.prefix.assign(atoms.begin(), atoms.begin() + i);
            frame.suffix.assign(atoms.begin() + i + 1, atoms.end());
            enclosing.push_back(std::move(frame));
            scan_all(atoms[i].content().atoms(), enclosing, out);
            enclosing.pop_back();
        }
    }
}

std::vector<Reduction> Engine::all_reductions(const RBWord& w) const {
    std::vector<Reduction> out;
    std::vector<StarContext::Frame> enclosing;
    scan_all(w.atoms(), enclosing, out);
    return out;
}

Element Engine::rewrite_once(const RBWord& w, const Reduction& r) const {
    // w = q|_{lead} rewrites to q|_{lead - element}
    Element rest = r.relation.element - Element::word(r.relation.leading);
    (void)w;
    return -substitute(r.context, rest);
}

Element Engine::normal_form_word(const RBWord& w) const {
    {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    }
    Element result;
    auto r = find_reduction(w);
    if (!r) {
        result = Element::word(w);
    } else {
        steps_.fetch_add(1, std::memory_order_relaxed);
        Element replaced = rewrite_once(w, *r);
        for (const auto& [v, c] : replaced.terms()) result += c * normal_form_word(v);
    }
    // while a derived rule is under construction some words are held fixed,
    // so normal forms computed now may be provisional
    if (guard_depth_.load() == 0) {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        memo_.emplace(w, result);
    }
    return result;
}

Element Engine::normal_form(const Element& e) const {
    Element out;
    for (const auto& [w, c] : e.terms()) out += c * normal_form_word(w);
    return out;
}

Element Engine::random_nf_word(const RBWord& w, std::mt19937_64& rng, int depth) const {
    if (depth > 100000) throw std::runtime_error("random_normal_form: depth limit");
    std::vector<Reduction> rs = all_reductions(w);
    if (rs.empty()) return Element::word(w);
    std::uniform_int_distribution<std::size_t> pick(0, rs.size() - 1);
    Element replaced = rewrite_once(w, rs[pick(rng)]);
    Element out;
    for (const auto& [v, c] : replaced.terms()) out += c * random_nf_word(v, rng, depth + 1);
    return out;
}

Element Engine::random_normal_form(const Element& e, std::mt19937_64& rng) const {
    Element out;
    for (const auto& [w, c] : e.terms()) out += c * random_nf_word(w, rng, 0);
    return out;
}

// ---- word enumeration ----------------------------------------------------

namespace {

struct WordTable {
    // words_by[s][d]: all words with size exactly s and deg_R exactly d
    std::vector<std::vector<std::vector<RBWord>>> words;
    std::vector<std::vector<std::vector<Atom>>> atoms;
};

WordTable build_words(const CompositionBounds& b, int max_size, int max_rdeg) {
    WordTable t;
    t.words.assign(max_size + 1, std::vector<std::vector<RBWord>>(max_rdeg + 1));
    t.atoms.assign(max_size + 1, std::vector<std::vector<Atom>>(max_rdeg + 1));

    for (int s = 1; s <= max_size; ++s) {
        for (int d = 0; d <= max_rdeg; ++d) {
            // atoms of size s, deg d
            if (s == 1 && d == 0) {
                for (std::uint32_t g = 0; g < b.gen_count; ++g)
                    for (std::uint32_t lv = 0; lv <= b.max_level; ++lv)
                        t.atoms[s][d].push_back(Atom::letter(Letter{g, lv}));
            } else if (s >= 2 && d >= 1) {
                for (const RBWord& c : t.words[s - 1][d - 1])
                    t.atoms[s][d].push_back(Atom::bracket(c));
            }
            // words: a single atom, or an atom followed by a shorter word
            for (const Atom& a : t.atoms[s][d]) t.words[s][d].push_back(word_of({a}));
            for (int s1 = 1; s1 < s; ++s1)
                for (int d1 = 0; d1 <= d; ++d1)
                    for (const Atom& a : t.atoms[s1][d1])
                        for (const RBWord& rest : t.words[s - s1][d - d1]) {
                            std::vector<Atom> atoms{a};
                            atoms.insert(atoms.end(), rest.atoms().begin(), rest.atoms().end());
                            t.words[s][d].push_back(RBWord(std::move(atoms)));
                        }
        }
    }
    return t;
}

}  // namespace

std::vector<RBWord> enumerate_words(const CompositionBounds& b, int max_size, int max_rdeg) {
    std::vector<RBWord> out;
    if (max_size < 1) return out;
    WordTable t = build_words(b, max_size, std::max(0, max_rdeg));
    for (int s = 1; s <= max_size; ++s)
        for (int d = 0; d <= std::max(0, max_rdeg); ++d)
            for (const RBWord& w : t.words[s][d]) out.push_back(w);
    return out;
}

// ---- composition enumeration ----------------------------------------------

namespace {

// Contiguous windows of length 1 and 2 at every depth, with their contexts.
void scan_windows(const std::vector<Atom>& atoms, std::vector<StarContext::Frame>& enclosing,
                  std::vector<std::pair<StarContext, std::vector<Atom>>>& out) {
    const std::size_t n = atoms.size();
    for (std::size_t i = 0; i < n; ++i) {
        out.emplace_back(window_context(enclosing, atoms, i, 1), std::vector<Atom>{atoms[i]});
        if (i + 1 < n)
            out.emplace_back(window_context(enclosing, atoms, i, 2),
                             std::vector<Atom>{atoms[i], atoms[i + 1]});
        if (atoms[i].is_bracket()) {
            StarContext::Frame frame;
            frame.prefix.assign(atoms.begin(), atoms.begin() + i);
            frame.suffix.assign(atoms.begin() + i + 1, atoms.end());
            enclosing.push_back(std::move(frame));
            scan_windows(atoms[i].content().atoms(), enclosing, out);
            enclosing.pop_back();
        }
    }
}

bool within_bounds(const RBWord& w, const CompositionBounds& b) {
    return w.size() <= b.max_size && w.deg_r() <= b.max_rdeg && w.max_level() <= b.max_level;
}

}  // namespace

std::vector<Composition> enumerate_compositions(const Engine& engine,
                                                const CompositionBounds& b) {
    std::vector<Composition> out;

    std::vector<Letter> letters;
    for (std::uint32_t g = 0; g < b.gen_count; ++g)
        for (std::uint32_t lv = 0; lv <= b.max_level; ++lv) letters.push_back(Letter{g, lv});

    // -- intersections: comm with comm at w = xyz, x > y > z
    for (Letter x : letters)
        for (Letter y : letters) {
            if (!(x > y)) continue;
            for (Letter z : letters) {
                if (!(y > z)) continue;
                RBWord w = word_of_letters({x, y, z});
                if (!within_bounds(w, b)) continue;
                Relation f = engine.make_comm(x, y);
                Relation g = engine.make_comm(y, z);
                Element residual = multiply(f.element, word_of_letters({z}));
                residual -= multiply(word_of_letters({x}), g.element);
                out.push_back(Composition{Composition::Kind::intersection, std::move(f),
                                          std::move(g), w, StarContext(), std::move(residual)});
            }
        }

    // -- intersections: rb with rb at w = R(a)R(b)R(c)
    {
        // three R atoms and two other nonempty contents cap each content size
        int content_budget = b.max_size - 5;
        if (content_budget >= 1 && b.max_rdeg >= 3) {
            std::vector<RBWord> contents = enumerate_words(b, content_budget, b.max_rdeg - 3);
            for (const RBWord& a : contents)
                for (const RBWord& bb : contents)
                    for (const RBWord& c : contents) {
                        int size = 3 + a.size() + bb.size() + c.size();
                        int rdeg = 3 + a.deg_r() + bb.deg_r() + c.deg_r();
                        if (size > b.max_size || rdeg > b.max_rdeg) continue;
                        RBWord w = word_of(
                            {Atom::bracket(a), Atom::bracket(bb), Atom::bracket(c)});
                        Relation f = engine.make_rb(a, bb);
                        Relation g = engine.make_rb(bb, c);
                        Element residual =
                            multiply(f.element, word_of({Atom::bracket(c)}));
                        residual -= multiply(word_of({Atom::bracket(a)}), g.element);
                        out.push_back(Composition{Composition::Kind::intersection, std::move(f),
                                                  std::move(g), w, StarContext(),
                                                  std::move(residual)});
                    }
        }
    }

    // -- inclusions: scan the leading word of every rb and long instance
    std::vector<Relation> hosts;
    {
        // rb instances R(a)R(b) within bounds
        if (b.max_rdeg >= 2 && b.max_size >= 4) {
            std::vector<RBWord> contents = enumerate_words(b, b.max_size - 3, b.max_rdeg - 2);
            for (const RBWord& a : contents)
                for (const RBWord& bb : contents) {
                    int size = 2 + a.size() + bb.size();
                    int rdeg = 2 + a.deg_r() + bb.deg_r();
                    if (size > b.max_size || rdeg > b.max_rdeg) continue;
                    hosts.push_back(engine.make_rb(a, bb));
                }
        }
        // long instances R(c) within bounds
        if (b.max_rdeg >= 1 && b.max_size >= 2) {
            std::vector<RBWord> contents = enumerate_words(b, b.max_size - 1, b.max_rdeg - 1);
            for (const RBWord& c : contents) {
                RBWord w = word_of({Atom::bracket(c)});
                if (!within_bounds(w, b)) continue;
                for (const Pattern9& p : all_matches9(w)) hosts.push_back(engine.make_long(p));
                if (auto rel = engine.derived_long(w)) hosts.push_back(*std::move(rel));
            }
        }
    }

    for (const Relation& f : hosts) {
        std::vector<std::pair<StarContext, std::vector<Atom>>> windows;
        std::vector<StarContext::Frame> enclosing;
        scan_windows(f.leading.atoms(), enclosing, windows);
        for (auto& [q, window] : windows) {
            std::vector<Relation> gs;
            if (window.size() == 2 && window[0].is_letter() && window[1].is_letter()) {
                if (window[0].as_letter() > window[1].as_letter())
                    gs.push_back(engine.make_comm(window[0].as_letter(), window[1].as_letter()));
            } else if (window.size() == 2 && window[0].is_bracket() && window[1].is_bracket()) {
                gs.push_back(engine.make_rb(window[0].content(), window[1].content()));
            } else if (window.size() == 1 && window[0].is_bracket()) {
                RBWord atom_word = word_of({window[0]});
                for (const Pattern9& p : all_matches9(atom_word))
                    gs.push_back(engine.make_long(p));
                if (auto rel = engine.derived_long(atom_word)) gs.push_back(*std::move(rel));
            }
            for (Relation& g : gs) {
                if (q.is_star_only() && f.element == g.element) continue;  // f = g
                Element residual = f.element - substitute(q, g.element);
                out.push_back(Composition{Composition::Kind::inclusion, f, std::move(g),
                                          f.leading, q, std::move(residual)});
            }
        }
    }
    return out;
}

CompositionCheck check_composition(const Engine& engine, const Composition& c) {
    std::size_t before = engine.reduction_steps();
    Element nf = engine.normal_form(c.residual);
    return CompositionCheck{std::move(nf), engine.reduction_steps() - before};
}

Element eq5_consistency_defect(const DeltaSlots& slots,
                               std::shared_ptr<const BracketOracle> oracle) {
    const Rational& lambda = oracle->weight();

    // (k+1)(LHS - Delta_explicit) must equal -eq4 exactly: this pins the hat
    // index sets, signs and binomials against the independently built eq4
    // element. eq4 itself rewrites to zero under the RB relation, so the
    // whole piece lies in the ideal of the RB relation.
    Element explicit_delta = eq5_delta_explicit_free(slots, lambda);
    Element exact = Rational(Integer(slots.k + 1)) *
                    (eq5_lhs_explicit(slots) - explicit_delta);
    exact += eq4_element(eq5_b_list(slots), lambda);

    // The bridge from the explicit spelling to the shipped Delta closes
    // under the commutator and degenerate long relations alone.
    Engine::Rules rules;
    rules.rb = false;
    rules.long_degenerate_only = true;
    Engine restricted(oracle, rules);
    Element bridge =
        restricted.normal_form(explicit_delta - eq5_delta(slots, lambda, *oracle));

    return exact + bridge;
}

}  // namespace rbgs
