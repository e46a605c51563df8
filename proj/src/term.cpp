#include "rbgs/term.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace rbgs {

Atom Atom::bracket(RBWord content) {
    return Atom(Letter{}, std::make_shared<const RBWord>(std::move(content)));
}

Atom Atom::bracket(RBWordPtr content) {
    assert(content && content->breadth() > 0);
    return Atom(Letter{}, std::move(content));
}

int Atom::deg_r() const { return is_letter() ? 0 : 1 + content_->deg_r(); }
int Atom::size() const { return is_letter() ? 1 : 1 + content_->size(); }

bool operator==(const Atom& a, const Atom& b) {
    if (a.is_letter() != b.is_letter()) return false;
    if (a.is_letter()) return a.letter_ == b.letter_;
    if (a.content_ == b.content_) return true;
    return *a.content_ == *b.content_;
}

namespace {
std::size_t mix(std::size_t h, std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}
}  // namespace

RBWord::RBWord(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw std::invalid_argument("RBWord: empty word");
    std::size_t h = 0;
    for (const Atom& a : atoms_) {
        deg_r_ += a.deg_r();
        size_ += a.size();
        if (a.is_letter()) {
            max_level_ = std::max(max_level_, a.as_letter().level);
            h = mix(h, (std::size_t(a.as_letter().gen) << 32) | a.as_letter().level);
        } else {
            max_level_ = std::max(max_level_, a.content().max_level());
            h = mix(h, a.content().hash() * 0x100000001b3ULL + 7);
        }
    }
    hash_ = mix(h, atoms_.size());
}

bool operator==(const RBWord& u, const RBWord& v) {
    if (u.hash_ != v.hash_ || u.atoms_.size() != v.atoms_.size()) return false;
    return std::equal(u.atoms_.begin(), u.atoms_.end(), v.atoms_.begin());
}

RBWord word_of(std::initializer_list<Atom> atoms) {
    return RBWord(std::vector<Atom>(atoms));
}

RBWord word_of_letters(std::initializer_list<Letter> letters) {
    std::vector<Atom> atoms;
    atoms.reserve(letters.size());
    for (Letter l : letters) atoms.push_back(Atom::letter(l));
    return RBWord(std::move(atoms));
}

RBWord concat(const RBWord& a, const RBWord& b) {
    std::vector<Atom> atoms = a.atoms();
    atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
    return RBWord(std::move(atoms));
}

std::strong_ordering compare(const Atom& a, const Atom& b) {
    // every letter below every R-letter
    if (a.is_letter() != b.is_letter())
        return a.is_letter() ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.is_letter()) return a.as_letter() <=> b.as_letter();
    return compare(a.content(), b.content());
}

std::strong_ordering compare(const RBWord& u, const RBWord& v) {
    if (auto c = u.deg_r() <=> v.deg_r(); c != 0) return c;
    if (auto c = u.breadth() <=> v.breadth(); c != 0) return c;
    for (int i = 0; i < u.breadth(); ++i)
        if (auto c = compare(u.atoms()[i], v.atoms()[i]); c != 0) return c;
    return std::strong_ordering::equal;
}

bool StarContext::is_star_only() const {
    return frames_.size() == 1 && frames_[0].prefix.empty() && frames_[0].suffix.empty();
}

StarContext StarContext::descend(std::vector<Atom> prefix, std::vector<Atom> suffix) const {
    std::vector<Frame> frames = frames_;
    frames.push_back(Frame{std::move(prefix), std::move(suffix)});
    return StarContext(std::move(frames));
}

bool operator==(const StarContext& a, const StarContext& b) {
    if (a.frames_.size() != b.frames_.size()) return false;
    for (std::size_t i = 0; i < a.frames_.size(); ++i) {
        if (a.frames_[i].prefix != b.frames_[i].prefix) return false;
        if (a.frames_[i].suffix != b.frames_[i].suffix) return false;
    }
    return true;
}

RBWord substitute(const StarContext& q, const RBWord& u) {
    const auto& frames = q.frames();
    std::vector<Atom> current;
    {
        const auto& inner = frames.back();
        current = inner.prefix;
        current.insert(current.end(), u.atoms().begin(), u.atoms().end());
        current.insert(current.end(), inner.suffix.begin(), inner.suffix.end());
    }
    for (std::size_t i = frames.size() - 1; i-- > 0;) {
        Atom wrapped = Atom::bracket(RBWord(std::move(current)));
        current = frames[i].prefix;
        current.push_back(std::move(wrapped));
        current.insert(current.end(), frames[i].suffix.begin(), frames[i].suffix.end());
    }
    return RBWord(std::move(current));
}

namespace {

void collect_occurrences(const std::vector<Atom>& atoms, const RBWord& t,
                         std::vector<StarContext::Frame>& enclosing,
                         std::vector<StarContext>& out) {
    const int n = static_cast<int>(atoms.size());
    const int len = t.breadth();
    for (int i = 0; i < n; ++i) {
        // window starting at i (outer occurrence first)
        if (i + len <= n) {
            bool match = true;
            for (int j = 0; j < len && match; ++j) match = (atoms[i + j] == t.atoms()[j]);
            if (match) {
                std::vector<StarContext::Frame> frames = enclosing;
                StarContext::Frame inner;
                inner.prefix.assign(atoms.begin(), atoms.begin() + i);
                inner.suffix.assign(atoms.begin() + i + len, atoms.end());
                frames.push_back(std::move(inner));
                out.push_back(StarContext(std::move(frames)));
            }
        }
        // then inside atom i
        if (atoms[i].is_bracket()) {
            StarContext::Frame frame;
            frame.prefix.assign(atoms.begin(), atoms.begin() + i);
            frame.suffix.assign(atoms.begin() + i + 1, atoms.end());
            enclosing.push_back(std::move(frame));
            collect_occurrences(atoms[i].content().atoms(), t, enclosing, out);
            enclosing.pop_back();
        }
    }
}

}  // namespace

std::vector<StarContext> occurrences(const RBWord& w, const RBWord& t) {
    std::vector<StarContext> out;
    std::vector<StarContext::Frame> enclosing;
    collect_occurrences(w.atoms(), t, enclosing, out);
    return out;
}

std::string GenNames::name(std::uint32_t gen) const {
    if (gen < names.size()) return names[gen];
    if (gen < 26) return std::string(1, static_cast<char>('a' + gen));
    return "g" + std::to_string(gen);
}

std::string to_string(const Letter& l, const GenNames& names) {
    if (l.level == 0) return names.name(l.gen);
    return "P^" + std::to_string(l.level) + "(" + names.name(l.gen) + ")";
}

std::string to_string(const Atom& a, const GenNames& names) {
    if (a.is_letter()) return to_string(a.as_letter(), names);
    return "R(" + to_string(a.content(), names) + ")";
}

std::string to_string(const RBWord& w, const GenNames& names) {
    std::string out;
    for (const Atom& a : w.atoms()) {
        if (!out.empty()) out += ' ';
        out += to_string(a, names);
    }
    return out;
}

std::string to_string(const StarContext& q, const GenNames& names) {
    std::string out;
    const auto& frames = q.frames();
    std::string inner = "*";
    for (std::size_t i = frames.size(); i-- > 0;) {
        std::string level;
        for (const Atom& a : frames[i].prefix) {
            if (!level.empty()) level += ' ';
            level += to_string(a, names);
        }
        if (!level.empty()) level += ' ';
        level += inner;
        for (const Atom& a : frames[i].suffix) {
            level += ' ';
            level += to_string(a, names);
        }
        inner = (i == 0) ? level : "R(" + level + ")";
    }
    return inner;
}

}  // namespace rbgs
