#include "rbgs/sampling.hpp"

namespace rbgs {

std::size_t rand_below(std::mt19937_64& rng, std::size_t n) {
    return n == 0 ? 0 : static_cast<std::size_t>(rng() % n);
}

namespace {

RBWord random_word_budget(std::mt19937_64& rng, std::size_t gen_count, const SampleBounds& b,
                          int& rdeg_budget) {
    int breadth = 1 + static_cast<int>(rand_below(rng, static_cast<std::size_t>(b.max_breadth)));
    std::vector<Atom> atoms;
    atoms.reserve(breadth);
    for (int i = 0; i < breadth; ++i) {
        bool bracket = rdeg_budget > 0 && rand_below(rng, 3) == 0;
        if (bracket) {
            --rdeg_budget;
            atoms.push_back(Atom::bracket(random_word_budget(rng, gen_count, b, rdeg_budget)));
        } else {
            Letter l{static_cast<std::uint32_t>(rand_below(rng, gen_count)),
                     static_cast<std::uint32_t>(rand_below(rng, b.max_level + 1))};
            atoms.push_back(Atom::letter(l));
        }
    }
    return RBWord(std::move(atoms));
}

}  // namespace

RBWord random_word(std::mt19937_64& rng, std::size_t gen_count, const SampleBounds& b) {
    int budget = b.max_rdeg;
    return random_word_budget(rng, gen_count, b, budget);
}

Element random_element(std::mt19937_64& rng, std::size_t gen_count, const SampleBounds& b) {
    static const Rational coeffs[] = {Rational(1),     Rational(-1), Rational(2),
                                      Rational(-2),    Rational(3),  Rational(1, 2),
                                      Rational(-1, 2), Rational(1, 3)};
    int terms = 1 + static_cast<int>(rand_below(rng, static_cast<std::size_t>(b.max_terms)));
    Element out;
    for (int i = 0; i < terms; ++i)
        out += coeffs[rand_below(rng, 8)] * Element::word(random_word(rng, gen_count, b));
    return out;
}

}  // namespace rbgs
