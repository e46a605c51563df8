#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rbgs/engine.hpp"
#include "rbgs/sampling.hpp"

using namespace rbgs;

namespace {

const Letter A0{0, 0}, A1{0, 1}, A2{0, 2}, A3{0, 3}, B0{1, 0}, B1{1, 1};

Element W(std::initializer_list<Letter> ls) { return Element::word(word_of_letters(ls)); }
RBWord L(std::initializer_list<Letter> ls) { return word_of_letters(ls); }
Atom R(const RBWord& w) { return Atom::bracket(w); }

std::shared_ptr<const BracketOracle> abelian(std::size_t gens, Rational lambda) {
    return BracketOracle::abelian(gens, std::move(lambda));
}

}  // namespace

TEST_CASE("match9 side conditions") {
    // degenerate: R(x) matches with s = 1, k = 0, everything else empty
    auto degenerate = match9(word_of({R(L({A0}))}));
    REQUIRE(degenerate.has_value());
    CHECK(degenerate->degenerate());
    CHECK(degenerate->beta == A0);
    CHECK(degenerate->k == 0);

    // R(P(a) P(a)): no predecessor for the trailing run; the k = 0
    // decomposition stands with beta equal to the run letter (the weak
    // comparison is forced by confluence, see vec_admissible)
    auto equal_run = match9(word_of({R(L({A1, A1}))}));
    REQUIRE(equal_run.has_value());
    CHECK(equal_run->beta == A1);
    CHECK(equal_run->k == 0);
    CHECK(equal_run->vecs.back() == std::vector<Letter>{A1});
    // level-0 runs stay irreducible: the run cannot serve as a vec
    CHECK(!match9(word_of({R(L({A0, A0}))})).has_value());

    // R(P(a) b), a < b: vec = P(a), beta = b, k = 0
    auto m = match9(word_of({R(L({A1, B0}))}));
    REQUIRE(m.has_value());
    CHECK(m->beta == B0);
    CHECK(m->k == 0);
    REQUIRE(m->vecs.size() == 1);
    CHECK(m->vecs[0] == std::vector<Letter>{A1});

    // R(a P(b)): the vec would contain a level-0 letter
    CHECK(!match9(word_of({R(L({A0, B1}))})).has_value());

    // canonical match takes the maximal k when both decompositions work
    auto both = all_matches9(word_of({R(L({A1, A2}))}));
    REQUIRE(both.size() == 2);
    CHECK(both[0].k == 1);
    CHECK(both[0].beta == A1);
    CHECK(both[1].k == 0);
    CHECK(both[1].beta == A2);
    CHECK(match9(word_of({R(L({A1, A2}))}))->k == 1);

    // leading_word reproduces the matched word
    for (const Pattern9& p : both) CHECK(p.leading_word() == word_of({R(L({A1, A2}))}));

    // words outside the printed family get derived completion rules
    CHECK(!match9(word_of({R(L({A0, A3}))})).has_value());

    // flank contents must contain an R symbol
    CHECK(!match9(word_of({R(word_of({R(L({A0})), Atom::letter(B0)}))})).has_value());
    auto flanked =
        match9(word_of({R(word_of({R(word_of({R(L({A0}))})), Atom::letter(B0)}))}));
    REQUIRE(flanked.has_value());
    CHECK(flanked->lead_flank.has_value());
    CHECK(flanked->beta == B0);
}

TEST_CASE("relation instantiation") {
    auto oracle = abelian(2, 0);
    Engine engine(oracle);

    Relation comm = engine.make_comm(B0, A0);
    CHECK(comm.element == W({B0, A0}) - W({A0, B0}));
    CHECK(comm.leading == L({B0, A0}));

    auto oracle1 = abelian(2, 1);
    Engine engine1(oracle1);
    Relation rb = engine1.make_rb(L({A0}), L({B0}));
    Element inner = multiply(apply_r(W({A0})), W({B0})) + multiply(W({A0}), apply_r(W({B0}))) +
                    multiply(W({A0}), W({B0}));
    CHECK(rb.element == Element::word(word_of({R(L({A0})), R(L({B0}))})) - apply_r(inner));

    Pattern9 degenerate;
    degenerate.beta = B0;
    Relation lng = engine.make_long(degenerate);
    CHECK(lng.element == Element::word(word_of({R(L({B0}))})) - W({B1}));
}

TEST_CASE("find_reduction order and priority") {
    auto oracle = abelian(2, 0);
    Engine engine(oracle);

    auto comm = engine.find_reduction(L({B0, A0}));
    REQUIRE(comm.has_value());
    CHECK(comm->relation.kind == RelKind::comm);
    CHECK(comm->context.is_star_only());

    // R(a)R(a): the rb rule wins over the degenerate long rule
    auto rb = engine.find_reduction(word_of({R(L({A0})), R(L({A0}))}));
    REQUIRE(rb.has_value());
    CHECK(rb->relation.kind == RelKind::rb);

    CHECK(engine.is_irreducible(L({A0, B0})));
    CHECK(engine.is_irreducible(L({A0})));
}

TEST_CASE("normal forms, weight 0 abelian") {
    auto oracle = abelian(1, 0);
    Engine engine(oracle);

    CHECK(engine.normal_form(Element::word(word_of({R(L({A0}))}))) == W({A1}));
    CHECK(engine.normal_form(Element::word(word_of({R(L({A0, A1}))}))) ==
          Rational(1, 2) * W({A1, A1}));
    // R(y R(y)) reduces the inner degenerate letter first, then the block
    RBWord y_ry = word_of({Atom::letter(A0), R(L({A0}))});
    CHECK(engine.normal_form(Element::word(word_of({R(y_ry)}))) == Rational(1, 2) * W({A1, A1}));
    // R(y)R(y) agrees (confluence)
    CHECK(engine.normal_form(multiply(apply_r(W({A0})), apply_r(W({A0})))) == W({A1, A1}));
}

TEST_CASE("derived completion rules and void corner words") {
    auto oracle = abelian(2, 0);
    Engine engine(oracle);

    // R(a P^3(a)) -> P(a) P^3(a) - 1/2 P^2(a)^2, via the normalized tail
    Element nf = engine.normal_form(Element::word(word_of({R(L({A0, A3}))})));
    CHECK(nf == W({A1, A3}) - Rational(1, 2) * W({A2, A2}));

    // R(a P^1(b)) collapses to a consequence: no rule, the word stays
    CHECK(engine.is_irreducible(word_of({R(L({A0, B1}))})));

    // the forcing chain: R(a)R(P^2(a)) must join both reduction routes
    Element lhs = multiply(apply_r(W({A0})), apply_r(W({A2})));
    CHECK(engine.normal_form(lhs) == W({A1, A3}));

    // same check at weight 1
    auto oracle1 = abelian(2, 1);
    Engine engine1(oracle1);
    Element lhs1 = multiply(apply_r(W({A0})), apply_r(W({A2})));
    Element direct = engine1.normal_form(lhs1);
    Element expanded = engine1.normal_form(
        apply_r(multiply(apply_r(W({A0})), W({A2})) + multiply(W({A0}), apply_r(W({A2}))) +
                multiply(W({A0}), W({A2}))));
    CHECK(direct == expanded);
}

TEST_CASE("normal forms, weight 1 abelian") {
    auto oracle = abelian(1, 1);
    Engine engine(oracle);

    // Delta for R(y P(y)) at weight 1 keeps the two-hat term
    Element nf = engine.normal_form(Element::word(word_of({R(L({A0, A1}))})));
    CHECK(nf == Rational(1, 2) * W({A1, A1}) - Rational(1, 2) * apply_r(W({A0, A0})));

    // R(yy) is irreducible
    CHECK(engine.is_irreducible(word_of({R(L({A0, A0}))})));
}

TEST_CASE("commutator sorting uses the oracle") {
    PrePostLie c = PrePostLie::trivial(PrePostLie::Case::pre, 1, 0);
    c.gens = {"y"};
    c.product[0][0][0] = 2;  // y.y = 2y
    std::shared_ptr<const BracketOracle> oracle = forced_oracle(c, HigherPolicy::error);
    Engine engine(oracle);

    // P(y) y -> y P(y) + [P(y), y] = y P(y) + 2y
    CHECK(engine.normal_form(W({A1, A0})) == W({A0, A1}) + Rational(2) * W({A0}));

    // a higher pair is oracle-incomplete under the error policy
    CHECK_THROWS_AS(oracle->bracket(A2, A0), OracleIncomplete);
    CHECK_THROWS_AS(engine.normal_form(W({A2, A0})), OracleIncomplete);
}

TEST_CASE("letters are irreducible and remain distinct") {
    auto oracle = abelian(2, 1);
    Engine engine(oracle);
    std::vector<Element> images;
    for (std::uint32_t g = 0; g < 2; ++g)
        for (std::uint32_t k = 0; k <= 3; ++k) {
            Element nf = engine.normal_form(W({Letter{g, k}}));
            CHECK(nf == W({Letter{g, k}}));
            for (const Element& other : images) CHECK(!(nf == other));
            images.push_back(nf);
        }
}

TEST_CASE("normal form is idempotent and linear") {
    auto oracle = abelian(2, 1);
    Engine engine(oracle);
    std::mt19937_64 rng(77);
    SampleBounds sb;
    for (int trial = 0; trial < 50; ++trial) {
        Element e1 = random_element(rng, 2, sb);
        Element e2 = random_element(rng, 2, sb);
        Element n1 = engine.normal_form(e1);
        CHECK(engine.normal_form(n1) == n1);
        Rational alpha(3, 2);
        CHECK(engine.normal_form(alpha * e1 + e2) ==
              alpha * n1 + engine.normal_form(e2));
    }
}

TEST_CASE("match9 agrees with find_reduction on single R-letter words") {
    auto oracle = abelian(2, 1);
    Engine::Rules long_only;
    long_only.comm = false;
    long_only.rb = false;
    Engine engine(oracle, long_only);
    std::mt19937_64 rng(13);
    SampleBounds sb;
    sb.max_breadth = 3;
    sb.max_rdeg = 1;
    for (int trial = 0; trial < 200; ++trial) {
        RBWord content = random_word(rng, 2, sb);
        RBWord w = word_of({Atom::bracket(content)});
        bool reducible_here = false;
        if (auto r = engine.find_reduction(w))
            reducible_here = r->context.is_star_only();
        CHECK(match9(w).has_value() == reducible_here);
    }
}

TEST_CASE("two random strategies agree with the deterministic normal form") {
    for (Rational lambda : {Rational(0), Rational(1)}) {
        auto oracle = abelian(2, lambda);
        Engine engine(oracle);
        std::mt19937_64 gen_rng(2718);
        std::mt19937_64 s1(1);
        std::mt19937_64 s2(999);
        SampleBounds sb;
        sb.max_breadth = 3;
        sb.max_rdeg = 2;
        sb.max_level = 1;
        for (int trial = 0; trial < 40; ++trial) {
            Element e = random_element(gen_rng, 2, sb);
            Element nf = engine.normal_form(e);
            CHECK(engine.random_normal_form(e, s1) == nf);
            CHECK(engine.random_normal_form(e, s2) == nf);
        }
    }
}

TEST_CASE("composition residuals are trivial at desk scale") {
    CompositionBounds bounds;
    bounds.max_size = 4;
    bounds.max_rdeg = 2;
    bounds.max_level = 2;
    bounds.gen_count = 2;
    for (Rational lambda : {Rational(0), Rational(1)}) {
        auto oracle = abelian(2, lambda);
        Engine engine(oracle);
        auto compositions = enumerate_compositions(engine, bounds);
        CHECK(compositions.size() > 50);
        for (const auto& c : compositions) {
            auto check = check_composition(engine, c);
            if (!check.trivial()) {
                CAPTURE(to_string(c.word, engine.names()));
                CAPTURE(c.f.provenance);
                CAPTURE(c.g.provenance);
                CHECK(check.trivial());
            }
        }
    }
}

TEST_CASE("rb-rb intersections are trivial") {
    CompositionBounds bounds;
    bounds.max_size = 7;
    bounds.max_rdeg = 3;
    bounds.max_level = 1;
    bounds.gen_count = 1;
    for (Rational lambda : {Rational(0), Rational(1)}) {
        auto oracle = abelian(1, lambda);
        Engine engine(oracle);
        auto compositions = enumerate_compositions(engine, bounds);
        int intersections = 0;
        for (const auto& c : compositions) {
            if (c.kind == Composition::Kind::intersection && c.f.kind == RelKind::rb)
                ++intersections;
            auto check = check_composition(engine, c);
            if (!check.trivial()) {
                CAPTURE(to_string(c.word, engine.names()));
                CAPTURE(c.f.provenance);
                CAPTURE(c.g.provenance);
                CHECK(check.trivial());
            }
        }
        CHECK(intersections > 0);
    }
}

TEST_CASE("a long instance inside a long flank is trivial") {
    // w = R( R(z) c ) with z = R(R(x)) y itself matching the long pattern
    CompositionBounds bounds;
    bounds.max_size = 7;
    bounds.max_rdeg = 5;
    bounds.max_level = 2;
    bounds.gen_count = 1;
    auto oracle = abelian(1, 1);
    Engine engine(oracle);
    auto compositions = enumerate_compositions(engine, bounds);
    int long_in_long = 0;
    for (const auto& c : compositions) {
        if (c.kind == Composition::Kind::inclusion && c.f.kind == RelKind::long9 &&
            c.g.kind == RelKind::long9 && !c.context.is_star_only())
            ++long_in_long;
        auto check = check_composition(engine, c);
        if (!check.trivial()) {
            CAPTURE(to_string(c.word, engine.names()));
            CAPTURE(c.f.provenance);
            CAPTURE(c.g.provenance);
            CHECK(check.trivial());
        }
    }
    CHECK(long_in_long > 0);
}

TEST_CASE("negative control: a perturbed RB relation breaks triviality") {
    CompositionBounds bounds;
    bounds.max_size = 5;
    bounds.max_rdeg = 2;
    bounds.max_level = 2;
    bounds.gen_count = 2;
    auto oracle = abelian(2, 1);
    Engine::Rules rules;
    rules.perturb_rb = true;
    Engine engine(oracle, rules);
    auto compositions = enumerate_compositions(engine, bounds);
    int nonzero = 0;
    for (const auto& c : compositions)
        if (!check_composition(engine, c).trivial()) ++nonzero;
    CHECK(nonzero > 0);
}
