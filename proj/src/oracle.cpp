#include "rbgs/oracle.hpp"

#include <algorithm>
#include <cassert>

namespace rbgs {

namespace {

using Vec = std::vector<Rational>;

Vec zero_vec(std::size_t n) { return Vec(n, Rational(0)); }

Vec unit_vec(std::size_t n, std::size_t i) {
    Vec v = zero_vec(n);
    v[i] = 1;
    return v;
}

void axpy(Vec& out, const Rational& c, const Vec& v) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * v[i];
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& c) { return c == 0; });
}

// Bilinear extension of a basis-pair table to coordinate vectors.
Vec bilinear(const std::vector<std::vector<Vec>>& table, const Vec& u, const Vec& v) {
    Vec out = zero_vec(table.empty() ? 0 : table[0][0].size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j] == 0) continue;
            axpy(out, u[i] * v[j], table[i][j]);
        }
    }
    return out;
}

std::string vec_string(const Vec& v, const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        if (!out.empty()) out += " + ";
        out += to_string(v[i]) + " " + names[i];
    }
    return out.empty() ? "0" : out;
}

}  // namespace

// ---- PrePostLie ----------------------------------------------------------

PrePostLie PrePostLie::trivial(Case kind, std::size_t n, Rational weight) {
    PrePostLie c;
    c.kind = kind;
    c.weight = std::move(weight);
    for (std::size_t i = 0; i < n; ++i) c.gens.push_back(std::string(1, static_cast<char>('a' + i)));
    c.product.assign(n, std::vector<Vec>(n, zero_vec(n)));
    if (kind == Case::post) c.bracket_c.assign(n, std::vector<Vec>(n, zero_vec(n)));
    return c;
}

ValidationReport PrePostLie::validate() const {
    ValidationReport report;
    const std::size_t n = dim();
    auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

    if (kind == Case::pre && weight != 0) fail("pre case requires weight 0");
    if (kind == Case::post && weight == 0) fail("post case requires nonzero weight");
    if (product.size() != n) {
        fail("product table has wrong dimension");
        return report;
    }
    if (kind == Case::post && bracket_c.size() != n) {
        fail("bracket table has wrong dimension");
        return report;
    }

    auto mul = [&](const Vec& u, const Vec& v) { return bilinear(product, u, v); };
    auto br = [&](const Vec& u, const Vec& v) { return bilinear(bracket_c, u, v); };

    auto triple_name = [&](std::size_t i, std::size_t j, std::size_t k) {
        return "(" + gens[i] + ", " + gens[j] + ", " + gens[k] + ")";
    };

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (kind == Case::post) {
                // antisymmetry
                Vec s = bracket_c[i][j];
                axpy(s, Rational(1), bracket_c[j][i]);
                if (!is_zero(s))
                    fail("bracket not antisymmetric at (" + gens[i] + ", " + gens[j] + ")");
            }
            for (std::size_t k = 0; k < n; ++k) {
                Vec ei = unit_vec(n, i), ej = unit_vec(n, j), ek = unit_vec(n, k);
                if (kind == Case::pre) {
                    // (x1 x2) x3 - x1 (x2 x3) = (x2 x1) x3 - x2 (x1 x3)
                    Vec lhs = mul(mul(ei, ej), ek);
                    axpy(lhs, Rational(-1), mul(ei, mul(ej, ek)));
                    axpy(lhs, Rational(-1), mul(mul(ej, ei), ek));
                    axpy(lhs, Rational(1), mul(ej, mul(ei, ek)));
                    if (!is_zero(lhs)) fail("pre-Lie identity fails at " + triple_name(i, j, k));
                } else {
                    // Jacobi for [,]
                    Vec jac = br(br(ei, ej), ek);
                    axpy(jac, Rational(1), br(br(ej, ek), ei));
                    axpy(jac, Rational(1), br(br(ek, ei), ej));
                    if (!is_zero(jac)) fail("Jacobi fails at " + triple_name(i, j, k));
                    // (x.y).z - x.(y.z) - (y.x).z + y.(x.z) = [y,x].z
                    Vec lhs = mul(mul(ei, ej), ek);
                    axpy(lhs, Rational(-1), mul(ei, mul(ej, ek)));
                    axpy(lhs, Rational(-1), mul(mul(ej, ei), ek));
                    axpy(lhs, Rational(1), mul(ej, mul(ei, ek)));
                    axpy(lhs, Rational(-1), mul(br(ej, ei), ek));
                    if (!is_zero(lhs)) fail("first post-Lie identity fails at " + triple_name(i, j, k));
                    // x.[y,z] = [x.y, z] + [y, x.z]
                    Vec lhs2 = mul(ei, br(ej, ek));
                    axpy(lhs2, Rational(-1), br(mul(ei, ej), ek));
                    axpy(lhs2, Rational(-1), br(ej, mul(ei, ek)));
                    if (!is_zero(lhs2)) fail("second post-Lie identity fails at " + triple_name(i, j, k));
                }
            }
        }
    }
    return report;
}

// ---- BracketOracle -------------------------------------------------------

BracketOracle::BracketOracle(std::size_t gen_count, Rational weight, HigherPolicy policy,
                             GenNames names)
    : gen_count_(gen_count), weight_(std::move(weight)), policy_(policy), names_(std::move(names)) {}

void BracketOracle::set_base(Letter u, Letter v, Element value) {
    if (u == v) {
        assert(value.is_zero());
        return;
    }
    if (u < v) {
        std::swap(u, v);
        value *= Rational(-1);
    }
    base_[{u, v}] = std::move(value);
}

bool BracketOracle::has_base(Letter u, Letter v) const {
    if (u < v) std::swap(u, v);
    return base_.count({u, v}) > 0;
}

Element BracketOracle::bracket(Letter u, Letter v) const {
    if (u == v) return Element::zero();
    if (u < v) return -bracket(v, u);
    {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        if (auto it = memo_.find({u, v}); it != memo_.end()) return it->second;
    }
    Element result = bracket_uncached(u, v);
    std::lock_guard<std::mutex> lock(memo_mutex_);
    memo_.emplace(std::make_pair(u, v), result);
    return result;
}

Element BracketOracle::bracket_uncached(Letter u, Letter v) const {
    // u > v here
    if (auto it = base_.find({u, v}); it != base_.end()) return it->second;
    if (u.level >= 1 && v.level >= 1) {
        // [P(a), P(b)] = P([P(a),b] + [a,P(b)] + lambda [a,b])
        Element inner = bracket(u, v.down());
        inner += bracket(u.down(), v);
        inner += weight_ * bracket(u.down(), v.down());
        return shift_up(inner);
    }
    if (policy_ == HigherPolicy::zero) return Element::zero();
    throw OracleIncomplete(u, v, "oracle-incomplete: no rule for [" + to_string(u, names_) +
                                     ", " + to_string(v, names_) + "]");
}

Element BracketOracle::bracket(const Element& u, const Element& v) const {
    Element out;
    for (const auto& [wu, cu] : u.terms()) {
        assert(wu.breadth() == 1 && wu.atoms()[0].is_letter());
        for (const auto& [wv, cv] : v.terms()) {
            assert(wv.breadth() == 1 && wv.atoms()[0].is_letter());
            Element b = bracket(wu.atoms()[0].as_letter(), wv.atoms()[0].as_letter());
            out += (cu * cv) * b;
        }
    }
    return out;
}

Element BracketOracle::iterated_bracket(Letter y, Letter x, unsigned p) const {
    Element acc = Element::word(word_of_letters({y}));
    Element xe = Element::word(word_of_letters({x}));
    for (unsigned i = 0; i < p; ++i) acc = bracket(acc, xe);
    return acc;
}

Element BracketOracle::shift_up(const Element& e) {
    std::vector<Element::Term> terms;
    for (const auto& [w, c] : e.terms()) {
        assert(w.breadth() == 1 && w.atoms()[0].is_letter());
        terms.emplace_back(word_of_letters({w.atoms()[0].as_letter().up()}), c);
    }
    return Element::from_terms(std::move(terms));
}

ValidationReport BracketOracle::validate(std::uint32_t level_bound) const {
    ValidationReport report;
    std::vector<Letter> letters;
    for (std::uint32_t g = 0; g < gen_count_; ++g)
        for (std::uint32_t k = 0; k <= level_bound; ++k) letters.push_back(Letter{g, k});

    auto note_incomplete = [&](const OracleIncomplete& e) {
        std::string entry = "[" + to_string(e.first(), names_) + ", " +
                            to_string(e.second(), names_) + "]";
        if (std::find(report.incomplete_pairs.begin(), report.incomplete_pairs.end(), entry) ==
            report.incomplete_pairs.end())
            report.incomplete_pairs.push_back(entry);
    };
    auto letters_ok = [&](const Element& e, bool min_level_one) {
        for (const auto& [w, c] : e.terms()) {
            if (w.breadth() != 1 || !w.atoms()[0].is_letter()) return false;
            if (min_level_one && w.atoms()[0].as_letter().level < 1) return false;
        }
        return true;
    };

    for (Letter u : letters) {
        for (Letter v : letters) {
            try {
                Element uv = bracket(u, v);
                Element vu = bracket(v, u);
                if (!(uv + vu).is_zero())
                    report.violations.push_back("antisymmetry fails at [" + to_string(u, names_) +
                                                ", " + to_string(v, names_) + "]");
                if (u == v && !uv.is_zero())
                    report.violations.push_back("[x, x] != 0 at " + to_string(u, names_));
                if (!letters_ok(uv, false))
                    report.violations.push_back("bracket not letter-supported at [" +
                                                to_string(u, names_) + ", " + to_string(v, names_) +
                                                "]");
                if (u.level >= 1 && v.level >= 1) {
                    // RB-coherence (catches inconsistent user overrides)
                    Element inner = bracket(u, v.down());
                    inner += bracket(u.down(), v);
                    inner += weight_ * bracket(u.down(), v.down());
                    if (!(uv - shift_up(inner)).is_zero())
                        report.violations.push_back("RB-coherence fails at [" +
                                                    to_string(u, names_) + ", " +
                                                    to_string(v, names_) + "]");
                    if (!letters_ok(uv, true))
                        report.violations.push_back("image-subalgebra fails at [" +
                                                    to_string(u, names_) + ", " +
                                                    to_string(v, names_) + "]");
                }
            } catch (const OracleIncomplete& e) {
                note_incomplete(e);
            }
        }
    }

    for (Letter u : letters)
        for (Letter v : letters)
            for (Letter w : letters) {
                try {
                    Element jac = bracket(bracket(u, v), Element::word(word_of_letters({w})));
                    jac += bracket(bracket(v, w), Element::word(word_of_letters({u})));
                    jac += bracket(bracket(w, u), Element::word(word_of_letters({v})));
                    if (!jac.is_zero())
                        report.violations.push_back(
                            "Jacobi fails at (" + to_string(u, names_) + ", " +
                            to_string(v, names_) + ", " + to_string(w, names_) + ")");
                } catch (const OracleIncomplete& e) {
                    note_incomplete(e);
                }
            }
    return report;
}

std::shared_ptr<const BracketOracle> BracketOracle::abelian(std::size_t gen_count, Rational weight,
                                                            GenNames names) {
    return std::make_shared<BracketOracle>(gen_count, std::move(weight), HigherPolicy::zero,
                                           std::move(names));
}

// ---- forced oracle -------------------------------------------------------

std::shared_ptr<BracketOracle> forced_oracle(const PrePostLie& c, HigherPolicy policy) {
    if (c.kind == PrePostLie::Case::pre && c.weight != 0)
        throw std::invalid_argument("pre case requires weight 0");
    if (c.kind == PrePostLie::Case::post && c.weight == 0)
        throw std::invalid_argument("post case requires nonzero weight");

    auto oracle = std::make_shared<BracketOracle>(c.dim(), c.weight, policy, c.names());
    const std::size_t n = c.dim();
    auto embed = [&](const std::vector<Rational>& coords) {
        std::vector<Element::Term> terms;
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (coords[i] != 0)
                terms.emplace_back(word_of_letters({Letter{static_cast<std::uint32_t>(i), 0}}),
                                   coords[i]);
        return Element::from_terms(std::move(terms));
    };

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            oracle->set_base(Letter{static_cast<std::uint32_t>(a), 1},
                             Letter{static_cast<std::uint32_t>(b), 0}, embed(c.product[a][b]));

    if (c.kind == PrePostLie::Case::post) {
        Rational inv = Rational(1) / c.weight;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < a; ++b)
                oracle->set_base(Letter{static_cast<std::uint32_t>(a), 0},
                                 Letter{static_cast<std::uint32_t>(b), 0},
                                 inv * embed(c.bracket_c[a][b]));
    }
    return oracle;
}

// ---- doubling ------------------------------------------------------------

std::string DoubledAlgebra::basis_name(std::size_t i) const {
    const std::size_t m = base.dim();
    return i < m ? base.gens[i] : base.gens[i - m] + "'";
}

DoubledAlgebra doubling(const PrePostLie& c) {
    if (c.kind == PrePostLie::Case::pre && c.weight != 0)
        throw std::invalid_argument("pre case requires weight 0");
    if (c.kind == PrePostLie::Case::post && c.weight == 0)
        throw std::invalid_argument("post case requires nonzero weight");

    const std::size_t m = c.dim();
    const std::size_t n = 2 * m;
    DoubledAlgebra d;
    d.base = c;
    d.bracket.assign(n, std::vector<Vec>(n, zero_vec(n)));
    d.p.assign(n, zero_vec(n));

    auto lift = [&](const Vec& coords, bool primed) {
        Vec out = zero_vec(n);
        for (std::size_t i = 0; i < m; ++i) out[primed ? m + i : i] = coords[i];
        return out;
    };

    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            // [a, b] = a.b - b.a (+ [a,b]_C in the post case), in the C sector
            Vec cc = c.product[i][j];
            axpy(cc, Rational(-1), c.product[j][i]);
            if (c.kind == PrePostLie::Case::post) axpy(cc, Rational(1), c.bracket_c[i][j]);
            d.bracket[i][j] = lift(cc, false);
            // [a, b'] = (a.b)'
            d.bracket[i][m + j] = lift(c.product[i][j], true);
            Vec neg = lift(c.product[i][j], true);
            for (auto& x : neg) x = -x;
            d.bracket[m + j][i] = neg;
            // [a', b'] = (1/lambda) [a,b]_C' in the post case, 0 in the pre case
            if (c.kind == PrePostLie::Case::post) {
                Vec pp = lift(c.bracket_c[i][j], true);
                Rational inv = Rational(1) / c.weight;
                for (auto& x : pp) x *= inv;
                d.bracket[m + i][m + j] = pp;
            }
        }

    for (std::size_t i = 0; i < m; ++i) {
        // P(c') = c, P(c) = -lambda c
        d.p[m + i] = unit_vec(n, i);
        Vec pc = unit_vec(n, i);
        for (auto& x : pc) x *= -c.weight;
        d.p[i] = pc;
    }
    return d;
}

ValidationReport check_doubling(const DoubledAlgebra& d) {
    ValidationReport report;
    const std::size_t n = d.dim();
    const std::size_t m = d.base.dim();
    auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

    auto br = [&](const Vec& u, const Vec& v) { return bilinear(d.bracket, u, v); };
    auto p_of = [&](const Vec& u) {
        Vec out = zero_vec(n);
        for (std::size_t i = 0; i < n; ++i)
            if (u[i] != 0) axpy(out, u[i], d.p[i]);
        return out;
    };

    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(d.basis_name(i));

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec ei = unit_vec(n, i), ej = unit_vec(n, j);
            // antisymmetry
            Vec anti = br(ei, ej);
            axpy(anti, Rational(1), br(ej, ei));
            if (!is_zero(anti))
                fail("antisymmetry fails at [" + names[i] + ", " + names[j] + "]");
            // RB identity for P in Lie form
            Vec lhs = br(p_of(ei), p_of(ej));
            Vec inner = br(p_of(ei), ej);
            axpy(inner, Rational(1), br(ei, p_of(ej)));
            axpy(inner, d.base.weight, br(ei, ej));
            axpy(lhs, Rational(-1), p_of(inner));
            if (!is_zero(lhs))
                fail("RB identity fails at (" + names[i] + ", " + names[j] + "): defect " +
                     vec_string(lhs, names));
        }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Vec ei = unit_vec(n, i), ej = unit_vec(n, j), ek = unit_vec(n, k);
                Vec jac = br(br(ei, ej), ek);
                axpy(jac, Rational(1), br(br(ej, ek), ei));
                axpy(jac, Rational(1), br(br(ek, ei), ej));
                if (!is_zero(jac))
                    fail("Jacobi fails at (" + names[i] + ", " + names[j] + ", " + names[k] + ")");
            }

    // Theorem 1 embedding identities on the primed copy
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Vec lhs = br(p_of(unit_vec(n, m + i)), unit_vec(n, m + j));
            Vec rhs = zero_vec(n);
            for (std::size_t t = 0; t < m; ++t) rhs[m + t] = d.base.product[i][j][t];
            axpy(lhs, Rational(-1), rhs);
            if (!is_zero(lhs))
                fail("embedding identity [P(a'), b'] = (a.b)' fails at (" + names[m + i] + ", " +
                     names[m + j] + ")");
            if (d.base.kind == PrePostLie::Case::post) {
                Vec lhs2 = br(unit_vec(n, m + i), unit_vec(n, m + j));
                for (auto& x : lhs2) x *= d.base.weight;
                Vec rhs2 = zero_vec(n);
                for (std::size_t t = 0; t < m; ++t) rhs2[m + t] = d.base.bracket_c[i][j][t];
                axpy(lhs2, Rational(-1), rhs2);
                if (!is_zero(lhs2))
                    fail("embedding identity lambda [a', b'] = [a,b]_C' fails at (" +
                         names[m + i] + ", " + names[m + j] + ")");
            }
        }
    return report;
}

}  // namespace rbgs
