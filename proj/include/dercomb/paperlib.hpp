#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dercomb/errors.hpp"
#include "dercomb/fincat.hpp"
#include "dercomb/label.hpp"

namespace dercomb {

/// One verified statement: stable id, human context, verdict, witness.
struct Check {
    std::string id;
    std::string location;
    bool pass = false;
    std::string witness;
};

inline bool all_pass(const std::vector<Check>& cs) {
    return std::all_of(cs.begin(), cs.end(), [](const Check& c) { return c.pass; });
}

namespace detail {

inline Check verdict(std::string id, std::string location, std::optional<std::string> failure) {
    Check c{std::move(id), std::move(location), !failure, failure.value_or("")};
    return c;
}

inline std::string flags_str(const InclusionClass& c) {
    return std::string("fully_faithful=") + (c.fully_faithful ? "1" : "0") +
           " injective=" + (c.injective_on_objects ? "1" : "0") + " sieve=" + (c.sieve ? "1" : "0") +
           " cosieve=" + (c.cosieve ? "1" : "0");
}

enum class Expect { sieve, cosieve, fully_faithful };

inline Check inclusion_check(std::string id, std::string location, const Functor& u, Expect e) {
    InclusionClass c = classify_inclusion(u);
    bool ok = e == Expect::sieve ? c.sieve : e == Expect::cosieve ? c.cosieve : (c.fully_faithful && c.injective_on_objects);
    return verdict(std::move(id), std::move(location), ok ? std::nullopt : std::optional(flags_str(c)));
}

/// (x, y) ↦ (x0, x1, y0, y1) for nested pair labels of a product
inline Label flatten(const Label& l) {
    Label::Tuple t;
    for (const auto& part : l.as_tuple()) {
        if (part.is_tuple())
            for (const auto& x : part.as_tuple()) t.push_back(x);
        else
            t.push_back(part);
    }
    return Label(std::move(t));
}

inline int coord(const Label& l, std::size_t i) { return static_cast<int>(l[i].as_int()); }

/// Functor between posets from a label formula; a non-monotone formula is
/// reported as a witness instead of thrown.
inline std::pair<std::optional<Functor>, std::string> poset_functor(const CatPtr& src, const CatPtr& tgt,
                                                                    const std::function<Label(const Label&)>& f) {
    std::vector<int> obj;
    for (const auto& o : src->objects()) {
        Label v = f(o);
        auto idx = tgt->find_object(v);
        if (!idx) return {std::nullopt, o.str() + " is sent to " + v.str() + ", which is not an object"};
        obj.push_back(*idx);
    }
    if (auto v = monotone_violation(*src, *tgt, obj)) return {std::nullopt, *v};
    return {Functor::from_object_map(src, tgt, std::move(obj)), ""};
}

} // namespace detail

// ---------------------------------------------------------------------------
// Shared index categories

/// □ = [1]×[1] labelled (a,b); (0,0)→(1,0) horizontal, (0,0)→(0,1) vertical.
inline CatPtr square() {
    return relabel(*product(*ordinal(1), *ordinal(1)), detail::flatten);
}

/// ⌐ = □ without (1,1).
inline Subcategory corner() {
    return full_subcategory(square(), [](const Label& l) { return !(l == tup(1, 1)); });
}

/// Ar[n] labelled (i,j) for i ≤ j.
inline CatPtr arrow_ordinal(int n) { return arrow_category(*ordinal(n)); }

// ---------------------------------------------------------------------------
// Coproduct inclusion chain e⊔e → ⌐ → □ → J → [1]×[2], and r: □ → [1]×[2]

struct SigmaChain {
    CatPtr ee, corner, square, j_cat, rect;
    Functor i, i_corner, i_square, j, r;
    std::vector<Check> checks;
};

inline SigmaChain sigma_chain() {
    using detail::Expect;
    CatPtr ee = discrete({Label(0), Label(1)});
    CatPtr sq = square();
    auto cn = corner();
    CatPtr rect = relabel(*product(*ordinal(1), *ordinal(2)), detail::flatten);
    auto jsub = full_subcategory(rect, [](const Label& l) { return !(l == tup(1, 2)); });
    Functor i = Functor::from_labels(ee, cn.category, [](const Label& l) { return l.as_int() == 0 ? tup(1, 0) : tup(0, 1); });
    Functor i_sq = Functor::from_labels(sq, jsub.category, [](const Label& l) { return l; });
    Functor r = Functor::from_labels(sq, rect, [](const Label& l) { return tup(detail::coord(l, 0), detail::coord(l, 1) + 1); });
    SigmaChain s{ee, cn.category, sq, jsub.category, rect, i, cn.inclusion, i_sq, jsub.inclusion, r, {}};
    const std::string loc = "coproduct inclusion chain e⊔e → ⌐ → □ → J → [1]×[2]";
    s.checks.push_back(detail::inclusion_check("sigma-chain.i-cosieve", loc, i, Expect::cosieve));
    s.checks.push_back(detail::inclusion_check("sigma-chain.i-corner-sieve", loc, cn.inclusion, Expect::sieve));
    s.checks.push_back(detail::inclusion_check("sigma-chain.i-square-sieve", loc, i_sq, Expect::sieve));
    s.checks.push_back(detail::inclusion_check("sigma-chain.j-sieve", loc, jsub.inclusion, Expect::sieve));
    {
        std::set<Label> image, want{tup(0, 1), tup(1, 1), tup(0, 2), tup(1, 2)};
        for (const auto& o : sq->objects()) image.insert(r.image_label(o));
        InclusionClass c = classify_inclusion(r);
        std::optional<std::string> fail;
        if (!c.fully_faithful || !c.injective_on_objects) fail = detail::flags_str(c);
        else if (image != want) fail = "image is not the bottom square";
        s.checks.push_back(detail::verdict("sigma-chain.r-fully-faithful", loc + "; r is the bottom square", fail));
    }
    return s;
}

// ---------------------------------------------------------------------------
// ξ: □×□ → □

inline Label xi_value(int a1, int b1, int a2, int b2) {
    auto is = [&](int x, int y, int z, int w) { return a1 == x && b1 == y && a2 == z && b2 == w; };
    if (is(0, 0, 0, 0) || is(0, 0, 1, 0) || is(1, 0, 0, 0)) return tup(0, 0);
    if (is(1, 0, 1, 0)) return tup(1, 0);
    if (is(1, 0, 1, 1) || is(1, 1, 1, 0) || is(1, 1, 1, 1)) return tup(1, 1);
    return tup(0, 1);
}

struct CofiberSquare {
    CatPtr square2;
    CatPtr square;
    std::optional<Functor> xi;
    std::vector<Check> checks;
};

inline CofiberSquare cofiber_square_functor() {
    CatPtr sq = square();
    CatPtr sq2 = relabel(*product(*sq, *sq), detail::flatten);
    auto formula = [](const Label& l) {
        return xi_value(detail::coord(l, 0), detail::coord(l, 1), detail::coord(l, 2), detail::coord(l, 3));
    };
    auto [xi, why] = detail::poset_functor(sq2, sq, formula);
    CofiberSquare c{sq2, sq, xi, {}};
    const std::string loc = "cofiber-sequence square functor ξ: □×□ → □";
    c.checks.push_back(detail::verdict("xi.functor", loc, xi ? std::nullopt : std::optional(why)));
    std::optional<std::string> fail;
    const std::vector<std::pair<Label, Label>> printed = {
        {tuple_of({0, 0, 0, 0}), tup(0, 0)}, {tuple_of({0, 0, 1, 0}), tup(0, 0)}, {tuple_of({1, 0, 0, 0}), tup(0, 0)},
        {tuple_of({1, 0, 1, 0}), tup(1, 0)}, {tuple_of({1, 0, 1, 1}), tup(1, 1)}, {tuple_of({1, 1, 1, 0}), tup(1, 1)},
        {tuple_of({1, 1, 1, 1}), tup(1, 1)}, {tuple_of({0, 1, 1, 1}), tup(0, 1)}};
    if (!xi) fail = "ξ is not a functor";
    else
        for (const auto& [x, v] : printed)
            if (!(xi->image_label(x) == v)) {
                fail = "ξ" + x.str() + " = " + xi->image_label(x).str() + ", expected " + v.str();
                break;
            }
    c.checks.push_back(detail::verdict("xi.printed-values", loc + "; case table", fail));
    fail.reset();
    if (!xi) {
        fail = "ξ is not a functor";
    } else {
        // (1,0,0,0) → (1,0,1,0) goes to (0,0) → (1,0), a non-identity arrow
        int x = sq2->object_index(tuple_of({1, 0, 0, 0})), y = sq2->object_index(tuple_of({1, 0, 1, 0}));
        int f = sq2->unique_morphism(x, y);
        int g = f < 0 ? -1 : xi->on_morphism(f);
        if (g < 0 || !(sq->object(sq->source(g)) == tup(0, 0)) || !(sq->object(sq->target(g)) == tup(1, 0)))
            fail = "arrow (1,0,0,0)→(1,0,1,0) is not sent to (0,0)→(1,0)";
    }
    c.checks.push_back(detail::verdict("xi.arrow-example", loc + "; worked arrow", fail));
    return c;
}

// ---------------------------------------------------------------------------
// Functors building S_n: j, i₀, D, i₁, i₂

struct SdotFunctors {
    int n;
    CatPtr ar;
    CatPtr d;
    std::optional<Functor> j_top, i0, i1, i2;
    std::vector<Check> checks;
};

/// D ⊂ Ar[n]: top row (0,i) and the diagonal (i,i).
inline Subcategory top_row_and_diagonal(const CatPtr& ar) {
    return full_subcategory(ar, [](const Label& l) { return l[0].as_int() == 0 || l[0] == l[1]; });
}

inline SdotFunctors sdot_functors(int n) {
    if (n < 1) throw InputError("sdot_functors needs n >= 1");
    using detail::Expect;
    CatPtr ar = arrow_ordinal(n);
    CatPtr prev = ordinal(n - 1), cur = ordinal(n);
    auto dsub = top_row_and_diagonal(ar);
    SdotFunctors s{n, ar, dsub.category, {}, {}, {}, dsub.inclusion, {}};
    s.j_top = Functor::from_labels(prev, ar, [](const Label& l) { return tup(0, l.as_int() + 1); });
    s.i0 = Functor::from_labels(prev, cur, [](const Label& l) { return Label(l.as_int() + 1); });
    s.i1 = Functor::from_labels(cur, dsub.category, [](const Label& l) { return tup(0, l.as_int()); });
    const std::string p = "sdot." + std::to_string(n) + ".";
    const std::string loc = "S_" + std::to_string(n) + " indexing on Ar[" + std::to_string(n) + "]";
    s.checks.push_back(detail::inclusion_check(p + "j-fully-faithful", loc + "; j: i ↦ (0,i+1)", *s.j_top, Expect::fully_faithful));
    s.checks.push_back(detail::inclusion_check(p + "i0-cosieve", loc + "; i₀: i ↦ i+1", *s.i0, Expect::cosieve));
    s.checks.push_back(detail::inclusion_check(p + "i1-sieve", loc + "; i₁: [n] → D onto the top row", *s.i1, Expect::sieve));
    s.checks.push_back(detail::inclusion_check(p + "i2-fully-faithful", loc + "; i₂: D → Ar[n]", *s.i2, Expect::fully_faithful));
    std::size_t want = static_cast<std::size_t>(2 * n + 1);
    s.checks.push_back(detail::verdict(
        p + "d-objects", loc + "; D is the top row plus the diagonal",
        dsub.category->object_count() == want ? std::nullopt
                                              : std::optional("D has " + std::to_string(dsub.category->object_count()) +
                                                              " objects, expected " + std::to_string(want))));
    return s;
}

// ---------------------------------------------------------------------------
// Detection of cocartesian squares: ι_{i,j}, B^{i,j}, ℓ

/// ℓ exactly as tabulated: (0,0) if p ≤ i and q ≤ j, (0,1) if q = j+1, (1,0)
/// if p = i+1. These values are written in Ar[n]'s orientation.
inline Label ell_printed(int i, int j, int p, int q) {
    if (p <= i && q <= j) return tup(0, 0);
    if (q == j + 1) return tup(0, 1);
    return tup(1, 0);
}

/// ℓ as a functor to ⌐: the tabulated value with its coordinates swapped,
/// matching ι_{i,j}(a,b) = (i+b, j+a).
inline Label ell_value(int i, int j, int p, int q) {
    Label v = ell_printed(i, j, p, q);
    return tup(v[1], v[0]);
}

struct Detection {
    int n, i, j;
    CatPtr ar;
    CatPtr b;              // B^{i,j}
    std::optional<Functor> iota;     // □ → Ar[n]
    std::optional<Functor> iota_bar; // ⌐ → B^{i,j}
    std::optional<Functor> ell;      // B^{i,j} → ⌐
    std::optional<AdjunctionReport> adjunction;
    std::vector<Check> checks;
};

using EllFormula = std::function<Label(int i, int j, int p, int q)>;

inline Detection detection(int n, int i, int j, const EllFormula& ell = ell_value) {
    if (!(0 <= i && i < j && j <= n - 1))
        throw InputError("detection needs 0 <= i < j <= n-1, got n=" + std::to_string(n) + " i=" + std::to_string(i) +
                         " j=" + std::to_string(j));
    CatPtr ar = arrow_ordinal(n);
    CatPtr sq = square();
    auto cn = corner();
    Label top = tup(i + 1, j + 1);
    auto bsub = full_subcategory(ar, [&](const Label& l) {
        return l[0].as_int() <= i + 1 && l[1].as_int() <= j + 1 && !(l == top);
    });
    Detection d{n, i, j, ar, bsub.category, {}, {}, {}, {}, {}};
    auto iota_f = [&](const Label& l) { return tup(i + detail::coord(l, 1), j + detail::coord(l, 0)); };
    const std::string p = "detection." + std::to_string(n) + "." + std::to_string(i) + "." + std::to_string(j) + ".";
    const std::string loc = "square detection for ι_{" + std::to_string(i) + "," + std::to_string(j) + "}: □ → Ar[" +
                            std::to_string(n) + "]";
    d.iota = Functor::from_labels(sq, ar, iota_f);
    d.checks.push_back(detail::inclusion_check(p + "iota-fully-faithful", loc, *d.iota, detail::Expect::fully_faithful));

    // (Ar[n] minus the corner / corner) is B^{i,j}
    {
        auto rest = full_subcategory(ar, [&](const Label& l) { return !(l == top); });
        Comma cm = comma(rest.inclusion, top);
        std::optional<std::string> fail;
        if (!cm.category->is_poset()) fail = "comma category is not a poset";
        else if (!(*cm.category == *bsub.category)) fail = "comma category differs from B^{i,j}";
        d.checks.push_back(detail::verdict(p + "comma", loc + "; comma category over ι(1,1)", fail));
    }
    d.checks.push_back(detail::verdict(p + "corner-outside-d", loc + "; ι(1,1) is not in D",
                                       (i + 1 == 0 || i + 1 == j + 1) ? std::optional(top.str() + " lies in D")
                                                                       : std::nullopt));

    auto [ib, why_ib] = detail::poset_functor(cn.category, bsub.category, iota_f);
    auto [el, why_el] = detail::poset_functor(bsub.category, cn.category, [&](const Label& l) {
        return ell(i, j, detail::coord(l, 0), detail::coord(l, 1));
    });
    d.iota_bar = ib;
    d.ell = el;
    std::optional<std::string> fail;
    if (!ib) fail = "ῑ: " + why_ib;
    else if (!el) fail = "ℓ: " + why_el;
    else {
        d.adjunction = check_adjunction_hom(*el, *ib);
        if (!d.adjunction->ok) {
            fail = "hom criterion fails at " + d.adjunction->witness;
        } else {
            const auto& eps = d.adjunction->counit->components();
            for (std::size_t x = 0; x < eps.size() && !fail; ++x)
                if (!cn.category->is_identity(eps[x])) fail = "counit is not the identity at " + cn.category->object(static_cast<int>(x)).str();
            const auto& eta = d.adjunction->unit->components();
            for (std::size_t x = 0; x < eta.size() && !fail; ++x) {
                int px = static_cast<int>(x);
                if (eta[x] != bsub.category->unique_morphism(px, ib->on_object(el->on_object(px))))
                    fail = "unit is not the unique map at " + bsub.category->object(px).str();
            }
        }
    }
    d.checks.push_back(detail::verdict(p + "adjunction", loc + "; ℓ ⊣ ῑ by the hom criterion", fail));
    return d;
}

// ---------------------------------------------------------------------------
// pₙ and qₙ

inline Label p_value(int i, int j, int a, int b) {
    (void)b;
    return a == 1 ? tup(i, j) : tup(0, 0);
}

inline Label q_value(int i, int j, int a, int b) {
    if (a == 1 && b == 0) return tup(i, j);
    if (a == 0 && b == 0) {
        if (i == 0 && j == 0) return tup(0, 0);
        if ((i == 0 || i == 1) && j >= 1) return tup(0, 1);
        return tup(1, 1);
    }
    if (a == 0 && b == 1) return tup(1, 1);
    if (i == 0 && j == 0) return tup(1, 1);
    if (i == 0 && j >= 1) return tup(1, j);
    return tup(i, j);
}

struct RelativeFunctors {
    int n;
    CatPtr p_source, p_target, q_source, q_target;
    std::optional<Functor> p, q;
    /// (i,j,a,b) ↦ value, in object order
    std::vector<std::pair<Label, Label>> p_table, q_table;
    std::vector<Check> checks;
};

inline RelativeFunctors relative_functors(int n) {
    if (n < 1) throw InputError("relative_functors needs n >= 1");
    CatPtr ar = arrow_ordinal(n), ar1 = arrow_ordinal(n + 1), sq = square();
    CatPtr ps = relabel(*product(*ar, *sq), detail::flatten);
    CatPtr qs = relabel(*product(*ar1, *sq), detail::flatten);
    auto lift = [](Label (*f)(int, int, int, int)) {
        return [f](const Label& l) {
            return f(detail::coord(l, 0), detail::coord(l, 1), detail::coord(l, 2), detail::coord(l, 3));
        };
    };
    RelativeFunctors r{n, ps, ar, qs, ar1, {}, {}, {}, {}, {}};
    auto [p, why_p] = detail::poset_functor(ps, ar, lift(p_value));
    auto [q, why_q] = detail::poset_functor(qs, ar1, lift(q_value));
    r.p = p;
    r.q = q;
    for (const auto& o : ps->objects()) r.p_table.emplace_back(o, lift(p_value)(o));
    for (const auto& o : qs->objects()) r.q_table.emplace_back(o, lift(q_value)(o));
    const std::string pre = "relative." + std::to_string(n) + ".";
    r.checks.push_back(detail::verdict(pre + "p-functor", "p_" + std::to_string(n) + ": Ar[n]×□ → Ar[n]",
                                       p ? std::nullopt : std::optional(why_p)));
    r.checks.push_back(detail::verdict(pre + "q-functor", "q_" + std::to_string(n) + ": Ar[n+1]×□ → Ar[n+1]",
                                       q ? std::nullopt : std::optional(why_q)));
    return r;
}

// ---------------------------------------------------------------------------
// Γ_s truncated, p: Γ_s → [1], ℓ ⊣ r

inline Label gamma_object(int m, int copy) {
    static const char* sub[] = {"₀", "₁"};
    return Label(std::to_string(m) + sub[copy]);
}

struct Swindle {
    int N;
    CatPtr gamma;
    CatPtr omega1;
    std::optional<Functor> p, r, ell;
    std::optional<Comma> over0, over1;
    std::vector<Check> checks;
};

inline Swindle swindle_category(int N) {
    if (N < 1) throw InputError("swindle_category needs N >= 1");
    std::vector<Label> obj, omega;
    std::vector<std::pair<Label, Label>> covers;
    for (int m = 0; m <= N; ++m) obj.push_back(gamma_object(m, 0));
    for (int m = 0; m <= N + 1; ++m) {
        obj.push_back(gamma_object(m, 1));
        omega.push_back(gamma_object(m, 1));
    }
    for (int m = 0; m <= N; ++m) covers.emplace_back(gamma_object(m, 0), gamma_object(m + 1, 1));
    CatPtr gamma = build_poset(obj, covers);
    CatPtr om = discrete(omega);
    CatPtr one = ordinal(1);
    Swindle s{N, gamma, om, {}, {}, {}, {}, {}, {}};
    auto copy_of = [](const Label& l) {
        const std::string& t = l.as_string();
        return t.substr(t.size() - 3) == "₁" ? 1 : 0;
    };
    auto index_of = [](const Label& l) { return std::stoi(l.as_string()); };
    s.p = Functor::from_labels(gamma, one, [&](const Label& l) { return Label(copy_of(l)); });
    s.r = Functor::from_labels(om, gamma, [](const Label& l) { return l; });
    s.ell = Functor::from_labels(gamma, om, [&](const Label& l) {
        return copy_of(l) == 1 ? l : gamma_object(index_of(l) + 1, 1);
    });
    s.over0 = comma(*s.p, Label(0));
    s.over1 = comma(*s.p, Label(1));
    const std::string pre = "swindle." + std::to_string(N) + ".";
    const std::string loc = "swindle category Γ_s truncated at N=" + std::to_string(N);
    {
        const FinCat& c = *s.over0->category;
        std::optional<std::string> fail;
        if (c.object_count() != static_cast<std::size_t>(N + 1))
            fail = "(p/0) has " + std::to_string(c.object_count()) + " objects";
        for (int f = 0; f < static_cast<int>(c.morphism_count()) && !fail; ++f)
            if (!c.is_identity(f)) fail = "(p/0) has the arrow " + c.morphism_str(f);
        for (const auto& o : c.objects())
            if (!fail && copy_of(o) != 0) fail = "(p/0) contains " + o.str();
        s.checks.push_back(detail::verdict(pre + "p0-discrete", loc + "; (p/0) is ω₀", fail));
    }
    {
        std::optional<std::string> fail;
        if (!(*s.over1->category == *gamma)) fail = "(p/1) differs from Γ_s";
        s.checks.push_back(detail::verdict(pre + "p1-whole", loc + "; (p/1) is Γ_s", fail));
    }
    {
        AdjunctionReport a = check_adjunction_hom(*s.ell, *s.r);
        s.checks.push_back(detail::verdict(pre + "adjunction", loc + "; ℓ ⊣ r",
                                           a.ok ? std::nullopt : std::optional(a.witness)));
    }
    return s;
}

// ---------------------------------------------------------------------------
// Squares in Ar[n]

/// Corners (i,j), (i,j′), (i′,j), (i′,j′) with i < i′ ≤ j < j′.
struct Rectangle {
    int i, ip, j, jp;
    bool diagonal_anchored() const { return ip == j; }
    friend auto operator<=>(const Rectangle&, const Rectangle&) = default;
};

struct SdotSquares {
    int n;
    std::vector<Rectangle> rects;
    std::vector<Functor> rectangles;
    std::vector<Functor> diagonal_anchored;
    std::vector<Check> checks;
};

/// ι(a,b) = (ip if b else i, jp if a else j), so ι(0,1) = (i′,j).
inline SdotSquares sdot_squares(int n) {
    if (n < 2) throw InputError("sdot_squares needs n >= 2");
    CatPtr ar = arrow_ordinal(n), sq = square();
    SdotSquares s{n, {}, {}, {}, {}};
    for (int i = 0; i <= n; ++i)
        for (int ip = i + 1; ip <= n; ++ip)
            for (int j = ip; j <= n; ++j)
                for (int jp = j + 1; jp <= n; ++jp) {
                    Rectangle r{i, ip, j, jp};
                    Functor f = Functor::from_labels(sq, ar, [&](const Label& l) {
                        return tup(detail::coord(l, 1) ? ip : i, detail::coord(l, 0) ? jp : j);
                    });
                    s.rects.push_back(r);
                    s.rectangles.push_back(f);
                    if (r.diagonal_anchored()) s.diagonal_anchored.push_back(f);
                }
    const std::string pre = "sdot-squares." + std::to_string(n) + ".";
    const std::string loc = "fully faithful squares □ → Ar[" + std::to_string(n) + "]";
    {
        std::optional<std::string> fail;
        for (std::size_t k = 0; k < s.rectangles.size() && !fail; ++k) {
            InclusionClass c = classify_inclusion(s.rectangles[k]);
            if (!c.fully_faithful || !c.injective_on_objects) fail = "rectangle " + std::to_string(k) + ": " + detail::flags_str(c);
        }
        s.checks.push_back(detail::verdict(pre + "fully-faithful", loc, fail));
    }
    {
        std::set<Rectangle> all(s.rects.begin(), s.rects.end());
        std::optional<std::string> fail;
        for (const auto& a : s.rects)
            for (const auto& b : s.rects) {
                if (fail) break;
                if (a.i == b.i && a.ip == b.ip && a.jp == b.j && !all.count({a.i, a.ip, a.j, b.jp}))
                    fail = "horizontal pasting leaves the set";
                if (a.j == b.j && a.jp == b.jp && a.ip == b.i && !all.count({a.i, b.ip, a.j, a.jp}))
                    fail = "vertical pasting leaves the set";
            }
        s.checks.push_back(detail::verdict(pre + "pasting", loc + "; closed under pasting", fail));
    }
    {
        std::set<Rectangle> all(s.rects.begin(), s.rects.end());
        std::optional<std::string> fail;
        for (int i = 0; i < n && !fail; ++i)
            for (int j = i + 1; j <= n - 1 && !fail; ++j)
                if (!all.count({i, i + 1, j, j + 1}))
                    fail = "ι_{" + std::to_string(i) + "," + std::to_string(j) + "} is missing";
        s.checks.push_back(detail::verdict(pre + "detection-squares", loc + "; every ι_{i,j} is a rectangle", fail));
    }
    return s;
}

} // namespace dercomb
