#include <catch_amalgamated.hpp>

#include <set>

#include "dercomb/fincat.hpp"

using namespace dercomb;

namespace {

// pairs x ≤ y in a product of chains, counted directly
std::size_t grid_relations(int a, int b) {
    std::size_t n = 0;
    for (int x1 = 0; x1 <= a; ++x1)
        for (int y1 = 0; y1 <= b; ++y1)
            for (int x2 = x1; x2 <= a; ++x2)
                for (int y2 = y1; y2 <= b; ++y2) ++n;
    return n;
}

CatPtr z2() {
    return build_fincat({"*"}, {{"id", "*", "*"}, {"g", "*", "*"}}, {{"*", "id"}},
                        {{"id", "id", "id"}, {"id", "g", "g"}, {"g", "id", "g"}, {"g", "g", "id"}});
}

CatPtr square() { return product(*ordinal(1), *ordinal(1)); }

} // namespace

TEST_CASE("build_poset: [1] has two identities and one arrow") {
    CatPtr c = build_poset({0, 1}, {{0, 1}});
    CHECK(c->object_count() == 2);
    CHECK(c->morphism_count() == 3);
    CHECK(c->is_poset());
    CHECK(c->has_morphism(0, 1));
    CHECK_FALSE(c->has_morphism(1, 0));
}

TEST_CASE("build_poset: the square from its four covers") {
    CatPtr c = build_poset({tup(0, 0), tup(1, 0), tup(0, 1), tup(1, 1)},
                           {{tup(0, 0), tup(1, 0)}, {tup(0, 0), tup(0, 1)}, {tup(1, 0), tup(1, 1)}, {tup(0, 1), tup(1, 1)}});
    CHECK(c->morphism_count() == grid_relations(1, 1));
    CHECK(c->morphism_count() == 9);
}

TEST_CASE("build_poset rejects cycles and duplicate labels") {
    CHECK_THROWS_AS(build_poset({0, 1}, {{0, 1}, {1, 0}}), InputError);
    CHECK_THROWS_WITH(build_poset({0, 1}, {{0, 1}, {1, 0}}), Catch::Matchers::ContainsSubstring("cycle"));
    CHECK_THROWS_AS(build_poset({0, 0}, {}), InputError);
    CHECK_THROWS_AS(build_poset({0}, {{0, 0}}), InputError);
    CHECK_THROWS_AS(build_poset({0}, {{0, 7}}), InputError);
}

TEST_CASE("build_fincat: terminal category and Z/2") {
    CatPtr e = build_fincat({"*"}, {{"id", "*", "*"}}, {{"*", "id"}}, {{"id", "id", "id"}});
    CHECK(e->object_count() == 1);
    CHECK(e->morphism_count() == 1);
    CHECK(e->is_poset());

    CatPtr g = z2();
    CHECK_FALSE(g->is_poset());
    CHECK(g->morphism_count() == 2);
    int gg = *g->find_morphism("g");
    CHECK(g->compose(gg, gg) == g->identity(0));
    CHECK_FALSE(category_law_violation(*g));
}

TEST_CASE("build_fincat reports the failing law") {
    SECTION("non-associative table names the triple") {
        // a∘(b∘a) = a∘a = b but (a∘b)∘a = b∘a = a
        std::vector<CompositionSpec> t = {{"id", "id", "id"}, {"id", "a", "a"}, {"id", "b", "b"}, {"a", "id", "a"},
                                          {"b", "id", "b"}, {"a", "a", "b"},  {"a", "b", "b"},  {"b", "a", "a"},
                                          {"b", "b", "b"}};
        auto make = [&] { return build_fincat({"*"}, {{"id", "*", "*"}, {"a", "*", "*"}, {"b", "*", "*"}}, {{"*", "id"}}, t); };
        CHECK_THROWS_AS(make(), LawViolation);
        CHECK_THROWS_WITH(make(), Catch::Matchers::ContainsSubstring("associativity fails for ("));
    }
    SECTION("missing composite") {
        auto make = [] {
            return build_fincat({"*"}, {{"id", "*", "*"}, {"g", "*", "*"}}, {{"*", "id"}},
                                {{"id", "id", "id"}, {"id", "g", "g"}, {"g", "id", "g"}});
        };
        CHECK_THROWS_WITH(make(), Catch::Matchers::ContainsSubstring("missing composite g∘g"));
    }
    SECTION("identity failure") {
        // "id" does not act as a unit on g
        auto make = [] {
            return build_fincat({"*"}, {{"id", "*", "*"}, {"g", "*", "*"}}, {{"*", "id"}},
                                {{"id", "id", "id"}, {"id", "g", "id"}, {"g", "id", "g"}, {"g", "g", "id"}});
        };
        CHECK_THROWS_WITH(make(), Catch::Matchers::ContainsSubstring("identity law fails"));
    }
    SECTION("object without identity") {
        CHECK_THROWS_AS(build_fincat({"*"}, {{"g", "*", "*"}}, {}, {{"g", "g", "g"}}), LawViolation);
    }
}

TEST_CASE("product of posets") {
    CatPtr sq = square();
    CHECK(sq->object_count() == 4);
    CHECK(sq->morphism_count() == 9);
    CatPtr sq2 = product(*sq, *sq);
    CHECK(sq2->object_count() == 16);
    CHECK(sq2->morphism_count() == 81);
    CHECK(product(*ordinal(2), *ordinal(3))->morphism_count() == grid_relations(2, 3));

    CatPtr c = ordinal(3);
    CatPtr ec = product(*point(), *c);
    CHECK(ec->object_count() == c->object_count());
    CHECK(ec->morphism_count() == c->morphism_count());
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) CHECK(ec->has_morphism(x, y) == c->has_morphism(x, y));
}

TEST_CASE("product with a non-poset factor obeys the laws") {
    CatPtr p = product(*z2(), *ordinal(1));
    CHECK_FALSE(p->is_poset());
    CHECK(p->object_count() == 2);
    CHECK(p->morphism_count() == 6);
    CHECK_FALSE(category_law_violation(*p));
}

TEST_CASE("arrow categories") {
    CatPtr a1 = arrow_category(*ordinal(1));
    CHECK(a1->objects() == std::vector<Label>{tup(0, 0), tup(0, 1), tup(1, 1)});
    CatPtr a2 = arrow_category(*ordinal(2));
    std::size_t pairs = 0;
    for (int i = 0; i <= 2; ++i)
        for (int j = i; j <= 2; ++j) ++pairs;
    CHECK(a2->object_count() == pairs);
    CHECK(a2->has_morphism(*a2->find_object(tup(0, 1)), *a2->find_object(tup(1, 2))));
    CHECK_FALSE(a2->has_morphism(*a2->find_object(tup(1, 1)), *a2->find_object(tup(0, 2))));
    CatPtr ae = arrow_category(*point());
    CHECK(ae->object_count() == 1);
    CHECK(ae->morphism_count() == 1);

    CatPtr az = arrow_category(*z2());
    CHECK(az->object_count() == 2);
    CHECK_FALSE(category_law_violation(*az));
    // squares id→id: (u,v) with v = u; g→g: v∘g = g∘u
    CHECK(az->hom(0, 0).size() == 2);
}

TEST_CASE("functor validation") {
    CatPtr one = ordinal(1);
    CHECK_THROWS_AS(Functor::from_object_map(one, one, {1, 0}), LawViolation);
    Functor id = identity_functor(one);
    CHECK(compose(id, id) == id);
    CatPtr g = z2();
    int gg = *g->find_morphism("g");
    // sending g to id is a functor to the trivial group
    Functor triv(g, point(), {0}, {0, 0});
    CHECK(triv.on_morphism(gg) == 0);
    // sending id to g is not
    CHECK_THROWS_AS(Functor(g, g, {0}, {gg, gg}), LawViolation);
}

TEST_CASE("natural transformations") {
    CatPtr one = ordinal(1);
    Functor c0 = constant_functor(one, one, 0);
    Functor c1 = constant_functor(one, one, 1);
    Functor id = identity_functor(one);
    CHECK_NOTHROW(NatTrans(c0, id, {one->unique_morphism(0, 0), one->unique_morphism(0, 1)}));
    CHECK_NOTHROW(NatTrans(id, c1, {one->unique_morphism(0, 1), one->unique_morphism(1, 1)}));
    CHECK(naturality_violation(id, c0, {one->identity(0), one->identity(0)}).has_value());

    CatPtr g = z2();
    int gg = *g->find_morphism("g");
    Functor idg = identity_functor(g);
    CHECK_FALSE(naturality_violation(idg, idg, {gg}).has_value()); // Z/2 is abelian
}

TEST_CASE("comma categories") {
    SECTION("slice of [1] over 1 is [1]") {
        CatPtr one = ordinal(1);
        Comma c = comma(identity_functor(one), Label(1));
        CHECK(c.category->object_count() == 2);
        CHECK(c.category->morphism_count() == 3);
        CHECK(c.category->is_poset());
    }
    SECTION("Γ_s truncated at 3 over [1]") {
        std::vector<Label> obj;
        std::vector<std::pair<Label, Label>> covers;
        for (int m = 0; m <= 3; ++m) obj.push_back(tup(m, 0));
        for (int m = 0; m <= 4; ++m) obj.push_back(tup(m, 1));
        for (int m = 0; m <= 3; ++m) covers.emplace_back(tup(m, 0), tup(m + 1, 1));
        CatPtr gamma = build_poset(obj, covers);
        Functor p = Functor::from_labels(gamma, ordinal(1), [](const Label& l) { return l[1]; });
        Comma c0 = comma(p, Label(0));
        CHECK(c0.category->object_count() == 4);
        CHECK(c0.category->morphism_count() == 4);
        Comma c1 = comma(p, Label(1));
        CHECK(*c1.category == *gamma);
    }
    SECTION("unknown object") {
        CHECK_THROWS_AS(comma(identity_functor(ordinal(1)), Label(5)), InputError);
    }
    SECTION("non-poset target") {
        CatPtr g = z2();
        Comma c = comma(identity_functor(g), Label("*"));
        // objects are (•, h) for h in Z/2, one arrow between any two
        CHECK(c.category->object_count() == 2);
        CHECK(c.category->morphism_count() == 4);
        CHECK_FALSE(category_law_violation(*c.category));
        CHECK_FALSE(naturality_violation(c.alpha.from(), c.alpha.to(), c.alpha.components()));
    }
    SECTION("poset comma categories are posets with natural alpha") {
        CatPtr sq = square();
        for (const auto& k : sq->objects()) {
            Comma c = comma(identity_functor(sq), k);
            CHECK(c.category->is_poset());
            CHECK_FALSE(naturality_violation(c.alpha.from(), c.alpha.to(), c.alpha.components()));
        }
    }
}

TEST_CASE("sieves and cosieves") {
    CatPtr sq = square();
    auto corner = full_subcategory(sq, [](const Label& l) { return !(l == tup(1, 1)); });
    Functor i1 = Functor::from_labels(ordinal(1), corner.category, [](const Label& l) { return tup(l.as_int(), 0); });
    CHECK(classify_inclusion(i1).sieve);
    CHECK_FALSE(classify_inclusion(i1).cosieve);

    Functor t = Functor::from_labels(point(), ordinal(1), [](const Label&) { return Label(1); });
    CHECK(classify_inclusion(t).cosieve);
    CHECK_FALSE(classify_inclusion(t).sieve);

    CatPtr a1 = arrow_category(*ordinal(1));
    Functor s = Functor::from_labels(ordinal(1), a1, [](const Label& l) { return tup(0, l.as_int()); });
    CHECK(classify_inclusion(s).sieve);

    // not fully faithful: both ends of [1] onto a discrete pair is impossible, so use e⊔e → [1]
    Functor d = Functor::from_labels(discrete({0, 1}), ordinal(1), [](const Label& l) { return l; });
    InclusionClass dc = classify_inclusion(d);
    CHECK_FALSE(dc.fully_faithful);
    CHECK_FALSE(dc.sieve);
    CHECK_FALSE(dc.cosieve);
}

TEST_CASE("sieve and cosieve together means a union of components") {
    CatPtr k = product(*ordinal(1), *discrete({0, 1}));
    const int n = static_cast<int>(k->object_count());
    for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<int> keep;
        for (int x = 0; x < n; ++x)
            if (mask >> x & 1) keep.push_back(x);
        auto sub = full_subcategory(k, keep);
        InclusionClass c = classify_inclusion(sub.inclusion);
        CHECK(c.fully_faithful);
        if (c.sieve && c.cosieve) {
            for (int f = 0; f < static_cast<int>(k->morphism_count()); ++f)
                CHECK(((mask >> k->source(f)) & 1) == ((mask >> k->target(f)) & 1));
        }
    }
}

TEST_CASE("adjunctions") {
    SECTION("identity adjunction") {
        CatPtr c = ordinal(2);
        Functor id = identity_functor(c);
        NatTrans u = identity_transformation(id);
        CHECK(check_adjunction(id, id, u, u).ok);
        CHECK(check_adjunction_hom(id, id).ok);
    }
    SECTION("e → [1] at 0 is left adjoint to [1] → e, not right adjoint") {
        CatPtr e = point(), one = ordinal(1);
        Functor f = constant_functor(e, one, 0);
        Functor g = constant_functor(one, e, 0);
        AdjunctionReport fg = check_adjunction_hom(f, g);
        CHECK(fg.ok);
        REQUIRE(fg.unit);
        CHECK(check_adjunction(f, g, *fg.unit, *fg.counit).ok);
        AdjunctionReport gf = check_adjunction_hom(g, f);
        CHECK_FALSE(gf.ok);
        CHECK_THAT(gf.witness, Catch::Matchers::ContainsSubstring("(1, *)"));
    }
    SECTION("ill-typed unit") {
        CatPtr e = point(), one = ordinal(1);
        Functor f = constant_functor(e, one, 0);
        Functor g = constant_functor(one, e, 0);
        AdjunctionReport fg = check_adjunction_hom(f, g);
        CHECK_THROWS_AS(check_adjunction(f, g, *fg.counit, *fg.unit), InputError);
    }
    SECTION("triangle identities fail for a non-adjoint pair in Z/2") {
        CatPtr g = z2();
        int gg = *g->find_morphism("g");
        Functor id = identity_functor(g);
        NatTrans gnat(id, id, {gg});
        NatTrans idnat = identity_transformation(id);
        CHECK(check_adjunction(id, id, idnat, idnat).ok);
        AdjunctionReport r = check_adjunction(id, id, gnat, idnat);
        CHECK_FALSE(r.ok);
        CHECK_THAT(r.witness, Catch::Matchers::ContainsSubstring("triangle"));
    }
    SECTION("hom mode agrees with the existence of unit and counit") {
        CatPtr a = ordinal(1), b = ordinal(2);
        auto all_maps = [](const CatPtr& s, const CatPtr& t) {
            std::vector<Functor> out;
            int n = static_cast<int>(s->object_count()), m = static_cast<int>(t->object_count());
            std::vector<int> v(static_cast<std::size_t>(n), 0);
            while (true) {
                bool mono = true;
                for (int i = 1; i < n; ++i) mono = mono && v[static_cast<std::size_t>(i - 1)] <= v[static_cast<std::size_t>(i)];
                if (mono) out.push_back(Functor::from_object_map(s, t, v));
                int i = 0;
                while (i < n && ++v[static_cast<std::size_t>(i)] == m) v[static_cast<std::size_t>(i++)] = 0;
                if (i == n) break;
            }
            return out;
        };
        for (const auto& f : all_maps(a, b))
            for (const auto& g : all_maps(b, a)) {
                bool unit_exists = true, counit_exists = true;
                for (int x = 0; x < 2; ++x) unit_exists = unit_exists && a->has_morphism(x, g(f(x)));
                for (int y = 0; y < 3; ++y) counit_exists = counit_exists && b->has_morphism(f(g(y)), y);
                AdjunctionReport r = check_adjunction_hom(f, g);
                CHECK(r.ok == (unit_exists && counit_exists));
                if (r.ok) CHECK(check_adjunction(f, g, *r.unit, *r.counit).ok);
            }
    }
}

TEST_CASE("finite direct categories") {
    Directness d2 = is_finite_direct(*ordinal(2));
    CHECK(d2.finite_direct);
    CHECK(d2.nondegenerate_chains == 7u);
    CHECK_FALSE(is_finite_direct(*z2()).finite_direct);
    CHECK_FALSE(is_finite_direct(*z2()).nondegenerate_chains);
    CHECK(is_finite_direct(*point()).nondegenerate_chains == 1u);
    for (int n = 0; n <= 6; ++n) CHECK(is_finite_direct(*ordinal(n)).nondegenerate_chains == (1u << (n + 1)) - 1);
    // the square: 4 + 5 + 2 chains of length 0, 1, 2
    CHECK(is_finite_direct(*square()).nondegenerate_chains == 11u);
}

TEST_CASE("constructed categories satisfy the laws") {
    std::vector<CatPtr> cats = {ordinal(3), square(), arrow_category(*ordinal(3)), product(*square(), *ordinal(1)),
                                z2(), arrow_category(*z2()), product(*z2(), *z2())};
    for (const auto& c : cats) CHECK_FALSE(category_law_violation(*c));
}

TEST_CASE("relabel keeps structure") {
    CatPtr c = relabel(*ordinal(2), [](const Label& l) { return Label("v" + l.str()); });
    CHECK(c->object(2) == Label("v2"));
    CHECK(c->morphism_count() == 6);
    CHECK_THROWS_AS(relabel(*ordinal(2), [](const Label&) { return Label(0); }), InputError);
}
