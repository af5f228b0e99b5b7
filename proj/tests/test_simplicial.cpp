#include <catch_amalgamated.hpp>

#include "dercomb/simplicial.hpp"

using namespace dercomb;

namespace {

int binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return static_cast<int>(r);
}

CatPtr one_object(const std::string& g, const std::string& gg) {
    return build_fincat({"*"}, {{"id", "*", "*"}, {g, "*", "*"}}, {{"*", "id"}},
                        {{"id", "id", "id"}, {"id", g, g}, {g, "id", g}, {g, g, gg}});
}

// |I N([1])| at level n: one φ per split j, with |N([1])| of size |φ⁻¹(s)| + 1
int cylinder_interval_count(int n) {
    int total = 0;
    for (int j = 0; j <= n + 1; ++j) total += j + 2 * (n + 1 - j) + 1;
    return total;
}

} // namespace

TEST_CASE("Δ maps") {
    CHECK(coface(2, 1).values == std::vector<int>{0, 2});
    CHECK(codegeneracy(1, 0).values == std::vector<int>{0, 0, 1});
    CHECK(compose(codegeneracy(1, 0), coface(2, 0)).is_identity());
    CHECK(all_delta_maps(2, 3).size() == static_cast<std::size_t>(binom(6, 3)));
}

TEST_CASE("nerve sizes match binomials") {
    for (int k = 0; k <= 5; ++k) {
        SSet x = nerve(ordinal(k), 5);
        for (int m = 0; m <= 5; ++m) {
            CHECK(x.size(m) == binom(m + k + 1, k));
            CHECK(nondegenerate_counts(x)[static_cast<std::size_t>(m)] == binom(k + 1, m + 1));
        }
    }
}

TEST_CASE("small nerves") {
    SSet e = nerve(point(), 3);
    for (int m = 0; m <= 3; ++m) CHECK(e.size(m) == 1);
    SSet d1 = nerve(ordinal(1), 2);
    CHECK(d1.size(0) == 2);
    CHECK(d1.size(1) == 3);
    CHECK(d1.size(2) == 4);
    CHECK(nondegenerate_count(nerve(ordinal(2), 2)) == 7);
    CHECK(validate_sset(nerve(ordinal(2), 4)).ok);

    SSet z = nerve(one_object("g", "id"), 4);
    for (int m = 0; m <= 4; ++m) CHECK(z.size(m) == 1 << m);
    CHECK(nondegenerate_counts(z) == std::vector<int>{1, 1, 1, 1, 1});
    CHECK(validate_sset(z).ok);
}

TEST_CASE("nerve faces") {
    SSet x = nerve(ordinal(2), 2);
    int s = x.index_of(2, tup(0, 1, 2));
    CHECK(x.simplex(1, x.face(2, 1, s)) == tup(0, 2));
    CHECK(x.simplex(1, x.face(2, 0, s)) == tup(1, 2));
    CHECK(x.simplex(2, x.degeneracy(1, 0, x.index_of(1, tup(0, 2)))) == tup(0, 0, 2));
}

TEST_CASE("validation reports the broken identity") {
    SSet x = nerve(ordinal(1), 2);
    SSetTables t = generator_tables(x);
    std::vector<std::vector<Label>> lv;
    for (int k = 0; k <= 2; ++k) lv.push_back(x.level(k));
    SSet good = tabulated_sset(2, lv, t.faces, t.degeneracies);
    CHECK(validate_sset(good).ok);

    // d_2 of (0,0,1) should be (0,0); send it to (1,1)
    t.faces[2][2][static_cast<std::size_t>(x.index_of(2, tup(0, 0, 1)))] = x.index_of(1, tup(1, 1));
    SSet bad = tabulated_sset(2, lv, t.faces, t.degeneracies);
    Validation v = validate_sset(bad);
    CHECK_FALSE(v.ok);
    CHECK_THAT(v.witness, Catch::Matchers::ContainsSubstring("d_0 d_2 = d_1 d_0"));
}

TEST_CASE("tabulated input is checked") {
    CHECK_THROWS_AS(tabulated_sset(1, {{"a"}, {"b"}}, {{}, {{0}}}, {{{0}}, {}}), InputError);
    CHECK_THROWS_AS(tabulated_sset(1, {{"a"}, {"b"}}, {{}, {{0}, {1}}}, {{{0}}, {}}), InputError);
}

TEST_CASE("sub2") {
    SSet se = sub2(nerve(point(), 5), 2);
    for (int m = 0; m <= 2; ++m) CHECK(se.size(m) == 1);
    REQUIRE(sset_iso(se, nerve(point(), 2)));

    SSet s1 = sub2(nerve(ordinal(1), 3), 1);
    CHECK(s1.size(0) == 3);
    CHECK(nondegenerate_counts(s1) == std::vector<int>{3, 2});
    CHECK_THROWS_AS(sub2(nerve(ordinal(1), 2), 1), TruncationError);
    CHECK(validate_sset(sub2(nerve(ordinal(2), 9), 4)).ok);

    // functoriality on nerve maps: every monotone [1] → [2]
    for (const auto& v : monotone_maps(1, 2)) {
        Functor f = Functor::from_object_map(ordinal(1), ordinal(2), v);
        SMap nf = nerve_map(f, 5);
        SMap sf = sub2(nf, 2);
        CHECK(sf.component(0) == nf.component(1));
    }
}

TEST_CASE("path space") {
    SSet y = nerve(ordinal(1), 2);
    PathSpace p = path_space(y, 1);
    CHECK(p.space.level(0) == y.level(1));
    CHECK(p.space.size(1) == y.size(2));
    CHECK_THROWS_AS(path_space(y, 2), TruncationError);
    CHECK(validate_sset(path_space(nerve(ordinal(2), 5), 4).space).ok);
    // the composite picks out the end vertex of each edge
    SMap c = compose(p.d0_proj, p.vertex_incl);
    for (int s = 0; s < y.size(1); ++s) CHECK(c(0, s) == y.face(1, 0, s));
}

TEST_CASE("cylinder") {
    SECTION("of a point is Δ¹") {
        Cylinder c = cylinder(nerve(point(), 5), 2);
        for (int n = 0; n <= 2; ++n) CHECK(c.space.size(n) == n + 2);
        CHECK(sset_iso(c.space, c.proj.target(), c.proj));
        CHECK(sset_iso(c.space, c.proj.target()));
    }
    SECTION("of Δ¹") {
        SSet x = nerve(ordinal(1), 7);
        Cylinder c = cylinder(x, 3);
        for (int n = 0; n <= 3; ++n) CHECK(c.space.size(n) == cylinder_interval_count(n));
        CHECK(c.e0.injective());
        CHECK(c.e1.injective());
        Subobject f0 = fiber(c.proj, 0);
        Subobject f1 = fiber(c.proj, 1);
        CHECK(sset_iso(truncate(x, 3), f0.sset, corestrict(c.e0, f0)));
        CHECK(sset_iso(sub2(x, 3), f1.sset, corestrict(c.e1, f1)));
        // images of the two ends are disjoint
        for (int n = 0; n <= 3; ++n)
            for (int a : c.e0.component(n))
                for (int b : c.e1.component(n)) CHECK(a != b);
    }
    CHECK_THROWS_AS(cylinder(nerve(ordinal(1), 4), 2), TruncationError);
    CHECK(validate_sset(cylinder(nerve(ordinal(1), 9), 4).space).ok);
}

TEST_CASE("isomorphism search") {
    SSet x = nerve(ordinal(1), 2);
    SSet y = nerve(relabel(*ordinal(1), [](const Label& l) { return Label(l.as_int() ? "b" : "a"); }), 2);
    auto iso = sset_iso(x, y);
    REQUIRE(iso);
    CHECK(iso->bijective());
    CHECK_FALSE(sset_iso(x, nerve(discrete({0, 1}), 2)));
    // Z/2 and the idempotent monoid have nerves of the same sizes
    SSet z2 = nerve(one_object("g", "id"), 3);
    SSet idem = nerve(one_object("e", "e"), 3);
    CHECK_FALSE(sset_iso(z2, idem));
    CHECK(sset_iso(z2, z2));
    CHECK_THROWS_AS(sset_iso(nerve(ordinal(3), 3), nerve(ordinal(3), 3)), SearchBoundExceeded);
    CHECK(sset_iso(nerve(ordinal(3), 3), nerve(ordinal(3), 3), std::nullopt, 40));
    // a non-bijective candidate is rejected
    SMap squash = nerve_map(constant_functor(ordinal(1), ordinal(1), 0), 2);
    CHECK_FALSE(sset_iso(x, x, squash));
}

TEST_CASE("simplicial maps are checked") {
    SSet x = nerve(ordinal(1), 1);
    // swapping the vertices but fixing the edge is not simplicial
    CHECK_THROWS_AS(SMap(x, x, {{1, 0}, {0, 1, 2}}), LawViolation);
    CHECK(identity_smap(x).bijective());
}
