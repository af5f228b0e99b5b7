#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>

#include "dercomb/grothendieck.hpp"
#include "support/oracles.hpp"

using namespace dercomb;
using oracle::determinantal_factors;

namespace {

Matrix to_matrix(const std::vector<std::vector<long long>>& v) {
    Matrix m;
    for (const auto& row : v) {
        m.emplace_back();
        for (long long x : row) m.back().emplace_back(x);
    }
    return m;
}

// plain elementary reduction on 64-bit entries: column-major pivot search, remainders until clean
std::vector<long long> elementary_factors(std::vector<std::vector<long long>> a) {
    const std::size_t r = a.size(), c = a[0].size();
    std::vector<long long> out;
    for (std::size_t t = 0; t < std::min(r, c); ++t) {
        while (true) {
            std::size_t pr = r, pc = c;
            for (std::size_t j = t; j < c; ++j)
                for (std::size_t i = t; i < r; ++i)
                    if (a[i][j] != 0 && (pr == r || std::llabs(a[i][j]) < std::llabs(a[pr][pc]))) pr = i, pc = j;
            if (pr == r) break;
            std::swap(a[t], a[pr]);
            for (auto& row : a) std::swap(row[t], row[pc]);
            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i) {
                long long q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < c; ++j) a[i][j] -= q * a[t][j];
                clean = clean && a[i][t] == 0;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                long long q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < r; ++i) a[i][j] -= q * a[i][t];
                clean = clean && a[t][j] == 0;
            }
            if (!clean) continue;
            // fold any entry the pivot does not divide into row t
            bool divides = true;
            for (std::size_t i = t + 1; i < r && divides; ++i)
                for (std::size_t j = t + 1; j < c && divides; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (std::size_t k = t; k < c; ++k) a[t][k] += a[i][k];
                        divides = false;
                    }
            if (divides) break;
        }
        out.push_back(std::llabs(a[t][t]));
    }
    return out;
}

void check_smith(const Matrix& m) {
    const std::size_t c = columns(m);
    SmithForm f = smith_normal_form(m, c);
    REQUIRE(multiply(multiply(f.U, m), f.V) == f.S);
    Integer du = determinant(f.U), dv = determinant(f.V);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    for (std::size_t i = 0; i < f.S.size(); ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (i != j) CHECK(f.S[i][j] == 0);
    auto d = f.diagonal();
    for (std::size_t i = 0; i < d.size(); ++i) {
        CHECK(d[i] >= 0);
        if (i + 1 < d.size() && d[i] != 0) CHECK(d[i + 1] % d[i] == 0);
        if (i + 1 < d.size() && d[i] == 0) CHECK(d[i + 1] == 0);
    }
    CHECK(d == determinantal_factors(m));
}

} // namespace

TEST_CASE("determinant") {
    CHECK(determinant(to_matrix({{2, 0}, {0, 3}})) == 6);
    CHECK(determinant(to_matrix({{0, 1}, {1, 0}})) == -1);
    CHECK(determinant(to_matrix({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}})) == -3);
    CHECK(determinant(to_matrix({{0, 0}, {0, 1}})) == 0);
}

TEST_CASE("Smith normal form: small cases") {
    CHECK(smith_normal_form(to_matrix({{2, 0}, {0, 3}})).diagonal() == std::vector<Integer>{1, 6});
    CHECK(smith_normal_form(to_matrix({{2, 4}, {6, 8}})).diagonal() == std::vector<Integer>{2, 4});
    CHECK(smith_normal_form(to_matrix({{0, 0}, {0, 0}})).diagonal() == std::vector<Integer>{0, 0});
    CHECK(smith_normal_form(to_matrix({{-3}})).diagonal() == std::vector<Integer>{3});
    for (const auto& m : {to_matrix({{2, 0}, {0, 3}}), to_matrix({{2, 4}, {6, 8}}), to_matrix({{1, 2, 3}, {4, 5, 6}}),
                          to_matrix({{6}, {4}}), to_matrix({{0, 4, 0}, {0, 0, 6}, {0, 0, 0}})})
        check_smith(m);
    CHECK_THROWS_AS(smith_normal_form(to_matrix({{1, 2}, {3}})), InputError);
    SmithForm e = smith_normal_form(Matrix{}, 3);
    CHECK(e.V.size() == 3);
}

TEST_CASE("Smith normal form agrees with both oracles on seeded 4×4 matrices") {
    std::mt19937 rng(20260);
    std::uniform_int_distribution<int> dist(-5, 5);
    for (int t = 0; t < 100; ++t) {
        std::vector<std::vector<long long>> v(4, std::vector<long long>(4));
        for (auto& row : v)
            for (auto& x : row) x = dist(rng);
        Matrix m = to_matrix(v);
        check_smith(m);
        auto d = smith_normal_form(m).diagonal();
        auto e = elementary_factors(v);
        for (std::size_t i = 0; i < 4; ++i) CHECK(d[i] == e[i]);
    }
}

TEST_CASE("Smith normal form past 64 bits") {
    const Integer big = Integer(1) << 40;
    Matrix m = {{3 * big, 5 * big}, {7 * big, 11 * big}};
    // det = -2·2^80, gcd of entries 2^40
    auto d = smith_normal_form(m).diagonal();
    CHECK(d == std::vector<Integer>{big, 2 * big});
    check_smith(m);
    Matrix w = {{Integer(1) << 62, (Integer(1) << 62) + 1, 3}, {(Integer(1) << 63) - 1, 5, Integer(1) << 61},
                {7, Integer(1) << 60, 9}};
    check_smith(w);
}

TEST_CASE("K0 of small presentations") {
    SECTION("cofiber relation") {
        K0Presentation p{{"a", "b", "c"}, {{"a", "b", "c"}}, {}, {}};
        AbelianGroup g = k0_group(p);
        CHECK(g.rank == 2);
        CHECK(g.torsion.empty());
        CHECK_FALSE(class_map_violation(p, g));
    }
    SECTION("swindle") {
        K0Presentation p{{"x"}, {{"x", "x", "x"}}, {}, {}};
        AbelianGroup g = k0_group(p);
        CHECK(g.trivial());
        CHECK(g.class_of("x").empty());
    }
    SECTION("free on g generators") {
        for (int n = 0; n <= 10; ++n) {
            K0Presentation p;
            for (int i = 0; i < n; ++i) p.generators.emplace_back(i);
            AbelianGroup g = k0_group(p);
            CHECK(g.rank == static_cast<std::size_t>(n));
            CHECK(g.torsion.empty());
        }
    }
    SECTION("torsion from 2[x] = 0") {
        K0Presentation p{{"x", "y"}, {{"x", "y", "x"}}, {}, {"y"}};
        AbelianGroup g = k0_group(p);
        CHECK(g.rank == 0);
        CHECK(g.torsion == std::vector<Integer>{2});
        CHECK(g.class_of("x") == std::vector<Integer>{1});
        CHECK_FALSE(class_map_violation(p, g));
    }
    SECTION("isomorphisms identify") {
        K0Presentation p{{"x", "y", "z"}, {}, {{"x", "y"}}, {}};
        AbelianGroup g = k0_group(p);
        CHECK(g.rank == 2);
        CHECK(g.class_of("x") == g.class_of("y"));
        CHECK(g.class_of("x") != g.class_of("z"));
    }
    SECTION("bad input") {
        CHECK_THROWS_AS(k0_group({{"x", "x"}, {}, {}, {}}), InputError);
        CHECK_THROWS_AS(k0_group({{"x"}, {{"x", "q", "x"}}, {}, {}}), InputError);
    }
}

TEST_CASE("K0 is invariant under shuffling generators and relations") {
    K0Presentation p;
    for (int i = 0; i < 7; ++i) p.generators.emplace_back("g" + std::to_string(i));
    p.cofiber = {{"g0", "g1", "g2"}, {"g2", "g3", "g2"}, {"g4", "g5", "g4"}, {"g5", "g6", "g5"}};
    p.iso = {{"g3", "g6"}};
    AbelianGroup base = k0_group(p);
    std::mt19937 rng(7);
    for (int t = 0; t < 20; ++t) {
        K0Presentation q = p;
        std::shuffle(q.generators.begin(), q.generators.end(), rng);
        std::shuffle(q.cofiber.begin(), q.cofiber.end(), rng);
        AbelianGroup g = k0_group(q);
        CHECK(g.rank == base.rank);
        CHECK(g.torsion == base.torsion);
        CHECK_FALSE(class_map_violation(q, g));
    }
}
