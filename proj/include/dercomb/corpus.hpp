#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "dercomb/errors.hpp"
#include "dercomb/grothendieck.hpp"
#include "dercomb/ordcalc.hpp"
#include "dercomb/paperlib.hpp"
#include "dercomb/simplicial.hpp"

namespace dercomb {

struct ClaimResult {
    std::string id;
    std::string location;
    bool pass = false;
    std::string witness;
    double elapsed_ms = 0;
};

struct VerificationReport {
    std::vector<ClaimResult> claims;
    std::size_t passed = 0;
    std::size_t failed = 0;

    bool all_pass() const { return failed == 0; }
};

struct CorpusOptions {
    int max_n = 6;
    std::string filter;
    unsigned jobs = 1;
    unsigned seed = 0x5eedu;
    /// swindle sizes checked besides max_n
    std::vector<int> swindle_sizes{20};
    /// formula used for ℓ in the detection claims (tests swap in a bad one)
    EllFormula ell = ell_value;
};

/// A claim is evaluated lazily; `run` may produce several checks that must
/// all pass.
struct Claim {
    std::string id;
    std::string location;
    std::function<Check()> run;
};

namespace detail {

inline Check pick(const std::vector<Check>& cs, const std::string& id) {
    for (const auto& c : cs)
        if (c.id == id) return c;
    return {id, "", false, "check was not produced"};
}

template <class Make>
void add_group(std::vector<Claim>& out, const std::vector<std::pair<std::string, std::string>>& ids, Make make) {
    for (const auto& [id, loc] : ids) {
        out.push_back({id, loc, [make, id = id]() { return pick(make().checks, id); }});
    }
}

inline Check ordcalc_decomposition(int n) {
    std::string id = "ordcalc.decomposition." + std::to_string(n);
    for (const auto& v : monotone_maps(n, 1)) {
        MonotoneMap phi = MonotoneMap::between_ordinals(1, v);
        if (auto w = decomposition_violation(phi)) return {id, "", false, "φ=" + tuple_of(v).str() + ": " + *w};
    }
    return {id, "", true, ""};
}

inline Check ordcalc_interval(int n) {
    std::string id = "ordcalc.interval." + std::to_string(n);
    auto fail = [&](const std::vector<int>& v, const std::string& w) {
        return Check{id, "", false, "φ=" + tuple_of(v).str() + ": " + w};
    };
    for (const auto& v : monotone_maps(n, 1)) {
        MonotoneMap phi = MonotoneMap::between_ordinals(1, v);
        IntervalData d = interval_data(phi);
        if (!d.zeta) return fail(v, "d ≤ e fails pointwise");
        bool all0 = std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
        bool all1 = std::all_of(v.begin(), v.end(), [](int x) { return x == 1; });
        if (all0 && !(d.d == d.e)) return fail(v, "d and e differ at φ=0");
        if (all1) {
            // positions of φ⁻¹(s) and A∗A agree; d, e are the block inclusions
            if (d.d.values() != d.i0.values() || d.e.values() != d.i1.values())
                return fail(v, "d, e are not i₀, i₁ at φ=1");
            int last_d = d.d.values().back(), first_e = d.e.values().front();
            if (!(last_d < first_e)) return fail(v, "some d-value does not precede every e-value");
        }
        // over φ = 1, d lands in the middle block and e in the last, so every d-value precedes every e-value;
        // over φ = 0 the two agree
        for (std::size_t a = 0; a < v.size(); ++a) {
            if (v[a] == 0 && d.d.values()[a] != d.e.values()[a]) return fail(v, "d and e differ over 0");
            for (std::size_t b = 0; b < v.size(); ++b)
                if (v[a] == 1 && v[b] == 1 && !(d.d.values()[a] < d.e.values()[b]))
                    return fail(v, "d-value does not precede an e-value over 1");
        }
    }
    return {id, "", true, ""};
}

/// ψ′ monotone and d∘ψ = ψ′∘d, e∘ψ = ψ′∘e, for all ψ: [b] → [a], φ: [a] → [1].
inline Check ordcalc_functoriality(int a) {
    std::string id = "ordcalc.functoriality." + std::to_string(a + 1);
    for (const auto& pv : monotone_maps(a, 1)) {
        MonotoneMap phi = MonotoneMap::between_ordinals(1, pv);
        IntervalData target = interval_data(phi);
        for (int b = 0; b <= 4; ++b)
            for (const auto& sv : monotone_maps(b, a)) {
                MonotoneMap psi = MonotoneMap::between_ordinals(a, sv);
                std::string where = "φ=" + tuple_of(pv).str() + " ψ=" + tuple_of(sv).str();
                try {
                    MonotoneMap pp = induced_map(phi, psi);
                    IntervalData source = interval_data(compose(phi, psi));
                    if (!(compose(target.d, psi) == compose(pp, source.d))) return {id, "", false, where + ": d does not commute"};
                    if (!(compose(target.e, psi) == compose(pp, source.e))) return {id, "", false, where + ": e does not commute"};
                } catch (const std::exception& e) {
                    return {id, "", false, where + ": " + e.what()};
                }
            }
    }
    return {id, "", true, ""};
}

inline Check cylinder_ends(int m) {
    std::string id = "cylinder." + std::to_string(m) + ".ends";
    const int trunc = 3;
    SSet x = nerve(ordinal(m), 2 * trunc + 1);
    Cylinder c = cylinder(x, trunc);
    Subobject f0 = fiber(c.proj, 0);
    Subobject f1 = fiber(c.proj, 1);
    SSet base = truncate(x, trunc);
    SSet sub = sub2(x, trunc);
    if (!sset_iso(base, f0.sset, corestrict(c.e0, f0))) return {id, "", false, "φ=0 slice is not isomorphic to X"};
    if (!sset_iso(sub, f1.sset, corestrict(c.e1, f1))) return {id, "", false, "φ=1 slice is not isomorphic to sub₂X"};
    if (!c.e0.injective() || !c.e1.injective()) return {id, "", false, "end inclusions are not injective"};
    return {id, "", true, ""};
}

inline Check sset_valid(const std::string& id, const SSet& x, unsigned seed) {
    Validation v = validate_sset(x, seed);
    return {id, "", v.ok, v.witness};
}

/// (PY)₀ = Y₁ and d0_proj ∘ vertex_incl is the degenerate simplex at the target vertex.
inline Check path_contract(int m) {
    std::string id = "path-space." + std::to_string(m) + ".contract";
    const int trunc = 3;
    SSet y = nerve(ordinal(m), trunc + 1);
    PathSpace p = path_space(y, trunc);
    if (p.space.level(0) != y.level(1)) return {id, "", false, "(PY)₀ differs from Y₁"};
    SMap comp = compose(p.d0_proj, p.vertex_incl);
    for (int n = 0; n <= trunc; ++n)
        for (int s = 0; s < y.size(1); ++s) {
            int v = y.act(DeltaMap{1, {1}}, s);
            int want = y.act(DeltaMap{0, std::vector<int>(static_cast<std::size_t>(n + 1), 0)}, v);
            if (comp(n, s) != want)
                return {id, "", false, "level " + std::to_string(n) + " at " + y.simplex(1, s).str()};
        }
    return {id, "", true, ""};
}

inline Check k0_claim(const std::string& id, const K0Presentation& p, std::size_t rank,
                      const std::vector<Integer>& torsion) {
    AbelianGroup g = k0_group(p);
    if (g.rank != rank || g.torsion != torsion)
        return {id, "", false, "got rank " + std::to_string(g.rank) + " with " + std::to_string(g.torsion.size()) + " torsion factors"};
    if (auto v = class_map_violation(p, g)) return {id, "", false, *v};
    return {id, "", true, ""};
}

inline Check k0_shuffles(unsigned seed) {
    std::string id = "k0.permutation-invariance";
    K0Presentation p;
    for (int i = 0; i < 6; ++i) p.generators.emplace_back("x" + std::to_string(i));
    p.cofiber = {{"x0", "x1", "x2"}, {"x1", "x3", "x1"}, {"x2", "x4", "x2"}, {"x4", "x4", "x4"}};
    p.iso = {{"x5", "x3"}};
    p.zero = {};
    AbelianGroup base = k0_group(p);
    std::mt19937 rng(seed);
    for (int t = 0; t < 20; ++t) {
        K0Presentation q = p;
        std::shuffle(q.generators.begin(), q.generators.end(), rng);
        std::shuffle(q.cofiber.begin(), q.cofiber.end(), rng);
        AbelianGroup g = k0_group(q);
        if (g.rank != base.rank || g.torsion != base.torsion) return {id, "", false, "shuffle " + std::to_string(t) + " changes the group"};
        if (auto v = class_map_violation(q, g)) return {id, "", false, *v};
    }
    return {id, "", true, ""};
}

} // namespace detail

/// All claims in their fixed order.
inline std::vector<Claim> corpus_claims(const CorpusOptions& opt) {
    if (opt.max_n < 2) throw InputError("max_n must be at least 2");
    using detail::add_group;
    std::vector<Claim> out;
    const std::string chain = "coproduct inclusion chain e⊔e → ⌐ → □ → J → [1]×[2]";
    add_group(out,
              {{"sigma-chain.i-cosieve", chain},
               {"sigma-chain.i-corner-sieve", chain},
               {"sigma-chain.i-square-sieve", chain},
               {"sigma-chain.j-sieve", chain},
               {"sigma-chain.r-fully-faithful", chain + "; r is the bottom square"}},
              [] { return sigma_chain(); });

    out.push_back({"inclusion.i1-corner-sieve", "i_[1]: [1] → ⌐ onto (0,0)→(1,0)", [] {
                       CatPtr one = ordinal(1);
                       auto cn = corner();
                       Functor u = Functor::from_labels(one, cn.category, [](const Label& l) { return tup(l.as_int(), 0); });
                       return detail::inclusion_check("inclusion.i1-corner-sieve", "", u, detail::Expect::sieve);
                   }});
    out.push_back({"inclusion.t-cosieve", "t: e → [1] onto the target", [] {
                       Functor t = Functor::from_labels(point(), ordinal(1), [](const Label&) { return Label(1); });
                       return detail::inclusion_check("inclusion.t-cosieve", "", t, detail::Expect::cosieve);
                   }});
    out.push_back({"inclusion.s-sieve", "s: [1] → Ar[1] onto (0,0)→(0,1)", [] {
                       Functor s = Functor::from_labels(ordinal(1), arrow_ordinal(1), [](const Label& l) { return tup(0, l.as_int()); });
                       return detail::inclusion_check("inclusion.s-sieve", "", s, detail::Expect::sieve);
                   }});

    const std::string xi = "cofiber-sequence square functor ξ: □×□ → □";
    add_group(out, {{"xi.functor", xi}, {"xi.printed-values", xi + "; case table"}, {"xi.arrow-example", xi + "; worked arrow"}},
              [] { return cofiber_square_functor(); });

    out.push_back({"detection.ell-printed-values", "tabulated ℓ on B^{0,1} ⊂ Ar[3]", [] {
                       Check c{"detection.ell-printed-values", "", true, ""};
                       const std::vector<std::pair<std::pair<int, int>, Label>> want = {
                           {{0, 2}, tup(0, 1)}, {{1, 1}, tup(1, 0)}, {{0, 0}, tup(0, 0)}, {{0, 1}, tup(0, 0)}};
                       Detection d = detection(3, 0, 1);
                       std::set<Label> objs(d.b->objects().begin(), d.b->objects().end());
                       if (objs != std::set<Label>{tup(0, 0), tup(0, 1), tup(0, 2), tup(1, 1)}) {
                           c.pass = false;
                           c.witness = "B^{0,1} has the wrong objects";
                       }
                       for (const auto& [pq, v] : want)
                           if (!(ell_printed(0, 1, pq.first, pq.second) == v)) {
                               c.pass = false;
                               c.witness = "ℓ" + tup(pq.first, pq.second).str() + " != " + v.str();
                           }
                       return c;
                   }});
    out.push_back({"detection.s2-square", "ι_{0,1}: □ → Ar[2]", [] {
                       Detection d = detection(2, 0, 1);
                       std::set<Label> img;
                       CatPtr sq = square();
                       for (const auto& o : sq->objects()) img.insert(d.iota->image_label(o));
                       bool ok = img == std::set<Label>{tup(0, 1), tup(0, 2), tup(1, 1), tup(1, 2)};
                       return Check{"detection.s2-square", "", ok, ok ? "" : "corners differ"};
                   }});

    for (int n = 2; n <= opt.max_n; ++n) {
        const std::string p = "sdot." + std::to_string(n) + ".";
        const std::string loc = "S_" + std::to_string(n) + " indexing on Ar[" + std::to_string(n) + "]";
        add_group(out,
                  {{p + "j-fully-faithful", loc},
                   {p + "i0-cosieve", loc},
                   {p + "i1-sieve", loc},
                   {p + "i2-fully-faithful", loc},
                   {p + "d-objects", loc}},
                  [n] { return sdot_functors(n); });
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j <= n - 1; ++j) {
                const std::string dp = "detection." + std::to_string(n) + "." + std::to_string(i) + "." + std::to_string(j) + ".";
                const std::string dl = "square detection for ι_{" + std::to_string(i) + "," + std::to_string(j) + "} in Ar[" + std::to_string(n) + "]";
                add_group(out,
                          {{dp + "iota-fully-faithful", dl},
                           {dp + "comma", dl},
                           {dp + "corner-outside-d", dl},
                           {dp + "adjunction", dl}},
                          [n, i, j, ell = opt.ell] { return detection(n, i, j, ell); });
            }
        const std::string rp = "relative." + std::to_string(n) + ".";
        add_group(out, {{rp + "p-functor", "p_n: Ar[n]×□ → Ar[n]"}, {rp + "q-functor", "q_n: Ar[n+1]×□ → Ar[n+1]"}},
                  [n] { return relative_functors(n); });
        const std::string sp = "sdot-squares." + std::to_string(n) + ".";
        const std::string sl = "fully faithful squares □ → Ar[" + std::to_string(n) + "]";
        add_group(out, {{sp + "fully-faithful", sl}, {sp + "pasting", sl}, {sp + "detection-squares", sl}},
                  [n] { return sdot_squares(n); });
    }

    out.push_back({"relative.2.p-values", "p_2 spot values", [] {
                       RelativeFunctors r = relative_functors(2);
                       std::vector<std::pair<Label, Label>> want = {{tuple_of({1, 2, 1, 1}), tup(1, 2)},
                                                                    {tuple_of({0, 2, 0, 0}), tup(0, 0)},
                                                                    {tuple_of({1, 2, 0, 1}), tup(0, 0)}};
                       for (const auto& [x, v] : want)
                           if (!r.p || !(r.p->image_label(x) == v)) return Check{"relative.2.p-values", "", false, "p_2" + x.str()};
                       return Check{"relative.2.p-values", "", true, ""};
                   }});
    out.push_back({"relative.2.q-values", "q_2 spot values", [] {
                       RelativeFunctors r = relative_functors(2);
                       std::vector<std::pair<Label, Label>> want = {
                           {tuple_of({0, 0, 0, 0}), tup(0, 0)}, {tuple_of({0, 2, 0, 0}), tup(0, 1)},
                           {tuple_of({2, 2, 0, 0}), tup(1, 1)}, {tuple_of({0, 0, 1, 1}), tup(1, 1)},
                           {tuple_of({0, 2, 1, 1}), tup(1, 2)}, {tuple_of({1, 2, 1, 1}), tup(1, 2)}};
                       for (const auto& [x, v] : want)
                           if (!r.q || !(r.q->image_label(x) == v)) return Check{"relative.2.q-values", "", false, "q_2" + x.str()};
                       return Check{"relative.2.q-values", "", true, ""};
                   }});
    for (int n = 2; n <= opt.max_n; ++n) {
        out.push_back({"sdot-squares." + std::to_string(n) + ".counts", "rectangle and diagonal-anchored counts", [n] {
                           SdotSquares s = sdot_squares(n);
                           // i < i′ ≤ j < j′ in {0..n}: choose positions with i′ = j allowed
                           std::size_t want = 0, want_diag = 0;
                           for (int i = 0; i <= n; ++i)
                               for (int ip = i + 1; ip <= n; ++ip)
                                   for (int j = ip; j <= n; ++j)
                                       for (int jp = j + 1; jp <= n; ++jp) {
                                           ++want;
                                           if (ip == j) ++want_diag;
                                       }
                           bool ok = s.rectangles.size() == want && s.diagonal_anchored.size() == want_diag;
                           if (n == 2) ok = ok && want == 1 && want_diag == 1;
                           if (n == 3) ok = ok && want == 5 && want_diag == 4;
                           return Check{"sdot-squares." + std::to_string(n) + ".counts", "", ok,
                                        ok ? "" : std::to_string(s.rectangles.size()) + "/" + std::to_string(s.diagonal_anchored.size())};
                       }});
    }

    std::vector<int> sizes{opt.max_n};
    for (int s : opt.swindle_sizes)
        if (std::find(sizes.begin(), sizes.end(), s) == sizes.end()) sizes.push_back(s);
    for (int n : sizes) {
        const std::string p = "swindle." + std::to_string(n) + ".";
        const std::string loc = "swindle category Γ_s truncated at N=" + std::to_string(n);
        add_group(out, {{p + "p0-discrete", loc}, {p + "p1-whole", loc}, {p + "adjunction", loc}},
                  [n] { return swindle_category(n); });
    }
    out.push_back({"swindle.3.counts", "Γ_s at N=3", [] {
                       Swindle s = swindle_category(3);
                       const FinCat& c = *s.over1->category;
                       std::size_t arrows = c.morphism_count() - c.object_count();
                       bool ok = s.over0->category->object_count() == 4 && c.object_count() == 9 && arrows == 4;
                       return Check{"swindle.3.counts", "", ok, ok ? "" : "unexpected sizes"};
                   }});

    for (int n = 0; n <= 8; ++n) {
        out.push_back({"ordcalc.decomposition." + std::to_string(n), "φ⁻¹(s) ≅ φ⁻¹(0)∗φ⁻¹(1)∗φ⁻¹(1) for φ: [" + std::to_string(n) + "] → [1]",
                       [n] { return detail::ordcalc_decomposition(n); }});
        out.push_back({"ordcalc.interval." + std::to_string(n), "d, e: A → φ⁻¹(s) with d ≤ e, A = [" + std::to_string(n) + "]",
                       [n] { return detail::ordcalc_interval(n); }});
    }
    for (int a = 0; a <= 4; ++a)
        out.push_back({"ordcalc.functoriality." + std::to_string(a + 1), "ψ′ commutes with d and e, |A| = " + std::to_string(a + 1),
                       [a] { return detail::ordcalc_functoriality(a); }});

    for (int m = 0; m <= 3; ++m) {
        out.push_back({"cylinder." + std::to_string(m) + ".ends", "ends of I N([" + std::to_string(m) + "]) at truncation 3",
                       [m] { return detail::cylinder_ends(m); }});
        out.push_back({"path-space." + std::to_string(m) + ".contract", "P N([" + std::to_string(m) + "]) vertex inclusion and projection",
                       [m] { return detail::path_contract(m); }});
    }
    const unsigned seed = opt.seed;
    out.push_back({"simplicial.nerve-valid", "nerve of [2] and □ at truncation 4", [seed] {
                       Check a = detail::sset_valid("simplicial.nerve-valid", nerve(ordinal(2), 4), seed);
                       if (!a.pass) return a;
                       return detail::sset_valid("simplicial.nerve-valid", nerve(square(), 4), seed);
                   }});
    out.push_back({"simplicial.sub2-valid", "sub₂ N([2]) at truncation 4", [seed] {
                       return detail::sset_valid("simplicial.sub2-valid", sub2(nerve(ordinal(2), 9), 4), seed);
                   }});
    out.push_back({"simplicial.path-space-valid", "P N([2]) at truncation 4", [seed] {
                       return detail::sset_valid("simplicial.path-space-valid", path_space(nerve(ordinal(2), 5), 4).space, seed);
                   }});
    out.push_back({"simplicial.cylinder-valid", "I N([1]) at truncation 4", [seed] {
                       return detail::sset_valid("simplicial.cylinder-valid", cylinder(nerve(ordinal(1), 9), 4).space, seed);
                   }});

    out.push_back({"k0.cofiber-rank", "K₀ with [b] = [a] + [c]", [] {
                       K0Presentation p{{"a", "b", "c"}, {{"a", "b", "c"}}, {}, {}};
                       return detail::k0_claim("k0.cofiber-rank", p, 2, {});
                   }});
    out.push_back({"k0.swindle-trivial", "K₀ with [x] = [x] + [x]", [] {
                       K0Presentation p{{"x"}, {{"x", "x", "x"}}, {}, {}};
                       return detail::k0_claim("k0.swindle-trivial", p, 0, {});
                   }});
    out.push_back({"k0.permutation-invariance", "K₀ invariant factors under 20 shuffles",
                   [seed] { return detail::k0_shuffles(seed); }});

    if (!opt.filter.empty()) {
        std::vector<Claim> kept;
        for (auto& c : out)
            if (c.id.rfind(opt.filter, 0) == 0) kept.push_back(std::move(c));
        if (kept.empty()) throw InputError("no claim id starts with '" + opt.filter + "'");
        out = std::move(kept);
    }
    return out;
}

/// Runs claims on up to `jobs` threads; the report keeps the claim order.
inline VerificationReport run_claims(const std::vector<Claim>& claims, unsigned jobs) {
    VerificationReport rep;
    rep.claims.resize(claims.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < claims.size();) {
            auto t0 = std::chrono::steady_clock::now();
            ClaimResult r{claims[k].id, claims[k].location, false, "", 0};
            try {
                Check c = claims[k].run();
                r.pass = c.pass;
                r.witness = c.witness;
            } catch (const std::exception& e) {
                r.witness = std::string("exception: ") + e.what();
            }
            r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            rep.claims[k] = std::move(r);
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, claims.size()))));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (const auto& c : rep.claims) (c.pass ? rep.passed : rep.failed)++;
    return rep;
}

inline VerificationReport verify_corpus(const CorpusOptions& opt) { return run_claims(corpus_claims(opt), opt.jobs); }

} // namespace dercomb
