#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dercomb/errors.hpp"
#include "dercomb/fincat.hpp"
#include "dercomb/label.hpp"
#include "dercomb/ordcalc.hpp"

namespace dercomb {

/// A monotone map α: [m] → [cod] with m = values.size() - 1.
struct DeltaMap {
    int cod = 0;
    std::vector<int> values;

    int dom() const { return static_cast<int>(values.size()) - 1; }
    int operator()(int i) const { return values[static_cast<std::size_t>(i)]; }

    bool is_identity() const {
        if (dom() != cod) return false;
        for (int i = 0; i <= cod; ++i)
            if (values[static_cast<std::size_t>(i)] != i) return false;
        return true;
    }

    std::string str() const {
        std::string s = "[" + std::to_string(dom()) + "]->[" + std::to_string(cod) + "] (";
        for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + std::to_string(values[i]);
        return s + ")";
    }

    friend bool operator==(const DeltaMap&, const DeltaMap&) = default;
    friend auto operator<=>(const DeltaMap&, const DeltaMap&) = default;
};

inline DeltaMap identity_delta(int k) {
    DeltaMap a{k, {}};
    for (int i = 0; i <= k; ++i) a.values.push_back(i);
    return a;
}

/// δ^i: [k-1] → [k], skipping i.
inline DeltaMap coface(int k, int i) {
    DeltaMap a{k, {}};
    for (int t = 0; t < k; ++t) a.values.push_back(t < i ? t : t + 1);
    return a;
}

/// σ^j: [k+1] → [k], hitting j twice.
inline DeltaMap codegeneracy(int k, int j) {
    DeltaMap a{k, {}};
    for (int t = 0; t <= k + 1; ++t) a.values.push_back(t <= j ? t : t - 1);
    return a;
}

/// a ∘ b
inline DeltaMap compose(const DeltaMap& a, const DeltaMap& b) {
    if (b.cod != a.dom()) throw InputError("delta maps are not composable");
    DeltaMap r{a.cod, {}};
    for (int v : b.values) r.values.push_back(a(v));
    return r;
}

inline std::vector<DeltaMap> all_delta_maps(int m, int k) {
    std::vector<DeltaMap> out;
    for (auto& v : monotone_maps(m, k)) out.push_back({k, std::move(v)});
    return out;
}

inline DeltaMap to_delta(const MonotoneMap& f) { return {f.target().size() - 1, f.values()}; }

class SSet;

/// Truncated simplicial set. Simplices at level k are labelled; the action of
/// α: [m] → [k] is a table sending level-k indices to level-m indices.
///
/// Handles share one immutable body (tables are memoized behind a mutex).
class SSet {
public:
    using Table = std::vector<int>;
    using ActionFn = std::function<Table(const SSet& self, const DeltaMap& alpha)>;

    SSet(int trunc, std::vector<std::vector<Label>> levels, ActionFn action) : impl_(std::make_shared<Impl>()) {
        if (trunc < 0) throw InputError("truncation must be >= 0");
        if (static_cast<int>(levels.size()) != trunc + 1) throw InputError("need one level per dimension 0..N");
        impl_->trunc = trunc;
        impl_->levels = std::move(levels);
        impl_->action = std::move(action);
        impl_->index.resize(impl_->levels.size());
        for (std::size_t k = 0; k < impl_->levels.size(); ++k)
            for (std::size_t i = 0; i < impl_->levels[k].size(); ++i)
                if (!impl_->index[k].emplace(impl_->levels[k][i], static_cast<int>(i)).second)
                    throw InputError("duplicate simplex " + impl_->levels[k][i].str() + " in level " +
                                     std::to_string(k));
    }

    int truncation() const { return impl_->trunc; }
    const std::vector<Label>& level(int k) const { return impl_->levels.at(static_cast<std::size_t>(k)); }
    int size(int k) const { return static_cast<int>(level(k).size()); }
    const Label& simplex(int k, int x) const { return level(k).at(static_cast<std::size_t>(x)); }

    std::optional<int> find(int k, const Label& l) const {
        const auto& idx = impl_->index.at(static_cast<std::size_t>(k));
        auto it = idx.find(l);
        if (it == idx.end()) return std::nullopt;
        return it->second;
    }

    int index_of(int k, const Label& l) const {
        if (auto x = find(k, l)) return *x;
        throw InputError("no simplex " + l.str() + " in level " + std::to_string(k));
    }

    const Table& table(const DeltaMap& a) const {
        if (a.dom() < 0 || a.dom() > impl_->trunc || a.cod > impl_->trunc)
            throw TruncationError("map " + a.str() + " leaves the truncation " + std::to_string(impl_->trunc));
        {
            std::lock_guard<std::mutex> lock(impl_->mutex);
            auto it = impl_->cache.find(a);
            if (it != impl_->cache.end()) return *it->second;
        }
        auto t = std::make_shared<Table>(impl_->action(*this, a));
        if (static_cast<int>(t->size()) != size(a.cod))
            throw LawViolation("action table for " + a.str() + " has the wrong size");
        for (int v : *t)
            if (v < 0 || v >= size(a.dom()))
                throw LawViolation("action table for " + a.str() + " leaves level " + std::to_string(a.dom()));
        std::lock_guard<std::mutex> lock(impl_->mutex);
        return *impl_->cache.emplace(a, std::move(t)).first->second;
    }

    int act(const DeltaMap& a, int x) const { return table(a)[static_cast<std::size_t>(x)]; }
    int face(int k, int i, int x) const { return act(coface(k, i), x); }
    int degeneracy(int k, int j, int x) const { return act(codegeneracy(k, j), x); }

    bool same_levels(const SSet& o) const {
        if (truncation() != o.truncation()) return false;
        for (int k = 0; k <= truncation(); ++k)
            if (level(k) != o.level(k)) return false;
        return true;
    }

    bool same_handle(const SSet& o) const { return impl_ == o.impl_; }

private:
    struct Impl {
        int trunc = 0;
        std::vector<std::vector<Label>> levels;
        std::vector<std::unordered_map<Label, int, LabelHash>> index;
        ActionFn action;
        std::mutex mutex;
        std::map<DeltaMap, std::shared_ptr<const Table>> cache;
    };
    std::shared_ptr<Impl> impl_;
};

inline SSet::Table identity_table(int n) {
    SSet::Table t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = i;
    return t;
}

/// A simplicial set from face tables faces[k][i] (level k → k-1, k ≥ 1) and
/// degeneracy tables degeneracies[k][j] (level k → k+1, k < N). The full
/// action is assembled by factoring each α into cofaces and codegeneracies.
inline SSet tabulated_sset(int trunc, std::vector<std::vector<Label>> levels,
                           std::vector<std::vector<SSet::Table>> faces,
                           std::vector<std::vector<SSet::Table>> degeneracies) {
    if (static_cast<int>(faces.size()) != trunc + 1) throw InputError("faces must list levels 0..N");
    if (static_cast<int>(degeneracies.size()) != trunc + 1) throw InputError("degeneracies must list levels 0..N");
    for (int k = 0; k <= trunc; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        std::size_t nf = k == 0 ? 0 : ks + 1;
        std::size_t nd = k == trunc ? 0 : ks + 1;
        if (faces[ks].size() != nf) throw InputError("level " + std::to_string(k) + " needs " + std::to_string(nf) + " face maps");
        if (degeneracies[ks].size() != nd)
            throw InputError("level " + std::to_string(k) + " needs " + std::to_string(nd) + " degeneracy maps");
        for (const auto& t : faces[ks]) {
            if (t.size() != levels[ks].size()) throw InputError("face table has wrong length at level " + std::to_string(k));
            for (int v : t)
                if (v < 0 || v >= static_cast<int>(levels[ks - 1].size())) throw InputError("face value out of range");
        }
        for (const auto& t : degeneracies[ks]) {
            if (t.size() != levels[ks].size())
                throw InputError("degeneracy table has wrong length at level " + std::to_string(k));
            for (int v : t)
                if (v < 0 || v >= static_cast<int>(levels[ks + 1].size())) throw InputError("degeneracy value out of range");
        }
    }
    auto fc = std::make_shared<std::vector<std::vector<SSet::Table>>>(std::move(faces));
    auto dg = std::make_shared<std::vector<std::vector<SSet::Table>>>(std::move(degeneracies));
    return SSet(trunc, std::move(levels), [fc, dg](const SSet& self, const DeltaMap& a) -> SSet::Table {
        const int m = a.dom();
        if (a.is_identity()) return identity_table(self.size(m));
        for (int i = 0; i < m; ++i) {
            if (a(i) != a(i + 1)) continue;
            // α = α' ∘ σ^i, so α* = s_i ∘ α'*
            DeltaMap rest{a.cod, a.values};
            rest.values.erase(rest.values.begin() + i + 1);
            const auto& inner = self.table(rest);
            const auto& s = (*dg)[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(i)];
            SSet::Table t;
            for (int x : inner) t.push_back(s[static_cast<std::size_t>(x)]);
            return t;
        }
        // injective: α = δ^j ∘ α' with j the largest value missed, α* = α'* ∘ d_j
        int j = a.cod;
        while (std::find(a.values.begin(), a.values.end(), j) != a.values.end()) --j;
        DeltaMap rest{a.cod - 1, {}};
        for (int v : a.values) rest.values.push_back(v < j ? v : v - 1);
        const auto& d = (*fc)[static_cast<std::size_t>(a.cod)][static_cast<std::size_t>(j)];
        const auto& inner = self.table(rest);
        SSet::Table t;
        for (int x : d) t.push_back(inner[static_cast<std::size_t>(x)]);
        return t;
    });
}

inline SSet truncate(const SSet& x, int n) {
    if (n > x.truncation()) throw TruncationError("cannot truncate to " + std::to_string(n) + " above " + std::to_string(x.truncation()));
    std::vector<std::vector<Label>> lv;
    for (int k = 0; k <= n; ++k) lv.push_back(x.level(k));
    return SSet(n, std::move(lv), [x](const SSet&, const DeltaMap& a) { return x.table(a); });
}

/// Every level equal to `labels`, every map acting as the identity.
inline SSet constant_sset(const std::vector<Label>& labels, int trunc) {
    std::vector<std::vector<Label>> lv(static_cast<std::size_t>(trunc + 1), labels);
    return SSet(trunc, std::move(lv),
                [](const SSet& self, const DeltaMap& a) { return identity_table(self.size(a.cod)); });
}

/// Levels plus the generator tables, enough to rebuild the whole action.
struct SSetTables {
    std::vector<std::vector<SSet::Table>> faces;
    std::vector<std::vector<SSet::Table>> degeneracies;
};

inline SSetTables generator_tables(const SSet& x) {
    SSetTables t;
    const int n = x.truncation();
    for (int k = 0; k <= n; ++k) {
        std::vector<SSet::Table> f, d;
        if (k > 0)
            for (int i = 0; i <= k; ++i) f.push_back(x.table(coface(k, i)));
        if (k < n)
            for (int j = 0; j <= k; ++j) d.push_back(x.table(codegeneracy(k, j)));
        t.faces.push_back(std::move(f));
        t.degeneracies.push_back(std::move(d));
    }
    return t;
}

// ---------------------------------------------------------------------------
// Maps

inline std::optional<std::string> smap_violation(const SSet& x, const SSet& y,
                                                 const std::vector<std::vector<int>>& comps) {
    if (x.truncation() != y.truncation()) return std::string("source and target truncations differ");
    const int n = x.truncation();
    if (static_cast<int>(comps.size()) != n + 1) return std::string("need one component per level");
    for (int k = 0; k <= n; ++k) {
        if (static_cast<int>(comps[static_cast<std::size_t>(k)].size()) != x.size(k))
            return "component at level " + std::to_string(k) + " has the wrong size";
        for (int v : comps[static_cast<std::size_t>(k)])
            if (v < 0 || v >= y.size(k)) return "component at level " + std::to_string(k) + " leaves the target";
    }
    for (int k = 0; k <= n; ++k)
        for (int m = 0; m <= n; ++m)
            for (const auto& a : all_delta_maps(m, k)) {
                const auto& tx = x.table(a);
                const auto& ty = y.table(a);
                for (int s = 0; s < x.size(k); ++s) {
                    int lhs = comps[static_cast<std::size_t>(m)][static_cast<std::size_t>(tx[static_cast<std::size_t>(s)])];
                    int rhs = ty[static_cast<std::size_t>(comps[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)])];
                    if (lhs != rhs)
                        return "map does not commute with " + a.str() + " at " + x.simplex(k, s).str();
                }
            }
    return std::nullopt;
}

class SMap {
public:
    SMap(SSet source, SSet target, std::vector<std::vector<int>> components)
        : source_(std::move(source)), target_(std::move(target)), comps_(std::move(components)) {
        if (auto v = smap_violation(source_, target_, comps_)) throw LawViolation("not a simplicial map: " + *v);
    }

    const SSet& source() const { return source_; }
    const SSet& target() const { return target_; }
    const std::vector<int>& component(int k) const { return comps_.at(static_cast<std::size_t>(k)); }
    const std::vector<std::vector<int>>& components() const { return comps_; }
    int operator()(int k, int x) const { return component(k)[static_cast<std::size_t>(x)]; }

    bool injective() const {
        for (int k = 0; k <= source_.truncation(); ++k) {
            std::vector<bool> seen(static_cast<std::size_t>(target_.size(k)));
            for (int v : component(k)) {
                if (seen[static_cast<std::size_t>(v)]) return false;
                seen[static_cast<std::size_t>(v)] = true;
            }
        }
        return true;
    }

    bool bijective() const {
        for (int k = 0; k <= source_.truncation(); ++k)
            if (source_.size(k) != target_.size(k)) return false;
        return injective();
    }

private:
    SSet source_;
    SSet target_;
    std::vector<std::vector<int>> comps_;
};

/// g ∘ f
inline SMap compose(const SMap& g, const SMap& f) {
    std::vector<std::vector<int>> c;
    for (int k = 0; k <= f.source().truncation(); ++k) {
        std::vector<int> row;
        for (int v : f.component(k)) row.push_back(g(k, v));
        c.push_back(std::move(row));
    }
    return SMap(f.source(), g.target(), std::move(c));
}

inline SMap identity_smap(const SSet& x) {
    std::vector<std::vector<int>> c;
    for (int k = 0; k <= x.truncation(); ++k) c.push_back(identity_table(x.size(k)));
    return SMap(x, x, std::move(c));
}

// ---------------------------------------------------------------------------
// Validation

struct Validation {
    bool ok = true;
    std::string witness;
};

namespace detail {

inline std::optional<std::string> check_identity(const SSet& x, const DeltaMap& lhs2, const DeltaMap& lhs1,
                                                 const DeltaMap& rhs2, const DeltaMap& rhs1, int level,
                                                 const std::string& name) {
    // (lhs2)*(lhs1)* x versus (rhs2)*(rhs1)* x, reading as operators on simplices
    const auto& a1 = x.table(lhs1);
    const auto& a2 = x.table(lhs2);
    const auto& b1 = x.table(rhs1);
    const auto& b2 = x.table(rhs2);
    for (int s = 0; s < x.size(level); ++s) {
        int l = a2[static_cast<std::size_t>(a1[static_cast<std::size_t>(s)])];
        int r = b2[static_cast<std::size_t>(b1[static_cast<std::size_t>(s)])];
        if (l != r)
            return "simplicial identity " + name + " fails at level " + std::to_string(level) + " on " +
                   x.simplex(level, s).str();
    }
    return std::nullopt;
}

inline std::string idx(const char* op, int i) { return std::string(op) + "_" + std::to_string(i); }

} // namespace detail

/// Checks identities, the face/degeneracy identities, and functoriality of
/// the whole action: exhaustively for dimensions ≤ 4, plus seeded random
/// composites above that. Reports the first violation.
inline Validation validate_sset(const SSet& x, unsigned seed = 0x5eedu) {
    const int n = x.truncation();
    try {
        for (int k = 0; k <= n; ++k)
            if (x.table(identity_delta(k)) != identity_table(x.size(k)))
                return {false, "identity of [" + std::to_string(k) + "] does not act as the identity"};
        using detail::idx;
        // operators: d_i on level k is coface(k, i); s_j on level k is codegeneracy(k, j)
        for (int k = 2; k <= n; ++k)
            for (int j = 1; j <= k; ++j)
                for (int i = 0; i < j; ++i)
                    if (auto v = detail::check_identity(x, coface(k - 1, i), coface(k, j), coface(k - 1, j - 1),
                                                        coface(k, i), k,
                                                        idx("d", i) + " " + idx("d", j) + " = " + idx("d", j - 1) +
                                                            " " + idx("d", i)))
                        return {false, *v};
        for (int k = 0; k < n; ++k)
            for (int j = 0; j <= k; ++j) {
                auto sj = codegeneracy(k, j);
                auto id = identity_delta(k);
                for (int i = 0; i <= k + 1; ++i) {
                    std::optional<std::string> v;
                    if (i < j)
                        v = detail::check_identity(x, coface(k + 1, i), sj, codegeneracy(k - 1, j - 1), coface(k, i), k,
                                                   idx("d", i) + " " + idx("s", j) + " = " + idx("s", j - 1) + " " +
                                                       idx("d", i));
                    else if (i == j || i == j + 1)
                        v = detail::check_identity(x, coface(k + 1, i), sj, id, id, k,
                                                   idx("d", i) + " " + idx("s", j) + " = id");
                    else
                        v = detail::check_identity(x, coface(k + 1, i), sj, codegeneracy(k - 1, j), coface(k, i - 1), k,
                                                   idx("d", i) + " " + idx("s", j) + " = " + idx("s", j) + " " +
                                                       idx("d", i - 1));
                    if (v) return {false, *v};
                }
            }
        for (int k = 0; k + 2 <= n; ++k)
            for (int j = 0; j <= k; ++j)
                for (int i = 0; i <= j; ++i)
                    if (auto v = detail::check_identity(x, codegeneracy(k + 1, i), codegeneracy(k, j),
                                                        codegeneracy(k + 1, j + 1), codegeneracy(k, i), k,
                                                        idx("s", i) + " " + idx("s", j) + " = " + idx("s", j + 1) +
                                                            " " + idx("s", i)))
                        return {false, *v};

        auto check_pair = [&](const DeltaMap& a, const DeltaMap& b) -> std::optional<std::string> {
            // (a∘b)* = b* ∘ a*
            const auto& ta = x.table(a);
            const auto& tb = x.table(b);
            const auto& tab = x.table(compose(a, b));
            for (int s = 0; s < x.size(a.cod); ++s)
                if (tab[static_cast<std::size_t>(s)] != tb[static_cast<std::size_t>(ta[static_cast<std::size_t>(s)])])
                    return "functoriality fails for " + a.str() + " after " + b.str() + " on " +
                           x.simplex(a.cod, s).str();
            return std::nullopt;
        };
        const int ex = std::min(n, 4);
        std::vector<std::vector<std::vector<DeltaMap>>> maps(static_cast<std::size_t>(ex + 1));
        for (int m = 0; m <= ex; ++m)
            for (int k = 0; k <= ex; ++k) maps[static_cast<std::size_t>(m)].push_back(all_delta_maps(m, k));
        for (int l = 0; l <= ex; ++l)
            for (int m = 0; m <= ex; ++m)
                for (int k = 0; k <= ex; ++k)
                    for (const auto& b : maps[static_cast<std::size_t>(l)][static_cast<std::size_t>(m)])
                        for (const auto& a : maps[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)])
                            if (auto v = check_pair(a, b)) return {false, *v};
        if (n > ex) {
            std::mt19937 rng(seed);
            std::uniform_int_distribution<int> dim(0, n);
            auto random_map = [&](int m, int k) {
                std::uniform_int_distribution<int> val(0, k);
                DeltaMap a{k, {}};
                for (int i = 0; i <= m; ++i) a.values.push_back(val(rng));
                std::sort(a.values.begin(), a.values.end());
                return a;
            };
            for (int t = 0; t < 300; ++t) {
                int l = dim(rng), m = dim(rng), k = dim(rng);
                if (auto v = check_pair(random_map(m, k), random_map(l, m))) return {false, *v};
            }
        }
    } catch (const LawViolation& e) {
        return {false, e.what()};
    }
    return {};
}

/// Simplices at each level that are not degeneracies of lower ones.
inline std::vector<int> nondegenerate_counts(const SSet& x) {
    std::vector<int> out;
    for (int k = 0; k <= x.truncation(); ++k) {
        std::vector<bool> degen(static_cast<std::size_t>(x.size(k)));
        if (k > 0)
            for (int j = 0; j < k; ++j)
                for (int s = 0; s < x.size(k - 1); ++s) degen[static_cast<std::size_t>(x.degeneracy(k - 1, j, s))] = true;
        out.push_back(static_cast<int>(std::count(degen.begin(), degen.end(), false)));
    }
    return out;
}

inline int nondegenerate_count(const SSet& x) {
    int total = 0;
    for (int c : nondegenerate_counts(x)) total += c;
    return total;
}

// ---------------------------------------------------------------------------
// Constructions

/// Level k = functors [k] → C, i.e. composable chains x0 → ... → xk.
inline SSet nerve(const CatPtr& c, int trunc) {
    if (trunc < 0) throw InputError("dimension must be >= 0");
    struct Chain {
        std::vector<int> objects;
        std::vector<int> arrows;
    };
    auto chains = std::make_shared<std::vector<std::vector<Chain>>>();
    auto keys = std::make_shared<std::vector<std::map<std::vector<int>, int>>>();
    std::vector<std::vector<Label>> levels;
    const bool poset = c->is_poset();
    auto key_of = [poset](const Chain& ch) {
        if (poset) return ch.objects;
        std::vector<int> k{ch.objects.front()};
        k.insert(k.end(), ch.arrows.begin(), ch.arrows.end());
        return k;
    };
    std::vector<Chain> cur;
    for (int x = 0; x < static_cast<int>(c->object_count()); ++x) cur.push_back({{x}, {}});
    for (int k = 0; k <= trunc; ++k) {
        if (k > 0) {
            std::vector<Chain> next;
            for (const auto& ch : cur)
                for (int f = 0; f < static_cast<int>(c->morphism_count()); ++f)
                    if (c->source(f) == ch.objects.back()) {
                        Chain n2 = ch;
                        n2.objects.push_back(c->target(f));
                        n2.arrows.push_back(f);
                        next.push_back(std::move(n2));
                    }
            cur = std::move(next);
        }
        std::vector<Label> lv;
        std::map<std::vector<int>, int> km;
        for (const auto& ch : cur) {
            Label::Tuple obj;
            for (int o : ch.objects) obj.push_back(c->object(o));
            if (poset) {
                lv.emplace_back(std::move(obj));
            } else {
                Label::Tuple ar;
                for (int f : ch.arrows) ar.emplace_back(c->morphism(f).index);
                lv.push_back(tup(Label(std::move(obj)), Label(std::move(ar))));
            }
            km.emplace(key_of(ch), static_cast<int>(km.size()));
        }
        levels.push_back(std::move(lv));
        chains->push_back(cur);
        keys->push_back(std::move(km));
    }
    return SSet(trunc, std::move(levels), [c, chains, keys, key_of](const SSet&, const DeltaMap& a) {
        SSet::Table t;
        for (const auto& ch : (*chains)[static_cast<std::size_t>(a.cod)]) {
            Chain r;
            for (int i = 0; i <= a.dom(); ++i) r.objects.push_back(ch.objects[static_cast<std::size_t>(a(i))]);
            for (int i = 1; i <= a.dom(); ++i) {
                int g = c->identity(ch.objects[static_cast<std::size_t>(a(i - 1))]);
                for (int s = a(i - 1); s < a(i); ++s) g = *c->compose(ch.arrows[static_cast<std::size_t>(s)], g);
                r.arrows.push_back(g);
            }
            t.push_back((*keys)[static_cast<std::size_t>(a.dom())].at(key_of(r)));
        }
        return t;
    });
}

/// N(F): nerve(C) → nerve(D).
inline SMap nerve_map(const Functor& f, int trunc) {
    SSet x = nerve(f.source(), trunc);
    SSet y = nerve(f.target(), trunc);
    const FinCat& d = *f.target();
    std::vector<std::vector<int>> comps;
    for (int k = 0; k <= trunc; ++k) {
        std::vector<int> row;
        for (int s = 0; s < x.size(k); ++s) {
            const Label& l = x.simplex(k, s);
            Label image;
            if (f.source()->is_poset() && d.is_poset()) {
                Label::Tuple o;
                for (const auto& ob : l.as_tuple()) o.push_back(f.image_label(ob));
                image = Label(std::move(o));
            } else {
                // decode chain, map objects and arrows
                const FinCat& c = *f.source();
                Label::Tuple objs = f.source()->is_poset() ? l.as_tuple() : l[0].as_tuple();
                Label::Tuple o, ar;
                for (const auto& ob : objs) o.push_back(f.image_label(ob));
                for (int i = 1; i <= k; ++i) {
                    int xs = c.object_index(objs[static_cast<std::size_t>(i - 1)]);
                    int xt = c.object_index(objs[static_cast<std::size_t>(i)]);
                    int hi = c.is_poset() ? 0 : static_cast<int>(l[1][static_cast<std::size_t>(i - 1)].as_int());
                    int g = f.on_morphism(c.hom(xs, xt)[static_cast<std::size_t>(hi)]);
                    ar.emplace_back(d.morphism(g).index);
                }
                image = d.is_poset() ? Label(std::move(o)) : tup(Label(std::move(o)), Label(std::move(ar)));
            }
            row.push_back(y.index_of(k, image));
        }
        comps.push_back(std::move(row));
    }
    return SMap(x, y, std::move(comps));
}

inline DeltaMap doubled(const DeltaMap& a) {
    DeltaMap r{2 * a.cod + 1, {}};
    for (int v : a.values) r.values.push_back(v);
    for (int v : a.values) r.values.push_back(a.cod + 1 + v);
    return r;
}

/// sub₂X: level A is X(A∗A); ψ acts through ψ∗ψ. Needs X truncated at 2N+1.
inline SSet sub2(const SSet& x, int trunc) {
    if (x.truncation() < 2 * trunc + 1)
        throw TruncationError("sub2 at dimension " + std::to_string(trunc) + " needs input truncation " +
                              std::to_string(2 * trunc + 1) + ", have " + std::to_string(x.truncation()));
    std::vector<std::vector<Label>> lv;
    for (int k = 0; k <= trunc; ++k) lv.push_back(x.level(2 * k + 1));
    return SSet(trunc, std::move(lv), [x](const SSet&, const DeltaMap& a) { return x.table(doubled(a)); });
}

/// sub₂(f) for f: X → Y.
inline SMap sub2(const SMap& f, int trunc) {
    SSet x = sub2(f.source(), trunc);
    SSet y = sub2(f.target(), trunc);
    std::vector<std::vector<int>> c;
    for (int k = 0; k <= trunc; ++k) c.push_back(f.component(2 * k + 1));
    return SMap(x, y, std::move(c));
}

inline DeltaMap shifted(const DeltaMap& a) {
    DeltaMap r{a.cod + 1, {0}};
    for (int v : a.values) r.values.push_back(v + 1);
    return r;
}

struct PathSpace {
    SSet space;
    /// PX → X (truncated), induced by i ↦ i+1
    SMap d0_proj;
    /// const(X₁) → PX via σ_n: [n+1] → [1]
    SMap vertex_incl;
};

/// σ_n: [n+1] → [1], 0 ↦ 0 and everything else ↦ 1
inline DeltaMap vertex_degeneracy(int n) {
    DeltaMap a{1, {0}};
    for (int i = 1; i <= n + 1; ++i) a.values.push_back(1);
    return a;
}

/// PX: level n is X level n+1 with the shifted action. Needs X truncated at N+1.
inline PathSpace path_space(const SSet& x, int trunc) {
    if (x.truncation() < trunc + 1)
        throw TruncationError("path space at dimension " + std::to_string(trunc) + " needs input truncation " +
                              std::to_string(trunc + 1) + ", have " + std::to_string(x.truncation()));
    std::vector<std::vector<Label>> lv;
    for (int k = 0; k <= trunc; ++k) lv.push_back(x.level(k + 1));
    SSet px(trunc, std::move(lv), [x](const SSet&, const DeltaMap& a) { return x.table(shifted(a)); });
    SSet base = truncate(x, trunc);
    std::vector<std::vector<int>> proj, incl;
    for (int k = 0; k <= trunc; ++k) {
        proj.push_back(x.table(coface(k + 1, 0)));
        incl.push_back(x.table(vertex_degeneracy(k)));
    }
    SSet konst = constant_sset(x.level(1), trunc);
    return {px, SMap(px, base, std::move(proj)), SMap(konst, px, std::move(incl))};
}

struct Subobject {
    SSet sset;
    SMap inclusion;
};

/// The sub-simplicial set on the simplices accepted by `keep`; the selection
/// must be closed under the action.
inline Subobject subobject(const SSet& x, const std::function<bool(int, int)>& keep) {
    const int n = x.truncation();
    auto pos = std::make_shared<std::vector<std::vector<int>>>();
    auto members = std::make_shared<std::vector<std::vector<int>>>();
    std::vector<std::vector<Label>> lv;
    for (int k = 0; k <= n; ++k) {
        std::vector<int> p(static_cast<std::size_t>(x.size(k)), -1), mem;
        std::vector<Label> l;
        for (int s = 0; s < x.size(k); ++s)
            if (keep(k, s)) {
                p[static_cast<std::size_t>(s)] = static_cast<int>(mem.size());
                mem.push_back(s);
                l.push_back(x.simplex(k, s));
            }
        pos->push_back(std::move(p));
        members->push_back(std::move(mem));
        lv.push_back(std::move(l));
    }
    SSet sub(n, std::move(lv), [x, pos, members](const SSet&, const DeltaMap& a) {
        const auto& t = x.table(a);
        SSet::Table r;
        for (int s : (*members)[static_cast<std::size_t>(a.cod)]) {
            int v = (*pos)[static_cast<std::size_t>(a.dom())][static_cast<std::size_t>(t[static_cast<std::size_t>(s)])];
            if (v < 0)
                throw LawViolation("subobject not closed under " + a.str() + " at " +
                                   x.simplex(a.cod, s).str());
            r.push_back(v);
        }
        return r;
    });
    return {sub, SMap(sub, x, *members)};
}

/// Simplices of the source of `f` lying over the (degenerate) vertex v.
inline Subobject fiber(const SMap& f, int vertex) {
    const SSet& y = f.target();
    std::vector<int> over;
    for (int k = 0; k <= y.truncation(); ++k) over.push_back(y.act(DeltaMap{0, std::vector<int>(static_cast<std::size_t>(k + 1), 0)}, vertex));
    return subobject(f.source(), [&](int k, int s) { return f(k, s) == over[static_cast<std::size_t>(k)]; });
}

struct Cylinder {
    SSet space;
    /// X → IX at φ = 0
    SMap e0;
    /// sub₂X → IX at φ = 1
    SMap e1;
    /// IX → Δ¹ = nerve([1])
    SMap proj;
};

/// IX: level A is the set of pairs (φ: A → [1], y ∈ X(φ⁻¹(s))), labelled
/// (φ values, y). ψ acts by (φ, y) ↦ (φψ, ψ′* y). Needs X truncated at 2N+1.
inline Cylinder cylinder(const SSet& x, int trunc) {
    if (x.truncation() < 2 * trunc + 1)
        throw TruncationError("cylinder at dimension " + std::to_string(trunc) + " needs input truncation " +
                              std::to_string(2 * trunc + 1) + ", have " + std::to_string(x.truncation()));
    struct Cell {
        int phi;   // index into monotone_maps(k, 1)
        int ydim;
        int y;
    };
    auto cells = std::make_shared<std::vector<std::vector<Cell>>>();
    auto cell_index = std::make_shared<std::vector<std::map<std::pair<int, int>, int>>>();
    auto phis = std::make_shared<std::vector<std::vector<std::vector<int>>>>();
    std::vector<std::vector<Label>> lv;
    for (int k = 0; k <= trunc; ++k) {
        phis->push_back(monotone_maps(k, 1));
        std::vector<Cell> cs;
        std::map<std::pair<int, int>, int> ci;
        std::vector<Label> l;
        const auto& ph = phis->back();
        for (std::size_t p = 0; p < ph.size(); ++p) {
            int ones = static_cast<int>(std::count(ph[p].begin(), ph[p].end(), 1));
            int dim = k + ones;
            for (int y = 0; y < x.size(dim); ++y) {
                ci.emplace(std::pair(static_cast<int>(p), y), static_cast<int>(cs.size()));
                cs.push_back({static_cast<int>(p), dim, y});
                l.push_back(tup(tuple_of(ph[p]), x.simplex(dim, y)));
            }
        }
        cells->push_back(std::move(cs));
        cell_index->push_back(std::move(ci));
        lv.push_back(std::move(l));
    }
    SSet ix(trunc, std::move(lv), [x, cells, cell_index, phis](const SSet&, const DeltaMap& a) {
        const int k = a.cod, m = a.dom();
        const auto& ph_k = (*phis)[static_cast<std::size_t>(k)];
        const auto& ph_m = (*phis)[static_cast<std::size_t>(m)];
        MonotoneMap psi = MonotoneMap::between_ordinals(k, a.values);
        std::vector<std::pair<int, DeltaMap>> per_phi; // φψ index, ψ′
        for (const auto& v : ph_k) {
            MonotoneMap phi = MonotoneMap::between_ordinals(1, v);
            MonotoneMap pp = compose(phi, psi);
            int target = static_cast<int>(std::find(ph_m.begin(), ph_m.end(), pp.values()) - ph_m.begin());
            per_phi.emplace_back(target, to_delta(induced_map(phi, psi)));
        }
        SSet::Table t;
        for (const auto& c : (*cells)[static_cast<std::size_t>(k)]) {
            const auto& [q, pr] = per_phi[static_cast<std::size_t>(c.phi)];
            int y2 = x.act(pr, c.y);
            t.push_back((*cell_index)[static_cast<std::size_t>(m)].at(std::pair(q, y2)));
        }
        return t;
    });

    SSet base = truncate(x, trunc);
    SSet sub = sub2(x, trunc);
    SSet interval = nerve(ordinal(1), trunc);
    std::vector<std::vector<int>> c0, c1, cp;
    for (int k = 0; k <= trunc; ++k) {
        const auto& ph = (*phis)[static_cast<std::size_t>(k)];
        int zero = 0, one = static_cast<int>(ph.size()) - 1; // lexicographic: constant 0 first, constant 1 last
        std::vector<int> r0, r1, rp;
        for (int y = 0; y < x.size(k); ++y) r0.push_back((*cell_index)[static_cast<std::size_t>(k)].at({zero, y}));
        for (int y = 0; y < x.size(2 * k + 1); ++y)
            r1.push_back((*cell_index)[static_cast<std::size_t>(k)].at({one, y}));
        for (const auto& c : (*cells)[static_cast<std::size_t>(k)])
            rp.push_back(interval.index_of(k, tuple_of(ph[static_cast<std::size_t>(c.phi)])));
        c0.push_back(std::move(r0));
        c1.push_back(std::move(r1));
        cp.push_back(std::move(rp));
    }
    return {ix, SMap(base, ix, std::move(c0)), SMap(sub, ix, std::move(c1)), SMap(ix, interval, std::move(cp))};
}

/// f with its target narrowed to a subobject containing its image.
inline SMap corestrict(const SMap& f, const Subobject& sub) {
    std::vector<std::vector<int>> c;
    for (int k = 0; k <= f.source().truncation(); ++k) {
        std::vector<int> inv(static_cast<std::size_t>(f.target().size(k)), -1);
        const auto& inc = sub.inclusion.component(k);
        for (std::size_t i = 0; i < inc.size(); ++i) inv[static_cast<std::size_t>(inc[i])] = static_cast<int>(i);
        std::vector<int> row;
        for (int v : f.component(k)) {
            if (inv[static_cast<std::size_t>(v)] < 0) throw InputError("map does not land in the subobject");
            row.push_back(inv[static_cast<std::size_t>(v)]);
        }
        c.push_back(std::move(row));
    }
    return SMap(f.source(), sub.sset, std::move(c));
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace detail {

struct IsoSearch {
    const SSet& x;
    const SSet& y;
    int top;
    std::vector<DeltaMap> endos;
    std::vector<std::vector<bool>> sig_x, sig_y;
    std::vector<int> assign, used;
    std::optional<SMap> found;

    std::vector<bool> signature(const SSet& s, int v) const {
        std::vector<bool> sig;
        for (const auto& a : endos) sig.push_back(s.act(a, v) == v);
        for (int k = 0; k < top; ++k) {
            DeltaMap to_k{top, {}};
            for (int i = 0; i <= k; ++i) to_k.values.push_back(i);
            DeltaMap back{k, {}};
            for (int i = 0; i <= top; ++i) back.values.push_back(std::min(i, k));
            sig.push_back(s.act(back, s.act(to_k, v)) == v);
        }
        return sig;
    }

    bool place(int a, int b, std::vector<int>& trail) {
        std::vector<std::pair<int, int>> queue{{a, b}};
        while (!queue.empty()) {
            auto [p, q] = queue.back();
            queue.pop_back();
            if (assign[static_cast<std::size_t>(p)] >= 0) {
                if (assign[static_cast<std::size_t>(p)] != q) return false;
                continue;
            }
            if (used[static_cast<std::size_t>(q)] >= 0 || sig_x[static_cast<std::size_t>(p)] != sig_y[static_cast<std::size_t>(q)]) return false;
            assign[static_cast<std::size_t>(p)] = q;
            used[static_cast<std::size_t>(q)] = p;
            trail.push_back(p);
            for (const auto& e : endos) queue.emplace_back(x.act(e, p), y.act(e, q));
        }
        return true;
    }

    void undo(std::vector<int>& trail) {
        for (int p : trail) {
            used[static_cast<std::size_t>(assign[static_cast<std::size_t>(p)])] = -1;
            assign[static_cast<std::size_t>(p)] = -1;
        }
        trail.clear();
    }

    void finish() {
        // lower levels are forced: f_k(v) = δ*(f_N(σ* v)) with σ δ = id
        std::vector<std::vector<int>> comps(static_cast<std::size_t>(top + 1));
        for (int k = 0; k <= top; ++k) {
            DeltaMap up{top, {}}, down{k, {}};
            for (int i = 0; i <= k; ++i) up.values.push_back(i);
            for (int i = 0; i <= top; ++i) down.values.push_back(std::min(i, k));
            for (int v = 0; v < x.size(k); ++v)
                comps[static_cast<std::size_t>(k)].push_back(
                    y.act(up, assign[static_cast<std::size_t>(x.act(down, v))]));
        }
        try {
            SMap f(x, y, std::move(comps));
            if (f.bijective()) found = std::move(f);
        } catch (const LawViolation&) {
        }
    }

    void run(int next) {
        if (found) return;
        while (next < x.size(top) && assign[static_cast<std::size_t>(next)] >= 0) ++next;
        if (next == x.size(top)) {
            finish();
            return;
        }
        for (int b = 0; b < y.size(top) && !found; ++b) {
            if (used[static_cast<std::size_t>(b)] >= 0) continue;
            std::vector<int> trail;
            if (place(next, b, trail)) run(next + 1);
            undo(trail);
        }
    }
};

} // namespace detail

/// Verifies `candidate` is an isomorphism X ≅ Y, or searches for one by
/// backtracking on the top level (refusing levels larger than `bound`).
inline std::optional<SMap> sset_iso(const SSet& x, const SSet& y, const std::optional<SMap>& candidate = std::nullopt,
                                    int bound = 12) {
    if (x.truncation() != y.truncation()) throw InputError("isomorphism check needs equal truncations");
    if (candidate) {
        if (!candidate->source().same_levels(x) || !candidate->target().same_levels(y))
            throw InputError("candidate map has the wrong source or target");
        if (!candidate->bijective()) return std::nullopt;
        return candidate;
    }
    const int n = x.truncation();
    for (int k = 0; k <= n; ++k)
        if (x.size(k) != y.size(k)) return std::nullopt;
    for (int k = 0; k <= n; ++k)
        if (x.size(k) > bound)
            throw SearchBoundExceeded("level " + std::to_string(k) + " has " + std::to_string(x.size(k)) +
                                      " simplices, above the search bound " + std::to_string(bound));
    detail::IsoSearch s{x, y, n, {}, {}, {}, {}, {}, std::nullopt};
    for (auto& a : all_delta_maps(n, n))
        if (!a.is_identity()) s.endos.push_back(std::move(a));
    for (int v = 0; v < x.size(n); ++v) s.sig_x.push_back(s.signature(x, v));
    for (int v = 0; v < y.size(n); ++v) s.sig_y.push_back(s.signature(y, v));
    s.assign.assign(static_cast<std::size_t>(x.size(n)), -1);
    s.used.assign(static_cast<std::size_t>(y.size(n)), -1);
    s.run(0);
    return s.found;
}

} // namespace dercomb
