#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dercomb/errors.hpp"
#include "dercomb/label.hpp"

namespace dercomb {

/// A morphism of a finite category. Its canonical id is (source, target,
/// index) where index is the position inside hom(source, target); poset
/// morphisms always have index 0 and an empty name.
struct Morphism {
    int source;
    int target;
    int index;
    std::string name;
};

class FinCat;
using CatPtr = std::shared_ptr<const FinCat>;

struct ArrowSpec {
    std::string name;
    Label source;
    Label target;
};

/// g ∘ f = result, all given by arrow name.
struct CompositionSpec {
    std::string g;
    std::string f;
    std::string result;
};

namespace detail {
struct RawCategory {
    std::vector<Label> objects;
    std::vector<Morphism> morphisms; // index field ignored, recomputed
    std::vector<int> identities;
    std::vector<int> table; // g * M + f -> g∘f, -1 when undefined
};
CatPtr finalize_general(RawCategory raw, bool check_laws);
} // namespace detail

/// A finite category given by explicit object, morphism and composition data.
///
/// Morphisms are stored in canonical order (by source, target, index). Posets
/// take a fast path: composition is implied by hom membership and no table is
/// kept. Values are immutable once built; share them through CatPtr.
class FinCat {
public:
    std::size_t object_count() const { return objects_.size(); }
    const std::vector<Label>& objects() const { return objects_; }
    const Label& object(int x) const { return objects_.at(static_cast<std::size_t>(x)); }

    std::optional<int> find_object(const Label& l) const {
        auto it = index_.find(l);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    int object_index(const Label& l) const {
        if (auto x = find_object(l)) return *x;
        throw InputError("unknown object " + l.str());
    }

    std::size_t morphism_count() const { return morphisms_.size(); }
    const Morphism& morphism(int f) const { return morphisms_.at(static_cast<std::size_t>(f)); }
    int source(int f) const { return morphism(f).source; }
    int target(int f) const { return morphism(f).target; }
    int identity(int x) const { return identities_.at(static_cast<std::size_t>(x)); }
    bool is_identity(int f) const { return identities_[static_cast<std::size_t>(source(f))] == f; }

    const std::vector<int>& hom(int x, int y) const {
        return homs_[static_cast<std::size_t>(x) * objects_.size() + static_cast<std::size_t>(y)];
    }
    bool has_morphism(int x, int y) const { return !hom(x, y).empty(); }

    /// The unique morphism x→y, or -1. Only meaningful when hom-sets are ≤ 1.
    int unique_morphism(int x, int y) const {
        const auto& h = hom(x, y);
        return h.size() == 1 ? h.front() : -1;
    }

    /// g ∘ f, defined exactly when target(f) == source(g).
    std::optional<int> compose(int g, int f) const {
        if (target(f) != source(g)) return std::nullopt;
        if (poset_) return unique_morphism(source(f), target(g));
        int r = table_[static_cast<std::size_t>(g) * morphisms_.size() + static_cast<std::size_t>(f)];
        if (r < 0) return std::nullopt;
        return r;
    }

    bool is_poset() const { return poset_; }

    Label morphism_label(int f) const {
        const auto& m = morphism(f);
        return tup(object(m.source), object(m.target), m.index);
    }

    std::string morphism_str(int f) const {
        const auto& m = morphism(f);
        if (!m.name.empty()) return m.name;
        return object(m.source).str() + "->" + object(m.target).str();
    }

    std::optional<int> find_morphism(const std::string& name) const {
        auto it = names_.find(name);
        if (it == names_.end()) return std::nullopt;
        return it->second;
    }

    friend bool operator==(const FinCat& a, const FinCat& b) {
        if (&a == &b) return true;
        if (a.objects_ != b.objects_ || a.poset_ != b.poset_ ||
            a.morphisms_.size() != b.morphisms_.size())
            return false;
        for (std::size_t i = 0; i < a.morphisms_.size(); ++i) {
            const auto& x = a.morphisms_[i];
            const auto& y = b.morphisms_[i];
            if (x.source != y.source || x.target != y.target || x.index != y.index) return false;
        }
        return a.poset_ || a.table_ == b.table_;
    }

    // Factories. Prefer the free functions below.
    static CatPtr make_poset(std::vector<Label> objects, const std::vector<std::vector<bool>>& leq);
    friend CatPtr detail::finalize_general(detail::RawCategory raw, bool check_laws);

private:
    FinCat() = default;

    void index_objects() {
        index_.clear();
        for (std::size_t i = 0; i < objects_.size(); ++i) {
            if (!index_.emplace(objects_[i], static_cast<int>(i)).second)
                throw InputError("duplicate object label " + objects_[i].str());
        }
    }

    void index_morphisms() {
        const std::size_t n = objects_.size();
        homs_.assign(n * n, {});
        for (std::size_t f = 0; f < morphisms_.size(); ++f) {
            auto& h = homs_[static_cast<std::size_t>(morphisms_[f].source) * n +
                            static_cast<std::size_t>(morphisms_[f].target)];
            morphisms_[f].index = static_cast<int>(h.size());
            h.push_back(static_cast<int>(f));
        }
        names_.clear();
        for (std::size_t f = 0; f < morphisms_.size(); ++f)
            if (!morphisms_[f].name.empty()) names_[morphisms_[f].name] = static_cast<int>(f);
    }

    std::vector<Label> objects_;
    std::unordered_map<Label, int, LabelHash> index_;
    std::vector<Morphism> morphisms_;
    std::vector<int> identities_;
    std::vector<std::vector<int>> homs_;
    std::vector<int> table_;
    std::unordered_map<std::string, int> names_;
    bool poset_ = false;
};

inline CatPtr FinCat::make_poset(std::vector<Label> objects, const std::vector<std::vector<bool>>& leq) {
    std::shared_ptr<FinCat> c(new FinCat());
    c->objects_ = std::move(objects);
    c->index_objects();
    const int n = static_cast<int>(c->objects_.size());
    c->identities_.assign(static_cast<std::size_t>(n), -1);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (leq[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]) {
                if (x == y) c->identities_[static_cast<std::size_t>(x)] = static_cast<int>(c->morphisms_.size());
                c->morphisms_.push_back({x, y, 0, {}});
            }
    c->index_morphisms();
    c->poset_ = true;
    return c;
}

/// Poset on `objects` whose order is `leq` (checked to be a partial order).
inline CatPtr poset_from_order(std::vector<Label> objects, const std::function<bool(int, int)>& leq) {
    const std::size_t n = objects.size();
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) rel[x][y] = leq(static_cast<int>(x), static_cast<int>(y));
    for (std::size_t x = 0; x < n; ++x) {
        if (!rel[x][x]) throw InputError("order is not reflexive at " + objects[x].str());
        for (std::size_t y = 0; y < n; ++y) {
            if (x != y && rel[x][y] && rel[y][x])
                throw InputError("order is not antisymmetric: " + objects[x].str() + ", " + objects[y].str());
            if (!rel[x][y]) continue;
            for (std::size_t z = 0; z < n; ++z)
                if (rel[y][z] && !rel[x][z])
                    throw InputError("order is not transitive: " + objects[x].str() + " <= " +
                                     objects[y].str() + " <= " + objects[z].str());
        }
    }
    return FinCat::make_poset(std::move(objects), rel);
}

/// Poset generated by `covers` (reflexive-transitive closure). Rejects cycles
/// and duplicate labels.
inline CatPtr build_poset(std::vector<Label> objects, const std::vector<std::pair<Label, Label>>& covers) {
    const std::size_t n = objects.size();
    std::unordered_map<Label, std::size_t, LabelHash> idx;
    for (std::size_t i = 0; i < n; ++i)
        if (!idx.emplace(objects[i], i).second) throw InputError("duplicate object label " + objects[i].str());
    std::vector<std::vector<std::size_t>> succ(n);
    for (const auto& [a, b] : covers) {
        auto ia = idx.find(a);
        auto ib = idx.find(b);
        if (ia == idx.end()) throw InputError("cover mentions unknown object " + a.str());
        if (ib == idx.end()) throw InputError("cover mentions unknown object " + b.str());
        if (ia->second == ib->second) throw InputError("cycle detected (not a poset): " + a.str() + " <= " + a.str());
        succ[ia->second].push_back(ib->second);
    }
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n));
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> stack{s};
        rel[s][s] = true;
        while (!stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            for (auto y : succ[x]) {
                if (y == s) throw InputError("cycle detected (not a poset) through " + objects[s].str());
                if (!rel[s][y]) {
                    rel[s][y] = true;
                    stack.push_back(y);
                }
            }
        }
    }
    return FinCat::make_poset(std::move(objects), rel);
}

/// First violated category law, if any. Exhaustive over composable triples.
inline std::optional<std::string> category_law_violation(const FinCat& c) {
    const int m = static_cast<int>(c.morphism_count());
    for (int x = 0; x < static_cast<int>(c.object_count()); ++x) {
        int id = c.identity(x);
        if (id < 0 || c.source(id) != x || c.target(id) != x)
            return "object " + c.object(x).str() + " has no identity";
    }
    for (int f = 0; f < m; ++f) {
        for (int g = 0; g < m; ++g) {
            if (c.target(f) != c.source(g)) continue;
            auto gf = c.compose(g, f);
            if (!gf) return "missing composite " + c.morphism_str(g) + "∘" + c.morphism_str(f);
            if (c.source(*gf) != c.source(f) || c.target(*gf) != c.target(g))
                return "composite " + c.morphism_str(g) + "∘" + c.morphism_str(f) + " has wrong endpoints";
        }
        if (c.compose(f, c.identity(c.source(f))) != f || c.compose(c.identity(c.target(f)), f) != f)
            return "identity law fails for " + c.morphism_str(f);
    }
    for (int h = 0; h < m; ++h)
        for (int f = 0; f < m; ++f) {
            if (c.target(h) != c.source(f)) continue;
            int fh = *c.compose(f, h);
            for (int g = 0; g < m; ++g) {
                if (c.target(f) != c.source(g)) continue;
                int left = *c.compose(g, fh);
                int right = *c.compose(*c.compose(g, f), h);
                if (left != right)
                    return "associativity fails for (" + c.morphism_str(g) + "," + c.morphism_str(f) + "," +
                           c.morphism_str(h) + "): g∘(f∘h)=" + c.morphism_str(left) +
                           " but (g∘f)∘h=" + c.morphism_str(right);
            }
        }
    return std::nullopt;
}

namespace detail {

inline CatPtr finalize_general(RawCategory raw, bool check_laws) {
    const std::size_t m = raw.morphisms.size();
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const auto& x = raw.morphisms[static_cast<std::size_t>(a)];
        const auto& y = raw.morphisms[static_cast<std::size_t>(b)];
        return std::pair(x.source, x.target) < std::pair(y.source, y.target);
    });
    std::vector<int> pos(m);
    for (std::size_t i = 0; i < m; ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);

    std::shared_ptr<FinCat> c(new FinCat());
    c->objects_ = std::move(raw.objects);
    c->index_objects();
    for (auto o : order) c->morphisms_.push_back(raw.morphisms[static_cast<std::size_t>(o)]);
    c->index_morphisms();
    c->identities_.resize(raw.identities.size());
    for (std::size_t x = 0; x < raw.identities.size(); ++x)
        c->identities_[x] = raw.identities[x] < 0 ? -1 : pos[static_cast<std::size_t>(raw.identities[x])];
    c->table_.assign(m * m, -1);
    for (std::size_t g = 0; g < m; ++g)
        for (std::size_t f = 0; f < m; ++f) {
            int r = raw.table[g * m + f];
            if (r >= 0)
                c->table_[static_cast<std::size_t>(pos[g]) * m + static_cast<std::size_t>(pos[f])] =
                    pos[static_cast<std::size_t>(r)];
        }
    if (check_laws) {
        if (auto v = category_law_violation(*c)) throw LawViolation(*v);
    }
    bool thin = true;
    for (const auto& h : c->homs_) thin = thin && h.size() <= 1;
    const int n = static_cast<int>(c->object_count());
    for (int x = 0; x < n && thin; ++x)
        for (int y = x + 1; y < n && thin; ++y)
            if (c->has_morphism(x, y) && c->has_morphism(y, x)) thin = false;
    c->poset_ = thin;
    return c;
}

} // namespace detail

/// Category from explicit data. The composition table must be total on
/// composable pairs; every law violation is reported with its witness.
inline CatPtr build_fincat(std::vector<Label> objects, const std::vector<ArrowSpec>& arrows,
                           const std::vector<std::pair<Label, std::string>>& identities,
                           const std::vector<CompositionSpec>& composition) {
    detail::RawCategory raw;
    std::unordered_map<Label, int, LabelHash> obj;
    for (std::size_t i = 0; i < objects.size(); ++i)
        if (!obj.emplace(objects[i], static_cast<int>(i)).second)
            throw InputError("duplicate object label " + objects[i].str());
    std::unordered_map<std::string, int> name;
    for (const auto& a : arrows) {
        if (a.name.empty()) throw InputError("arrow without a name");
        auto s = obj.find(a.source);
        auto t = obj.find(a.target);
        if (s == obj.end() || t == obj.end()) throw InputError("arrow " + a.name + " has unknown endpoint");
        if (!name.emplace(a.name, static_cast<int>(raw.morphisms.size())).second)
            throw InputError("duplicate arrow name " + a.name);
        raw.morphisms.push_back({s->second, t->second, 0, a.name});
    }
    auto arrow = [&](const std::string& n) {
        auto it = name.find(n);
        if (it == name.end()) throw InputError("unknown arrow " + n);
        return it->second;
    };
    raw.identities.assign(objects.size(), -1);
    for (const auto& [o, a] : identities) {
        auto it = obj.find(o);
        if (it == obj.end()) throw InputError("identity for unknown object " + o.str());
        int f = arrow(a);
        const auto& mf = raw.morphisms[static_cast<std::size_t>(f)];
        if (mf.source != it->second || mf.target != it->second)
            throw LawViolation("identity " + a + " is not an endomorphism of " + o.str());
        if (raw.identities[static_cast<std::size_t>(it->second)] >= 0)
            throw InputError("two identities given for " + o.str());
        raw.identities[static_cast<std::size_t>(it->second)] = f;
    }
    for (std::size_t x = 0; x < objects.size(); ++x)
        if (raw.identities[x] < 0) throw LawViolation("identity failure: object " + objects[x].str() + " has no identity");

    const std::size_t m = raw.morphisms.size();
    raw.table.assign(m * m, -1);
    for (const auto& c : composition) {
        int g = arrow(c.g), f = arrow(c.f), r = arrow(c.result);
        const auto& mg = raw.morphisms[static_cast<std::size_t>(g)];
        const auto& mf = raw.morphisms[static_cast<std::size_t>(f)];
        const auto& mr = raw.morphisms[static_cast<std::size_t>(r)];
        if (mf.target != mg.source)
            throw LawViolation("composite " + c.g + "∘" + c.f + " given for a non-composable pair");
        if (mr.source != mf.source || mr.target != mg.target)
            throw LawViolation("composite " + c.g + "∘" + c.f + "=" + c.result + " has wrong endpoints");
        int& slot = raw.table[static_cast<std::size_t>(g) * m + static_cast<std::size_t>(f)];
        if (slot >= 0 && slot != r) throw LawViolation("conflicting composites for " + c.g + "∘" + c.f);
        slot = r;
    }
    for (std::size_t g = 0; g < m; ++g)
        for (std::size_t f = 0; f < m; ++f)
            if (raw.morphisms[f].target == raw.morphisms[g].source && raw.table[g * m + f] < 0)
                throw LawViolation("missing composite " + raw.morphisms[g].name + "∘" + raw.morphisms[f].name);
    raw.objects = std::move(objects);
    return detail::finalize_general(std::move(raw), true);
}

inline CatPtr discrete(std::vector<Label> objects) {
    return poset_from_order(std::move(objects), [](int x, int y) { return x == y; });
}

/// The terminal category e.
inline CatPtr point() { return discrete({Label("*")}); }

/// [n] = 0 → 1 → ... → n.
inline CatPtr ordinal(int n) {
    if (n < 0) throw InputError("ordinal [n] needs n >= 0");
    std::vector<Label> obj;
    for (int i = 0; i <= n; ++i) obj.emplace_back(i);
    return poset_from_order(std::move(obj), [](int x, int y) { return x <= y; });
}

/// Same category with objects renamed by `f` (must stay injective).
inline CatPtr relabel(const FinCat& c, const std::function<Label(const Label&)>& f) {
    std::vector<Label> obj;
    for (const auto& o : c.objects()) obj.push_back(f(o));
    if (c.is_poset())
        return poset_from_order(std::move(obj), [&](int x, int y) { return c.has_morphism(x, y); });
    detail::RawCategory raw;
    raw.objects = std::move(obj);
    const std::size_t m = c.morphism_count();
    for (std::size_t i = 0; i < m; ++i) raw.morphisms.push_back(c.morphism(static_cast<int>(i)));
    for (std::size_t x = 0; x < c.object_count(); ++x) raw.identities.push_back(c.identity(static_cast<int>(x)));
    raw.table.assign(m * m, -1);
    for (std::size_t g = 0; g < m; ++g)
        for (std::size_t f = 0; f < m; ++f)
            if (auto r = c.compose(static_cast<int>(g), static_cast<int>(f))) raw.table[g * m + f] = *r;
    return detail::finalize_general(std::move(raw), false);
}

/// C × D, objects labelled (c, d), composition componentwise.
inline CatPtr product(const FinCat& c, const FinCat& d) {
    const int nc = static_cast<int>(c.object_count());
    const int nd = static_cast<int>(d.object_count());
    std::vector<Label> obj;
    for (int x = 0; x < nc; ++x)
        for (int y = 0; y < nd; ++y) obj.push_back(tup(c.object(x), d.object(y)));
    if (c.is_poset() && d.is_poset()) {
        return poset_from_order(std::move(obj), [&](int p, int q) {
            return c.has_morphism(p / nd, q / nd) && d.has_morphism(p % nd, q % nd);
        });
    }
    detail::RawCategory raw;
    raw.objects = std::move(obj);
    const int mc = static_cast<int>(c.morphism_count());
    const int md = static_cast<int>(d.morphism_count());
    auto id = [&](int f, int g) { return f * md + g; };
    for (int f = 0; f < mc; ++f)
        for (int g = 0; g < md; ++g)
            raw.morphisms.push_back({c.source(f) * nd + d.source(g), c.target(f) * nd + d.target(g), 0,
                                     "(" + c.morphism_str(f) + "," + d.morphism_str(g) + ")"});
    for (int x = 0; x < nc; ++x)
        for (int y = 0; y < nd; ++y) raw.identities.push_back(id(c.identity(x), d.identity(y)));
    const std::size_t m = raw.morphisms.size();
    raw.table.assign(m * m, -1);
    for (int f2 = 0; f2 < mc; ++f2)
        for (int f1 = 0; f1 < mc; ++f1) {
            auto f = c.compose(f2, f1);
            if (!f) continue;
            for (int g2 = 0; g2 < md; ++g2)
                for (int g1 = 0; g1 < md; ++g1)
                    if (auto g = d.compose(g2, g1))
                        raw.table[static_cast<std::size_t>(id(f2, g2)) * m + static_cast<std::size_t>(id(f1, g1))] =
                            id(*f, *g);
        }
    return detail::finalize_general(std::move(raw), false);
}

/// Ar(C): objects are morphisms of C, morphisms are commuting squares. For a
/// poset the objects are labelled (source, target) and ordered componentwise.
inline CatPtr arrow_category(const FinCat& c) {
    const int m = static_cast<int>(c.morphism_count());
    std::vector<Label> obj;
    for (int f = 0; f < m; ++f)
        obj.push_back(c.is_poset() ? tup(c.object(c.source(f)), c.object(c.target(f))) : c.morphism_label(f));
    if (c.is_poset()) {
        return poset_from_order(std::move(obj), [&](int f, int g) {
            return c.has_morphism(c.source(f), c.source(g)) && c.has_morphism(c.target(f), c.target(g));
        });
    }
    detail::RawCategory raw;
    raw.objects = std::move(obj);
    std::vector<std::pair<int, int>> squares;
    for (int f = 0; f < m; ++f)
        for (int g = 0; g < m; ++g)
            for (int u : c.hom(c.source(f), c.source(g)))
                for (int v : c.hom(c.target(f), c.target(g)))
                    if (c.compose(v, f) == c.compose(g, u)) {
                        squares.emplace_back(u, v);
                        raw.morphisms.push_back(
                            {f, g, 0, "(" + c.morphism_str(u) + "," + c.morphism_str(v) + ")"});
                    }
    raw.identities.assign(static_cast<std::size_t>(m), -1);
    for (std::size_t s = 0; s < squares.size(); ++s) {
        const auto& mor = raw.morphisms[s];
        if (mor.source == mor.target && c.is_identity(squares[s].first) && c.is_identity(squares[s].second))
            raw.identities[static_cast<std::size_t>(mor.source)] = static_cast<int>(s);
    }
    const std::size_t ms = squares.size();
    raw.table.assign(ms * ms, -1);
    for (std::size_t a = 0; a < ms; ++a)
        for (std::size_t b = 0; b < ms; ++b) {
            if (raw.morphisms[b].target != raw.morphisms[a].source) continue;
            int u = *c.compose(squares[a].first, squares[b].first);
            int v = *c.compose(squares[a].second, squares[b].second);
            for (std::size_t r = 0; r < ms; ++r)
                if (raw.morphisms[r].source == raw.morphisms[b].source &&
                    raw.morphisms[r].target == raw.morphisms[a].target && squares[r] == std::pair(u, v)) {
                    raw.table[a * ms + b] = static_cast<int>(r);
                    break;
                }
        }
    return detail::finalize_general(std::move(raw), false);
}

// ---------------------------------------------------------------------------
// Functors

inline std::optional<std::string> functor_violation(const FinCat& s, const FinCat& t, const std::vector<int>& obj,
                                                    const std::vector<int>& mor) {
    if (obj.size() != s.object_count()) return std::string("object map has wrong size");
    if (mor.size() != s.morphism_count()) return std::string("morphism map has wrong size");
    for (std::size_t x = 0; x < obj.size(); ++x)
        if (obj[x] < 0 || obj[x] >= static_cast<int>(t.object_count()))
            return "object " + s.object(static_cast<int>(x)).str() + " is sent outside the target";
    const int m = static_cast<int>(s.morphism_count());
    for (int f = 0; f < m; ++f) {
        int g = mor[static_cast<std::size_t>(f)];
        if (g < 0 || g >= static_cast<int>(t.morphism_count()))
            return "morphism " + s.morphism_str(f) + " is sent outside the target";
        if (t.source(g) != obj[static_cast<std::size_t>(s.source(f))] ||
            t.target(g) != obj[static_cast<std::size_t>(s.target(f))])
            return "morphism " + s.morphism_str(f) + " does not preserve source/target";
    }
    for (int x = 0; x < static_cast<int>(s.object_count()); ++x)
        if (mor[static_cast<std::size_t>(s.identity(x))] != t.identity(obj[static_cast<std::size_t>(x)]))
            return "identity of " + s.object(x).str() + " is not preserved";
    if (t.is_poset()) return std::nullopt; // composites are forced in a poset
    for (int f = 0; f < m; ++f)
        for (int g = 0; g < m; ++g) {
            auto gf = s.compose(g, f);
            if (!gf) continue;
            if (t.compose(mor[static_cast<std::size_t>(g)], mor[static_cast<std::size_t>(f)]) !=
                mor[static_cast<std::size_t>(*gf)])
                return "composition not preserved for " + s.morphism_str(g) + "∘" + s.morphism_str(f);
        }
    return std::nullopt;
}

/// For a poset target: the first morphism x→y of `s` with obj(x) ≰ obj(y).
inline std::optional<std::string> monotone_violation(const FinCat& s, const FinCat& t, const std::vector<int>& obj) {
    for (int f = 0; f < static_cast<int>(s.morphism_count()); ++f) {
        int x = s.source(f), y = s.target(f);
        int fx = obj[static_cast<std::size_t>(x)], fy = obj[static_cast<std::size_t>(y)];
        if (!t.has_morphism(fx, fy))
            return "not monotone: " + s.object(x).str() + " <= " + s.object(y).str() + " but " + t.object(fx).str() +
                   " !<= " + t.object(fy).str();
    }
    return std::nullopt;
}

class Functor {
public:
    Functor(CatPtr source, CatPtr target, std::vector<int> objects, std::vector<int> morphisms)
        : source_(std::move(source)), target_(std::move(target)), obj_(std::move(objects)),
          mor_(std::move(morphisms)) {
        if (auto v = functor_violation(*source_, *target_, obj_, mor_)) throw LawViolation("not a functor: " + *v);
    }

    /// Functor into a category whose relevant hom-sets are singletons; the
    /// morphism map is forced.
    static Functor from_object_map(CatPtr source, CatPtr target, std::vector<int> objects) {
        if (objects.size() != source->object_count()) throw InputError("object map has wrong size");
        std::vector<int> mor(source->morphism_count());
        for (int f = 0; f < static_cast<int>(mor.size()); ++f) {
            int x = objects[static_cast<std::size_t>(source->source(f))];
            int y = objects[static_cast<std::size_t>(source->target(f))];
            const auto& h = target->hom(x, y);
            if (h.empty())
                throw LawViolation("not a functor: " + *monotone_violation(*source, *target, objects));
            if (h.size() > 1)
                throw InputError("morphism map is ambiguous for " + source->morphism_str(f));
            mor[static_cast<std::size_t>(f)] = h.front();
        }
        return Functor(std::move(source), std::move(target), std::move(objects), std::move(mor));
    }

    static Functor from_labels(CatPtr source, CatPtr target, const std::function<Label(const Label&)>& f) {
        std::vector<int> obj;
        for (const auto& o : source->objects()) obj.push_back(target->object_index(f(o)));
        return from_object_map(std::move(source), std::move(target), std::move(obj));
    }

    const CatPtr& source() const { return source_; }
    const CatPtr& target() const { return target_; }
    int operator()(int x) const { return obj_[static_cast<std::size_t>(x)]; }
    int on_object(int x) const { return obj_[static_cast<std::size_t>(x)]; }
    int on_morphism(int f) const { return mor_[static_cast<std::size_t>(f)]; }
    const std::vector<int>& object_map() const { return obj_; }
    const std::vector<int>& morphism_map() const { return mor_; }

    const Label& image_label(const Label& x) const { return target_->object(on_object(source_->object_index(x))); }

    friend bool operator==(const Functor& a, const Functor& b) {
        return *a.source_ == *b.source_ && *a.target_ == *b.target_ && a.obj_ == b.obj_ && a.mor_ == b.mor_;
    }

private:
    CatPtr source_;
    CatPtr target_;
    std::vector<int> obj_;
    std::vector<int> mor_;
};

inline Functor identity_functor(const CatPtr& c) {
    std::vector<int> o(c->object_count()), m(c->morphism_count());
    std::iota(o.begin(), o.end(), 0);
    std::iota(m.begin(), m.end(), 0);
    return Functor(c, c, std::move(o), std::move(m));
}

/// g ∘ f
inline Functor compose(const Functor& g, const Functor& f) {
    if (!(*f.target() == *g.source())) throw InputError("functors are not composable");
    std::vector<int> o, m;
    for (int x : f.object_map()) o.push_back(g.on_object(x));
    for (int a : f.morphism_map()) m.push_back(g.on_morphism(a));
    return Functor(f.source(), g.target(), std::move(o), std::move(m));
}

inline Functor constant_functor(const CatPtr& source, const CatPtr& target, int object) {
    std::vector<int> o(source->object_count(), object);
    std::vector<int> m(source->morphism_count(), target->identity(object));
    return Functor(source, target, std::move(o), std::move(m));
}

/// The inclusion of the full subcategory on `keep` (object indices, in order).
struct Subcategory {
    CatPtr category;
    Functor inclusion;
};

inline Subcategory full_subcategory(const CatPtr& c, const std::vector<int>& keep) {
    std::vector<Label> obj;
    for (int x : keep) obj.push_back(c->object(x));
    CatPtr sub;
    if (c->is_poset()) {
        sub = poset_from_order(std::move(obj), [&](int x, int y) {
            return c->has_morphism(keep[static_cast<std::size_t>(x)], keep[static_cast<std::size_t>(y)]);
        });
    } else {
        detail::RawCategory raw;
        raw.objects = std::move(obj);
        std::vector<int> pos(c->object_count(), -1);
        for (std::size_t i = 0; i < keep.size(); ++i) pos[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
        std::vector<int> old;
        for (int f = 0; f < static_cast<int>(c->morphism_count()); ++f) {
            int s = pos[static_cast<std::size_t>(c->source(f))], t = pos[static_cast<std::size_t>(c->target(f))];
            if (s >= 0 && t >= 0) {
                raw.morphisms.push_back({s, t, 0, c->morphism(f).name});
                old.push_back(f);
            }
        }
        std::vector<int> rev(c->morphism_count(), -1);
        for (std::size_t i = 0; i < old.size(); ++i) rev[static_cast<std::size_t>(old[i])] = static_cast<int>(i);
        for (int x : keep) raw.identities.push_back(rev[static_cast<std::size_t>(c->identity(x))]);
        const std::size_t m = old.size();
        raw.table.assign(m * m, -1);
        for (std::size_t g = 0; g < m; ++g)
            for (std::size_t f = 0; f < m; ++f)
                if (auto r = c->compose(old[g], old[f])) raw.table[g * m + f] = rev[static_cast<std::size_t>(*r)];
        sub = detail::finalize_general(std::move(raw), false);
    }
    std::vector<int> o(keep.begin(), keep.end());
    if (c->is_poset()) return {sub, Functor::from_object_map(sub, c, std::move(o))};
    std::vector<int> m;
    for (int f = 0; f < static_cast<int>(sub->morphism_count()); ++f) {
        int s = keep[static_cast<std::size_t>(sub->source(f))], t = keep[static_cast<std::size_t>(sub->target(f))];
        m.push_back(c->hom(s, t)[static_cast<std::size_t>(sub->morphism(f).index)]);
    }
    return {sub, Functor(sub, c, std::move(o), std::move(m))};
}

inline Subcategory full_subcategory(const CatPtr& c, const std::function<bool(const Label&)>& keep) {
    std::vector<int> idx;
    for (int x = 0; x < static_cast<int>(c->object_count()); ++x)
        if (keep(c->object(x))) idx.push_back(x);
    return full_subcategory(c, idx);
}

// ---------------------------------------------------------------------------
// Natural transformations

inline std::optional<std::string> naturality_violation(const Functor& f, const Functor& g,
                                                       const std::vector<int>& components) {
    if (!(*f.source() == *g.source()) || !(*f.target() == *g.target()))
        return std::string("functors do not share source and target");
    const FinCat& s = *f.source();
    const FinCat& t = *f.target();
    if (components.size() != s.object_count()) return std::string("wrong number of components");
    for (int x = 0; x < static_cast<int>(s.object_count()); ++x) {
        int a = components[static_cast<std::size_t>(x)];
        if (a < 0 || a >= static_cast<int>(t.morphism_count()) || t.source(a) != f(x) || t.target(a) != g(x))
            return "component at " + s.object(x).str() + " is not a morphism F(x)→G(x)";
    }
    for (int m = 0; m < static_cast<int>(s.morphism_count()); ++m) {
        int x = s.source(m), y = s.target(m);
        auto lhs = t.compose(g.on_morphism(m), components[static_cast<std::size_t>(x)]);
        auto rhs = t.compose(components[static_cast<std::size_t>(y)], f.on_morphism(m));
        if (lhs != rhs) return "naturality square fails for " + s.morphism_str(m);
    }
    return std::nullopt;
}

class NatTrans {
public:
    NatTrans(Functor from, Functor to, std::vector<int> components)
        : from_(std::move(from)), to_(std::move(to)), comp_(std::move(components)) {
        if (auto v = naturality_violation(from_, to_, comp_)) throw LawViolation("not natural: " + *v);
    }

    const Functor& from() const { return from_; }
    const Functor& to() const { return to_; }
    int component(int x) const { return comp_[static_cast<std::size_t>(x)]; }
    const std::vector<int>& components() const { return comp_; }

private:
    Functor from_;
    Functor to_;
    std::vector<int> comp_;
};

inline NatTrans identity_transformation(const Functor& f) {
    std::vector<int> c;
    for (int x = 0; x < static_cast<int>(f.source()->object_count()); ++x) c.push_back(f.target()->identity(f(x)));
    return NatTrans(f, f, std::move(c));
}

// ---------------------------------------------------------------------------
// Comma categories

/// (u/k) with its projection to J and the canonical u∘pr ⇒ const_k.
struct Comma {
    CatPtr category;
    Functor projection;
    NatTrans alpha;
    /// (j, f: u(j)→k) for each object of the comma category
    std::vector<std::pair<int, int>> pairs;
};

/// Objects are pairs (j, f: u(j)→k); a morphism (j,f)→(j',f') is g: j→j'
/// with f'∘u(g) = f. When K is a poset an object is labelled by j alone.
inline Comma comma(const Functor& u, const Label& k_label) {
    const CatPtr& jc = u.source();
    const CatPtr& kc = u.target();
    auto kk = kc->find_object(k_label);
    if (!kk) throw InputError("object " + k_label.str() + " is not in the target category");
    const int k = *kk;
    std::vector<std::pair<int, int>> pairs;
    std::vector<Label> obj;
    for (int j = 0; j < static_cast<int>(jc->object_count()); ++j)
        for (int f : kc->hom(u(j), k)) {
            pairs.emplace_back(j, f);
            obj.push_back(kc->is_poset() ? jc->object(j) : tup(jc->object(j), kc->morphism(f).index));
        }
    // g: j→j' is a morphism of (u/k) over the given pairs
    auto fits = [&](int g, std::size_t a, std::size_t b) {
        return kc->compose(pairs[b].second, u.on_morphism(g)) == pairs[a].second;
    };
    CatPtr cat;
    if (jc->is_poset()) {
        cat = poset_from_order(obj, [&](int a, int b) {
            int g = jc->unique_morphism(pairs[static_cast<std::size_t>(a)].first, pairs[static_cast<std::size_t>(b)].first);
            return g >= 0 && fits(g, static_cast<std::size_t>(a), static_cast<std::size_t>(b));
        });
    } else {
        detail::RawCategory raw;
        raw.objects = obj;
        std::vector<int> under;
        for (std::size_t a = 0; a < pairs.size(); ++a)
            for (std::size_t b = 0; b < pairs.size(); ++b)
                for (int g : jc->hom(pairs[a].first, pairs[b].first))
                    if (fits(g, a, b)) {
                        raw.morphisms.push_back({static_cast<int>(a), static_cast<int>(b), 0, jc->morphism(g).name});
                        under.push_back(g);
                    }
        const std::size_t m = under.size();
        raw.identities.assign(pairs.size(), -1);
        for (std::size_t i = 0; i < m; ++i)
            if (raw.morphisms[i].source == raw.morphisms[i].target && jc->is_identity(under[i]))
                raw.identities[static_cast<std::size_t>(raw.morphisms[i].source)] = static_cast<int>(i);
        raw.table.assign(m * m, -1);
        for (std::size_t g = 0; g < m; ++g)
            for (std::size_t f = 0; f < m; ++f) {
                if (raw.morphisms[f].target != raw.morphisms[g].source) continue;
                int r = *jc->compose(under[g], under[f]);
                for (std::size_t h = 0; h < m; ++h)
                    if (under[h] == r && raw.morphisms[h].source == raw.morphisms[f].source &&
                        raw.morphisms[h].target == raw.morphisms[g].target) {
                        raw.table[g * m + f] = static_cast<int>(h);
                        break;
                    }
            }
        cat = detail::finalize_general(std::move(raw), false);
    }
    std::vector<int> po, pm;
    for (const auto& p : pairs) po.push_back(p.first);
    for (int f = 0; f < static_cast<int>(cat->morphism_count()); ++f) {
        int a = cat->source(f), b = cat->target(f);
        const auto& h = jc->hom(pairs[static_cast<std::size_t>(a)].first, pairs[static_cast<std::size_t>(b)].first);
        int g = -1;
        if (jc->is_poset()) {
            g = h.front();
        } else {
            for (int cand : h)
                if (jc->morphism(cand).name == cat->morphism(f).name &&
                    fits(cand, static_cast<std::size_t>(a), static_cast<std::size_t>(b))) {
                    g = cand;
                    break;
                }
        }
        pm.push_back(g);
    }
    Functor pr(cat, jc, std::move(po), std::move(pm));
    Functor upr = compose(u, pr);
    Functor ck = constant_functor(cat, kc, k);
    std::vector<int> comps;
    for (const auto& p : pairs) comps.push_back(p.second);
    return {cat, pr, NatTrans(upr, ck, std::move(comps)), std::move(pairs)};
}

// ---------------------------------------------------------------------------
// Inclusions

struct InclusionClass {
    bool fully_faithful = false;
    bool injective_on_objects = false;
    bool sieve = false;
    bool cosieve = false;
};

inline InclusionClass classify_inclusion(const Functor& u) {
    const FinCat& j = *u.source();
    const FinCat& k = *u.target();
    InclusionClass r;
    const int nj = static_cast<int>(j.object_count());
    std::vector<bool> image(k.object_count());
    r.injective_on_objects = true;
    for (int x = 0; x < nj; ++x) {
        if (image[static_cast<std::size_t>(u(x))]) r.injective_on_objects = false;
        image[static_cast<std::size_t>(u(x))] = true;
    }
    r.fully_faithful = true;
    for (int x = 0; x < nj && r.fully_faithful; ++x)
        for (int y = 0; y < nj && r.fully_faithful; ++y) {
            const auto& src = j.hom(x, y);
            const auto& dst = k.hom(u(x), u(y));
            if (src.size() != dst.size()) {
                r.fully_faithful = false;
                break;
            }
            std::vector<int> mapped;
            for (int f : src) mapped.push_back(u.on_morphism(f));
            std::sort(mapped.begin(), mapped.end());
            if (std::adjacent_find(mapped.begin(), mapped.end()) != mapped.end()) r.fully_faithful = false;
        }
    if (!r.fully_faithful || !r.injective_on_objects) return r;
    r.sieve = r.cosieve = true;
    for (int f = 0; f < static_cast<int>(k.morphism_count()); ++f) {
        bool s_in = image[static_cast<std::size_t>(k.source(f))];
        bool t_in = image[static_cast<std::size_t>(k.target(f))];
        if (t_in && !s_in) r.sieve = false;
        if (s_in && !t_in) r.cosieve = false;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Adjunctions

struct AdjunctionReport {
    bool ok = false;
    std::string witness;
    std::optional<NatTrans> unit;
    std::optional<NatTrans> counit;
};

/// Checks F ⊣ G from explicit unit id ⇒ GF and counit FG ⇒ id: naturality
/// and both triangle identities. Throws InputError on ill-typed data.
inline AdjunctionReport check_adjunction(const Functor& f, const Functor& g, const NatTrans& unit,
                                         const NatTrans& counit) {
    const CatPtr& c = f.source();
    const CatPtr& d = f.target();
    if (!(*g.source() == *d) || !(*g.target() == *c)) throw InputError("type mismatch: G is not D→C");
    if (!(unit.from() == identity_functor(c)) || !(unit.to() == compose(g, f)))
        throw InputError("type mismatch: unit is not id ⇒ G∘F");
    if (!(counit.from() == compose(f, g)) || !(counit.to() == identity_functor(d)))
        throw InputError("type mismatch: counit is not F∘G ⇒ id");
    AdjunctionReport r;
    if (auto v = naturality_violation(unit.from(), unit.to(), unit.components())) {
        r.witness = "unit " + *v;
        return r;
    }
    if (auto v = naturality_violation(counit.from(), counit.to(), counit.components())) {
        r.witness = "counit " + *v;
        return r;
    }
    for (int x = 0; x < static_cast<int>(c->object_count()); ++x) {
        auto t = d->compose(counit.component(f(x)), f.on_morphism(unit.component(x)));
        if (t != d->identity(f(x))) {
            r.witness = "triangle identity εF∘Fη fails at " + c->object(x).str();
            return r;
        }
    }
    for (int y = 0; y < static_cast<int>(d->object_count()); ++y) {
        auto t = c->compose(g.on_morphism(counit.component(y)), unit.component(g(y)));
        if (t != c->identity(g(y))) {
            r.witness = "triangle identity Gε∘ηG fails at " + d->object(y).str();
            return r;
        }
    }
    r.ok = true;
    r.unit = unit;
    r.counit = counit;
    return r;
}

/// Poset mode: F ⊣ G iff Hom(Fc, d) ≠ ∅ ⇔ Hom(c, Gd) ≠ ∅ for all c, d. On
/// success the (unique) unit and counit are synthesized.
inline AdjunctionReport check_adjunction_hom(const Functor& f, const Functor& g) {
    const CatPtr& c = f.source();
    const CatPtr& d = f.target();
    if (!(*g.source() == *d) || !(*g.target() == *c)) throw InputError("type mismatch: G is not D→C");
    if (!c->is_poset() || !d->is_poset()) throw InputError("hom criterion needs poset source and target");
    AdjunctionReport r;
    for (int x = 0; x < static_cast<int>(c->object_count()); ++x)
        for (int y = 0; y < static_cast<int>(d->object_count()); ++y) {
            bool lhs = d->has_morphism(f(x), y);
            bool rhs = c->has_morphism(x, g(y));
            if (lhs != rhs) {
                std::ostringstream w;
                w << "(" << c->object(x).str() << ", " << d->object(y).str() << "): Hom(F" << c->object(x).str()
                  << ", " << d->object(y).str() << ") is " << (lhs ? "nonempty" : "empty") << " but Hom("
                  << c->object(x).str() << ", G" << d->object(y).str() << ") is " << (rhs ? "nonempty" : "empty");
                r.witness = w.str();
                return r;
            }
        }
    std::vector<int> eta, eps;
    for (int x = 0; x < static_cast<int>(c->object_count()); ++x) eta.push_back(c->unique_morphism(x, g(f(x))));
    for (int y = 0; y < static_cast<int>(d->object_count()); ++y) eps.push_back(d->unique_morphism(f(g(y)), y));
    r.unit.emplace(identity_functor(c), compose(g, f), std::move(eta));
    r.counit.emplace(compose(f, g), identity_functor(d), std::move(eps));
    r.ok = true;
    return r;
}

// ---------------------------------------------------------------------------
// Finite direct categories

struct Directness {
    bool finite_direct = false;
    /// chains of composable non-identity morphisms, length-0 chains included
    std::optional<std::uint64_t> nondegenerate_chains;
};

inline Directness is_finite_direct(const FinCat& c) {
    const int n = static_cast<int>(c.object_count());
    std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    for (int f = 0; f < static_cast<int>(c.morphism_count()); ++f) {
        if (c.is_identity(f)) continue;
        if (c.source(f) == c.target(f)) return {};
        out[static_cast<std::size_t>(c.source(f))].push_back(c.target(f));
        ++indeg[static_cast<std::size_t>(c.target(f))];
    }
    std::vector<int> topo, ready;
    for (int x = 0; x < n; ++x)
        if (indeg[static_cast<std::size_t>(x)] == 0) ready.push_back(x);
    while (!ready.empty()) {
        int x = ready.back();
        ready.pop_back();
        topo.push_back(x);
        for (int y : out[static_cast<std::size_t>(x)])
            if (--indeg[static_cast<std::size_t>(y)] == 0) ready.push_back(y);
    }
    if (static_cast<int>(topo.size()) != n) return {};
    std::vector<std::uint64_t> chains(static_cast<std::size_t>(n), 1);
    std::uint64_t total = 0;
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        for (int y : out[static_cast<std::size_t>(*it)])
            chains[static_cast<std::size_t>(*it)] += chains[static_cast<std::size_t>(y)];
        total += chains[static_cast<std::size_t>(*it)];
    }
    return {true, total};
}

} // namespace dercomb
