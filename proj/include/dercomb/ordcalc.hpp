#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dercomb/errors.hpp"
#include "dercomb/label.hpp"

namespace dercomb {

/// A nonempty finite chain; the order is the list order.
class TotalOrder {
public:
    explicit TotalOrder(std::vector<Label> elements) : elements_(std::move(elements)) {
        if (elements_.empty()) throw InputError("total orders must be nonempty");
        for (std::size_t i = 0; i < elements_.size(); ++i)
            if (!index_.emplace(elements_[i], static_cast<int>(i)).second)
                throw InputError("duplicate element " + elements_[i].str() + " in total order");
    }

    int size() const { return static_cast<int>(elements_.size()); }
    const std::vector<Label>& elements() const { return elements_; }
    const Label& element(int i) const { return elements_.at(static_cast<std::size_t>(i)); }

    std::optional<int> find(const Label& l) const {
        auto it = index_.find(l);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    int index_of(const Label& l) const {
        if (auto i = find(l)) return *i;
        throw InputError("element " + l.str() + " not in order");
    }

    friend bool operator==(const TotalOrder& a, const TotalOrder& b) { return a.elements_ == b.elements_; }

private:
    std::vector<Label> elements_;
    std::unordered_map<Label, int, LabelHash> index_;
};

/// [n] as a chain labelled 0..n.
inline TotalOrder ordinal_order(int n) {
    if (n < 0) throw InputError("ordinal [n] needs n >= 0");
    std::vector<Label> e;
    for (int i = 0; i <= n; ++i) e.emplace_back(i);
    return TotalOrder(std::move(e));
}

/// Order-preserving map, stored as positions in the target.
class MonotoneMap {
public:
    MonotoneMap(TotalOrder source, TotalOrder target, std::vector<int> values)
        : source_(std::move(source)), target_(std::move(target)), values_(std::move(values)) {
        if (static_cast<int>(values_.size()) != source_.size()) throw InputError("monotone map has wrong length");
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (values_[i] < 0 || values_[i] >= target_.size()) throw InputError("monotone map value out of range");
            if (i && values_[i] < values_[i - 1])
                throw LawViolation("map is not monotone at " + source_.element(static_cast<int>(i)).str());
        }
    }

    /// Map [m] → [k] given by its values.
    static MonotoneMap between_ordinals(int k, std::vector<int> values) {
        int m = static_cast<int>(values.size()) - 1;
        return MonotoneMap(ordinal_order(m), ordinal_order(k), std::move(values));
    }

    const TotalOrder& source() const { return source_; }
    const TotalOrder& target() const { return target_; }
    const std::vector<int>& values() const { return values_; }
    int operator()(int i) const { return values_[static_cast<std::size_t>(i)]; }

    friend bool operator==(const MonotoneMap& a, const MonotoneMap& b) {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.values_ == b.values_;
    }

private:
    TotalOrder source_;
    TotalOrder target_;
    std::vector<int> values_;
};

/// g ∘ f
inline MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f) {
    if (!(f.target() == g.source())) throw InputError("monotone maps are not composable");
    std::vector<int> v;
    for (int x : f.values()) v.push_back(g(x));
    return MonotoneMap(f.source(), g.target(), std::move(v));
}

inline MonotoneMap identity_map(const TotalOrder& a) {
    std::vector<int> v(static_cast<std::size_t>(a.size()));
    for (int i = 0; i < a.size(); ++i) v[static_cast<std::size_t>(i)] = i;
    return MonotoneMap(a, a, std::move(v));
}

inline MonotoneMap constant_map(const TotalOrder& a, const TotalOrder& b, int value) {
    return MonotoneMap(a, b, std::vector<int>(static_cast<std::size_t>(a.size()), value));
}

/// A∗B: (0,a) for a in A, then (1,b) for b in B.
inline TotalOrder concat(const TotalOrder& a, const TotalOrder& b) {
    std::vector<Label> e;
    for (const auto& x : a.elements()) e.push_back(tup(0, x));
    for (const auto& y : b.elements()) e.push_back(tup(1, y));
    return TotalOrder(std::move(e));
}

/// A⋉B: pairs (a,b), a-major.
inline TotalOrder lex(const TotalOrder& a, const TotalOrder& b) {
    std::vector<Label> e;
    for (const auto& x : a.elements())
        for (const auto& y : b.elements()) e.push_back(tup(x, y));
    return TotalOrder(std::move(e));
}

/// The block inclusions a ↦ (0,a) and a ↦ (1,a) into A∗A.
inline std::pair<MonotoneMap, MonotoneMap> block_inclusions(const TotalOrder& a) {
    TotalOrder aa = concat(a, a);
    std::vector<int> v0, v1;
    for (int i = 0; i < a.size(); ++i) {
        v0.push_back(i);
        v1.push_back(a.size() + i);
    }
    return {MonotoneMap(a, aa, std::move(v0)), MonotoneMap(a, aa, std::move(v1))};
}

struct Pullback {
    /// absent when the underlying set is empty
    std::optional<TotalOrder> order;
    /// (position in A, position in B) for each element, in order
    std::vector<std::pair<int, int>> coords;
    bool empty = true;

    int position(int a, int b) const {
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (coords[i] == std::pair(a, b)) return static_cast<int>(i);
        return -1;
    }
};

/// φ⁻¹(s) = {(a,b) : φ(a) = s(b)}, ordered by b first, then a. Elements are
/// labelled (a, b).
inline Pullback grayson_pullback(const MonotoneMap& phi, const MonotoneMap& s) {
    if (!(phi.target() == s.target())) throw InputError("φ and s need a common codomain");
    Pullback r;
    for (int b = 0; b < s.source().size(); ++b)
        for (int a = 0; a < phi.source().size(); ++a)
            if (phi(a) == s(b)) r.coords.emplace_back(a, b);
    r.empty = r.coords.empty();
    if (!r.empty) {
        std::vector<Label> e;
        for (auto [a, b] : r.coords) e.push_back(tup(phi.source().element(a), s.source().element(b)));
        r.order.emplace(std::move(e));
    }
    return r;
}

/// s: [2] → [1], 0 ↦ 0, 1,2 ↦ 1
inline const MonotoneMap& s_map() {
    static const MonotoneMap m = MonotoneMap::between_ordinals(1, {0, 1, 1});
    return m;
}

/// d: [1] → [2], 0 ↦ 0, 1 ↦ 1
inline const MonotoneMap& d_map() {
    static const MonotoneMap m = MonotoneMap::between_ordinals(2, {0, 1});
    return m;
}

/// e: [1] → [2], 0 ↦ 0, 1 ↦ 2
inline const MonotoneMap& e_map() {
    static const MonotoneMap m = MonotoneMap::between_ordinals(2, {0, 2});
    return m;
}

struct IntervalData {
    Pullback pullback;
    MonotoneMap d;
    MonotoneMap e;
    /// d(a) ≤ e(a) for every a, i.e. the transformation ζ: d ⇒ e exists
    bool zeta;
    MonotoneMap i0;
    MonotoneMap i1;
};

inline void require_interval_target(const MonotoneMap& phi) {
    if (!(phi.target() == ordinal_order(1))) throw InputError("φ must take values in [1]");
}

/// d(a) = (a, dφ(a)) and e(a) = (a, eφ(a)) into φ⁻¹(s), with the block
/// inclusions of A into A∗A.
inline IntervalData interval_data(const MonotoneMap& phi) {
    require_interval_target(phi);
    Pullback pb = grayson_pullback(phi, s_map());
    std::vector<int> dv, ev;
    for (int a = 0; a < phi.source().size(); ++a) {
        dv.push_back(pb.position(a, d_map()(phi(a))));
        ev.push_back(pb.position(a, e_map()(phi(a))));
    }
    bool zeta = true;
    for (std::size_t a = 0; a < dv.size(); ++a) zeta = zeta && dv[a] <= ev[a];
    MonotoneMap d(phi.source(), *pb.order, dv);
    MonotoneMap e(phi.source(), *pb.order, ev);
    auto [i0, i1] = block_inclusions(phi.source());
    return {std::move(pb), std::move(d), std::move(e), zeta, std::move(i0), std::move(i1)};
}

/// ψ′: (φψ)⁻¹(s) → φ⁻¹(s), (b, k) ↦ (ψ(b), k), for ψ: B → A.
inline MonotoneMap induced_map(const MonotoneMap& phi, const MonotoneMap& psi) {
    require_interval_target(phi);
    MonotoneMap phipsi = compose(phi, psi);
    Pullback src = grayson_pullback(phipsi, s_map());
    Pullback tgt = grayson_pullback(phi, s_map());
    std::vector<int> v;
    for (auto [b, k] : src.coords) v.push_back(tgt.position(psi(b), k));
    return MonotoneMap(*src.order, *tgt.order, std::move(v));
}

/// All monotone [m] → [k] as value lists, lexicographically.
inline std::vector<std::vector<int>> monotone_maps(int m, int k) {
    std::vector<std::vector<int>> out;
    if (m < 0 || k < 0) return out;
    std::vector<int> cur(static_cast<std::size_t>(m + 1), 0);
    while (true) {
        out.push_back(cur);
        int i = m;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == k) --i;
        if (i < 0) break;
        int v = cur[static_cast<std::size_t>(i)] + 1;
        for (int t = i; t <= m; ++t) cur[static_cast<std::size_t>(t)] = v;
    }
    return out;
}

namespace detail {
// Block concatenation that tolerates empty blocks; labels (block, x).
inline std::vector<Label> concat_blocks(const std::vector<std::vector<Label>>& blocks) {
    std::vector<Label> out;
    for (std::size_t k = 0; k < blocks.size(); ++k)
        for (const auto& x : blocks[k]) out.push_back(tup(static_cast<int>(k), x));
    return out;
}
} // namespace detail

/// Checks that (a,b) ↦ (b,a) is an order isomorphism
/// φ⁻¹(s) ≅ φ⁻¹(0) ∗ φ⁻¹(1) ∗ φ⁻¹(1). Fibers may be empty here.
inline std::optional<std::string> decomposition_violation(const MonotoneMap& phi) {
    require_interval_target(phi);
    Pullback pb = grayson_pullback(phi, s_map());
    std::vector<std::vector<Label>> blocks(3);
    for (int b = 0; b < 3; ++b)
        for (int a = 0; a < phi.source().size(); ++a)
            if (phi(a) == s_map()(b)) blocks[static_cast<std::size_t>(b)].push_back(phi.source().element(a));
    auto target = detail::concat_blocks(blocks);
    if (target.size() != pb.coords.size())
        return "size mismatch: " + std::to_string(pb.coords.size()) + " vs " + std::to_string(target.size());
    for (std::size_t i = 0; i < pb.coords.size(); ++i) {
        auto [a, b] = pb.coords[i];
        Label image = tup(b, phi.source().element(a));
        if (!(image == target[i]))
            return "position " + std::to_string(i) + ": " + pb.order->element(static_cast<int>(i)).str() +
                   " goes to " + image.str() + " but the block order has " + target[i].str();
    }
    return std::nullopt;
}

} // namespace dercomb
