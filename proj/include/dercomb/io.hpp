#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "dercomb/corpus.hpp"
#include "dercomb/errors.hpp"
#include "dercomb/fincat.hpp"
#include "dercomb/grothendieck.hpp"
#include "dercomb/label.hpp"
#include "dercomb/simplicial.hpp"

namespace dercomb::io {

using json = nlohmann::ordered_json;

inline Label label_from_json(const json& j) {
    if (j.is_number_integer()) return Label(j.get<std::int64_t>());
    if (j.is_string()) return Label(j.get<std::string>());
    if (j.is_array()) {
        Label::Tuple t;
        for (const auto& x : j) t.push_back(label_from_json(x));
        return Label(std::move(t));
    }
    throw InputError("labels must be integers, strings or arrays, got " + j.dump());
}

inline json to_json(const Label& l) {
    if (l.is_int()) return l.as_int();
    if (l.is_string()) return l.as_string();
    json a = json::array();
    for (const auto& x : l.as_tuple()) a.push_back(to_json(x));
    return a;
}

inline std::vector<Label> labels_from_json(const json& j) {
    if (!j.is_array()) throw InputError("expected a list of labels");
    std::vector<Label> out;
    for (const auto& x : j) out.push_back(label_from_json(x));
    return out;
}

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline json to_json(const Integer& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(x);
    return x.str();
}

// ---------------------------------------------------------------------------
// FinCat

inline CatPtr fincat_from_json(const json& j) {
    if (j.is_object() && j.contains("poset")) {
        const json& p = j.at("poset");
        std::vector<std::pair<Label, Label>> covers;
        if (p.contains("covers"))
            for (const auto& c : p.at("covers")) {
                if (!c.is_array() || c.size() != 2) throw InputError("covers are pairs [a, b]");
                covers.emplace_back(label_from_json(c[0]), label_from_json(c[1]));
            }
        return build_poset(labels_from_json(field(p, "objects")), covers);
    }
    if (j.is_object() && j.contains("general")) {
        const json& g = j.at("general");
        std::vector<ArrowSpec> arrows;
        for (const auto& a : field(g, "arrows")) {
            if (!a.is_array() || a.size() != 3 || !a[0].is_string()) throw InputError("arrows are [name, source, target]");
            arrows.push_back({a[0].get<std::string>(), label_from_json(a[1]), label_from_json(a[2])});
        }
        std::vector<std::pair<Label, std::string>> ids;
        for (const auto& i : field(g, "identities")) {
            if (!i.is_array() || i.size() != 2 || !i[1].is_string()) throw InputError("identities are [object, arrow]");
            ids.emplace_back(label_from_json(i[0]), i[1].get<std::string>());
        }
        std::vector<CompositionSpec> comp;
        for (const auto& c : field(g, "compose")) {
            if (!c.is_array() || c.size() != 3) throw InputError("compose entries are [g, f, g∘f]");
            comp.push_back({c[0].get<std::string>(), c[1].get<std::string>(), c[2].get<std::string>()});
        }
        return build_fincat(labels_from_json(field(g, "objects")), arrows, ids, comp);
    }
    throw InputError("a category is {\"poset\": ...} or {\"general\": ...}");
}

/// Arrow names used when writing a general category: the stored names when
/// they are unique, canonical ids otherwise.
inline std::vector<std::string> arrow_names(const FinCat& c) {
    std::vector<std::string> names;
    std::set<std::string> seen;
    bool unique = true;
    for (int f = 0; f < static_cast<int>(c.morphism_count()); ++f) {
        names.push_back(c.morphism(f).name);
        unique = unique && !names.back().empty() && seen.insert(names.back()).second;
    }
    if (!unique)
        for (int f = 0; f < static_cast<int>(c.morphism_count()); ++f) names[static_cast<std::size_t>(f)] = c.morphism_label(f).str();
    return names;
}

inline json to_json(const FinCat& c) {
    json objs = json::array();
    for (const auto& o : c.objects()) objs.push_back(to_json(o));
    bool unnamed = true;
    for (int f = 0; f < static_cast<int>(c.morphism_count()); ++f) unnamed = unnamed && c.morphism(f).name.empty();
    if (c.is_poset() && unnamed) {
        json covers = json::array();
        const int n = static_cast<int>(c.object_count());
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                if (x == y || !c.has_morphism(x, y)) continue;
                bool cover = true;
                for (int z = 0; z < n && cover; ++z)
                    if (z != x && z != y && c.has_morphism(x, z) && c.has_morphism(z, y)) cover = false;
                if (cover) covers.push_back(json::array({to_json(c.object(x)), to_json(c.object(y))}));
            }
        return {{"poset", {{"objects", objs}, {"covers", covers}}}};
    }
    auto names = arrow_names(c);
    json arrows = json::array(), ids = json::array(), comp = json::array();
    const int m = static_cast<int>(c.morphism_count());
    for (int f = 0; f < m; ++f)
        arrows.push_back(json::array({names[static_cast<std::size_t>(f)], to_json(c.object(c.source(f))), to_json(c.object(c.target(f)))}));
    for (int x = 0; x < static_cast<int>(c.object_count()); ++x)
        ids.push_back(json::array({to_json(c.object(x)), names[static_cast<std::size_t>(c.identity(x))]}));
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f)
            if (auto h = c.compose(g, f))
                comp.push_back(json::array({names[static_cast<std::size_t>(g)], names[static_cast<std::size_t>(f)], names[static_cast<std::size_t>(*h)]}));
    return {{"general", {{"objects", objs}, {"arrows", arrows}, {"identities", ids}, {"compose", comp}}}};
}

// ---------------------------------------------------------------------------
// Functor

inline Functor functor_from_json(const json& j) {
    CatPtr s = fincat_from_json(field(j, "source"));
    CatPtr t = fincat_from_json(field(j, "target"));
    std::vector<int> obj(s->object_count(), -1);
    for (const auto& p : field(j, "objects")) {
        if (!p.is_array() || p.size() != 2) throw InputError("object map entries are [x, F(x)]");
        obj[static_cast<std::size_t>(s->object_index(label_from_json(p[0])))] = t->object_index(label_from_json(p[1]));
    }
    for (std::size_t x = 0; x < obj.size(); ++x)
        if (obj[x] < 0) throw InputError("object map misses " + s->object(static_cast<int>(x)).str());
    if (!j.contains("morphisms")) return Functor::from_object_map(s, t, std::move(obj));
    std::vector<int> mor(s->morphism_count(), -1);
    auto arrow = [](const FinCat& c, const json& n) {
        if (!n.is_string()) throw InputError("morphisms are named by strings");
        auto f = c.find_morphism(n.get<std::string>());
        if (!f) throw InputError("unknown arrow " + n.get<std::string>());
        return *f;
    };
    for (const auto& p : j.at("morphisms")) {
        if (!p.is_array() || p.size() != 2) throw InputError("morphism map entries are [f, F(f)]");
        mor[static_cast<std::size_t>(arrow(*s, p[0]))] = arrow(*t, p[1]);
    }
    for (std::size_t f = 0; f < mor.size(); ++f)
        if (mor[f] < 0) {
            int x = obj[static_cast<std::size_t>(s->source(static_cast<int>(f)))];
            int y = obj[static_cast<std::size_t>(s->target(static_cast<int>(f)))];
            if (s->is_identity(static_cast<int>(f)) && x == y) mor[f] = t->identity(x);
            else if (t->hom(x, y).size() == 1) mor[f] = t->hom(x, y).front();
            else throw InputError("morphism map misses " + s->morphism_str(static_cast<int>(f)));
        }
    return Functor(s, t, std::move(obj), std::move(mor));
}

inline json to_json(const InclusionClass& c) {
    return {{"fully_faithful", c.fully_faithful},
            {"injective_on_objects", c.injective_on_objects},
            {"sieve", c.sieve},
            {"cosieve", c.cosieve}};
}

inline json to_json(const Comma& c, const Functor& u) {
    json proj = json::array(), alpha = json::array();
    const FinCat& cat = *c.category;
    for (int x = 0; x < static_cast<int>(cat.object_count()); ++x) {
        proj.push_back(json::array({to_json(cat.object(x)), to_json(u.source()->object(c.projection(x)))}));
        alpha.push_back(json::array({to_json(cat.object(x)), to_json(u.target()->morphism_label(c.alpha.component(x)))}));
    }
    return {{"category", to_json(cat)}, {"projection", proj}, {"alpha", alpha}};
}

// ---------------------------------------------------------------------------
// SSet

inline SSet sset_from_json(const json& j) {
    int n = field(j, "truncation").get<int>();
    if (n < 0) throw InputError("truncation must be >= 0");
    const json& lv = field(j, "levels");
    if (!lv.is_array() || static_cast<int>(lv.size()) != n + 1) throw InputError("levels must list dimensions 0..N");
    std::vector<std::vector<Label>> levels;
    std::vector<std::unordered_map<Label, int, LabelHash>> index;
    for (const auto& l : lv) {
        levels.push_back(labels_from_json(l));
        std::unordered_map<Label, int, LabelHash> m;
        for (std::size_t i = 0; i < levels.back().size(); ++i) m.emplace(levels.back()[i], static_cast<int>(i));
        index.push_back(std::move(m));
    }
    auto tables = [&](const json& src, int shift, const char* what) {
        if (!src.is_array() || static_cast<int>(src.size()) != n + 1)
            throw InputError(std::string(what) + " must list dimensions 0..N");
        std::vector<std::vector<SSet::Table>> out;
        for (int k = 0; k <= n; ++k) {
            std::vector<SSet::Table> maps;
            int target = k + shift;
            for (const auto& m : src[static_cast<std::size_t>(k)]) {
                if (target < 0 || target > n) throw InputError(std::string(what) + " at level " + std::to_string(k) + " have no target level");
                SSet::Table t;
                for (const auto& v : m) {
                    auto it = index[static_cast<std::size_t>(target)].find(label_from_json(v));
                    if (it == index[static_cast<std::size_t>(target)].end())
                        throw InputError(std::string(what) + " value " + v.dump() + " is not in level " + std::to_string(target));
                    t.push_back(it->second);
                }
                maps.push_back(std::move(t));
            }
            out.push_back(std::move(maps));
        }
        return out;
    };
    auto faces = tables(field(j, "faces"), -1, "faces");
    auto degs = tables(field(j, "degeneracies"), 1, "degeneracies");
    return tabulated_sset(n, std::move(levels), std::move(faces), std::move(degs));
}

inline json to_json(const SSet& x) {
    json levels = json::array(), faces = json::array(), degs = json::array();
    SSetTables t = generator_tables(x);
    for (int k = 0; k <= x.truncation(); ++k) {
        json l = json::array();
        for (const auto& s : x.level(k)) l.push_back(to_json(s));
        levels.push_back(l);
        json fk = json::array(), dk = json::array();
        for (const auto& m : t.faces[static_cast<std::size_t>(k)]) {
            json row = json::array();
            for (int v : m) row.push_back(to_json(x.simplex(k - 1, v)));
            fk.push_back(row);
        }
        for (const auto& m : t.degeneracies[static_cast<std::size_t>(k)]) {
            json row = json::array();
            for (int v : m) row.push_back(to_json(x.simplex(k + 1, v)));
            dk.push_back(row);
        }
        faces.push_back(fk);
        degs.push_back(dk);
    }
    return {{"truncation", x.truncation()}, {"levels", levels}, {"faces", faces}, {"degeneracies", degs}};
}

// ---------------------------------------------------------------------------
// K₀

inline K0Presentation k0_from_json(const json& j) {
    K0Presentation p;
    p.generators = labels_from_json(field(j, "generators"));
    if (j.contains("cofiber"))
        for (const auto& r : j.at("cofiber")) {
            if (!r.is_array() || r.size() != 3) throw InputError("cofiber relations are [a, b, c]");
            p.cofiber.emplace_back(label_from_json(r[0]), label_from_json(r[1]), label_from_json(r[2]));
        }
    if (j.contains("iso"))
        for (const auto& r : j.at("iso")) {
            if (!r.is_array() || r.size() != 2) throw InputError("iso pairs are [x, y]");
            p.iso.emplace_back(label_from_json(r[0]), label_from_json(r[1]));
        }
    if (j.contains("zero")) p.zero = labels_from_json(j.at("zero"));
    return p;
}

inline json to_json(const AbelianGroup& g) {
    json tors = json::array(), classes = json::object();
    for (const auto& d : g.torsion) tors.push_back(to_json(d));
    for (std::size_t i = 0; i < g.generators.size(); ++i) {
        json v = json::array();
        for (const auto& c : g.classes[i]) v.push_back(to_json(c));
        classes[g.generators[i].str()] = v;
    }
    return {{"rank", g.rank}, {"torsion", tors}, {"classes", classes}};
}

// ---------------------------------------------------------------------------
// Reports

inline json to_json(const VerificationReport& r) {
    json claims = json::array();
    for (const auto& c : r.claims)
        claims.push_back({{"id", c.id},
                          {"location", c.location},
                          {"verdict", c.pass ? "pass" : "fail"},
                          {"witness", c.witness},
                          {"elapsed_ms", c.elapsed_ms}});
    return {{"claims", claims}, {"summary", {{"total", r.claims.size()}, {"passed", r.passed}, {"failed", r.failed}}}};
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError("malformed JSON in " + path + ": " + e.what());
    }
}

} // namespace dercomb::io
