#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dercomb {

/// Structured object label: an integer, a string, or a tuple of labels.
///
/// Grid coordinates such as (i,j) or (a1,b1,a2,b2) are tuples of integers.
class Label {
public:
    using Tuple = std::vector<Label>;

    Label() : value_(std::int64_t{0}) {}

    template <std::integral I>
        requires(!std::same_as<I, bool>)
    Label(I x) : value_(static_cast<std::int64_t>(x)) {}

    Label(std::string s) : value_(std::move(s)) {}
    Label(const char* s) : value_(std::string(s)) {}
    Label(Tuple t) : value_(std::move(t)) {}

    bool is_int() const { return value_.index() == 0; }
    bool is_string() const { return value_.index() == 1; }
    bool is_tuple() const { return value_.index() == 2; }

    std::int64_t as_int() const { return std::get<0>(value_); }
    const std::string& as_string() const { return std::get<1>(value_); }
    const Tuple& as_tuple() const { return std::get<2>(value_); }

    /// Tuple component access; throws std::bad_variant_access on non-tuples.
    const Label& operator[](std::size_t i) const { return as_tuple().at(i); }
    std::size_t arity() const { return is_tuple() ? as_tuple().size() : 0; }

    std::string str() const {
        switch (value_.index()) {
        case 0:
            return std::to_string(as_int());
        case 1:
            return as_string();
        default: {
            std::string out = "(";
            const auto& t = as_tuple();
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (i) out += ",";
                out += t[i].str();
            }
            return out + ")";
        }
        }
    }

    friend bool operator==(const Label& a, const Label& b) {
        return a.value_ == b.value_;
    }

    friend std::strong_ordering operator<=>(const Label& a, const Label& b) {
        if (a.value_.index() != b.value_.index())
            return a.value_.index() <=> b.value_.index();
        switch (a.value_.index()) {
        case 0:
            return a.as_int() <=> b.as_int();
        case 1: {
            int c = a.as_string().compare(b.as_string());
            return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater
                         : std::strong_ordering::equal;
        }
        default: {
            const auto& x = a.as_tuple();
            const auto& y = b.as_tuple();
            for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
                auto c = x[i] <=> y[i];
                if (c != 0) return c;
            }
            return x.size() <=> y.size();
        }
        }
    }

    std::size_t hash() const {
        std::size_t h = value_.index() * 0x9e3779b97f4a7c15ULL;
        switch (value_.index()) {
        case 0:
            return h ^ std::hash<std::int64_t>{}(as_int());
        case 1:
            return h ^ std::hash<std::string>{}(as_string());
        default:
            for (const auto& x : as_tuple())
                h = (h ^ x.hash()) * 0x100000001b3ULL + 0x9e3779b9;
            return h;
        }
    }

private:
    std::variant<std::int64_t, std::string, Tuple> value_;
};

struct LabelHash {
    std::size_t operator()(const Label& l) const { return l.hash(); }
};

/// tup(1, 0) == Label(Label::Tuple{1, 0})
template <class... Ts>
Label tup(Ts&&... xs) {
    return Label(Label::Tuple{Label(std::forward<Ts>(xs))...});
}

inline Label tuple_of(std::initializer_list<std::int64_t> xs) {
    Label::Tuple t;
    for (auto x : xs) t.emplace_back(x);
    return Label(std::move(t));
}

inline Label tuple_of(const std::vector<int>& xs) {
    Label::Tuple t;
    t.reserve(xs.size());
    for (auto x : xs) t.emplace_back(x);
    return Label(std::move(t));
}

} // namespace dercomb
