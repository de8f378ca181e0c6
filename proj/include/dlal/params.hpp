#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>

namespace dlal {

/// Integer parameter. Door parameters print as m<id>, type parameters as n<id>;
/// both draw from one id space.
struct IntParam {
    std::uint32_t id = 0;
    bool door = false;

    friend bool operator==(IntParam a, IntParam b) { return a.id == b.id; }
    friend auto operator<=>(IntParam a, IntParam b) { return a.id <=> b.id; }
};

struct BoolParam {
    std::uint32_t id = 0;

    friend bool operator==(BoolParam, BoolParam) = default;
    friend auto operator<=>(BoolParam, BoolParam) = default;
};

std::string to_string(IntParam p);
std::string to_string(BoolParam p);

/// Linear combination of integer parameters with positive coefficients.
/// The empty combination is 0.
class LinComb {
public:
    LinComb() = default;
    explicit LinComb(IntParam p) { terms_[p] = 1; }

    bool is_zero() const { return terms_.empty(); }
    const std::map<IntParam, std::int64_t>& terms() const { return terms_; }

    LinComb& operator+=(const LinComb& other);
    friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }

    friend bool operator==(const LinComb&, const LinComb&) = default;
    friend auto operator<=>(const LinComb& a, const LinComb& b) { return a.terms_ <=> b.terms_; }

    template <class Value, class Lookup>
    Value evaluate(Lookup&& lookup) const {
        Value sum{0};
        for (const auto& [p, k] : terms_) sum += Value(k) * lookup(p);
        return sum;
    }

private:
    std::map<IntParam, std::int64_t> terms_;
};

std::string to_string(const LinComb& c);

/// Fresh-parameter allocator. One pool per decoration; not thread-safe.
class ParamPool {
public:
    IntParam fresh_door() { return IntParam{next_++, true}; }
    IntParam fresh_type() { return IntParam{next_++, false}; }
    BoolParam fresh_bool() { return BoolParam{next_bool_++}; }

    std::uint32_t int_count() const { return next_; }
    std::uint32_t bool_count() const { return next_bool_; }

private:
    std::uint32_t next_ = 1;
    std::uint32_t next_bool_ = 1;
};

}  // namespace dlal
