#include "names.hpp"

#include <cctype>

namespace dlal::detail {

std::string base_name(const std::string& name) {
    auto pos = name.rfind('_');
    if (pos == std::string::npos || pos == 0 || pos + 1 == name.size()) return name;
    for (auto i = pos + 1; i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return name;
    return name.substr(0, pos);
}

std::string fresh_variant(const std::string& base, const std::set<std::string>& avoid) {
    if (!avoid.count(base)) return base;
    std::string stem = base_name(base);
    for (unsigned k = 1;; ++k) {
        std::string candidate = stem + "_" + std::to_string(k);
        if (!avoid.count(candidate)) return candidate;
    }
}

std::string NameSupply::fresh(const std::string& hint) {
    std::string name = fresh_variant(hint, used_);
    used_.insert(name);
    return name;
}

}  // namespace dlal::detail
