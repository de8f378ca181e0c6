#pragma once

// Fresh-name generation for binders.

#include <set>
#include <string>

namespace dlal::detail {

/// Strips a trailing "_<digits>" suffix.
std::string base_name(const std::string& name);

/// `base` itself if not in `avoid`, else the first base_k not in `avoid`.
std::string fresh_variant(const std::string& base, const std::set<std::string>& avoid);

class NameSupply {
public:
    void reserve(const std::string& name) { used_.insert(name); }

    /// A name not handed out or reserved before; prefers `hint` unchanged.
    std::string fresh(const std::string& hint);

private:
    std::set<std::string> used_;
};

}  // namespace dlal::detail
