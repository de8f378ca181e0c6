#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dlal/pseudo.hpp"
#include "dlal/pterm.hpp"

namespace dlal {

/// Integer assignment phi = (phi_b, phi_i). Missing parameters read as 0.
struct Instantiation {
    std::map<BoolParam, bool> booleans;
    std::map<IntParam, std::int64_t> integers;

    bool get(BoolParam b) const;
    std::int64_t get(IntParam p) const;
    std::int64_t eval(const LinComb& c) const;
};

class InadmissibleInstantiation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// First violated admissibility atom over the type combinations of `t`:
/// phi(c) >= 0 everywhere and phi(c) >= 1 under a bang with phi(b) = 1.
std::optional<std::string> admissibility_violation(const PTerm& t, const Instantiation& phi);
std::optional<std::string> admissibility_violation(const LinearPType& a, const Instantiation& phi);
std::optional<std::string> admissibility_violation(const BangPType& d, const Instantiation& phi);

/// phi(A) and phi(D). Throw InadmissibleInstantiation.
DTypePtr instantiate(const LinearPType& a, const Instantiation& phi);
DTypePtr instantiate(const BangPType& d, const Instantiation& phi);

/// phi(t). When `image` is given it receives, for each p-term node, the
/// pseudo-term node that starts its translation (for a door node: the top
/// of its door chain, or its body when phi(m) = 0).
PseudoTerm instantiate(const PTerm& t, const Instantiation& phi, std::vector<NodeId>* image = nullptr);

}  // namespace dlal
