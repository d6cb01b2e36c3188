// families.hpp -- parametric stress formulae.

#ifndef WSONE_FAMILIES_HPP
#define WSONE_FAMILIES_HPP

#include <string>
#include <string_view>
#include <vector>

namespace wsone {

struct FamilySpec {
    std::string name; ///< nestedEx, chainSucc or hornNested
    int n = 1;
};

/// Formula text of a family member. Throws std::invalid_argument on an
/// unknown family or n < 1.
std::string gen_family(const FamilySpec& spec);

const std::vector<std::string>& family_names();

} // namespace wsone

#endif
