#ifndef MACSCOPE_SPEC_IO_HPP
#define MACSCOPE_SPEC_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "macscope/structure.hpp"

namespace macscope {

/// Builds a structure from a spec document:
///   {"builder": "paley", "q": 13, "declare": {"extra": 1}}
/// The "explicit" builder takes full carrier/table listings.
FiniteStructure structure_from_spec(const nlohmann::json& spec);
FiniteStructure structure_from_file(const std::string& path);

/// Expands a class spec like "paley:q=13,17,29" or "vs:q=2,3:n=1..3".
/// Multi-valued keys combine as a cartesian product in declaration order.
std::vector<FiniteStructure> expand_class_spec(const std::string& spec);

}  // namespace macscope

#endif
