#ifndef CATASTRO_GRAMMAR_HPP
#define CATASTRO_GRAMMAR_HPP

#include <string>

#include "catastro/radius_law.hpp"
#include "catastro/survival_law.hpp"

namespace catastro {

// Distribution grammar: degenerate:p=<f> | beta:a=<f>,b=<f> | power:a=<f>
//                       | uniform | truncexp:gamma=<f>
// Throws std::invalid_argument with a usage hint on malformed input.
SurvivalLaw parse_survival_law(const std::string& spec);

// Radius-law grammar: support:0=<f>,1=<f>,... | geomlife:p=<f> | fromdist:<distribution>
RadiusLaw parse_radius_law(const std::string& spec);

}  // namespace catastro

#endif
