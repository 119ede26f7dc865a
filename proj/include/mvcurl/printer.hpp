#pragma once

#include <string>

#include "mvcurl/document.hpp"

namespace mvcurl {

// Canonical text in the DSL expression syntax. Polynomial terms descend in
// graded lex order; blades ascend; zero prints as "0".
std::string print_canonical(const Polynomial& p, const Chart& chart);
std::string print_canonical(const RationalFunc& f, const Chart& chart);
std::string print_canonical(const Multivector& a);
std::string print_canonical(const DifferentialForm& omega);
std::string print_canonical(const VolumeForm& v);
std::string print_canonical(const StructureConstants& c);
// Whole document; typed zeros of positive grade keep their grade.
std::string print_canonical(const Document& doc);

}  // namespace mvcurl
