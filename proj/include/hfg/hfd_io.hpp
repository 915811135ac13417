#pragma once

#include <iosfwd>
#include <string>

#include "hfg/diagram.hpp"

namespace hfg {

// .hfd text format. Parsing checks syntax and references; call validate()
// for the topological invariants.
HeegaardDiagram parse_hfd(std::istream& in);
HeegaardDiagram parse_hfd_string(const std::string& text);
HeegaardDiagram read_hfd_file(const std::string& path);  // "-" reads stdin
std::string write_hfd(const HeegaardDiagram& h);

std::string format_path(const HeegaardDiagram& h, const PathSpec& p);

}  // namespace hfg
