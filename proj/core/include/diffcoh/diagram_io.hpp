#pragma once

// Plot diagram files. JSON of the form
//
//   {
//     "objects":    [{"id": "A0", "dim": 1}, ...],
//     "morphisms":  [{"id": "O01>A0", "src": "O01", "tgt": "A0",
//                     "polys": [[[[1], 1], [[0], "1/2"]]]}, ...],
//     "composites": [["g", "f", "g_after_f"], ...],
//     "n_max": 3
//   }
//
// polys lists one polynomial per target coordinate, each a list of [exponents, coefficient]
// terms over the source coordinates. Coefficients are integers or "p/q" strings. Identities
// are implicit and must not be listed; composites with an identity are implicit too.

#include <string>

#include "diffcoh/plotdiag.hpp"

namespace diffcoh::io {

// ParseError carrying "source:line: message"
plotdiag::PlotDiagram parse_diagram(const std::string& text, const std::string& source = "<input>");
plotdiag::PlotDiagram load_diagram(const std::string& path);
std::string write_diagram(const plotdiag::PlotDiagram& d);

std::string read_file(const std::string& path);  // ParseError when unreadable
// DIFFCOH_DATA_DIR if set, else the installed data directory
std::string data_dir();
// a preset name, or a path to a diagram file
plotdiag::PlotDiagram diagram_from_arg(const std::string& arg);

}  // namespace diffcoh::io
