#pragma once

#include "fairdiv/complexes.hpp"
#include "fairdiv/envyfree.hpp"
#include "fairdiv/necklace.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace fairdiv {

// Line-oriented instance files: one JSON object per line, keyed by kind, e.g.
//   {"necklace": {"r": 2, "measures": [{"breakpoints": ["0","1"], "densities": ["1"]}],
//                 "beads": "aabb"}}
//   {"allocation": {"cuts": ["1/4", "1/2"], "f": [1, 2, 1]}}
// Rationals are "p/q" strings; round-trip is exact.
struct Instance {
    std::optional<Necklace> necklace;
    std::optional<PartitionAllocation> allocation;
    std::vector<SignedMeasure> pref_measures;
};

Instance parse_instance(std::istream& in);
Instance parse_instance_file(const std::string& path);
// Also accepts the shorthand "beads:aabb@r" / "beads:aabb" instead of a path.
Instance parse_instance_arg(const std::string& arg, int r_hint);

std::string necklace_to_json_line(const Necklace& nk);
std::string allocation_to_json_line(const PartitionAllocation& pa);

// Complex exchange format: one facet per line as sorted vertex labels.
void write_complex(std::ostream& out, const SimplicialComplex& K);
SimplicialComplex read_complex(std::istream& in);
SimplicialComplex read_complex_file(const std::string& path);

// Graph specs "cube:d", "complete:r", "cycle:r", "path:r".
Graph parse_graph_spec(const std::string& spec);

} // namespace fairdiv
