// Named cubic graphs used across tests and the CLI.

#pragma once

#include "cubiso/graph.hpp"

namespace cubiso {
namespace fixtures {

CubicGraph k4();
CubicGraph k33();
CubicGraph prism();     // triangular prism, K3 x K2
CubicGraph petersen();  // girth 5, diameter 2
CubicGraph heawood();   // girth 6, diameter 3
CubicGraph mcgee();     // girth 7, diameter 4
CubicGraph foster();    // girth 10, diameter 8, 90 vertices

// Two m-cycles joined by rungs; 2m vertices. Outer cycle 0..m-1, inner m..2m-1,
// rung i -- m+i.
CubicGraph circular_ladder(int m);

// Outer cycle 0..m-1, inner vertices m..2m-1 with inner edges at step k, rungs
// i -- m+i. Requires m >= 3, k >= 1, 2k != m.
CubicGraph generalized_petersen(int m, int k);

// Two copies of an outer 2m-cycle with m apexes; apex j of a copy covers outer
// vertices 2j and 2j+1 and is rung-joined to apex j of the other copy. Per copy
// base c*3m: outer ids base..base+2m-1, apexes base+2m..base+3m-1; 6m vertices.
// Requires even m >= 4.
CubicGraph apex_ladder(int m);

// Cubic graph on a Hamiltonian cycle 0..n-1 with chord offsets repeating the
// given pattern (LCF notation).
CubicGraph from_lcf(int n, const std::vector<int>& pattern);

// Named lookup for the CLI: k4, k33, prism, petersen, heawood, mcgee, foster,
// cl<m> (e.g. cl40), gp<m>x<k> (e.g. gp60x2), apex<m> (e.g. apex16). Throws
// invalid_graph on unknown names.
CubicGraph by_name(const std::string& name);

}  // namespace fixtures
}  // namespace cubiso
