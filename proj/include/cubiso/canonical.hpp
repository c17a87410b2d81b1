// Exact canonical labelling for SmallGraph via invariant refinement plus
// individualisation search. Two graphs (optionally vertex-coloured) receive
// equal canonical bytes iff they are isomorphic (colour-preservingly).

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubiso/graph.hpp"

namespace cubiso {

struct CanonicalForm {
    std::string bytes;

    bool oversized() const { return !bytes.empty() && bytes[0] == 2; }
    // Pseudo-form for a component too large to canonicalise; carries size and
    // edge count so distinct shapes at least differ when those do.
    static CanonicalForm oversized_sentinel(long n, long m);

    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
    friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
};

struct CanonicalLabeling {
    CanonicalForm form;
    std::vector<int> position;  // position[v] = index of v in the canonical order
};

class canonical_budget_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// colors, if given, is one small non-negative label per vertex; the labelling
// then canonicalises the coloured graph. leaf_budget bounds the search tree.
CanonicalLabeling canonical_labeling(const SmallGraph& g,
                                     const std::vector<int>* colors = nullptr,
                                     long leaf_budget = 1 << 20);

CanonicalForm canonical_form(const SmallGraph& g);

// Canonical form of the path on t vertices (t >= 1); cached.
const CanonicalForm& path_form(int t);

}  // namespace cubiso
