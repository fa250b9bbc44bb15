// Builds a small flow, realizes it, and prints the small censuses.

#include <iostream>

#include "flowcensus/catalog.hpp"

using namespace flowcensus;

int main() {
    // a path with two edges; dart 1 sits at the middle vertex
    auto chain = CombinatorialMap::from_rotation({0, 2, 1, 3});
    auto flow = make_marked(chain, {MarkKind::source, 1});
    std::cout << "code: " << canonical_code(flow).token() << '\n';

    auto diagram = realize(flow);
    std::cout << "singular points:";
    for (const auto& p : diagram.points) std::cout << ' ' << to_string(p.kind);
    std::cout << "\nreversed: " << canonical_code(reverse(flow)).token() << '\n';

    for (int e = 1; e <= 3; ++e) std::cout << "maps with " << e << " edges: " << generate_maps({e}).size() << '\n';
    for (int n = 1; n <= 3; ++n) std::cout << "saddle-node flows, " << n << " saddles: " << saddle_node_census(n).total() << '\n';
    for (int n = 2; n <= 3; ++n) std::cout << "saddle-connection flows, " << n << " saddles: " << saddle_connection_census(n).total << '\n';
}
