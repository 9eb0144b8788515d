// Built-in copies of the data/ fixtures so the report command and the test
// suite run without filesystem lookups. The strings are byte-identical to
// the shipped files; a test enforces the equality.
#pragma once

namespace ksctx::fixtures {

inline constexpr const char* kChshScenario =
    R"(# CHSH scenario: two dichotomic observables per party, all four cross
# contexts measured, functional E(a,b) + E(a,b') + E(a',b) - E(a',b').
# Identical to the built-in default scenario.
observable left a
observable left a'
observable right b
observable right b'
context a b
context a b'
context a' b
context a' b'
functional a b +1
functional a b' +1
functional a' b +1
functional a' b' -1
)";

inline constexpr const char* kCabello18Hypergraph =
    R"(# 18-vector, 9-context Kochen-Specker configuration in R^4 after Cabello,
# Estebaranz, Garcia-Alcaine (1996). Atom labels spell the vector
# components; each context is a complete orthogonal basis and every vector
# appears in exactly two contexts. Validated by exhaustive enumeration:
# admits no two-valued state.
0,0,0,1 0,0,1,0 1,1,0,0 1,-1,0,0
0,0,0,1 0,1,0,0 1,0,1,0 1,0,-1,0
1,-1,1,-1 1,-1,-1,1 1,1,0,0 0,0,1,1
1,-1,1,-1 1,1,1,1 1,0,-1,0 0,1,0,-1
0,0,1,0 0,1,0,0 1,0,0,1 1,0,0,-1
1,-1,-1,1 1,1,1,1 1,0,0,-1 0,1,-1,0
1,1,-1,1 1,1,1,-1 1,-1,0,0 0,0,1,1
1,1,-1,1 -1,1,1,1 1,0,1,0 0,1,0,-1
1,1,1,-1 -1,1,1,1 1,0,0,1 0,1,-1,0
)";

inline constexpr const char* kPentagonHypergraph =
    R"(# Orthogonality pentagon (KCBS-style): five contexts of three atoms
# arranged in a cycle, neighbouring contexts sharing one vertex atom.
# Not a Kochen-Specker configuration: exhaustive enumeration finds 11
# two-valued states, and the state set is unital and separating.
v0 u0 v1
v1 u1 v2
v2 u2 v3
v3 u3 v4
v4 u4 v0
)";

}  // namespace ksctx::fixtures
