#pragma once

#include <string>
#include <vector>

#include "wesq/wes.hpp"

namespace wesq::testutil {

// A gamma system constructed from chosen Gamma_n, b_{n+1} and extension
// data E_{n+1}, with the designed pieces kept for round-trip assertions.
// The generator builds Pi_n = Gamma_n + ker beta_n and machine-verifies
// the axioms before returning.
struct Fixture {
    std::string name;
    GammaSystem system;
    std::vector<FgAbGroup> gammas;   // Gamma_n for n = 2..top
    std::vector<Hom> designed_b;     // b_{n+1} : H_{n+1} -> Gamma_n for n = 2..top
    std::vector<IntMatrix> ext_data; // E_{n+1} : Gamma_n x rank(Im d_{n+1}), n = 2..top-1
    std::vector<Hom> gamma_inj;      // designed inclusion Gamma_n -> Pi_n
    bool free_homology = false;
};

// b_matrices[n-2] is the matrix of b_{n+1} on canonical generators of
// H_{n+1}(complex); ext_matrices[n-2] has one column per Im d_{n+1} basis
// vector. Throws if the assembled system fails validation.
Fixture build_fixture(std::string name, ChainComplex complex, std::vector<FgAbGroup> gammas,
                      std::vector<IntMatrix> b_matrices, std::vector<IntMatrix> ext_matrices);

// Deterministic corpus of small systems with top dimension <= 5.
const std::vector<Fixture>& fixture_corpus();

} // namespace wesq::testutil
