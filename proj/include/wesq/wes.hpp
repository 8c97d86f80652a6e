#pragma once

#include <optional>
#include <string>

#include "wesq/chain_complex.hpp"
#include "wesq/gamma.hpp"
#include "wesq/homalg.hpp"

namespace wesq {

// One degree of the skeletal tower data: Pi_n models pi_n(X^n),
// j : Pi_n -> C_n and beta_next : C_{n+1} -> Pi_n sit in diagram (1).
struct GammaSystemLevel {
    FgAbGroup pi;
    Hom j;         // Pi_n -> Z^{rank C_n}
    Hom beta_next; // Z^{rank C_{n+1}} -> Pi_n

    bool operator==(const GammaSystemLevel&) const = default;
};

// Algebraic model of the skeletal tower: a chain complex plus, per degree,
// an arbitrary f.g. abelian Pi_n with the two exactness axioms
//   j_n . beta_{n+1} = d_{n+1}     and     im j_n = ker beta_n.
// Construction checks shapes only; validate_system checks the axioms.
class GammaSystem {
  public:
    GammaSystem(ChainComplex complex, std::vector<GammaSystemLevel> levels);

    const ChainComplex& complex() const { return complex_; }
    std::size_t top() const { return complex_.top(); }
    const GammaSystemLevel& level(std::size_t n) const;

    bool operator==(const GammaSystem&) const = default;

  private:
    ChainComplex complex_;
    std::vector<GammaSystemLevel> levels_; // index n - 2
};

struct ValidationIssue {
    std::size_t degree;
    std::string axiom;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

ValidationReport validate_system(const GammaSystem& s);

// Basis of ker beta_n as a sublattice of C_n (all of C_n when n = 2).
IntMatrix ker_beta_basis(const GammaSystem& s, std::size_t n);

// Sections sigma_n of j_n on ker beta_n and t_{n+1} of d_{n+1} on
// Im d_{n+1}. Seed 0 is the canonical smallest-representative choice;
// other seeds perturb sigma by a hom into Gamma_n and t by a hom into
// ker d_{n+1}, which stays a section either way.
struct SplittingChoice {
    std::size_t degree;
    IntMatrix ker_beta; // basis L of ker beta_n in C_n
    Hom sigma;          // Z^{cols L} -> Pi_n with j . sigma = L
    IntMatrix im_basis; // basis of Im d_{n+1} in C_n
    Hom t;              // Z^{cols im_basis} -> C_{n+1} with d . t = im_basis
};

SplittingChoice choose_splitting(const GammaSystem& s, std::size_t n, std::uint64_t seed);

// The four blocks of the matrix of mu_n . beta_{n+1} . t_{n+1} on
// Im d_{n+1} + ker d_{n+1} -> Gamma_n + ker beta_n. The identities
// psi = d . t, theta = b . pr, eta = 0 are theorems; violations raise
// IntegrityError.
struct BetaDecomposition {
    Hom phi;   // Im d_{n+1} -> Gamma_n
    Hom psi;   // Im d_{n+1} -> ker beta_n (coordinates in L)
    Hom theta; // ker d_{n+1} -> Gamma_n
    Hom eta;   // ker d_{n+1} -> ker beta_n
};

BetaDecomposition beta_matrix_decomposition(const GammaSystem& s, std::size_t n,
                                            const SplittingChoice& sp);

// The characteristic n-extension [phi~_n] in Ext^1(H_n, Coker b_{n+1}),
// over the resolution Im d_{n+1} >-> ker d_n ->> H_n.
ExtClass characteristic_extension(const GammaSystem& s, std::size_t n,
                                  const SplittingChoice& sp);

// Derived Whitehead-sequence data at one degree.
struct WesLevel {
    std::size_t n = 2;
    FgAbGroup H;        // H_n
    FgAbGroup Gamma;    // Gamma_n = ker j_n
    Hom b_next;         // H_{n+1} -> Gamma_n
    Quotient coker_b;   // Gamma_n ->> Coker b_{n+1}
    Subobject ker_b;    // ker b_n >-> H_n
    ExtClass pi_class;  // [pi_n(X)] over ker b_n, target Coker b_{n+1}
};

struct WhiteheadSequence {
    std::size_t top = 2;
    std::vector<WesLevel> levels; // index n - 2

    const WesLevel& level(std::size_t n) const;
};

WhiteheadSequence derive_wes(const GammaSystem& s);

// [pi_n(X)] via theta-restriction of a characteristic extension,
// recomputed under several splitting seeds; disagreement raises
// IntegrityError (it would mean the class escaped S_n).
ExtClass pi_class(const GammaSystem& s, std::size_t n);

// The designed extension Coker b_{n+1} >-> pi_n(X) ->> ker b_n with
// pi_n(X) = coker(beta_{n+1}); the independent code path for [pi_n(X)].
struct PiExtension {
    FgAbGroup pi;
    Hom incl; // Coker b_{n+1} -> pi
    Hom surj; // pi -> ker b_n
};

PiExtension pi_extension(const GammaSystem& s, std::size_t n);

// Ladder of maps between two Whitehead sequences: f for degrees
// 2..top+1 (the last one only feeds the square at n = top), gamma for
// degrees 2..top.
struct Ladder {
    std::vector<Hom> f;
    std::vector<Hom> gamma;

    const Hom& f_at(std::size_t n) const { return f.at(n - 2); }
    const Hom& gamma_at(std::size_t n) const { return gamma.at(n - 2); }
};

struct LadderIssue {
    std::size_t degree;
    std::string condition;
    std::string detail;
};

struct LadderReport {
    std::vector<LadderIssue> issues;
    bool ok() const { return issues.empty(); }
};

// (a) gamma_n . b_{n+1} = b'_{n+1} . f_{n+1} per degree; (b) existence of
// Omega_n, decided as equality of the pushed/pulled Baer classes of the
// pi_n extensions.
LadderReport check_ladder(const WhiteheadSequence& wx, const WhiteheadSequence& wy,
                          const Ladder& l);

struct StrongWitness {
    std::size_t degree;
    ExtClass phi_x; // in S_n(X)
    ExtClass phi_y; // in S_n(Y)
};

struct StrongResult {
    bool strong = false;
    std::vector<StrongWitness> witnesses;
    LadderReport ladder;
    std::string detail;
};

// Decides per degree whether classes in S_n(X), S_n(Y) satisfying
// (f_n)^*[phi'~] = (gamma~_n)_*[phi~] exist, by subgroup membership of
// the base-class difference in (gamma~)_*(ker theta_X) + (f)^*(ker theta_Y).
StrongResult check_strong(const WhiteheadSequence& wx, const WhiteheadSequence& wy,
                          const Ladder& l);

// Algebraic model of a simply connected 4-dimensional complex:
// H2, H3, H4 with b4 : H4 -> Gamma(H2) and the class of pi_3.
class FourDimSystem {
  public:
    FourDimSystem(FgAbGroup h2, FgAbGroup h3, FgAbGroup h4, Hom b4,
                  std::optional<Hom> pi3_cocycle = std::nullopt);

    const FgAbGroup& h2() const { return h2_; }
    const FgAbGroup& h3() const { return h3_; }
    const FgAbGroup& h4() const { return h4_; }
    const Hom& b4() const { return b4_; }
    const GammaResult& gamma_h2() const { return gamma_h2_; }
    const Quotient& coker_b4() const { return coker_b4_; }
    const ExtClass& pi3_class() const { return pi3_class_; }

  private:
    FgAbGroup h2_, h3_, h4_;
    Hom b4_;
    GammaResult gamma_h2_;
    Quotient coker_b4_;
    ExtClass pi3_class_;
};

struct FourDimWitness {
    Hom f2, f3, f4;
};

struct Classify4Result {
    enum class Verdict { equivalent, not_equivalent, no_witness_within_bound };
    Verdict verdict = Verdict::not_equivalent;
    std::optional<FourDimWitness> witness;
    std::string reason;
};

// Searches isomorphisms (f2, f4, f3) with Gamma(f2) . b4 = b4' . f4 and
// matching pi_3 classes; returns the lexicographically first witness.
// NotEquivalent only when the search space is provably exhausted.
Classify4Result classify4(const FourDimSystem& x, const FourDimSystem& y,
                          const Int& free_bound = 3);

// The (truncated) Whitehead sequence of a 4-dimensional system and the
// ladder a witness induces; used to cross-check classifier output.
WhiteheadSequence wes_of_fourdim(const FourDimSystem& x);
Ladder ladder_of_witness(const FourDimSystem& x, const FourDimSystem& y,
                         const FourDimWitness& w);

} // namespace wesq
