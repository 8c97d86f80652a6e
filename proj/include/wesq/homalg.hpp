#pragma once

#include <cstdint>

#include "wesq/chain_complex.hpp"
#include "wesq/fgab.hpp"

namespace wesq {

// Canonical form of A (x) B.
FgAbGroup tensor(const FgAbGroup& a, const FgAbGroup& b);

// Canonical form of Hom(A, B).
FgAbGroup hom_group(const FgAbGroup& a, const FgAbGroup& b);

// Two-step free resolution R1 >-> R0 ->> A. `section` is a set-theoretic
// section of proj on canonical generators: proj(section * x) = x.
struct FreeResolution {
    FgAbGroup base;
    FgAbGroup r1, r0; // free
    Hom kappa;        // R1 -> R0, injective
    Hom proj;         // R0 -> A, surjective
    IntMatrix section;

    bool operator==(const FreeResolution&) const = default;
};

// R0 = free on the canonical generators of A, R1 = their order relations.
FreeResolution canonical_resolution(const FgAbGroup& a);

// The resolution Im d_{n+1} >-> ker d_n ->> H_n(C) carried by a complex.
FreeResolution resolution_from_complex(const ChainComplex& c, std::size_t n);

// Ext^1(A, C) presented as Hom(R1, C) / kappa^* Hom(R0, C). Always finite.
// Cocycles Hom(R1, C) are flattened column-major: slot i*|gens C| + u holds
// the u-th coordinate of the image of the i-th R1 generator.
struct Ext1 {
    FreeResolution res;
    FgAbGroup target;
    FgAbGroup group;
    IntMatrix to_canonical;
    IntMatrix lift;

    IntVec normal_form(const Hom& cocycle) const;
    Hom cocycle_of(const IntVec& coords) const;
};

Ext1 ext1_over(const FreeResolution& res, const FgAbGroup& target);
Ext1 ext1(const FgAbGroup& a, const FgAbGroup& b);

// Element of Ext^1(base, target), pinned to one resolution of the base.
// Two classes over the same (base, target, resolution) are equal iff their
// normal forms agree; cross-resolution comparison goes through transport.
struct ExtClass {
    FreeResolution res;
    FgAbGroup target;
    Hom cocycle;
    FgAbGroup ext_group;
    IntVec normal_form;

    bool is_zero_class() const;
};

ExtClass class_of_cocycle(const FreeResolution& res, const FgAbGroup& target, const Hom& cocycle);
ExtClass zero_class(const FreeResolution& res, const FgAbGroup& target);

// Throws ValidationError unless both classes share base, target, resolution.
bool classes_equal(const ExtClass& c1, const ExtClass& c2);

ExtClass add_classes(const ExtClass& c1, const ExtClass& c2);
ExtClass sub_classes(const ExtClass& c1, const ExtClass& c2);

// (f)^* : Ext^1(A, C) -> Ext^1(A', C) along f : A' -> A, computed by
// lifting f to a chain map of the resolutions. The class is independent
// of the lift; lift_seed perturbs the lift to let tests assert exactly that.
ExtClass pullback(const Hom& f, const ExtClass& c, const FreeResolution& res_domain,
                  std::uint64_t lift_seed = 0);
ExtClass pullback(const Hom& f, const ExtClass& c);

// (g)_* : Ext^1(A, C) -> Ext^1(A, C') along g : C -> C'.
ExtClass pushforward(const Hom& g, const ExtClass& c);

// Same class re-expressed over another resolution of the same base group.
ExtClass transport(const ExtClass& c, const FreeResolution& to_res);

// Restriction along an inclusion K >-> base, landing over the canonical
// resolution of K.
ExtClass theta_restrict(const ExtClass& c, const Hom& incl);

struct ShortExact {
    Hom inj;  // B >-> G
    Hom surj; // G ->> A
};

// Baer class of a short exact sequence, over the canonical resolution of A.
// Sections are chosen deterministically (canonical coordinates, smallest
// nonnegative representatives). Throws ValidationError on non-exact input.
ExtClass class_of_extension(const Hom& inj, const Hom& surj);

// An extension realizing the class: target >-> (target + R0)/defect ->> base.
ShortExact extension_of_class(const ExtClass& c);

} // namespace wesq
