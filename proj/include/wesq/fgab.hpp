#pragma once

#include <optional>
#include <vector>

#include "wesq/intmatrix.hpp"
#include "wesq/snf.hpp"

namespace wesq {

// Finitely generated abelian group in canonical invariant-factor form:
// Z/d1 + ... + Z/dk + Z^rank with d1 | d2 | ... and every di >= 2.
// Canonical generator order: the k torsion generators first, then the
// free ones. Every derived group in this library (kernels, quotients,
// sums) is renormalized to this form and carries explicit structure
// maps, so group equality is plain field equality.
class FgAbGroup {
  public:
    FgAbGroup() : rank_(0) {}
    FgAbGroup(std::vector<Int> torsion, std::size_t rank);

    static FgAbGroup free_group(std::size_t rank) { return FgAbGroup({}, rank); }
    static FgAbGroup cyclic(const Int& n);
    static FgAbGroup trivial() { return FgAbGroup(); }

    const std::vector<Int>& torsion() const { return torsion_; }
    std::size_t rank() const { return rank_; }
    std::size_t torsion_count() const { return torsion_.size(); }
    std::size_t generator_count() const { return torsion_.size() + rank_; }

    // Order of generator i; 0 means infinite.
    const Int& order(std::size_t i) const;

    bool is_trivial() const { return torsion_.empty() && rank_ == 0; }
    bool is_finite() const { return rank_ == 0; }
    bool is_free() const { return torsion_.empty(); }
    Int group_order() const; // finite groups only

    // Generators x torsion_count diagonal relation matrix.
    IntMatrix presentation_matrix() const;

    bool operator==(const FgAbGroup&) const = default;

    std::string to_string() const;

  private:
    std::vector<Int> torsion_;
    std::size_t rank_;
};

// Coordinates reduced into the group: torsion entries in [0, order).
IntVec reduce_coords(const FgAbGroup& g, IntVec v);

// Homomorphism between canonical groups: one column per domain generator,
// one row per codomain generator, torsion rows stored reduced.
// Well-definedness (order of each domain generator kills its image) is
// checked at construction; invalid matrices are rejected eagerly.
class Hom {
  public:
    Hom() = default; // zero map between trivial groups
    Hom(FgAbGroup domain, FgAbGroup codomain, IntMatrix matrix);

    static Hom zero(FgAbGroup domain, FgAbGroup codomain);
    static Hom identity(const FgAbGroup& g);

    const FgAbGroup& domain() const { return domain_; }
    const FgAbGroup& codomain() const { return codomain_; }
    const IntMatrix& matrix() const { return matrix_; }

    IntVec apply(const IntVec& x) const;

    bool operator==(const Hom&) const = default;

  private:
    FgAbGroup domain_, codomain_;
    IntMatrix matrix_;
};

Hom compose(const Hom& g, const Hom& f);
bool is_zero(const Hom& f);

// Cokernel presentation of Z^generators by the columns of `relations`,
// together with both directions of the change of basis: to_canonical maps
// old coordinates to canonical ones, lift picks a representative of each
// canonical generator. to_canonical * lift is the identity; lift *
// to_canonical is the identity modulo the relation lattice.
struct Presentation {
    FgAbGroup group;
    IntMatrix to_canonical; // gens(group) x generators
    IntMatrix lift;         // generators x gens(group)

    Hom projection_hom() const; // Z^generators -> group
};

Presentation from_presentation(std::size_t generators, const IntMatrix& relations);

struct DirectSum {
    FgAbGroup group;
    Hom inj_a, inj_b;
    Hom proj_a, proj_b;
};

DirectSum direct_sum(const FgAbGroup& a, const FgAbGroup& b);

struct Subobject {
    FgAbGroup group;
    Hom incl;
};

struct Quotient {
    FgAbGroup group;
    Hom proj;
    IntMatrix lift; // section of proj on canonical generators
};

Subobject kernel(const Hom& f);
Subobject image(const Hom& f);
Quotient cokernel(const Hom& f);

bool is_isomorphism(const Hom& f);
bool are_isomorphic(const FgAbGroup& a, const FgAbGroup& b);

// Some x with f(x) = y, or nullopt.
std::optional<IntVec> preimage(const Hom& f, const IntVec& y);

// h with incl . h = f, for injective incl (unique when it exists).
std::optional<Hom> lift_through_injection(const Hom& incl, const Hom& f);

// The map q.group -> q'.group induced by g on cokernel presentations;
// throws IntegrityError if g does not descend.
Hom induced_on_quotients(const Quotient& q, const Quotient& q2, const Hom& g);

// All coordinate vectors of a finite group, lexicographic, reduced.
std::vector<IntVec> all_elements(const FgAbGroup& g);

// Streams every well-defined Hom whose free-part entries lie in
// [-free_bound, free_bound], in a deterministic lexicographic order:
// matrix positions row-major, per-position values ordered 0, 1, -1, 2, -2,...
// for unconstrained entries and ascending otherwise.
class HomStream {
  public:
    HomStream(FgAbGroup domain, FgAbGroup codomain, Int free_bound);

    std::optional<Hom> next();

  private:
    struct Position {
        Int count;
        Int step;    // torsion step, or 0 for the signed free ordering
        bool free_free;
    };

    FgAbGroup domain_, codomain_;
    std::vector<Position> positions_; // row-major
    std::vector<Int> odometer_;
    bool done_;

    Int value_at(std::size_t pos) const;
};

// HomStream filtered to isomorphisms; empty when canonical forms differ.
class IsoStream {
  public:
    IsoStream(FgAbGroup domain, FgAbGroup codomain, Int free_bound);

    std::optional<Hom> next();

  private:
    std::optional<HomStream> inner_;
};

} // namespace wesq
