#include "wesq/homalg.hpp"

#include <random>

namespace wesq {

namespace {

FgAbGroup canonicalize_cyclic_sum(std::vector<Int> torsion, std::size_t rank) {
    IntMatrix rel(torsion.size(), torsion.size());
    for (std::size_t i = 0; i < torsion.size(); ++i) rel(i, i) = torsion[i];
    Presentation p = from_presentation(torsion.size(), rel);
    return FgAbGroup(p.group.torsion(), rank);
}

} // namespace

FgAbGroup tensor(const FgAbGroup& a, const FgAbGroup& b) {
    std::vector<Int> torsion;
    std::size_t rank = a.rank() * b.rank();
    for (std::size_t i = 0; i < a.generator_count(); ++i)
        for (std::size_t j = 0; j < b.generator_count(); ++j) {
            Int g = xgcd(a.order(i), b.order(j)).g; // gcd with 0 = the other argument
            if (g >= 2) torsion.push_back(g);
        }
    return canonicalize_cyclic_sum(std::move(torsion), rank);
}

FgAbGroup hom_group(const FgAbGroup& a, const FgAbGroup& b) {
    std::vector<Int> torsion;
    std::size_t rank = a.rank() * b.rank();
    for (std::size_t i = 0; i < a.torsion_count(); ++i)
        for (std::size_t j = 0; j < b.torsion_count(); ++j) {
            Int g = xgcd(a.order(i), b.order(j)).g;
            if (g >= 2) torsion.push_back(g);
        }
    // Hom(Z, Z/e) = Z/e; Hom(Z/d, Z) = 0
    for (std::size_t r = 0; r < a.rank(); ++r)
        for (std::size_t j = 0; j < b.torsion_count(); ++j) torsion.push_back(b.order(j));
    return canonicalize_cyclic_sum(std::move(torsion), rank);
}

FreeResolution canonical_resolution(const FgAbGroup& a) {
    std::size_t m = a.generator_count(), k = a.torsion_count();
    FreeResolution res;
    res.base = a;
    res.r1 = FgAbGroup::free_group(k);
    res.r0 = FgAbGroup::free_group(m);
    res.kappa = Hom(res.r1, res.r0, a.presentation_matrix());
    res.proj = Hom(res.r0, a, IntMatrix::identity(m));
    res.section = IntMatrix::identity(m);
    return res;
}

FreeResolution resolution_from_complex(const ChainComplex& c, std::size_t n) {
    HomologyData h = homology(c, n);
    IntMatrix ib = image_basis(c.differential(n + 1));
    IntMatrix kap(h.cycle_basis.cols(), ib.cols());
    for (std::size_t j = 0; j < ib.cols(); ++j) {
        auto coords = solve(h.cycle_basis, ib.col(j));
        if (!coords) throw IntegrityError("resolution_from_complex: boundary is not a cycle");
        kap.set_col(j, *coords);
    }
    FreeResolution res;
    res.base = h.group;
    res.r1 = FgAbGroup::free_group(ib.cols());
    res.r0 = FgAbGroup::free_group(h.cycle_basis.cols());
    res.kappa = Hom(res.r1, res.r0, std::move(kap));
    res.proj = h.projection_hom();
    res.section = h.lift;
    return res;
}

namespace {

void validate_resolution(const FreeResolution& res) {
    if (!res.r1.is_free() || !res.r0.is_free())
        throw ValidationError("resolution: R1, R0 must be free");
    if (kernel_basis(res.kappa.matrix()).cols() != 0)
        throw ValidationError("resolution: kappa is not injective");
    if (!is_zero(compose(res.proj, res.kappa)))
        throw ValidationError("resolution: proj . kappa != 0");
    if (!cokernel(res.proj).group.is_trivial())
        throw ValidationError("resolution: proj is not surjective");
    // ker proj = im kappa: every kernel generator lifts through kappa
    Subobject k = kernel(res.proj);
    if (!lift_through_injection(res.kappa, k.incl).has_value())
        throw ValidationError("resolution: ker proj exceeds im kappa");
    // section really sections proj
    for (std::size_t j = 0; j < res.base.generator_count(); ++j) {
        IntVec e(res.base.generator_count(), 0);
        e[j] = 1;
        if (res.proj.apply(res.section.mul_vec(e)) != e)
            throw ValidationError("resolution: section does not section proj");
    }
}

IntVec flatten_cocycle(const IntMatrix& m) {
    // slot i * rows + u for R1 generator i, target generator u
    IntVec v(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.cols(); ++i)
        for (std::size_t u = 0; u < m.rows(); ++u) v[i * m.rows() + u] = m(u, i);
    return v;
}

IntMatrix unflatten_cocycle(const IntVec& v, std::size_t rows, std::size_t cols) {
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t u = 0; u < rows; ++u) m(u, i) = v[i * rows + u];
    return m;
}

} // namespace

IntVec Ext1::normal_form(const Hom& cocycle) const {
    if (cocycle.domain() != res.r1 || cocycle.codomain() != target)
        throw ValidationError("ext normal_form: cocycle shape mismatch");
    return reduce_coords(group, to_canonical.mul_vec(flatten_cocycle(cocycle.matrix())));
}

Hom Ext1::cocycle_of(const IntVec& coords) const {
    if (coords.size() != group.generator_count())
        throw ValidationError("ext cocycle_of: coordinate length mismatch");
    IntVec flat = lift.mul_vec(coords);
    return Hom(res.r1, target, unflatten_cocycle(flat, target.generator_count(), res.r1.rank()));
}

Ext1 ext1_over(const FreeResolution& res, const FgAbGroup& target) {
    validate_resolution(res);
    std::size_t m1 = res.r1.rank(), m0 = res.r0.rank(), nc = target.generator_count();
    std::size_t slots = m1 * nc;
    IntMatrix rel(slots, m1 * target.torsion_count() + m0 * nc);
    std::size_t col = 0;
    for (std::size_t i = 0; i < m1; ++i)
        for (std::size_t u = 0; u < target.torsion_count(); ++u)
            rel(i * nc + u, col++) = target.order(u);
    for (std::size_t t = 0; t < m0; ++t)
        for (std::size_t u = 0; u < nc; ++u) {
            for (std::size_t i = 0; i < m1; ++i) rel(i * nc + u, col) = res.kappa.matrix()(t, i);
            ++col;
        }
    Presentation p = from_presentation(slots, rel);
    if (p.group.rank() != 0) throw IntegrityError("ext1: quotient came out infinite");
    return Ext1{res, target, std::move(p.group), std::move(p.to_canonical), std::move(p.lift)};
}

Ext1 ext1(const FgAbGroup& a, const FgAbGroup& b) { return ext1_over(canonical_resolution(a), b); }

bool ExtClass::is_zero_class() const {
    for (const auto& v : normal_form)
        if (v != 0) return false;
    return true;
}

ExtClass class_of_cocycle(const FreeResolution& res, const FgAbGroup& target, const Hom& cocycle) {
    Ext1 e = ext1_over(res, target);
    IntVec nf = e.normal_form(cocycle);
    return ExtClass{res, target, cocycle, std::move(e.group), std::move(nf)};
}

ExtClass zero_class(const FreeResolution& res, const FgAbGroup& target) {
    return class_of_cocycle(res, target, Hom::zero(res.r1, target));
}

bool classes_equal(const ExtClass& c1, const ExtClass& c2) {
    if (!(c1.res == c2.res) || c1.target != c2.target)
        throw ValidationError("classes_equal: classes live over different resolutions or targets");
    return c1.normal_form == c2.normal_form;
}

ExtClass add_classes(const ExtClass& c1, const ExtClass& c2) {
    if (!(c1.res == c2.res) || c1.target != c2.target)
        throw ValidationError("add_classes: classes live over different resolutions or targets");
    Hom sum(c1.cocycle.domain(), c1.target, c1.cocycle.matrix() + c2.cocycle.matrix());
    return class_of_cocycle(c1.res, c1.target, sum);
}

ExtClass sub_classes(const ExtClass& c1, const ExtClass& c2) {
    if (!(c1.res == c2.res) || c1.target != c2.target)
        throw ValidationError("sub_classes: classes live over different resolutions or targets");
    Hom diff(c1.cocycle.domain(), c1.target, c1.cocycle.matrix() - c2.cocycle.matrix());
    return class_of_cocycle(c1.res, c1.target, diff);
}

ExtClass pullback(const Hom& f, const ExtClass& c, const FreeResolution& res_domain,
                  std::uint64_t lift_seed) {
    if (f.codomain() != c.res.base)
        throw ValidationError("pullback: map does not land in the class's base group");
    if (f.domain() != res_domain.base)
        throw ValidationError("pullback: resolution does not resolve the map's domain");
    std::mt19937_64 rng(lift_seed);
    std::size_t m0p = res_domain.r0.rank(), m1p = res_domain.r1.rank();
    std::size_t m1 = c.res.r1.rank();

    // rho0 : R0' -> R0 lifting f . proj' through proj
    IntMatrix rho0(c.res.r0.rank(), m0p);
    for (std::size_t t = 0; t < m0p; ++t) {
        IntVec e(m0p, 0);
        e[t] = 1;
        IntVec fa = f.apply(res_domain.proj.apply(e));
        IntVec r0c = c.res.section.mul_vec(fa);
        if (lift_seed != 0 && m1 > 0) {
            IntVec z(m1);
            for (auto& v : z) v = Int(static_cast<long>(rng() % 7)) - 3;
            IntVec shift = c.res.kappa.matrix().mul_vec(z);
            for (std::size_t i = 0; i < r0c.size(); ++i) r0c[i] += shift[i];
        }
        rho0.set_col(t, r0c);
    }
    // rho1 : R1' -> R1 with kappa . rho1 = rho0 . kappa'
    IntMatrix rhs = rho0 * res_domain.kappa.matrix();
    IntMatrix rho1(m1, m1p);
    for (std::size_t i = 0; i < m1p; ++i) {
        auto y = solve(c.res.kappa.matrix(), rhs.col(i));
        if (!y) throw IntegrityError("pullback: chain lift does not factor through kappa");
        rho1.set_col(i, *y);
    }
    Hom pulled(res_domain.r1, c.target, c.cocycle.matrix() * rho1);
    return class_of_cocycle(res_domain, c.target, pulled);
}

ExtClass pullback(const Hom& f, const ExtClass& c) {
    return pullback(f, c, canonical_resolution(f.domain()));
}

ExtClass pushforward(const Hom& g, const ExtClass& c) {
    if (g.domain() != c.target)
        throw ValidationError("pushforward: map does not start at the class's target");
    return class_of_cocycle(c.res, g.codomain(), compose(g, c.cocycle));
}

ExtClass transport(const ExtClass& c, const FreeResolution& to_res) {
    return pullback(Hom::identity(c.res.base), c, to_res);
}

ExtClass theta_restrict(const ExtClass& c, const Hom& incl) {
    if (!kernel(incl).group.is_trivial())
        throw ValidationError("theta_restrict: inclusion is not injective");
    return pullback(incl, c, canonical_resolution(incl.domain()));
}

ExtClass class_of_extension(const Hom& inj, const Hom& surj) {
    if (inj.codomain() != surj.domain())
        throw ValidationError("class_of_extension: maps do not compose into a sequence");
    if (!kernel(inj).group.is_trivial())
        throw ValidationError("class_of_extension: left map is not injective");
    if (!cokernel(surj).group.is_trivial())
        throw ValidationError("class_of_extension: right map is not surjective");
    if (!is_zero(compose(surj, inj)))
        throw ValidationError("class_of_extension: composite is nonzero");
    Subobject ker_surj = kernel(surj);
    auto h = lift_through_injection(ker_surj.incl, inj);
    if (!h || !is_isomorphism(*h))
        throw ValidationError("class_of_extension: image of the left map is not the kernel");

    const FgAbGroup& a = surj.codomain();
    const FgAbGroup& b = inj.domain();
    FreeResolution res = canonical_resolution(a);
    // sigma : R0 -> G, a set-theoretic section of surj on canonical generators
    IntMatrix sigma(surj.domain().generator_count(), a.generator_count());
    for (std::size_t t = 0; t < a.generator_count(); ++t) {
        IntVec e(a.generator_count(), 0);
        e[t] = 1;
        auto gpre = preimage(surj, e);
        if (!gpre) throw IntegrityError("class_of_extension: surjection has no preimage");
        sigma.set_col(t, *gpre);
    }
    // defect of sigma on the relations lands in B
    IntMatrix defect = sigma * res.kappa.matrix();
    IntMatrix cocycle(b.generator_count(), res.r1.rank());
    for (std::size_t i = 0; i < res.r1.rank(); ++i) {
        auto bc = preimage(inj, reduce_coords(surj.domain(), defect.col(i)));
        if (!bc) throw IntegrityError("class_of_extension: defect does not lie in the subgroup");
        cocycle.set_col(i, *bc);
    }
    return class_of_cocycle(res, b, Hom(res.r1, b, std::move(cocycle)));
}

ShortExact extension_of_class(const ExtClass& c) {
    const FgAbGroup& b = c.target;
    std::size_t nb = b.generator_count(), m0 = c.res.r0.rank(), m1 = c.res.r1.rank();
    // G = (B + R0) / <(cocycle(r), -kappa(r))>
    IntMatrix rel(nb + m0, b.torsion_count() + m1);
    for (std::size_t u = 0; u < b.torsion_count(); ++u) rel(u, u) = b.order(u);
    for (std::size_t i = 0; i < m1; ++i) {
        for (std::size_t u = 0; u < nb; ++u)
            rel(u, b.torsion_count() + i) = c.cocycle.matrix()(u, i);
        for (std::size_t t = 0; t < m0; ++t)
            rel(nb + t, b.torsion_count() + i) = -c.res.kappa.matrix()(t, i);
    }
    Presentation p = from_presentation(nb + m0, rel);
    Hom inj(b, p.group, p.to_canonical.cols_slice(0, nb));
    IntMatrix surj_m = c.res.proj.matrix() * p.lift.rows_slice(nb, nb + m0);
    Hom surj(p.group, c.res.base, std::move(surj_m));
    return {std::move(inj), std::move(surj)};
}

} // namespace wesq
