#include "wesq/wes.hpp"

#include <random>
#include <sstream>

namespace wesq {

GammaSystem::GammaSystem(ChainComplex complex, std::vector<GammaSystemLevel> levels)
    : complex_(std::move(complex)), levels_(std::move(levels)) {
    if (levels_.size() != complex_.top() - 1)
        throw ValidationError("gamma system: expected one level per degree in [2, top]");
    for (std::size_t n = 2; n <= complex_.top(); ++n) {
        const auto& lv = levels_[n - 2];
        std::string deg = std::to_string(n);
        if (lv.j.domain() != lv.pi ||
            lv.j.codomain() != FgAbGroup::free_group(complex_.rank(n)))
            throw ValidationError("gamma system: j_" + deg + " has the wrong shape");
        if (lv.beta_next.domain() != FgAbGroup::free_group(complex_.rank(n + 1)) ||
            lv.beta_next.codomain() != lv.pi)
            throw ValidationError("gamma system: beta_" + std::to_string(n + 1) +
                                  " has the wrong shape");
    }
}

const GammaSystemLevel& GammaSystem::level(std::size_t n) const {
    if (n < 2 || n > top()) throw ValidationError("gamma system: degree out of range");
    return levels_[n - 2];
}

IntMatrix ker_beta_basis(const GammaSystem& s, std::size_t n) {
    if (n < 2 || n > s.top()) throw ValidationError("ker_beta_basis: degree out of range");
    if (n == 2) return IntMatrix::identity(s.complex().rank(2)); // beta_2 lands in pi_1 = 0
    const GammaSystemLevel& below = s.level(n - 1);
    IntMatrix pres = below.pi.presentation_matrix();
    for (std::size_t i = 0; i < pres.rows(); ++i)
        for (std::size_t j = 0; j < pres.cols(); ++j) pres(i, j) = -pres(i, j);
    IntMatrix k = kernel_basis(IntMatrix::hstack(below.beta_next.matrix(), pres));
    return image_basis(k.rows_slice(0, s.complex().rank(n)));
}

ValidationReport validate_system(const GammaSystem& s) {
    ValidationReport rep;
    for (std::size_t n = 2; n <= s.top(); ++n) {
        const GammaSystemLevel& lv = s.level(n);
        if (lv.j.matrix() * lv.beta_next.matrix() != s.complex().differential(n + 1))
            rep.issues.push_back(
                {n, "j.beta=d", "j_n . beta_{n+1} differs from d_{n+1} at degree " +
                                    std::to_string(n)});
        IntMatrix l = ker_beta_basis(s, n);
        const IntMatrix& jm = lv.j.matrix();
        for (std::size_t c = 0; c < l.cols(); ++c)
            if (!solve(jm, l.col(c))) {
                rep.issues.push_back({n, "im j=ker beta",
                                      "ker beta_" + std::to_string(n) + " exceeds im j_" +
                                          std::to_string(n)});
                break;
            }
        for (std::size_t c = 0; c < jm.cols(); ++c)
            if (!solve(l, jm.col(c))) {
                rep.issues.push_back({n, "im j=ker beta",
                                      "im j_" + std::to_string(n) + " exceeds ker beta_" +
                                          std::to_string(n)});
                break;
            }
    }
    return rep;
}

namespace {

// b_{n+1} : H_{n+1} -> Gamma_n, induced by beta_{n+1} on cycles.
Hom compute_b_next(const GammaSystem& s, std::size_t n, const Subobject& gam,
                   const HomologyData& h_next) {
    const GammaSystemLevel& lv = s.level(n);
    // well-definedness: beta_{n+1} kills boundaries
    IntMatrix on_boundaries = lv.beta_next.matrix() * s.complex().differential(n + 2);
    for (std::size_t j = 0; j < on_boundaries.cols(); ++j)
        if (reduce_coords(lv.pi, on_boundaries.col(j)) != IntVec(lv.pi.generator_count(), 0))
            throw IntegrityError("derive: beta_{n+1} . d_{n+2} != 0 at degree " +
                                 std::to_string(n));
    IntMatrix bm(gam.group.generator_count(), h_next.group.generator_count());
    for (std::size_t t = 0; t < h_next.group.generator_count(); ++t) {
        IntVec cycle = h_next.cycle_basis.mul_vec(h_next.lift.col(t));
        IntVec x = lv.beta_next.apply(cycle);
        auto g = preimage(gam.incl, x);
        if (!g)
            throw IntegrityError("derive: beta_{n+1} of a cycle escaped Gamma_n at degree " +
                                 std::to_string(n));
        bm.set_col(t, *g);
    }
    return Hom(h_next.group, gam.group, std::move(bm));
}

Hom b_next_at(const GammaSystem& s, std::size_t n, const Subobject& gam) {
    if (n == s.top()) return Hom::zero(FgAbGroup::trivial(), gam.group);
    return compute_b_next(s, n, gam, homology(s.complex(), n + 1));
}

Subobject ker_b_at(const GammaSystem& s, std::size_t n, const HomologyData& h) {
    if (n == 2) return {h.group, Hom::identity(h.group)};
    Subobject gam_below = kernel(s.level(n - 1).j);
    Hom b = compute_b_next(s, n - 1, gam_below, h);
    return kernel(b);
}

} // namespace

SplittingChoice choose_splitting(const GammaSystem& s, std::size_t n, std::uint64_t seed) {
    if (n < 2 || n > s.top()) throw ValidationError("choose_splitting: degree out of range");
    const GammaSystemLevel& lv = s.level(n);
    const IntMatrix& d = s.complex().differential(n + 1);

    IntMatrix l = ker_beta_basis(s, n);
    IntMatrix sig(lv.pi.generator_count(), l.cols());
    for (std::size_t j = 0; j < l.cols(); ++j) {
        auto x = solve(lv.j.matrix(), l.col(j));
        if (!x) throw IntegrityError("choose_splitting: ker beta_n is not inside im j_n");
        sig.set_col(j, *x);
    }
    IntMatrix ib = image_basis(d);
    IntMatrix tm(s.complex().rank(n + 1), ib.cols());
    for (std::size_t j = 0; j < ib.cols(); ++j) {
        auto x = solve(d, ib.col(j));
        if (!x) throw IntegrityError("choose_splitting: image basis not in the image");
        tm.set_col(j, *x);
    }

    if (seed != 0) {
        std::mt19937_64 rng(seed);
        auto draw = [&rng](long lo, long hi) {
            return Int(static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)) + lo);
        };
        Subobject gam = kernel(lv.j);
        IntMatrix r(gam.group.generator_count(), l.cols());
        for (std::size_t i = 0; i < r.rows(); ++i)
            for (std::size_t j = 0; j < r.cols(); ++j) {
                const Int& o = gam.group.order(i);
                r(i, j) = o > 0 ? emod(draw(0, 1000), o) : draw(-2, 2);
            }
        sig = sig + gam.incl.matrix() * r;
        IntMatrix k = kernel_basis(d);
        IntMatrix r2(k.cols(), ib.cols());
        for (std::size_t i = 0; i < r2.rows(); ++i)
            for (std::size_t j = 0; j < r2.cols(); ++j) r2(i, j) = draw(-2, 2);
        tm = tm + k * r2;
    }

    Hom sigma(FgAbGroup::free_group(l.cols()), lv.pi, std::move(sig));
    Hom t(FgAbGroup::free_group(ib.cols()), FgAbGroup::free_group(s.complex().rank(n + 1)),
          std::move(tm));
    if (lv.j.matrix() * sigma.matrix() != l)
        throw IntegrityError("choose_splitting: sigma is not a section of j_n");
    if (d * t.matrix() != ib)
        throw IntegrityError("choose_splitting: t is not a section of d_{n+1}");
    return {n, std::move(l), std::move(sigma), std::move(ib), std::move(t)};
}

BetaDecomposition beta_matrix_decomposition(const GammaSystem& s, std::size_t n,
                                            const SplittingChoice& sp) {
    if (sp.degree != n)
        throw ValidationError("beta_matrix_decomposition: splitting is for another degree");
    const GammaSystemLevel& lv = s.level(n);
    Subobject gam = kernel(lv.j);
    const IntMatrix& d = s.complex().differential(n + 1);

    // target coordinates of beta(w) under mu_n = (id - sigma j, j)
    auto split_target = [&](const IntVec& w) {
        IntVec x = lv.beta_next.apply(w);
        auto zeta = solve(sp.ker_beta, lv.j.apply(x));
        if (!zeta)
            throw IntegrityError("decomposition: j(beta(w)) escaped ker beta_n");
        IntVec sz = sp.sigma.apply(*zeta);
        IntVec diff(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - sz[i];
        auto g = preimage(gam.incl, reduce_coords(lv.pi, std::move(diff)));
        if (!g) throw IntegrityError("decomposition: mu1 component escaped Gamma_n");
        return std::pair<IntVec, IntVec>(*g, *zeta);
    };

    IntMatrix phi(gam.group.generator_count(), sp.im_basis.cols());
    IntMatrix psi(sp.ker_beta.cols(), sp.im_basis.cols());
    for (std::size_t c = 0; c < sp.im_basis.cols(); ++c) {
        auto [g, z] = split_target(sp.t.matrix().col(c));
        phi.set_col(c, g);
        psi.set_col(c, z);
    }
    IntMatrix cycles = kernel_basis(d);
    IntMatrix theta(gam.group.generator_count(), cycles.cols());
    IntMatrix eta(sp.ker_beta.cols(), cycles.cols());
    for (std::size_t c = 0; c < cycles.cols(); ++c) {
        auto [g, z] = split_target(cycles.col(c));
        theta.set_col(c, g);
        eta.set_col(c, z);
    }

    // theorems of the decomposition
    if (!eta.is_zero()) throw IntegrityError("decomposition: eta_n != 0");
    for (std::size_t c = 0; c < sp.im_basis.cols(); ++c) {
        auto direct = solve(sp.ker_beta, d.mul_vec(sp.t.matrix().col(c)));
        if (!direct || *direct != psi.col(c))
            throw IntegrityError("decomposition: psi_n != d_{n+1} . t_{n+1}");
    }
    if (n < s.top()) {
        HomologyData h_next = homology(s.complex(), n + 1);
        Hom b = compute_b_next(s, n, gam, h_next);
        IntMatrix expected = b.matrix() * h_next.to_canonical;
        for (std::size_t c = 0; c < cycles.cols(); ++c)
            if (reduce_coords(gam.group, expected.col(c)) !=
                reduce_coords(gam.group, theta.col(c)))
                throw IntegrityError("decomposition: theta_n != b_{n+1} . pr_{n+1}");
    } else if (!theta.is_zero()) {
        throw IntegrityError("decomposition: theta_n != 0 at the top degree");
    }

    FgAbGroup im_free = FgAbGroup::free_group(sp.im_basis.cols());
    FgAbGroup cyc_free = FgAbGroup::free_group(cycles.cols());
    FgAbGroup ker_free = FgAbGroup::free_group(sp.ker_beta.cols());
    return {Hom(im_free, gam.group, std::move(phi)), Hom(im_free, ker_free, std::move(psi)),
            Hom(cyc_free, gam.group, std::move(theta)), Hom(cyc_free, ker_free, std::move(eta))};
}

ExtClass characteristic_extension(const GammaSystem& s, std::size_t n,
                                  const SplittingChoice& sp) {
    BetaDecomposition dec = beta_matrix_decomposition(s, n, sp);
    Subobject gam = kernel(s.level(n).j);
    Quotient q = cokernel(b_next_at(s, n, gam));
    FreeResolution res = resolution_from_complex(s.complex(), n);
    if (res.r1.rank() != sp.im_basis.cols())
        throw IntegrityError("characteristic_extension: image bases diverged");
    return class_of_cocycle(res, q.group, compose(q.proj, dec.phi));
}

ExtClass pi_class(const GammaSystem& s, std::size_t n) {
    Subobject kb = ker_b_at(s, n, homology(s.complex(), n));
    ExtClass cls =
        theta_restrict(characteristic_extension(s, n, choose_splitting(s, n, 0)), kb.incl);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        ExtClass alt =
            theta_restrict(characteristic_extension(s, n, choose_splitting(s, n, seed)), kb.incl);
        if (!classes_equal(cls, alt))
            throw IntegrityError("pi_class: splitting seeds disagree at degree " +
                                 std::to_string(n));
    }
    return cls;
}

PiExtension pi_extension(const GammaSystem& s, std::size_t n) {
    const GammaSystemLevel& lv = s.level(n);
    Subobject gam = kernel(lv.j);
    HomologyData h = homology(s.complex(), n);
    Quotient q = cokernel(b_next_at(s, n, gam));
    Quotient piq = cokernel(lv.beta_next); // pi_n(X) = Pi_n / im beta_{n+1}

    Hom incl(q.group, piq.group, piq.proj.matrix() * (gam.incl.matrix() * q.lift));
    if (!kernel(incl).group.is_trivial())
        throw IntegrityError("pi_extension: Coker b does not embed into pi_n");

    Subobject kb = ker_b_at(s, n, h);
    IntMatrix sm(kb.group.generator_count(), piq.group.generator_count());
    for (std::size_t t = 0; t < piq.group.generator_count(); ++t) {
        IntVec c = lv.j.matrix().mul_vec(piq.lift.col(t));
        auto cyc = solve(h.cycle_basis, c);
        if (!cyc) throw IntegrityError("pi_extension: j of a class is not a cycle");
        IntVec hc = reduce_coords(h.group, h.to_canonical.mul_vec(*cyc));
        auto k = preimage(kb.incl, hc);
        if (!k) throw IntegrityError("pi_extension: Hurewicz image escaped ker b_n");
        sm.set_col(t, *k);
    }
    Hom surj(piq.group, kb.group, std::move(sm));
    if (!cokernel(surj).group.is_trivial())
        throw IntegrityError("pi_extension: pi_n does not surject onto ker b_n");
    return {piq.group, std::move(incl), std::move(surj)};
}

const WesLevel& WhiteheadSequence::level(std::size_t n) const {
    if (n < 2 || n > top) throw ValidationError("whitehead sequence: degree out of range");
    return levels[n - 2];
}

WhiteheadSequence derive_wes(const GammaSystem& s) {
    ValidationReport rep = validate_system(s);
    if (!rep.ok()) {
        std::ostringstream os;
        os << "invalid gamma system:";
        for (const auto& issue : rep.issues)
            os << " [degree " << issue.degree << ", " << issue.axiom << "] " << issue.detail;
        throw ValidationError(os.str());
    }
    WhiteheadSequence w;
    w.top = s.top();
    for (std::size_t n = 2; n <= s.top(); ++n) {
        WesLevel lv;
        lv.n = n;
        HomologyData h = homology(s.complex(), n);
        Subobject gam = kernel(s.level(n).j);
        lv.H = h.group;
        lv.Gamma = gam.group;
        lv.b_next = b_next_at(s, n, gam);
        lv.coker_b = cokernel(lv.b_next);
        lv.ker_b = ker_b_at(s, n, h);
        lv.pi_class = pi_class(s, n);
        w.levels.push_back(std::move(lv));
    }
    return w;
}

LadderReport check_ladder(const WhiteheadSequence& wx, const WhiteheadSequence& wy,
                          const Ladder& l) {
    LadderReport rep;
    if (wx.top != wy.top) {
        rep.issues.push_back({0, "shape", "sequences have different top degrees"});
        return rep;
    }
    if (l.f.size() != wx.top || l.gamma.size() != wx.top - 1) {
        rep.issues.push_back({0, "shape", "ladder does not cover degrees 2..top(+1)"});
        return rep;
    }
    for (std::size_t n = 2; n <= wx.top; ++n) {
        const WesLevel& lx = wx.level(n);
        const WesLevel& ly = wy.level(n);
        if (l.f_at(n).domain() != lx.H || l.f_at(n).codomain() != ly.H)
            rep.issues.push_back({n, "shape", "f maps the wrong homology groups"});
        if (l.gamma_at(n).domain() != lx.Gamma || l.gamma_at(n).codomain() != ly.Gamma)
            rep.issues.push_back({n, "shape", "gamma maps the wrong Gamma groups"});
    }
    if (l.f_at(wx.top + 1).domain() != wx.level(wx.top).b_next.domain() ||
        l.f_at(wx.top + 1).codomain() != wy.level(wy.top).b_next.domain())
        rep.issues.push_back({wx.top + 1, "shape", "top f does not match the b domains"});
    if (!rep.ok()) return rep;

    std::vector<bool> square_ok(wx.top + 1, true);
    for (std::size_t n = 2; n <= wx.top; ++n) {
        Hom lhs = compose(l.gamma_at(n), wx.level(n).b_next);
        Hom rhs = compose(wy.level(n).b_next, l.f_at(n + 1));
        if (!(lhs == rhs)) {
            square_ok[n] = false;
            rep.issues.push_back(
                {n, "square", "gamma_n . b_{n+1} != b'_{n+1} . f_{n+1} at degree " +
                                  std::to_string(n)});
        }
    }
    for (std::size_t n = 2; n <= wx.top; ++n) {
        if (!square_ok[n] || (n > 2 && !square_ok[n - 1])) {
            rep.issues.push_back(
                {n, "omega", "skipped: the commuting-square condition already fails"});
            continue;
        }
        const WesLevel& lx = wx.level(n);
        const WesLevel& ly = wy.level(n);
        Hom gt = induced_on_quotients(lx.coker_b, ly.coker_b, l.gamma_at(n));
        auto fk = lift_through_injection(ly.ker_b.incl, compose(l.f_at(n), lx.ker_b.incl));
        if (!fk) {
            rep.issues.push_back({n, "omega", "f_n does not restrict to ker b_n"});
            continue;
        }
        ExtClass lhs = pushforward(gt, lx.pi_class);
        ExtClass rhs = pullback(*fk, ly.pi_class, canonical_resolution(lx.ker_b.group));
        if (!classes_equal(lhs, rhs))
            rep.issues.push_back(
                {n, "omega", "pi_n extension classes do not match at degree " +
                                 std::to_string(n)});
    }
    return rep;
}

namespace {

// theta_n : Ext^1(H, Q) -> Ext^1(ker b, Q) as a map of canonical groups.
Hom theta_as_hom(const Ext1& ext, const Subobject& kb, const Ext1& target_ext) {
    IntMatrix tm(target_ext.group.generator_count(), ext.group.generator_count());
    for (std::size_t i = 0; i < ext.group.generator_count(); ++i) {
        IntVec e(ext.group.generator_count(), 0);
        e[i] = 1;
        ExtClass c = class_of_cocycle(ext.res, ext.target, ext.cocycle_of(e));
        tm.set_col(i, theta_restrict(c, kb.incl).normal_form);
    }
    return Hom(ext.group, target_ext.group, std::move(tm));
}

ExtClass combine_classes(const Ext1& ext, const ExtClass& base,
                         const std::vector<ExtClass>& gens, const IntVec& coeffs) {
    IntMatrix m = base.cocycle.matrix();
    for (std::size_t t = 0; t < gens.size(); ++t)
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                m(i, j) += coeffs[t] * gens[t].cocycle.matrix()(i, j);
    return class_of_cocycle(ext.res, ext.target, Hom(base.cocycle.domain(), ext.target, m));
}

} // namespace

StrongResult check_strong(const WhiteheadSequence& wx, const WhiteheadSequence& wy,
                          const Ladder& l) {
    StrongResult out;
    out.ladder = check_ladder(wx, wy, l);
    if (!out.ladder.ok()) {
        out.strong = false;
        out.detail = "ladder conditions fail";
        return out;
    }
    for (std::size_t n = 2; n <= wx.top; ++n) {
        const WesLevel& lx = wx.level(n);
        const WesLevel& ly = wy.level(n);
        FreeResolution rhx = canonical_resolution(lx.H);
        FreeResolution rhy = canonical_resolution(ly.H);
        Ext1 ext_x = ext1_over(rhx, lx.coker_b.group);
        Ext1 ext_y = ext1_over(rhy, ly.coker_b.group);
        Ext1 ext_x_restr = ext1_over(canonical_resolution(lx.ker_b.group), lx.coker_b.group);
        Ext1 ext_y_restr = ext1_over(canonical_resolution(ly.ker_b.group), ly.coker_b.group);

        Hom theta_x = theta_as_hom(ext_x, lx.ker_b, ext_x_restr);
        Hom theta_y = theta_as_hom(ext_y, ly.ker_b, ext_y_restr);

        auto base_x_coords = preimage(theta_x, lx.pi_class.normal_form);
        auto base_y_coords = preimage(theta_y, ly.pi_class.normal_form);
        if (!base_x_coords || !base_y_coords)
            throw IntegrityError("check_strong: theta_n failed to be surjective");
        ExtClass base_x =
            class_of_cocycle(rhx, lx.coker_b.group, ext_x.cocycle_of(*base_x_coords));
        ExtClass base_y =
            class_of_cocycle(rhy, ly.coker_b.group, ext_y.cocycle_of(*base_y_coords));

        Hom gt = induced_on_quotients(lx.coker_b, ly.coker_b, l.gamma_at(n));
        ExtClass lhs0 = pushforward(gt, base_x);
        ExtClass rhs0 = pullback(l.f_at(n), base_y, rhx);
        ExtClass diff = sub_classes(lhs0, rhs0);

        Subobject ker_x = kernel(theta_x);
        Subobject ker_y = kernel(theta_y);
        std::vector<ExtClass> gens_x, gens_y;
        std::vector<ExtClass> span; // images inside Ext^1(H_n(X), Q'_n)
        for (std::size_t t = 0; t < ker_x.group.generator_count(); ++t) {
            ExtClass u = class_of_cocycle(rhx, lx.coker_b.group,
                                          ext_x.cocycle_of(ker_x.incl.matrix().col(t)));
            gens_x.push_back(u);
            span.push_back(pushforward(gt, u));
        }
        for (std::size_t t = 0; t < ker_y.group.generator_count(); ++t) {
            ExtClass v = class_of_cocycle(rhy, ly.coker_b.group,
                                          ext_y.cocycle_of(ker_y.incl.matrix().col(t)));
            gens_y.push_back(v);
            span.push_back(pullback(l.f_at(n), v, rhx));
        }
        const FgAbGroup& e_group = diff.ext_group;
        IntMatrix g(e_group.generator_count(), span.size() + e_group.torsion_count());
        for (std::size_t c = 0; c < span.size(); ++c) g.set_col(c, span[c].normal_form);
        for (std::size_t i = 0; i < e_group.torsion_count(); ++i)
            g(i, span.size() + i) = e_group.order(i);
        auto sol = solve(g, diff.normal_form);
        if (!sol) {
            out.strong = false;
            out.detail = "no compatible characteristic extensions at degree " +
                         std::to_string(n);
            return out;
        }
        IntVec alpha(gens_x.size()), beta(gens_y.size());
        for (std::size_t t = 0; t < gens_x.size(); ++t) alpha[t] = -(*sol)[t];
        for (std::size_t t = 0; t < gens_y.size(); ++t) beta[t] = (*sol)[gens_x.size() + t];
        ExtClass phi_x = combine_classes(ext_x, base_x, gens_x, alpha);
        ExtClass phi_y = combine_classes(ext_y, base_y, gens_y, beta);

        if (!classes_equal(pushforward(gt, phi_x), pullback(l.f_at(n), phi_y, rhx)))
            throw IntegrityError("check_strong: witness certificate failed to verify");
        if (!classes_equal(theta_restrict(phi_x, lx.ker_b.incl), lx.pi_class) ||
            !classes_equal(theta_restrict(phi_y, ly.ker_b.incl), ly.pi_class))
            throw IntegrityError("check_strong: witness escaped S_n");
        out.witnesses.push_back({n, std::move(phi_x), std::move(phi_y)});
    }
    out.strong = true;
    return out;
}

FourDimSystem::FourDimSystem(FgAbGroup h2, FgAbGroup h3, FgAbGroup h4, Hom b4,
                             std::optional<Hom> pi3_cocycle)
    : h2_(std::move(h2)), h3_(std::move(h3)), h4_(std::move(h4)), b4_(std::move(b4)),
      gamma_h2_(gamma_group(h2_)) {
    if (b4_.domain() != h4_ || b4_.codomain() != gamma_h2_.group)
        throw ValidationError("fourdim system: b4 must map H4 into Gamma(H2)");
    coker_b4_ = cokernel(b4_);
    FreeResolution r3 = canonical_resolution(h3_);
    Hom cocycle = pi3_cocycle ? std::move(*pi3_cocycle)
                              : Hom::zero(r3.r1, coker_b4_.group);
    if (cocycle.domain() != r3.r1 || cocycle.codomain() != coker_b4_.group)
        throw ValidationError("fourdim system: pi3 cocycle has the wrong shape");
    pi3_class_ = class_of_cocycle(r3, coker_b4_.group, cocycle);
}

WhiteheadSequence wes_of_fourdim(const FourDimSystem& x) {
    WhiteheadSequence w;
    w.top = 3;
    WesLevel l2;
    l2.n = 2;
    l2.H = x.h2();
    l2.Gamma = FgAbGroup::trivial();
    l2.b_next = Hom::zero(x.h3(), FgAbGroup::trivial());
    l2.coker_b = cokernel(l2.b_next);
    l2.ker_b = {x.h2(), Hom::identity(x.h2())};
    l2.pi_class = zero_class(canonical_resolution(x.h2()), l2.coker_b.group);
    WesLevel l3;
    l3.n = 3;
    l3.H = x.h3();
    l3.Gamma = x.gamma_h2().group;
    l3.b_next = x.b4();
    l3.coker_b = x.coker_b4();
    l3.ker_b = {x.h3(), Hom::identity(x.h3())}; // b_3 lands in Gamma_2 = 0
    l3.pi_class = x.pi3_class();
    w.levels = {std::move(l2), std::move(l3)};
    return w;
}

Ladder ladder_of_witness(const FourDimSystem& x, const FourDimSystem& y,
                         const FourDimWitness& wit) {
    (void)x;
    (void)y;
    Ladder l;
    l.f = {wit.f2, wit.f3, wit.f4};
    l.gamma = {Hom::zero(FgAbGroup::trivial(), FgAbGroup::trivial()), gamma_hom(wit.f2)};
    return l;
}

Classify4Result classify4(const FourDimSystem& x, const FourDimSystem& y,
                          const Int& free_bound) {
    Classify4Result res;
    if (!are_isomorphic(x.h2(), y.h2()) || !are_isomorphic(x.h3(), y.h3()) ||
        !are_isomorphic(x.h4(), y.h4())) {
        res.verdict = Classify4Result::Verdict::not_equivalent;
        res.reason = "homology groups are not isomorphic";
        return res;
    }
    // the iso search is provably complete up to rank 1: the only units of Z
    // are +-1, so every isomorphism lies within any bound >= 1
    auto exhaustive = [&](const FgAbGroup& g) {
        return g.rank() == 0 || (g.rank() == 1 && free_bound >= 1);
    };
    bool search_complete = exhaustive(x.h2()) && exhaustive(x.h3()) && exhaustive(x.h4());
    FreeResolution rh3x = canonical_resolution(x.h3());

    bool any_square = false;
    IsoStream f2s(x.h2(), y.h2(), free_bound);
    while (auto f2 = f2s.next()) {
        Hom gf2 = gamma_hom(*f2);
        std::optional<Hom> found_f4;
        IsoStream f4s(x.h4(), y.h4(), free_bound);
        while (auto f4 = f4s.next())
            if (compose(gf2, x.b4()) == compose(y.b4(), *f4)) {
                found_f4 = std::move(*f4);
                break;
            }
        if (!found_f4) continue;
        any_square = true;
        Hom gt = induced_on_quotients(x.coker_b4(), y.coker_b4(), gf2);
        ExtClass lhs = pushforward(gt, x.pi3_class());
        IsoStream f3s(x.h3(), y.h3(), free_bound);
        while (auto f3 = f3s.next()) {
            ExtClass rhs = pullback(*f3, y.pi3_class(), rh3x);
            if (classes_equal(lhs, rhs)) {
                res.verdict = Classify4Result::Verdict::equivalent;
                res.witness = FourDimWitness{std::move(*f2), std::move(*f3),
                                             std::move(*found_f4)};
                res.reason = "witness isomorphisms found";
                return res;
            }
        }
    }
    std::string cause = any_square
                            ? "compatible (f2, f4) pairs exist but no f3 matches the pi_3 "
                              "extension classes"
                            : "no (f2, f4) satisfies Gamma(f2) . b4 = b4' . f4";
    if (search_complete) {
        res.verdict = Classify4Result::Verdict::not_equivalent;
        res.reason = cause;
    } else {
        res.verdict = Classify4Result::Verdict::no_witness_within_bound;
        res.reason = cause + " within the free-part bound";
    }
    return res;
}

} // namespace wesq
