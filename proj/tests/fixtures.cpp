#include "fixtures.hpp"

#include <random>
#include <sstream>

#include "test_util.hpp"

namespace wesq::testutil {

namespace {

IntMatrix negated(IntMatrix m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
    return m;
}

} // namespace

Fixture build_fixture(std::string name, ChainComplex complex, std::vector<FgAbGroup> gammas,
                      std::vector<IntMatrix> b_matrices, std::vector<IntMatrix> ext_matrices) {
    std::size_t top = complex.top();
    if (gammas.size() != top - 1 || b_matrices.size() != top - 2 ||
        ext_matrices.size() != top - 2)
        throw ValidationError("fixture " + name + ": data does not cover degrees 2..top");

    std::vector<GammaSystemLevel> levels;
    std::vector<Hom> designed_b;
    std::vector<Hom> gamma_inj;
    IntMatrix l = IntMatrix::identity(complex.rank(2)); // ker beta_2 = C_2
    for (std::size_t n = 2; n <= top; ++n) {
        const FgAbGroup& gamma = gammas[n - 2];
        DirectSum ds = direct_sum(gamma, FgAbGroup::free_group(l.cols()));
        gamma_inj.push_back(ds.inj_a);
        Hom j(ds.group, FgAbGroup::free_group(complex.rank(n)), l * ds.proj_b.matrix());

        Hom beta = Hom::zero(FgAbGroup::free_group(complex.rank(n + 1)), ds.group);
        if (n < top) {
            const IntMatrix& d = complex.differential(n + 1);
            HomologyData h_next = homology(complex, n + 1);
            Hom b(h_next.group, gamma, b_matrices[n - 2]);
            designed_b.push_back(b);
            SnfResult sd = smith_normal_form(d);
            const IntMatrix& e = ext_matrices[n - 2];
            if (e.rows() != gamma.generator_count() || e.cols() != sd.rank)
                throw ValidationError("fixture " + name + ": extension data at degree " +
                                      std::to_string(n) + " has the wrong shape");
            // w . V = [E | b . pr] on the (image section | cycle) basis of C_{n+1}
            IntMatrix w = IntMatrix::hstack(e, b.matrix() * h_next.to_canonical) *
                          unimodular_inverse(sd.v);
            IntMatrix vc(l.cols(), complex.rank(n + 1));
            for (std::size_t c = 0; c < vc.cols(); ++c) {
                auto coords = solve(l, d.col(c));
                if (!coords)
                    throw IntegrityError("fixture " + name +
                                         ": boundary escaped ker beta at degree " +
                                         std::to_string(n));
                vc.set_col(c, *coords);
            }
            beta = Hom(FgAbGroup::free_group(complex.rank(n + 1)), ds.group,
                       ds.inj_a.matrix() * w + ds.inj_b.matrix() * vc);
        } else {
            designed_b.push_back(Hom::zero(FgAbGroup::trivial(), gamma));
        }
        levels.push_back({ds.group, j, beta});

        if (n < top) {
            IntMatrix pres = negated(levels.back().pi.presentation_matrix());
            IntMatrix k =
                kernel_basis(IntMatrix::hstack(levels.back().beta_next.matrix(), pres));
            l = image_basis(k.rows_slice(0, complex.rank(n + 1)));
        }
    }

    GammaSystem system(std::move(complex), std::move(levels));
    ValidationReport rep = validate_system(system);
    if (!rep.ok()) {
        std::ostringstream os;
        os << "fixture " << name << " failed validation:";
        for (const auto& issue : rep.issues) os << " [" << issue.degree << "] " << issue.detail;
        throw IntegrityError(os.str());
    }
    bool free_h = true;
    for (std::size_t n = 2; n <= system.top(); ++n)
        if (!homology(system.complex(), n).group.is_free()) free_h = false;
    return {std::move(name), std::move(system), std::move(gammas), std::move(designed_b),
            std::move(ext_matrices), std::move(gamma_inj), free_h};
}

namespace {

Fixture random_fixture(const std::string& name, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::size_t top = 3 + static_cast<std::size_t>(rand_long(rng, 0, 2));
    std::vector<std::size_t> ranks;
    for (std::size_t n = 2; n <= top; ++n)
        ranks.push_back(static_cast<std::size_t>(rand_long(rng, 1, 2)));
    // d_{n+1} maps into the kernel of d_n, so d.d = 0 by construction
    std::vector<IntMatrix> diffs;
    IntMatrix prev_kernel = IntMatrix::identity(ranks[0]);
    for (std::size_t n = 3; n <= top; ++n) {
        IntMatrix r = rand_matrix(rng, prev_kernel.cols(), ranks[n - 2], 2);
        IntMatrix d = prev_kernel * r;
        diffs.push_back(d);
        prev_kernel = kernel_basis(d);
    }
    ChainComplex complex(top, ranks, diffs);

    std::vector<FgAbGroup> pool = {FgAbGroup::trivial(),  FgAbGroup::cyclic(2),
                                   FgAbGroup::cyclic(3),  FgAbGroup::cyclic(4),
                                   FgAbGroup({2, 2}, 0),  FgAbGroup::cyclic(6)};
    std::vector<FgAbGroup> gammas;
    for (std::size_t n = 2; n <= top; ++n)
        gammas.push_back(pool[static_cast<std::size_t>(rand_long(rng, 0, 5))]);

    std::vector<IntMatrix> b_matrices, ext_matrices;
    for (std::size_t n = 2; n + 1 <= top; ++n) {
        FgAbGroup h_next = homology(complex, n + 1).group;
        b_matrices.push_back(random_hom(rng, h_next, gammas[n - 2]).matrix());
        std::size_t rank = smith_normal_form(complex.differential(n + 1)).rank;
        ext_matrices.push_back(rand_matrix(rng, gammas[n - 2].generator_count(), rank, 3));
    }
    return build_fixture(name, std::move(complex), std::move(gammas), std::move(b_matrices),
                         std::move(ext_matrices));
}

std::vector<Fixture> make_corpus() {
    std::vector<Fixture> out;
    FgAbGroup triv = FgAbGroup::trivial();

    // wedge of two 2-spheres, a 3-sphere and a 4-sphere: zero differentials
    out.push_back(build_fixture(
        "wedge", ChainComplex(4, {2, 1, 1}, {IntMatrix(2, 1), IntMatrix(1, 1)}),
        {triv, triv, triv}, {IntMatrix(0, 1), IntMatrix(0, 1)},
        {IntMatrix(0, 0), IntMatrix(0, 0)}));

    // complex-projective-plane model: b_4 = 1 on Gamma_3 = Gamma(Z)
    out.push_back(build_fixture(
        "cp2", ChainComplex(4, {1, 0, 1}, {IntMatrix(1, 0), IntMatrix(0, 1)}),
        {triv, FgAbGroup::free_group(1), FgAbGroup::cyclic(2)},
        {IntMatrix(0, 0), IntMatrix::from_rows({{1}})}, {IntMatrix(0, 0), IntMatrix(1, 0)}));

    // same skeleton with the trivial attachment: S^2 v S^4
    out.push_back(build_fixture(
        "wedge_s2s4", ChainComplex(4, {1, 0, 1}, {IntMatrix(1, 0), IntMatrix(0, 1)}),
        {triv, FgAbGroup::free_group(1), FgAbGroup::cyclic(2)},
        {IntMatrix(0, 0), IntMatrix::from_rows({{0}})}, {IntMatrix(0, 0), IntMatrix(1, 0)}));

    // degree-2 Moore space flavor with synthetic Gamma_2 = Z/2 and a
    // nonsplit extension: pi_2 = Z/4
    out.push_back(build_fixture("moore2",
                                ChainComplex(3, {1, 1}, {IntMatrix::from_rows({{2}})}),
                                {FgAbGroup::cyclic(2), triv},
                                {IntMatrix(1, 0)}, {IntMatrix::from_rows({{1}})}));

    // split variant: pi_2 = Z/2 + Z/2
    out.push_back(build_fixture("moore2_split",
                                ChainComplex(3, {1, 1}, {IntMatrix::from_rows({{2}})}),
                                {FgAbGroup::cyclic(2), triv},
                                {IntMatrix(1, 0)}, {IntMatrix::from_rows({{0}})}));

    // H_2 = Z/4 with Gamma_2 = Z/2: class in Ext(Z/4, Z/2) = Z/2
    out.push_back(build_fixture("moore4",
                                ChainComplex(3, {1, 1}, {IntMatrix::from_rows({{4}})}),
                                {FgAbGroup::cyclic(2), triv},
                                {IntMatrix(1, 0)}, {IntMatrix::from_rows({{1}})}));

    // H_2 = Z/2 + Z/3 with a two-generator Gamma_2
    out.push_back(build_fixture(
        "tor6", ChainComplex(3, {2, 2}, {IntMatrix::from_rows({{2, 0}, {0, 3}})}),
        {FgAbGroup({2, 4}, 0), triv}, {IntMatrix(2, 0)},
        {IntMatrix::from_rows({{1, 0}, {0, 1}})}));

    // nonzero b_4 into torsion, surjective: Coker b_4 = 0
    out.push_back(build_fixture(
        "b4tor", ChainComplex(4, {1, 0, 1}, {IntMatrix(1, 0), IntMatrix(0, 1)}),
        {triv, FgAbGroup::cyclic(2), FgAbGroup::cyclic(2)},
        {IntMatrix(0, 0), IntMatrix::from_rows({{1}})}, {IntMatrix(0, 0), IntMatrix(1, 0)}));

    // contractible-ish cone: free (trivial) homology, torsion Gamma
    out.push_back(build_fixture("cone",
                                ChainComplex(3, {1, 1}, {IntMatrix::from_rows({{1}})}),
                                {FgAbGroup::cyclic(2), FgAbGroup::cyclic(4)},
                                {IntMatrix(1, 0)}, {IntMatrix::from_rows({{1}})}));

    // top dimension 5, mixed torsion, nonzero extension data in two degrees
    out.push_back(build_fixture(
        "big5",
        ChainComplex(5, {1, 2, 2, 1},
                     {IntMatrix::from_rows({{0, 0}}), IntMatrix::from_rows({{2, 0}, {0, 0}}),
                      IntMatrix::from_rows({{0}, {3}})}),
        {triv, FgAbGroup::cyclic(6), FgAbGroup::cyclic(4), FgAbGroup::cyclic(2)},
        {IntMatrix(0, 2), IntMatrix::from_rows({{2}}), IntMatrix(1, 0)},
        {IntMatrix(0, 0), IntMatrix::from_rows({{3}}), IntMatrix::from_rows({{1}})}));

    out.push_back(random_fixture("rand1", 101));
    out.push_back(random_fixture("rand2", 202));
    out.push_back(random_fixture("rand3", 303));

    return out;
}

} // namespace

const std::vector<Fixture>& fixture_corpus() {
    static const std::vector<Fixture> corpus = make_corpus();
    return corpus;
}

} // namespace wesq::testutil
