#include "wesq/chain_complex.hpp"

#include <string>

namespace wesq {

ChainComplex::ChainComplex(std::size_t top, std::vector<std::size_t> ranks,
                           std::vector<IntMatrix> differentials)
    : top_(top), ranks_(std::move(ranks)) {
    if (top_ < 2) throw ValidationError("chain complex: top dimension must be >= 2");
    if (ranks_.size() != top_ - 1)
        throw ValidationError("chain complex: expected one rank per degree in [2, top]");
    if (differentials.size() != top_ - 2)
        throw ValidationError("chain complex: expected one differential per degree in [3, top]");
    diffs_.resize(top_);                 // slots for d_2 .. d_{top+1}
    diffs_[0] = IntMatrix(0, ranks_[0]); // d_2 into C_1 = 0
    for (std::size_t n = 3; n <= top_; ++n) {
        IntMatrix& d = differentials[n - 3];
        if (d.rows() != ranks_[n - 3] || d.cols() != ranks_[n - 2])
            throw ValidationError("chain complex: differential d_" + std::to_string(n) +
                                  " has the wrong shape");
        diffs_[n - 2] = std::move(d);
    }
    diffs_[top_ - 1] = IntMatrix(ranks_[top_ - 2], 0); // d_{top+1} from C_{top+1} = 0
    for (std::size_t n = 2; n <= top_; ++n)
        if (!(differential(n) * differential(n + 1)).is_zero())
            throw ValidationError("chain complex: d_" + std::to_string(n) + " . d_" +
                                  std::to_string(n + 1) + " != 0");
}

std::size_t ChainComplex::rank(std::size_t n) const {
    if (n < 2 || n > top_) return 0;
    return ranks_[n - 2];
}

const IntMatrix& ChainComplex::differential(std::size_t n) const {
    if (n < 2 || n > top_ + 1) throw ValidationError("differential: degree out of range");
    return diffs_[n - 2];
}

Hom HomologyData::projection_hom() const {
    return Hom(FgAbGroup::free_group(to_canonical.cols()), group, to_canonical);
}

HomologyData homology(const ChainComplex& c, std::size_t n) {
    if (n < 2 || n > c.top()) throw ValidationError("homology: degree out of range");
    HomologyData h;
    h.cycle_basis = kernel_basis(c.differential(n));
    const IntMatrix& bd = c.differential(n + 1);
    h.boundary_in_cycles = IntMatrix(h.cycle_basis.cols(), bd.cols());
    for (std::size_t j = 0; j < bd.cols(); ++j) {
        auto coords = solve(h.cycle_basis, bd.col(j));
        if (!coords)
            throw IntegrityError("homology: boundary column is not a cycle");
        h.boundary_in_cycles.set_col(j, *coords);
    }
    Presentation p = from_presentation(h.cycle_basis.cols(), h.boundary_in_cycles);
    h.group = std::move(p.group);
    h.to_canonical = std::move(p.to_canonical);
    h.lift = std::move(p.lift);
    return h;
}

} // namespace wesq
