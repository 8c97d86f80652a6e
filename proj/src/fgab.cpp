#include "wesq/fgab.hpp"

#include <sstream>

namespace wesq {

FgAbGroup::FgAbGroup(std::vector<Int> torsion, std::size_t rank)
    : torsion_(std::move(torsion)), rank_(rank) {
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
        if (torsion_[i] < 2) throw ValidationError("invariant factor < 2");
        if (i > 0 && torsion_[i] % torsion_[i - 1] != 0)
            throw ValidationError("invariant factors violate the divisibility chain");
    }
}

FgAbGroup FgAbGroup::cyclic(const Int& n) {
    if (n < 0) throw ValidationError("cyclic: negative order");
    if (n == 0) return free_group(1);
    if (n == 1) return trivial();
    return FgAbGroup({n}, 0);
}

const Int& FgAbGroup::order(std::size_t i) const {
    static const Int zero = 0;
    return i < torsion_.size() ? torsion_[i] : zero;
}

Int FgAbGroup::group_order() const {
    if (rank_ != 0) throw ValidationError("group_order: group is infinite");
    Int n = 1;
    for (const auto& d : torsion_) n *= d;
    return n;
}

IntMatrix FgAbGroup::presentation_matrix() const {
    IntMatrix p(generator_count(), torsion_.size());
    for (std::size_t i = 0; i < torsion_.size(); ++i) p(i, i) = torsion_[i];
    return p;
}

std::string FgAbGroup::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& d : torsion_) {
        if (!first) os << " + ";
        os << "Z/" << d;
        first = false;
    }
    if (rank_ > 0) {
        if (!first) os << " + ";
        os << "Z";
        if (rank_ > 1) os << "^" << rank_;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

IntVec reduce_coords(const FgAbGroup& g, IntVec v) {
    if (v.size() != g.generator_count())
        throw ValidationError("reduce_coords: coordinate length mismatch");
    for (std::size_t i = 0; i < g.torsion_count(); ++i) v[i] = emod(v[i], g.order(i));
    return v;
}

namespace {

IntMatrix reduce_matrix(const FgAbGroup& codomain, IntMatrix m) {
    for (std::size_t i = 0; i < codomain.torsion_count(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = emod(m(i, j), codomain.order(i));
    return m;
}

} // namespace

Hom::Hom(FgAbGroup domain, FgAbGroup codomain, IntMatrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != codomain_.generator_count() ||
        matrix_.cols() != domain_.generator_count())
        throw ValidationError("Hom: matrix shape does not match generator counts");
    matrix_ = reduce_matrix(codomain_, std::move(matrix_));
    for (std::size_t j = 0; j < domain_.torsion_count(); ++j) {
        const Int& d = domain_.order(j);
        for (std::size_t i = 0; i < matrix_.rows(); ++i) {
            const Int& e = codomain_.order(i);
            if (e > 0) {
                if ((d * matrix_(i, j)) % e != 0)
                    throw ValidationError("Hom: image of a torsion generator has too large order");
            } else if (matrix_(i, j) != 0) {
                throw ValidationError("Hom: torsion generator maps to an infinite-order element");
            }
        }
    }
}

Hom Hom::zero(FgAbGroup domain, FgAbGroup codomain) {
    IntMatrix m(codomain.generator_count(), domain.generator_count());
    return Hom(std::move(domain), std::move(codomain), std::move(m));
}

Hom Hom::identity(const FgAbGroup& g) {
    return Hom(g, g, IntMatrix::identity(g.generator_count()));
}

IntVec Hom::apply(const IntVec& x) const {
    return reduce_coords(codomain_, matrix_.mul_vec(x));
}

Hom compose(const Hom& g, const Hom& f) {
    if (f.codomain() != g.domain()) throw ValidationError("compose: domain/codomain mismatch");
    return Hom(f.domain(), g.codomain(), g.matrix() * f.matrix());
}

bool is_zero(const Hom& f) { return f.matrix().is_zero(); }

Hom Presentation::projection_hom() const {
    return Hom(FgAbGroup::free_group(to_canonical.cols()), group, to_canonical);
}

Presentation from_presentation(std::size_t generators, const IntMatrix& relations) {
    if (relations.rows() != generators)
        throw ValidationError("from_presentation: relation matrix row count != generators");
    SnfResult s = smith_normal_form(relations);
    std::vector<std::size_t> kept;
    std::vector<Int> torsion;
    for (std::size_t i = 0; i < s.rank; ++i)
        if (s.d(i, i) >= 2) {
            kept.push_back(i);
            torsion.push_back(s.d(i, i));
        }
    std::size_t rank = generators - s.rank;
    for (std::size_t i = s.rank; i < generators; ++i) kept.push_back(i);

    FgAbGroup group(std::move(torsion), rank);
    IntMatrix uinv = unimodular_inverse(s.u);
    IntMatrix to_canonical(kept.size(), generators);
    IntMatrix lift(generators, kept.size());
    for (std::size_t a = 0; a < kept.size(); ++a) {
        for (std::size_t j = 0; j < generators; ++j) to_canonical(a, j) = s.u(kept[a], j);
        for (std::size_t i = 0; i < generators; ++i) lift(i, a) = uinv(i, kept[a]);
    }
    to_canonical = reduce_matrix(group, std::move(to_canonical));
    return {std::move(group), std::move(to_canonical), std::move(lift)};
}

DirectSum direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
    std::size_t ma = a.generator_count(), mb = b.generator_count();
    IntMatrix rel(ma + mb, a.torsion_count() + b.torsion_count());
    for (std::size_t i = 0; i < a.torsion_count(); ++i) rel(i, i) = a.order(i);
    for (std::size_t i = 0; i < b.torsion_count(); ++i)
        rel(ma + i, a.torsion_count() + i) = b.order(i);
    Presentation p = from_presentation(ma + mb, rel);
    Hom inj_a(a, p.group, p.to_canonical.cols_slice(0, ma));
    Hom inj_b(b, p.group, p.to_canonical.cols_slice(ma, ma + mb));
    Hom proj_a(p.group, a, reduce_matrix(a, p.lift.rows_slice(0, ma)));
    Hom proj_b(p.group, b, reduce_matrix(b, p.lift.rows_slice(ma, ma + mb)));
    return {p.group, std::move(inj_a), std::move(inj_b), std::move(proj_a), std::move(proj_b)};
}

namespace {

// x-part of a basis of {x : f_matrix x lies in the relation lattice of cod}.
IntMatrix relation_lattice_preimage(const IntMatrix& f_matrix, const FgAbGroup& cod) {
    IntMatrix pres = cod.presentation_matrix();
    for (std::size_t i = 0; i < pres.rows(); ++i)
        for (std::size_t j = 0; j < pres.cols(); ++j) pres(i, j) = -pres(i, j);
    IntMatrix k = kernel_basis(IntMatrix::hstack(f_matrix, pres));
    return k.rows_slice(0, f_matrix.cols());
}

} // namespace

Subobject kernel(const Hom& f) {
    // Generators of ker f: the lattice X of domain representatives that die
    // in the codomain. Relations: combinations of those landing in the
    // domain's own relation lattice.
    IntMatrix x = relation_lattice_preimage(f.matrix(), f.codomain());
    IntMatrix krel = relation_lattice_preimage(x, f.domain());
    Presentation p = from_presentation(x.cols(), krel);
    Hom incl(p.group, f.domain(), x * p.lift);
    return {p.group, std::move(incl)};
}

Subobject image(const Hom& f) {
    // The image is generated by the images of the domain generators; their
    // relation lattice is exactly the kernel-generator lattice above.
    IntMatrix rel = relation_lattice_preimage(f.matrix(), f.codomain());
    Presentation p = from_presentation(f.domain().generator_count(), rel);
    Hom incl(p.group, f.codomain(), f.matrix() * p.lift);
    return {p.group, std::move(incl)};
}

Quotient cokernel(const Hom& f) {
    IntMatrix rel = IntMatrix::hstack(f.matrix(), f.codomain().presentation_matrix());
    Presentation p = from_presentation(f.codomain().generator_count(), rel);
    Hom proj(f.codomain(), p.group, p.to_canonical);
    return {p.group, std::move(proj), p.lift};
}

bool is_isomorphism(const Hom& f) {
    return kernel(f).group.is_trivial() && cokernel(f).group.is_trivial();
}

bool are_isomorphic(const FgAbGroup& a, const FgAbGroup& b) { return a == b; }

std::optional<IntVec> preimage(const Hom& f, const IntVec& y) {
    if (y.size() != f.codomain().generator_count())
        throw ValidationError("preimage: coordinate length mismatch");
    IntMatrix lhs = IntMatrix::hstack(f.matrix(), f.codomain().presentation_matrix());
    auto sol = solve(lhs, y);
    if (!sol) return std::nullopt;
    IntVec x(sol->begin(), sol->begin() + static_cast<long>(f.domain().generator_count()));
    return reduce_coords(f.domain(), std::move(x));
}

std::optional<Hom> lift_through_injection(const Hom& incl, const Hom& f) {
    if (incl.codomain() != f.codomain())
        throw ValidationError("lift_through_injection: codomain mismatch");
    IntMatrix h(incl.domain().generator_count(), f.domain().generator_count());
    for (std::size_t j = 0; j < f.domain().generator_count(); ++j) {
        auto x = preimage(incl, f.matrix().col(j));
        if (!x) return std::nullopt;
        h.set_col(j, *x);
    }
    return Hom(f.domain(), incl.domain(), std::move(h));
}

Hom induced_on_quotients(const Quotient& q, const Quotient& q2, const Hom& g) {
    if (g.domain() != q.proj.domain() || g.codomain() != q2.proj.domain())
        throw ValidationError("induced_on_quotients: shape mismatch");
    // g descends iff it maps ker(proj) into ker(proj'); with that, the value
    // on a class is independent of the chosen lift.
    Subobject killed = kernel(q.proj);
    if (!is_zero(compose(q2.proj, compose(g, killed.incl))))
        throw IntegrityError("induced_on_quotients: map does not descend to the quotients");
    IntMatrix m = compose(q2.proj, g).matrix() * q.lift;
    return Hom(q.group, q2.group, std::move(m));
}

std::vector<IntVec> all_elements(const FgAbGroup& g) {
    if (!g.is_finite()) throw ValidationError("all_elements: group is infinite");
    std::vector<IntVec> out;
    IntVec cur(g.generator_count(), 0);
    while (true) {
        out.push_back(cur);
        std::size_t p = g.generator_count();
        while (p > 0) {
            --p;
            ++cur[p];
            if (cur[p] < g.order(p)) break;
            cur[p] = 0;
            if (p == 0) return out;
        }
        if (g.generator_count() == 0) return out;
    }
}

HomStream::HomStream(FgAbGroup domain, FgAbGroup codomain, Int free_bound)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), done_(false) {
    if (free_bound < 0) throw ValidationError("HomStream: negative free bound");
    std::size_t rows = codomain_.generator_count(), cols = domain_.generator_count();
    positions_.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            const Int& d = domain_.order(j);
            const Int& e = codomain_.order(i);
            Position p{};
            if (d > 0 && e > 0) {
                Int g = xgcd(d, e).g;
                p.count = g;
                p.step = e / g;
                p.free_free = false;
            } else if (d > 0) {
                p.count = 1;
                p.step = 0;
                p.free_free = false;
            } else if (e > 0) {
                p.count = e;
                p.step = 1;
                p.free_free = false;
            } else {
                p.count = 2 * free_bound + 1;
                p.step = 0;
                p.free_free = true;
            }
            positions_.push_back(std::move(p));
        }
    odometer_.assign(positions_.size(), 0);
}

Int HomStream::value_at(std::size_t pos) const {
    const Position& p = positions_[pos];
    const Int& t = odometer_[pos];
    if (!p.free_free) return t * p.step;
    // 0, 1, -1, 2, -2, ... so identity-like witnesses come before sign flips
    if (t == 0) return 0;
    if (t % 2 == 1) return (t + 1) / 2;
    return -t / 2;
}

std::optional<Hom> HomStream::next() {
    if (done_) return std::nullopt;
    std::size_t rows = codomain_.generator_count(), cols = domain_.generator_count();
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = value_at(i * cols + j);
    Hom h(domain_, codomain_, std::move(m));
    // advance: last position fastest
    std::size_t p = positions_.size();
    while (p > 0) {
        --p;
        ++odometer_[p];
        if (odometer_[p] < positions_[p].count) return h;
        odometer_[p] = 0;
        if (p == 0) done_ = true;
    }
    if (positions_.empty()) done_ = true;
    return h;
}

IsoStream::IsoStream(FgAbGroup domain, FgAbGroup codomain, Int free_bound) {
    if (are_isomorphic(domain, codomain))
        inner_.emplace(std::move(domain), std::move(codomain), std::move(free_bound));
}

std::optional<Hom> IsoStream::next() {
    if (!inner_) return std::nullopt;
    while (auto h = inner_->next())
        if (is_isomorphism(*h)) return h;
    return std::nullopt;
}

} // namespace wesq
