#include "wesq/gamma.hpp"

namespace wesq {

std::size_t GammaBasis::bracket_index(std::size_t i, std::size_t j) const {
    std::size_t m = source.generator_count();
    // brackets are ordered (0,1), (0,2), ..., (0,m-1), (1,2), ...
    return m + (i * (2 * m - i - 1)) / 2 + (j - i - 1);
}

IntVec GammaBasis::eval_labeled(const IntVec& x) const {
    std::size_t m = source.generator_count();
    if (x.size() != m) throw ValidationError("gamma eval: coordinate length mismatch");
    IntVec out(labeled_count(), 0);
    for (std::size_t i = 0; i < m; ++i) out[gamma_index(i)] = x[i] * x[i];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) out[bracket_index(i, j)] = x[i] * x[j];
    for (std::size_t s = 0; s < out.size(); ++s)
        if (labeled_orders[s] > 0) out[s] = emod(out[s], labeled_orders[s]);
    return out;
}

IntVec GammaBasis::bracket_labeled(const IntVec& x, const IntVec& y) const {
    std::size_t m = source.generator_count();
    if (x.size() != m || y.size() != m)
        throw ValidationError("bracket eval: coordinate length mismatch");
    IntVec out(labeled_count(), 0);
    for (std::size_t i = 0; i < m; ++i) out[gamma_index(i)] = 2 * x[i] * y[i];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            out[bracket_index(i, j)] = x[i] * y[j] + x[j] * y[i];
    for (std::size_t s = 0; s < out.size(); ++s)
        if (labeled_orders[s] > 0) out[s] = emod(out[s], labeled_orders[s]);
    return out;
}

GammaResult gamma_group(const FgAbGroup& a) {
    std::size_t m = a.generator_count();
    GammaBasis basis;
    basis.source = a;
    basis.labeled_orders.reserve(m + m * (m - 1) / 2);
    for (std::size_t i = 0; i < m; ++i) {
        const Int& o = a.order(i);
        if (o == 0)
            basis.labeled_orders.push_back(0);
        else
            basis.labeled_orders.push_back(o % 2 == 0 ? 2 * o : o);
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            basis.labeled_orders.push_back(xgcd(a.order(i), a.order(j)).g);

    std::size_t n = basis.labeled_orders.size();
    IntMatrix rel(n, n);
    for (std::size_t s = 0; s < n; ++s) rel(s, s) = basis.labeled_orders[s];
    Presentation p = from_presentation(n, rel);
    basis.group = p.group;
    basis.to_canonical = std::move(p.to_canonical);
    basis.lift = std::move(p.lift);
    return {basis.group, std::move(basis)};
}

IntVec gamma_eval(const GammaBasis& b, const IntVec& x) {
    return reduce_coords(b.group, b.to_canonical.mul_vec(b.eval_labeled(x)));
}

IntVec bracket_eval(const GammaBasis& b, const IntVec& x, const IntVec& y) {
    return reduce_coords(b.group, b.to_canonical.mul_vec(b.bracket_labeled(x, y)));
}

Hom gamma_hom(const Hom& f) {
    GammaResult ga = gamma_group(f.domain());
    GammaResult gb = gamma_group(f.codomain());
    std::size_t m = f.domain().generator_count();
    IntMatrix labeled(gb.basis.labeled_count(), ga.basis.labeled_count());
    for (std::size_t i = 0; i < m; ++i) {
        IntVec v = gb.basis.eval_labeled(f.matrix().col(i));
        for (std::size_t s = 0; s < v.size(); ++s) labeled(s, ga.basis.gamma_index(i)) = v[s];
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            IntVec v = gb.basis.bracket_labeled(f.matrix().col(i), f.matrix().col(j));
            for (std::size_t s = 0; s < v.size(); ++s)
                labeled(s, ga.basis.bracket_index(i, j)) = v[s];
        }
    IntMatrix mat = gb.basis.to_canonical * labeled * ga.basis.lift;
    return Hom(ga.group, gb.group, std::move(mat));
}

FgAbGroup gamma_oracle(const FgAbGroup& a, const Int& size_limit) {
    if (!a.is_finite()) throw ValidationError("gamma_oracle: group must be finite");
    Int order = a.group_order();
    if (order > size_limit)
        throw ValidationError("gamma_oracle: group order exceeds the size limit");
    std::vector<IntVec> elements = all_elements(a);
    std::size_t n = elements.size();

    auto index_of = [&](const IntVec& coords) {
        Int idx = 0;
        for (std::size_t i = 0; i < coords.size(); ++i) idx = idx * a.order(i) + coords[i];
        return static_cast<std::size_t>(idx);
    };
    auto add3 = [&](const IntVec& x, const IntVec& y, const IntVec& z) {
        IntVec s(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] + y[i] + z[i];
        return index_of(reduce_coords(a, std::move(s)));
    };
    const IntVec zero(a.generator_count(), 0);

    ColumnSpanAccumulator acc(n);
    for (std::size_t i = 0; i < n; ++i) {
        IntVec neg(a.generator_count());
        for (std::size_t t = 0; t < neg.size(); ++t) neg[t] = -elements[i][t];
        std::size_t j = index_of(reduce_coords(a, std::move(neg)));
        if (i == j) continue;
        IntVec col(n, 0);
        col[j] += 1;
        col[i] -= 1;
        acc.insert(std::move(col));
    }
    // the cross-effect relation is symmetric in (a, b, c); unordered triples
    // span the same lattice as the full enumeration
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = j; k < n; ++k) {
                IntVec col(n, 0);
                col[add3(elements[i], elements[j], elements[k])] += 1;
                col[add3(elements[i], elements[j], zero)] -= 1;
                col[add3(elements[i], elements[k], zero)] -= 1;
                col[add3(elements[j], elements[k], zero)] -= 1;
                col[i] += 1;
                col[j] += 1;
                col[k] += 1;
                acc.insert(std::move(col));
            }

    CokernelInvariants inv = cokernel_invariants(acc.basis());
    if (inv.free_rank != 0)
        throw IntegrityError("gamma_oracle: quotient of a finite group came out infinite");
    return FgAbGroup(inv.torsion, 0);
}

FgAbGroup gamma_upper(const FgAbGroup& p) { return tensor(p, FgAbGroup::cyclic(2)); }

} // namespace wesq
