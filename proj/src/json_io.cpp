#include "wesq/json_io.hpp"

namespace wesq {

namespace {

const Int kJsonSafeMax = (Int(1) << 53) - 1;

Json require_field(const Json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key))
        throw ValidationError(std::string(what) + ": missing field '" + key + "'");
    return j.at(key);
}

std::size_t size_from_json(const Json& j, const char* what) {
    if (!j.is_number_unsigned())
        throw ValidationError(std::string(what) + ": expected a nonnegative integer");
    return j.get<std::size_t>();
}

} // namespace

Json int_to_json(const Int& v) {
    if (v <= kJsonSafeMax && v >= -kJsonSafeMax) return Json(v.convert_to<long long>());
    return Json(v.str());
}

Int int_from_json(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::runtime_error&) {
            throw ValidationError("integer string '" + j.get<std::string>() + "' does not parse");
        }
    }
    throw ValidationError("expected an integer (number or decimal string)");
}

Json matrix_to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

IntMatrix matrix_from_json(const Json& j) {
    std::size_t rows = size_from_json(require_field(j, "rows", "matrix"), "matrix rows");
    std::size_t cols = size_from_json(require_field(j, "cols", "matrix"), "matrix cols");
    Json entries = require_field(j, "entries", "matrix");
    if (!entries.is_array() || entries.size() != rows)
        throw ValidationError("matrix: 'entries' must hold one array per row");
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const Json& row = entries.at(i);
        if (!row.is_array() || row.size() != cols)
            throw ValidationError("matrix: row " + std::to_string(i) + " has the wrong length");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = int_from_json(row.at(c));
    }
    return m;
}

Json group_to_json(const FgAbGroup& g) {
    Json torsion = Json::array();
    for (const auto& d : g.torsion()) torsion.push_back(int_to_json(d));
    return Json{{"rank", g.rank()}, {"torsion", std::move(torsion)}};
}

FgAbGroup group_from_json(const Json& j) {
    std::size_t rank = size_from_json(require_field(j, "rank", "group"), "group rank");
    Json torsion = require_field(j, "torsion", "group");
    if (!torsion.is_array()) throw ValidationError("group: 'torsion' must be an array");
    std::vector<Int> t;
    for (const auto& d : torsion) t.push_back(int_from_json(d));
    return FgAbGroup(std::move(t), rank);
}

Json hom_to_json(const Hom& h) {
    return Json{{"domain", group_to_json(h.domain())},
                {"codomain", group_to_json(h.codomain())},
                {"matrix", matrix_to_json(h.matrix())}};
}

Hom hom_from_json(const Json& j) {
    return Hom(group_from_json(require_field(j, "domain", "hom")),
               group_from_json(require_field(j, "codomain", "hom")),
               matrix_from_json(require_field(j, "matrix", "hom")));
}

Json complex_to_json(const ChainComplex& c) {
    Json ranks = Json::array();
    for (std::size_t n = 2; n <= c.top(); ++n) ranks.push_back(c.rank(n));
    Json diffs = Json::array();
    for (std::size_t n = 3; n <= c.top(); ++n) diffs.push_back(matrix_to_json(c.differential(n)));
    return Json{{"top", c.top()}, {"ranks", std::move(ranks)}, {"differentials", std::move(diffs)}};
}

ChainComplex complex_from_json(const Json& j) {
    std::size_t top = size_from_json(require_field(j, "top", "complex"), "complex top");
    Json ranks_j = require_field(j, "ranks", "complex");
    Json diffs_j = require_field(j, "differentials", "complex");
    if (!ranks_j.is_array() || !diffs_j.is_array())
        throw ValidationError("complex: 'ranks' and 'differentials' must be arrays");
    std::vector<std::size_t> ranks;
    for (const auto& r : ranks_j) ranks.push_back(size_from_json(r, "complex rank"));
    std::vector<IntMatrix> diffs;
    for (const auto& d : diffs_j) diffs.push_back(matrix_from_json(d));
    return ChainComplex(top, std::move(ranks), std::move(diffs));
}

Json system_to_json(const GammaSystem& s) {
    Json levels = Json::array();
    for (std::size_t n = 2; n <= s.top(); ++n) {
        const GammaSystemLevel& lv = s.level(n);
        Json level{{"n", n},
                   {"pi", group_to_json(lv.pi)},
                   {"j", hom_to_json(lv.j)}};
        if (n < s.top()) level["beta_next"] = hom_to_json(lv.beta_next);
        levels.push_back(std::move(level));
    }
    return Json{{"complex", complex_to_json(s.complex())}, {"levels", std::move(levels)}};
}

GammaSystem system_from_json(const Json& j) {
    ChainComplex complex = complex_from_json(require_field(j, "complex", "gamma system"));
    Json levels_j = require_field(j, "levels", "gamma system");
    if (!levels_j.is_array() || levels_j.size() != complex.top() - 1)
        throw ValidationError("gamma system: expected one level per degree in [2, top]");
    std::vector<GammaSystemLevel> levels(complex.top() - 1);
    std::vector<bool> seen(complex.top() - 1, false);
    for (const auto& level : levels_j) {
        std::size_t n = size_from_json(require_field(level, "n", "system level"), "level degree");
        if (n < 2 || n > complex.top())
            throw ValidationError("gamma system: level degree out of range");
        if (seen[n - 2]) throw ValidationError("gamma system: duplicate level degree");
        seen[n - 2] = true;
        FgAbGroup pi = group_from_json(require_field(level, "pi", "system level"));
        Hom jmap = hom_from_json(require_field(level, "j", "system level"));
        Hom beta = level.contains("beta_next")
                       ? hom_from_json(level.at("beta_next"))
                       : Hom::zero(FgAbGroup::free_group(complex.rank(n + 1)), pi);
        levels[n - 2] = {std::move(pi), std::move(jmap), std::move(beta)};
    }
    return GammaSystem(std::move(complex), std::move(levels));
}

Json fourdim_to_json(const FourDimSystem& x) {
    Json j{{"H2", group_to_json(x.h2())},
           {"H3", group_to_json(x.h3())},
           {"H4", group_to_json(x.h4())},
           {"b4", hom_to_json(x.b4())}};
    if (!x.pi3_class().is_zero_class())
        j["pi3_class"] = matrix_to_json(x.pi3_class().cocycle.matrix());
    return j;
}

FourDimSystem fourdim_from_json(const Json& j) {
    FgAbGroup h2 = group_from_json(require_field(j, "H2", "fourdim system"));
    FgAbGroup h3 = group_from_json(require_field(j, "H3", "fourdim system"));
    FgAbGroup h4 = group_from_json(require_field(j, "H4", "fourdim system"));
    Hom b4 = hom_from_json(require_field(j, "b4", "fourdim system"));
    std::optional<Hom> cocycle;
    if (j.contains("pi3_class")) {
        IntMatrix m = matrix_from_json(j.at("pi3_class"));
        Quotient q = cokernel(b4);
        cocycle = Hom(FgAbGroup::free_group(h3.torsion_count()), q.group, std::move(m));
    }
    return FourDimSystem(std::move(h2), std::move(h3), std::move(h4), std::move(b4),
                         std::move(cocycle));
}

Json ladder_to_json(const Ladder& l) {
    Json f = Json::array(), g = Json::array();
    for (const auto& h : l.f) f.push_back(hom_to_json(h));
    for (const auto& h : l.gamma) g.push_back(hom_to_json(h));
    return Json{{"f", std::move(f)}, {"gamma", std::move(g)}};
}

Ladder ladder_from_json(const Json& j) {
    Json f = require_field(j, "f", "ladder");
    Json g = require_field(j, "gamma", "ladder");
    if (!f.is_array() || !g.is_array())
        throw ValidationError("ladder: 'f' and 'gamma' must be arrays");
    Ladder l;
    for (const auto& h : f) l.f.push_back(hom_from_json(h));
    for (const auto& h : g) l.gamma.push_back(hom_from_json(h));
    return l;
}

Json ext_class_to_json(const ExtClass& c) {
    Json coords = Json::array();
    for (const auto& v : c.normal_form) coords.push_back(int_to_json(v));
    return Json{{"ext_group", group_to_json(c.ext_group)},
                {"target", group_to_json(c.target)},
                {"coords", std::move(coords)}};
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("JSON parse error: ") + e.what());
    }
}

} // namespace wesq
