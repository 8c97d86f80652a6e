#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "wesq/json_io.hpp"

using namespace wesq;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open input file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const Json& out, const std::string& output_path) {
    std::string text = dump_canonical(out);
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(output_path);
    if (!f) throw ValidationError("cannot open output file: " + output_path);
    f << text;
}

Json validation_to_json(const ValidationReport& rep) {
    Json issues = Json::array();
    for (const auto& issue : rep.issues)
        issues.push_back(Json{{"degree", issue.degree},
                              {"axiom", issue.axiom},
                              {"detail", issue.detail}});
    return Json{{"valid", rep.ok()}, {"issues", std::move(issues)}};
}

Json ladder_report_to_json(const LadderReport& rep) {
    Json issues = Json::array();
    for (const auto& issue : rep.issues)
        issues.push_back(Json{{"degree", issue.degree},
                              {"condition", issue.condition},
                              {"detail", issue.detail}});
    return Json{{"ok", rep.ok()}, {"issues", std::move(issues)}};
}

int run_snf(const std::string& input, const std::string& output, bool check_only) {
    IntMatrix m = matrix_from_json(parse_json(read_file(input)));
    if (check_only) {
        emit(Json{{"valid", true}, {"issues", Json::array()}}, output);
        return 0;
    }
    SnfResult s = smith_normal_form(m);
    emit(Json{{"U", matrix_to_json(s.u)},
              {"D", matrix_to_json(s.d)},
              {"V", matrix_to_json(s.v)},
              {"rank", s.rank}},
         output);
    return 0;
}

int run_homology(const std::string& input, const std::string& output, bool check_only) {
    ChainComplex c = complex_from_json(parse_json(read_file(input)));
    if (check_only) {
        emit(Json{{"valid", true}, {"issues", Json::array()}}, output);
        return 0;
    }
    Json levels = Json::array();
    for (std::size_t n = 2; n <= c.top(); ++n)
        levels.push_back(Json{{"n", n}, {"H", group_to_json(homology(c, n).group)}});
    emit(levels, output);
    return 0;
}

int run_gamma(const std::string& input, const std::string& output, bool oracle,
              bool check_only) {
    FgAbGroup a = group_from_json(parse_json(read_file(input)));
    if (check_only) {
        emit(Json{{"valid", true}, {"issues", Json::array()}}, output);
        return 0;
    }
    GammaResult g = gamma_group(a);
    if (oracle) {
        FgAbGroup independent = gamma_oracle(a); // refuses infinite or large inputs
        if (!(independent == g.group))
            throw IntegrityError("gamma oracle disagrees with the structured computation");
    }
    emit(group_to_json(g.group), output);
    return 0;
}

int run_ext(const std::string& a_path, const std::string& b_path, const std::string& output,
            bool check_only) {
    FgAbGroup a = group_from_json(parse_json(read_file(a_path)));
    FgAbGroup b = group_from_json(parse_json(read_file(b_path)));
    if (check_only) {
        emit(Json{{"valid", true}, {"issues", Json::array()}}, output);
        return 0;
    }
    emit(group_to_json(ext1(a, b).group), output);
    return 0;
}

int run_wes(const std::string& input, const std::string& output, bool check_only) {
    GammaSystem s = system_from_json(parse_json(read_file(input)));
    ValidationReport rep = validate_system(s);
    if (check_only) {
        emit(validation_to_json(rep), output);
        return rep.ok() ? 0 : 2;
    }
    WhiteheadSequence w = derive_wes(s);
    Json levels = Json::array();
    for (std::size_t n = 2; n <= w.top; ++n) {
        const WesLevel& lv = w.level(n);
        levels.push_back(Json{{"n", n},
                              {"H", group_to_json(lv.H)},
                              {"Gamma", group_to_json(lv.Gamma)},
                              {"b_next", hom_to_json(lv.b_next)},
                              {"coker_b", group_to_json(lv.coker_b.group)},
                              {"ker_b", group_to_json(lv.ker_b.group)},
                              {"pi_class", ext_class_to_json(lv.pi_class)}});
    }
    emit(Json{{"top", w.top}, {"levels", std::move(levels)}}, output);
    return 0;
}

int run_charext(const std::string& input, std::size_t degree, std::uint64_t seed,
                const std::string& output, bool check_only) {
    GammaSystem s = system_from_json(parse_json(read_file(input)));
    ValidationReport rep = validate_system(s);
    if (check_only) {
        emit(validation_to_json(rep), output);
        return rep.ok() ? 0 : 2;
    }
    if (!rep.ok())
        throw ValidationError("gamma system fails validation; run with --check-only for details");
    ExtClass c = characteristic_extension(s, degree, choose_splitting(s, degree, seed));
    emit(Json{{"n", degree}, {"seed", seed}, {"class", ext_class_to_json(c)}}, output);
    return 0;
}

int run_check_strong(const std::string& x_path, const std::string& y_path,
                     const std::string& ladder_path, const std::string& output,
                     bool check_only) {
    GammaSystem sx = system_from_json(parse_json(read_file(x_path)));
    GammaSystem sy = system_from_json(parse_json(read_file(y_path)));
    Ladder l = ladder_from_json(parse_json(read_file(ladder_path)));
    if (check_only) {
        ValidationReport rx = validate_system(sx);
        ValidationReport ry = validate_system(sy);
        emit(Json{{"x", validation_to_json(rx)}, {"y", validation_to_json(ry)}}, output);
        return rx.ok() && ry.ok() ? 0 : 2;
    }
    WhiteheadSequence wx = derive_wes(sx);
    WhiteheadSequence wy = derive_wes(sy);
    StrongResult res = check_strong(wx, wy, l);
    Json witnesses = Json::array();
    for (const auto& w : res.witnesses)
        witnesses.push_back(Json{{"degree", w.degree},
                                 {"phi_x", ext_class_to_json(w.phi_x)},
                                 {"phi_y", ext_class_to_json(w.phi_y)}});
    emit(Json{{"ladder", ladder_report_to_json(res.ladder)},
              {"strong", res.strong},
              {"detail", res.detail},
              {"witnesses", std::move(witnesses)}},
         output);
    return res.strong ? 0 : 1;
}

const char* kCertificateNote =
    "algebraic equivalence certificate: the witness satisfies the quadratic-functor "
    "compatibility and extension-class conditions; no cellular map is constructed";

int run_classify4(const std::string& x_path, const std::string& y_path, long bound,
                  const std::string& output, bool check_only) {
    FourDimSystem x = fourdim_from_json(parse_json(read_file(x_path)));
    FourDimSystem y = fourdim_from_json(parse_json(read_file(y_path)));
    if (check_only) {
        emit(Json{{"valid", true}, {"issues", Json::array()}}, output);
        return 0;
    }
    Classify4Result res = classify4(x, y, Int(bound));
    const char* verdict = nullptr;
    switch (res.verdict) {
        case Classify4Result::Verdict::equivalent:
            verdict = "equivalent";
            break;
        case Classify4Result::Verdict::not_equivalent:
            verdict = "not_equivalent";
            break;
        case Classify4Result::Verdict::no_witness_within_bound:
            verdict = "no_witness_within_bound";
            break;
    }
    Json out{{"verdict", verdict}, {"reason", res.reason}, {"note", kCertificateNote}};
    if (res.witness)
        out["witness"] = Json{{"f2", hom_to_json(res.witness->f2)},
                              {"f3", hom_to_json(res.witness->f3)},
                              {"f4", hom_to_json(res.witness->f4)}};
    emit(out, output);
    return res.verdict == Classify4Result::Verdict::equivalent ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact invariants of the Whitehead certain exact sequence"};
    app.require_subcommand(1);

    std::string output;
    bool check_only = false;
    std::uint64_t seed = 0;
    long bound = 3;
    bool oracle = false;

    std::string in1, in2, in3;
    std::size_t degree = 2;

    auto* snf = app.add_subcommand("snf", "Smith normal form U*M*V = D of a matrix");
    snf->add_option("matrix", in1, "matrix JSON file")->required();

    auto* hom = app.add_subcommand("homology", "integral homology of a chain complex");
    hom->add_option("complex", in1, "chain complex JSON file")->required();

    auto* gam = app.add_subcommand("gamma", "the universal quadratic functor of a group");
    gam->add_option("group", in1, "group JSON file")->required();
    gam->add_flag("--oracle", oracle, "cross-check against the presentation oracle");

    auto* ext = app.add_subcommand("ext", "Ext^1(A, B) of two groups");
    ext->add_option("A", in1, "group JSON file")->required();
    ext->add_option("B", in2, "group JSON file")->required();

    auto* wes = app.add_subcommand("wes", "derive the Whitehead sequence of a gamma system");
    wes->add_option("system", in1, "gamma system JSON file")->required();

    auto* charext =
        app.add_subcommand("charext", "characteristic n-extension class of a gamma system");
    charext->add_option("system", in1, "gamma system JSON file")->required();
    charext->add_option("n", degree, "degree")->required();
    charext->add_option("--seed", seed, "splitting seed (0 = canonical)");

    auto* strong = app.add_subcommand("check-strong",
                                      "decide whether a ladder of maps is a strong morphism");
    strong->add_option("X", in1, "gamma system JSON file")->required();
    strong->add_option("Y", in2, "gamma system JSON file")->required();
    strong->add_option("ladder", in3, "ladder JSON file")->required();

    auto* cls =
        app.add_subcommand("classify4", "decide equivalence of two 4-dimensional systems");
    cls->add_option("X", in1, "fourdim system JSON file")->required();
    cls->add_option("Y", in2, "fourdim system JSON file")->required();
    cls->add_option("--bound", bound, "free-part search bound (default 3)");

    for (auto* sub : {snf, hom, gam, ext, wes, charext, strong, cls}) {
        sub->add_option("--output", output, "write the result to a file instead of stdout");
        sub->add_flag("--check-only", check_only, "validate inputs without computing");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (snf->parsed()) return run_snf(in1, output, check_only);
        if (hom->parsed()) return run_homology(in1, output, check_only);
        if (gam->parsed()) return run_gamma(in1, output, oracle, check_only);
        if (ext->parsed()) return run_ext(in1, in2, output, check_only);
        if (wes->parsed()) return run_wes(in1, output, check_only);
        if (charext->parsed()) return run_charext(in1, degree, seed, output, check_only);
        if (strong->parsed()) return run_check_strong(in1, in2, in3, output, check_only);
        if (cls->parsed()) return run_classify4(in1, in2, bound, output, check_only);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IntegrityError& e) {
        std::cerr << "integrity error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
