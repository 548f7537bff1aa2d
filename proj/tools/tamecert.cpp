#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tamecert/suites.hpp"

using namespace tamecert;

namespace {

constexpr int exit_invalid = 3;

struct Common {
    std::string field = "q";
    std::uint64_t seed = 0;
    std::optional<std::size_t> budget;
    bool timing = false;

    TermBudget term_budget() const {
        TermBudget b;
        if (budget) {
            b.max_terms = *budget;
        } else if (const char* env = std::getenv("TAMECERT_BUDGET")) {
            try {
                b.max_terms = std::stoull(env);
            } catch (const std::exception&) {
                throw PreconditionError(std::string("bad TAMECERT_BUDGET value '") + env + "'");
            }
        }
        return b;
    }
    FieldSpec spec() const { return FieldSpec::parse(field); }
};

void add_common(CLI::App* cmd, Common& c, bool seeded) {
    cmd->add_option("--field", c.field, "coefficient field: q or fp=PRIME")->capture_default_str();
    cmd->add_option("--budget", c.budget, "maximum terms in any intermediate polynomial (default $TAMECERT_BUDGET)");
    if (seeded) {
        cmd->add_option("--seed", c.seed, "seed for sampling")->capture_default_str();
        cmd->add_flag("--timing", c.timing, "record wall time in reports");
    }
}

enum class Kind { poly, map, word };

Kind detect_kind(const std::string& text, const std::string& forced) {
    if (forced == "poly") return Kind::poly;
    if (forced == "map") return Kind::map;
    if (forced == "word") return Kind::word;
    if (forced != "auto") throw PreconditionError("unknown kind '" + forced + "'");
    if (text.find(';') != std::string::npos) return Kind::word;
    for (const char* id : {"pi", "beta", "theta", "id"})
        if (text.find(id) != std::string::npos) return Kind::word;
    int depth = 0;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 1) return Kind::map;
    }
    return Kind::poly;
}

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::poly: return "polynomial";
        case Kind::map: return "map";
        case Kind::word: return "word";
    }
    return "?";
}

void emit(const Json& j) { std::cout << j.dump() << '\n'; }

template <class Field>
Endomorphism<Field> as_endomorphism(const std::string& text, const Field& f, const TermBudget& b) {
    return to_endomorphism(parse_word(text, f, b), b);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact polynomial automorphism toolkit for tame-but-not-co-tame certificates"};
    app.require_subcommand(1);
    Common common;

    std::string text, text2, kind = "auto";
    auto* parse_cmd = app.add_subcommand("parse", "parse an expression and report its canonical form as JSON");
    parse_cmd->add_option("text", text, "polynomial, map, or word")->required();
    parse_cmd->add_option("--as", kind, "auto, poly, map, or word")->capture_default_str();
    add_common(parse_cmd, common, false);

    auto* print_cmd = app.add_subcommand("print", "print the canonical form of an expression");
    print_cmd->add_option("text", text)->required();
    print_cmd->add_option("--as", kind)->capture_default_str();
    print_cmd->add_flag("--expand", "expand words into a single map");
    add_common(print_cmd, common, false);

    auto* compose_cmd = app.add_subcommand("compose", "eager composite phi psi, applying phi first");
    compose_cmd->add_option("phi", text)->required();
    compose_cmd->add_option("psi", text2)->required();
    add_common(compose_cmd, common, false);

    auto* apply_cmd = app.add_subcommand("apply", "the image (P)w of a polynomial under a word");
    apply_cmd->add_option("poly", text)->required();
    apply_cmd->add_option("word", text2)->required();
    add_common(apply_cmd, common, false);

    std::string weights;
    auto* deg_cmd = app.add_subcommand("deg", "weighted degree of a polynomial");
    deg_cmd->add_option("poly", text)->required();
    deg_cmd->add_option("--weights", weights, "a,b,c")->required();
    add_common(deg_cmd, common, false);

    int order = 1;
    auto* ldeg_cmd = app.add_subcommand("ldeg", "cyclic lexicographic degree of a polynomial");
    ldeg_cmd->add_option("poly", text)->required();
    ldeg_cmd->add_option("--order", order, "1, 2, or 3")->check(CLI::Range(1, 3))->capture_default_str();
    add_common(ldeg_cmd, common, false);

    std::string region_kind = "P";
    std::uint64_t m = 1, n = 0;
    bool with_points = false;
    auto* region_cmd = app.add_subcommand("region", "size, vertices and points of P_{m,n} or Q_{m,n}");
    region_cmd->add_option("--kind", region_kind, "P or Q")->capture_default_str();
    region_cmd->add_option("--m", m)->capture_default_str();
    region_cmd->add_option("--n", n)->capture_default_str();
    region_cmd->add_flag("--points", with_points, "list every lattice point");
    add_common(region_cmd, common, false);

    std::string check = "all";
    std::optional<std::uint64_t> vm, vn, samples;
    unsigned N = 3;
    unsigned threads = 0;
    auto* verify_cmd = app.add_subcommand("verify", "run verification suites, one JSON report per line");
    verify_cmd->add_option("--check", check, "degrees, regions, lemma-max, qtop, strata, theorem, certify, "
                                              "centralizer, or all")
        ->capture_default_str();
    verify_cmd->add_option("--m", vm);
    verify_cmd->add_option("--n", vn);
    verify_cmd->add_option("--samples", samples);
    verify_cmd->add_option("--N", N)->capture_default_str();
    verify_cmd->add_option("--threads", threads, "worker threads (0 = all cores)")->capture_default_str();
    add_common(verify_cmd, common, true);

    std::string mode = "stepwise";
    auto* certify_cmd = app.add_subcommand("certify", "certificate that an alternating word a0 ; theta ; a1 ... is "
                                                      "not affine");
    certify_cmd->add_option("word", text)->required();
    certify_cmd->add_option("--N", N)->capture_default_str();
    certify_cmd->add_option("--mode", mode, "eager or stepwise")->capture_default_str();
    add_common(certify_cmd, common, true);

    auto* centralizer_cmd = app.add_subcommand("centralizer", "affine maps commuting with theta");
    centralizer_cmd->add_option("--samples", samples, "sampled non-central maps");
    centralizer_cmd->add_option("--N", N)->capture_default_str();
    add_common(centralizer_cmd, common, true);

    CLI11_PARSE(app, argc, argv);

    try {
        const auto budget = common.term_budget();
        const auto spec = common.spec();

        if (*verify_cmd || *centralizer_cmd) {
            SuiteOptions o;
            o.field = spec;
            o.seed = common.seed;
            o.budget = budget;
            o.m = vm;
            o.n = vn;
            o.samples = samples;
            o.N = N;
            o.timing = common.timing;
            o.threads = threads;
            auto reports = run_suite(*verify_cmd ? check : "centralizer", o);
            for (const auto& r : reports) emit(r.to_json());
            return exit_code(reports);
        }

        if (*region_cmd) {
            RegionKind k = region_kind == "P" ? RegionKind::P
                           : region_kind == "Q"
                               ? RegionKind::Q
                               : throw PreconditionError("region kind must be P or Q");
            RegionParams p(m, n);
            Json j;
            j["kind"] = region_kind;
            j["m"] = m;
            j["n"] = n;
            j["size"] = region_size(k, p);
            Json verts = Json::array();
            for (const auto& v : region_vertices(k, p)) verts.push_back({v.i, v.j, v.k});
            j["vertices"] = verts;
            Json corners = Json::array();
            for (const auto& v : star_corners(k, p)) corners.push_back({v.i, v.j, v.k});
            j["star_corners"] = corners;
            if (with_points) {
                Json pts = Json::array();
                for (const auto& v : enumerate_region(k, p, budget.max_terms)) pts.push_back({v.i, v.j, v.k});
                j["points"] = pts;
            }
            emit(j);
            return 0;
        }

        return with_field(spec, [&](const auto& f) -> int {
            using F = std::decay_t<decltype(f)>;
            if (*parse_cmd || *print_cmd) {
                Kind k = detect_kind(text, kind);
                std::string canonical;
                Json j;
                j["kind"] = kind_name(k);
                j["field"] = f.name();
                if (k == Kind::poly) {
                    auto p = parse_polynomial(text, f, budget);
                    canonical = to_string(p);
                    j["terms"] = p.size();
                } else if (k == Kind::map) {
                    auto e = parse_map(text, f, budget);
                    canonical = to_string(e);
                    j["affine"] = e.as_affine().has_value();
                    if (auto a = e.as_affine()) j["stratum"] = to_string(stratum_classify(*a).stratum);
                } else {
                    auto w = parse_word(text, f, budget);
                    canonical = print_cmd->count("--expand") ? to_string(to_endomorphism(w, budget)) : to_string(w);
                    j["atoms"] = w.size();
                }
                if (*print_cmd) {
                    std::cout << canonical << '\n';
                } else {
                    j["canonical"] = canonical;
                    emit(j);
                }
                return 0;
            }
            if (*compose_cmd) {
                auto phi = as_endomorphism(text, f, budget);
                auto psi = as_endomorphism(text2, f, budget);
                std::cout << to_string(compose(phi, psi, budget)) << '\n';
                return 0;
            }
            if (*apply_cmd) {
                auto p = parse_polynomial(text, f, budget);
                auto w = parse_word(text2, f, budget);
                std::cout << to_string(apply_word(p, w, budget)) << '\n';
                return 0;
            }
            if (*deg_cmd || *ldeg_cmd) {
                auto p = parse_polynomial(text, f, budget);
                DegreeValue d = DegreeValue::weighted(0);
                if (*deg_cmd) {
                    unsigned a = 0, b = 0, c = 0;
                    char s1 = 0, s2 = 0;
                    std::istringstream in(weights);
                    if (!(in >> a >> s1 >> b >> s2 >> c) || s1 != ',' || s2 != ',' || !in.eof())
                        throw PreconditionError("weights must be a,b,c");
                    d = weighted_deg(p, WeightVector(a, b, c));
                } else {
                    d = ldeg(p, order);
                }
                std::cout << d.to_string() << '\n';
                return 0;
            }
            if (*certify_cmd) {
                auto w = parse_alternating_word<F>(text, f, N);
                Stopwatch sw;
                auto rep = suites::certificate_report(w, parse_certificate_mode(mode), common.seed, budget);
                if (common.timing) rep.wall_time_ms = sw.elapsed_ms();
                emit(rep.to_json());
                return exit_code({rep});
            }
            return exit_invalid;
        });
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return exit_invalid;
    } catch (const BudgetExceeded& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_invalid;
    }
}
