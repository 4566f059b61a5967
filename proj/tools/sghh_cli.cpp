#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "sghh/cohomology.hpp"
#include "sghh/errors.hpp"
#include "sghh/io.hpp"
#include "sghh/structure_ops.hpp"
#include "sghh/verify.hpp"

using namespace sghh;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFail = 1, kParse = 2, kResource = 3, kFrobenius = 4, kOperand = 5 };

// exit-code carrier so the stage that failed decides the code
struct CliError : std::runtime_error {
    CliError(int c, const std::string& m) : std::runtime_error(m), code(c) {}
    int code;
};

struct Common {
    std::string algebra, family, field, degrees, out = "text", cache_dir;
    int pmax = -1, confirm_span = 2;
    std::uint64_t seed = 1;
};

void add_common(CLI::App* c, Common& o) {
    c->add_option("--algebra", o.algebra, "algebra JSON file");
    c->add_option("--family", o.family, "built-in family: dual | truncated_poly:N | two_loop | rsz:V:a-b,c-d");
    c->add_option("--field", o.field, "field override: a prime or Q");
    c->add_option("--degrees", o.degrees, "degree range lo..hi");
    c->add_option("--pmax", o.pmax, "highest ladder level")->check(CLI::Range(0, 64));
    c->add_option("--confirm-span", o.confirm_span, "bijective connecting maps required for a stabilized verdict")->check(CLI::Range(1, 16));
    c->add_option("--out", o.out, "json | text")->check(CLI::IsMember({"json", "text"}));
    c->add_option("--cache-dir", o.cache_dir, "window cache directory (default: $SGHH_CACHE_DIR)");
    c->add_option("--seed", o.seed, "random seed");
}

std::pair<int, int> parse_range(const std::string& s, std::pair<int, int> dflt) {
    if (s.empty()) return dflt;
    auto dots = s.find("..");
    if (dots == std::string::npos) throw CliError(kParse, "--degrees expects lo..hi, got '" + s + "'");
    try {
        std::size_t a = 0, b = 0;
        int lo = std::stoi(s.substr(0, dots), &a), hi = std::stoi(s.substr(dots + 2), &b);
        if (a != dots || b != s.size() - dots - 2 || lo > hi) throw std::invalid_argument("");
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw CliError(kParse, "--degrees expects lo..hi with lo <= hi, got '" + s + "'");
    }
}

struct Loaded {
    AlgebraPresentation pres;
    AlgebraPtr alg;
    std::string hash;  // content hash of the algebra source
    std::string name;
};

std::vector<Arrow> parse_arrows(const std::string& s) {
    std::vector<Arrow> r;
    std::stringstream ss(s);
    std::string tok;
    int k = 0;
    while (std::getline(ss, tok, ',')) {
        auto dash = tok.find('-');
        if (dash == std::string::npos) throw CliError(kParse, "arrow '" + tok + "' is not from-to");
        r.push_back({std::stoi(tok.substr(0, dash)), std::stoi(tok.substr(dash + 1)), "a" + std::to_string(k++)});
    }
    return r;
}

AlgebraPresentation family_presentation(const std::string& spec, const FieldSpec& F) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string t; std::getline(ss, t, ':');) parts.push_back(t);
    if (parts.empty()) throw CliError(kParse, "empty --family");
    try {
        if (parts[0] == "dual" || parts[0] == "truncated_poly") {
            int n = parts[0] == "dual" ? 2 : parts.size() == 2 ? std::stoi(parts[1]) : throw CliError(kParse, "truncated_poly:N");
            auto p = truncated_poly_presentation(n, F);
            p.trace = top_trace(n, F);
            return p;
        }
        if (parts[0] == "two_loop") return radical_square_zero_presentation(1, {{0, 0, "a"}, {0, 0, "b"}}, F);
        if (parts[0] == "rsz" && parts.size() == 3) return radical_square_zero_presentation(std::stoi(parts[1]), parse_arrows(parts[2]), F);
    } catch (const std::logic_error&) {
    }
    throw CliError(kParse, "unknown family '" + spec + "' (dual | truncated_poly:N | two_loop | rsz:V:a-b,c-d)");
}

Loaded load(const Common& o) {
    if (o.algebra.empty() == o.family.empty()) throw CliError(kParse, "give exactly one of --algebra or --family");
    Loaded L;
    try {
        if (!o.algebra.empty()) {
            std::ifstream in(o.algebra, std::ios::binary);
            if (!in) throw CliError(kParse, "cannot read " + o.algebra);
            std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            L.hash = sha256_hex(text);
            if (!o.field.empty()) {
                json j = json::parse(text, nullptr, false);
                if (!j.is_discarded() && j.is_object()) {
                    FieldSpec f = parse_field(o.field);
                    j["field"] = f.is_rational() ? json{{"kind", "rational"}} : json{{"kind", "prime"}, {"p", f.characteristic()}};
                    text = j.dump();
                }
            }
            L.pres = parse_algebra(text);
            L.name = o.algebra;
        } else {
            L.pres = family_presentation(o.family, parse_field(o.field.empty() ? "101" : o.field));
            L.hash = sha256_hex(algebra_to_json(L.pres).dump());
            L.name = o.family;
        }
        L.alg = Algebra::create(L.pres);
    } catch (const ParseError& e) {
        throw CliError(kParse, e.what());
    } catch (const InvalidParameter& e) {
        throw CliError(kParse, std::string("invalid algebra: ") + e.what());
    } catch (const FieldMismatch& e) {
        throw CliError(kParse, std::string("invalid algebra: ") + e.what());
    }
    L.name += " over " + L.alg->field().name();
    return L;
}

std::string cache_dir(const Common& o) {
    if (!o.cache_dir.empty()) return o.cache_dir;
    const char* env = std::getenv("SGHH_CACHE_DIR");
    return env ? env : "";
}

SgLadder ladder(const Common& o, const Loaded& L, int lo, int hi, int pmax) {
    std::string dir = cache_dir(o);
    if (dir.empty()) return build_sg_ladder(L.alg, lo, hi, pmax);
    WindowCache cache(dir);
    std::string key = sha256_hex(L.hash + "|ladder|" + std::to_string(lo) + "|" + std::to_string(hi) + "|" + std::to_string(pmax) + "|" +
                                 L.alg->field().name());
    if (auto hit = cache.load(key)) return ladder_from_json(*hit, L.alg);
    SgLadder l = build_sg_ladder(L.alg, lo, hi, pmax);
    cache.store(key, to_json(l));
    return l;
}

void emit(const Common& o, const json& j, const std::string& text) {
    if (o.out == "json") std::cout << j.dump(2) << "\n";
    else std::cout << text;
}

int cmd_hh(const Common& o) {
    auto L = load(o);
    auto [lo, hi] = parse_range(o.degrees, {0, 4});
    if (lo < 0) throw CliError(kParse, "hh degrees must be >= 0");
    auto r = h_dims(ladder(o, L, lo, hi, 0));
    emit(o, to_json(r), to_text(r));
    return kOk;
}

int cmd_hhsg(const Common& o) {
    auto L = load(o);
    auto [lo, hi] = parse_range(o.degrees, {-3, 3});
    int pmax = o.pmax < 0 ? 6 : o.pmax;
    auto r = sg_dims(ladder(o, L, lo, hi, pmax), o.confirm_span);
    emit(o, to_json(r), to_text(r));
    return kOk;
}

int cmd_th(const Common& o, bool symmetric, bool compare) {
    auto L = load(o);
    auto [lo, hi] = parse_range(o.degrees, {-4, 4});
    if (symmetric) L.alg->require_symmetric();
    auto* fd = L.alg->frobenius();
    DStar ds(L.alg, fd && fd->symmetric ? DStarForm::Symmetric : DStarForm::General, std::min(lo, -1) - 1, std::max(hi, 0) + 1);
    auto r = th_dims(ds, lo, hi);
    if (compare) {
        int pmax = o.pmax < 0 ? std::max(6, -lo + 3) : o.pmax;
        compare_iota(r, ds, sg_dims(ladder(o, L, lo, hi, pmax), o.confirm_span));
    }
    emit(o, to_json(r), to_text(r));
    return kOk;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError(kOperand, "cannot read operand " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw CliError(kOperand, "operand " + path + " is not valid JSON");
    return j;
}

Cochain cochain_operand(const std::string& src, const AlgebraPtr& alg) {
    if (src == "mu") return mu_bar(alg);
    if (src == "unit") return constant_cochain(alg, alg->basis(0));
    return cochain_from_json(read_json_file(src), alg);
}

int cmd_ops(const Common& o, const std::string& op, const std::vector<std::string>& xs, bool check_delta) {
    auto L = load(o);
    auto [lo, hi] = parse_range(o.degrees, {-8, 8});
    auto need = [&](std::size_t n) {
        if (xs.size() < n) throw CliError(kOperand, op + " needs " + std::to_string(n) + " operand(s) via --x");
    };
    json result;
    std::string text;
    try {
        if (check_delta) {
            need(1);
            auto f = cochain_operand(xs[0], L.alg);
            bool eq = cochain_delta(f) == bracket(mu_bar(L.alg), f);
            std::cout << (eq ? "equal" : "differ") << "\n";
            return kOk;
        }
        const std::set<std::string> cochain_ops{"cup", "circle", "bracket", "brace", "delta", "theta", "bv_delta"};
        const std::set<std::string> dstar_ops{"star", "bullet", "dstar_bracket", "tilde_delta", "d", "pairing"};
        if (cochain_ops.count(op)) {
            std::vector<Cochain> c;
            for (const auto& x : xs) c.push_back(cochain_operand(x, L.alg));
            Cochain r;
            if (op == "cup") need(2), r = cup(c[0], c[1]);
            else if (op == "circle") need(2), r = circle(c[0], c[1]);
            else if (op == "bracket") need(2), r = bracket(c[0], c[1]);
            else if (op == "brace") need(2), r = brace_sg(c[0], std::vector<Cochain>(c.begin() + 1, c.end()));
            else if (op == "delta") need(1), r = cochain_delta(c[0]);
            else if (op == "theta") need(1), r = theta(c[0]);
            else need(1), r = bv_delta(c[0]);
            result = to_json(r);
        } else if (dstar_ops.count(op)) {
            auto* fd = L.alg->frobenius();
            DStar ds(L.alg, fd && fd->symmetric ? DStarForm::Symmetric : DStarForm::General, lo, hi);
            std::vector<DElem> d;
            for (const auto& x : xs) d.push_back(delem_from_json(read_json_file(x), ds));
            if (op == "star") need(2), result = to_json(star(ds, d[0], d[1]));
            else if (op == "bullet") need(2), result = to_json(bullet(ds, d[0], d[1]));
            else if (op == "dstar_bracket") need(2), result = to_json(dstar_bracket(ds, d[0], d[1]));
            else if (op == "tilde_delta") need(1), result = to_json(tilde_delta(ds, d[0]));
            else if (op == "d") need(1), result = to_json(ds.apply_differential(d[0]));
            else need(2), result = {{"kind", "scalar"}, {"value", dstar_pairing(ds, d[0], d[1]).str()}};
            if (result.contains("degree")) ds.require_in_window(result["degree"].get<int>());
        } else if (op == "B") {
            need(1);
            result = to_json(connes_B(chain_from_json(read_json_file(xs[0]), L.alg)));
        } else {
            throw CliError(kOperand, "unknown op '" + op + "'");
        }
    } catch (const BasisMismatch& e) {
        throw CliError(kOperand, e.what());
    } catch (const DegreeOutOfWindow& e) {
        throw CliError(kOperand, e.what());
    } catch (const IndexOutOfRange& e) {
        throw CliError(kOperand, e.what());
    } catch (const InvalidParameter& e) {
        throw CliError(kOperand, e.what());
    } catch (const FeatureDisabled& e) {
        throw CliError(kOperand, e.what());
    } catch (const ParseError& e) {
        throw CliError(kOperand, e.what());
    }
    if (o.out == "json") {
        std::cout << result.dump(2) << "\n";
    } else {
        std::cout << result.value("kind", "") << (result.contains("degree") ? " degree " + std::to_string(result["degree"].get<int>()) : "");
        if (result.contains("arity")) std::cout << " arity " << result["arity"] << " form_degree " << result["form_degree"];
        if (result.contains("n")) std::cout << " n " << result["n"];
        std::cout << "\n";
        if (result.contains("value")) std::cout << "  " << result["value"].get<std::string>() << "\n";
        if (result.contains("entries"))
            for (const auto& e : result["entries"]) {
                std::cout << " ";
                for (const auto& x : e) std::cout << " " << (x.is_string() ? x.get<std::string>() : x.dump());
                std::cout << "\n";
            }
    }
    return kOk;
}

struct VerifyOpts {
    std::string suite = "all", caps, koszul, delta_exp;
    int samples = 50;
    bool arbiter = false;
};

int cmd_verify(const Common& o, const VerifyOpts& v) {
    auto L = load(o);
    auto [lo, hi] = parse_range(o.degrees, {-3, 3});
    SuiteSpec base;
    base.alg = L.alg;
    base.algebra_name = L.name;
    base.samples = v.samples;
    base.seed = o.seed;
    base.deg_lo = lo;
    base.deg_hi = hi;
    if (!v.caps.empty()) {
        auto comma = v.caps.find(',');
        try {
            if (comma == std::string::npos) throw std::invalid_argument("");
            base.max_arity = std::stoi(v.caps.substr(0, comma));
            base.max_form = std::stoi(v.caps.substr(comma + 1));
        } catch (const std::logic_error&) {
            throw CliError(kParse, "--caps expects arity,form e.g. 3,2");
        }
    }
    std::vector<std::string> suites;
    if (v.suite == "all") {
        auto* fd = L.alg->frobenius();
        for (const auto& s : suite_names()) {
            bool sym = s == "star" || s == "dstar" || s == "bv";
            if (sym && !(fd && fd->symmetric)) continue;
            if (s == "comparison" && !fd) continue;
            suites.push_back(s);
        }
    } else {
        suites.push_back(v.suite);
    }
    auto battery = [&] {
        std::vector<SuiteResult> r;
        for (const auto& s : suites) {
            SuiteSpec sp = base;
            sp.suite = s;
            r.push_back(run_suite(sp));
        }
        return r;
    };
    if (v.arbiter) {
        auto a = arbitrate(battery);
        json j = to_json(a);
        if (o.out == "json") {
            std::cout << j.dump(2) << "\n";
        } else {
            for (const auto& s : a.settings) {
                std::cout << "koszul " << (s.convention.koszul ? "on " : "off") << "  delta exponent "
                          << (s.convention.delta_exp_m_minus_1 ? "m-1" : "m  ") << "  " << (s.passed ? "PASS" : "FAIL") << "  ("
                          << s.failing.size() << " failing)\n";
                for (const auto& f : s.failing) std::cout << "    " << f << "\n";
            }
            std::cout << "verdict: " << a.verdict << "\n";
        }
        return a.verdict == "unique" ? kOk : kFail;
    }
    SignConvention conv = sign_convention();
    if (!v.koszul.empty()) conv.koszul = v.koszul == "on";
    if (!v.delta_exp.empty()) conv.delta_exp_m_minus_1 = v.delta_exp == "m-1";
    ScopedSignConvention scope(conv);
    auto results = battery();
    bool ok = true;
    json j = json::array();
    std::string text;
    for (const auto& r : results) {
        ok = ok && r.passed();
        j.push_back(to_json(r));
        text += to_text(r);
    }
    emit(o, o.out == "json" ? json{{"passed", ok}, {"suites", j}} : json{}, text);
    return ok ? kOk : kFail;
}

int cmd_families(const Common& o, const std::string& emit_name) {
    if (emit_name.empty()) {
        json j = json::array({{{"name", "dual"}, {"description", "k[x]/x^2 with tr(x) = 1"}},
                              {{"name", "truncated_poly:N"}, {"description", "k[x]/x^N with tr(x^(N-1)) = 1"}},
                              {{"name", "two_loop"}, {"description", "radical square zero algebra of one vertex with two loops"}},
                              {{"name", "rsz:V:a-b,c-d"}, {"description", "radical square zero algebra of a quiver"}}});
        std::string text;
        for (const auto& f : j) text += f["name"].get<std::string>() + "  " + f["description"].get<std::string>() + "\n";
        emit(o, j, text);
        return kOk;
    }
    auto p = family_presentation(emit_name, parse_field(o.field.empty() ? "101" : o.field));
    std::cout << algebra_to_json(p).dump(2) << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sghh: Hochschild, singular Hochschild and Tate-Hochschild cohomology"};
    app.require_subcommand(1);
    Common o;
    auto* hh = app.add_subcommand("hh", "Hochschild cohomology dimensions");
    auto* hhsg = app.add_subcommand("hhsg", "singular Hochschild ladder, ranks and verdicts");
    auto* th = app.add_subcommand("th", "Tate-Hochschild cohomology of D*");
    auto* ops = app.add_subcommand("ops", "evaluate one operation on operand files");
    auto* ver = app.add_subcommand("verify", "run identity suites");
    auto* fam = app.add_subcommand("families", "list built-in families or emit one as an algebra file");
    for (auto* c : {hh, hhsg, th, ops, ver, fam}) add_common(c, o);

    bool symmetric = false, compare = false, check_delta = false;
    th->add_flag("--symmetric", symmetric, "require a symmetric trace");
    th->add_flag("--compare", compare, "append the iota comparison against hhsg");
    std::string op;
    std::vector<std::string> xs;
    ops->add_option("op", op, "cup | circle | bracket | brace | delta | theta | bv_delta | star | bullet | dstar_bracket | tilde_delta | d | pairing | B");
    ops->add_option("--x", xs, "operand file (repeat in order); 'mu' and 'unit' name built-in cochains");
    ops->add_flag("--check-delta", check_delta, "compare delta f with [mu-bar, f]");
    VerifyOpts vo;
    std::vector<std::string> suite_choices = suite_names();
    suite_choices.push_back("all");
    ver->add_option("--suite", vo.suite, "suite name or all")->check(CLI::IsMember(suite_choices));
    ver->add_option("--samples", vo.samples, "samples per randomized check")->check(CLI::Range(1, 100000));
    ver->add_option("--caps", vo.caps, "operand caps arity,form");
    ver->add_option("--koszul", vo.koszul, "on | off")->check(CLI::IsMember({"on", "off"}));
    ver->add_option("--delta-exp", vo.delta_exp, "m-1 | m")->check(CLI::IsMember({"m-1", "m"}));
    ver->add_flag("--arbiter", vo.arbiter, "run under all four sign settings and report which pass");
    std::string emit_name;
    fam->add_option("--emit", emit_name, "family to print as an algebra file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kParse;
    }
    try {
        if (*hh) return cmd_hh(o);
        if (*hhsg) return cmd_hhsg(o);
        if (*th) return cmd_th(o, symmetric, compare);
        if (*ops) return cmd_ops(o, op, xs, check_delta);
        if (*ver) return cmd_verify(o, vo);
        if (*fam) return cmd_families(o, emit_name);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code;
    } catch (const ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kResource;
    } catch (const MissingFrobeniusData& e) {
        std::cerr << "missing Frobenius data: " << e.what() << "\n";
        return kFrobenius;
    } catch (const NotSymmetric& e) {
        std::cerr << "not symmetric: " << e.what() << "\n";
        return kFrobenius;
    } catch (const InvalidParameter& e) {
        std::cerr << "invalid parameter: " << e.what() << "\n";
        return kParse;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kOk;
}
