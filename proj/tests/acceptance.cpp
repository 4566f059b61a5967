// Acceptance run: prints "criterion N: PASS|FAIL" for each requested criterion.
// usage: sghh_acceptance [N ...]   (default: all six)
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sghh/cohomology.hpp"
#include "sghh/complexes.hpp"
#include "sghh/verify.hpp"

using namespace sghh;

namespace {

struct Named {
    std::string name;
    AlgebraPtr alg;
};

FieldSpec F101() { return FieldSpec::prime(101); }

AlgebraPtr dual_numbers(const FieldSpec& f) { return truncated_poly(2, f)->with_trace(top_trace(2, f)); }
AlgebraPtr cube(const FieldSpec& f) { return truncated_poly(3, f)->with_trace(top_trace(3, f)); }
AlgebraPtr two_loop(const FieldSpec& f) { return radical_square_zero(1, {{0, 0, "a"}, {0, 0, "b"}}, f); }

std::vector<Named> families(const FieldSpec& f) {
    return {{"dual", dual_numbers(f)}, {"cube", cube(f)}, {"two_loop", two_loop(f)}};
}

// frozen dense-oracle values
const std::vector<std::size_t> kTHLoop{16, 8, 4, 3, 4, 6, 12};  // degrees -3..3

double seconds_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

// ---- criterion 1: squares vanish on every built window ----

SuiteResult squares_zero() {
    SuiteResult r;
    r.suite = "squares";
    r.algebra = "all";
    auto record = [&](const std::string& name, bool ok) {
        CheckResult* c = nullptr;
        for (auto& x : r.checks)
            if (x.name == name) c = &x;
        if (!c) {
            r.checks.push_back(CheckResult{"squares", name, 0, 0, 0, CheckOutcome::Pass, std::nullopt});
            c = &r.checks.back();
        }
        ++c->samples;
        if (ok) ++c->passed;
        else c->outcome = CheckOutcome::Fail;
    };
    for (auto f : {F101(), FieldSpec::rational()})
        for (const auto& [name, A] : families(f)) {
            std::string tag = name + "/" + f.name();
            // cochains of arity <= 4 with values in Omega^p, p <= 3
            for (int p = 0; p <= 3; ++p)
                for (int m = 0; m + 1 <= 4; ++m)
                    record("delta_squared " + tag, (delta_matrix(A, m + 1, p) * delta_matrix(A, m, p)).is_zero());
            for (auto co : {Chain::Coeff::A, Chain::Coeff::AA})
                for (int n = 2; n <= 4; ++n) record("b_squared " + tag, (b_matrix(A, co, n - 1) * b_matrix(A, co, n)).is_zero());
            std::vector<DStarForm> forms{DStarForm::General};
            if (A->frobenius() && A->frobenius()->symmetric) forms.push_back(DStarForm::Symmetric);
            for (auto form : forms) {
                DStar ds(A, form, -5, 5);
                for (int i = -5; i <= 3; ++i)
                    record("dstar_squared " + tag, (ds.differential(i + 1) * ds.differential(i)).is_zero());
            }
        }
    return r;
}

// ---- criterion 2: chain-level identities ----

std::vector<SuiteResult> identities() {
    const std::vector<std::pair<std::string, std::vector<std::string>>> picks{
        {"theta", {"theta_commutes_with_delta"}},
        {"dg", {"cup_leibniz"}},
        {"gerstenhaber", {"homotopy_commutativity", "pre_lie_symmetry", "pre_lie_via_brace"}},
        {"binfinity", {"brace_well_defined", "higher_pre_jacobi", "distributivity", "higher_homotopy"}},
    };
    std::vector<SuiteResult> out;
    for (const auto& [name, A] : families(F101()))
        for (const auto& [suite, only] : picks) {
            SuiteSpec s;
            s.suite = suite;
            s.alg = A;
            s.algebra_name = name;
            s.samples = 50;
            s.only = only;
            out.push_back(run_suite(s));
        }
    return out;
}

// ---- criterion 5: BV on classes ----

std::vector<SuiteResult> bv_suite() {
    std::vector<SuiteResult> out;
    for (const auto& [name, A] : families(F101())) {
        if (name == "two_loop") continue;
        SuiteSpec s;
        s.suite = "bv";
        s.alg = A;
        s.algebra_name = name;
        s.deg_lo = -3;
        s.deg_hi = 3;
        out.push_back(run_suite(s));
    }
    return out;
}

bool all_pass(const std::vector<SuiteResult>& rs, std::size_t min_samples, std::ostream& log) {
    bool ok = true;
    for (const auto& r : rs)
        for (const auto& c : r.checks) {
            bool good = c.outcome == CheckOutcome::Pass && c.samples - c.skipped >= std::min(min_samples, c.samples);
            if (!good) ok = false;
            log << "  " << (good ? "ok  " : "FAIL") << "  " << r.suite << "/" << c.name << " on " << r.algebra << "  "
                << c.passed << "/" << (c.samples - c.skipped) << "\n";
        }
    return ok;
}

bool criterion1(std::ostream& log) {
    return all_pass({squares_zero()}, 1, log);
}

bool criterion2(std::ostream& log) {
    auto rs = identities();
    bool ok = all_pass(rs, 50, log);
    for (const auto& r : rs)
        for (const auto& c : r.checks)
            if (c.samples - c.skipped < 50) {
                log << "  too few evaluated samples: " << r.suite << "/" << c.name << "\n";
                ok = false;
            }
    return ok;
}

bool criterion3(std::ostream& log) {
    auto A = dual_numbers(F101());
    bool ok = true;
    auto hh = h_dims(build_sg_ladder(A, 0, 4, 0));
    for (const auto& row : hh.rows) {
        std::size_t want = row.degree == 0 ? 2 : 1;
        log << "  HH^" << row.degree << " = " << *row.dim << " (want " << want << ")\n";
        ok = ok && *row.dim == want;
    }
    DStar ds(A, DStarForm::General, -8, 8);
    auto th = th_dims(ds, -4, 4);
    for (const auto& row : th.rows) {
        log << "  TH^" << row.degree << " = " << *row.dim << " (want 1)\n";
        ok = ok && *row.dim == 1;
    }
    auto sg = sg_dims(build_sg_ladder(A, -4, 4, 8), 2);
    for (const auto& row : sg.rows) {
        log << "  HH_sg^" << row.degree << ": " << row.verdict;
        if (row.stabilized_at) log << " at level " << *row.stabilized_at << ", dim " << *row.dim;
        log << "\n";
        ok = ok && row.verdict == "stabilized";
    }
    compare_iota(th, ds, sg);
    log << "  iota quasi-iso: " << th.quasi_iso << "\n";
    return ok && th.quasi_iso == "yes";
}

bool criterion4(std::ostream& log) {
    auto A = two_loop(F101());
    auto sg = sg_dims(build_sg_ladder(A, 0, 0, 5), 2);
    const auto& row = sg.rows.at(0);
    bool ok = row.verdict == "not stabilized";
    log << "  dim HH^0(Omega^p), p = 0..5:";
    for (auto d : row.dims) log << " " << d;
    log << "\n  verdict: " << row.verdict << "\n";
    for (int p = 2; p <= 5; ++p) ok = ok && row.dims[p - 1] < row.dims[p];
    DStar ds(A, DStarForm::General, -6, 6);
    auto th = th_dims(ds, -3, 3);
    for (const auto& r : th.rows) {
        std::size_t want = kTHLoop[r.degree + 3];
        log << "  TH^" << r.degree << " = " << *r.dim << " (oracle " << want << ")\n";
        ok = ok && *r.dim == want;
    }
    return ok;
}

bool criterion5(std::ostream& log) {
    return all_pass(bv_suite(), 1, log);
}

bool criterion6(std::ostream& log) {
    auto battery = [] {
        std::vector<SuiteResult> rs{squares_zero()};
        for (auto& r : identities()) rs.push_back(std::move(r));
        for (auto& r : bv_suite()) rs.push_back(std::move(r));
        return rs;
    };
    auto res = arbitrate(battery);
    for (const auto& s : res.settings) {
        log << "  koszul=" << (s.convention.koszul ? "on " : "off") << " delta_exp="
            << (s.convention.delta_exp_m_minus_1 ? "m-1" : "m  ") << "  " << (s.passed ? "passes" : "fails");
        if (!s.failing.empty()) log << " (" << s.failing.size() << " failing)";
        log << "\n";
        for (const auto& f : s.failing) log << "      " << f << "\n";
    }
    log << "  verdict: " << res.verdict << "\n";
    if (res.verdict != "unique") log << "  no unique sign setting passes the battery\n";
    return res.verdict == "unique";
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<double, std::function<bool(std::ostream&)>>> crit{
        {60, criterion1}, {300, criterion2}, {30, criterion3}, {120, criterion4}, {0, criterion5}, {0, criterion6}};
    std::set<int> which;
    for (int i = 1; i < argc; ++i) which.insert(std::atoi(argv[i]));
    if (which.empty())
        for (int i = 1; i <= 6; ++i) which.insert(i);
    bool all = true;
    for (int n : which) {
        if (n < 1 || n > 6) {
            std::cerr << "unknown criterion " << n << "\n";
            return 2;
        }
        auto [budget, fn] = crit[n - 1];
        std::ostringstream log;
        auto t = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = fn(log);
        } catch (const std::exception& e) {
            log << "  error: " << e.what() << "\n";
        }
        double s = seconds_since(t);
        if (budget > 0 && s > budget) {
            log << "  runtime " << s << " s exceeds " << budget << " s\n";
            ok = false;
        }
        std::cout << log.str() << "  (" << s << " s)\n";
        std::cout << "criterion " << n << ": " << (ok ? "PASS" : "FAIL") << std::endl;
        all = all && ok;
    }
    return all ? 0 : 1;
}
