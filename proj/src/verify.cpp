#include "sghh/verify.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <variant>

#include "sghh/cohomology.hpp"
#include "sghh/errors.hpp"
#include "sghh/structure_ops.hpp"

namespace sghh {

std::string outcome_name(CheckOutcome o) {
    switch (o) {
        case CheckOutcome::Pass: return "PASS";
        case CheckOutcome::Fail: return "FAIL";
        case CheckOutcome::Invalid: return "INVALID";
    }
    return "?";
}

bool SuiteResult::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.outcome == CheckOutcome::Pass; });
}

const CheckResult* SuiteResult::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

using Rng = std::mt19937_64;
using Operand = std::variant<Cochain, DElem, Chain>;
using Ops = std::vector<Operand>;

// sample does not apply (degree constraints etc.)
struct Skip {};

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
    return h;
}

Scalar sgn(const FieldSpec& f, long long e) { return f.one().signed_by(static_cast<long>(e & 1)); }

struct Ctx {
    const SuiteSpec& spec;
    AlgebraPtr alg;
    FieldSpec F;
    int A, P;  // operand arity / form caps
    std::unique_ptr<DStar> ds;
    std::map<std::pair<int, int>, std::unique_ptr<CohomologyBlock>> sgb;
    std::map<int, std::unique_ptr<CohomologyBlock>> db;
    std::map<int, std::vector<SparseVec>> hb;

    Ctx(const SuiteSpec& s) : spec(s), alg(s.alg), F(s.alg->field()), A(s.max_arity), P(s.max_form) {}

    const DStar& dstar() {
        if (!ds) {
            auto* fd = alg->frobenius();
            auto form = fd && fd->symmetric ? DStarForm::Symmetric : DStarForm::General;
            int w = std::max({12, 2 * A + 2 * P + 4, 2 - 3 * spec.deg_lo, 3 * spec.deg_hi + 2});
            ds = std::make_unique<DStar>(alg, form, -w, w);
        }
        return *ds;
    }
    const DStar& sym() {
        alg->require_symmetric();
        return dstar();
    }

    Scalar rs(Rng& r) {
        if (F.is_rational()) {
            std::int64_t v = std::uniform_int_distribution<std::int64_t>(1, 5)(r);
            return F.from_int(r() & 1 ? v : -v);
        }
        std::uint64_t p = F.characteristic();
        return F.from_int(static_cast<std::int64_t>(std::uniform_int_distribution<std::uint64_t>(1, p - 1)(r)));
    }
    static int ri(Rng& r, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(r); }
    bool coin(Rng& r, int pct) { return static_cast<int>(r() % 100) < pct; }

    SparseVec rvec(Rng& r, Index n) {
        SparseVec v;
        for (Index i = 0; i < n; ++i)
            if (coin(r, 30)) v.push(i, rs(r));
        if (v.empty() && n > 0) v.push(static_cast<Index>(r() % n), rs(r));
        v.normalize();
        return v;
    }
    Cochain rc(Rng& r, int m, int p) {
        Cochain f = zero_cochain(alg, m, p);
        Index R = ipow(alg->nbar(), p) * alg->dim();
        return Cochain::from_flat(alg, f.domain(), f.codomain(), rvec(r, f.num_cols() * R));
    }
    Cochain rca(Rng& r, int amin = 0) { return rc(r, ri(r, amin, A), ri(r, 0, P)); }
    DElem rd(Rng& r, int i) {
        const DStar& d = dstar();
        d.require_in_window(i);
        return DElem{i, rvec(r, d.dim(i))};
    }
    Chain rchain(Rng& r, int n) {
        Chain c = zero_chain(alg, Chain::Coeff::A, n);
        c.v = rvec(r, c.dim());
        return c;
    }

    CohomologyBlock& sg_block(int m, int lev) {
        auto& b = sgb[{m, lev}];
        if (!b) {
            Index N = ipow(alg->nbar(), m) * ipow(alg->nbar(), lev) * alg->dim();
            SparseMatrix in = m >= 1 ? delta_matrix(alg, m - 1, lev) : SparseMatrix(N, 0);
            b = std::make_unique<CohomologyBlock>(F, N, std::move(in), delta_matrix(alg, m, lev));
        }
        return *b;
    }
    // zero in HH_sg: a coboundary at its own level or one theta-lift above
    bool sg_class_zero(const Cochain& c) {
        int lev = c.form_degree();
        for (int e = 0; e < 2; ++e) {
            Cochain x = lift_to_level(c, lev + e);
            if (sg_block(x.arity(), lev + e).is_coboundary(x.flat())) return true;
        }
        return false;
    }
    Cochain rcocycle(Rng& r, int m, int p) {
        const auto& z = sg_block(m, p).cocycle_basis();
        if (z.empty()) throw Skip{};
        SparseVec v;
        for (const auto& b : z)
            if (coin(r, 60)) v.axpy(rs(r), b);
        if (v.empty()) v = z[r() % z.size()];
        Cochain f = zero_cochain(alg, m, p);
        return Cochain::from_flat(alg, f.domain(), f.codomain(), v);
    }

    CohomologyBlock& d_block(int i) {
        auto& b = db[i];
        if (!b) b = std::make_unique<CohomologyBlock>(dstar_block(dstar(), i));
        return *b;
    }
    const std::vector<SparseVec>& h_basis(int i) {
        auto it = hb.find(i);
        if (it == hb.end()) it = hb.emplace(i, std::vector<SparseVec>(d_block(i).h_basis())).first;
        return it->second;
    }
    std::vector<DElem> classes(int i) {
        std::vector<DElem> r;
        for (const auto& v : h_basis(i)) r.push_back(DElem{i, v});
        return r;
    }
    bool d_class_zero(const DElem& x) { return d_block(x.degree).is_coboundary(x.coords); }

    // sing and kappa(d) agree in HH_sg, tried at the minimal common level and one above
    bool matches_kappa(const Cochain& sing, const DElem& d) {
        int L = std::max(sing.form_degree(), iota_level(d.degree));
        for (int e = 0; e < 2; ++e) {
            Cochain diff = lift_to_level(sing, L + e) - kappa(dstar(), d, L + e);
            if (sg_block(diff.arity(), L + e).is_coboundary(diff.flat())) return true;
        }
        return false;
    }
};

Cochain S(const Cochain& c, long long e) { return (e & 1) ? c.scaled(-c.field().one()) : c; }
DElem SD(const DElem& x, const FieldSpec& F, long long e) { return scaled(x, sgn(F, e)); }
DElem dsum(const DStar& ds, int deg, const std::vector<DElem>& xs) {
    DElem r = ds.zero(deg);
    for (const auto& x : xs) r = operator_sum(r, x);
    return r;
}
SparseVec ddiff(const DElem& a, const DElem& b) {
    if (a.degree != b.degree) throw InvalidParameter("degree mismatch");
    return a.coords - b.coords;
}
SparseVec scalar_vec(const Scalar& s) {
    SparseVec v;
    v.push(0, s);
    return v;
}
SparseVec first_nonzero(std::initializer_list<SparseVec> vs) {
    for (const auto& v : vs)
        if (!v.empty()) return v;
    return {};
}

const Cochain& C(const Ops& o, std::size_t i) { return std::get<Cochain>(o[i]); }
const DElem& D(const Ops& o, std::size_t i) { return std::get<DElem>(o[i]); }

using Gen = std::function<Ops(Ctx&, Rng&)>;
using Enum = std::function<std::vector<Ops>(Ctx&)>;
using Defect = std::function<SparseVec(Ctx&, const Ops&)>;

struct CheckDef {
    CheckInfo info;
    Gen gen;
    Enum enumerate;
    Defect defect;
    bool minimize = true;
};

// ---- operand bookkeeping for minimization and reports ----

std::size_t entry_count(const Operand& o) {
    return std::visit([](const auto& x) -> std::size_t {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Cochain>) return x.flat().size();
        else if constexpr (std::is_same_v<T, DElem>) return x.coords.size();
        else return x.v.size();
    }, o);
}

SparseVec drop_entry(const SparseVec& v, std::size_t k) {
    SparseVec r;
    std::size_t i = 0;
    for (const auto& e : v)
        if (i++ != k) r.push(e.idx, e.val);
    r.normalize();
    return r;
}

Operand drop(const Operand& o, std::size_t k) {
    return std::visit([k](const auto& x) -> Operand {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Cochain>)
            return Cochain::from_flat(x.algebra(), x.domain(), x.codomain(), drop_entry(x.flat(), k));
        else if constexpr (std::is_same_v<T, DElem>) return DElem{x.degree, drop_entry(x.coords, k)};
        else {
            Chain c = x;
            c.v = drop_entry(x.v, k);
            return c;
        }
    }, o);
}

std::string vec_str(const SparseVec& v, std::size_t limit = 16) {
    std::ostringstream os;
    os << "{";
    std::size_t i = 0;
    for (const auto& e : v) {
        if (i == limit) {
            os << ", ... " << v.size() - limit << " more";
            break;
        }
        os << (i++ ? ", " : "") << e.idx << ":" << e.val.str();
    }
    os << "}";
    return os.str();
}

std::string describe(const Operand& o) {
    return std::visit([](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        std::ostringstream os;
        if constexpr (std::is_same_v<T, Cochain>)
            os << "cochain arity " << x.arity() << " level " << x.form_degree() << " " << vec_str(x.flat());
        else if constexpr (std::is_same_v<T, DElem>)
            os << "D^" << x.degree << " " << vec_str(x.coords);
        else
            os << "chain C_" << x.n << " " << vec_str(x.v);
        return os.str();
    }, o);
}

bool skippable_call(Ctx& ctx, const Defect& d, const Ops& ops, SparseVec& out) {
    try {
        out = d(ctx, ops);
        return true;
    } catch (const Skip&) {
    } catch (const IndexOutOfRange&) {
    } catch (const DegreeOutOfWindow&) {
    } catch (const FeatureDisabled&) {
    } catch (const InvalidParameter&) {
    } catch (const ResourceLimit&) {
    }
    return false;
}

// greedy: drop entries while the defect stays nonzero
Ops minimize(Ctx& ctx, const Defect& d, Ops ops) {
    int budget = 256;
    for (std::size_t oi = 0; oi < ops.size() && budget > 0; ++oi) {
        std::size_t k = 0;
        while (k < entry_count(ops[oi]) && budget > 0) {
            Ops trial = ops;
            trial[oi] = drop(ops[oi], k);
            --budget;
            SparseVec out;
            if (skippable_call(ctx, d, trial, out) && !out.empty()) ops = std::move(trial);
            else ++k;
        }
    }
    return ops;
}

CheckResult run_check(Ctx& ctx, const CheckDef& def) {
    CheckResult res;
    res.suite = def.info.suite;
    res.name = def.info.name;
    const std::uint64_t stream = ctx.spec.seed ^ fnv1a(def.info.suite + "/" + def.info.name);
    std::size_t evaluated = 0;

    auto record = [&](const Ops& ops, std::size_t sample, const SparseVec& defect) {
        ++evaluated;
        if (defect.empty()) {
            ++res.passed;
            return;
        }
        if (res.counterexample) return;
        Ops shown = def.minimize ? minimize(ctx, def.defect, ops) : ops;
        SparseVec d2 = defect;
        if (def.minimize) skippable_call(ctx, def.defect, shown, d2);
        Counterexample ce;
        ce.seed = stream;
        ce.sample = sample;
        for (const auto& o : shown) ce.inputs.push_back(describe(o));
        ce.defect = (def.info.class_level ? "nonzero class, representative " : "nonzero defect ") + vec_str(d2, 8);
        res.counterexample = std::move(ce);
    };

    if (def.enumerate) {
        std::vector<Ops> all;
        try {
            all = def.enumerate(ctx);
        } catch (const ResourceLimit&) {
        } catch (const DegreeOutOfWindow&) {
        }
        for (std::size_t s = 0; s < all.size(); ++s) {
            ++res.samples;
            SparseVec out;
            if (!skippable_call(ctx, def.defect, all[s], out)) {
                ++res.skipped;
                continue;
            }
            record(all[s], s, out);
        }
    } else {
        Rng rng(stream);
        const std::size_t want = static_cast<std::size_t>(std::max(1, ctx.spec.samples));
        for (std::size_t s = 0; evaluated < want && s < 6 * want; ++s) {
            ++res.samples;
            Ops ops;
            SparseVec out;
            bool ok = false;
            try {
                ops = def.gen(ctx, rng);
                ok = skippable_call(ctx, def.defect, ops, out);
            } catch (const Skip&) {
            } catch (const IndexOutOfRange&) {
            } catch (const DegreeOutOfWindow&) {
            } catch (const InvalidParameter&) {
            } catch (const ResourceLimit&) {
            }
            if (!ok) {
                ++res.skipped;
                continue;
            }
            record(ops, s, out);
        }
    }
    if (evaluated == 0) res.outcome = CheckOutcome::Invalid;
    else res.outcome = res.passed == evaluated ? CheckOutcome::Pass : CheckOutcome::Fail;
    return res;
}

// ---- check definitions ----

int deg(const Cochain& f) { return sg_degree(f); }

Cochain drop_unit_part(const Cochain& f) {
    Index W = ipow(f.algebra()->nbar(), f.form_degree());
    SparseVec v;
    for (const auto& e : f.flat()) {
        Index r = e.idx % f.codomain().dim();
        if (r >= W) v.push(e.idx, e.val);
    }
    v.normalize();
    return Cochain::from_flat(f.algebra(), f.domain(), f.codomain(), v);
}

Cochain br(const Cochain& f, const std::vector<Cochain>& g) { return brace_sg(f, g, true); }

SparseVec b1_defect(const Cochain& x, const std::vector<Cochain>& y, const std::vector<Cochain>& z) {
    const int m = static_cast<int>(y.size()), n = static_cast<int>(z.size());
    Cochain lhs = br(br(x, y), z);
    std::vector<Cochain> terms{S(lhs, 1)};
    std::vector<int> se(2 * m, 0);
    std::function<void(int, int)> rec = [&](int k, int lo) {
        if (k == 2 * m) {
            std::vector<Cochain> args;
            long long eps = 0;
            int q = 0;
            for (int p = 0; p < m; ++p) {
                for (; q < se[2 * p]; ++q) args.push_back(z[q]);
                std::vector<Cochain> inner(z.begin() + se[2 * p], z.begin() + se[2 * p + 1]);
                args.push_back(inner.empty() ? y[p] : br(y[p], inner));
                for (int qq = 0; qq < se[2 * p]; ++qq) eps += static_cast<long long>(deg(y[p]) - 1) * (deg(z[qq]) - 1);
                q = se[2 * p + 1];
            }
            for (; q < n; ++q) args.push_back(z[q]);
            terms.push_back(S(br(x, args), eps));
            return;
        }
        for (int v = lo; v <= n; ++v) {
            se[k] = v;
            rec(k + 1, v);
        }
    };
    rec(0, 0);
    return sg_sum(terms).flat();
}

SparseVec b3_defect(const Cochain& x, const std::vector<Cochain>& y) {
    const int l = static_cast<int>(y.size());
    auto eps = [&](int i) {
        long long e = deg(x);
        for (int p = 0; p < i; ++p) e += deg(y[p]) - 1;
        return e;
    };
    std::vector<Cochain> yl(y.begin() + 1, y.end()), yr(y.begin(), y.end() - 1);
    std::vector<Cochain> t{cochain_delta(br(x, y)),
                           S(cup_op(y[0], yl.empty() ? x : br(x, yl)), 1 + static_cast<long long>(deg(x)) * (deg(y[0]) - 1)),
                           S(cup_op(yr.empty() ? x : br(x, yr), y[l - 1]), eps(l - 1)), S(br(cochain_delta(x), y), 1)};
    for (int i = 0; i <= l - 1; ++i) {
        auto yy = y;
        yy[i] = cochain_delta(y[i]);
        t.push_back(S(br(x, yy), eps(i)));
    }
    for (int i = 0; i <= l - 2; ++i) {
        std::vector<Cochain> yy(y.begin(), y.begin() + i);
        yy.push_back(cup_op(y[i], y[i + 1]));
        for (int p = i + 2; p < l; ++p) yy.push_back(y[p]);
        t.push_back(S(br(x, yy), eps(i + 1) + 1));
    }
    return sg_sum(t).flat();
}

// twist for the chain-map rule of star / D* bracket
int star_eps(int a, int b) { return ((a < 0) != (b < 0) && a + b >= 0) ? (a * b) & 1 : 0; }
int bracket_eps(int a, int b) { return a + b >= 1 ? 1 : 0; }

// BV right-hand side (-1)^i (D(xy) - Dx y - (-1)^i x Dy)
DElem bv_rhs(const DStar& ds, const DElem& x, const DElem& y) {
    const auto& F = ds.algebra()->field();
    DElem xy = star(ds, x, y);
    DElem r = dsum(ds, x.degree + y.degree - 1,
                   {tilde_delta(ds, xy), SD(star(ds, tilde_delta(ds, x), y), F, 1),
                    SD(star(ds, x, tilde_delta(ds, y)), F, x.degree + 1)});
    return SD(r, F, x.degree);
}

bool in_window(const SuiteSpec& s, int i) { return i >= s.deg_lo && i <= s.deg_hi; }
bool same3(int i, int j, int k) { return (i < 0) == (j < 0) && (j < 0) == (k < 0); }

// class pairs (x, y) in the window whose output degree out(i, j) is also in the window
std::vector<Ops> class_pairs(Ctx& c, const std::function<bool(int, int)>& keep, const std::function<int(int, int)>& out) {
    std::vector<Ops> r;
    for (int i = c.spec.deg_lo; i <= c.spec.deg_hi; ++i)
        for (int j = c.spec.deg_lo; j <= c.spec.deg_hi; ++j) {
            if (!keep(i, j) || !in_window(c.spec, out(i, j))) continue;
            for (const auto& x : c.classes(i))
                for (const auto& y : c.classes(j)) r.push_back({x, y});
        }
    return r;
}

// one representative triple per degree triple (first and last basis classes alternate)
std::vector<Ops> class_triples(Ctx& c, const std::function<bool(int, int, int)>& keep) {
    std::vector<Ops> r;
    const auto& s = c.spec;
    for (int i = s.deg_lo; i <= s.deg_hi; ++i)
        for (int j = s.deg_lo; j <= s.deg_hi; ++j)
            for (int k = s.deg_lo; k <= s.deg_hi; ++k) {
                if (!keep(i, j, k)) continue;
                auto X = c.classes(i), Y = c.classes(j), Z = c.classes(k);
                if (X.empty() || Y.empty() || Z.empty()) continue;
                r.push_back({X.front(), Y.back(), Z.front()});
                if (X.size() > 1 || Y.size() > 1 || Z.size() > 1) r.push_back({X.back(), Y.front(), Z.back()});
            }
    return r;
}

std::vector<CheckDef> build_checks() {
    std::vector<CheckDef> v;
    auto add = [&](std::string suite, std::string name, std::string desc, Gen g, Defect d, bool known = false) {
        v.push_back(CheckDef{CheckInfo{suite, name, desc, false, known}, std::move(g), {}, std::move(d), true});
    };
    auto add_class = [&](std::string suite, std::string name, std::string desc, Enum e, Defect d, bool known = false) {
        v.push_back(CheckDef{CheckInfo{suite, name, desc, true, known}, {}, std::move(e), std::move(d), false});
    };
    auto add_class_random = [&](std::string suite, std::string name, std::string desc, Gen g, Defect d) {
        v.push_back(CheckDef{CheckInfo{suite, name, desc, true, false}, std::move(g), {}, std::move(d), false});
    };
    auto one_c = [](Ctx& c, Rng& r) { return Ops{c.rca(r)}; };
    auto two_c = [](Ctx& c, Rng& r) { return Ops{c.rca(r), c.rca(r)}; };
    auto three_c = [](Ctx& c, Rng& r) { return Ops{c.rca(r), c.rca(r), c.rca(r)}; };

    // ---- dg ----
    add("dg", "delta_squared_zero", "delta(delta f) = 0 on C^*(A, Omega^p)", one_c,
        [](Ctx&, const Ops& o) { return cochain_delta(cochain_delta(C(o, 0))).flat(); });
    add("dg", "bar_b_squared_zero", "b(b c) = 0 on C_n(A, A)",
        [](Ctx& c, Rng& r) { return Ops{c.rchain(r, Ctx::ri(r, 2, c.A + 2))}; },
        [](Ctx&, const Ops& o) { return chain_b(chain_b(std::get<Chain>(o[0]))).v; });
    add("dg", "dstar_d_squared_zero", "d(d x) = 0 on D*, including across the junction",
        [](Ctx& c, Rng& r) { return Ops{c.rd(r, Ctx::ri(r, -c.P - 3, c.A))}; },
        [](Ctx& c, const Ops& o) { auto& ds = c.dstar(); return ds.apply_differential(ds.apply_differential(D(o, 0))).coords; });
    add("dg", "cup_leibniz", "delta(f cup g) = delta f cup g + (-1)^|f| f cup delta g", two_c, [](Ctx&, const Ops& o) {
        auto& f = C(o, 0);
        auto& g = C(o, 1);
        return sg_sum({cochain_delta(cup(f, g)), S(cup(cochain_delta(f), g), 1), S(cup(f, cochain_delta(g)), deg(f) + 1)}).flat();
    });
    add("dg", "cup_associative", "(f cup g) cup h = f cup (g cup h)", three_c, [](Ctx&, const Ops& o) {
        return sg_sum({cup(cup(C(o, 0), C(o, 1)), C(o, 2)), S(cup(C(o, 0), cup(C(o, 1), C(o, 2))), 1)}).flat();
    });
    add("dg", "cup_unit", "1 cup f = f = f cup 1", one_c, [](Ctx& c, const Ops& o) {
        auto u = constant_cochain(c.alg, c.alg->basis(0));
        auto& f = C(o, 0);
        return first_nonzero({sg_sum({cup(u, f), S(f, 1)}).flat(), sg_sum({cup(f, u), S(f, 1)}).flat()});
    });

    // ---- theta ----
    add("theta", "theta_commutes_with_delta", "theta(delta f) = delta(theta f)", one_c,
        [](Ctx&, const Ops& o) { return (theta(cochain_delta(C(o, 0))) - cochain_delta(theta(C(o, 0)))).flat(); });
    add("theta", "theta_cup", "theta f cup g = f cup theta g = theta(f cup g) in the colimit", two_c, [](Ctx&, const Ops& o) {
        auto& f = C(o, 0);
        auto& g = C(o, 1);
        auto fg = cup(f, g);
        return first_nonzero({sg_sum({cup(theta(f), g), S(fg, 1)}).flat(), sg_sum({cup(f, theta(g)), S(fg, 1)}).flat()});
    });
    add("theta", "theta_circle", "theta f o g = f o theta g = f o g in the colimit", two_c, [](Ctx&, const Ops& o) {
        auto& f = C(o, 0);
        auto& g = C(o, 1);
        auto fg = circle(f, g);
        return first_nonzero({sg_sum({circle(theta(f), g), S(fg, 1)}).flat(), sg_sum({circle(f, theta(g)), S(fg, 1)}).flat()});
    });
    add("theta", "theta_bracket", "[theta f, g] = [f, g] in the colimit", two_c, [](Ctx&, const Ops& o) {
        auto& f = C(o, 0);
        auto& g = C(o, 1);
        auto fg = bracket(f, g);
        return first_nonzero({sg_sum({bracket(theta(f), g), S(fg, 1)}).flat(), sg_sum({bracket(f, theta(g)), S(fg, 1)}).flat()});
    });
    add("theta", "theta_brace", "f{g1, g2} is unchanged by theta on any argument", three_c, [](Ctx&, const Ops& o) {
        auto& f = C(o, 0);
        auto& g1 = C(o, 1);
        auto& g2 = C(o, 2);
        auto b = brace_sg(f, {g1, g2});
        return first_nonzero({sg_sum({brace_sg(theta(f), {g1, g2}), S(b, 1)}).flat(),
                              sg_sum({brace_sg(f, {theta(g1), g2}), S(b, 1)}).flat(),
                              sg_sum({brace_sg(f, {g1, theta(g2)}), S(b, 1)}).flat()});
    });

    // ---- gerstenhaber ----
    add("gerstenhaber", "bracket_skew_symmetric", "[f, g] = -(-1)^{(|f|-1)(|g|-1)} [g, f]", two_c, [](Ctx&, const Ops& o) {
        auto& f = C(o, 0);
        auto& g = C(o, 1);
        return sg_sum({bracket(f, g), S(bracket(g, f), static_cast<long long>(deg(f) - 1) * (deg(g) - 1))}).flat();
    });
    add("gerstenhaber", "delta_is_bracket_with_mu", "delta f = [mu-bar, f] for f with no unit component in its values",
        [](Ctx& c, Rng& r) { return Ops{drop_unit_part(c.rca(r))}; },
        [](Ctx& c, const Ops& o) { return sg_sum({cochain_delta(C(o, 0)), S(bracket(mu_bar(c.alg), C(o, 0)), 1)}).flat(); });
    add("gerstenhaber", "homotopy_commutativity",
        "(-1)^{|f|-1} f o dg - d(f o g) + df o g = (-1)^{|f|-1}(f cup g - (-1)^{|f||g|} g cup f)", two_c,
        [](Ctx&, const Ops& o) {
            auto& f = C(o, 0);
            auto& g = C(o, 1);
            int a = deg(f), b = deg(g);
            if (f.arity() + g.arity() < 1) throw Skip{};
            return sg_sum({S(circle(f, cochain_delta(g)), a - 1), S(cochain_delta(circle(f, g)), 1), circle(cochain_delta(f), g),
                           S(cup(f, g), a), S(cup(g, f), a - 1 + static_cast<long long>(a) * b)})
                .flat();
        });
    add("gerstenhaber", "pre_lie_symmetry",
        "f o (g o h) - (f o g) o h is graded symmetric in g, h", three_c, [](Ctx&, const Ops& o) {
            auto& f = C(o, 0);
            auto& g = C(o, 1);
            auto& h = C(o, 2);
            long long e = static_cast<long long>(deg(g) - 1) * (deg(h) - 1);
            return sg_sum({circle(f, circle(g, h)), S(circle(circle(f, g), h), 1), S(circle(f, circle(h, g)), e + 1),
                           S(circle(circle(f, h), g), e)})
                .flat();
        });
    add("gerstenhaber", "pre_lie_via_brace", "(f o g) o h - f o (g o h) = f{g, h} + (-1)^{(|g|-1)(|h|-1)} f{h, g}", three_c,
        [](Ctx&, const Ops& o) {
            auto& f = C(o, 0);
            auto& g = C(o, 1);
            auto& h = C(o, 2);
            long long e = static_cast<long long>(deg(g) - 1) * (deg(h) - 1);
            return sg_sum({circle(circle(f, g), h), S(circle(f, circle(g, h)), 1), S(brace_sg(f, {g, h}), 1),
                           S(brace_sg(f, {h, g}), e + 1)})
                .flat();
        });
    add("gerstenhaber", "bracket_compatible_with_delta", "delta [f, g] = (-1)^{|f|-1} [f, delta g] + [delta f, g]", two_c,
        [](Ctx&, const Ops& o) {
            auto& f = C(o, 0);
            auto& g = C(o, 1);
            if (f.arity() + g.arity() < 1) throw Skip{};
            return sg_sum({cochain_delta(bracket(f, g)), S(bracket(f, cochain_delta(g)), deg(f)), S(bracket(cochain_delta(f), g), 1)})
                .flat();
        });
    add("gerstenhaber", "jacobi_chain_level", "graded Jacobi identity for the bracket on cochains", three_c, [](Ctx&, const Ops& o) {
        auto& f = C(o, 0);
        auto& g = C(o, 1);
        auto& h = C(o, 2);
        long long a = deg(f) - 1, b = deg(g) - 1, c = deg(h) - 1;
        return sg_sum({S(bracket(f, bracket(g, h)), a * c), S(bracket(g, bracket(h, f)), a * b), S(bracket(h, bracket(f, g)), b * c)})
            .flat();
    });
    add_class_random("gerstenhaber", "leibniz_on_classes",
                     "[f, g cup h] = [f, g] cup h + (-1)^{(|f|-1)|g|} g cup [f, h] on singular cocycles",
                     [](Ctx& c, Rng& r) {
                         Ops o;
                         for (int t = 0; t < 3; ++t) o.push_back(c.rcocycle(r, Ctx::ri(r, 0, c.A), Ctx::ri(r, 0, c.P)));
                         return o;
                     },
                     [](Ctx& c, const Ops& o) {
                         auto& f = C(o, 0);
                         auto& g = C(o, 1);
                         auto& h = C(o, 2);
                         auto d = sg_sum({bracket(f, cup(g, h)), S(cup(bracket(f, g), h), 1),
                                          S(cup(g, bracket(f, h)), 1 + static_cast<long long>(deg(f) - 1) * deg(g))});
                         return c.sg_class_zero(d) ? SparseVec{} : d.flat();
                     });

    // ---- binfinity ----
    add("binfinity", "brace_well_defined", "f{g1, .., gk} (k <= 2) is unchanged by theta on any argument",
        [](Ctx& c, Rng& r) {
            Ops o{c.rca(r)};
            int k = Ctx::ri(r, 1, 2);
            for (int i = 0; i < k; ++i) o.push_back(c.rca(r));
            return o;
        },
        [](Ctx&, const Ops& o) {
            std::vector<Cochain> gs;
            for (std::size_t i = 1; i < o.size(); ++i) gs.push_back(C(o, i));
            auto b = brace_sg(C(o, 0), gs);
            std::vector<Cochain> ts{sg_sum({brace_sg(theta(C(o, 0)), gs), S(b, 1)})};
            for (std::size_t i = 0; i < gs.size(); ++i) {
                auto gg = gs;
                gg[i] = theta(gs[i]);
                ts.push_back(sg_sum({brace_sg(C(o, 0), gg), S(b, 1)}));
            }
            for (const auto& t : ts)
                if (!t.is_zero()) return t.flat();
            return SparseVec{};
        });
    add("binfinity", "brace_matches_classical", "on level-0 cochains the brace is the classical brace (k <= 2)",
        [](Ctx& c, Rng& r) {
            Ops o{c.rc(r, Ctx::ri(r, 0, c.A), 0)};
            int k = Ctx::ri(r, 1, 2);
            for (int i = 0; i < k; ++i) o.push_back(c.rc(r, Ctx::ri(r, 0, c.A), 0));
            return o;
        },
        [](Ctx&, const Ops& o) {
            std::vector<Cochain> gs;
            for (std::size_t i = 1; i < o.size(); ++i) gs.push_back(C(o, i));
            return sg_sum({brace_sg(C(o, 0), gs), S(brace_classical(C(o, 0), gs), 1)}).flat();
        });
    add("binfinity", "brace_single_is_circle", "f{g} = f o g", two_c,
        [](Ctx&, const Ops& o) { return sg_sum({brace_sg(C(o, 0), {C(o, 1)}), S(circle(C(o, 0), C(o, 1)), 1)}).flat(); });
    add("binfinity", "higher_pre_jacobi", "x{y1..ym}{z1..zn} expands over interleavings (m + n <= 3)",
        [](Ctx& c, Rng& r) {
            int m = Ctx::ri(r, 1, 2), n = Ctx::ri(r, 1, 3 - m);
            Ops o{c.rc(r, Ctx::ri(r, 1, c.A), Ctx::ri(r, 0, std::min(c.P, 1)))};
            for (int i = 0; i < m + n; ++i) o.push_back(c.rc(r, Ctx::ri(r, 0, std::min(c.A, 2)), Ctx::ri(r, 0, std::min(c.P, 1))));
            o.push_back(DElem{m, {}});  // split marker
            return o;
        },
        [](Ctx&, const Ops& o) {
            int m = D(o, o.size() - 1).degree;
            std::vector<Cochain> y, z;
            for (std::size_t i = 1; i + 1 < o.size(); ++i) (static_cast<int>(i) <= m ? y : z).push_back(C(o, i));
            return b1_defect(C(o, 0), y, z);
        });
    add("binfinity", "distributivity", "(x1 . x2){y1..yn} distributes over the product (n <= 2)",
        [](Ctx& c, Rng& r) {
            Ops o;
            int n = Ctx::ri(r, 1, 2);
            for (int i = 0; i < 2 + n; ++i) o.push_back(c.rc(r, Ctx::ri(r, 0, std::min(c.A, 2)), Ctx::ri(r, 0, std::min(c.P, 1))));
            return o;
        },
        [](Ctx&, const Ops& o) {
            auto& x1 = C(o, 0);
            auto& x2 = C(o, 1);
            auto& y1 = C(o, 2);
            int d2 = deg(x2), e1 = deg(y1) - 1;
            if (o.size() == 3)
                return sg_sum({br(cup_op(x1, x2), {y1}), S(cup_op(x1, br(x2, {y1})), 1), S(cup_op(br(x1, {y1}), x2), 1 + static_cast<long long>(d2) * e1)})
                    .flat();
            auto& y2 = C(o, 3);
            int e2 = deg(y2) - 1;
            return sg_sum({br(cup_op(x1, x2), {y1, y2}), S(cup_op(x1, br(x2, {y1, y2})), 1),
                           S(cup_op(br(x1, {y1}), br(x2, {y2})), 1 + static_cast<long long>(d2) * e1),
                           S(cup_op(br(x1, {y1, y2}), x2), 1 + static_cast<long long>(d2) * (e1 + e2))})
                .flat();
        });
    add("binfinity", "higher_homotopy", "delta of a brace, with product correction terms (l <= 2)",
        [](Ctx& c, Rng& r) {
            Ops o;
            int l = Ctx::ri(r, 1, 2);
            for (int i = 0; i < 1 + l; ++i) o.push_back(c.rc(r, Ctx::ri(r, 0, std::min(c.A, 2)), Ctx::ri(r, 0, std::min(c.P, 1))));
            return o;
        },
        [](Ctx&, const Ops& o) {
            std::vector<Cochain> y;
            for (std::size_t i = 1; i < o.size(); ++i) y.push_back(C(o, i));
            return b3_defect(C(o, 0), y);
        });

    // ---- star (symmetric model) ----
    auto dpair = [](Ctx& c, Rng& r) {
        auto& ds = c.sym();
        (void)ds;
        return Ops{c.rd(r, Ctx::ri(r, -c.P - 2, c.A)), c.rd(r, Ctx::ri(r, -c.P - 2, c.A))};
    };
    add("star", "star_chain_map_literal", "d(x * y) = dx * y + (-1)^|x| x * dy", dpair,
        [](Ctx& c, const Ops& o) {
            auto& ds = c.sym();
            auto& x = D(o, 0);
            auto& y = D(o, 1);
            auto l = ds.apply_differential(star(ds, x, y));
            auto r = operator_sum(star(ds, ds.apply_differential(x), y), SD(star(ds, x, ds.apply_differential(y)), c.F, x.degree));
            return ddiff(l, r);
        },
        true);
    add("star", "star_chain_map_twisted", "d(x * y) obeys the Leibniz rule with the mixed-sign twist", dpair,
        [](Ctx& c, const Ops& o) {
            auto& ds = c.sym();
            auto& x = D(o, 0);
            auto& y = D(o, 1);
            int i = x.degree, j = y.degree;
            auto l = ds.apply_differential(star(ds, x, y));
            auto r = operator_sum(SD(star(ds, ds.apply_differential(x), y), c.F, star_eps(i, j) + star_eps(i + 1, j)),
                                  SD(star(ds, x, ds.apply_differential(y)), c.F, i + star_eps(i, j) + star_eps(i, j + 1)));
            return ddiff(l, r);
        });
    auto star_assoc = [](Ctx& c, const Ops& o) {
        auto& ds = c.sym();
        return ddiff(star(ds, star(ds, D(o, 0), D(o, 1)), D(o, 2)), star(ds, D(o, 0), star(ds, D(o, 1), D(o, 2))));
    };
    add("star", "star_associative_nonnegative", "(x * y) * z = x * (y * z) on cochains",
        [](Ctx& c, Rng& r) {
            c.sym();
            return Ops{c.rd(r, Ctx::ri(r, 0, c.A)), c.rd(r, Ctx::ri(r, 0, c.A)), c.rd(r, Ctx::ri(r, 0, c.A))};
        },
        star_assoc);
    add("star", "star_associative_negative", "(x * y) * z = x * (y * z) on chains",
        [](Ctx& c, Rng& r) {
            c.sym();
            return Ops{c.rd(r, Ctx::ri(r, -c.P - 1, -1)), c.rd(r, Ctx::ri(r, -c.P - 1, -1)), c.rd(r, Ctx::ri(r, -c.P - 1, -1))};
        },
        star_assoc);
    add_class("star", "star_graded_commutative_on_classes", "x * y = (-1)^{|x||y|} y * x in cohomology",
              [](Ctx& c) {
                  c.sym();
                  return class_pairs(c, [](int, int) { return true; }, [](int i, int j) { return i + j; });
              },
              [](Ctx& c, const Ops& o) {
                  auto& ds = c.sym();
                  auto& x = D(o, 0);
                  auto& y = D(o, 1);
                  DElem d = operator_sum(star(ds, x, y), SD(star(ds, y, x), c.F, 1 + static_cast<long long>(x.degree) * y.degree));
                  return c.d_class_zero(d) ? SparseVec{} : d.coords;
              });
    add_class("star", "star_associative_on_classes", "(x * y) * z = x * (y * z) in cohomology",
              [](Ctx& c) {
                  c.sym();
                  return class_triples(c, [&](int i, int j, int k) {
                      return in_window(c.spec, i + j) && in_window(c.spec, j + k) && in_window(c.spec, i + j + k);
                  });
              },
              [](Ctx& c, const Ops& o) {
                  auto& ds = c.sym();
                  DElem d = operator_sum(star(ds, star(ds, D(o, 0), D(o, 1)), D(o, 2)),
                                         SD(star(ds, D(o, 0), star(ds, D(o, 1), D(o, 2))), c.F, 1));
                  return c.d_class_zero(d) ? SparseVec{} : d.coords;
              });
    add("star", "bullet_homotopy_chains",
        "d(b . a) = (-1)^q (b * a - (-1)^{(p+1)(q+1)} a * b) + (-1)^q b . da + db . a for chains a in C_p (p >= 1), b in C_q",
        [](Ctx& c, Rng& r) {
            c.sym();
            return Ops{c.rd(r, -Ctx::ri(r, 1, std::max(1, c.P)) - 1), c.rd(r, -Ctx::ri(r, 0, std::max(1, c.P)) - 1)};
        },
        [](Ctx& c, const Ops& o) {
            auto& ds = c.sym();
            auto& a = D(o, 0);
            auto& b = D(o, 1);
            int p = -a.degree - 1, q = -b.degree - 1;
            auto dd = [&](const DElem& x) { return ds.apply_differential(x); };
            auto l = dd(bullet(ds, b, a));
            auto r = dsum(ds, l.degree,
                          {SD(operator_sum(star(ds, b, a), SD(star(ds, a, b), c.F, 1 + static_cast<long long>(p + 1) * (q + 1))), c.F, q),
                           SD(bullet(ds, b, dd(a)), c.F, q), bullet(ds, dd(b), a)});
            return ddiff(l, r);
        });
    add("star", "bullet_homotopy_mixed",
        "d(f . a) = (-1)^{m-1}(f * a - (-1)^{m(p-1)} a * f) + df . a + (-1)^{m-1} f . da for f in C^m, a in C_p, p >= 1, p != m-1",
        [](Ctx& c, Rng& r) {
            c.sym();
            int m = Ctx::ri(r, 0, c.A), p = Ctx::ri(r, 1, std::max(1, c.P + 1));
            if (p == m - 1) throw Skip{};
            return Ops{c.rd(r, m), c.rd(r, -p - 1)};
        },
        [](Ctx& c, const Ops& o) {
            auto& ds = c.sym();
            auto& f = D(o, 0);
            auto& a = D(o, 1);
            int m = f.degree, p = -a.degree - 1;
            auto dd = [&](const DElem& x) { return ds.apply_differential(x); };
            auto l = dd(bullet(ds, f, a));
            auto r = dsum(ds, l.degree,
                          {SD(operator_sum(star(ds, f, a), SD(star(ds, a, f), c.F, 1 + static_cast<long long>(m) * (p - 1))), c.F, m - 1),
                           bullet(ds, dd(f), a), SD(bullet(ds, f, dd(a)), c.F, m - 1)});
            return ddiff(l, r);
        });

    // ---- dstar ----
    add("dstar", "pairing_differential_adjoint", "<d f, a> = (-1)^{|f|+1} <f, d a> for cochains f and chains a",
        [](Ctx& c, Rng& r) {
            c.sym();
            int i = Ctx::ri(r, 0, c.A);
            return Ops{c.rd(r, i), c.rd(r, -i - 2)};
        },
        [](Ctx& c, const Ops& o) {
            auto& ds = c.sym();
            auto& f = D(o, 0);
            auto& a = D(o, 1);
            Scalar d = dstar_pairing(ds, ds.apply_differential(f), a) -
                       sgn(c.F, f.degree + 1) * dstar_pairing(ds, f, ds.apply_differential(a));
            return scalar_vec(d);
        });
    add("dstar", "pairing_star_adjoint", "<x * y, z> = <x, y * z>",
        [](Ctx& c, Rng& r) {
            c.sym();
            int i = Ctx::ri(r, -c.P - 1, c.A), j = Ctx::ri(r, -c.P - 1, c.A);
            return Ops{c.rd(r, i), c.rd(r, j), c.rd(r, -1 - i - j)};
        },
        [](Ctx& c, const Ops& o) {
            auto& ds = c.sym();
            return scalar_vec(dstar_pairing(ds, star(ds, D(o, 0), D(o, 1)), D(o, 2)) -
                              dstar_pairing(ds, D(o, 0), star(ds, D(o, 1), D(o, 2))));
        },
        true);
    add("dstar", "bracket_skew_symmetric", "{x, y} = -(-1)^{(|x|-1)(|y|-1)} {y, x}", dpair, [](Ctx& c, const Ops& o) {
        auto& ds = c.sym();
        auto& x = D(o, 0);
        auto& y = D(o, 1);
        return operator_sum(dstar_bracket(ds, x, y), SD(dstar_bracket(ds, y, x), c.F, static_cast<long long>(x.degree - 1) * (y.degree - 1)))
            .coords;
    });
    add("dstar", "bracket_chain_map_literal", "d{x, y} = {dx, y} + (-1)^{|x|-1} {x, dy}", dpair,
        [](Ctx& c, const Ops& o) {
            auto& ds = c.sym();
            auto& x = D(o, 0);
            auto& y = D(o, 1);
            auto l = ds.apply_differential(dstar_bracket(ds, x, y));
            auto r = operator_sum(dstar_bracket(ds, ds.apply_differential(x), y),
                                  SD(dstar_bracket(ds, x, ds.apply_differential(y)), c.F, x.degree - 1));
            return ddiff(l, r);
        },
        true);
    add("dstar", "bracket_chain_map_twisted", "d{x, y} obeys the Leibniz rule with the sign flip into D^-1", dpair,
        [](Ctx& c, const Ops& o) {
            auto& ds = c.sym();
            auto& x = D(o, 0);
            auto& y = D(o, 1);
            int i = x.degree, j = y.degree;
            auto l = ds.apply_differential(dstar_bracket(ds, x, y));
            auto r = operator_sum(SD(dstar_bracket(ds, ds.apply_differential(x), y), c.F, bracket_eps(i, j) + bracket_eps(i + 1, j)),
                                  SD(dstar_bracket(ds, x, ds.apply_differential(y)), c.F, i - 1 + bracket_eps(i, j) + bracket_eps(i, j + 1)));
            return ddiff(l, r);
        });
    add("dstar", "bracket_closed_form", "{a, f} from the adjunction equals the explicit formula",
        [](Ctx& c, Rng& r) {
            c.sym();
            return Ops{c.rd(r, Ctx::ri(r, -c.P - 2, -1)), c.rd(r, Ctx::ri(r, 0, c.A))};
        },
        [](Ctx& c, const Ops& o) {
            auto& ds = c.sym();
            return ddiff(dstar_bracket(ds, D(o, 0), D(o, 1)), dstar_bracket_closed_form(ds, D(o, 0), D(o, 1)));
        });
    add("dstar", "connes_B_squared_zero", "B(B c) = 0",
        [](Ctx& c, Rng& r) { return Ops{c.rchain(r, Ctx::ri(r, 0, c.A + 1))}; },
        [](Ctx&, const Ops& o) { return connes_B(connes_B(std::get<Chain>(o[0]))).v; });
    add("dstar", "jacobi_chain_same_sign", "graded Jacobi identity for {,} with all arguments in D^{<0} or all in D^{>=0}",
        [](Ctx& c, Rng& r) {
            c.sym();
            bool neg = r() & 1;
            auto pick = [&] { return neg ? -Ctx::ri(r, 1, c.P + 1) : Ctx::ri(r, 0, c.A); };
            return Ops{c.rd(r, pick()), c.rd(r, pick()), c.rd(r, pick())};
        },
        [](Ctx& c, const Ops& o) {
            auto& ds = c.sym();
            auto& x = D(o, 0);
            auto& y = D(o, 1);
            auto& z = D(o, 2);
            long long a = x.degree - 1, b = y.degree - 1, e = z.degree - 1;
            auto bk = [&](const DElem& p, const DElem& q) { return dstar_bracket(ds, p, q); };
            return dsum(ds, x.degree + y.degree + z.degree - 2,
                        {SD(bk(x, bk(y, z)), c.F, a * e), SD(bk(y, bk(z, x)), c.F, a * b), SD(bk(z, bk(x, y)), c.F, b * e)})
                .coords;
        });
    add_class("dstar", "jacobi_on_classes_same_sign", "graded Jacobi identity for {,} in cohomology, all degrees of one sign",
              [](Ctx& c) {
                  c.sym();
                  return class_triples(c, [&](int i, int j, int k) {
                      return same3(i, j, k) && in_window(c.spec, i + j - 1) && in_window(c.spec, j + k - 1) && in_window(c.spec, k + i - 1) &&
                             in_window(c.spec, i + j + k - 2);
                  });
              },
              [](Ctx& c, const Ops& o) {
                  auto& ds = c.sym();
                  auto& x = D(o, 0);
                  auto& y = D(o, 1);
                  auto& z = D(o, 2);
                  long long a = x.degree - 1, b = y.degree - 1, e = z.degree - 1;
                  auto bk = [&](const DElem& p, const DElem& q) { return dstar_bracket(ds, p, q); };
                  DElem d = dsum(ds, x.degree + y.degree + z.degree - 2,
                                 {SD(bk(x, bk(y, z)), c.F, a * e), SD(bk(y, bk(z, x)), c.F, a * b), SD(bk(z, bk(x, y)), c.F, b * e)});
                  return c.d_class_zero(d) ? SparseVec{} : d.coords;
              });

    add_class("dstar", "jacobi_on_classes_mixed_sign", "graded Jacobi identity for {,} in cohomology, degrees of both signs",
              [](Ctx& c) {
                  c.sym();
                  return class_triples(c, [&](int i, int j, int k) {
                      return !same3(i, j, k) && in_window(c.spec, i + j - 1) && in_window(c.spec, j + k - 1) && in_window(c.spec, k + i - 1) &&
                             in_window(c.spec, i + j + k - 2);
                  });
              },
              [](Ctx& c, const Ops& o) {
                  auto& ds = c.sym();
                  auto& x = D(o, 0);
                  auto& y = D(o, 1);
                  auto& z = D(o, 2);
                  long long a = x.degree - 1, b = y.degree - 1, e = z.degree - 1;
                  auto bk = [&](const DElem& p, const DElem& q) { return dstar_bracket(ds, p, q); };
                  DElem d = dsum(ds, x.degree + y.degree + z.degree - 2,
                                 {SD(bk(x, bk(y, z)), c.F, a * e), SD(bk(y, bk(z, x)), c.F, a * b), SD(bk(z, bk(x, y)), c.F, b * e)});
                  return c.d_class_zero(d) ? SparseVec{} : d.coords;
              },
              true);

    // ---- bv ----
    add("bv", "bv_operator_pairing_relation", "<Delta f, a0 (x) a> = sigma(m) <f, B(a0 (x) a)>",
        [](Ctx& c, Rng& r) {
            c.alg->require_symmetric();
            auto f = c.rc(r, Ctx::ri(r, 1, c.A), 0);
            return Ops{f, c.rchain(r, f.arity() - 1)};
        },
        [](Ctx& c, const Ops& o) {
            auto& f = C(o, 0);
            auto& a = std::get<Chain>(o[1]);
            int m = f.arity();
            long long e = sign_convention().delta_exp_m_minus_1 ? m - 1 : m;
            return scalar_vec(pairing(bv_delta(f), a) - sgn(c.F, e) * pairing(f, connes_B(a)));
        });
    add("bv", "bv_operator_squared_zero", "Delta(Delta f) = 0",
        [](Ctx& c, Rng& r) {
            c.alg->require_symmetric();
            return Ops{c.rc(r, Ctx::ri(r, 2, c.A + 1), 0)};
        },
        [](Ctx&, const Ops& o) { return bv_delta(bv_delta(C(o, 0))).flat(); });
    add("bv", "tilde_delta_unit", "tilde Delta(1) = 0",
        [](Ctx& c, Rng&) {
            c.sym();
            return Ops{DElem{0, c.alg->basis(0)}};
        },
        [](Ctx& c, const Ops& o) { return tilde_delta(c.sym(), D(o, 0)).coords; });
    add_class("bv", "tilde_delta_squared_on_classes", "tilde Delta squared vanishes in cohomology",
              [](Ctx& c) {
                  c.sym();
                  std::vector<Ops> r;
                  for (int i = c.spec.deg_lo; i <= c.spec.deg_hi; ++i)
                      for (const auto& x : c.classes(i)) r.push_back({x});
                  return r;
              },
              [](Ctx& c, const Ops& o) {
                  auto& ds = c.sym();
                  DElem d = tilde_delta(ds, tilde_delta(ds, D(o, 0)));
                  return c.d_class_zero(d) ? SparseVec{} : d.coords;
              });
    auto bv_identity = [](Ctx& c, const Ops& o) {
        auto& ds = c.sym();
        DElem d = operator_sum(dstar_bracket(ds, D(o, 0), D(o, 1)), SD(bv_rhs(ds, D(o, 0), D(o, 1)), c.F, 1));
        return c.d_class_zero(d) ? SparseVec{} : d.coords;
    };
    auto same_sign = [](int i, int j) { return (i < 0) == (j < 0); };
    auto mixed_sign = [](int i, int j) { return (i < 0) != (j < 0); };
    auto minus_one = [](int i, int j) { return i + j - 1; };
    add_class("bv", "bv_identity_same_sign",
              "{x, y} = (-1)^|x| (D(x * y) - Dx * y - (-1)^|x| x * Dy) in cohomology, x and y of the same sign",
              [=](Ctx& c) {
                  c.sym();
                  return class_pairs(c, same_sign, minus_one);
              },
              bv_identity);
    add_class("bv", "bv_identity_mixed_sign", "the same BV identity for x and y of opposite sign",
              [=](Ctx& c) {
                  c.sym();
                  return class_pairs(c, mixed_sign, minus_one);
              },
              bv_identity, true);
    add_class("bv", "leibniz_on_classes_same_sign", "{x, y * z} = {x, y} * z + (-1)^{(|x|-1)|y|} y * {x, z} in cohomology, all degrees of one sign",
              [](Ctx& c) {
                  c.sym();
                  return class_triples(c, [&](int i, int j, int k) {
                      return same3(i, j, k) && in_window(c.spec, j + k) && in_window(c.spec, i + j - 1) && in_window(c.spec, i + k - 1) &&
                             in_window(c.spec, i + j + k - 1);
                  });
              },
              [](Ctx& c, const Ops& o) {
                  auto& ds = c.sym();
                  auto& x = D(o, 0);
                  auto& y = D(o, 1);
                  auto& z = D(o, 2);
                  DElem d = dsum(ds, x.degree + y.degree + z.degree - 1,
                                 {dstar_bracket(ds, x, star(ds, y, z)), SD(star(ds, dstar_bracket(ds, x, y), z), c.F, 1),
                                  SD(star(ds, y, dstar_bracket(ds, x, z)), c.F, 1 + static_cast<long long>(x.degree - 1) * y.degree)});
                  return c.d_class_zero(d) ? SparseVec{} : d.coords;
              });
    add_class("bv", "leibniz_on_classes_mixed_sign", "the same Leibniz rule for degrees of both signs",
              [](Ctx& c) {
                  c.sym();
                  return class_triples(c, [&](int i, int j, int k) {
                      return !same3(i, j, k) && in_window(c.spec, j + k) && in_window(c.spec, i + j - 1) && in_window(c.spec, i + k - 1) &&
                             in_window(c.spec, i + j + k - 1);
                  });
              },
              [](Ctx& c, const Ops& o) {
                  auto& ds = c.sym();
                  auto& x = D(o, 0);
                  auto& y = D(o, 1);
                  auto& z = D(o, 2);
                  DElem d = dsum(ds, x.degree + y.degree + z.degree - 1,
                                 {dstar_bracket(ds, x, star(ds, y, z)), SD(star(ds, dstar_bracket(ds, x, y), z), c.F, 1),
                                  SD(star(ds, y, dstar_bracket(ds, x, z)), c.F, 1 + static_cast<long long>(x.degree - 1) * y.degree)});
                  return c.d_class_zero(d) ? SparseVec{} : d.coords;
              },
              true);
    auto comparison = [](Ctx& c, const Ops& o) {
        auto& ds = c.sym();
        auto& x = D(o, 0);
        auto& y = D(o, 1);
        auto sing = bracket(kappa(ds, x, iota_level(x.degree)), kappa(ds, y, iota_level(y.degree)));
        auto b = dstar_bracket(ds, x, y);
        return c.matches_kappa(sing, b) ? SparseVec{} : b.coords.empty() ? sing.flat() : b.coords;
    };
    add_class("bv", "bracket_comparison_same_sign", "[kappa x, kappa y] = kappa{x, y} in singular cohomology, same sign",
              [=](Ctx& c) {
                  c.sym();
                  return class_pairs(c, same_sign, minus_one);
              },
              comparison);
    add_class("bv", "bracket_comparison_mixed_sign", "[kappa x, kappa y] = kappa{x, y} in singular cohomology, opposite sign",
              [=](Ctx& c) {
                  c.sym();
                  return class_pairs(c, mixed_sign, minus_one);
              },
              comparison, true);

    // ---- comparison ----
    add("comparison", "iota_chain_map", "delta(iota x) = iota(d x) in the colimit",
        [](Ctx& c, Rng& r) {
            c.alg->require_frobenius();
            return Ops{c.rd(r, Ctx::ri(r, -c.P - 2, c.A - 1))};
        },
        [](Ctx& c, const Ops& o) {
            auto& ds = c.dstar();
            auto& x = D(o, 0);
            return sg_sum({cochain_delta(iota(ds, x)), S(iota(ds, ds.apply_differential(x)), 1)}).flat();
        });
    add_class("comparison", "iota_bijective_on_classes", "iota induces a bijection onto the stabilized singular cohomology",
              [](Ctx& c) {
                  c.alg->require_frobenius();
                  std::vector<Ops> r;
                  for (int i = c.spec.deg_lo; i <= c.spec.deg_hi; ++i) r.push_back({DElem{i, {}}});
                  return r;
              },
              [](Ctx& c, const Ops& o) {
                  int i = D(o, 0).degree;
                  auto& ds = c.dstar();
                  int pmax = iota_level(i) + 3;
                  auto sg = sg_dims(build_sg_ladder(c.alg, i, i, pmax), 2);
                  auto th = th_dims(ds, i, i);
                  compare_iota(th, ds, sg);
                  if (th.comparison.empty() || !th.comparison[0].sg_dim) throw Skip{};
                  const auto& row = th.comparison[0];
                  if (row.bijective) return SparseVec{};
                  SparseVec v;
                  v.push(0, c.F.from_int(static_cast<std::int64_t>(row.th_dim)));
                  v.push(1, c.F.from_int(static_cast<std::int64_t>(*row.sg_dim)));
                  v.push(2, c.F.from_int(static_cast<std::int64_t>(row.iota_rank.value_or(0))));
                  v.normalize();
                  if (v.empty()) v.push(0, c.F.one());
                  return v;
              });
    add_class("comparison", "star_matches_cup", "kappa x cup kappa y = kappa(x * y) in singular cohomology",
              [](Ctx& c) {
                  c.sym();
                  return class_pairs(c, [](int, int) { return true; }, [](int i, int j) { return i + j; });
              },
              [](Ctx& c, const Ops& o) {
                  auto& ds = c.sym();
                  auto& x = D(o, 0);
                  auto& y = D(o, 1);
                  auto sing = cup(kappa(ds, x, iota_level(x.degree)), kappa(ds, y, iota_level(y.degree)));
                  auto s = star(ds, x, y);
                  return c.matches_kappa(sing, s) ? SparseVec{} : s.coords.empty() ? sing.flat() : s.coords;
              });
    return v;
}

const std::vector<CheckDef>& checks() {
    static const std::vector<CheckDef> v = build_checks();
    return v;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> v{"dg", "theta", "gerstenhaber", "binfinity", "star", "dstar", "bv", "comparison"};
    return v;
}

const std::vector<CheckInfo>& check_manifest() {
    static const std::vector<CheckInfo> v = [] {
        std::vector<CheckInfo> r;
        for (const auto& c : checks()) r.push_back(c.info);
        return r;
    }();
    return v;
}

SuiteResult run_suite(const SuiteSpec& spec) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), spec.suite) == names.end())
        throw InvalidParameter("unknown suite '" + spec.suite + "'");
    if (!spec.alg) throw InvalidParameter("suite needs an algebra");
    if (spec.max_arity < 1 || spec.max_form < 0 || spec.deg_lo > spec.deg_hi)
        throw InvalidParameter("suite bounds: max_arity >= 1, max_form >= 0, deg_lo <= deg_hi");
    if (spec.suite == "star" || spec.suite == "dstar" || spec.suite == "bv") spec.alg->require_symmetric();
    if (spec.suite == "comparison") spec.alg->require_frobenius();

    SuiteResult res;
    res.suite = spec.suite;
    res.algebra = spec.algebra_name.empty() ? "dim " + std::to_string(spec.alg->dim()) + " over " + spec.alg->field().name()
                                            : spec.algebra_name;
    res.seed = spec.seed;
    std::vector<const CheckDef*> sel;
    for (const auto& def : checks()) {
        if (def.info.suite != spec.suite) continue;
        if (!spec.only.empty() && std::find(spec.only.begin(), spec.only.end(), def.info.name) == spec.only.end()) continue;
        sel.push_back(&def);
    }
    // one context per check: caches are not shared, streams are per check, so the result is order-independent
    res.checks.resize(sel.size());
    std::vector<std::exception_ptr> err(sel.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < sel.size(); ++i) {
        try {
            Ctx ctx(spec);
            res.checks[i] = run_check(ctx, *sel[i]);
        } catch (...) {
            err[i] = std::current_exception();
        }
    }
    for (auto& e : err)
        if (e) std::rethrow_exception(e);
    return res;
}

nlohmann::json to_json(const SuiteResult& r) {
    nlohmann::json j;
    j["suite"] = r.suite;
    j["algebra"] = r.algebra;
    j["seed"] = r.seed;
    j["passed"] = r.passed();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : r.checks) {
        nlohmann::json cj{{"name", c.name}, {"outcome", outcome_name(c.outcome)}, {"samples", c.samples},
                          {"passed", c.passed}, {"skipped", c.skipped}};
        if (c.counterexample) {
            const auto& ce = *c.counterexample;
            cj["counterexample"] = {{"seed", ce.seed}, {"sample", ce.sample}, {"inputs", ce.inputs}, {"defect", ce.defect}};
        }
        j["checks"].push_back(std::move(cj));
    }
    return j;
}

std::string to_text(const SuiteResult& r) {
    std::ostringstream os;
    os << "suite " << r.suite << " on " << r.algebra << " (seed " << r.seed << "): " << (r.passed() ? "PASS" : "FAIL") << "\n";
    for (const auto& c : r.checks) {
        os << "  " << outcome_name(c.outcome) << "  " << c.name << "  " << c.passed << "/" << (c.samples - c.skipped);
        if (c.skipped) os << " (" << c.skipped << " skipped)";
        os << "\n";
        if (c.counterexample) {
            const auto& ce = *c.counterexample;
            os << "      counterexample, stream " << ce.seed << " sample " << ce.sample << "\n";
            for (const auto& in : ce.inputs) os << "        " << in << "\n";
            os << "        " << ce.defect << "\n";
        }
    }
    return os.str();
}

ArbiterResult arbitrate(const std::function<std::vector<SuiteResult>()>& battery) {
    ArbiterResult r;
    for (bool kz : {false, true})
        for (bool de : {true, false}) {
            ArbiterSetting s;
            s.convention = SignConvention{kz, de};
            {
                ScopedSignConvention scope(s.convention);
                for (const auto& sr : battery())
                    for (const auto& c : sr.checks)
                        if (c.outcome != CheckOutcome::Pass) s.failing.push_back(sr.suite + "/" + c.name + " on " + sr.algebra);
            }
            s.passed = s.failing.empty();
            r.settings.push_back(std::move(s));
        }
    int n = 0;
    for (const auto& s : r.settings)
        if (s.passed) {
            ++n;
            r.selected = s.convention;
        }
    if (n != 1) r.selected.reset();
    r.verdict = n == 1 ? "unique" : n == 0 ? "none" : "ambiguous";
    return r;
}

nlohmann::json to_json(const ArbiterResult& r) {
    nlohmann::json j;
    j["verdict"] = r.verdict;
    j["settings"] = nlohmann::json::array();
    for (const auto& s : r.settings)
        j["settings"].push_back({{"koszul", s.convention.koszul},
                                 {"delta_exponent", s.convention.delta_exp_m_minus_1 ? "m-1" : "m"},
                                 {"passed", s.passed},
                                 {"failing", s.failing}});
    if (r.selected)
        j["selected"] = {{"koszul", r.selected->koszul}, {"delta_exponent", r.selected->delta_exp_m_minus_1 ? "m-1" : "m"}};
    else
        j["selected"] = nullptr;
    return j;
}

}  // namespace sghh
