#pragma once

#include <vector>

#include "sghh/complexes.hpp"
#include "sghh/tensorspace.hpp"

namespace sghh {

// ---- singular cochains: representatives at different levels ----

// theta-lift to the given level (>= current form degree)
Cochain lift_to_level(const Cochain& f, int level);
// equality in the colimit; degrees must agree
bool sg_equal(const Cochain& a, const Cochain& b);
// sum of terms of equal degree, lifted to the highest level among them
Cochain sg_sum(const std::vector<Cochain>& terms);
// cochain degree m - p
inline int sg_degree(const Cochain& f) { return f.arity() - f.form_degree(); }

// ---- cup, circle, bracket ----

Cochain cup(const Cochain& f, const Cochain& g, Assembly mode = Assembly::Parallel);
// (-1)^{|f||g|} g cup f
Cochain cup_op(const Cochain& f, const Cochain& g, Assembly mode = Assembly::Parallel);
// i in [1, m] inserts g-bar into input slot i; i in [-p, -1] applies g-bar to the outputs from slot -i on
Cochain circle_i(const Cochain& f, const Cochain& g, int i, Assembly mode = Assembly::Parallel);
Cochain circle(const Cochain& f, const Cochain& g, Assembly mode = Assembly::Parallel);
Cochain bracket(const Cochain& f, const Cochain& g, Assembly mode = Assembly::Parallel);

// ---- braces ----

// positive insertion slots i_1 < ... < i_j for g_1..g_j, negative arcs l_1 <= ... <= l_{k-j}
struct BraceType {
    std::vector<int> pos;
    std::vector<int> neg;
    friend bool operator==(const BraceType&, const BraceType&) = default;
};

std::vector<BraceType> brace_types(int m, int p, int k);
int brace_sign_exponent(const Cochain& f, const std::vector<Cochain>& gs, const BraceType& t);
// unsigned summand, as produced by the cactus walk (reduced representative)
Cochain brace_summand(const Cochain& f, const std::vector<Cochain>& gs, const BraceType& t,
                      Assembly mode = Assembly::Parallel);

// all form degrees zero; k > m gives the zero map
Cochain brace_classical(const Cochain& f, const std::vector<Cochain>& gs);
// k >= 3 throws FeatureDisabled unless allow_higher
Cochain brace_sg(const Cochain& f, const std::vector<Cochain>& gs, bool allow_higher = false,
                 Assembly mode = Assembly::Parallel);

// ---- Connes B, pairing, BV ----

Chain connes_B(const Chain& c);
// <f, a0 (x) a> = tr(a0 f(a)); zero on arity mismatch
Scalar pairing(const Cochain& f, const Chain& c);
Cochain bv_delta(const Cochain& f);

// ---- operations on D* ----

DElem star(const DStar& ds, const DElem& x, const DElem& y);
// x . y with x a chain (case chain-chain) or a cochain (two cochain-chain cases)
DElem bullet(const DStar& ds, const DElem& x, const DElem& y);
Scalar dstar_pairing(const DStar& ds, const DElem& x, const DElem& y);
DElem tilde_delta(const DStar& ds, const DElem& x);
DElem dstar_bracket(const DStar& ds, const DElem& x, const DElem& y);
// {alpha, f} from the explicit formulas, for cross-checking the adjunction solve
DElem dstar_bracket_closed_form(const DStar& ds, const DElem& alpha, const DElem& f);

DElem operator_sum(const DElem& a, const DElem& b);
DElem scaled(const DElem& a, const Scalar& c);

}  // namespace sghh
