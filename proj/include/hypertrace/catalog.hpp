#ifndef HYPERTRACE_CATALOG_HPP
#define HYPERTRACE_CATALOG_HPP

#include "identities.hpp"

namespace hypertrace {

/// The cubic transformation from the (2,4,8) and (2,3,8) triangle groups, in
/// trace form: both sides are Frobenius traces of rank-2 canonical
/// hypergeometric sheaves, the right one twisted by the Kummer character
/// conj(eta)^3 along z+3. Order-48 eta, p = 1 mod 48.
inline IdentitySpec cubic_248_spec() {
    IdentitySpec s;
    s.name = "cubic-248";
    s.congruence = 48;
    s.left.kind = SideKind::TraceHCan;
    s.left.params = {CharExpr::epsilon(), CharExpr::one(), CharExpr::of_eta(-1),
                     CharExpr::of_eta(-17)};
    s.left.args = {"(z*(z-9)^2)/((z+3)^3)"};
    s.right.kind = SideKind::TraceHCan;
    s.right.params = {CharExpr::epsilon(), CharExpr::one(), CharExpr::of_eta(-3),
                      CharExpr::of_eta(-9)};
    s.right.args = {"z"};
    s.right.prefactors = {{CharExpr::of_eta(3), "1+z/3"}};
    s.expected = ExpectedKind::ExactOne;
    return s;
}

/// Goursat's entry (116) cubic transformation. Order-6 eta, any alpha with
/// alpha^6 != 1; p = 1 mod 6.
inline IdentitySpec goursat_116_spec() {
    IdentitySpec s;
    s.name = "goursat-116";
    s.congruence = 6;
    s.slots = {{"a", SlotSpec::Kind::AllChars}};
    s.nontrivial_constraints = {CharExpr::slot("a", 6)};
    s.left.kind = SideKind::F21;
    s.left.params = {CharExpr::slot("a", 3), CharExpr::slot("a", 3).times(CharExpr::epsilon()),
                     CharExpr::slot("a", 2).times(CharExpr::of_eta(-1))};
    s.left.args = {"z"};
    s.right.kind = SideKind::F21;
    s.right.params = {CharExpr::slot("a", 1), CharExpr::slot("a", 1).times(CharExpr::of_eta(2)),
                      CharExpr::slot("a", 2).times(CharExpr::of_eta(-1))};
    s.right.args = {"(27*z*(1-z)^2)/((1+3*z)^3)"};
    s.right.prefactors = {{CharExpr::slot("a", -3), "1+3*z"}};
    s.expected = ExpectedKind::ExactOne;
    return s;
}

/// Vidunas equation (28): the degree-10 algebraic transformation. Order-84
/// eta, p = 1 mod 84.
inline IdentitySpec vidunas_28_spec() {
    IdentitySpec s;
    s.name = "vidunas-28";
    s.congruence = 84;
    s.left.kind = SideKind::F21;
    s.left.params = {CharExpr::of_eta(10), CharExpr::of_eta(38), CharExpr::of_eta(60)};
    s.left.args = {"27*z"};
    s.right.kind = SideKind::F21;
    s.right.params = {CharExpr::of_eta(1), CharExpr::of_eta(29), CharExpr::of_eta(72)};
    s.right.args = {"(27*(-(z^2)*(1-27*z)*(3-49*z)^7))/(4*(1-57*z-1029*z^2+50421*z^3)^3)"};
    s.right.prefactors = {{CharExpr::of_eta(-3), "1-57*z-1029*z^2+50421*z^3"}};
    s.expected = ExpectedKind::ExactOne;
    return s;
}

/// The Borwein cubic-AGM transformation; both sides share one normalization,
/// so the equality is convention-free. p = 1 mod 3.
inline IdentitySpec borwein_spec() {
    IdentitySpec s;
    s.name = "borwein-cubic";
    s.congruence = 3;
    s.exclusions = {"1+2*z"};
    s.left.kind = SideKind::F21;
    s.left.params = {CharExpr::of_eta(1), CharExpr::of_eta(2), CharExpr::one()};
    s.left.args = {"1-z^3"};
    s.right.kind = SideKind::F21;
    s.right.params = {CharExpr::of_eta(1), CharExpr::of_eta(2), CharExpr::one()};
    s.right.args = {"((1-z)/(1+2*z))^3"};
    s.expected = ExpectedKind::ExactOne;
    return s;
}

/// Koike-Shiga's two-variable F1 transformation over the Picard family;
/// both cube roots omega are covered by the omega slot. p = 1 mod 3.
inline IdentitySpec koike_shiga_spec() {
    IdentitySpec s;
    s.name = "koike-shiga-f1";
    s.congruence = 3;
    s.two_variables = true;
    s.slots = {{"omega", SlotSpec::Kind::Omega}};
    s.exclusions = {"1+u+v"};
    s.left.kind = SideKind::FD;
    s.left.params = {CharExpr::of_eta(1), CharExpr::of_eta(1), CharExpr::of_eta(1),
                     CharExpr::one()};
    s.left.args = {"1-u^3", "1-v^3"};
    s.right.kind = SideKind::FD;
    s.right.params = {CharExpr::of_eta(1), CharExpr::of_eta(1), CharExpr::of_eta(1),
                      CharExpr::one()};
    s.right.args = {"((1+w*u+w^2*v)/(1+u+v))^3", "((1+w^2*u+w*v)/(1+u+v))^3"};
    s.expected = ExpectedKind::ExactOne;
    return s;
}

/// The quadratic transformation, quantified over all pairs (A, B) with
/// A^2, B^2, eps conj(A) B, eps A conj(B), eps A B nontrivial. Tier-2
/// compares against the Jacobi ratio J(eps A, eps B) / J(eps, eps A B).
inline IdentitySpec quadratic_spec() {
    IdentitySpec s;
    s.name = "quadratic";
    s.congruence = 2;
    s.slots = {{"A", SlotSpec::Kind::AllChars}, {"B", SlotSpec::Kind::AllChars}};
    s.nontrivial_constraints = {
        CharExpr::slot("A", 2), CharExpr::slot("B", 2),
        CharExpr::slot("A", -1).times(CharExpr::slot("B", 1)).times(CharExpr::epsilon()),
        CharExpr::slot("A", 1).times(CharExpr::slot("B", -1)).times(CharExpr::epsilon()),
        CharExpr::slot("A", 1).times(CharExpr::slot("B", 1)).times(CharExpr::epsilon())};
    s.left.kind = SideKind::F21;
    s.left.params = {CharExpr::slot("A"), CharExpr::slot("B"), CharExpr::epsilon()};
    s.left.args = {"z^2"};
    s.right.kind = SideKind::F21;
    s.right.params = {CharExpr::slot("A", 2), CharExpr::slot("B", 2),
                      CharExpr::slot("A").times(CharExpr::slot("B")).times(CharExpr::epsilon())};
    s.right.args = {"(z+1)/2"};
    s.expected = ExpectedKind::PaperFormula;
    s.formula_id = "quadratic-jacobi-ratio";
    return s;
}

/// inv* H^can(a; b) = H^can(conj b; conj a) with constant 1, sampled at a
/// fixed order-12 parameter family.
inline IdentitySpec inversion_spec() {
    IdentitySpec s;
    s.name = "inversion";
    s.congruence = 12;
    s.left.kind = SideKind::TraceHCan;
    s.left.params = {CharExpr::of_eta(1), CharExpr::of_eta(5), CharExpr::of_eta(2),
                     CharExpr::of_eta(11)};
    s.left.args = {"1/z"};
    s.right.kind = SideKind::TraceHCan;
    s.right.params = {CharExpr::of_eta(-2), CharExpr::of_eta(-11), CharExpr::of_eta(-1),
                      CharExpr::of_eta(-5)};
    s.right.args = {"z"};
    s.expected = ExpectedKind::ExactOne;
    return s;
}

/// g(x) = 1-x with a trivial alpha_2: an isomorphism on all of P^1 with an
/// explicitly computable constant, recorded empirically.
inline IdentitySpec one_minus_x_spec() {
    IdentitySpec s;
    s.name = "one-minus-x";
    s.congruence = 12;
    s.left.kind = SideKind::TraceHCan;
    s.left.params = {CharExpr::of_eta(1), CharExpr::one(), CharExpr::of_eta(3),
                     CharExpr::of_eta(7)};
    s.left.args = {"1-z"};
    s.right.kind = SideKind::TraceHCan;
    s.right.params = {CharExpr::of_eta(9), CharExpr::one(), CharExpr::of_eta(3),
                      CharExpr::of_eta(7)};
    s.right.args = {"z"};
    s.expected = ExpectedKind::Empirical;
    return s;
}

inline std::vector<IdentitySpec> builtin_catalog() {
    return {borwein_spec(),   koike_shiga_spec(), quadratic_spec(), cubic_248_spec(),
            goursat_116_spec(), vidunas_28_spec(),  inversion_spec(), one_minus_x_spec()};
}

inline IdentitySpec catalog_entry(const std::string& name) {
    for (auto& spec : builtin_catalog())
        if (spec.name == name) return spec;
    throw UsageError("unknown identity: " + name);
}

/// TRACE-AT-1: the closed form of Frob_1 | H^can against the Lemma-side sum
/// at t = 1, for every admissible character quadruple over F_p. Quadruples
/// with a unipotent pseudoreflection at 1 are counted as excluded.
struct TraceAt1Report {
    std::uint64_t prime = 0;
    std::uint64_t quadruples_checked = 0;
    std::uint64_t quadruples_excluded = 0;
    std::vector<std::string> failures;
    bool pass() const { return failures.empty() && quadruples_checked > 0; }
};

inline TraceAt1Report verify_trace_at_1(std::uint64_t p) {
    TraceAt1Report rep;
    rep.prime = p;
    FieldPtr F = FiniteField::make(p, 1);
    const std::uint64_t n = F->q() - 1;
    for (std::uint64_t a1 = 0; a1 < n; ++a1)
        for (std::uint64_t a2 = a1; a2 < n; ++a2)
            for (std::uint64_t b1 = 0; b1 < n; ++b1)
                for (std::uint64_t b2 = b1; b2 < n; ++b2) {
                    if (b1 == a1 || b1 == a2 || b2 == a1 || b2 == a2) continue;
                    if ((a1 + a2) % n == (b1 + b2) % n) {
                        ++rep.quadruples_excluded;  // unipotent at 1
                        continue;
                    }
                    HCanParams params(MultChar(F, a1), MultChar(F, a2), MultChar(F, b1),
                                      MultChar(F, b2));
                    HCanTraceParts parts(params, params.level());
                    CycloNum lemma = parts.numer(F->from_int(1)).to_cyclo() /
                                     parts.denom.to_cyclo();
                    if (!(lemma == trace_h_can_at_1(params))) {
                        if (rep.failures.size() < 8)
                            rep.failures.push_back(
                                "mismatch at quadruple (" + std::to_string(a1) + "," +
                                std::to_string(a2) + ";" + std::to_string(b1) + "," +
                                std::to_string(b2) + ")");
                    }
                    ++rep.quadruples_checked;
                }
    return rep;
}

}  // namespace hypertrace

#endif
