#ifndef HYPERTRACE_IDENTITIES_HPP
#define HYPERTRACE_IDENTITIES_HPP

#include <functional>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "charsums.hpp"
#include "expr.hpp"
#include "pointcount.hpp"

namespace hypertrace {

enum class SideKind { TraceHCan, F21, P21, FD, PointSum };
enum class ExpectedKind { ExactOne, PaperFormula, Empirical };

/// A character written multiplicatively in the run-level primitive character
/// eta (of order M), the named slot characters, and the fixed characters
/// eps and 1: exponent = eta_coeff * e_eta + sum slot_coeff * e_slot
/// (+ (q-1)/2 if eps).
struct CharExpr {
    long long eta = 0;
    std::map<std::string, long long> slots;
    bool eps = false;

    static CharExpr of_eta(long long k) {
        CharExpr c;
        c.eta = k;
        return c;
    }
    static CharExpr epsilon() {
        CharExpr c;
        c.eps = true;
        return c;
    }
    static CharExpr one() { return CharExpr{}; }
    static CharExpr slot(const std::string& name, long long k = 1) {
        CharExpr c;
        c.slots[name] = k;
        return c;
    }
    CharExpr times(const CharExpr& o) const {
        CharExpr c = *this;
        c.eta += o.eta;
        for (auto& [k, v] : o.slots) c.slots[k] += v;
        if (o.eps) c.eps = !c.eps;
        return c;
    }
    CharExpr power(long long k) const {
        CharExpr c;
        c.eta = eta * k;
        for (auto& [n, v] : slots) c.slots[n] = v * k;
        c.eps = eps && (k % 2 != 0);
        return c;
    }
    CharExpr conj() const { return power(-1); }
};

struct Prefactor {
    CharExpr chr;
    std::string map;  // expression text, parsed on use
};

struct PointSumSpec {
    long long N = 2;
    std::vector<long long> exps;
    std::vector<std::string> lambda;  // expressions
    long long k = 1;
};

struct Side {
    SideKind kind = SideKind::F21;
    std::vector<CharExpr> params;       // TraceHCan: a1,a2,b1,b2; F21/P21: A,B,C; FD: A, B_1..B_n, C
    std::vector<std::string> args;      // expression texts; FD takes one per B
    std::vector<Prefactor> prefactors;
    PointSumSpec point_sum;
};

struct SlotSpec {
    std::string name;
    enum class Kind { AllChars, Omega } kind = Kind::AllChars;
};

/// Declarative description of one transformation identity.
struct IdentitySpec {
    std::string name;
    long long congruence = 1;  // M: verified at primes p = 1 mod M
    std::vector<SlotSpec> slots;
    std::vector<CharExpr> nontrivial_constraints;
    std::vector<std::string> exclusions;  // expressions that must be nonzero
    bool two_variables = false;
    Side left, right;
    ExpectedKind expected = ExpectedKind::Empirical;
    std::string formula_id;  // names a built-in constant formula (PaperFormula)
};

/// One concrete character assignment while verifying at a prime.
struct InstanceKey {
    long long eta_residue = 1;  // eta = chi_q(residue, M)
    std::vector<std::pair<std::string, long long>> slot_values;  // exponent or omega code
};

struct InstanceResult {
    InstanceKey key;
    bool skipped = false;
    std::string note;
    bool tier1 = true;
    bool tier2 = true;
    bool normalization_divergence = false;
    bool has_constant = false;
    CycloNum constant;
    std::uint64_t points_tested = 0;
    std::uint64_t points_excluded = 0;
    std::vector<std::string> failures;
};

struct VerificationReport {
    std::string identity;
    std::uint64_t prime = 0;
    bool congruence_ok = true;
    std::uint64_t universe = 0;
    std::vector<InstanceResult> instances;

    bool tier1_pass() const {
        for (const auto& inst : instances)
            if (!inst.skipped && !inst.tier1) return false;
        return congruence_ok;
    }
    bool pass() const {
        // hard failure only on tier-1; tier-2 divergence is report-carried
        if (!tier1_pass()) return false;
        for (const auto& inst : instances)
            if (!inst.skipped && !inst.tier2 && !inst.normalization_divergence) return false;
        return true;
    }
};

namespace detail {

/// Point-sum core at a prescribed cyclotomic level, for the identity engine.
inline CycloInt hyp_point_sum_int_impl(const CurveFamily& fam,
                                       const std::vector<std::uint32_t>& codes, long long k,
                                       const FieldPtr& F, long long L) {
    ChiQEvaluator chi(F, fam.N, k);
    ZetaSum acc(L);
    const long long lift = L / fam.N;
    for (std::uint64_t x = 0; x < F->q(); ++x) {
        std::uint64_t e = 0;
        bool on_branch = false;
        for (size_t j = 0; j < codes.size(); ++j) {
            std::uint32_t diff = F->sub(static_cast<std::uint32_t>(x), codes[j]);
            if (diff == 0) { on_branch = true; break; }
            std::uint64_t ij = ((fam.exps[j] % static_cast<long long>(F->q() - 1)) +
                                static_cast<long long>(F->q() - 1)) % (F->q() - 1);
            e = (e + F->dlog(diff) * ij) % (F->q() - 1);
        }
        if (on_branch) continue;
        acc.add(chi.exponent(F->exp(e)) * lift);
    }
    return acc.reduced();
}

}  // namespace detail

namespace engine {

struct Instance {
    FieldPtr F;
    long long M;
    InstanceKey key;
    std::uint32_t omega_code = 0;

    MultChar resolve(const CharExpr& expr) const {
        const std::uint64_t n = F->q() - 1;
        long long e = 0;
        long long eta_exp = key.eta_residue % M;
        e += expr.eta % static_cast<long long>(n) * ((static_cast<long long>(n) / M) * eta_exp % static_cast<long long>(n));
        for (const auto& [name, coeff] : expr.slots) {
            long long val = 0;
            bool found = false;
            for (const auto& [sn, sv] : key.slot_values)
                if (sn == name) { val = sv; found = true; }
            if (!found) throw Error("unresolved character slot " + name);
            e += coeff % static_cast<long long>(n) * (val % static_cast<long long>(n));
        }
        if (expr.eps) e += static_cast<long long>(n) / 2;
        long long r = e % static_cast<long long>(n);
        if (r < 0) r += static_cast<long long>(n);
        return MultChar(F, static_cast<std::uint64_t>(r));
    }
};

/// One side compiled against an instance: value(point) = numer / denom with
/// denom constant over the sweep.
struct CompiledSide {
    SideKind kind;
    long long level = 1;
    FieldPtr field;
    // TraceHCan
    std::optional<HCanTraceParts> trace;
    // F21 / P21
    MultChar A, B, C;
    CycloInt denom{1};
    // FD
    MultChar fd_A, fd_C;
    std::vector<MultChar> fd_B;
    // PointSum
    std::optional<CurveFamily> family;
    long long ps_k = 1;
    // shared
    std::vector<Expr> args;
    std::vector<std::pair<MultChar, Expr>> prefactors;
};

inline long long side_level(const Instance& inst, const Side& side) {
    long long L = 1;
    for (const auto& p : side.params)
        L = std::lcm(L, static_cast<long long>(inst.resolve(p).order()));
    for (const auto& pf : side.prefactors)
        L = std::lcm(L, static_cast<long long>(inst.resolve(pf.chr).order()));
    if (side.kind == SideKind::PointSum) L = std::lcm(L, side.point_sum.N);
    return L;
}

inline CompiledSide compile_side(const Instance& inst, const Side& side, long long L) {
    CompiledSide cs;
    cs.kind = side.kind;
    cs.level = L;
    cs.field = inst.F;
    switch (side.kind) {
        case SideKind::TraceHCan: {
            HCanParams params(inst.resolve(side.params.at(0)), inst.resolve(side.params.at(1)),
                              inst.resolve(side.params.at(2)), inst.resolve(side.params.at(3)));
            cs.trace.emplace(params, L);
            cs.denom = cs.trace->denom;
            break;
        }
        case SideKind::F21:
        case SideKind::P21: {
            cs.A = inst.resolve(side.params.at(0));
            cs.B = inst.resolve(side.params.at(1));
            cs.C = inst.resolve(side.params.at(2));
            if (side.kind == SideKind::F21) {
                cs.denom = jacobi_sum_int(cs.B, cs.C * cs.B.conj(), L);
                if (cs.denom.is_zero())
                    throw ZeroNormalizer("J(B, C conj B) = 0 for this instance");
            } else {
                cs.denom = CycloInt::root_of_unity(L, 0);
            }
            break;
        }
        case SideKind::FD: {
            cs.fd_A = inst.resolve(side.params.front());
            cs.fd_C = inst.resolve(side.params.back());
            for (size_t i = 1; i + 1 < side.params.size(); ++i)
                cs.fd_B.push_back(inst.resolve(side.params[i]));
            cs.denom = CycloInt::root_of_unity(L, 0);
            break;
        }
        case SideKind::PointSum: {
            cs.family.emplace(side.point_sum.N, side.point_sum.exps);
            cs.ps_k = side.point_sum.k;
            for (const auto& text : side.point_sum.lambda) cs.args.push_back(Expr::parse(text));
            cs.denom = CycloInt::root_of_unity(L, 0);
            break;
        }
    }
    if (side.kind != SideKind::PointSum)
        for (const auto& text : side.args) cs.args.push_back(Expr::parse(text));
    for (const auto& pf : side.prefactors)
        cs.prefactors.emplace_back(inst.resolve(pf.chr), Expr::parse(pf.map));
    if (side.kind == SideKind::TraceHCan && side.args.size() != 1)
        throw Error("trace side needs one argument");
    if ((side.kind == SideKind::F21 || side.kind == SideKind::P21) && side.args.size() != 1)
        throw Error("2F1 side needs one argument");
    if (side.kind == SideKind::FD && side.args.size() != cs.fd_B.size())
        throw Error("FD side needs one argument per B character");
    return cs;
}

/// Numerator value at a point; nullopt = excluded, with the reason appended.
inline std::optional<CycloInt> eval_side(const CompiledSide& cs, const Expr::Env& env,
                                         std::string* reason) {
    const FiniteField& F = *env.F;
    const std::uint32_t one = F.from_int(1);
    long long pref_exp = 0;
    for (const auto& [chr, map] : cs.prefactors) {
        auto v = map.eval(env);
        if (!v) { *reason = "prefactor pole"; return std::nullopt; }
        if (*v == 0) { *reason = "prefactor zero"; return std::nullopt; }
        pref_exp += *chr.exp_at_level(*v, cs.level);
    }
    switch (cs.kind) {
        case SideKind::TraceHCan: {
            auto arg = cs.args[0].eval(env);
            if (!arg) { *reason = "argument pole"; return std::nullopt; }
            if (*arg == 0 || *arg == one) { *reason = "argument in {0,1}"; return std::nullopt; }
            return cs.trace->numer(*arg).times_zeta(pref_exp);
        }
        case SideKind::F21:
        case SideKind::P21: {
            auto arg = cs.args[0].eval(env);
            if (!arg) { *reason = "argument pole"; return std::nullopt; }
            if (*arg == 0 || *arg == one) { *reason = "argument in {0,1}"; return std::nullopt; }
            return p2_function_int(cs.A, cs.B, cs.C, *arg, cs.level).times_zeta(pref_exp);
        }
        case SideKind::FD: {
            std::vector<std::uint32_t> xs;
            for (const auto& a : cs.args) {
                auto v = a.eval(env);
                if (!v) { *reason = "argument pole"; return std::nullopt; }
                // arguments 0 and 1 are collided branch points of the
                // underlying curve; the kernel degenerates there
                if (*v == 0 || *v == one) { *reason = "FD argument in {0,1}"; return std::nullopt; }
                xs.push_back(*v);
            }
            return fd_appell_sum_int(cs.fd_A, cs.fd_B, cs.fd_C, xs, cs.level).times_zeta(pref_exp);
        }
        case SideKind::PointSum: {
            std::vector<std::uint32_t> lam;
            for (const auto& a : cs.args) {
                auto v = a.eval(env);
                if (!v) { *reason = "lambda pole"; return std::nullopt; }
                lam.push_back(*v);
            }
            for (size_t i = 0; i < lam.size(); ++i)
                for (size_t j = i + 1; j < lam.size(); ++j)
                    if (lam[i] == lam[j]) { *reason = "lambda collision"; return std::nullopt; }
            return ::hypertrace::detail::hyp_point_sum_int_impl(*cs.family, lam, cs.ps_k,
                                                                cs.field, cs.level)
                .times_zeta(pref_exp);
        }
    }
    throw Error("bad side kind");
}

/// Built-in tier-2 constant formulas, keyed by id.
inline CycloNum paper_formula(const std::string& id, const Instance& inst,
                              const IdentitySpec& spec, long long L) {
    if (id == "quadratic-jacobi-ratio") {
        // J(eps A, eps B) / J(eps, eps A B)
        MultChar A = inst.resolve(CharExpr::slot("A"));
        MultChar B = inst.resolve(CharExpr::slot("B"));
        MultChar eps = inst.resolve(CharExpr::epsilon());
        CycloInt num = jacobi_sum_int(eps * A, eps * B, L);
        CycloInt den = jacobi_sum_int(eps, eps * A * B, L);
        return num.to_cyclo() / den.to_cyclo();
    }
    (void)spec;
    throw Error("unknown paper formula id: " + id);
}

}  // namespace engine

/// Enumerates the instance keys of a spec at a prime.
inline std::vector<InstanceKey> enumerate_instances(const IdentitySpec& spec, const FieldPtr& F) {
    std::vector<InstanceKey> keys;
    std::vector<long long> eta_residues;
    if (spec.congruence <= 1) {
        eta_residues.push_back(0);
    } else {
        for (long long u = 1; u < spec.congruence; ++u)
            if (std::gcd(u, spec.congruence) == 1) eta_residues.push_back(u);
    }
    // slot value grids
    std::vector<std::vector<long long>> grids;
    for (const auto& slot : spec.slots) {
        std::vector<long long> grid;
        if (slot.kind == SlotSpec::Kind::AllChars) {
            for (long long e = 0; e < static_cast<long long>(F->q() - 1); ++e) grid.push_back(e);
        } else {
            // omega: the two primitive cube roots of unity in F_p
            for (std::uint32_t w = 2; w < F->q(); ++w)
                if (F->pow(w, 3) == 1 && w != 1) grid.push_back(static_cast<long long>(w));
        }
        grids.push_back(std::move(grid));
    }
    std::vector<size_t> idx(grids.size(), 0);
    while (true) {
        for (long long u : eta_residues) {
            InstanceKey key;
            key.eta_residue = u;
            for (size_t s = 0; s < grids.size(); ++s)
                key.slot_values.emplace_back(spec.slots[s].name, grids[s][idx[s]]);
            keys.push_back(std::move(key));
        }
        size_t k = 0;
        while (k < grids.size() && ++idx[k] == grids[k].size()) idx[k++] = 0;
        if (k == grids.size() || grids.empty()) break;
    }
    return keys;
}

/// Verifies one identity at one prime: tier-1 (the left/right ratio is
/// constant over the sweep) and tier-2 (the constant matches the expected
/// value) for every character instance.
inline VerificationReport verify_identity(const IdentitySpec& spec, std::uint64_t p) {
    VerificationReport report;
    report.identity = spec.name;
    report.prime = p;
    if (spec.congruence > 1 && p % static_cast<std::uint64_t>(spec.congruence) != 1) {
        report.congruence_ok = false;
        return report;
    }
    FieldPtr F = FiniteField::make(p, 1);
    report.universe = spec.two_variables ? F->q() * F->q() : F->q();

    std::vector<Expr> exclusions;
    for (const auto& text : spec.exclusions) exclusions.push_back(Expr::parse(text));

    for (const auto& key : enumerate_instances(spec, F)) {
        InstanceResult res;
        res.key = key;
        engine::Instance inst{F, std::max<long long>(spec.congruence, 1), key, 0};
        for (const auto& [name, val] : key.slot_values) {
            for (const auto& slot : spec.slots)
                if (slot.name == name && slot.kind == SlotSpec::Kind::Omega)
                    inst.omega_code = static_cast<std::uint32_t>(val);
        }
        // constraints
        bool constrained_out = false;
        for (const auto& c : spec.nontrivial_constraints)
            if (inst.resolve(c).is_trivial()) constrained_out = true;
        if (constrained_out) {
            res.skipped = true;
            res.note = "constraint: required character is trivial";
            report.instances.push_back(std::move(res));
            continue;
        }
        long long L = 1;
        try {
            L = std::lcm(engine::side_level(inst, spec.left), engine::side_level(inst, spec.right));
            engine::CompiledSide left = engine::compile_side(inst, spec.left, L);
            engine::CompiledSide right = engine::compile_side(inst, spec.right, L);

            std::optional<CycloInt> ref_left, ref_right;
            std::vector<std::pair<CycloInt, CycloInt>> nonzero_pairs;
            auto sweep_point = [&](std::uint32_t a, std::uint32_t b) {
                Expr::Env env{F.get(), a, a, b, inst.omega_code};
                for (const auto& ex : exclusions) {
                    auto v = ex.eval(env);
                    if (!v || *v == 0) { ++res.points_excluded; return; }
                }
                std::string reason;
                auto lv = engine::eval_side(left, env, &reason);
                if (!lv) { ++res.points_excluded; return; }
                auto rv = engine::eval_side(right, env, &reason);
                if (!rv) { ++res.points_excluded; return; }
                ++res.points_tested;
                bool lz = lv->is_zero(), rz = rv->is_zero();
                if (lz != rz) {
                    res.tier1 = false;
                    if (res.failures.size() < 8)
                        res.failures.push_back("zero-pattern mismatch at point " +
                                               std::to_string(a) +
                                               (spec.two_variables ? "," + std::to_string(b) : ""));
                    return;
                }
                if (lz) return;
                if (!ref_left) {
                    ref_left = *lv;
                    ref_right = *rv;
                    return;
                }
                // cross-multiplied tier-1 constancy
                if (!(*lv * *ref_right == *rv * *ref_left)) {
                    res.tier1 = false;
                    if (res.failures.size() < 8)
                        res.failures.push_back("ratio varies at point " + std::to_string(a) +
                                               (spec.two_variables ? "," + std::to_string(b) : ""));
                }
            };
            if (spec.two_variables) {
                for (std::uint64_t a = 0; a < F->q(); ++a)
                    for (std::uint64_t b = 0; b < F->q(); ++b)
                        sweep_point(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
            } else {
                for (std::uint64_t a = 0; a < F->q(); ++a)
                    sweep_point(static_cast<std::uint32_t>(a), 0);
            }

            if (!ref_left) {
                res.note = "both sides vanish at every tested point";
                res.tier2 = true;
            } else {
                // tier-2 constant: (NL * DR) / (NR * DL)
                CycloNum num = (*ref_left * right.denom).to_cyclo();
                CycloNum den = (*ref_right * left.denom).to_cyclo();
                res.constant = num / den;
                res.has_constant = true;
                switch (spec.expected) {
                    case ExpectedKind::ExactOne:
                        res.tier2 = (res.constant == CycloNum::one(res.constant.level()));
                        break;
                    case ExpectedKind::PaperFormula:
                        res.tier2 =
                            (res.constant == engine::paper_formula(spec.formula_id, inst, spec, L));
                        break;
                    case ExpectedKind::Empirical:
                        res.tier2 = true;
                        break;
                }
                if (!res.tier2 && res.tier1) {
                    res.normalization_divergence = true;
                    res.note = "NORMALIZATION-DIVERGENCE: ratio constant but != expected";
                }
            }
        } catch (const DegenerateParams& e) {
            res.skipped = true;
            res.note = std::string("degenerate: ") + e.what();
        } catch (const ZeroNormalizer& e) {
            res.skipped = true;
            res.note = std::string("zero normalizer: ") + e.what();
        }
        report.instances.push_back(std::move(res));
    }
    return report;
}

/// left(z0) / right(z0), exactly. The reference point must be admissible and
/// both sides nonzero there.
inline CycloNum determine_twist_constant(const IdentitySpec& spec, std::uint64_t p,
                                         std::uint32_t z0, std::uint32_t v0 = 0,
                                         const InstanceKey* which = nullptr) {
    if (spec.congruence > 1 && p % static_cast<std::uint64_t>(spec.congruence) != 1)
        throw CongruenceViolation("p != 1 mod M");
    FieldPtr F = FiniteField::make(p, 1);
    auto keys = enumerate_instances(spec, F);
    if (keys.empty()) throw Error("no instances");
    InstanceKey key = which ? *which : keys.front();
    engine::Instance inst{F, std::max<long long>(spec.congruence, 1), key, 0};
    for (const auto& [name, val] : key.slot_values)
        for (const auto& slot : spec.slots)
            if (slot.name == name && slot.kind == SlotSpec::Kind::Omega)
                inst.omega_code = static_cast<std::uint32_t>(val);
    long long L = std::lcm(engine::side_level(inst, spec.left), engine::side_level(inst, spec.right));
    engine::CompiledSide left = engine::compile_side(inst, spec.left, L);
    engine::CompiledSide right = engine::compile_side(inst, spec.right, L);
    Expr::Env env{F.get(), z0, z0, v0, inst.omega_code};
    for (const auto& text : spec.exclusions) {
        auto v = Expr::parse(text).eval(env);
        if (!v || *v == 0) throw ExcludedPoint("reference point is excluded");
    }
    std::string reason;
    auto lv = engine::eval_side(left, env, &reason);
    auto rv = engine::eval_side(right, env, &reason);
    if (!lv || !rv) throw ExcludedPoint("reference point is excluded: " + reason);
    if (lv->is_zero() || rv->is_zero())
        throw ZeroAtReference("a side vanishes at the reference point");
    return (*lv * right.denom).to_cyclo() / (*rv * left.denom).to_cyclo();
}

struct AggregateReport {
    std::string identity;
    std::vector<VerificationReport> reports;
    std::vector<std::uint64_t> skipped_primes;  // congruence-incompatible

    bool pass() const {
        for (const auto& r : reports)
            if (!r.pass()) return false;
        return true;
    }
};

/// Runs verify_identity over a prime list; congruence-incompatible primes are
/// skipped with notice. Primes run concurrently up to the given width; the
/// report order is deterministic (ascending primes).
inline AggregateReport verify_over_primes(const IdentitySpec& spec,
                                          std::vector<std::uint64_t> primes,
                                          unsigned parallelism = 1) {
    std::sort(primes.begin(), primes.end());
    AggregateReport agg;
    agg.identity = spec.name;
    std::vector<std::uint64_t> todo;
    for (std::uint64_t p : primes) {
        if (spec.congruence > 1 && p % static_cast<std::uint64_t>(spec.congruence) != 1)
            agg.skipped_primes.push_back(p);
        else
            todo.push_back(p);
    }
    if (parallelism <= 1 || todo.size() <= 1) {
        for (std::uint64_t p : todo) agg.reports.push_back(verify_identity(spec, p));
        return agg;
    }
    std::vector<std::future<VerificationReport>> futures;
    for (std::uint64_t p : todo)
        futures.push_back(std::async(std::launch::async, [&spec, p] {
            return verify_identity(spec, p);
        }));
    for (auto& f : futures) agg.reports.push_back(f.get());
    return agg;
}

}  // namespace hypertrace

#endif
