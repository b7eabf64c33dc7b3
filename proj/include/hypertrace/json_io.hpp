#ifndef HYPERTRACE_JSON_IO_HPP
#define HYPERTRACE_JSON_IO_HPP

#include <json.hpp>

#include "catalog.hpp"
#include "convolution.hpp"
#include "monodromy.hpp"

namespace hypertrace {

// ordered_json keeps key order stable so reports are byte-reproducible
using Json = nlohmann::ordered_json;

inline Json cyclo_to_json(const CycloNum& v) {
    Json j;
    j["level"] = v.level();
    Json coeffs = Json::array();
    for (const auto& c : v.coeffs()) coeffs.push_back(c.to_string());
    j["coeffs"] = coeffs;
    return j;
}

inline CycloNum cyclo_from_json(const Json& j) {
    long long L = j.at("level").get<long long>();
    std::vector<Rational> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(Rational::parse(c.get<std::string>()));
    return CycloNum(L, std::move(coeffs));
}

// ---- monodromy tuples ----

inline Json point_to_json(const PointId& p) {
    switch (p.kind) {
        case PointId::Kind::Finite: return p.value.to_string();
        case PointId::Kind::Infinity: return "inf";
        case PointId::Kind::Algebraic:
            return "place:" + std::to_string(p.degree) + ":" + p.min_poly.to_string();
    }
    return "?";
}

inline PointId point_from_json(const std::string& s) {
    if (s == "inf") return PointId::infinity();
    if (s.rfind("place:", 0) == 0) {
        // "place:<deg>:<poly>" with poly in coefficient list form a0,a1,...
        auto second = s.find(':', 6);
        std::string coeffs = s.substr(second + 1);
        std::vector<Rational> c;
        size_t pos = 0;
        while (pos <= coeffs.size()) {
            auto comma = coeffs.find(',', pos);
            std::string tok = coeffs.substr(pos, comma == std::string::npos ? std::string::npos
                                                                            : comma - pos);
            if (!tok.empty()) c.push_back(Rational::parse(tok));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return PointId::algebraic(QPoly(std::move(c)));
    }
    return PointId::finite(Rational::parse(s));
}

inline Json tuple_to_json(const MonodromyTuple& t) {
    Json j;
    j["rank"] = t.rank;
    Json points = Json::array();
    for (const auto& [pt, datum] : t.local) {
        Json entry;
        if (pt.kind == PointId::Kind::Algebraic) {
            std::string coeffs;
            for (size_t i = 0; i < pt.min_poly.coeffs().size(); ++i) {
                if (i) coeffs += ",";
                coeffs += pt.min_poly[i].to_string();
            }
            entry["point"] = "place:" + std::to_string(pt.degree) + ":" + coeffs;
        } else {
            entry["point"] = point_to_json(pt);
        }
        Json exps = Json::array();
        for (const auto& e : datum.exponents) exps.push_back(e.to_string());
        entry["exponents"] = exps;
        points.push_back(entry);
    }
    j["points"] = points;
    return j;
}

inline MonodromyTuple tuple_from_json(const Json& j) {
    long rank = j.at("rank").get<long>();
    std::vector<std::pair<PointId, LocalDatum>> local;
    for (const auto& entry : j.at("points")) {
        PointId pt = point_from_json(entry.at("point").get<std::string>());
        std::vector<Rational> exps;
        for (const auto& e : entry.at("exponents"))
            exps.push_back(Rational::parse(e.get<std::string>()));
        local.emplace_back(std::move(pt), LocalDatum(std::move(exps)));
    }
    return MonodromyTuple(rank, std::move(local));
}

inline Json matrix_tuple_to_json(const MatrixTuple& t) {
    Json j;
    j["rank"] = t.rank;
    Json mats = Json::array();
    for (const auto& m : t.mats) {
        Json rows = Json::array();
        for (const auto& row : m) {
            Json r = Json::array();
            for (const auto& v : row) r.push_back(cyclo_to_json(v));
            rows.push_back(r);
        }
        mats.push_back(rows);
    }
    j["matrices"] = mats;
    return j;
}

inline MatrixTuple matrix_tuple_from_json(const Json& j) {
    long rank = j.at("rank").get<long>();
    std::vector<CMat> mats;
    for (const auto& rows : j.at("matrices")) {
        CMat m;
        for (const auto& row : rows) {
            CVec r;
            for (const auto& v : row) r.push_back(cyclo_from_json(v));
            m.push_back(std::move(r));
        }
        mats.push_back(std::move(m));
    }
    return MatrixTuple(rank, std::move(mats));
}

// ---- identity specs ----

inline Json char_expr_to_json(const CharExpr& c) {
    Json j = Json::object();
    if (c.eta) j["eta"] = c.eta;
    if (c.eps) j["eps"] = true;
    if (!c.slots.empty()) {
        Json slots = Json::object();
        for (const auto& [name, coeff] : c.slots) slots[name] = coeff;
        j["slots"] = slots;
    }
    return j;
}

inline CharExpr char_expr_from_json(const Json& j) {
    CharExpr c;
    if (j.contains("eta")) c.eta = j.at("eta").get<long long>();
    if (j.contains("eps")) c.eps = j.at("eps").get<bool>();
    if (j.contains("slots"))
        for (auto it = j.at("slots").begin(); it != j.at("slots").end(); ++it)
            c.slots[it.key()] = it.value().get<long long>();
    return c;
}

inline Json side_to_json(const Side& s) {
    Json j;
    switch (s.kind) {
        case SideKind::TraceHCan: j["kind"] = "TRACE_HCAN"; break;
        case SideKind::F21: j["kind"] = "F21"; break;
        case SideKind::P21: j["kind"] = "P21"; break;
        case SideKind::FD: j["kind"] = "FD"; break;
        case SideKind::PointSum: j["kind"] = "POINT_SUM"; break;
    }
    Json params = Json::array();
    for (const auto& p : s.params) params.push_back(char_expr_to_json(p));
    j["params"] = params;
    j["args"] = s.args;
    if (!s.prefactors.empty()) {
        Json pf = Json::array();
        for (const auto& [chr, map] : s.prefactors) {
            Json e;
            e["char"] = char_expr_to_json(chr);
            e["map"] = map;
            pf.push_back(e);
        }
        j["prefactors"] = pf;
    }
    if (s.kind == SideKind::PointSum) {
        Json ps;
        ps["N"] = s.point_sum.N;
        ps["exps"] = s.point_sum.exps;
        ps["lambda"] = s.point_sum.lambda;
        ps["char_exp"] = s.point_sum.k;
        j["point_sum"] = ps;
    }
    return j;
}

inline Side side_from_json(const Json& j) {
    Side s;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "TRACE_HCAN") s.kind = SideKind::TraceHCan;
    else if (kind == "F21") s.kind = SideKind::F21;
    else if (kind == "P21") s.kind = SideKind::P21;
    else if (kind == "FD") s.kind = SideKind::FD;
    else if (kind == "POINT_SUM") s.kind = SideKind::PointSum;
    else throw UsageError("unknown side kind: " + kind);
    for (const auto& p : j.at("params")) s.params.push_back(char_expr_from_json(p));
    if (j.contains("args"))
        for (const auto& a : j.at("args")) s.args.push_back(a.get<std::string>());
    if (j.contains("prefactors"))
        for (const auto& pf : j.at("prefactors"))
            s.prefactors.push_back(
                {char_expr_from_json(pf.at("char")), pf.at("map").get<std::string>()});
    if (j.contains("point_sum")) {
        const auto& ps = j.at("point_sum");
        s.point_sum.N = ps.at("N").get<long long>();
        s.point_sum.exps = ps.at("exps").get<std::vector<long long>>();
        s.point_sum.lambda = ps.at("lambda").get<std::vector<std::string>>();
        s.point_sum.k = ps.at("char_exp").get<long long>();
    }
    return s;
}

inline Json spec_to_json(const IdentitySpec& s) {
    Json j;
    j["schema"] = "hypertrace/identity/1";
    j["name"] = s.name;
    j["congruence"] = s.congruence;
    if (!s.slots.empty()) {
        Json slots = Json::array();
        for (const auto& sl : s.slots) {
            Json e;
            e["name"] = sl.name;
            e["kind"] = sl.kind == SlotSpec::Kind::AllChars ? "all" : "omega";
            slots.push_back(e);
        }
        j["slots"] = slots;
    }
    if (!s.nontrivial_constraints.empty()) {
        Json cons = Json::array();
        for (const auto& c : s.nontrivial_constraints) cons.push_back(char_expr_to_json(c));
        j["nontrivial"] = cons;
    }
    if (!s.exclusions.empty()) j["exclusions"] = s.exclusions;
    if (s.two_variables) j["two_variables"] = true;
    j["left"] = side_to_json(s.left);
    j["right"] = side_to_json(s.right);
    switch (s.expected) {
        case ExpectedKind::ExactOne: j["expected"] = {{"kind", "one"}}; break;
        case ExpectedKind::PaperFormula:
            j["expected"] = {{"kind", "paper_formula"}, {"formula", s.formula_id}};
            break;
        case ExpectedKind::Empirical: j["expected"] = {{"kind", "empirical"}}; break;
    }
    return j;
}

inline IdentitySpec spec_from_json(const Json& j) {
    IdentitySpec s;
    s.name = j.at("name").get<std::string>();
    s.congruence = j.at("congruence").get<long long>();
    if (j.contains("slots"))
        for (const auto& e : j.at("slots")) {
            SlotSpec sl;
            sl.name = e.at("name").get<std::string>();
            sl.kind = e.at("kind").get<std::string>() == "omega" ? SlotSpec::Kind::Omega
                                                                 : SlotSpec::Kind::AllChars;
            s.slots.push_back(sl);
        }
    if (j.contains("nontrivial"))
        for (const auto& c : j.at("nontrivial"))
            s.nontrivial_constraints.push_back(char_expr_from_json(c));
    if (j.contains("exclusions")) s.exclusions = j.at("exclusions").get<std::vector<std::string>>();
    if (j.contains("two_variables")) s.two_variables = j.at("two_variables").get<bool>();
    s.left = side_from_json(j.at("left"));
    s.right = side_from_json(j.at("right"));
    std::string kind = j.at("expected").at("kind").get<std::string>();
    if (kind == "one") s.expected = ExpectedKind::ExactOne;
    else if (kind == "paper_formula") {
        s.expected = ExpectedKind::PaperFormula;
        s.formula_id = j.at("expected").at("formula").get<std::string>();
    } else {
        s.expected = ExpectedKind::Empirical;
    }
    return s;
}

// ---- reports ----

inline Json instance_to_json(const InstanceResult& r) {
    Json j;
    j["eta"] = r.key.eta_residue;
    if (!r.key.slot_values.empty()) {
        Json slots = Json::object();
        for (const auto& [name, val] : r.key.slot_values) slots[name] = val;
        j["slots"] = slots;
    }
    if (r.skipped) {
        j["skipped"] = true;
        j["note"] = r.note;
        return j;
    }
    j["tier1"] = r.tier1;
    j["tier2"] = r.tier2;
    if (r.normalization_divergence) j["normalization_divergence"] = true;
    if (r.has_constant) j["constant"] = cyclo_to_json(r.constant);
    j["points_tested"] = r.points_tested;
    j["points_excluded"] = r.points_excluded;
    if (!r.failures.empty()) j["failures"] = r.failures;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline Json report_to_json(const VerificationReport& r) {
    Json j;
    j["identity"] = r.identity;
    j["prime"] = r.prime;
    j["congruence_ok"] = r.congruence_ok;
    j["universe"] = r.universe;
    Json instances = Json::array();
    for (const auto& inst : r.instances) instances.push_back(instance_to_json(inst));
    j["instances"] = instances;
    j["pass"] = r.pass();
    return j;
}

inline Json aggregate_to_json(const AggregateReport& agg) {
    Json j;
    j["schema"] = "hypertrace/1";
    j["identity"] = agg.identity;
    if (!agg.skipped_primes.empty()) j["skipped_primes"] = agg.skipped_primes;
    Json reports = Json::array();
    for (const auto& r : agg.reports) reports.push_back(report_to_json(r));
    j["reports"] = reports;
    j["pass"] = agg.pass();
    return j;
}

}  // namespace hypertrace

#endif
