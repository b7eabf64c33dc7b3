// hypertrace: finite-field realizations of hypergeometric motives.
// Subcommands: verify, count, lfactor, rigidity, convolve, series, catalog.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include <hypertrace/json_io.hpp>
#include <hypertrace/series.hpp>

using namespace hypertrace;

namespace {

std::vector<long long> parse_ll_list(const std::string& s) {
    std::vector<long long> out;
    size_t pos = 0;
    while (pos <= s.size()) {
        auto comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!tok.empty()) out.push_back(std::stoll(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::pair<unsigned, unsigned> parse_degree_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        unsigned d = static_cast<unsigned>(std::stoul(s));
        return {1, d};
    }
    return {static_cast<unsigned>(std::stoul(s.substr(0, dots))),
            static_cast<unsigned>(std::stoul(s.substr(dots + 2)))};
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content << "\n";
        return;
    }
    std::ofstream out(path, std::ios::binary);
    out << content;
}

std::string csv_escape(const std::string& s) {
    if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) return s;
    std::string r = "\"";
    for (char c : s) {
        if (c == '"') r += "\"\"";
        r += c;
    }
    return r + "\"";
}

std::string aggregate_to_csv(const AggregateReport& agg) {
    std::string csv =
        "identity,prime,eta,slots,skipped,tier1,tier2,divergence,constant,points_tested,points_excluded\n";
    for (const auto& rep : agg.reports) {
        for (const auto& inst : rep.instances) {
            std::string slots;
            for (const auto& [name, val] : inst.key.slot_values) {
                if (!slots.empty()) slots += ";";
                slots += name + "=" + std::to_string(val);
            }
            csv += agg.identity + "," + std::to_string(rep.prime) + "," +
                   std::to_string(inst.key.eta_residue) + "," + csv_escape(slots) + "," +
                   (inst.skipped ? "1" : "0") + "," + (inst.tier1 ? "1" : "0") + "," +
                   (inst.tier2 ? "1" : "0") + "," + (inst.normalization_divergence ? "1" : "0") +
                   "," + csv_escape(inst.has_constant ? inst.constant.to_string() : "") + "," +
                   std::to_string(inst.points_tested) + "," + std::to_string(inst.points_excluded) +
                   "\n";
        }
    }
    return csv;
}

std::string cyclo_human(const CycloNum& v) {
    auto z = v.embed(1);
    char buf[64];
    std::snprintf(buf, sizeof buf, " ~ (%.6g, %.6g)", z.real(), z.imag());
    return v.to_string() + buf;
}

std::string aggregate_to_human(const AggregateReport& agg) {
    std::string out = "identity " + agg.identity + "\n";
    for (std::uint64_t p : agg.skipped_primes)
        out += "  p = " + std::to_string(p) + ": skipped (congruence not satisfied)\n";
    for (const auto& rep : agg.reports) {
        out += "  p = " + std::to_string(rep.prime) + ":\n";
        for (const auto& inst : rep.instances) {
            std::string slots;
            for (const auto& [name, val] : inst.key.slot_values)
                slots += " " + name + "=" + std::to_string(val);
            out += "    eta=" + std::to_string(inst.key.eta_residue) + slots + ": ";
            if (inst.skipped) {
                out += "skipped (" + inst.note + ")\n";
                continue;
            }
            out += std::string("tier1 ") + (inst.tier1 ? "pass" : "FAIL") + ", tier2 " +
                   (inst.tier2 ? "pass" : (inst.normalization_divergence ? "DIVERGENT" : "FAIL"));
            if (inst.has_constant) out += ", constant " + cyclo_human(inst.constant);
            out += ", tested " + std::to_string(inst.points_tested) + ", excluded " +
                   std::to_string(inst.points_excluded) + "\n";
            for (const auto& f : inst.failures) out += "      " + f + "\n";
        }
    }
    out += agg.pass() ? "PASS\n" : "FAIL\n";
    return out;
}

int run_verify(const std::string& identity, const std::string& spec_file,
               const std::string& primes_spec, std::uint64_t single_p, const std::string& report_path,
               const std::string& format, unsigned parallelism) {
    IdentitySpec spec;
    if (!spec_file.empty()) {
        std::ifstream in(spec_file);
        if (!in) throw UsageError("cannot open spec file " + spec_file);
        Json j = Json::parse(in);
        spec = spec_from_json(j);
    } else if (identity == "trace-at-1") {
        std::uint64_t p = single_p ? single_p : 13;
        auto rep = verify_trace_at_1(p);
        Json j;
        j["schema"] = "hypertrace/1";
        j["identity"] = "trace-at-1";
        j["prime"] = rep.prime;
        j["quadruples_checked"] = rep.quadruples_checked;
        j["quadruples_excluded"] = rep.quadruples_excluded;
        j["failures"] = rep.failures;
        j["pass"] = rep.pass();
        write_output(report_path, j.dump(2));
        return rep.pass() ? 0 : 1;
    } else {
        spec = catalog_entry(identity);
    }
    std::vector<std::uint64_t> primes;
    if (single_p) primes.push_back(single_p);
    if (!primes_spec.empty())
        for (std::uint64_t p : prime_stream(primes_spec)) primes.push_back(p);
    if (primes.empty()) throw UsageError("no primes selected; use --primes or --p");
    AggregateReport agg = verify_over_primes(spec, primes, parallelism);
    if (format == "csv") write_output(report_path, aggregate_to_csv(agg));
    else if (format == "human") write_output(report_path, aggregate_to_human(agg));
    else write_output(report_path, aggregate_to_json(agg).dump(2));
    return agg.pass() ? 0 : 1;
}

Json charpoly_report(const CurveFamily& fam, const std::vector<long long>& lambda, long long k,
                     std::uint64_t p, unsigned hi) {
    FrobeniusData data = frobenius_charpoly(fam, lambda, k, p, hi);
    Json j;
    j["schema"] = "hypertrace/1";
    j["p"] = p;
    j["N"] = fam.N;
    j["exps"] = fam.exps;
    j["lambda"] = lambda;
    j["char_exp"] = k;
    Json sums = Json::array();
    for (const auto& s : data.power_sums) sums.push_back(cyclo_to_json(s));
    j["power_sums"] = sums;
    Json poly = Json::array();
    for (const auto& c : data.charpoly) poly.push_back(cyclo_to_json(c));
    j["charpoly"] = poly;
    auto purity = purity_check(data);
    j["purity"] = {{"max_rel_deviation", purity.max_rel_deviation}, {"sqrt_q", purity.sqrt_q}};
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypertrace: exact finite-field realizations of hypergeometric motives"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "verify a transformation identity over primes");
    std::string identity, spec_file, primes_spec, report_path, format = "json";
    std::uint64_t single_p = 0;
    unsigned parallelism = 1;
    verify->add_option("--identity", identity, "catalog identity name");
    verify->add_option("--spec", spec_file, "identity spec JSON file");
    verify->add_option("--primes", primes_spec, "prime selection, e.g. \"1 mod 3 in 2..100\"");
    verify->add_option("--p", single_p, "a single prime");
    verify->add_option("--report", report_path, "output path (default stdout)");
    verify->add_option("--format", format, "json | csv | human")
        ->check(CLI::IsMember({"json", "csv", "human"}));
    verify->add_option("--parallel", parallelism, "worker width across primes");

    // count / lfactor
    auto add_family_options = [](CLI::App* cmd, long long* N, std::string* exps, std::string* lambda,
                                 std::uint64_t* p, long long* k, std::string* degrees) {
        cmd->add_option("--N", *N, "cover degree")->required();
        cmd->add_option("--exps", *exps, "exponent vector i_0,...,i_{r+1}")->required();
        cmd->add_option("--lambda", *lambda, "branch points")->required();
        cmd->add_option("--p", *p, "prime")->required();
        cmd->add_option("--char-exp", *k, "character exponent k (default 1)");
        cmd->add_option("--degrees", *degrees, "extension degrees, e.g. 1..6");
    };
    auto* count = app.add_subcommand("count", "eigenspace point sums and decomposition");
    long long cN = 2, ck = 1;
    std::string cexps, clambda, cdegrees, cout_path, cformat = "json";
    std::uint64_t cp = 5;
    add_family_options(count, &cN, &cexps, &clambda, &cp, &ck, &cdegrees);
    count->add_option("--out", cformat, "json | human");
    count->add_option("--report", cout_path, "output path");

    auto* lfactor = app.add_subcommand("lfactor", "Frobenius characteristic polynomial");
    long long lN = 2, lk = 1;
    std::string lexps, llambda, ldegrees, lout_path;
    std::uint64_t lp = 5;
    add_family_options(lfactor, &lN, &lexps, &llambda, &lp, &lk, &ldegrees);
    lfactor->add_option("--report", lout_path, "output path");

    // rigidity
    auto* rigidity = app.add_subcommand("rigidity", "rigidity index of a monodromy tuple");
    std::string tuple_path;
    rigidity->add_option("--tuple", tuple_path, "tuple JSON file")->required();

    // convolve
    auto* convolve = app.add_subcommand("convolve", "Dettweiler-Reiter middle convolution");
    std::string mt_path, mc_out;
    long long lam_exp = 1, lam_level = 12;
    convolve->add_option("--tuple", mt_path, "matrix tuple JSON file")->required();
    convolve->add_option("--lambda-exp", lam_exp, "lambda = zeta_L^k: the exponent k");
    convolve->add_option("--lambda-level", lam_level, "lambda = zeta_L^k: the level L");
    convolve->add_option("--out", mc_out, "output path (default stdout)");

    // series
    auto* series = app.add_subcommand("series", "truncated 2F1 series");
    std::string sa = "1/2", sb = "1/2", sc = "1";
    double sx = 0.0, sxi = 0.0;
    int sterms = 200;
    series->add_option("--a", sa);
    series->add_option("--b", sb);
    series->add_option("--c", sc);
    series->add_option("--x", sx)->required();
    series->add_option("--xi", sxi, "imaginary part of x");
    series->add_option("--terms", sterms);

    // catalog
    auto* catalog = app.add_subcommand("catalog", "emit the built-in identity catalog");
    std::string cat_out;
    catalog->add_option("--out", cat_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed())
            return run_verify(identity, spec_file, primes_spec, single_p, report_path, format,
                              parallelism);
        if (count->parsed()) {
            CurveFamily fam(cN, parse_ll_list(cexps));
            auto lambda = parse_ll_list(clambda);
            unsigned hi = static_cast<unsigned>(fam.r() + 1);
            if (!cdegrees.empty()) hi = std::max(hi, parse_degree_range(cdegrees).second);
            Json j = charpoly_report(fam, lambda, ck, cp, hi);
            auto F = FiniteField::make(cp, 1);
            auto rep = curve_affine_count(fam, lambda, F);
            Json eigen = Json::array();
            for (const auto& s : rep.eigen_sums) eigen.push_back(cyclo_to_json(s));
            j["affine_count"] = {{"count", rep.count},
                                 {"x_count", rep.x_count},
                                 {"eigen_sums", eigen},
                                 {"decomposition_exact", rep.decomposition_exact}};
            write_output(cout_path, j.dump(2));
            return 0;
        }
        if (lfactor->parsed()) {
            CurveFamily fam(lN, parse_ll_list(lexps));
            auto lambda = parse_ll_list(llambda);
            unsigned hi = static_cast<unsigned>(fam.r() + 1);
            if (!ldegrees.empty()) hi = std::max(hi, parse_degree_range(ldegrees).second);
            Json j = charpoly_report(fam, lambda, lk, lp, hi);
            write_output(lout_path, j.dump(2));
            return 0;
        }
        if (rigidity->parsed()) {
            std::ifstream in(tuple_path);
            if (!in) throw UsageError("cannot open tuple file " + tuple_path);
            MonodromyTuple t = tuple_from_json(Json::parse(in));
            std::cout << rigidity_index(t) << "\n";
            return 0;
        }
        if (convolve->parsed()) {
            std::ifstream in(mt_path);
            if (!in) throw UsageError("cannot open tuple file " + mt_path);
            MatrixTuple t = matrix_tuple_from_json(Json::parse(in));
            MatrixTuple out = middle_convolution(t, CycloNum::root_of_unity(lam_level, lam_exp));
            write_output(mc_out, matrix_tuple_to_json(out).dump(2));
            return 0;
        }
        if (series->parsed()) {
            auto v = f21_series(Rational::parse(sa), Rational::parse(sb), Rational::parse(sc),
                                {sx, sxi}, sterms);
            char buf[80];
            std::snprintf(buf, sizeof buf, "%.15g %.15g", v.real(), v.imag());
            std::cout << buf << "\n";
            return 0;
        }
        if (catalog->parsed()) {
            Json j;
            j["schema"] = "hypertrace/catalog/1";
            Json entries = Json::array();
            for (const auto& spec : builtin_catalog()) entries.push_back(spec_to_json(spec));
            j["identities"] = entries;
            write_output(cat_out, j.dump(2));
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
