// Command-line frontend: parses a defining function, runs the requested
// computation, and emits a deterministic JSON report on stdout.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "crgeo/catlin.hpp"
#include "crgeo/curves.hpp"
#include "crgeo/errors.hpp"
#include "crgeo/forms.hpp"
#include "crgeo/kohn.hpp"
#include "crgeo/parser.hpp"
#include "crgeo/verify.hpp"
#include "crgeo/weights.hpp"

using json = nlohmann::ordered_json;
using namespace crgeo;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw precondition_error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<Scalar> parse_point(const std::string& text, int n) {
    std::vector<Scalar> pt(static_cast<size_t>(n), Scalar(0));
    if (text.empty()) return pt;
    const auto parts = split_commas(text);
    if (static_cast<int>(parts.size()) != n)
        throw precondition_error("point must have exactly " + std::to_string(n) + " coordinates");
    for (int i = 0; i < n; ++i) pt[static_cast<size_t>(i)] = parse_scalar(parts[static_cast<size_t>(i)]);
    return pt;
}

std::vector<Scalar> parse_coeff_set(const std::string& text) {
    std::vector<Scalar> out;
    for (const std::string& p : split_commas(text)) out.push_back(parse_scalar(p));
    return out;
}

QExt parse_qext_arg(const std::string& text) {
    if (text == "inf") return QExt::infinity();
    const Scalar s = parse_scalar(text);
    if (!s.is_real()) throw precondition_error("expected a rational value or 'inf'");
    return QExt(s.re());
}

json weight_json(const Weight& w) {
    json a = json::array();
    for (const QExt& e : w.entries) a.push_back(e.str());
    return a;
}

json point_json(const std::vector<Scalar>& pt) {
    json a = json::array();
    for (const Scalar& s : pt) a.push_back(s.str());
    return a;
}

json multitype_json(const MultitypeResult& res) {
    json out;
    out["ctype"] = weight_json(res.prefix);
    out["rank"] = res.rank_p;
    out["status"] = res.status == MultitypeStatus::complete           ? "complete"
                    : res.status == MultitypeStatus::infinite_entries ? "infinite"
                                                                      : "inconclusive";
    json bs;
    bs["rank"] = res.system.rank_p;
    json funcs = json::array();
    for (const Polynomial& f : res.system.functions) funcs.push_back(f.str());
    bs["functions"] = funcs;
    json fields = json::array();
    for (const VectorField& f : res.system.fields) fields.push_back(f.str());
    bs["fields"] = fields;
    json lists = json::array();
    for (const ListSpec& l : res.system.chosen_lists) lists.push_back(l.str());
    bs["lists"] = lists;
    out["boundary_system"] = bs;
    return out;
}

json multitype_trace_json(const MultitypeResult& res) {
    json trace = json::array();
    for (const StageRecord& st : res.trace) {
        json s;
        s["nu"] = st.nu;
        s["case"] = st.case_tag;
        s["candidate_fields"] = st.candidate_fields;
        json ls = json::array();
        for (const ListCandidateRecord& lr : st.lists) {
            json l;
            l["list"] = lr.encoding;
            l["counts"] = lr.counts;
            l["c"] = lr.c_value.str();
            l["value"] = lr.value_at_point;
            l["field"] = lr.field_index;
            if (lr.chosen) l["chosen"] = true;
            ls.push_back(std::move(l));
        }
        s["lists"] = ls;
        if (!st.chosen_field.empty()) s["chosen_field"] = st.chosen_field;
        if (!st.r_nu.empty()) s["r_nu"] = st.r_nu;
        if (!st.xy_choice.empty()) s["xy_choice"] = st.xy_choice;
        if (!st.note.empty()) s["note"] = st.note;
        trace.push_back(std::move(s));
    }
    return trace;
}

struct Common {
    std::string file = "-";
    int n = 0;
    bool timing = false;
};

int emit(const json& envelope, int code) {
    std::cout << envelope.dump(2) << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact CR-geometry invariants of polynomial hypersurfaces"};
    app.require_subcommand(1);

    Common common;
    std::string point_text;
    int q = 1;
    int degree_bound = 3, support_bound = 1;
    std::string coeffs_text;
    int trials = 8;
    std::uint64_t seed = 1;
    int length_cap = 0, ansatz_degree = 2;
    bool with_trace = false;
    int max_steps = 3, j_max = 0;
    std::string cap_text, check_text;
    bool strict_positivity = false;
    std::string t_text = "inf", t_source = "asserted";
    int samples = 20;
    bool serial = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-f,--file", common.file, "input file with the defining function ('-' = stdin)");
        sub->add_option("-n,--n", common.n, "ambient dimension (0 = infer from variables)");
        sub->add_flag("--timing", common.timing, "include wall-clock timing in the report");
        sub->add_flag("--serial", serial, "run enumeration kernels on a single thread");
        sub->add_option("--point", point_text, "base point as comma-separated coordinates (default 0)");
    };
    auto add_budget = [&](CLI::App* sub) {
        sub->add_option("--degree-bound", degree_bound, "curve component degree bound");
        sub->add_option("--support", support_bound, "max nonzero terms per curve component");
        sub->add_option("--coeffs", coeffs_text, "comma-separated curve coefficient set");
    };

    CLI::App* levi = app.add_subcommand("levi", "Levi-determinant coefficients and vanishing order");
    add_common(levi);
    levi->add_option("--q", q, "form level q in [1, n-1]");

    CLI::App* type = app.add_subcommand("type", "searched lower bound for the D'Angelo 1-type");
    add_common(type);
    add_budget(type);

    CLI::App* qtype = app.add_subcommand("qtype", "seeded-embedding estimate of the q-type");
    add_common(qtype);
    add_budget(qtype);
    qtype->add_option("--q", q, "form level q in [1, n-1]");
    qtype->add_option("--trials", trials, "number of random embeddings");
    qtype->add_option("--seed", seed, "RNG seed");

    CLI::App* weights = app.add_subcommand("weights", "weight-lattice checks and multitype lower bound");
    add_common(weights);
    weights->add_option("--cap", cap_text, "entry cap for the weight enumeration (default deg r)");
    weights->add_option("--check", check_text, "check one weight, comma-separated entries ('inf' allowed)");
    weights->add_flag("--strict-positivity", strict_positivity,
                      "demand a_j > 0 in the certificate search");

    CLI::App* ctype = app.add_subcommand("ctype", "commutator multitype via boundary systems");
    add_common(ctype);
    ctype->add_option("--q", q, "form level q in [1, n-1]");
    ctype->add_option("--length-cap", length_cap, "list length cap (0 = deg r)");
    ctype->add_option("--ansatz-degree", ansatz_degree, "polynomial degree of kernel-field ansatz");
    ctype->add_flag("--trace", with_trace, "include the full list trace in the report");

    CLI::App* kohn = app.add_subcommand("kohn", "pre-radical multiplier generator chain");
    add_common(kohn);
    kohn->add_option("--q", q, "form level q in [1, n-1]");
    kohn->add_option("--max-steps", max_steps, "maximum number of steps");
    kohn->add_option("--j-max", j_max, "max gradient factors per wedge (0 = n-q)");

    CLI::App* check = app.add_subcommand("check-bound", "Levi order vs (ceil(t)-2)^(n-q)");
    add_common(check);
    add_budget(check);
    check->add_option("--q", q, "form level q in [1, n-1]");
    check->add_option("--t", t_text, "type value (rational or 'inf')");
    check->add_option("--t-source", t_source, "one of: model, asserted, searched");
    check->add_option("--trials", trials, "embedding trials when searching with q > 1");
    check->add_option("--seed", seed, "RNG seed for searched t");

    CLI::App* scan = app.add_subcommand("scan", "commutator-multitype scan over sampled boundary points");
    add_common(scan);
    scan->add_option("--q", q, "form level q in [1, n-1]");
    scan->add_option("--samples", samples, "number of boundary samples");
    scan->add_option("--seed", seed, "RNG seed");
    scan->add_option("--length-cap", length_cap, "list length cap (0 = deg r)");
    scan->add_option("--ansatz-degree", ansatz_degree, "polynomial degree of kernel-field ansatz");

    CLI11_PARSE(app, argc, argv);
    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();

    json envelope;
    envelope["tool"] = "crgeo";
    envelope["version"] = kVersion;

    const auto t0 = std::chrono::steady_clock::now();
    try {
        const std::string input = read_input(common.file);
        envelope["input_hash"] = fnv1a_hex(input);
        envelope["command"] = command;

        const Polynomial r = parse_polynomial(input, common.n);
        const int n = r.n();
        const std::vector<Scalar> point = parse_point(point_text, n);
        const Exec mode = serial ? Exec::serial : Exec::parallel;

        SearchBudget budget;
        budget.degree_bound = degree_bound;
        budget.support_bound = support_bound;
        if (!coeffs_text.empty()) budget.coeff_set = parse_coeff_set(coeffs_text);
        budget.mode = mode;

        json flags;
        flags["n"] = n;
        flags["point"] = point_json(point);
        json result;
        int code = 0;

        if (command == "levi") {
            flags["q"] = q;
            const auto coeffs = levi_coefficients(r, q);
            json carr = json::array(), oarr = json::array();
            QExt best = QExt::infinity();
            for (const Polynomial& c : coeffs) {
                carr.push_back(c.str());
                const QExt o = c.vanishing_order(point);
                oarr.push_back(o.str());
                if (o < best) best = o;
            }
            result["coefficients"] = carr;
            result["per_coefficient_orders"] = oarr;
            result["order"] = best.str();
        } else if (command == "type") {
            flags["degree_bound"] = degree_bound;
            flags["support"] = support_bound;
            const TypeSearchResult res = one_type_search(r, point, budget);
            result["lower_bound"] = res.bound.str();
            result["witness"] = res.witness.str();
            result["curves_tried"] = res.curves_tried;
        } else if (command == "qtype") {
            flags["q"] = q;
            flags["trials"] = trials;
            flags["seed"] = seed;
            const QTypeResult res = q_type_estimate(r, q, point, trials, seed, budget);
            result["estimate"] = res.estimate.str();
            json tarr = json::array();
            for (const QTypeTrial& t : res.trials) {
                json tj;
                tj["embedding"] = t.embedding.str();
                tj["bound"] = t.bound.str();
                tj["witness"] = t.witness.str();
                tarr.push_back(std::move(tj));
            }
            result["trials"] = tarr;
        } else if (command == "weights") {
            const QExt cap = cap_text.empty() ? QExt(static_cast<long>(std::max(1, r.degree())))
                                              : parse_qext_arg(cap_text);
            flags["cap"] = cap.str();
            flags["strict_positivity"] = strict_positivity;
            if (!check_text.empty()) {
                Weight w;
                for (const std::string& p : split_commas(check_text))
                    w.entries.push_back(parse_qext_arg(p));
                if (w.n() != n) throw precondition_error("weight length must equal n");
                const AdmissibilityCert cert = is_admissible_weight(w, strict_positivity);
                json cj;
                cj["weight"] = weight_json(w);
                cj["admissible"] = cert.ok;
                if (!cert.ok) cj["failing_k"] = cert.failing_k;
                json certs = json::array();
                for (const auto& a : cert.certs) certs.push_back(a);
                cj["certificates"] = certs;
                const DistinguishedCheck d = is_distinguished(r, w);
                cj["distinguished"] = d.ok;
                if (!d.ok) cj["witness"] = Polynomial::monomial(n, d.witness, Scalar(1)).str();
                result["check"] = cj;
            }
            const Weight mlb = multitype_lower_bound(r, cap, mode);
            result["multitype_lower_bound"] = weight_json(mlb);
        } else if (command == "ctype") {
            flags["q"] = q;
            flags["length_cap"] = length_cap;
            flags["ansatz_degree"] = ansatz_degree;
            MultitypeOptions opts;
            opts.q = q;
            opts.length_cap = length_cap;
            opts.ansatz_degree = ansatz_degree;
            opts.mode = mode;
            const MultitypeResult res = commutator_multitype(r, point, opts);
            result = multitype_json(res);
            if (with_trace) envelope["trace"] = multitype_trace_json(res);
            if (res.status == MultitypeStatus::inconclusive) code = 4;
        } else if (command == "kohn") {
            flags["q"] = q;
            flags["max_steps"] = max_steps;
            const KohnRunReport rep = kohn_run(r, q, point, max_steps, j_max, mode);
            result["terminated"] = rep.terminated;
            json steps = json::array();
            for (const KohnStepReport& s : rep.steps) {
                json sj;
                sj["step"] = s.step;
                sj["generators"] = s.generator_count;
                sj["min_order_excluding_r"] = s.min_order_excluding_r.str();
                sj["terminated"] = s.terminated;
                if (s.terminated) {
                    sj["witness_index"] = s.witness_index;
                    sj["witness"] =
                        rep.final_generators.gens[static_cast<size_t>(s.witness_index)].poly.str();
                }
                steps.push_back(std::move(sj));
            }
            result["steps"] = steps;
            json gens = json::array();
            for (const Generator& g : rep.final_generators.gens) {
                json gj;
                gj["poly"] = g.poly.str();
                gj["provenance"] = g.prov.str();
                gens.push_back(std::move(gj));
            }
            result["generators"] = gens;
        } else if (command == "check-bound") {
            flags["q"] = q;
            flags["t"] = t_text;
            flags["t_source"] = t_source;
            TSource src;
            if (t_source == "model")
                src = TSource::model;
            else if (t_source == "asserted")
                src = TSource::asserted;
            else if (t_source == "searched")
                src = TSource::searched;
            else
                throw precondition_error("t-source must be model, asserted, or searched");
            const QExt t = (src == TSource::searched) ? QExt::infinity() : parse_qext_arg(t_text);
            const BoundReport rep = main_bound_check(r, q, point, src, t, budget, trials, seed);
            result["t"] = rep.t.str();
            result["t_source"] = t_source;
            result["roundup"] = rep.roundup.str();
            result["order"] = rep.levi_order.str();
            result["bound"] = rep.bound.str();
            result["verdict"] = rep.verdict;
            result["certification"] = rep.certification;
        } else if (command == "scan") {
            flags["q"] = q;
            flags["samples"] = samples;
            flags["seed"] = seed;
            MultitypeOptions opts;
            opts.q = q;
            opts.length_cap = length_cap;
            opts.ansatz_degree = ansatz_degree;
            opts.mode = mode;
            const ScanReport rep = lowest_stratum_scan(r, q, samples, seed, opts);
            result["base_ctype"] = weight_json(rep.base_ctype);
            json entries = json::array();
            for (const ScanSample& s : rep.entries) {
                json sj;
                sj["point"] = point_json(s.point);
                sj["ok"] = s.ok;
                if (!s.error.empty()) sj["error"] = s.error;
                if (s.ctype.n() > 0) sj["ctype"] = weight_json(s.ctype);
                if (s.ok) sj["levi_order"] = s.levi_order.str();
                entries.push_back(std::move(sj));
            }
            result["entries"] = entries;
            result["has_min"] = rep.has_min;
            if (rep.has_min) {
                result["lex_min"] = weight_json(rep.lex_min);
                result["min_point"] = point_json(rep.min_point);
                result["min_is_one_two"] = rep.min_is_one_two;
                result["levi_order_at_min"] = rep.levi_order_at_min.str();
            }
            result["semicontinuity_ok"] = rep.semicontinuity_ok;
        }

        envelope["flags"] = flags;
        envelope["result"] = result;
        if (envelope.contains("trace")) {
            // keep the envelope key order: result precedes trace
            json tr = envelope["trace"];
            envelope.erase("trace");
            envelope["trace"] = tr;
        }
        if (common.timing) {
            const auto t1 = std::chrono::steady_clock::now();
            envelope["timing_ms"] =
                std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        }
        return emit(envelope, code);
    } catch (const parse_error& e) {
        envelope["error"] = {{"kind", "parse"}, {"message", e.what()}, {"line", e.line}, {"col", e.col}};
        return emit(envelope, 2);
    } catch (const precondition_error& e) {
        envelope["error"] = {{"kind", "precondition"}, {"message", e.what()}};
        return emit(envelope, 3);
    } catch (const inconclusive_error& e) {
        envelope["error"] = {{"kind", "inconclusive"}, {"message", e.what()}};
        return emit(envelope, 4);
    } catch (const std::exception& e) {
        envelope["error"] = {{"kind", "internal"}, {"message", e.what()}};
        return emit(envelope, 1);
    }
}
