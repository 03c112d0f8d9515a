#include "aqsforge/commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "aqsforge/errors.hpp"

namespace aqsforge::cli {
namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

/// File witnesses may carry drift from re-serialization or from a looser
/// tolerance at creation time; the attack replays them and reports honest
/// per-key verdicts. Beyond this bound the file no longer describes the
/// given scheme at all and is rejected as stale data.
constexpr double kFileWitnessTol = 0.25;

Json load_json_file(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in) throw UsageError(std::string(what) + ": cannot read " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ContractError(std::string(what) + ": " + path + " is not valid JSON (" +
                            e.what() + ")");
    }
}

const Json& json_field(const Json& j, const char* key, const char* where) {
    if (!j.is_object()) throw ContractError(std::string(where) + ": expected a JSON object");
    const auto it = j.find(key);
    if (it == j.end())
        throw ContractError(std::string(where) + ": missing key \"" + key + "\"");
    return *it;
}

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> parts;
    std::string::size_type pos = 0;
    while (true) {
        const auto comma = text.find(',', pos);
        parts.push_back(text.substr(pos, comma - pos));
        if (comma == std::string::npos) return parts;
        pos = comma + 1;
    }
}

double parse_double_token(const std::string& token) {
    const auto b = token.find_first_not_of(" \t");
    const auto e = token.find_last_not_of(" \t");
    if (b == std::string::npos) throw UsageError("--w: empty component");
    const char* first = token.data() + b;
    const char* last = token.data() + e + 1;
    double value = 0.0;
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last)
        throw UsageError("--w: cannot parse \"" + token + "\" as a number");
    return value;
}

/// Source descriptor for the report; never a filesystem path, so reports
/// stay byte-identical across working directories.
std::string w_source_label(const WSpec& spec) {
    if (!spec.preset.empty()) return "preset:" + spec.preset;
    if (!spec.w_inline.empty()) return "w-inline";
    if (!spec.w_json_path.empty()) return "w-json";
    return "w-matrix";
}

Mat2 rotation_from_token(const std::string& token) {
    if (token == "sx") return sigma(1);
    if (token == "sy") return sigma(2);
    if (token == "sz") return sigma(3);
    if (!token.empty() && token.front() == '@') {
        const Json j = load_json_file(token.substr(1), "rotation file");
        return parse_mat(json_field(j, "m", "rotation file"), "rotation matrix");
    }
    throw UsageError("unknown rotation \"" + token + "\" (expected sx, sy, sz, or @file)");
}

SchemeSpec scheme_from(const PauliCoeffs& w, const RotationSpec& rot) {
    if (rot.three_pauli && !rot.tokens.empty())
        throw UsageError("--three-pauli and --rotations are mutually exclusive");
    if (rot.three_pauli) return SchemeSpec::three_pauli(w);
    if (rot.tokens.size() != 2)
        throw UsageError("specify --three-pauli or --rotations with exactly two entries");
    return SchemeSpec::two_rotation(w, rotation_from_token(rot.tokens[0]),
                                    rotation_from_token(rot.tokens[1]));
}

Json rotation_labels(const RotationSpec& rot) {
    Json arr = Json::array();
    if (rot.three_pauli) {
        arr.push_back("sx");
        arr.push_back("sy");
        arr.push_back("sz");
    } else {
        for (const auto& tok : rot.tokens)
            arr.push_back(!tok.empty() && tok.front() == '@' ? std::string("matrix-file")
                                                             : tok);
    }
    return arr;
}

Json w_only_inputs(const WSpec& wspec, const PauliCoeffs& w) {
    Json j;
    j["w_source"] = w_source_label(wspec);
    j["w"] = json_coeffs(w);
    return j;
}

Json scheme_inputs(const WSpec& wspec, const PauliCoeffs& w, const RotationSpec& rot) {
    Json j = w_only_inputs(wspec, w);
    j["rotation_kind"] = rot.three_pauli ? "three-pauli" : "two-general";
    j["rotations"] = rotation_labels(rot);
    return j;
}

Json triples_json(const ClassificationReport& rep) {
    Json arr = Json::array();
    for (const AbgTriple& t : rep.triples) {
        Json e;
        e["perm"] = json_perm(t.perm);
        e["alpha"] = t.alpha;
        e["beta"] = t.beta;
        e["gamma"] = t.gamma;
        e["product"] = t.product();
        arr.push_back(std::move(e));
    }
    return arr;
}

Json member_json(const ClassificationReport& rep) {
    Json arr = Json::array();
    for (const Perm& p : rep.member_of) arr.push_back(json_perm(p));
    return arr;
}

Json classification_json(const ClassificationReport& rep) {
    Json j;
    j["triples"] = triples_json(rep);
    j["member_of"] = member_json(rep);
    j["min_abs_product"] = rep.min_abs_product();
    return j;
}

Json verdicts_json(const AttackReport& rep) {
    Json arr = Json::array();
    for (const KeyVerdict& v : rep.verdicts) {
        Json e;
        e["j"] = v.key.j;
        e["k"] = v.key.k;
        e["accepted"] = v.accepted;
        e["overlap_gap"] = v.overlap_gap;
        if (v.accept_count) e["accept_count"] = *v.accept_count;
        arr.push_back(std::move(e));
    }
    return arr;
}

}  // namespace

PauliCoeffs preset_coeffs(const std::string& name) {
    if (name == "H") return PauliCoeffs{0.5, 0.5, 0.5, 0.5};
    if (name == "Wa") return PauliCoeffs{0.0, 0.5, 0.5, std::sqrt(0.5)};
    if (name == "T") {
        const double s = 1.0 / std::sqrt(3.0);
        return PauliCoeffs{0.0, s, s, s};
    }
    if (name == "I") return PauliCoeffs{1.0, 0.0, 0.0, 0.0};
    throw UsageError("unknown preset \"" + name + "\" (expected H, Wa, T, or I)");
}

PauliCoeffs resolve_w(const WSpec& spec) {
    const int sources = int(!spec.preset.empty()) + int(!spec.w_inline.empty()) +
                        int(!spec.w_json_path.empty()) + int(!spec.matrix_path.empty());
    if (sources != 1)
        throw UsageError("specify exactly one of --preset, --w, --w-json, --w-matrix");
    if (!spec.preset.empty()) return preset_coeffs(spec.preset);
    if (!spec.w_inline.empty()) {
        const auto parts = split_csv(spec.w_inline);
        if (parts.size() != 4) throw UsageError("--w: expected four comma-separated numbers");
        double c[4];
        for (int i = 0; i < 4; ++i) c[i] = parse_double_token(parts[i]);
        return PauliCoeffs{c[0], c[1], c[2], c[3]};
    }
    if (!spec.w_json_path.empty()) {
        const Json j = load_json_file(spec.w_json_path, "coefficient file");
        return parse_coeffs(json_field(j, "w", "coefficient file"), "coefficient file w");
    }
    const Json j = load_json_file(spec.matrix_path, "matrix file");
    return matrix_to_coeffs(parse_mat(json_field(j, "m", "matrix file"), "matrix file m"));
}

SchemeSpec resolve_scheme(const WSpec& w, const RotationSpec& rot) {
    return scheme_from(resolve_w(w), rot);
}

Report cmd_classify(const WSpec& wspec, const CommonOptions& opt) {
    const auto start = Clock::now();
    const PauliCoeffs w = resolve_w(wspec);
    const ClassificationReport rep = classify(w, opt.tol);

    Report r;
    r.command = "classify";
    r.inputs = w_only_inputs(wspec, w);
    r.inputs["tol"] = opt.tol;
    r.inputs["seed"] = opt.seed;
    Json res;
    res["triples"] = triples_json(rep);
    res["member_of"] = member_json(rep);
    res["forgeable"] = rep.forgeable;
    res["min_abs_product"] = rep.min_abs_product();
    if (rep.forgeable) {
        const SchemeSpec scheme = SchemeSpec::three_pauli(w);
        res["witness"] = json_witness(
            construct_three_rotation_witness(scheme, rep.member_of.front(), opt.tol));
    }
    r.results = std::move(res);
    r.timing_ms = ms_since(start);
    return r;
}

Report cmd_witness(const WSpec& wspec, const RotationSpec& rot, const CommonOptions& opt) {
    const auto start = Clock::now();
    const PauliCoeffs w = resolve_w(wspec);
    const SchemeSpec scheme = scheme_from(w, rot);

    Report r;
    r.command = "witness";
    r.inputs = scheme_inputs(wspec, w, rot);
    r.inputs["tol"] = opt.tol;
    r.inputs["seed"] = opt.seed;
    Json res;
    if (scheme.kind() == RotationKind::two_general) {
        res["forgeable"] = true;
        res["witness"] = json_witness(find_two_rotation_witness(scheme));
    } else {
        const ThreeRotationDecision decision = classify_three_rotation(scheme, opt.tol);
        res["forgeable"] = decision.forgeable;
        res["classification"] = classification_json(decision.report);
        if (decision.witness) res["witness"] = json_witness(*decision.witness);
    }
    r.results = std::move(res);
    r.timing_ms = ms_since(start);
    return r;
}

Report cmd_attack(const WSpec& wspec, const RotationSpec& rot, const AttackOptions& attack,
                  const CommonOptions& opt) {
    const auto start = Clock::now();
    if (attack.swap_test && attack.copies < 1)
        throw UsageError("--copies must be at least 1");
    const PauliCoeffs w = resolve_w(wspec);
    const SchemeSpec scheme = scheme_from(w, rot);

    ForgeryWitness witness;
    double witness_tol = opt.tol;
    if (!attack.witness_path.empty()) {
        witness = parse_witness(load_json_file(attack.witness_path, "witness file"));
        witness_tol = kFileWitnessTol;
    } else if (scheme.kind() == RotationKind::three_pauli) {
        ThreeRotationDecision decision = classify_three_rotation(scheme, opt.tol);
        if (!decision.forgeable)
            throw ContractError(
                "scheme admits no forgeable message at this tolerance; nothing to attack");
        witness = std::move(*decision.witness);
    } else {
        witness = find_two_rotation_witness(scheme);
    }

    const AttackMode mode{attack.swap_test, attack.copies, opt.seed};
    const AttackReport rep = run_attack(scheme, witness, mode, witness_tol);
    // Report the deviation against this scheme, not whatever the file said.
    witness.deviation = deviation(scheme, witness.q_op, witness.message);

    Report r;
    r.command = "attack";
    r.inputs = scheme_inputs(wspec, w, rot);
    r.inputs["witness_source"] = attack.witness_path.empty() ? "inline" : "file";
    r.inputs["swap_test"] = attack.swap_test;
    r.inputs["copies"] = attack.copies;
    r.inputs["tol"] = opt.tol;
    r.inputs["seed"] = opt.seed;
    Json res;
    res["witness"] = json_witness(witness);
    res["verdicts"] = verdicts_json(rep);
    res["all_keys_fooled"] = rep.all_keys_fooled;
    if (rep.swap_test_stats) {
        Json st;
        st["copies"] = rep.swap_test_stats->copies;
        st["accept_count"] = rep.swap_test_stats->accept_count;
        res["swap_test"] = std::move(st);
    }
    r.results = std::move(res);
    r.timing_ms = ms_since(start);
    return r;
}

Report cmd_survey(const SurveyOptions& survey, const CommonOptions& opt) {
    const auto start = Clock::now();
    if (survey.count < 1) throw UsageError("--count must be at least 1");
    const std::vector<PauliCoeffs> samples = haar_sample(opt.seed, survey.count);

    std::size_t forgeable_count = 0;
    double min_abs = std::numeric_limits<double>::infinity();
    for (const PauliCoeffs& w : samples) {
        const ClassificationReport rep = classify(w, opt.tol);
        if (rep.forgeable) ++forgeable_count;
        min_abs = std::min(min_abs, rep.min_abs_product());
    }

    Report r;
    r.command = "survey";
    r.inputs["count"] = survey.count;
    r.inputs["tol"] = opt.tol;
    r.inputs["seed"] = opt.seed;
    r.results["sample_count"] = survey.count;
    r.results["forgeable_count"] = forgeable_count;
    r.results["forgeable_fraction"] =
        static_cast<double>(forgeable_count) / static_cast<double>(survey.count);
    r.results["min_abs_product"] = min_abs;
    r.timing_ms = ms_since(start);
    return r;
}

Report cmd_oracle(const WSpec& wspec, const RotationSpec& rot, const OracleOptions& oracle,
                  const CommonOptions& opt) {
    const auto start = Clock::now();
    if (oracle.starts < 1) throw UsageError("--starts must be at least 1");
    const PauliCoeffs w = resolve_w(wspec);
    const SchemeSpec scheme = scheme_from(w, rot);
    const SearchResult res = brute_force_search(scheme, oracle.starts, opt.seed,
                                                oracle.restrict_lemma1, oracle.threads);

    Report r;
    r.command = "oracle";
    r.inputs = scheme_inputs(wspec, w, rot);
    r.inputs["starts"] = oracle.starts;
    r.inputs["restrict_lemma1"] = oracle.restrict_lemma1;
    r.inputs["threads"] = oracle.threads;
    r.inputs["tol"] = opt.tol;
    r.inputs["seed"] = opt.seed;
    r.results["min_deviation"] = res.min_deviation;
    r.results["best_q"] = json_coeffs(res.best_q);
    r.results["best_message"] = json_ket(res.best_message);
    r.results["starts"] = res.starts;
    r.results["seed"] = res.seed;
    r.results["lemma1_restricted"] = res.lemma1_restricted;
    r.timing_ms = ms_since(start);
    return r;
}

void emit_report(const Report& report, const CommonOptions& opt) {
    const std::string text = dump_json(report.to_json());
    if (!opt.out.empty()) {
        try {
            write_atomic(opt.out, text);
        } catch (const std::runtime_error& e) {
            throw UsageError("cannot write " + opt.out + ": " + e.what());
        }
        if (opt.json_stdout)
            std::cout << text;
        else
            std::cout << "wrote " << opt.out << "\n";
    } else {
        std::cout << text;
    }
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Forgery analysis for arbitrated quantum signature schemes"};
    app.require_subcommand(1);

    CommonOptions common;
    WSpec wspec;
    RotationSpec rot;
    AttackOptions attack;
    SurveyOptions survey;
    OracleOptions oracle;

    const auto add_common = [&common](CLI::App* sub) {
        sub->add_option("--tol", common.tol, "decision tolerance");
        sub->add_option("--seed", common.seed, "RNG seed");
        sub->add_option("--out", common.out, "write the report to this file");
        sub->add_flag("--json", common.json_stdout,
                      "print the report JSON to stdout even with --out");
    };
    const auto add_w = [&wspec](CLI::App* sub) {
        sub->add_option("--preset", wspec.preset, "built-in unitary: H, Wa, T, or I");
        sub->add_option("--w", wspec.w_inline, "coefficients w0,w1,w2,w3");
        sub->add_option("--w-json", wspec.w_json_path, "JSON file with {\"w\": [...]}");
        sub->add_option("--w-matrix", wspec.matrix_path,
                        "JSON file with {\"m\": [[{re,im},..],[..]]}");
    };
    const auto add_rot = [&rot](CLI::App* sub) {
        sub->add_flag("--three-pauli", rot.three_pauli, "use the sx, sy, sz rotation set");
        sub->add_option("--rotations", rot.tokens,
                        "two rotations, each sx|sy|sz or @matrix-file")
            ->delimiter(',');
    };

    CLI::App* c_classify = app.add_subcommand(
        "classify", "test the assistant unitary for forgeable-stratum membership");
    add_w(c_classify);
    add_common(c_classify);

    CLI::App* c_witness =
        app.add_subcommand("witness", "construct a forgeable-message certificate");
    add_w(c_witness);
    add_rot(c_witness);
    add_common(c_witness);

    CLI::App* c_attack =
        app.add_subcommand("attack", "replay a forged pair against every secret key");
    add_w(c_attack);
    add_rot(c_attack);
    c_attack->add_option("--witness", attack.witness_path,
                         "witness JSON file (default: construct in-line)");
    c_attack->add_flag("--swap-test", attack.swap_test,
                       "verify with the probabilistic swap test");
    c_attack->add_option("--copies", attack.copies,
                         "signature copies per swap-test verification");
    add_common(c_attack);

    CLI::App* c_survey =
        app.add_subcommand("survey", "classify Haar-random assistant unitaries");
    c_survey->add_option("--count", survey.count, "number of samples");
    add_common(c_survey);

    CLI::App* c_oracle = app.add_subcommand(
        "oracle", "multi-start minimization of the deviation functional");
    add_w(c_oracle);
    add_rot(c_oracle);
    c_oracle->add_option("--starts", oracle.starts, "number of random starts");
    c_oracle->add_flag("--restrict-lemma1", oracle.restrict_lemma1,
                       "search only operators with two vanishing coefficients");
    c_oracle->add_option("--threads", oracle.threads, "worker threads (0 = hardware)");
    add_common(c_oracle);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Report report;
        if (c_classify->parsed())
            report = cmd_classify(wspec, common);
        else if (c_witness->parsed())
            report = cmd_witness(wspec, rot, common);
        else if (c_attack->parsed())
            report = cmd_attack(wspec, rot, attack, common);
        else if (c_survey->parsed())
            report = cmd_survey(survey, common);
        else
            report = cmd_oracle(wspec, rot, oracle, common);
        emit_report(report, common);
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const InternalInconsistencyError& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return 4;
    } catch (const ContractError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const UnsupportedInputError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace aqsforge::cli
