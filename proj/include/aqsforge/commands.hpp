#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aqsforge/protocol.hpp"
#include "aqsforge/report.hpp"

namespace aqsforge::cli {

/// Command-line-level mistakes: unknown preset, unparsable inline values,
/// conflicting or missing flags, unreadable files. Exit code 2.
/// Problems inside file contents (bad shape, non-unitary matrix) surface as
/// ContractError instead and map to exit code 3.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CommonOptions {
    double tol = kAnalyticTol;
    std::uint64_t seed = 42;
    std::string out;           // report file; empty = stdout only
    bool json_stdout = false;  // force the JSON onto stdout even with --out
};

/// Assistant-unitary source; exactly one member may be set.
struct WSpec {
    std::string preset;        // H | Wa | T | I
    std::string w_inline;      // "w0,w1,w2,w3"
    std::string w_json_path;   // file with {"w":[w0,w1,w2,w3]}
    std::string matrix_path;   // file with {"m":[[{re,im},..],[..]]}
};

/// Rotation-set source: either the canonical three-Pauli set or exactly two
/// tokens, each `sx`/`sy`/`sz` or `@file` with a matrix JSON.
struct RotationSpec {
    bool three_pauli = false;
    std::vector<std::string> tokens;
};

struct AttackOptions {
    std::string witness_path;  // empty: construct the witness in-line
    bool swap_test = false;
    long long copies = 100;
};

struct SurveyOptions {
    std::size_t count = 1000;
};

struct OracleOptions {
    std::size_t starts = 100;
    bool restrict_lemma1 = false;
    std::size_t threads = 0;
};

PauliCoeffs preset_coeffs(const std::string& name);
PauliCoeffs resolve_w(const WSpec& spec);
SchemeSpec resolve_scheme(const WSpec& w, const RotationSpec& rot);

Report cmd_classify(const WSpec& w, const CommonOptions& opt);
Report cmd_witness(const WSpec& w, const RotationSpec& rot, const CommonOptions& opt);
Report cmd_attack(const WSpec& w, const RotationSpec& rot, const AttackOptions& attack,
                  const CommonOptions& opt);
Report cmd_survey(const SurveyOptions& survey, const CommonOptions& opt);
Report cmd_oracle(const WSpec& w, const RotationSpec& rot, const OracleOptions& oracle,
                  const CommonOptions& opt);

/// Serializes the report and routes it: --out writes atomically (with a
/// one-line confirmation on stdout), --json echoes the JSON to stdout, and
/// with neither the JSON goes to stdout.
void emit_report(const Report& report, const CommonOptions& opt);

/// Full argv interface. Returns the process exit code:
/// 0 success (including unforgeable verdicts), 2 usage error, 3 data error,
/// 4 internal inconsistency.
int run_cli(int argc, const char* const* argv);

}  // namespace aqsforge::cli
