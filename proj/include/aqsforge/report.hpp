#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "aqsforge/forgery.hpp"

namespace aqsforge {

/// Insertion-ordered JSON so report key order is fixed by construction order.
using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchemaVersion = "report-v1";

/// Versioned envelope every command emits. Everything except timing_ms is a
/// pure function of the inputs and seed.
struct Report {
    std::string command;
    Json inputs;
    Json results;
    std::int64_t timing_ms = 0;

    Json to_json() const;
};

/// Deterministic serializer: two-space indent, keys in insertion order,
/// floats printed with %.17g (shortest form that still round-trips binary64
/// is avoided on purpose; a fixed precision keeps bytes stable across
/// library versions). Arrays of primitives are kept on one line.
std::string dump_json(const Json& j);

/// Writes content to path via a temp file in the same directory plus rename,
/// so readers never observe a partial report.
void write_atomic(const std::string& path, const std::string& content);

Json json_complex(Complex z);
Json json_ket(const Ket2& v);
Json json_mat(const Mat2& m);
Json json_coeffs(const PauliCoeffs& w);
Json json_perm(Perm p);
Json json_witness(const ForgeryWitness& w);

/// Parsers for the JSON value shapes the CLI consumes. Structural problems
/// (wrong type, wrong length, missing key) throw ContractError with a
/// message naming the offending field; value-level contracts are enforced
/// by the domain constructors.
Complex parse_complex(const Json& j, const char* what);
Ket2 parse_ket(const Json& j, const char* what);
Mat2 parse_mat(const Json& j, const char* what);
PauliCoeffs parse_coeffs(const Json& j, const char* what);
ForgeryWitness parse_witness(const Json& j);

}  // namespace aqsforge
