#include "aqsforge/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace aqsforge {

namespace {

void append_float(std::string& out, double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

bool all_primitive(const Json& arr) {
    for (const Json& e : arr) {
        if (e.is_object() || e.is_array()) {
            return false;
        }
    }
    return true;
}

void dump_rec(const Json& j, std::string& out, int indent) {
    const std::string pad(indent, ' ');
    const std::string pad_in(indent + 2, ' ');
    switch (j.type()) {
        case Json::value_t::null:
            out += "null";
            return;
        case Json::value_t::boolean:
            out += j.get<bool>() ? "true" : "false";
            return;
        case Json::value_t::number_integer:
            out += std::to_string(j.get<std::int64_t>());
            return;
        case Json::value_t::number_unsigned:
            out += std::to_string(j.get<std::uint64_t>());
            return;
        case Json::value_t::number_float:
            append_float(out, j.get<double>());
            return;
        case Json::value_t::string:
            out += Json(j.get<std::string>()).dump();
            return;
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            if (all_primitive(j)) {
                out += "[";
                bool first = true;
                for (const Json& e : j) {
                    if (!first) {
                        out += ", ";
                    }
                    first = false;
                    dump_rec(e, out, 0);
                }
                out += "]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const Json& e : j) {
                if (!first) {
                    out += ",\n";
                }
                first = false;
                out += pad_in;
                dump_rec(e, out, indent + 2);
            }
            out += "\n" + pad + "]";
            return;
        }
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) {
                    out += ",\n";
                }
                first = false;
                out += pad_in + Json(it.key()).dump() + ": ";
                dump_rec(it.value(), out, indent + 2);
            }
            out += "\n" + pad + "}";
            return;
        }
        default:
            throw InternalInconsistencyError("dump_json: unsupported JSON value type");
    }
}

const Json& field(const Json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key)) {
        throw ContractError(std::string(what) + ": missing field \"" + key + "\"");
    }
    return j.at(key);
}

double number_field(const Json& j, const char* what) {
    if (!j.is_number()) {
        throw ContractError(std::string(what) + ": expected a number");
    }
    return j.get<double>();
}

}  // namespace

Json Report::to_json() const {
    Json j;
    j["schema_version"] = kReportSchemaVersion;
    j["command"] = command;
    j["inputs"] = inputs;
    j["results"] = results;
    j["timing_ms"] = timing_ms;
    return j;
}

std::string dump_json(const Json& j) {
    std::string out;
    dump_rec(j, out, 0);
    out += "\n";
    return out;
}

void write_atomic(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        }
        f << content;
        f.flush();
        if (!f) {
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, target);
}

Json json_complex(Complex z) {
    Json j;
    j["re"] = z.real();
    j["im"] = z.imag();
    return j;
}

Json json_ket(const Ket2& v) { return Json::array({json_complex(v.c0), json_complex(v.c1)}); }

Json json_mat(const Mat2& m) {
    return Json::array({Json::array({json_complex(m.a00), json_complex(m.a01)}),
                        Json::array({json_complex(m.a10), json_complex(m.a11)})});
}

Json json_coeffs(const PauliCoeffs& w) { return Json::array({w.w0, w.w1, w.w2, w.w3}); }

Json json_perm(Perm p) { return Json::array({p.l, p.m, p.n}); }

Json json_witness(const ForgeryWitness& w) {
    Json j;
    j["message"] = json_ket(w.message);
    j["q"] = json_coeffs(matrix_to_coeffs(w.q_op));
    j["target"] = json_ket(w.target);
    j["deviation"] = w.deviation;
    return j;
}

Complex parse_complex(const Json& j, const char* what) {
    return Complex(number_field(field(j, "re", what), what),
                   number_field(field(j, "im", what), what));
}

Ket2 parse_ket(const Json& j, const char* what) {
    if (!j.is_array() || j.size() != 2) {
        throw ContractError(std::string(what) + ": expected an array of 2 complex entries");
    }
    return Ket2{parse_complex(j.at(0), what), parse_complex(j.at(1), what)};
}

Mat2 parse_mat(const Json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j.at(0).is_array() || j.at(0).size() != 2 ||
        !j.at(1).is_array() || j.at(1).size() != 2) {
        throw ContractError(std::string(what) + ": expected a 2x2 array of complex entries");
    }
    return Mat2{parse_complex(j.at(0).at(0), what), parse_complex(j.at(0).at(1), what),
                parse_complex(j.at(1).at(0), what), parse_complex(j.at(1).at(1), what)};
}

PauliCoeffs parse_coeffs(const Json& j, const char* what) {
    if (!j.is_array() || j.size() != 4) {
        throw ContractError(std::string(what) + ": expected an array of 4 reals");
    }
    return PauliCoeffs{number_field(j.at(0), what), number_field(j.at(1), what),
                       number_field(j.at(2), what), number_field(j.at(3), what)};
}

ForgeryWitness parse_witness(const Json& j) {
    // Accept either a bare witness object or a full report that embeds one.
    const Json* w = &j;
    if (j.is_object() && j.contains("results")) {
        const Json& res = j.at("results");
        if (res.is_object() && res.contains("witness")) {
            w = &res.at("witness");
        }
    }
    ForgeryWitness out;
    out.message = parse_ket(field(*w, "message", "witness"), "witness message");
    // coeffs_to_matrix enforces unit norm, so a corrupted q is a data error.
    out.q_op = coeffs_to_matrix(parse_coeffs(field(*w, "q", "witness"), "witness q"));
    out.target = parse_ket(field(*w, "target", "witness"), "witness target");
    out.deviation = number_field(field(*w, "deviation", "witness"), "witness deviation");
    return out;
}

}  // namespace aqsforge
