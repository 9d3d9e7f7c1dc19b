#include "mdsforge/io.hpp"

#include <cctype>

namespace mdsforge {

namespace {

std::string strip(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace((unsigned char)s[b])) ++b;
    while (e > b && std::isspace((unsigned char)s[e - 1])) --e;
    return s.substr(b, e - b);
}

uint64_t entry_from_json(const Field& f, const nlohmann::json& v, size_t i, size_t j) {
    const std::string where =
        "rows[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]";
    if (v.is_string()) {
        try {
            return f.parse_element(v.get<std::string>());
        } catch (const std::exception& e) {
            throw std::invalid_argument(where + ": " + e.what());
        }
    }
    if (v.is_number_unsigned()) {
        const uint64_t code = v.get<uint64_t>();
        if (code >= f.q())
            throw std::invalid_argument(where + ": code " + std::to_string(code) +
                                        " is out of range for this field");
        return code;
    }
    throw std::invalid_argument(where + ": expected an element string or integer code");
}

}  // namespace

OutputFormat parse_output_format(const std::string& text) {
    std::string t;
    for (char c : strip(text)) t += (char)std::tolower((unsigned char)c);
    if (t == "json") return OutputFormat::Json;
    if (t == "jsonl") return OutputFormat::JsonLines;
    if (t == "csv") return OutputFormat::Csv;
    throw std::invalid_argument("unknown output format '" + text + "' (expected json, jsonl or csv)");
}

const char* to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::Json: return "json";
        case OutputFormat::JsonLines: return "jsonl";
        case OutputFormat::Csv: return "csv";
    }
    return "?";
}

nlohmann::json matrix_to_json(const SquareMatrix& m) {
    const Field& f = *m.field();
    nlohmann::json rows = nlohmann::json::array();
    for (size_t i = 0; i < m.n(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (size_t j = 0; j < m.n(); ++j) row.push_back(f.format(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"field", f.spec_string()}, {"rows", std::move(rows)}};
}

SquareMatrix matrix_from_json(const nlohmann::json& j, std::shared_ptr<const Field> expect) {
    if (!j.is_object()) throw std::invalid_argument("matrix JSON must be an object");
    if (!j.contains("field") || !j.at("field").is_string())
        throw std::invalid_argument("matrix JSON needs a \"field\" spec string");
    if (!j.contains("rows") || !j.at("rows").is_array())
        throw std::invalid_argument("matrix JSON needs a \"rows\" array");

    auto f = make_field(j.at("field").get<std::string>());
    if (expect && !expect->same_field(*f))
        throw std::invalid_argument("matrix field " + f->spec_string() +
                                    " does not match the requested field " +
                                    expect->spec_string());

    const auto& rows = j.at("rows");
    const size_t n = rows.size();
    if (n == 0) throw std::invalid_argument("rows must not be empty");
    std::vector<uint64_t> codes;
    codes.reserve(n * n);
    for (size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n)
            throw std::invalid_argument("rows[" + std::to_string(i + 1) + "] must hold exactly " +
                                        std::to_string(n) + " entries (square matrix)");
        for (size_t jj = 0; jj < n; ++jj) codes.push_back(entry_from_json(*f, rows[i][jj], i, jj));
    }
    return SquareMatrix(f, n, std::move(codes));
}

std::string matrix_to_csv(const SquareMatrix& m) {
    const Field& f = *m.field();
    std::string out;
    for (size_t i = 0; i < m.n() * m.n(); ++i) {
        if (i) out += ',';
        out += f.format(m.codes()[i]);
    }
    return out;
}

SquareMatrix matrix_from_text(std::shared_ptr<const Field> f, const std::string& text) {
    const std::string t = strip(text);
    if (!t.empty() && t.front() == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(t);
        } catch (const nlohmann::json::parse_error& e) {
            throw std::invalid_argument(std::string("matrix JSON does not parse: ") + e.what());
        }
        return matrix_from_json(j, std::move(f));
    }
    if (!f)
        throw std::invalid_argument(
            "no field given; pass --field/MDSFORGE_FIELD or use the JSON matrix form");
    return SquareMatrix::parse(std::move(f), t);
}

std::vector<uint64_t> parse_element_list(const Field& f, const std::string& text) {
    std::vector<uint64_t> out;
    size_t start = 0;
    const std::string t = text;
    for (size_t idx = 1;; ++idx) {
        const size_t comma = t.find(',', start);
        const std::string piece = strip(t.substr(start, comma - start));
        try {
            out.push_back(f.parse_element(piece));
        } catch (const std::exception& e) {
            throw std::invalid_argument("element " + std::to_string(idx) + ": " + e.what());
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string format_element_list(const Field& f, const std::vector<uint64_t>& codes) {
    std::string out;
    for (size_t i = 0; i < codes.size(); ++i) {
        if (i) out += ',';
        out += f.format(codes[i]);
    }
    return out;
}

nlohmann::json triple_to_json(const DecompositionTriple& t) {
    const Field& f = *t.m1.field();
    nlohmann::json d1 = nlohmann::json::array(), d2 = nlohmann::json::array();
    for (uint64_t c : t.d1.diag()) d1.push_back(f.format(c));
    for (uint64_t c : t.d2.diag()) d2.push_back(f.format(c));
    return nlohmann::json{
        {"d1", std::move(d1)}, {"m1", matrix_to_json(t.m1)}, {"d2", std::move(d2)}};
}

nlohmann::json certificate_to_json(const InvolutoryCertificate& c) {
    nlohmann::json alphas = nlohmann::json::array();
    for (uint64_t a : c.alphas) alphas.push_back(c.field->format(a));
    return nlohmann::json{{"field", c.field->spec_string()}, {"alphas", std::move(alphas)}};
}

nlohmann::json record_to_json(const OutputRecord& r) {
    return nlohmann::json{{"schema", r.schema},
                          {"command", r.command},
                          {"field", r.field},
                          {"payload", r.payload},
                          {"exit", r.exit_status}};
}

}  // namespace mdsforge
