#pragma once
// Serialization: matrix JSON, element lists, output records, and the three
// CLI output formats. Parsing is strict and every error names the position
// it tripped on.

#include "json.hpp"

#include "mdsforge/decomp.hpp"
#include "mdsforge/matlin.hpp"

namespace mdsforge {

enum class OutputFormat { Json, JsonLines, Csv };
OutputFormat parse_output_format(const std::string& text);  // invalid_argument
const char* to_string(OutputFormat f);

// {"field": "2^4/0x13", "rows": [["0x1","0x1"],["0x1","0xC"]]}
nlohmann::json matrix_to_json(const SquareMatrix& m);
// Entries may be element strings or plain integer codes. When expect is
// non-null the embedded field spec must match it.
SquareMatrix matrix_from_json(const nlohmann::json& j,
                              std::shared_ptr<const Field> expect = nullptr);

// One line, row-major, entries comma-separated; the streaming CSV shape.
std::string matrix_to_csv(const SquareMatrix& m);

// Accepts the compact row form ("0x1,0x1;0x1,0x2") or a JSON object
// (detected by a leading '{'). Compact form requires a field; JSON carries
// its own and must agree with f when both are present.
SquareMatrix matrix_from_text(std::shared_ptr<const Field> f, const std::string& text);

// "0xC,0x6,0x1" -> codes, via Field::parse_element
std::vector<uint64_t> parse_element_list(const Field& f, const std::string& text);
std::string format_element_list(const Field& f, const std::vector<uint64_t>& codes);

nlohmann::json triple_to_json(const DecompositionTriple& t);
nlohmann::json certificate_to_json(const InvolutoryCertificate& c);

// The envelope every non-streaming CLI reply is wrapped in.
struct OutputRecord {
    int schema = 1;
    std::string command;
    std::string field;  // spec string, modulus included
    nlohmann::json payload;
    int exit_status = 0;
};

nlohmann::json record_to_json(const OutputRecord& r);

}  // namespace mdsforge
