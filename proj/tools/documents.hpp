#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace effdiff::cli {

using Json = nlohmann::ordered_json;

// A versioned document: a header line "effdiff/1 <kind> [<procedure>]" followed by JSON.
struct Document {
    std::string kind;  // input, result or config
    std::string proc;  // empty for config
    Json body;
};

// DomainError on a bad header or malformed JSON.
Document parse_document(const std::string& text);
std::string write_document(const Document& doc);

struct RunConfig {
    std::uint64_t budget_bits = 1U << 20;
    std::uint64_t witness_pool_size = 4096;
    std::uint64_t scan_cap = 4096;
    std::uint64_t seed = 1;

    // Unknown keys and a ranking other than "orderly" are DomainErrors.
    static RunConfig from_json(const Json& j);
    Json to_json() const;
};

const std::vector<std::string>& procedure_names();

// Runs `proc` on an input body and returns the result body: the input, the config
// and every certificate needed for replay. DomainError on malformed input; Aborted
// when the procedure gives up.
Json run_procedure(const std::string& proc, const Json& input, const RunConfig& cfg);

// Replays a result body. Empty when every certificate checks; otherwise one line
// per failed check.
std::vector<std::string> verify_result(const std::string& proc, const Json& result);

struct BoundRequest {
    std::string name;
    std::vector<std::string> args;       // numbers, or infix bodies in i for function slots
    std::vector<std::string> functions;  // --D then --F, consumed by function slots first
    bool eval = false;
    bool symbolic = false;
    std::uint64_t budget_bits = 1U << 20;
};

// Text printed by `bound`. DomainError on an unknown name or a bad argument list.
std::string bound_command(const BoundRequest& req);

}  // namespace effdiff::cli
