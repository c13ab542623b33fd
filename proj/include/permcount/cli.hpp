#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace permcount::cli {

enum class OutputFormat { json, csv, markdown };

OutputFormat parse_format(const std::string& name);

struct RunConfig {
    std::string field_spec;
    std::string method = "auto"; // auto | interpolation | criterion | inclexcl | permanent
    unsigned workers = 1;
    OutputFormat format = OutputFormat::markdown;
    std::string cache_path;
    uint64_t seed = 42;
    bool timings = false; // wall-clock columns are opt-in so default output is reproducible
};

// Exit codes shared by all commands: 0 success, 2 value mismatch / failed
// suite / bound violation, 3 method or range incompatibility, 4 field spec
// parse failure.
int cmd_table(uint32_t qmax, const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_count(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_bound_report(uint32_t qmax, const RunConfig& config, std::ostream& out, std::ostream& err);

// The reference values of N for q = 2,3,4,5,7,8,9,11 that gate cmd_table.
const char* reference_n(uint32_t q); // nullptr when q has no reference row

} // namespace permcount::cli
