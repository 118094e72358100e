#pragma once

// Command runners shared by the CLI and its tests. Every command maps a
// JSON instance to an outcome; artifacts wrap both and can be replayed.

#include <filesystem>
#include <string>

#include "json.hpp"

namespace wedder::cli {

using json = nlohmann::json;

inline constexpr const char* kSchema = "wedder.certificate/1";
inline constexpr const char* kVersion = "0.1.0";

// Bad input; the CLI maps it to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Context {
    unsigned jobs = 1;
};

struct Outcome {
    bool pass = false;
    std::string verdict;
    json result;  // deterministic given the instance
    json stats;   // counters and timings, excluded from replay comparison
};

// Commands: "continuant eval", "continuant identities", "pe2 reduce", "pe2 ord",
// "pe2 groups", "gui check", "gui bone", "gui bounds", "gui classify", "gui probe".
Outcome run_command(const std::string& command, const json& instance, const Context& ctx);
bool known_command(const std::string& command);

json make_artifact(const std::string& command, const json& instance, const Outcome& outcome, const Context& ctx);
// FNV-1a over schema, command, instance and version.
std::string manifest_hash(const json& artifact);
// Lowercase alphanumerics, everything else folded into single underscores.
std::string sanitize(const std::string& text);
// <out>/certs/<ring>/<command>/<hash>.json
std::filesystem::path store_artifact(const json& artifact, const std::filesystem::path& out_dir);

enum class ReplayStatus { Identical, Diverged, SchemaError };
struct ReplayResult {
    ReplayStatus status = ReplayStatus::SchemaError;
    std::string message;
};
// Witness certificates are re-checked directly, exhausted failures rescanned in
// reverse order; everything else is re-run and compared.
ReplayResult replay(const json& artifact, const Context& ctx);

}  // namespace wedder::cli
