#pragma once

#include <map>
#include <string>
#include <vector>

namespace fracbous {

/// Round-trip decimal formatting: 17 significant digits, no locale.
std::string format_real(double v);

/// Strict double parse; throws std::invalid_argument on junk.
double parse_real(const std::string& s);

/// Parses a flat key=value block: one pair per line, '#' starts a comment,
/// blank lines ignored, whitespace around keys/values trimmed.
std::map<std::string, std::string> parse_key_values(const std::string& text);

/// Reads a whole file; throws std::runtime_error if it cannot be opened.
std::string read_file(const std::string& path);

/// Provenance block written next to CLI outputs.
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::string artifact_version;
    double wall_time_s = 0.0;
    std::vector<std::string> outputs;
};

/// key=value rendering of the manifest (deterministic ordering).
std::string render_manifest(const RunManifest& m);

} // namespace fracbous
