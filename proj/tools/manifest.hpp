#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace symdyn::cli {

[[nodiscard]] std::string sha256_hex(std::string_view data);
/// Throws symdyn::Error(FileNotFound) when the file cannot be read.
[[nodiscard]] std::string sha256_file(const std::filesystem::path& path);

struct OutputFile {
    std::string name;  ///< relative to the output directory
    std::string sha256;
};

/// Record written next to every command's outputs. Parameters hold every option of the
/// command, defaults included; an empty value means the option was unset.
struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::optional<std::string> input_path;
    std::optional<std::string> input_sha256;
    std::vector<std::uint64_t> seeds;
    std::string version;
    std::vector<OutputFile> outputs;

    [[nodiscard]] std::string to_json() const;
    /// Throws symdyn::Error(ParseError) on malformed JSON.
    [[nodiscard]] static RunManifest from_json(std::string_view text);
    /// Command line (without program name) that re-runs this manifest.
    [[nodiscard]] std::vector<std::string> replay_args() const;
    [[nodiscard]] std::string file_name() const { return command + ".manifest.json"; }
};

}  // namespace symdyn::cli
