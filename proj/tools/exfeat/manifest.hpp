#ifndef EXFEAT_TOOLS_MANIFEST_HPP
#define EXFEAT_TOOLS_MANIFEST_HPP

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace exfeat::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Metadata emitted next to every result file: the exact command line, the
/// resolved configuration, seeds, input file hashes, tool version and wall
/// time. Result files stay deterministic; the manifest carries the timing.
class RunManifest {
public:
    RunManifest(int argc, char** argv);

    void set_config(nlohmann::ordered_json config) { config_ = std::move(config); }
    void set_seed(std::uint64_t seed) { seed_ = seed; }
    void add_input(const std::string& path);

    /// Writes <output>.manifest.json (or <stem>.manifest.json for outputs
    /// with an extension) and returns the manifest path.
    std::string write(const std::string& output_path) const;

    static std::string manifest_path_for(const std::string& output_path);

private:
    std::string command_line_;
    nlohmann::ordered_json config_;
    std::uint64_t seed_ = 0;
    std::vector<std::pair<std::string, std::string>> input_hashes_;
    std::chrono::steady_clock::time_point start_;
};

std::uint64_t fnv1a_file(const std::string& path);

} // namespace exfeat::cli

#endif
