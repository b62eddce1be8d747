#include "exfeat/manifest.hpp"

#include <chrono>
#include <fstream>
#include <stdexcept>

namespace exfeat::cli {

std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file for hashing: " + path);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char chunk[4096];
    while (in.read(chunk, sizeof(chunk)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(chunk[i]);
            hash *= 0x100000001b3ULL;
        }
        if (!in) break;
    }
    return hash;
}

RunManifest::RunManifest(int argc, char** argv) : start_(std::chrono::steady_clock::now()) {
    for (int i = 0; i < argc; ++i) {
        if (i) command_line_ += ' ';
        command_line_ += argv[i];
    }
}

void RunManifest::add_input(const std::string& path) {
    char hex[20];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(fnv1a_file(path)));
    input_hashes_.emplace_back(path, hex);
}

std::string RunManifest::manifest_path_for(const std::string& output_path) {
    const std::size_t slash = output_path.find_last_of('/');
    const std::size_t dot = output_path.find_last_of('.');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
        return output_path.substr(0, dot) + ".manifest.json";
    return output_path + ".manifest.json";
}

std::string RunManifest::write(const std::string& output_path) const {
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_);
    nlohmann::ordered_json doc;
    doc["tool"] = "exfeat";
    doc["version"] = kToolVersion;
    doc["command"] = command_line_;
    doc["seed"] = seed_;
    doc["config"] = config_.is_null() ? nlohmann::ordered_json::object() : config_;
    doc["inputs"] = nlohmann::ordered_json::object();
    for (const auto& [path, hash] : input_hashes_) doc["inputs"][path] = hash;
    doc["timings"] = {{"wall_ms", elapsed.count()}};

    const std::string path = manifest_path_for(output_path);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest: " + path);
    out << doc.dump(2) << '\n';
    return path;
}

} // namespace exfeat::cli
