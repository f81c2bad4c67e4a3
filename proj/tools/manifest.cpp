#include "manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>
#include <sstream>

#include "json.hpp"
#include "symdyn/error.hpp"

namespace symdyn::cli {

namespace {

using nlohmann::ordered_json;

// Flag-style parameters are recorded as "true"/"false" and replayed as a bare switch.
bool is_switch(const std::string& value) { return value == "true" || value == "false"; }

}  // namespace

std::string sha256_hex(std::string_view data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int size = 0;
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest.data(), &size) != 1) {
        throw std::runtime_error("SHA-256 computation failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string hex;
    hex.reserve(size * 2);
    for (unsigned int i = 0; i < size; ++i) {
        hex.push_back(kHex[digest[i] >> 4]);
        hex.push_back(kHex[digest[i] & 0xF]);
    }
    return hex;
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::FileNotFound, path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return sha256_hex(buffer.str());
}

std::string RunManifest::to_json() const {
    ordered_json j;
    j["command"] = command;
    j["version"] = version;
    ordered_json params = ordered_json::object();
    for (const auto& [key, value] : parameters) {
        params[key] = value;
    }
    j["parameters"] = params;
    if (input_path) {
        j["input"] = {{"path", *input_path}, {"sha256", input_sha256.value_or("")}};
    } else {
        j["input"] = nullptr;
    }
    j["seeds"] = seeds;
    auto outs = ordered_json::array();
    for (const auto& o : outputs) {
        outs.push_back({{"file", o.name}, {"sha256", o.sha256}});
    }
    j["outputs"] = outs;
    return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(std::string_view text) {
    RunManifest m;
    try {
        const auto j = ordered_json::parse(text);
        m.command = j.at("command").get<std::string>();
        m.version = j.at("version").get<std::string>();
        for (const auto& [key, value] : j.at("parameters").items()) {
            m.parameters.emplace_back(key, value.get<std::string>());
        }
        if (!j.at("input").is_null()) {
            m.input_path = j["input"].at("path").get<std::string>();
            m.input_sha256 = j["input"].at("sha256").get<std::string>();
        }
        m.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        for (const auto& o : j.at("outputs")) {
            m.outputs.push_back({o.at("file").get<std::string>(), o.at("sha256").get<std::string>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, 1, std::string("malformed manifest: ") + e.what());
    }
    return m;
}

std::vector<std::string> RunManifest::replay_args() const {
    std::vector<std::string> args{command};
    for (const auto& [key, value] : parameters) {
        if (value.empty() || value == "false") {
            continue;
        }
        args.push_back("--" + key);
        if (!is_switch(value)) {
            args.push_back(value);
        }
    }
    return args;
}

}  // namespace symdyn::cli
