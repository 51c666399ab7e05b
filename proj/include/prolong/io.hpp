#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "prolong/interpolation.hpp"
#include "prolong/modelred.hpp"

namespace prolong {
namespace io {

using nlohmann::json;

json spec_to_json(const kernels::KernelSpec& spec);
kernels::KernelSpec spec_from_json(const json& j);

/// Model files round-trip bit-identically: doubles are stored with shortest
/// exact decimal representations.
void save_model(const std::string& path, const interp::InterpNetwork& net);
interp::InterpNetwork load_model(const std::string& path);

void save_symbol(const std::string& path, const modelred::PowerSymbol& symbol);
modelred::PowerSymbol load_symbol(const std::string& path);

void save_approximant(const std::string& path, const modelred::RationalApproximant& approx);
modelred::RationalApproximant load_approximant(const std::string& path);

/// CSV with a "# schema=1" header comment and 17-significant-digit values.
void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

std::string format_double(double v);  // %.17g

std::string read_file(const std::string& path);  // throws Error if missing
bool file_exists(const std::string& path);

/// Write to a temporary sibling then rename, so readers never see partial files.
void atomic_write(const std::string& path, const std::string& content);

std::string fnv1a_digest(const std::string& bytes);

struct RunManifest {
    std::string command;
    std::string config_echo;
    std::uint64_t seed = 0;
    std::string version;
    double duration_seconds = 0.0;
    std::map<std::string, std::string> output_digests;
};

void write_manifest(const std::string& path, const RunManifest& manifest);

} // namespace io
} // namespace prolong
