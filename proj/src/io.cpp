#include "prolong/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace prolong {
namespace io {

namespace {

json complex_to_json(const Complex& z) {
    return json::array({z.real(), z.imag()});
}

Complex complex_from_json(const json& j) {
    return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}

json cmatrix_to_json(const CMatrix& m) {
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(complex_to_json(m(i, j)));
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

CMatrix cmatrix_from_json(const json& j) {
    const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
    const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
    const json& data = j.at("data");
    if (static_cast<Eigen::Index>(data.size()) != rows * cols)
        throw Error("matrix payload size mismatch");
    CMatrix m(rows, cols);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = complex_from_json(data.at(k++));
    return m;
}

json cvector_to_json(const CVector& v) {
    json data = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) data.push_back(complex_to_json(v[i]));
    return data;
}

CVector cvector_from_json(const json& j) {
    CVector v(j.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = complex_from_json(j.at(i));
    return v;
}

// JSON has no infinity literal; condition estimates can overflow to it.
json finite_or_tag(double v) {
    if (std::isfinite(v)) return v;
    return std::string(v > 0 ? "inf" : "-inf");
}

double double_or_tag(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw Error("unrecognized numeric tag: " + s);
    }
    return j.get<double>();
}

json parse(const std::string& path) {
    return json::parse(read_file(path));
}

} // namespace

json spec_to_json(const kernels::KernelSpec& spec) {
    json j{{"id", kernels::to_string(spec.id)},
           {"coeffs", spec.coeffs},
           {"radius", finite_or_tag(spec.radius)}};
    if (spec.fill_value) j["fill_value"] = *spec.fill_value;
    else j["fill_value"] = nullptr;
    return j;
}

kernels::KernelSpec spec_from_json(const json& j) {
    kernels::KernelSpec spec;
    spec.id = kernels::parse_id(j.at("id").get<std::string>());
    spec.coeffs = j.at("coeffs").get<std::vector<double>>();
    spec.radius = double_or_tag(j.at("radius"));
    if (j.contains("fill_value") && !j.at("fill_value").is_null())
        spec.fill_value = j.at("fill_value").get<double>();
    return spec;
}

void save_model(const std::string& path, const interp::InterpNetwork& net) {
    json inner = json::array();
    for (const CMatrix& layer : net.inner_layers) inner.push_back(cmatrix_to_json(layer));
    json j{{"spec", spec_to_json(net.spec)},
           {"depth", net.depth},
           {"nodes", cmatrix_to_json(net.nodes)},
           {"weights", cmatrix_to_json(net.weights)},
           {"inner_layers", inner},
           {"cond_estimate", finite_or_tag(net.cond_estimate)}};
    atomic_write(path, j.dump(2) + "\n");
}

interp::InterpNetwork load_model(const std::string& path) {
    const json j = parse(path);
    interp::InterpNetwork net;
    net.spec = spec_from_json(j.at("spec"));
    net.depth = j.at("depth").get<int>();
    net.nodes = cmatrix_from_json(j.at("nodes"));
    net.weights = cmatrix_from_json(j.at("weights"));
    for (const json& layer : j.at("inner_layers")) net.inner_layers.push_back(cmatrix_from_json(layer));
    net.cond_estimate = double_or_tag(j.at("cond_estimate"));
    return net;
}

void save_symbol(const std::string& path, const modelred::PowerSymbol& symbol) {
    json j{{"coeffs", cvector_to_json(symbol.coeffs)},
           {"decay_bound", symbol.decay_bound},
           {"decay_scale", symbol.decay_scale}};
    atomic_write(path, j.dump(2) + "\n");
}

modelred::PowerSymbol load_symbol(const std::string& path) {
    const json j = parse(path);
    modelred::PowerSymbol symbol;
    symbol.coeffs = cvector_from_json(j.at("coeffs"));
    symbol.decay_bound = j.at("decay_bound").get<double>();
    symbol.decay_scale = j.at("decay_scale").get<double>();
    return symbol;
}

void save_approximant(const std::string& path, const modelred::RationalApproximant& approx) {
    json poles = json::array();
    for (const Complex& p : approx.poles) poles.push_back(complex_to_json(p));
    json j{{"p", cvector_to_json(approx.numerator)},
           {"q", cvector_to_json(approx.denominator)},
           {"order", approx.order},
           {"achieved_error", approx.achieved_error},
           {"series", cvector_to_json(approx.series)},
           {"poles", poles}};
    atomic_write(path, j.dump(2) + "\n");
}

modelred::RationalApproximant load_approximant(const std::string& path) {
    const json j = parse(path);
    modelred::RationalApproximant approx;
    approx.numerator = cvector_from_json(j.at("p"));
    approx.denominator = cvector_from_json(j.at("q"));
    approx.order = j.at("order").get<int>();
    approx.achieved_error = j.at("achieved_error").get<double>();
    approx.series = cvector_from_json(j.at("series"));
    for (const json& p : j.at("poles")) approx.poles.push_back(complex_from_json(p));
    return approx;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
    std::ostringstream out;
    out << "# schema=1\n";
    for (size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
    out << "\n";
    for (const auto& row : rows) {
        if (row.size() != columns.size()) throw Error("CSV row width mismatch");
        for (size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
        out << "\n";
    }
    atomic_write(path, out.str());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NotFound("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool file_exists(const std::string& path) {
    return std::filesystem::exists(path);
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write file: " + tmp);
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
    json digests = json::object();
    for (const auto& [file, digest] : manifest.output_digests) digests[file] = digest;
    json j{{"command", manifest.command},
           {"config", manifest.config_echo},
           {"seed", manifest.seed},
           {"version", manifest.version},
           {"duration_seconds", manifest.duration_seconds},
           {"output_digests", digests}};
    atomic_write(path, j.dump(2) + "\n");
}

} // namespace io
} // namespace prolong
