#include "tsou/errors.hpp"
#include "tsou/harness.hpp"
#include "tsou/power_model.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace tsou::harness {

using nlohmann::json;

namespace {

const json& need(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("model config: missing key '") + key + "'");
    return j.at(key);
}

double number(const json& j, const char* key) {
    const json& v = need(j, key);
    if (!v.is_number()) throw DomainError(std::string("model config: '") + key + "' must be a number");
    return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback) { return j.contains(key) ? number(j, key) : fallback; }

std::vector<double> numbers(const json& j, const char* key) {
    const json& v = need(j, key);
    if (!v.is_array()) throw DomainError(std::string("model config: '") + key + "' must be an array");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) throw DomainError(std::string("model config: '") + key + "' must hold numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

SpectralModel parse_spectral(const json& m) {
    SpectralModel model;
    for (const auto& a : need(m, "atoms"))
        model.atoms.push_back(SpectralAtom{numbers(a, "xi"), number(a, "sigma"), numbers(a, "s"), numbers(a, "w")});
    model.validate();
    return model;
}

} // namespace

TsouParams parse_model(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw DomainError(std::string("model config: ") + e.what());
    }
    TsouParams params;
    params.alpha = number(root, "alpha");
    params.p = number_or(root, "p", 1.0);
    params.lambda = number_or(root, "lambda", 1.0);
    const json& m = need(root, "measure");
    const json& type = need(m, "type");
    if (!type.is_string()) throw DomainError("model config: measure type must be a string");
    const std::string kind = type.get<std::string>();
    if (kind == "pt") {
        if (params.p != 1.0) throw DomainError("model config: the power tempered family needs p = 1");
        const PtParams pt{params.alpha, number(m, "ell"), number(m, "c")};
        pt.validate();
        params = pt_tsou_params(pt, params.lambda);
    } else if (kind == "atoms") {
        std::vector<RosinskiAtom> atoms;
        for (const auto& a : need(m, "atoms")) atoms.push_back(RosinskiAtom{numbers(a, "location"), number(a, "weight")});
        if (atoms.empty()) throw DomainError("model config: no atoms");
        params.measure = RosinskiMeasure::from_atoms(std::move(atoms));
    } else if (kind == "spectral") {
        params.spectral = parse_spectral(m);
        params.measure = spectral_to_rosinski(*params.spectral, params.alpha, params.p);
    } else {
        throw DomainError("model config: unknown measure type '" + kind + "' (expected pt, atoms or spectral)");
    }
    if (root.contains("b")) params.b = numbers(root, "b");
    params.validate();
    return params;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write '" + path + "'");
    out << content;
    if (!out) throw DomainError("failed writing '" + path + "'");
}

TsouParams load_model(const std::string& path) { return parse_model(read_file(path)); }

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        const std::string item = text.substr(start, end - start);
        double v = 0.0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size())
            throw DomainError("not a number list: '" + text + "'");
        out.push_back(v);
        start = end + 1;
    }
    return out;
}

} // namespace tsou::harness
