#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "maass/forms.hpp"

#include <json.hpp>

namespace maass::forms {

namespace {

std::string dtos(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double stod_exact(const std::string& s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc())
        throw std::runtime_error("cache parse: bad number '" + s + "'");
    return v;
}

} // namespace

std::string serialize(const CoefficientCache& cache) {
    std::ostringstream out;
    out << "{\"schema\":\"maass-cache\",\"version\":" << cache.version
        << ",\"t_range\":[\"" << dtos(cache.t_lo) << "\",\"" << dtos(cache.t_hi)
        << "\"],\"n_coeff\":" << cache.n_coeff << "}\n";
    for (const auto& f : cache.records) {
        out << "{\"t\":\"" << dtos(f.t()) << "\",\"parity\":\""
            << to_string(f.parity()) << "\",\"err\":\"" << dtos(f.err())
            << "\",\"extraction_defect\":\"" << dtos(f.extraction_defect())
            << "\",\"rho1_sq\":\"" << dtos(f.rho1_sq()) << "\",\"lambda\":[";
        const auto& lam = f.lambda_table();
        for (std::size_t n = 1; n < lam.size(); ++n) {
            if (n > 1) out << ',';
            out << '"' << dtos(lam[n]) << '"';
        }
        out << "]}\n";
    }
    return out.str();
}

CoefficientCache deserialize(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("cache parse: empty file");
    auto header = nlohmann::json::parse(line);
    if (!header.contains("schema") || header["schema"] != "maass-cache")
        throw std::runtime_error("cache parse: not a maass-cache file");
    if (header["version"].get<int>() != CoefficientCache::kVersion)
        throw std::runtime_error(
            "cache parse: version mismatch, refusing to read (file v" +
            std::to_string(header["version"].get<int>()) + ", supported v" +
            std::to_string(CoefficientCache::kVersion) + ")");
    CoefficientCache cache;
    cache.version = header["version"].get<int>();
    cache.t_lo = stod_exact(header["t_range"][0].get<std::string>());
    cache.t_hi = stod_exact(header["t_range"][1].get<std::string>());
    cache.n_coeff = header["n_coeff"].get<int>();
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line);
        std::vector<double> lam;
        lam.push_back(0.0);
        for (const auto& s : j["lambda"]) lam.push_back(stod_exact(s.get<std::string>()));
        MaassForm f(stod_exact(j["t"].get<std::string>()),
                    j["parity"] == "even" ? Parity::Even : Parity::Odd,
                    std::move(lam), stod_exact(j["err"].get<std::string>()),
                    stod_exact(j["extraction_defect"].get<std::string>()),
                    stod_exact(j["rho1_sq"].get<std::string>()));
        cache.records.push_back(std::move(f));
    }
    return cache;
}

void save_cache(const CoefficientCache& cache, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_cache: cannot open " + path);
    out << serialize(cache);
}

CoefficientCache load_cache(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_cache: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return deserialize(ss.str());
}

} // namespace maass::forms
