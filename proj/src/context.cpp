#include "hahnlog/context.hpp"

#include "hahnlog/errors.hpp"
#include "hahnlog/sexpr.hpp"

#include <json.hpp>

#include <cctype>

namespace hahnlog {

using nlohmann::json;

Context default_context(std::size_t rank) {
    GroupPtr group = ValueGroup::canonical(rank);
    return Context{group, LogDatum::canonical(group), std::nullopt, SeriesContext{}, max_precision_bits(), 0};
}

namespace {

std::string text_of(const json& j, const std::string& where) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw DomainError(where + ": expected a string");
}

SymbolicReal scalar_of(const json& j, const std::string& where) {
    try {
        return parse_scalar(text_of(j, where));
    } catch (const ParseError& e) {
        throw DomainError(where + ": " + e.what());
    }
}

SymMatrix matrix_of(const json& j, std::size_t rows, std::size_t cols, const std::string& where) {
    if (!j.is_array() || j.size() != rows) throw DomainError(where + ": expected " + std::to_string(rows) + " rows");
    SymMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw DomainError(where + ": row " + std::to_string(i + 1) + " needs " + std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
                scalar_of(j[i][c], where + "[" + std::to_string(i) + "][" + std::to_string(c) + "]");
    }
    return m;
}

SymMatrix identity(std::size_t n) {
    SymMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(i, c) = SymbolicReal(i == c ? 1 : 0);
    return m;
}

LogDatum datum_of(const json& j, const GroupPtr& group, const SeriesContext& ctx, const std::string& where) {
    if (!j.is_object()) throw DomainError(where + ": expected an object");
    Section section = Section::canonical(group);
    if (j.contains("section")) {
        const json& s = j["section"];
        if (!s.is_array() || s.size() != group->size())
            throw DomainError(where + ".section: expected " + std::to_string(group->size()) + " series");
        std::vector<HahnSeries> images;
        for (std::size_t i = 0; i < s.size(); ++i) {
            try {
                images.push_back(parse_series(text_of(s[i], where + ".section"), group, ctx));
            } catch (const ParseError& e) {
                throw DomainError(where + ".section[" + std::to_string(i) + "]: " + e.what());
            }
        }
        section = Section(group, std::move(images));
    }
    SymMatrix tau = j.contains("embedding") ? matrix_of(j["embedding"], group->rank(), group->rank(), where + ".embedding")
                                            : identity(group->rank());
    return LogDatum(std::move(section), std::move(tau));
}

void adjoin_constant(const json& c) {
    if (!c.is_object() || !c.contains("name") || !c.contains("value"))
        throw DomainError("constants: each entry needs \"name\" and \"value\"");
    const std::string name = text_of(c["name"], "constants.name");
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])) ||
        name.find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_") != std::string::npos)
        throw DomainError("constants: '" + name + "' is not an identifier");
    if (name == "log" || name == "exp" || name == "rpow" || name == "t" || name == "O" ||
        ((name[0] == 'x' || name[0] == 't' || name[0] == 'X') && name.size() > 1 &&
         name.find_first_not_of("0123456789", 1) == std::string::npos))
        throw DomainError("constants: '" + name + "' is reserved");
    SymbolicReal value = scalar_of(c["value"], "constants." + name + ".value");
    std::optional<SymbolicReal> log_value;
    if (c.contains("log")) log_value = scalar_of(c["log"], "constants." + name + ".log");
    const ConstantSymbol* existing = ConstantRegistry::instance().find(name);
    if (existing && existing->kind() != ConstantKind::Adjoined) throw DomainError("constants: '" + name + "' is reserved");
    ConstantRegistry::instance().adjoin(name, [value](long bits) { return evaluate_bits(value, bits); },
                                        log_value ? &*log_value : nullptr);
}

}  // namespace

Context parse_context(std::string_view text) {
    std::string_view body = strip_header(text);
    const std::size_t header = text.size() - body.size();
    json j;
    try {
        j = json::parse(body.begin(), body.end(), nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("context: ") + e.what(), header + (e.byte > 0 ? e.byte - 1 : 0));
    }
    if (!j.is_object()) throw ParseError("context: expected a JSON object", header);
    if (j.contains("format") && j["format"] != "hahnlog-v1")
        throw ParseError("context: unsupported format " + j["format"].dump(), header);

    if (j.contains("constants")) {
        if (!j["constants"].is_array()) throw DomainError("constants: expected an array");
        for (const auto& c : j["constants"]) adjoin_constant(c);
    }

    if (!j.contains("rank") || !j["rank"].is_number_unsigned()) throw DomainError("context: \"rank\" must be a natural number");
    const auto rank = j["rank"].get<std::size_t>();

    GroupPtr group;
    if (j.contains("generators")) {
        const json& gens = j["generators"];
        if (!gens.is_array()) throw DomainError("generators: expected an array of vectors");
        SymMatrix g(static_cast<Eigen::Index>(rank), static_cast<Eigen::Index>(gens.size()));
        for (std::size_t c = 0; c < gens.size(); ++c) {
            if (!gens[c].is_array() || gens[c].size() != rank)
                throw DomainError("generators[" + std::to_string(c) + "]: expected " + std::to_string(rank) + " entries");
            for (std::size_t i = 0; i < rank; ++i)
                g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
                    scalar_of(gens[c][i], "generators[" + std::to_string(c) + "][" + std::to_string(i) + "]");
        }
        group = ValueGroup::create(rank, g);
    } else {
        group = ValueGroup::canonical(rank);
    }

    SeriesContext series;
    if (j.contains("precision")) {
        if (!j["precision"].is_number_unsigned()) throw DomainError("precision: expected a natural number");
        series.order = j["precision"].get<unsigned>();
    }
    long bits = max_precision_bits();
    if (j.contains("max_precision_bits")) {
        if (!j["max_precision_bits"].is_number_unsigned()) throw DomainError("max_precision_bits: expected a natural number");
        bits = j["max_precision_bits"].get<long>();
    }
    std::uint64_t seed = 0;
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw DomainError("seed: expected a natural number");
        seed = j["seed"].get<std::uint64_t>();
    }

    LogDatum mu = j.contains("mu") ? datum_of(j["mu"], group, series, "mu") : LogDatum::canonical(group);
    std::optional<LogDatum> mu_prime;
    if (j.contains("mu_prime")) mu_prime = datum_of(j["mu_prime"], group, series, "mu_prime");
    return Context{group, std::move(mu), std::move(mu_prime), series, bits, seed};
}

}  // namespace hahnlog
