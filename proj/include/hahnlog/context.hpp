#pragma once

#include "hahnlog/logarithm.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace hahnlog {

/// A field context: value group, logarithmic data and precision settings.
///
/// File format (after an optional "hahnlog-v1" header line), JSON:
///
///     {
///       "format": "hahnlog-v1",
///       "rank": 2,
///       "constants": [{"name": "zeta", "value": "rpow(2,1/2)"}],
///       "generators": [["1", "0"], ["0", "1"]],
///       "mu":       {"section": ["t^(1,0)", "t^(0,1)"], "embedding": [["1", "0"], ["0", "1"]]},
///       "mu_prime": {"embedding": [["2", "0"], ["0", "1"]]},
///       "precision": 8,
///       "max_precision_bits": 256,
///       "seed": 0
///     }
///
/// Generators are vectors of scalar texts (default: the unit vectors);
/// sections list series texts for the generator images (default t^(g_i));
/// embeddings list matrix rows (default identity). Adjoined constants take a
/// scalar expression whose value encloses them and an optional "log".
struct Context {
    GroupPtr group;
    LogDatum mu;
    std::optional<LogDatum> mu_prime;
    SeriesContext series;
    long max_precision_bits{256};
    std::uint64_t seed{0};
};

/// The canonical datum on the Puiseux group Q^rank.
Context default_context(std::size_t rank = 2);

/// ParseError for malformed JSON, DomainError for invalid mathematical data.
Context parse_context(std::string_view text);

}  // namespace hahnlog
