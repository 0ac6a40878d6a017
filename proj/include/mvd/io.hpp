#pragma once

#include <string>

#include <json.hpp>

#include "mvd/adversary.hpp"
#include "mvd/communication.hpp"
#include "mvd/core.hpp"

namespace mvd {

// Instance file schema:
//   {"n": int,
//    "ballots": [{"weight": "p/q", "ranking": [ints]}, ...],
//    "metric": {"rows": [[entry, ...], ...]}}        (optional)
// Weights are exact "p/q" strings. Metric entries are "p/q" / integer strings
// for exact metrics and 12-significant-digit decimal strings (always carrying
// a '.' or exponent) for floating-point ones; the parser keys exactness off
// that distinction. Serialization uses a canonical field order, so
// serialize . parse . serialize is byte-identical.
Json instance_to_json(const Instance& inst);
Instance instance_from_json(const Json& j);
std::string serialize_instance(const Instance& inst);
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

// Partition schema: {"n": int, "labels": [id per ranking in lex order]}.
Json partition_to_json(const MessagePartition& part);
MessagePartition partition_from_json(const Json& j);
MessagePartition load_partition(const std::string& path);

Json distribution_to_json(const CandidateDistribution& d);
Json ratio_to_json(const Ratio& r);
Json report_to_json(const AdversaryReport& r);

// Shortest-form decimal with the given significant digits ("0.5", "1.23e-07").
std::string format_decimal(double v, int sig_digits = 12);

}  // namespace mvd
