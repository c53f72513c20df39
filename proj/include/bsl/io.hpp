#ifndef BSL_IO_HPP
#define BSL_IO_HPP

#include <json.hpp>
#include <string>

#include "bsl/blocked_linalg.hpp"
#include "bsl/bounds.hpp"
#include "bsl/coherence.hpp"
#include "bsl/estimators.hpp"

namespace bsl {

// BSL1 dictionary text format: a header line
//   BSL1 L=<int> M=<int> d=<int>
// followed by L lines of N = M*d space-separated decimals (row-major).
// Readers reject malformed headers and mismatched dimensions.
void write_dictionary(const BlockedDictionary& dict, const std::string& path);
BlockedDictionary read_dictionary(const std::string& path);

// Signal file: {"d": ..., "values": [...]}.
void write_signal(const BlockSparseVector& x, const std::string& path);
BlockSparseVector read_signal(const std::string& path);

// Observation file: {"values": [...]}.
void write_observation(const Eigen::VectorXd& y, const std::string& path);
Eigen::VectorXd read_observation(const std::string& path);

nlohmann::json to_json(const CoherenceProfile& profile);
nlohmann::json to_json(const EstimateResult& result);
nlohmann::json to_json(const GuaranteeReport& report);
nlohmann::json to_json(const CrbResult& result);

}  // namespace bsl

#endif  // BSL_IO_HPP
