#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "abelfft/characterization.hpp"

namespace abelfft::io {

inline constexpr const char* kToolName = "abelfft";
inline constexpr const char* kToolVersion = "0.1.0";

using nlohmann::json;

// All parse functions throw FormatError on malformed or inconsistent input.

json group_to_json(const Group& g);
Group group_from_json(const json& j);

json side_to_json(Side s);
Side side_from_json(const json& j);

json complex_to_json(Complex v);
Complex complex_from_json(const json& j);

/// {"group": {"orders": [...]}, "side": "primal"|"dual", "values": [[re, im], ...]}
json function_to_json(const GFunction& f);
GFunction function_from_json(const json& j);

/// Dense operator serialization.
struct OperatorFile {
  Group group;
  Side input_side = Side::primal;
  Side output_side = Side::primal;
  MatrixForm matrix;

  Operator to_operator() const;
};

json operator_to_json(const OperatorFile& op);
OperatorFile operator_from_json(const json& j);

/// Ground truth written next to a generated operator.
struct TruthFile {
  Group group;
  std::vector<std::size_t> psi;
  bool conjugation = false;
  OperatorForm form = OperatorForm::U;
};

json truth_to_json(const TruthFile& t);
TruthFile truth_from_json(const json& j);

json hypotheses_to_json(const HypothesisReport& r);
json diagnostics_to_json(const RecoveryDiagnostics& d);

/// Report for a successful recovery; hypotheses are included when given.
json report_to_json(const RecoveryReport& r, std::uint64_t seed,
                    const std::optional<HypothesisReport>& hypotheses = std::nullopt);

/// The fields of a report that identify the recovered operator.
struct ReportSummary {
  std::vector<std::size_t> psi;
  bool conjugation = false;
  double residual = 0.0;
};
ReportSummary report_from_json(const json& j);

/// Throws FormatError when the file cannot be read or is not JSON.
json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& j);

}  // namespace abelfft::io
