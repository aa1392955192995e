#pragma once

#include <string>

#include "json.hpp"

#include "entroscope/quantum.hpp"

namespace entroscope::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

/// Malformed input; `field` is a JSON-pointer-like path to the offending entry.
class ParseError : public InvalidArgument {
 public:
  ParseError(const std::string& field, const std::string& what)
      : InvalidArgument(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Row-major [[[re, im], ...], ...].
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, const std::string& field = "matrix");

/// {"dims": [...], "labels": [...], "matrix": ...}; labels default to A, B, ...
json state_to_json(const QState& rho);
QState state_from_json(const json& j);

/// {"kraus": [matrix, ...], "dim_in", "dim_out", "trace_preserving", ...}.
/// Only "kraus" is read back; the flags are recomputed.
json channel_to_json(const QChannel& ch);
QChannel channel_from_json(const json& j);

/// Serializes with every floating-point number printed as %.17g.
std::string dump(const json& j, int indent = 2);

json parse_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace entroscope::io
