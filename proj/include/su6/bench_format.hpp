#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "su6/optics.hpp"

namespace su6 {

// Line-oriented bench description. Statements end at a newline or ';',
// '#' starts a comment, whitespace is insignificant:
//
//   bench "fig1"
//   input state=h_gaussian
//   prepare: HWP id=HWP1 angle=22.5
//   split PBS
//   arm A: MIRROR id=M1 / QWP id=QWP4 angle=45
//   arm B: QWP id=QWP1 angle=45 / VL id=VL1 chirality=R flipped=false
//   combine NPBS reflect=B
//   sweep element=HWP3 from=0 to=180 step=10 record=skyrmion_sphere

enum class BenchErrorCode {
  expected_token,
  unterminated_string,
  unknown_statement,
  unknown_element_kind,
  unknown_attribute,
  duplicate_attribute,
  missing_angle,
  missing_attribute,
  invalid_number,
  invalid_value,
  misplaced_element,
  duplicate_splitter,
  duplicate_combiner,
  duplicate_statement,
  missing_statement,
  duplicate_element_id,
  dangling_sweep_reference,
  invalid_sweep,
};

std::string_view to_string(BenchErrorCode code);

class BenchParseError : public std::runtime_error {
public:
  BenchParseError(BenchErrorCode code, int line, int column, const std::string& message);

  BenchErrorCode code() const { return code_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& detail() const { return detail_; }

private:
  BenchErrorCode code_;
  int line_;
  int column_;
  std::string detail_;
};

/// Parses a bench description; elements without an explicit id receive
/// KIND + ordinal (HWP1, QWP2, M1, VL1, PL1, PHASE1) in bench order.
BenchDescription parse_bench(std::string_view text);

/// Normalized text: fixed statement order, one statement per line, explicit
/// ids, shortest round-trip numbers.
std::string serialize_bench(const BenchDescription& bench);

} // namespace su6
