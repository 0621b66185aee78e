#pragma once

// Job files and reports for the command-line tool.
//
// Input schema:
//   {
//     "ring": {"kind": "Q"} | {"kind": "Ql", "K": 3} | "Q" | "Ql:3",
//     "N": 10,
//     "field": [["A", s, d, q, "coeff"], ["M", a, b, "x"|"y", "re", "im"], ...],
//     "command": "normalize" | "classify" | "page" | "selftest",
//     "page": 2, "s_max": 10,
//     "scale_leading": false, "madic_levels": 0, "oracle_check": false
//   }
// Only "field" is required for field commands; coefficients are exact ring
// elements such as "3/2 + 1/4*l^2".

#include <stdexcept>
#include <string>

#include "nfspectral/abasis.hpp"
#include "nfspectral/coeff.hpp"

namespace nfs {

/// Error with a machine-readable code: parse_error, validation_error,
/// engine_error, classification_error.
class JobError : public std::runtime_error {
 public:
  JobError(std::string code, const std::string& message) : std::runtime_error(message), code_(std::move(code)) {}
  [[nodiscard]] const std::string& code() const { return code_; }

 private:
  std::string code_;
};

enum class Command { Normalize, Classify, Page, Selftest };

std::string to_string(Command c);
Command parse_command(const std::string& text);

struct JobSpec {
  RingSpec ring;
  AElement field;
  int truncation = 16;
  Command command = Command::Normalize;
  int page = 1;
  int s_max = 10;
  bool scale_leading = false;
  int madic_levels = 0;
  bool oracle_check = false;
};

/// Parses and validates a job document.
JobSpec parse_job(const std::string& text);
/// Checks the cross-field constraints (N >= 1, linear part present, ...).
void validate_job(const JobSpec& job);
/// Canonical JSON form; parse_job(serialize_job(j)) reproduces j.
std::string serialize_job(const JobSpec& job);

enum class Format { Json, Text };

struct Report {
  std::string json;  // single deterministic document
  std::string text;  // human-readable rendering
  int exit_code = 0;
};

/// Runs the job. Errors are reported inside the document with exit code 2
/// (input) or 3 (engine); a failed self-check gives exit code 1.
Report run_job(const JobSpec& job);

}  // namespace nfs
