#include <gtest/gtest.h>

#include "json.hpp"
#include "nfspectral/job.hpp"

using namespace nfs;
using nlohmann::json;

namespace {

const char* kSupOne = R"({"ring": "Q", "N": 8, "command": "classify",
  "field": [["A", 0, 0, 1, "1"], ["A", 2, 0, 0, "1"], ["A", 2, 0, 1, "1"]]})";

std::string error_code(const std::string& text) {
  try {
    (void)parse_job(text);
  } catch (const JobError& e) {
    return e.code() + ": " + e.what();
  }
  return "";
}

TEST(ParseJob, Defaults) {
  const auto job = parse_job(R"({"field": [["A", 0, 0, 1, "1"]]})");
  EXPECT_EQ(job.ring, RingSpec::rationals());
  EXPECT_EQ(job.truncation, 16);
  EXPECT_EQ(job.command, Command::Normalize);
  EXPECT_FALSE(job.scale_leading);
  EXPECT_EQ(job.madic_levels, 0);
}

TEST(ParseJob, RingSpellings) {
  const char* field = R"("field": [["A", 0, 0, 1, "1"], ["A", 2, 0, 0, "1/2 + l"]])";
  EXPECT_EQ(parse_job(std::string(R"({"ring": "Ql:3", )") + field + "}").ring, RingSpec::local_series(3));
  EXPECT_EQ(parse_job(std::string(R"({"ring": {"kind": "Ql", "K": 2}, )") + field + "}").ring, RingSpec::local_series(2));
  const auto job = parse_job(std::string(R"({"ring": "Ql:3", )") + field + "}");
  EXPECT_EQ(job.field.coefficient({2, 0, 0}), RingElem::parse("1/2 + l", job.ring));
}

TEST(ParseJob, MonomialEntries) {
  const auto job = parse_job(R"({"field": [["M", 1, 0, "x", "0", "1"], ["M", 0, 1, "y", "0", "-1"],
                                           ["M", 2, 1, "x", "3"], ["M", 1, 2, "y", "3"]]})");
  AElement expected = AElement::term(RingSpec::rationals(), 0, 0, 1);
  expected.add(2, 0, 0, RingElem(RingSpec::rationals(), 3));
  EXPECT_EQ(job.field, expected);
}

TEST(ParseJob, Errors) {
  EXPECT_NE(error_code(R"({"field": [["A", 0, 0, 1, "1/0"]]})").find("parse_error: field[0][4]"), std::string::npos);
  EXPECT_NE(error_code(R"({"field": [["A", 2, 0, 0, "1"]]})").find("validation_error"), std::string::npos);
  EXPECT_NE(error_code(R"({"field": [["A", 0, 0, 1, "1"]], "N": 0})").find("validation_error: N"), std::string::npos);
  EXPECT_NE(error_code(R"({"field": [["A", 0, 0, 1, "1"]], "command": "classify", "N": 7})").find("even"), std::string::npos);
  EXPECT_NE(error_code(R"({"field": [["A", 1, 3, 0, "1"]]})").find("not a basis element"), std::string::npos);
  EXPECT_NE(error_code(R"({"field": [["A", -1, -1, 0, "1"], ["A", 0, 0, 1, "1"]]})").find("constant"), std::string::npos);
  EXPECT_NE(error_code("{\"field\": [\n[\"A\", 0, 0, 1, \"1\"]").find("line 2"), std::string::npos);
  EXPECT_NE(error_code(R"({"ring": "Q", "field": [["A", 0, 0, 1, "l"]]})").find("parse_error"), std::string::npos);
  EXPECT_NE(error_code(R"({"ring": "Ql:2", "field": [["A", 0, 0, 1, "1"]], "madic_levels": 3})").find("madic_levels"),
            std::string::npos);
  EXPECT_NE(error_code(R"({"command": "frobnicate", "field": []})").find("unknown command"), std::string::npos);
  EXPECT_NE(error_code(R"([1, 2])").find("parse_error"), std::string::npos);
}

TEST(SerializeJob, RoundTrip) {
  const auto job = parse_job(R"({"ring": "Ql:3", "N": 12, "command": "classify", "madic_levels": 2, "scale_leading": true,
    "field": [["A", 0, 0, 1, "1"], ["A", 2, 0, 0, "l"], ["A", 4, 0, 0, "1 - 1/3*l^2"], ["A", 3, 1, 1, "2"]]})");
  const auto again = parse_job(serialize_job(job));
  EXPECT_EQ(again.ring, job.ring);
  EXPECT_EQ(again.field, job.field);
  EXPECT_EQ(again.truncation, job.truncation);
  EXPECT_EQ(again.command, job.command);
  EXPECT_EQ(again.madic_levels, job.madic_levels);
  EXPECT_EQ(again.scale_leading, job.scale_leading);
  EXPECT_EQ(serialize_job(again), serialize_job(job));
}

TEST(RunJob, ClassifyReport) {
  const auto report = run_job(parse_job(kSupOne));
  EXPECT_EQ(report.exit_code, 0);
  const auto doc = json::parse(report.json);
  EXPECT_EQ(doc["case"], "A^1");
  EXPECT_EQ(doc["index"], 2);
  EXPECT_EQ(doc["codim"], 1);
  EXPECT_EQ(doc["P"], "t^2+t^4");
  EXPECT_EQ(doc["engine_agrees"], true);
  EXPECT_NE(report.text.find("A^1"), std::string::npos);
}

TEST(RunJob, Deterministic) {
  const auto job = parse_job(kSupOne);
  EXPECT_EQ(run_job(job).json, run_job(job).json);
  auto normalize = job;
  normalize.command = Command::Normalize;
  EXPECT_EQ(run_job(normalize).json, run_job(normalize).json);
}

TEST(RunJob, LinearOnlyIsUndetermined) {
  const auto report = run_job(parse_job(R"({"command": "classify", "N": 6, "field": [["A", 0, 0, 1, "1"]]})"));
  const auto doc = json::parse(report.json);
  EXPECT_EQ(doc["case"], "linear-only");
  EXPECT_TRUE(doc["codim"].is_null());
  EXPECT_NE(doc.dump().find("undetermined at truncation"), std::string::npos);
}

TEST(RunJob, NormalizeWithOracleCheck) {
  auto job = parse_job(R"({"N": 6, "oracle_check": true,
    "field": [["A", 0, 0, 1, "1"], ["A", 1, 1, 0, "2"], ["A", 2, 0, 0, "1"], ["A", 2, -2, 1, "3"], ["A", 4, 0, 1, "1"]]})");
  const auto report = run_job(job);
  EXPECT_EQ(report.exit_code, 0);
  const auto doc = json::parse(report.json);
  EXPECT_EQ(doc["series"], "t^2+t^4");
  EXPECT_EQ(doc["oracle_check"]["ok"], true);
}

TEST(RunJob, PageAndSelftest) {
  auto job = parse_job(kSupOne);
  job.command = Command::Page;
  job.page = 3;
  const auto page = json::parse(run_job(job).json);
  EXPECT_EQ(page["page"], 3);
  job.command = Command::Selftest;
  job.s_max = 3;
  const auto self = run_job(job);
  EXPECT_EQ(self.exit_code, 0);
  EXPECT_EQ(json::parse(self.json)["mismatches"], 0);
}

TEST(RunJob, Madic) {
  const auto report = run_job(parse_job(R"({"ring": "Ql:3", "N": 12, "command": "classify", "madic_levels": 3,
    "field": [["A", 0, 0, 1, "1"], ["A", 2, 0, 0, "l"], ["A", 4, 0, 0, "1"]]})"));
  const auto doc = json::parse(report.json);
  EXPECT_EQ(doc["case"], "A^2");
  EXPECT_EQ(doc["madic"]["generating_function"], "2t^2+t^4+t^8 + u*(t^2+t^4)");
}

TEST(Command, TextRoundTrip) {
  for (Command c : {Command::Normalize, Command::Classify, Command::Page, Command::Selftest})
    EXPECT_EQ(parse_command(to_string(c)), c);
}

}  // namespace
