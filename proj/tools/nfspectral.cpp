// nfspectral: unique normal forms of planar vector fields in the A-basis.
//
//   nfspectral normalize --input job.json [--degree N] [--ring Q|Ql:K] [--oracle-check]
//   nfspectral classify  --input job.json [--madic-levels L] [--scale-leading]
//   nfspectral page      --input job.json --page R
//   nfspectral selftest  [--smax 10]
//
// Every subcommand accepts --format json|text (default json).

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "nfspectral/job.hpp"

namespace {

struct Options {
  std::string input;
  std::optional<int> degree;
  std::optional<std::string> ring;
  std::optional<int> madic_levels;
  std::optional<int> page;
  std::optional<int> s_max;
  bool scale_leading = false;
  bool oracle_check = false;
  std::string format = "json";
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw nfs::JobError("parse_error", "cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Command-line values replace the corresponding keys of the job document, so
// they go through the same validation as the file itself.
std::string apply_overrides(const std::string& text, nfs::Command command, const Options& opt) {
  nlohmann::json doc;
  if (!text.empty()) {
    doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) return text;  // parse_job reports the error
  } else {
    doc = nlohmann::json::object();
  }
  doc["command"] = nfs::to_string(command);
  if (opt.ring) doc["ring"] = *opt.ring;
  if (opt.degree) doc["N"] = *opt.degree;
  if (opt.madic_levels) doc["madic_levels"] = *opt.madic_levels;
  if (opt.page) doc["page"] = *opt.page;
  if (opt.s_max) doc["s_max"] = *opt.s_max;
  if (opt.scale_leading) doc["scale_leading"] = true;
  if (opt.oracle_check) doc["oracle_check"] = true;
  return doc.dump();
}

int run(nfs::Command command, const Options& opt) {
  std::string text;
  if (!opt.input.empty()) text = read_input(opt.input);
  const nfs::JobSpec job = nfs::parse_job(apply_overrides(text, command, opt));
  const nfs::Report report = nfs::run_job(job);
  std::cout << (opt.format == "text" ? report.text : report.json);
  if (!report.json.empty() && report.json.back() != '\n' && opt.format == "json") std::cout << '\n';
  return report.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unique normal forms of planar vector fields by spectral sequences"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_field) {
    auto* in = sub->add_option("--input", opt.input, "job file (JSON), or - for stdin");
    if (needs_field) in->required();
    sub->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "text"}));
  };
  auto add_field_options = [&](CLI::App* sub) {
    sub->add_option("--degree", opt.degree, "truncation degree N");
    sub->add_option("--ring", opt.ring, "coefficient ring: Q or Ql:K");
    sub->add_flag("--oracle-check", opt.oracle_check, "cross-check the first page against the monomial oracle");
  };

  auto* normalize = app.add_subcommand("normalize", "compute the unique normal form");
  add_common(normalize, true);
  add_field_options(normalize);

  auto* classify = app.add_subcommand("classify", "classify an anharmonic oscillator");
  add_common(classify, true);
  add_field_options(classify);
  classify->add_option("--madic-levels", opt.madic_levels, "number of m-adic levels");
  classify->add_flag("--scale-leading", opt.scale_leading, "scale the leading unit coefficient to 1");

  auto* page = app.add_subcommand("page", "dump the page E_r");
  add_common(page, true);
  add_field_options(page);
  page->add_option("--page", opt.page, "page index r")->required();

  auto* selftest = app.add_subcommand("selftest", "check the structure constants against the monomial bracket");
  add_common(selftest, false);
  selftest->add_option("--smax", opt.s_max, "largest lower index checked");

  CLI11_PARSE(app, argc, argv);

  nfs::Command command = nfs::Command::Selftest;
  if (normalize->parsed()) command = nfs::Command::Normalize;
  if (classify->parsed()) command = nfs::Command::Classify;
  if (page->parsed()) command = nfs::Command::Page;

  try {
    return run(command, opt);
  } catch (const nfs::JobError& e) {
    std::cerr << "error (" << e.code() << "): " << e.what() << '\n';
    return 2;
  }
}
