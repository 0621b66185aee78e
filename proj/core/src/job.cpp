#include "nfspectral/job.hpp"

#include <map>
#include <sstream>

#include "json.hpp"
#include "nfspectral/anharmonic.hpp"
#include "nfspectral/engine.hpp"
#include "nfspectral/markers.hpp"
#include "nfspectral/oracle.hpp"

namespace nfs {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& code, const std::string& where, const std::string& what) {
  throw JobError(code, where.empty() ? what : where + ": " + what);
}

int line_of(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

std::string coefficient_text(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  fail("parse_error", where, "coefficient must be a string such as \"3/2\"");
}

int int_field(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail("parse_error", where, "expected an integer");
  return j.get<int>();
}

RingElem ring_elem(const json& j, const RingSpec& ring, const std::string& where) {
  const std::string text = coefficient_text(j, where);
  try {
    return RingElem::parse(text, ring);
  } catch (const std::exception& e) {
    fail("parse_error", where, e.what());
  }
}

RingSpec parse_ring(const json& j) {
  try {
    if (j.is_string()) return RingSpec::parse(j.get<std::string>());
    if (!j.is_object() || !j.contains("kind")) fail("parse_error", "ring", "expected {\"kind\": \"Q\"} or \"Ql:K\"");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "Q") return RingSpec::rationals();
    if (kind == "Ql") {
      if (!j.contains("K")) fail("parse_error", "ring", "local ring needs a truncation order \"K\"");
      return RingSpec::local_series(int_field(j.at("K"), "ring.K"));
    }
    fail("parse_error", "ring.kind", "unknown ring kind '" + kind + "'");
  } catch (const RingError& e) {
    fail("parse_error", "ring", e.what());
  } catch (const json::exception& e) {
    fail("parse_error", "ring", e.what());
  }
}

AElement parse_field(const json& j, const RingSpec& ring) {
  if (!j.is_array()) fail("parse_error", "field", "expected a list of terms");
  AElement field(ring);
  std::map<int, oracle::MonoVF> monomials;  // by power of l
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "field[" + std::to_string(i) + "]";
    const json& e = j[i];
    if (!e.is_array() || e.empty() || !e[0].is_string()) fail("parse_error", where, "expected [\"A\", ...] or [\"M\", ...]");
    const std::string kind = e[0].get<std::string>();
    if (kind == "A") {
      if (e.size() != 5) fail("parse_error", where, "A-term needs [\"A\", s, d, q, coeff]");
      const int s = int_field(e[1], where + "[1]");
      const int d = int_field(e[2], where + "[2]");
      const int q = int_field(e[3], where + "[3]");
      RingElem c = ring_elem(e[4], ring, where + "[4]");
      try {
        field.add(s, d, q, c);
      } catch (const BasisError& err) {
        fail("parse_error", where, err.what());
      }
    } else if (kind == "M") {
      if (e.size() != 5 && e.size() != 6) fail("parse_error", where, "monomial needs [\"M\", a, b, \"x\"|\"y\", re, im?]");
      const int a = int_field(e[1], where + "[1]");
      const int b = int_field(e[2], where + "[2]");
      if (a < 0 || b < 0) fail("parse_error", where, "monomial exponents must be nonnegative");
      if (!e[3].is_string() || (e[3] != "x" && e[3] != "y")) fail("parse_error", where + "[3]", "component must be \"x\" or \"y\"");
      const oracle::Monomial m{a, b, e[3] == "x" ? oracle::Component::X : oracle::Component::Y};
      RingElem re = ring_elem(e[4], ring, where + "[4]");
      RingElem im = e.size() == 6 ? ring_elem(e[5], ring, where + "[5]") : RingElem(ring);
      for (int k = 0; k < ring.length(); ++k) {
        const auto idx = static_cast<std::size_t>(k);
        monomials[k].add(m, oracle::GaussianRational(re[idx], im[idx]));
      }
    } else {
      fail("parse_error", where, "unknown term kind '" + kind + "'");
    }
  }
  for (const auto& [k, mono] : monomials) {
    AElement part;
    try {
      part = oracle::from_monomials(mono);
    } catch (const std::domain_error& err) {
      fail("validation_error", "field", std::string("monomial terms are not expressible in the A-basis over R (") + err.what() + ")");
    }
    for (const auto& [t, c] : part.terms()) field.add(t, RingElem::lambda(ring, k) * c.residue());
  }
  return field;
}

json element_json(const AElement& e) {
  json out = json::array();
  for (const auto& [t, c] : e.terms()) out.push_back({"A", t.s, t.d, t.q, c.to_string()});
  return out;
}

json vectors_json(int p, const std::vector<QVector>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(AElement::from_grade_vector(RingSpec::rationals(), p, v).to_string());
  return out;
}

json spaces_json(const PageState& state) {
  json out = json::array();
  for (int p = 0; p <= state.truncation; ++p) {
    const GradeSpaces& g = state.at(p);
    out.push_back({{"p", p}, {"N", vectors_json(p, g.normal)}, {"T", vectors_json(p, g.transforms)}});
  }
  return out;
}

json table_json(const MarkerTable& t) {
  json out = json::array();
  for (const auto& row : t.rows) {
    json r = json::array();
    for (Marker m : row) r.push_back(to_string(m));
    out.push_back(r);
  }
  return out;
}

json markers_json(const EngineMarkers& mk) {
  json out = json::array();
  for (int p = 0; p <= mk.truncation; ++p) {
    json n = json::array();
    for (const auto& d : mk.normal[static_cast<std::size_t>(p)]) {
      n.push_back({{"direction", AElement::from_grade_vector(RingSpec::rationals(), p, d.direction).to_string()},
                   {"marker", to_string(d.marker)}});
    }
    json t = json::array();
    for (const auto& d : mk.transforms[static_cast<std::size_t>(p)]) t.push_back(d.term->to_string());
    out.push_back({{"p", p}, {"N", n}, {"T", t}});
  }
  return out;
}

bool field_command(Command c) { return c != Command::Selftest; }

// First-page kernel and image against the monomial oracle.
json oracle_first_page_check(const AElement& field, const PageState& first) {
  const AElement v0 = field.residue().graded_part(0);
  const int top = std::min(first.truncation, 8);
  bool ok = true;
  for (int p = 0; p <= top; ++p) {
    const auto fp = oracle::brute_force_first_page(v0, p);
    const GradeSpaces& g = first.at(p);
    if (oracle::echelon_basis(g.normal, grade_dim(p)) != fp.kernel) ok = false;
    if (oracle::echelon_basis(g.image, grade_dim(p)) != fp.image) ok = false;
  }
  return {{"ok", ok}, {"degrees_checked", top + 1}};
}

void render_spaces(std::ostringstream& out, const json& spaces) {
  for (const auto& s : spaces) {
    if (s["N"].empty() && s["T"].empty()) continue;
    out << "  p=" << s["p"].get<int>() << "  N: ";
    for (const auto& x : s["N"]) out << x.get<std::string>() << "; ";
    out << " T: ";
    for (const auto& x : s["T"]) out << x.get<std::string>() << "; ";
    out << '\n';
  }
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::Normalize: return "normalize";
    case Command::Classify: return "classify";
    case Command::Page: return "page";
    case Command::Selftest: return "selftest";
  }
  return "?";
}

Command parse_command(const std::string& text) {
  if (text == "normalize") return Command::Normalize;
  if (text == "classify") return Command::Classify;
  if (text == "page") return Command::Page;
  if (text == "selftest") return Command::Selftest;
  throw JobError("parse_error", "command: unknown command '" + text + "'");
}

JobSpec parse_job(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("parse_error", "line " + std::to_string(line_of(text, e.byte)), e.what());
  }
  if (!doc.is_object()) fail("parse_error", "", "job must be a JSON object");
  JobSpec job;
  try {
    if (doc.contains("ring")) job.ring = parse_ring(doc["ring"]);
    if (doc.contains("N")) job.truncation = int_field(doc["N"], "N");
    if (doc.contains("command")) {
      if (!doc["command"].is_string()) fail("parse_error", "command", "expected a string");
      job.command = parse_command(doc["command"].get<std::string>());
    }
    if (doc.contains("page")) job.page = int_field(doc["page"], "page");
    if (doc.contains("s_max")) job.s_max = int_field(doc["s_max"], "s_max");
    if (doc.contains("madic_levels")) job.madic_levels = int_field(doc["madic_levels"], "madic_levels");
    auto flag = [&](const char* key, bool& dst) {
      if (!doc.contains(key)) return;
      if (!doc[key].is_boolean()) fail("parse_error", key, "expected true or false");
      dst = doc[key].get<bool>();
    };
    flag("scale_leading", job.scale_leading);
    flag("oracle_check", job.oracle_check);
    job.field = AElement(job.ring);
    if (doc.contains("field")) {
      job.field = parse_field(doc["field"], job.ring);
    } else if (field_command(job.command)) {
      fail("parse_error", "field", "missing");
    }
  } catch (const json::exception& e) {
    fail("parse_error", "", e.what());
  }
  validate_job(job);
  return job;
}

void validate_job(const JobSpec& job) {
  if (job.truncation < 1) fail("validation_error", "N", "must be at least 1");
  if (job.s_max < 0) fail("validation_error", "s_max", "must be nonnegative");
  if (job.page < 0) fail("validation_error", "page", "must be nonnegative");
  if (job.madic_levels < 0 || job.madic_levels > job.ring.length()) {
    fail("validation_error", "madic_levels", "must lie between 0 and the ring order K");
  }
  if (!field_command(job.command)) return;
  if (auto lo = job.field.min_degree(); lo && *lo < 0) {
    fail("validation_error", "field", "constant terms (s = -1) are not supported");
  }
  if (job.field.graded_part(0).residue().is_zero()) {
    fail("validation_error", "field", "no linear (degree-0) term with a unit coefficient");
  }
  if (job.command == Command::Classify && job.truncation % 2 != 0) {
    fail("validation_error", "N", "classify needs an even truncation degree");
  }
  if (job.command == Command::Classify && job.truncation < 2) {
    fail("validation_error", "N", "classify needs N >= 2");
  }
}

std::string serialize_job(const JobSpec& job) {
  json doc;
  doc["ring"] = job.ring.is_local() ? json{{"kind", "Ql"}, {"K", job.ring.order}} : json{{"kind", "Q"}};
  doc["N"] = job.truncation;
  doc["command"] = to_string(job.command);
  doc["page"] = job.page;
  doc["s_max"] = job.s_max;
  doc["scale_leading"] = job.scale_leading;
  doc["madic_levels"] = job.madic_levels;
  doc["oracle_check"] = job.oracle_check;
  doc["field"] = element_json(job.field);
  return doc.dump(2) + "\n";
}

Report run_job(const JobSpec& job) {
  json doc;
  doc["command"] = to_string(job.command);
  std::ostringstream text;
  Report report;
  try {
    validate_job(job);
    switch (job.command) {
      case Command::Selftest: {
        const auto rep = oracle::check_structure_constants(job.s_max);
        json pairs = json::array();
        for (std::size_t i = 0; i < rep.mismatches.size() && i < 20; ++i) {
          pairs.push_back(rep.mismatches[i].first.to_string() + " , " + rep.mismatches[i].second.to_string());
        }
        doc["s_max"] = job.s_max;
        doc["pairs_checked"] = rep.pairs_checked;
        doc["mismatches"] = rep.mismatches.size();
        doc["mismatch_pairs"] = pairs;
        doc["ok"] = rep.ok();
        report.exit_code = rep.ok() ? 0 : 1;
        text << "structure constants, lower index up to " << job.s_max << ": " << rep.pairs_checked << " pairs, "
             << rep.mismatches.size() << " mismatches -> " << (rep.ok() ? "PASS" : "FAIL") << '\n';
        break;
      }
      case Command::Normalize: {
        doc["ring"] = job.ring.to_string();
        doc["N"] = job.truncation;
        doc["input"] = element_json(job.field);
        const NormalFormResult nf = unique_normal_form(job.field, job.truncation);
        doc["field"] = element_json(nf.field);
        doc["field_text"] = nf.field.to_string();
        json log = json::array();
        for (const auto& g : nf.log) {
          log.push_back({{"degree", g.degree}, {"page", g.page}, {"generator", element_json(g.element)}});
        }
        doc["log"] = log;
        doc["page"] = nf.state.page;
        doc["spaces"] = spaces_json(nf.state);
        const EngineMarkers mk = engine_markers(nf.field, job.truncation);
        doc["markers"] = markers_json(mk);
        doc["series"] = mk.series.to_string();
        doc["m_count"] = mk.ideal_count;
        text << "normal form (N=" << job.truncation << ", R=" << job.ring.to_string() << "):\n  " << nf.field.to_string()
             << "\n" << nf.log.size() << " generators applied\nsurviving directions:\n";
        for (const auto& row : doc["markers"]) {
          if (row["N"].empty() && row["T"].empty()) continue;
          text << "  p=" << row["p"].get<int>() << "  N: ";
          for (const auto& d : row["N"]) text << d["direction"].get<std::string>() << " [" << d["marker"].get<std::string>() << "]; ";
          text << " T: ";
          for (const auto& t : row["T"]) text << t.get<std::string>() << "; ";
          text << '\n';
        }
        text << "P(t) = " << mk.series.to_string() << '\n';
        if (job.oracle_check) {
          const PageState fp = first_page(job.field, job.truncation);
          doc["oracle_check"] = oracle_first_page_check(job.field, fp);
          const bool ok = doc["oracle_check"]["ok"].get<bool>();
          if (!ok) report.exit_code = 1;
          text << "oracle first-page check: " << (ok ? "PASS" : "FAIL") << '\n';
        }
        break;
      }
      case Command::Classify: {
        doc["ring"] = job.ring.to_string();
        doc["N"] = job.truncation;
        const EngineComparison cmp = compare_with_engine(job.field, job.truncation);
        const SeriesReport sr = series(cmp.label);
        const bool verified = job.truncation >= verified_truncation(cmp.label);
        doc["case"] = cmp.label.to_string();
        doc["normal_form"] = element_json(cmp.normal_form);
        doc["table"] = table_json(cmp.closed_form);
        doc["engine_table"] = table_json(cmp.engine);
        doc["verified"] = verified;
        doc["engine_agrees"] = cmp.agrees();
        doc["mismatches"] = cmp.mismatches;
        if (cmp.label.variant == CaseLabel::Variant::LinearOnly) {
          doc["note"] = "undetermined at truncation N";
          doc["P"] = nullptr;
          doc["index"] = nullptr;
          doc["codim"] = nullptr;
        } else {
          doc["P"] = sr.P.to_string();
          doc["index"] = index_summary(cmp.label);
          if (sr.codim) {
            doc["codim"] = *sr.codim;
          } else {
            doc["codim"] = "inf";
          }
        }
        if (verified && !cmp.agrees()) report.exit_code = 1;
        text << "case " << cmp.label.to_string();
        if (cmp.label.variant == CaseLabel::Variant::LinearOnly) {
          text << " (undetermined at truncation N=" << job.truncation << ")\n";
        } else {
          text << "   P(t) = " << sr.P.to_string() << "   index " << index_summary(cmp.label) << "   codim "
               << sr.codim_string() << '\n';
        }
        text << "normal form: " << cmp.normal_form.to_string() << "\nE_inf table:\n"
             << cmp.closed_form.to_text() << "engine agreement: " << (cmp.agrees() ? "yes" : "NO") << '\n';
        for (const auto& m : cmp.mismatches) text << "  " << m << '\n';

        if (job.scale_leading) {
          const AElement scaled = scale_leading(cmp.normal_form);
          const CaseLabel again = classify(scaled, job.truncation);
          doc["scaled_field"] = element_json(scaled);
          doc["scale_invariant"] = again == cmp.label;
          if (!(again == cmp.label)) report.exit_code = 1;
          text << "scaled: " << scaled.to_string() << '\n';
        }
        if (job.madic_levels > 0) {
          const MadicReport mr = madic_refine(job.field, job.truncation, job.madic_levels);
          json levels = json::array();
          for (const auto& l : mr.levels) {
            levels.push_back({{"level", l.level}, {"case", l.label.to_string()}, {"P", l.P.to_string()}});
          }
          doc["madic"] = {{"levels", levels}, {"generating_function", mr.generating_function()}};
          text << "m-adic levels:";
          for (const auto& l : mr.levels) text << "  m^" << l.level << " " << l.label.to_string();
          text << "\ngenerating function: " << mr.generating_function() << '\n';
        }
        break;
      }
      case Command::Page: {
        doc["ring"] = job.ring.to_string();
        doc["N"] = job.truncation;
        const PageState state = compute_pages(job.field, job.truncation, job.page);
        doc["page"] = job.page;
        doc["spaces"] = spaces_json(state);
        doc["series"] = page_series(state, job.truncation).to_string();
        text << "E_" << job.page << " through degree " << job.truncation << ":\n";
        render_spaces(text, doc["spaces"]);
        text << "P(t) = " << doc["series"].get<std::string>() << '\n';
        break;
      }
    }
  } catch (const JobError& e) {
    doc = {{"command", to_string(job.command)}, {"error", {{"code", e.code()}, {"message", e.what()}}}};
    report.exit_code = 2;
  } catch (const ClassificationError& e) {
    doc = {{"command", to_string(job.command)}, {"error", {{"code", "classification_error"}, {"message", e.what()}}}};
    report.exit_code = 3;
  } catch (const EngineError& e) {
    doc = {{"command", to_string(job.command)}, {"error", {{"code", "engine_error"}, {"message", e.what()}}}};
    report.exit_code = 3;
  } catch (const RingError& e) {
    doc = {{"command", to_string(job.command)}, {"error", {{"code", "engine_error"}, {"message", e.what()}}}};
    report.exit_code = 3;
  }
  if (doc.contains("error")) {
    text.str("");
    text << "error (" << doc["error"]["code"].get<std::string>() << "): " << doc["error"]["message"].get<std::string>()
         << '\n';
  }
  report.json = doc.dump(2) + "\n";
  report.text = text.str();
  return report;
}

}  // namespace nfs
