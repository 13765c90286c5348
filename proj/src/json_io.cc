// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "widgetcalc/json_io.h"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>
#include <utility>

#include "widgetcalc/errors.h"

namespace widgetcalc {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string LineOf(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  const auto line = 1 + std::count(text.begin(), text.begin() + byte, '\n');
  return "line " + std::to_string(line);
}

std::string PointPath(std::size_t pair, std::size_t side) {
  return "pairs[" + std::to_string(pair) + "][" + std::to_string(side) + "]";
}

Field ParseField(const json& j) {
  if (j.is_string() && j.get<std::string>() == "rational") {
    return Field::Rational();
  }
  if (j.is_object() && j.size() == 1 && j.contains("prime")) {
    const json& p = j.at("prime");
    if (!p.is_number_unsigned() && !p.is_number_integer()) {
      throw ParseError("field.prime", "modulus must be an integer");
    }
    if (p.is_number_integer() && p.get<long long>() < 2) {
      throw ParseError("field.prime", "modulus must be at least 2");
    }
    try {
      return Field::Prime(p.get<std::uint64_t>());
    } catch (const InputError& e) {
      throw ParseError("field.prime", e.what());
    }
  }
  throw ParseError("field",
                   "expected \"rational\" or {\"prime\": P}, got " + j.dump());
}

Scalar ParseRational(const json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) {
      return Scalar::FromRational(mpq_class(mpz_class(
          std::to_string(j.get<std::uint64_t>()))));
    }
    return Scalar::FromRational(mpq_class(j.get<long>()));
  }
  if (j.is_string()) {
    static const std::regex kRational(R"(^([+-]?[0-9]+)(/([0-9]+))?$)");
    const std::string s = j.get<std::string>();
    std::smatch m;
    if (!std::regex_match(s, m, kRational)) {
      throw ParseError(where, "malformed rational \"" + s + "\"");
    }
    std::string num = m[1].str();
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    mpz_class numerator(num);
    mpz_class denominator = 1;
    if (m[3].matched) {
      denominator = mpz_class(m[3].str());
      if (denominator == 0) {
        throw ParseError(where, "zero denominator in \"" + s + "\"");
      }
    }
    return Scalar::FromRational(mpq_class(numerator, denominator));
  }
  throw ParseError(where, "expected an integer or an \"a/b\" string, got " +
                              j.dump());
}

Scalar ParseResidue(const json& j, Field field, const std::string& where) {
  if (!j.is_number_integer()) {
    throw ParseError(where, "prime-field coordinate must be an integer, got " +
                                j.dump());
  }
  if (!j.is_number_unsigned() || j.get<std::uint64_t>() >= field.modulus()) {
    throw ParseError(where, "coordinate " + j.dump() + " not reduced modulo " +
                                std::to_string(field.modulus()));
  }
  return Scalar::FromResidue(field, j.get<std::uint64_t>());
}

Point ParsePoint(const json& j, Field field, std::size_t dim,
                 const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "point must be an array");
  if (j.size() != dim) {
    throw ParseError(where, "point has " + std::to_string(j.size()) +
                                " coordinates, ambient_dim is " +
                                std::to_string(dim));
  }
  Point p;
  p.reserve(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    const std::string at = where + "[" + std::to_string(c) + "]";
    p.push_back(field.is_rational() ? ParseRational(j[c], at)
                                    : ParseResidue(j[c], field, at));
  }
  return p;
}

std::string ScalarText(const Scalar& s) { return ScalarToJson(s).dump(); }

std::string PointText(const Point& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) out += ", ";
    out += ScalarText(p[i]);
  }
  return out + "]";
}

ordered_json Labels(const SubwidgetSel& sel) {
  return ordered_json(sel.Labels());
}

}  // namespace

Widget ParseWidget(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(LineOf(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
  if (!doc.is_object()) throw ParseError("line 1", "expected a JSON object");
  for (const char* key : {"field", "ambient_dim", "pairs"}) {
    if (!doc.contains(key)) {
      throw ParseError(key, std::string("missing key \"") + key + "\"");
    }
  }
  for (const auto& [key, value] : doc.items()) {
    if (key != "field" && key != "ambient_dim" && key != "pairs") {
      throw ParseError(key, "unknown key \"" + key + "\"");
    }
  }
  const Field field = ParseField(doc.at("field"));
  const json& dim_json = doc.at("ambient_dim");
  if (!dim_json.is_number_unsigned()) {
    throw ParseError("ambient_dim", "must be a non-negative integer");
  }
  const auto dim = dim_json.get<std::size_t>();
  const json& pairs_json = doc.at("pairs");
  if (!pairs_json.is_array() || pairs_json.empty()) {
    throw ParseError("pairs", "must be a nonempty array");
  }
  std::vector<Pair> pairs;
  pairs.reserve(pairs_json.size());
  for (std::size_t i = 0; i < pairs_json.size(); ++i) {
    const json& pj = pairs_json[i];
    if (!pj.is_array() || pj.size() != 2) {
      throw ParseError("pairs[" + std::to_string(i) + "]",
                       "a pair is [[plus coords], [minus coords]]");
    }
    pairs.push_back(Pair{ParsePoint(pj[0], field, dim, PointPath(i, 0)),
                         ParsePoint(pj[1], field, dim, PointPath(i, 1))});
  }
  return Widget(field, dim, std::move(pairs));
}

std::string SerializeWidget(const Widget& w) {
  std::string out = "{\n";
  out += "  \"field\": " + FieldToJson(w.field()).dump() + ",\n";
  out += "  \"ambient_dim\": " + std::to_string(w.ambient_dim()) + ",\n";
  out += "  \"pairs\": [\n";
  for (std::size_t i = 0; i < w.size(); ++i) {
    out += "    [" + PointText(w.pair(i).plus) + ", " +
           PointText(w.pair(i).minus) + "]";
    out += i + 1 < w.size() ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

Widget ReadWidgetFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseWidget(buf.str());
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("write failed for " + path);
}

ordered_json FieldToJson(Field f) {
  if (f.is_rational()) return "rational";
  ordered_json j;
  j["prime"] = f.modulus();
  return j;
}

ordered_json ScalarToJson(const Scalar& s) {
  if (!s.field().is_rational()) return s.residue();
  const mpq_class& q = s.rational();
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) {
    return static_cast<long long>(q.get_num().get_si());
  }
  return q.get_str();
}

ordered_json SectionToJson(const Section& s) {
  ordered_json j = ordered_json::array();
  for (Choice c : s.choices) {
    j.push_back(c == Choice::kPlus ? "+" : c == Choice::kMinus ? "-" : ".");
  }
  return j;
}

Section SectionFromJson(const json& j) {
  if (!j.is_array()) throw ParseError("witness_section", "expected an array");
  Section s;
  for (const json& c : j) {
    const std::string v = c.is_string() ? c.get<std::string>() : "";
    if (v == "+") {
      s.choices.push_back(Choice::kPlus);
    } else if (v == "-") {
      s.choices.push_back(Choice::kMinus);
    } else if (v == ".") {
      s.choices.push_back(Choice::kSkip);
    } else {
      throw ParseError("witness_section", "bad choice " + c.dump());
    }
  }
  return s;
}

ordered_json ProofStepToJson(const ProofStep& step) {
  ordered_json j;
  j["kind"] = ProofStepKindName(step.kind);
  j["i"] = step.pair_index ? ordered_json(*step.pair_index + 1)
                           : ordered_json(nullptr);
  j["c"] = step.c ? ordered_json(step.c->ToString()) : ordered_json(nullptr);
  j["k_before"] = step.k_before;
  j["k_after"] = step.k_after;
  j["section_dims"] = step.section_dims;
  if (step.target_section) j["target_section"] = *step.target_section + 1;
  if (step.kind == ProofStep::Kind::kPerturb) j["rejected_c"] = step.rejected_c;
  if (step.relabeling) {
    ordered_json order = ordered_json::array();
    ordered_json flipped = ordered_json::array();
    for (std::size_t p = 0; p < step.relabeling->order.size(); ++p) {
      order.push_back(step.relabeling->order[p] + 1);
      if (step.relabeling->flip[p]) flipped.push_back(p + 1);
    }
    j["relabel"] = {{"order", order}, {"flip", flipped}};
  }
  if (step.subwidget) j["subwidget"] = Labels(*step.subwidget);
  if (step.direct_check) j["direct_check"] = true;
  return j;
}

ordered_json CertificateToJson(const Certificate& c) {
  ordered_json j;
  j["verdict"] = VerdictName(c.verdict);
  j["legal_subwidget"] =
      c.subwidget ? Labels(*c.subwidget) : ordered_json(nullptr);
  j["witness_section"] = c.witness_section
                             ? SectionToJson(*c.witness_section)
                             : ordered_json(nullptr);
  if (c.trace) {
    ordered_json steps = ordered_json::array();
    for (const ProofStep& s : *c.trace) steps.push_back(ProofStepToJson(s));
    j["trace"] = std::move(steps);
  } else {
    j["trace"] = nullptr;
  }
  return j;
}

ordered_json WidgetToJson(const Widget& w) {
  ordered_json j;
  j["field"] = FieldToJson(w.field());
  j["ambient_dim"] = w.ambient_dim();
  ordered_json pairs = ordered_json::array();
  for (const Pair& p : w.pairs()) {
    ordered_json plus = ordered_json::array();
    ordered_json minus = ordered_json::array();
    for (const Scalar& s : p.plus) plus.push_back(ScalarToJson(s));
    for (const Scalar& s : p.minus) minus.push_back(ScalarToJson(s));
    pairs.push_back({plus, minus});
  }
  j["pairs"] = std::move(pairs);
  return j;
}

std::string VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kValid:
      return "Valid";
    case Verdict::kNotLegal:
      return "NotLegal";
    case Verdict::kNotFull:
      return "NotFull";
    case Verdict::kLegalSubwidgetFound:
      return "LegalSubwidgetFound";
    case Verdict::kTheoremViolation:
      return "TheoremViolation";
  }
  return "?";
}

std::string ProofStepKindName(ProofStep::Kind k) {
  switch (k) {
    case ProofStep::Kind::kRelabel:
      return "Relabel";
    case ProofStep::Kind::kPerturb:
      return "Perturb";
    case ProofStep::Kind::kBranchSubwidgetFound:
      return "BranchSubwidgetFound";
    case ProofStep::Kind::kKZero:
      return "KZero";
  }
  return "?";
}

}  // namespace widgetcalc
