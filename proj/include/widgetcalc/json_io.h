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

// JSON file formats.
//
// Widget file:
//
//   {"field": "rational" | {"prime": P},
//    "ambient_dim": D,
//    "pairs": [[[plus coords], [minus coords]], ...]}
//
// Rational coordinates are integer literals or strings "a" / "a/b" with
// b > 0; they are normalized to lowest terms on parse. Prime-field
// coordinates are integers in [0, P).
//
// Certificate:
//
//   {"verdict": "...", "legal_subwidget": [1-based indices] | null,
//    "witness_section": ["+", "-", "."] | null, "trace": [...] | null}

#ifndef WIDGETCALC_JSON_IO_H_
#define WIDGETCALC_JSON_IO_H_

#include <string>
#include <string_view>

#include "json.hpp"
#include "widgetcalc/certificate.h"
#include "widgetcalc/widget.h"

namespace widgetcalc {

// Throws ParseError with a line or element location.
Widget ParseWidget(std::string_view text);

// Canonical text: one pair per line, trailing newline. ParseWidget inverts
// it exactly, and SerializeWidget(ParseWidget(t)) == t for canonical t.
std::string SerializeWidget(const Widget& w);

Widget ReadWidgetFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& text);

nlohmann::ordered_json FieldToJson(Field f);
nlohmann::ordered_json ScalarToJson(const Scalar& s);
nlohmann::ordered_json SectionToJson(const Section& s);
nlohmann::ordered_json ProofStepToJson(const ProofStep& step);
nlohmann::ordered_json CertificateToJson(const Certificate& c);
nlohmann::ordered_json WidgetToJson(const Widget& w);

// Parses the "+", "-", "." encoding.
Section SectionFromJson(const nlohmann::json& j);

}  // namespace widgetcalc

#endif  // WIDGETCALC_JSON_IO_H_
