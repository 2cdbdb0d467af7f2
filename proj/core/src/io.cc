// Copyright 2026 The robctl Authors
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

#include "robctl/io.h"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string>

#include "json.hpp"
#include "robctl/error.h"

namespace robctl {
namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::kInvalidInput, "field " + path + ": " + what);
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    int line = 1;
    int col = 1;
    const size_t end = std::min(text.size(), e.byte > 0 ? e.byte - 1 : 0);
    for (size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::kInvalidInput,
                "line " + std::to_string(line) + ", column " +
                    std::to_string(col) + ": malformed JSON");
  }
}

void require_object(const json& j, const std::string& path,
                    std::initializer_list<const char*> allowed) {
  if (!j.is_object()) field_error(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* a : allowed) known = known || it.key() == a;
    if (!known) field_error(path + "." + it.key(), "unknown field");
  }
}

const json& member(const json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) field_error(path + "." + key, "missing");
  return *it;
}

double number(const json& j, const std::string& path, bool allow_inf = false) {
  if (j.is_number()) return j.get<double>();
  if (allow_inf && j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  field_error(path, allow_inf ? "expected a number or \"inf\"/\"-inf\""
                              : "expected a number");
}

double number_or(const json& j, const std::string& path, const char* key,
                 double fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : number(*it, path + "." + key);
}

json number_json(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  return v;
}

PwaConvex parse_pwa(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) field_error(path, "expected a nonempty array of [slope, intercept]");
  std::vector<AffinePiece> pieces;
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) field_error(p, "expected [slope, intercept]");
    pieces.push_back({number(j[i][0], p + "[0]"), number(j[i][1], p + "[1]")});
  }
  return PwaConvex::canonicalize(std::move(pieces));
}

}  // namespace

Instance parse_instance(const std::string& text) {
  const json root = parse_text(text);
  require_object(root, "$", {"horizon", "x1", "stages"});
  Instance inst;
  inst.x1 = number(member(root, "$", "x1"), "$.x1");
  const json& stages = member(root, "$", "stages");
  if (!stages.is_array()) field_error("$.stages", "expected an array");
  const json& horizon = member(root, "$", "horizon");
  if (!horizon.is_number_integer() ||
      horizon.get<long>() != static_cast<long>(stages.size())) {
    field_error("$.horizon", "must be an integer equal to the number of stages");
  }
  for (size_t k = 0; k < stages.size(); ++k) {
    const std::string p = "$.stages[" + std::to_string(k) + "]";
    const json& js = stages[k];
    require_object(js, p, {"c", "L", "U", "w", "h", "alpha", "beta", "gamma",
                           "cum_bound"});
    Stage s;
    s.c = number(member(js, p, "c"), p + ".c");
    s.L = number(member(js, p, "L"), p + ".L", true);
    s.U = number(member(js, p, "U"), p + ".U", true);
    const json& w = member(js, p, "w");
    if (!w.is_array() || w.size() != 2) field_error(p + ".w", "expected [lo, hi]");
    s.w_low = number(w[0], p + ".w[0]");
    s.w_up = number(w[1], p + ".w[1]");
    s.h = parse_pwa(member(js, p, "h"), p + ".h");
    s.alpha = number_or(js, p, "alpha", 1.0);
    s.beta = number_or(js, p, "beta", 1.0);
    s.gamma = number_or(js, p, "gamma", 1.0);
    if (auto it = js.find("cum_bound"); it != js.end()) {
      s.cum_bound = number(*it, p + ".cum_bound", true);
    }
    inst.stages.push_back(std::move(s));
  }
  validate(inst);
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  json root;
  root["horizon"] = inst.horizon();
  root["x1"] = inst.x1;
  json stages = json::array();
  for (const Stage& s : inst.stages) {
    json js;
    js["c"] = s.c;
    js["L"] = number_json(s.L);
    js["U"] = number_json(s.U);
    js["w"] = {s.w_low, s.w_up};
    json h = json::array();
    for (const AffinePiece& piece : s.h.pieces()) h.push_back({piece.slope, piece.intercept});
    js["h"] = h;
    js["alpha"] = s.alpha;
    js["beta"] = s.beta;
    js["gamma"] = s.gamma;
    if (s.cum_bound) js["cum_bound"] = number_json(*s.cum_bound);
    stages.push_back(js);
  }
  root["stages"] = stages;
  return root.dump(2) + "\n";
}

RsfcSpec parse_rsfc(const std::string& text) {
  const json root = parse_text(text);
  require_object(root, "$", {"horizon", "x1", "rho", "stages"});
  RsfcSpec spec;
  spec.x1 = number(member(root, "$", "x1"), "$.x1");
  spec.rho = number(member(root, "$", "rho"), "$.rho");
  const json& stages = member(root, "$", "stages");
  if (!stages.is_array()) field_error("$.stages", "expected an array");
  if (auto it = root.find("horizon"); it != root.end()) {
    if (!it->is_number_integer() ||
        it->get<long>() != static_cast<long>(stages.size())) {
      field_error("$.horizon", "must be an integer equal to the number of stages");
    }
  }
  for (size_t k = 0; k < stages.size(); ++k) {
    const std::string p = "$.stages[" + std::to_string(k) + "]";
    const json& js = stages[k];
    require_object(js, p, {"demand", "c", "H", "B", "L", "U"});
    RsfcStage s;
    s.demand = number(member(js, p, "demand"), p + ".demand");
    s.c = number(member(js, p, "c"), p + ".c");
    s.H = number(member(js, p, "H"), p + ".H");
    s.B = number(member(js, p, "B"), p + ".B");
    s.L = number(member(js, p, "L"), p + ".L", true);
    s.U = number(member(js, p, "U"), p + ".U", true);
    spec.stages.push_back(s);
  }
  return spec;
}

std::string serialize_rsfc(const RsfcSpec& spec) {
  json root;
  root["horizon"] = spec.stages.size();
  root["x1"] = spec.x1;
  root["rho"] = spec.rho;
  json stages = json::array();
  for (const RsfcStage& s : spec.stages) {
    stages.push_back({{"demand", s.demand}, {"c", s.c}, {"H", s.H},
                      {"B", s.B}, {"L", number_json(s.L)},
                      {"U", number_json(s.U)}});
  }
  root["stages"] = stages;
  return root.dump(2) + "\n";
}

std::string serialize_bundle(const PolicyBundle& bundle) {
  auto coeffs = [](const AffineExpr& e) {
    json a = json::array();
    a.push_back(e.constant);
    for (double c : e.coeffs) a.push_back(c);
    return a;
  };
  json root;
  root["value"] = bundle.value;
  json stages = json::array();
  for (size_t k = 0; k < bundle.q.size(); ++k) {
    json js;
    js["q"] = coeffs(bundle.q[k]);
    js["z"] = coeffs(bundle.z[k]);
    js["x_next"] = coeffs(bundle.x[k + 1]);
    js["case"] = case_name(bundle.cases[k].tag);
    stages.push_back(js);
  }
  root["stages"] = stages;
  return root.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kInvalidInput, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kInvalidInput, "cannot write " + path);
  out << text;
}

}  // namespace robctl
