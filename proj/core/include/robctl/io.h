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

#ifndef ROBCTL_IO_H_
#define ROBCTL_IO_H_

#include <string>

#include "robctl/construct.h"
#include "robctl/instance.h"
#include "robctl/inventory.h"

namespace robctl {

// Instance file:
//   {"horizon": T, "x1": x,
//    "stages": [{"c": c, "L": L, "U": U, "w": [lo, hi],
//                "h": [[slope, intercept], ...],
//                "alpha": a, "beta": b, "gamma": g, "cum_bound": M}, ...]}
// alpha, beta, gamma default to 1 and cum_bound is optional. L, U and
// cum_bound also accept "inf" / "-inf". Unknown fields are rejected.
// Errors are Error(kInvalidInput) naming the line or the field.
Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& instance);

// Inventory file:
//   {"x1": x, "rho": r,
//    "stages": [{"demand": d, "c": c, "H": h, "B": b, "L": L, "U": U}, ...]}
RsfcSpec parse_rsfc(const std::string& text);
std::string serialize_rsfc(const RsfcSpec& spec);

// Per-stage coefficient arrays of q, z and x.
std::string serialize_bundle(const PolicyBundle& bundle);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace robctl

#endif  // ROBCTL_IO_H_
