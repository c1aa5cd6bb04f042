// Copyright 2026 The limbkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "limbkit/stress.hpp"

#include <array>
#include <cmath>

#include "limbkit/io.hpp"

namespace limbkit::stress {

using namespace limbkit::units;

namespace {

constexpr std::array<std::string_view, 3> kCaseNames{"heel-strike", "opposite-heel-strike", "standing"};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Area area(const CrossSection& section) {
  return std::visit(Overloaded{
                        [](const SolidCircle& c) { return kPi / 4.0 * c.diameter * c.diameter; },
                        [](const Rectangle& r) { return r.width * r.height; },
                    },
                    section);
}

SecondMomentOfArea second_moment(const CrossSection& section) {
  return std::visit(Overloaded{
                        [](const SolidCircle& c) {
                          const Area d2 = c.diameter * c.diameter;
                          return kPi / 64.0 * d2 * d2;
                        },
                        [](const Rectangle& r) { return r.width * r.height * r.height * r.height / 12.0; },
                    },
                    section);
}

Length extreme_fibre(const CrossSection& section) {
  return std::visit(Overloaded{
                        [](const SolidCircle& c) { return c.diameter / 2.0; },
                        [](const Rectangle& r) { return r.height / 2.0; },
                    },
                    section);
}

void MemberGeometry::validate() const {
  if (name.empty()) throw InvalidArgument("member name is empty");
  const bool dims_ok = std::visit(Overloaded{
                                      [](const SolidCircle& c) { return c.diameter.si() > 0.0; },
                                      [](const Rectangle& r) { return r.width.si() > 0.0 && r.height.si() > 0.0; },
                                  },
                                  cross_section);
  if (!dims_ok || !(length.si() > 0.0)) throw InvalidArgument("member '" + name + "': dimensions must be > 0");
  if (!(share.axial >= 0.0 && share.shear >= 0.0)) {
    throw InvalidArgument("member '" + name + "': load shares must be >= 0");
  }
}

std::string_view to_string(CaseName c) { return kCaseNames.at(static_cast<std::size_t>(c)); }

CaseName parse_case_name(std::string_view text) {
  for (std::size_t i = 0; i < kCaseNames.size(); ++i) {
    if (kCaseNames[i] == text) return static_cast<CaseName>(i);
  }
  throw InvalidArgument("unknown load case '" + std::string(text) + "'");
}

void LoadCase::validate() const {
  if (!std::isfinite(axial.si()) || !std::isfinite(shear.si())) {
    throw InvalidArgument("load case '" + std::string(to_string(name)) + "': forces must be finite");
  }
  if (!(moment_arm.si() >= 0.0)) {
    throw InvalidArgument("load case '" + std::string(to_string(name)) + "': moment arm must be >= 0");
  }
}

Stress von_mises(Stress axial, Stress bending, Stress shear) {
  const double normal = axial.si() + bending.si();
  const double tau = shear.si();
  return Stress::from_si(std::sqrt(normal * normal + 3.0 * tau * tau));
}

StressReport evaluate_case(const MemberGeometry& member, const LoadCase& lc, const MaterialCatalog& catalog) {
  member.validate();
  lc.validate();
  const MaterialProps& mat = catalog.lookup(member.material);

  const Force axial = member.share.axial * lc.axial;
  const Force shear = member.share.shear * lc.shear;
  const Area a = area(member.cross_section);

  StressReport r;
  r.member = member.name;
  r.load_case = std::string(to_string(lc.name));
  r.axial_stress = axial / a;
  r.bending_stress = units::abs(shear * lc.moment_arm * extreme_fibre(member.cross_section) /
                                second_moment(member.cross_section));
  r.shear_stress = shear / a;
  // Worst fibre: bending adds to the axial stress magnitude on one face.
  r.von_mises = von_mises(units::abs(r.axial_stress), r.bending_stress, r.shear_stress);
  r.utilization = r.von_mises.si() / mat.yield_strength.si();
  r.safe = r.utilization < 1.0;
  return r;
}

std::vector<StressReport> run_all_cases(const std::vector<MemberGeometry>& members, const std::vector<LoadCase>& cases,
                                        const MaterialCatalog& catalog) {
  if (members.empty() || cases.empty()) throw InvalidArgument("run_all_cases: members and cases must be non-empty");
  std::vector<StressReport> out;
  out.reserve(members.size() * cases.size());
  for (const auto& m : members) {
    for (const auto& c : cases) out.push_back(evaluate_case(m, c, catalog));
  }
  return out;
}

std::string reports_csv(const std::vector<StressReport>& reports) {
  io::CsvBuilder csv{"member", "case", "axial_pa", "bending_pa", "shear_pa", "von_mises_pa", "utilization", "safe"};
  for (const auto& r : reports) {
    csv.field(r.member)
        .field(r.load_case)
        .field(r.axial_stress.si())
        .field(r.bending_stress.si())
        .field(r.shear_stress.si())
        .field(r.von_mises.si())
        .field(r.utilization)
        .field(r.safe ? "true" : "false");
    csv.end_row();
  }
  return csv.str();
}

}  // namespace limbkit::stress
