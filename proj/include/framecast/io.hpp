#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "framecast/beta.hpp"
#include "framecast/pipeline.hpp"

namespace framecast {

inline constexpr std::string_view kSchema = "framecast/1";

// Shortest round-trippable form is not needed; 17 significant digits always round-trip.
std::string format_double(double v);

// `s,k1,k2`. Throws ParseError (position = line number) on malformed input.
void write_development_csv(std::ostream& os, const NormalDevelopment& nd);
NormalDevelopment read_development_csv(std::istream& is);

// `t,x,y,z` with strictly increasing t, interpolated by a natural cubic spline.
CurveSpec read_sampled_curve_csv(std::istream& is, std::string name = "csv");

void write_frenet_csv(std::ostream& os, const std::vector<FrenetSample>& field);
void write_bishop_csv(std::ostream& os, const BishopField& field);
void write_lift_csv(std::ostream& os, const PolarLift& lift);
void write_beta_csv(std::ostream& os, const BetaField& beta);

nlohmann::json to_json(const ZeroAnalysis& a, std::optional<bool> c1);
// Verdict, failure, per-zero analysis; samples are included when with_samples is set.
nlohmann::json lift_report(const LiftResult& r, bool with_samples);
nlohmann::json frenet_json(const std::vector<FrenetSample>& field);
nlohmann::json bishop_json(const BishopField& field);
nlohmann::json beta_json(const BetaField& beta);
nlohmann::json curve_metadata(const ArcLengthCurve& curve);

}  // namespace framecast
