#include "report.hpp"

#include <charconv>
#include <cmath>

#include "config.hpp"

namespace derham::cli {

namespace {

// JSON has no NaN or infinity; those become null.
ordered_json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

ordered_json to_json(const Scalar& x) { return x.to_string(); }

ordered_json to_json(const MoebiusMatrix& m) {
  return ordered_json::array({to_json(m.a), to_json(m.b), to_json(m.c), to_json(m.d)});
}

ordered_json to_json(const DimensionBounds& b) {
  ordered_json out;
  out["theta1"] = number(b.theta1);
  out["theta2"] = number(b.theta2);
  out["dim_upper"] = number(b.dim_upper);
  out["dim_lower"] = number(b.dim_lower);
  out["argmax_location"] = to_json(b.argmax_location);
  return out;
}

ordered_json to_json(const ClassificationReport& r) {
  ordered_json out;
  out["verdict"] = r.absolutely_continuous() ? "AbsolutelyContinuous" : "Singular";
  out["condition_i"] = r.condition_i;
  out["condition_ii"] = r.condition_ii;
  out["exactness"] = std::string(to_string(r.exactness));
  if (const auto* ac = std::get_if<AbsolutelyContinuous>(&r.verdict)) {
    out["c0"] = to_json(ac->c0norm);
    // density k / (m x + k)^2 with k = 1 + 2 c0, m = -2 c0
    const Scalar k = Scalar(1) + Scalar(2) * ac->c0norm;
    out["density"] = {{"form", "k/(m*x+k)^2"}, {"k", to_json(k)}, {"m", to_json(-(Scalar(2) * ac->c0norm))}};
  } else {
    const auto& s = std::get<Singular>(r.verdict);
    out.update(to_json(s.bounds));
    out["defect_bound"] = s.defect_bound ? number(*s.defect_bound) : ordered_json(nullptr);
  }
  if (r.exactness == Mode::approx)
    out["warning"] =
        "approximate input: conditions (i) and (ii) were tested within a tolerance; "
        "an AbsolutelyContinuous verdict cannot be certified in floating point";
  return out;
}

ordered_json to_json(const StationarityReport& r) {
  ordered_json out;
  out["depth"] = r.depth;
  out["max_residual_recursion"] = to_json(r.max_residual_recursion);
  out["max_residual_mass"] = to_json(r.max_residual_mass);
  out["verdict_transfer"] = r.verdict_transfer;
  return out;
}

ordered_json validation_json(const MoebiusMatrix& a0, const MoebiusMatrix& a1,
                             const DeRhamSystem* sys, const std::vector<Violation>& violations) {
  ordered_json out = report_header("validate");
  out["valid"] = sys != nullptr;
  out["A0"] = to_json(a0);
  out["A1"] = to_json(a1);
  ordered_json conditions;
  for (const char* name : {"A1", "A2", "A3", "derived"}) {
    bool ok = true;
    for (const auto& v : violations) ok = ok && v.condition != name;
    conditions[name] = ok;
  }
  out["conditions"] = conditions;
  ordered_json list = ordered_json::array();
  for (const auto& v : violations) list.push_back({{"condition", v.condition}, {"detail", v.detail}});
  out["violations"] = list;
  if (sys) {
    out["mode"] = std::string(to_string(sys->mode()));
    out["alpha"] = to_json(sys->alpha());
    out["beta"] = to_json(sys->beta());
    out["gamma"] = to_json(sys->gamma());
    const FixedPoints fp = fixed_points(*sys);
    out["fixed_points"] = {{"transposed0", to_json(fp.transposed0)},
                           {"transposed1", {to_json(fp.transposed1.first), to_json(fp.transposed1.second)}}};
  }
  return out;
}

ordered_json report_header(const std::string& command) {
  ordered_json out;
  out["schema"] = kSchemaVersion;
  out["command"] = command;
  return out;
}

}  // namespace derham::cli
