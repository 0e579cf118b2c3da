#include "diagkill/report.hpp"

#include <sstream>

namespace diagkill {

using nlohmann::ordered_json;

namespace {

template <class T>
void put(ordered_json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
void get(const ordered_json& j, const char* key, std::optional<T>& v) {
  if (j.contains(key)) v = j.at(key).get<T>();
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

}  // namespace

ordered_json to_json(const Report& r) {
  ordered_json j;
  j["command"] = r.command;
  j["verdict"] = r.verdict;
  put(j, "max_residual_frame", r.max_residual_frame);
  put(j, "max_residual_coordinate", r.max_residual_coordinate);
  put(j, "oracle_gap", r.oracle_gap);
  put(j, "worst_point", r.worst_point);
  put(j, "descriptor", r.descriptor);
  if (!r.applicable.empty()) j["applicable"] = r.applicable;
  put(j, "k", r.k);
  put(j, "reason", r.reason);
  put(j, "family_dimension", r.family_dimension);
  put(j, "frame_killing_fields", r.frame_killing_fields);
  put(j, "family", r.family);
  if (!r.fields.empty()) {
    ordered_json arr = ordered_json::array();
    for (const auto& f : r.fields) {
      ordered_json e;
      e["label"] = f.label;
      e["params"] = f.params;
      e["field"] = f.field;
      e["max_residual"] = f.max_residual;
      e["verified"] = f.verified;
      arr.push_back(std::move(e));
    }
    j["fields"] = std::move(arr);
  }
  put(j, "max_isometry_defect", r.max_isometry_defect);
  put(j, "flow_points", r.flow_points);
  if (!r.examples.empty()) {
    ordered_json arr = ordered_json::array();
    for (const auto& x : r.examples) {
      ordered_json e;
      e["name"] = x.name;
      e["verdict"] = x.verdict;
      e["max_residual"] = x.max_residual;
      e["note"] = x.note;
      if (x.audit) {
        e["audit"] = {{"printed_verdict", x.audit->printed_verdict},
                      {"printed_max_residual", x.audit->printed_max_residual},
                      {"family_verdict", x.audit->family_verdict},
                      {"family_max_residual", x.audit->family_max_residual},
                      {"note", x.audit->note}};
      }
      arr.push_back(std::move(e));
    }
    j["examples"] = std::move(arr);
  }
  put(j, "error", r.error);
  j["timing_ms"] = r.timing_ms;
  return j;
}

Report report_from_json(const ordered_json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  r.verdict = j.at("verdict").get<std::string>();
  get(j, "max_residual_frame", r.max_residual_frame);
  get(j, "max_residual_coordinate", r.max_residual_coordinate);
  get(j, "oracle_gap", r.oracle_gap);
  get(j, "worst_point", r.worst_point);
  get(j, "descriptor", r.descriptor);
  if (j.contains("applicable")) r.applicable = j.at("applicable").get<std::vector<std::string>>();
  get(j, "k", r.k);
  get(j, "reason", r.reason);
  get(j, "family_dimension", r.family_dimension);
  get(j, "frame_killing_fields", r.frame_killing_fields);
  get(j, "family", r.family);
  if (j.contains("fields")) {
    for (const auto& e : j.at("fields")) {
      GeneratedField f;
      f.label = e.at("label").get<std::string>();
      f.params = e.at("params").get<std::vector<double>>();
      f.field = e.at("field");
      f.max_residual = e.at("max_residual").get<double>();
      f.verified = e.at("verified").get<bool>();
      r.fields.push_back(std::move(f));
    }
  }
  get(j, "max_isometry_defect", r.max_isometry_defect);
  get(j, "flow_points", r.flow_points);
  if (j.contains("examples")) {
    for (const auto& e : j.at("examples")) {
      ExampleResult x;
      x.name = e.at("name").get<std::string>();
      x.verdict = e.at("verdict").get<std::string>();
      x.max_residual = e.at("max_residual").get<double>();
      x.note = e.at("note").get<std::string>();
      if (e.contains("audit")) {
        const auto& a = e.at("audit");
        x.audit = AuditDetail{a.at("printed_verdict").get<std::string>(), a.at("printed_max_residual").get<double>(),
                              a.at("family_verdict").get<std::string>(), a.at("family_max_residual").get<double>(),
                              a.at("note").get<std::string>()};
      }
      r.examples.push_back(std::move(x));
    }
  }
  get(j, "error", r.error);
  r.timing_ms = j.at("timing_ms").get<double>();
  return r;
}

std::string to_text(const Report& r) {
  std::ostringstream o;
  o << r.command << ": " << r.verdict << "\n";
  if (r.error) o << "  error: " << *r.error << "\n";
  if (r.max_residual_frame) o << "  max residual (frame):      " << num(*r.max_residual_frame) << "\n";
  if (r.max_residual_coordinate) o << "  max residual (coordinate): " << num(*r.max_residual_coordinate) << "\n";
  if (r.oracle_gap) o << "  oracle gap:                " << num(*r.oracle_gap) << "\n";
  if (r.worst_point) o << "  worst point:               " << format_point(*r.worst_point) << "\n";
  if (r.descriptor) o << "  family: " << *r.descriptor << "\n";
  if (r.family_dimension) o << "  dimension: " << *r.family_dimension << "\n";
  if (r.k) o << "  k: " << *r.k << "\n";
  if (r.reason) o << "  reason: " << *r.reason << "\n";
  if (!r.applicable.empty()) {
    o << "  applicable:";
    for (const auto& a : r.applicable) o << " " << a;
    o << "\n";
  }
  if (r.frame_killing_fields) {
    o << "  Killing frame fields: {";
    for (std::size_t i = 0; i < r.frame_killing_fields->size(); ++i) {
      o << (i ? ", " : "") << "E" << (*r.frame_killing_fields)[i];
    }
    o << "}\n";
  }
  if (r.family) o << "  generated family: " << *r.family << "\n";
  for (const auto& f : r.fields) {
    o << "  field " << f.label << (f.verified ? " [verified " : " [FAILED ") << num(f.max_residual) << "]\n";
    const auto& frame = f.field.at("frame");
    for (std::size_t k = 0; k < frame.size(); ++k) {
      o << "    V" << k + 1 << " = " << frame[k].get<std::string>() << "\n";
    }
    if (!f.field.contains("tables")) continue;
    for (const auto& t : f.field.at("tables")) {
      o << "    " << t.at("name").get<std::string>() << "(" << t.at("variable").get<std::string>()
        << "): tabulated on " << t.at("knots").size() << " knots, derivative " << t.at("derivative").get<std::string>()
        << "\n";
    }
  }
  if (r.max_isometry_defect) {
    o << "  max isometry defect: " << num(*r.max_isometry_defect);
    if (r.flow_points) o << " over " << *r.flow_points << " points";
    o << "\n";
  }
  for (const auto& x : r.examples) {
    o << "  [" << x.verdict << "] " << x.name << "  max residual " << num(x.max_residual) << "\n";
    if (!x.note.empty()) o << "      " << x.note << "\n";
    if (x.audit) {
      o << "      printed field: " << x.audit->printed_verdict << " (" << num(x.audit->printed_max_residual) << ")\n";
      o << "      family member: " << x.audit->family_verdict << " (" << num(x.audit->family_max_residual) << ")\n";
      if (!x.audit->note.empty()) o << "      " << x.audit->note << "\n";
    }
  }
  o << "  time: " << r.timing_ms << " ms\n";
  return o.str();
}

}  // namespace diagkill
