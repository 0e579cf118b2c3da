#include "diagkill/field_io.hpp"

#include <map>
#include <set>
#include <stdexcept>

#include "diagkill/jobspec.hpp"
#include "diagkill/univariate.hpp"

namespace diagkill {

using expr::UnivariateFunction;

nlohmann::ordered_json export_field(const FrameVectorField& v, const Box& box, int knots) {
  if (knots < 2) throw std::invalid_argument("export needs at least 2 knots");
  // Stable names in order of first appearance; label collisions get a numeric suffix.
  std::map<const UnivariateFunction*, std::string> names;
  std::vector<std::shared_ptr<const UnivariateFunction>> order;
  std::set<std::string> taken;
  for (int k = 0; k < 3; ++k) {
    expr::for_each_function(v[k], [&](const std::shared_ptr<const UnivariateFunction>& fn) {
      if (names.count(fn.get())) return;
      std::string name = fn->label();
      for (int n = 2; taken.count(name); ++n) name = fn->label() + "_" + std::to_string(n);
      taken.insert(name);
      names.emplace(fn.get(), name);
      order.push_back(fn);
    });
  }
  const expr::FunctionNamer namer = [&](const UnivariateFunction& fn) { return names.at(&fn); };

  nlohmann::ordered_json doc;
  doc["frame"] = nlohmann::ordered_json::array();
  for (int k = 0; k < 3; ++k) doc["frame"].push_back(expr::to_string(v[k], namer));
  doc["tables"] = nlohmann::ordered_json::array();
  for (const auto& fn : order) {
    const ScalarField d = fn->derivative();
    expr::for_each_function(d, [](const auto&) {
      throw std::logic_error("cannot export a primitive whose derivative contains another primitive");
    });
    const Interval iv = box.along(fn->axis());
    std::vector<double> ts(static_cast<std::size_t>(knots)), vals(ts.size());
    for (int i = 0; i < knots; ++i) {
      ts[i] = i == knots - 1 ? iv.hi : iv.lo + (iv.hi - iv.lo) * i / (knots - 1);
      vals[i] = fn->value(ts[i]);
    }
    nlohmann::ordered_json t;
    t["name"] = names.at(fn.get());
    t["variable"] = axis_name(fn->axis());
    t["knots"] = ts;
    t["values"] = vals;
    t["derivative"] = expr::to_string(d);
    doc["tables"].push_back(std::move(t));
  }
  return doc;
}

FrameVectorField import_field(const nlohmann::json& doc) {
  try {
    expr::SymbolTable symbols;
    if (doc.contains("tables")) {
      for (const auto& t : doc.at("tables")) {
        const auto name = t.at("name").get<std::string>();
        const auto var = t.at("variable").get<std::string>();
        Axis axis;
        if (var == "x1") {
          axis = Axis::X1;
        } else if (var == "x2") {
          axis = Axis::X2;
        } else if (var == "x3") {
          axis = Axis::X3;
        } else {
          throw SpecError(0, "table '" + name + "' has unknown variable '" + var + "'");
        }
        symbols[name] = std::make_shared<const expr::TabulatedFunction>(
            name, axis, t.at("knots").get<std::vector<double>>(), t.at("values").get<std::vector<double>>(),
            expr::parse(t.at("derivative").get<std::string>()));
      }
    }
    const auto frame = doc.at("frame").get<std::vector<std::string>>();
    if (frame.size() != 3) throw SpecError(0, "field document needs 3 frame components");
    return FrameVectorField::parse({frame[0], frame[1], frame[2]}, symbols);
  } catch (const SpecError&) {
    throw;
  } catch (const Error& e) {
    // Bad DSL in a component or derivative, or a table name the components don't declare.
    throw SpecError(0, std::string("malformed field document: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(0, std::string("malformed field document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SpecError(0, std::string("malformed field document: ") + e.what());
  }
}

}  // namespace diagkill
