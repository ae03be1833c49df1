#include <json.hpp>

#include "reglab/residues.hpp"

namespace reglab::residues {

using nlohmann::json;

namespace {

RatFunc parse_value(const json& j, const std::string& var) {
  auto poly = [&](const std::string& text) {
    return symbolic::UniPoly::from_multipoly(symbolic::parse_poly(text, {var}), 0);
  };
  if (j.is_string()) return RatFunc(poly(j.get<std::string>()), symbolic::UniPoly::constant(1));
  if (j.is_number_integer()) return RatFunc::constant(Rational(j.get<long>()));
  if (j.is_object()) return RatFunc(poly(j.at("num").get<std::string>()), poly(j.value("den", std::string("1"))));
  throw InputError("function value must be a string, an integer or {num, den}");
}

FunctionRecord parse_record(const json& j, const std::string& var, const std::string& where) {
  FunctionRecord r;
  const json& o = j.at("order");
  if (o.is_number_integer()) {
    r.order = Order::known(o.get<long>());
  } else if (o == "unknown_positive") {
    r.order = Order::positive();
  } else if (o == "unknown_negative") {
    r.order = Order::negative();
  } else {
    throw InputError(where + ": order must be an integer, unknown_positive or unknown_negative");
  }
  if (j.contains("value")) {
    if (j["value"] == "root_of_unity") {
      r.leading = Leading::root_of_unity();
    } else {
      r.leading = Leading::of(parse_value(j["value"], var));
      if (r.leading.value.is_zero()) throw InputError(where + ": leading value must be nonzero");
    }
  } else if (r.order.is_known() && r.order.value == 0) {
    throw InputError(where + ": order 0 requires the restriction as value");
  }
  return r;
}

}  // namespace

std::vector<DivisorData> load_divisors(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("divisor data is not valid JSON: ") + e.what());
  }
  std::vector<DivisorData> out;
  try {
    const std::string default_var = doc.value("parameter", std::string("s"));
    for (const auto& d : doc.at("divisors")) {
      DivisorData p;
      p.name = d.at("name").get<std::string>();
      p.parameter = d.value("parameter", default_var);
      p.note = d.value("note", std::string());
      for (const auto& [fname, rec] : d.at("records").items())
        p.records[fname] = parse_record(rec, p.parameter, p.name + "/" + fname);
      out.push_back(std::move(p));
    }
    const size_t base = out.size();
    if (doc.contains("symmetries"))
      for (const auto& sym : doc["symmetries"]) {
        std::map<std::string, std::string> swap;
        for (const auto& [from, to] : sym.at("swap").items()) swap[from] = to.get<std::string>();
        const std::string suffix = sym.value("suffix", std::string("'"));
        for (size_t i = 0; i < base; ++i) {
          DivisorData p = out[i];
          p.name += suffix;
          p.records.clear();
          for (const auto& [fname, rec] : out[i].records) {
            auto it = swap.find(fname);
            p.records[it == swap.end() ? fname : it->second] = rec;
          }
          out.push_back(std::move(p));
        }
      }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed divisor data: ") + e.what());
  }
  return out;
}

}  // namespace reglab::residues
