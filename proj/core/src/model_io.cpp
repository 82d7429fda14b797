#include "tsplan/model_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tsplan {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok |= (key == k);
    if (!ok)
      throw ValidationError("unknown field '" + key + "' in " + where +
                            " (strict mode)");
  }
}

double number_field(const json& obj, const char* key,
                    const std::string& where) {
  if (!obj.contains(key))
    throw ValidationError("missing field '" + std::string(key) + "' in " +
                          where);
  const json& v = obj.at(key);
  if (!v.is_number())
    throw ValidationError("field '" + std::string(key) + "' in " + where +
                          " must be a number");
  return v.get<double>();
}

std::string string_field(const json& obj, const char* key,
                         const std::string& where) {
  if (!obj.contains(key) || !obj.at(key).is_string())
    throw ValidationError("missing or non-string field '" + std::string(key) +
                          "' in " + where);
  return obj.at(key).get<std::string>();
}

}  // namespace

ModelDocument parse_model_json(const std::string& text, bool strict) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("model file is not valid JSON: ") +
                          e.what());
  }
  if (!root.is_object())
    throw ValidationError("model file must be a JSON object");
  if (strict)
    reject_unknown(root, {"clusters", "actions", "faults"}, "model document");
  if (!root.contains("clusters") || !root.at("clusters").is_array())
    throw ValidationError("model document needs a 'clusters' array");
  if (!root.contains("actions") || !root.at("actions").is_array())
    throw ValidationError("model document needs an 'actions' array");

  ModelDocument doc;
  for (const json& c : root.at("clusters")) {
    if (!c.is_object())
      throw ValidationError("every cluster must be a JSON object");
    const std::string where =
        "cluster '" + c.value("id", std::string("?")) + "'";
    if (strict)
      reject_unknown(c, {"id", "parent", "open_cost", "close_cost"}, where);
    DocCluster cluster;
    cluster.id = string_field(c, "id", "a cluster entry");
    if (c.contains("parent")) cluster.parent = string_field(c, "parent", where);
    if (c.contains("open_cost"))
      cluster.open_cost = number_field(c, "open_cost", where);
    if (c.contains("close_cost"))
      cluster.close_cost = number_field(c, "close_cost", where);
    doc.clusters.push_back(std::move(cluster));
  }

  for (const json& a : root.at("actions")) {
    if (!a.is_object())
      throw ValidationError("every action must be a JSON object");
    const std::string where =
        "action '" + a.value("id", std::string("?")) + "'";
    if (strict)
      reject_unknown(a, {"id", "cluster", "cost", "p", "success"}, where);
    DocAction action;
    action.id = string_field(a, "id", "an action entry");
    action.cluster = string_field(a, "cluster", where);
    action.cost = number_field(a, "cost", where);
    if (a.contains("p")) action.p = number_field(a, "p", where);
    if (a.contains("success")) {
      const json& row = a.at("success");
      if (!row.is_object())
        throw ValidationError("'success' in " + where +
                              " must map fault ids to probabilities");
      std::map<std::string, double> success;
      for (const auto& [fault, value] : row.items()) {
        if (!value.is_number())
          throw ValidationError("success value for fault '" + fault +
                                "' in " + where + " must be a number");
        success[fault] = value.get<double>();
      }
      action.success = std::move(success);
    }
    doc.actions.push_back(std::move(action));
  }

  if (root.contains("faults")) {
    if (!root.at("faults").is_array())
      throw ValidationError("'faults' must be an array");
    for (const json& f : root.at("faults")) {
      const std::string where =
          "fault '" + f.value("id", std::string("?")) + "'";
      if (strict) reject_unknown(f, {"id", "prior"}, where);
      doc.faults.push_back({string_field(f, "id", "a fault entry"),
                            number_field(f, "prior", where)});
    }
  }
  return doc;
}

std::string model_document_to_json(const ModelDocument& doc, int indent) {
  json root;
  root["clusters"] = json::array();
  for (const DocCluster& c : doc.clusters) {
    json jc{{"id", c.id},
            {"open_cost", c.open_cost},
            {"close_cost", c.close_cost}};
    if (c.parent) jc["parent"] = *c.parent;
    root["clusters"].push_back(std::move(jc));
  }
  root["actions"] = json::array();
  for (const DocAction& a : doc.actions) {
    json ja{{"id", a.id}, {"cluster", a.cluster}, {"cost", a.cost}};
    if (a.p) ja["p"] = *a.p;
    if (a.success) ja["success"] = *a.success;
    root["actions"].push_back(std::move(ja));
  }
  if (!doc.faults.empty()) {
    root["faults"] = json::array();
    for (const DocFault& f : doc.faults)
      root["faults"].push_back({{"id", f.id}, {"prior", f.prior}});
  }
  return root.dump(indent);
}

TroubleshootingModel load_model_file(const std::string& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open model file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return build_model(parse_model_json(buffer.str(), strict));
}

}  // namespace tsplan
