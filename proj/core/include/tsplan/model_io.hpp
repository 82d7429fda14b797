#pragma once

#include <string>

#include "tsplan/model.hpp"

namespace tsplan {

/// Parses the JSON model format into a document. In strict mode unknown
/// fields are rejected to catch typos; otherwise they are ignored.
///
/// {
///   "clusters": [{"id": "root", "open_cost": 0, "close_cost": 0},
///                {"id": "k1", "parent": "root", "open_cost": 1.5,
///                 "close_cost": 0.5}],
///   "actions":  [{"id": "a1", "cluster": "k1", "cost": 2, "p": 0.3}],
///   "faults":   [{"id": "f1", "prior": 1.0}]      // optional layer
/// }
///
/// With a fault layer, actions carry "success": {"f1": 0.3, ...} instead
/// of "p".
ModelDocument parse_model_json(const std::string& text, bool strict = false);

/// Serializes a document back to its JSON form (full double precision).
std::string model_document_to_json(const ModelDocument& doc, int indent = 2);

/// Reads, parses and validates a model file in one step.
TroubleshootingModel load_model_file(const std::string& path,
                                     bool strict = false);

}  // namespace tsplan
