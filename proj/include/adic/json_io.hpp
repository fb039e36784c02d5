#pragma once

#include "adic/diagram.hpp"
#include "adic/gallery.hpp"
#include "adic/measures.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace adic {

using Json = nlohmann::ordered_json;

// A diagram file: the sequence, an optional order, and optionally a base
// subdiagram with its embedding.
struct DiagramInput {
  BratteliDiagram diagram;
  std::optional<MatrixSequence> base;
  Embedding embedding;
  std::map<std::string, std::string> edge_names;
};

MatrixSequence sequence_from_json(const Json& j);
Embedding embedding_from_json(const Json& j);
DiagramInput diagram_from_json(const Json& j);
DiagramInput load_diagram(const std::string& path);  // InvalidInput on bad files

Json sequence_json(const MatrixSequence& seq);
Json order_json(const BratteliDiagram& d);
Json diagram_json(const BratteliDiagram& d);
Json embedding_json(const Embedding& e);
Json example_json(const ExampleSpec& e);

// "p/q", or "p" for integers
std::string fraction(const Rational& q);
Json interval_json(const Interval& box);
Json value_json(const MeasureValue& v);
Json ray_json(const EigenRay& r);

}  // namespace adic
