#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "json.hpp"
#include "selectra/engines.hpp"
#include "selectra/relations.hpp"

namespace selectra {

enum class FieldKind { Scalar, Interval, Polytope, FiniteSet, Cover };

std::string to_string(FieldKind kind);

/// A named field of an instance. Interval and polytope fields both hold a
/// ConvexCellRelation; the kind only records how it was written.
struct Field {
  FieldKind kind;
  std::variant<ScalarCellField, ConvexCellRelation, FiniteSetCellField, IndexedCover> value;

  const ScalarCellField& scalar() const;
  const ConvexCellRelation& relation() const;
  const FiniteSetCellField& finite_set() const;
  const IndexedCover& cover() const;
};

/// Vertex values of a (possibly partial) PL map. When the document carries a
/// refinement, vertex ids refer to its fine complex.
struct SelectionData {
  std::string field;
  std::size_t dim = 0;
  std::map<VertexId, Vec> values;
};

/// Parsed and validated instance file.
///
///   {"complex": {"dim": d, "vertices": [[...], ...], "simplices": [[...], ...]},
///    "fields": {name: {"kind": ..., "values": {cell id: ...}}},
///    "selection": {...}, "refinement": {...}, "subcomplexes": {name: [cell ids]},
///    "product_of": {"left": complex, "right": complex}}
///
/// Any other top-level key (engine outputs such as "certificate" or "trace")
/// is kept verbatim in `extra`.
struct InstanceDocument {
  ComplexPtr complex;
  std::optional<ProductComplex> product;
  std::map<std::string, Field> fields;
  std::map<std::string, CellSet> subcomplexes;
  std::optional<Refinement> refinement;
  std::optional<SelectionData> selection;
  nlohmann::json extra = nlohmann::json::object();

  /// Errors: ValidationError (missing field, wrong kind).
  const Field& field(const std::string& name, FieldKind kind) const;
  const Field& field(const std::string& name) const;
  const CellSet& subcomplex(const std::string& name) const;
  /// The selection as a PLMap on the refinement's fine complex (or the base
  /// complex). Errors: ValidationError when some vertex has no value.
  PLMap selection_map() const;
  /// Identity refinement when the document has none.
  Refinement selection_refinement() const;
};

/// Errors: ParseError ("line L, column C: ..."), ValidationError
/// ("cell 0-1: reason"), plus the validation errors of the module types.
InstanceDocument parse_instance(const std::string& text);
InstanceDocument read_instance(const std::string& path);

/// Canonical text: sorted keys, two-space indentation, rationals in lowest
/// terms. parse ∘ serialize is the identity on parsed documents.
std::string serialize_instance(const InstanceDocument& doc);

// Pieces reused by engine outputs.
nlohmann::json complex_to_json(const SimplicialComplex& k);
nlohmann::json body_to_json(const ConvexBody& body);
nlohmann::json vec_to_json(const Vec& v);
nlohmann::json refinement_to_json(const Refinement& r);
nlohmann::json selection_to_json(const std::string& field, const PLMap& f);
nlohmann::json certificate_to_json(const SimplicialComplex& fine, const SimplicialComplex& coarse,
                                   const SelectionCertificate& cert);
nlohmann::json cover_to_json(const IndexedCover& omega);
void set_field(InstanceDocument& doc, const std::string& name, Field field);

/// Writes through a temporary file in the same directory and renames it.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace selectra
