#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cocycle_lab/bounds.hpp"
#include "cocycle_lab/cohomology.hpp"
#include "cocycle_lab/groups.hpp"
#include "cocycle_lab/mps.hpp"
#include "cocycle_lab/numkernel/intmatrix.hpp"
#include "cocycle_lab/projrep.hpp"
#include "cocycle_lab/twisted.hpp"

namespace cocycle_lab::json_io {

using Json = nlohmann::json;
namespace fs = std::filesystem;

/// Parses a UTF-8 JSON file. Throws InvalidInput naming the path.
Json read_file(const fs::path& path);

/// Floats printed with %.17g, object keys sorted. Indent 2 unless compact.
std::string dump(const Json& j, bool compact);

/// trivial, z<n>, z2xz2 (also k4), s3, d4, q8, z2xz4.
FiniteGroup builtin_group(const std::string& name);
std::vector<std::string> builtin_group_names();

/// A group given inline, as a builtin name, or as a path relative to `base`.
FiniteGroup group_from_json(const Json& j, const fs::path& base = {});
/// Builtin name or path to a group file.
FiniteGroup load_group(const std::string& name_or_path);
Json to_json(const FiniteGroup& g);

/// Rows of [re, im] pairs; bare numbers are read as real.
CMatrix matrix_from_json(const Json& j);
Json to_json(const CMatrix& m);
/// A bare matrix or {"matrix": ...}.
CMatrix load_matrix(const fs::path& path);

numkernel::IntMatrix intmatrix_from_json(const Json& j);
/// Entries outside the int64 range are written as decimal strings.
Json to_json(const numkernel::IntMatrix& m);

OnsiteRep onsite_from_json(const Json& j, const fs::path& base = {});
OnsiteRep load_onsite(const fs::path& path);
Json to_json(const OnsiteRep& u);

/// {"group", "m", "exponents"} or {"group", "phases"} in turns. `group` overrides the
/// file's group field when the cocycle is embedded in a representation.
Cocycle cocycle_from_json(const Json& j, const fs::path& base = {}, const std::optional<FiniteGroup>& group = {});
Cocycle load_cocycle(const fs::path& path);
Json to_json(const Cocycle& c);

/// {"group", "m", "exponents": [k_g]} or {"group", "phases": [turns]}.
PhaseFunction phase_function_from_json(const Json& j, const fs::path& base = {});
PhaseFunction load_phase_function(const fs::path& path);

ProjectiveRep projrep_from_json(const Json& j, const fs::path& base = {});
ProjectiveRep load_projrep(const fs::path& path);
Json to_json(const ProjectiveRep& v);

/// Raw tensors; pass through canonicalize() before use.
std::vector<CMatrix> mps_tensors_from_json(const Json& j);
std::vector<CMatrix> load_mps_tensors(const fs::path& path);
Json to_json(const MpsState& s);

Json to_json(const IrrepTable& t);
Json to_json(const BoundReport& r);
Json to_json(const GrowthTable& t);
Json to_json(const SymmetryCertificate& c);
Json to_json(const IdentityReport& r);

/// {"window": [sites], "cocycle": ..., "rep": ...} with an optional "covariant" field:
/// "regular" (default), "identity", or {"tensor": projective rep}.
CovariantRep covariant_from_json(const Json& j, const fs::path& base = {});
CovariantRep load_covariant(const fs::path& path);

/// {"window": [sites], "cocycle": ..., "values": {name(g): matrix}}
Json to_json(const TwistedElement& f);
TwistedElement twisted_element_from_json(const Json& j, const SystemPtr& s);

}  // namespace cocycle_lab::json_io
