#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "cuntzwave/cuntz.hpp"
#include "cuntzwave/debranges.hpp"
#include "cuntzwave/filters.hpp"
#include "cuntzwave/indefinite.hpp"
#include "cuntzwave/kernels.hpp"
#include "cuntzwave/laurent.hpp"
#include "cuntzwave/realization.hpp"

namespace cuntzwave::io {

using Json = nlohmann::ordered_json;

/// Parses text; syntax errors become MalformedJSON naming source:line:column.
Json parse_json(const std::string& text, const std::string& source = "<input>");
/// Reads and parses a file; a missing file is an InvalidArgument.
Json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);

/// Complex numbers are [re, im]; a bare number is read as real.
cd complex_from_json(const Json& j);
Json to_json(cd z);

/// Row-major list of rows of complex numbers.
CMatrix matrix_from_json(const Json& j);
Json to_json(const CMatrix& m);

/// {"rows": r, "cols": c, "terms": [{"exp": k, "matrix": ...}, ...]}.
LaurentMatrix laurent_from_json(const Json& j);
Json to_json(const LaurentMatrix& W);

/// {"A": ..., "B": ..., "C": ..., "D": ..., "H": optional}.
Realization realization_from_json(const Json& j);
Json to_json(const Realization& R);

/// {"dim": n, "entries": matrix} or {"diag": [1, -1, ...]}.
SignatureMatrix signature_from_json(const Json& j);
Json to_json(const SignatureMatrix& J);

/// {"N": n, "s_hat": [laurent, ...]}.
FilterBank bank_from_json(const Json& j);
Json to_json(const FilterBank& bank);

/// {"N": n, "entries": matrix}, validated.
PMatrix pmatrix_from_json(const Json& j);

/// {"trials": t, "max_points": m, "seed": s, "radius": r, "tol": optional}.
GridConfig grid_from_json(const Json& j, GridConfig defaults = {});
Json to_json(const GridConfig& cfg);

/// A Laurent object (has "terms") or a realization (has "A").
MatrixFunction function_from_json(const Json& j);

/// Resolves a value that is either an inline object or a path string,
/// relative paths being taken from base_dir.
Json resolve_reference(const Json& j, const std::filesystem::path& base_dir);

/// {"kind": "K_W" | "K_Theta" | "NonSquare" | "D_Theta" | "Hardy",
///  "function": path or inline, "J" / "J1" / "J2": path or inline,
///  "dim": p (Hardy), "copies": c (optional block-diagonal repetition)}.
Kernel kernel_from_json(const Json& j, const std::filesystem::path& base_dir);

/// {"type": "identity" | "power" | "rotation", "N": n}.
DiskMap diskmap_from_json(const Json& j);

Json to_json(const Signature& s);
Json to_json(const SteinCertificate& cert);
Json to_json(const CuntzReport& rep);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace cuntzwave::io
