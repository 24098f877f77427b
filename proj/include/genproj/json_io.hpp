#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "genproj/generalized_projection.hpp"
#include "genproj/matrix.hpp"
#include "genproj/search.hpp"
#include "genproj/spectral.hpp"
#include "genproj/theorems.hpp"

namespace genproj {

using Json = nlohmann::json;

// Matrix: {"rows": r, "cols": c, "data": [[re, im], ...]} row-major.
// Doubles are written in shortest round-trip form, so reloading is exact.
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// GenProjForm: {"n": n, "projections": [Matrix...], "kernel": Matrix}.
Json to_json(const GenProjForm& f);
GenProjForm form_from_json(const Json& j);

Json to_json(const GenProjReport& r);
Json to_json(const ClassReport& r);
Json to_json(const SearchResult& r);

Json to_json(const CheckReport& r);
CheckReport check_report_from_json(const Json& j);
Json to_json(const Campaign& c);

/// Parse errors and schema violations surface as InvalidArgument, unreadable
/// or unwritable files as IoError.
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace genproj
