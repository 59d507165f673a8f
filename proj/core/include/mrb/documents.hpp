#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "mrb/algebra.hpp"
#include "mrb/modules.hpp"
#include "mrb/opring.hpp"
#include "mrb/report.hpp"
#include "mrb/tensor.hpp"

namespace mrb {

using Json = nlohmann::json;

// Scalars travel as rational strings; matrices as row-major arrays of rows
// (column p of the matrix is the image of basis vector p).
Json to_json(const Scalar& s);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);
Scalar scalar_from_json(const Json& j);
Vector vector_from_json(const Json& j, std::size_t length);
Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);

Json read_json_file(const std::filesystem::path& path);

MrbInstance instance_from_json(const Json& j);
Json to_json(const MrbInstance& inst);

/// A catalog name such as "scaled_projection(1,2)" or a path to an instance
/// document, relative paths resolved against `base`. Catalog instances come
/// back verified; documents come back unchecked.
MrbInstance load_instance(std::string_view ref, const std::filesystem::path& base = {});
/// Accepts a reference string or an inline instance object.
MrbInstance instance_from_ref(const Json& ref, const std::filesystem::path& base);

struct ModuleDocument {
  std::string side;  // "left", "right" or "bimodule"
  std::optional<FdLeftModule> left;
  std::optional<FdRightModule> right;
  std::optional<FdBimodule> bimodule;
};

/// "action" lists one array per basis element b_i with entry [p][q] the
/// coefficient of v_q in b_i v_p (v_p b_i for right modules); operators are
/// plain matrices as above.
/// Bimodule documents describe the left structure with "instance", "action"
/// and "operators" and the right one with "right_instance" (defaulting to
/// "instance"), "right_action" and "right_operators". Instances are verified
/// on load (PreconditionError when the identity fails).
ModuleDocument module_from_json(const Json& j, const std::filesystem::path& base = {});
ModuleDocument load_module(const std::filesystem::path& path);

template <Side S>
Json to_json(const FdModule<S>& m);
Json to_json(const FdBimodule& m);

ReweightSpec reweight_spec_from_json(const Json& j);

Json to_json(const Report& r);
Json to_json(const HomSpace& h);
Json to_json(const Subspace& s);
Json to_json(const ProbeResult& p);

}  // namespace mrb
