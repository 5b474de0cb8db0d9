#pragma once

#include <string>

#include "fcpca/model.hpp"

namespace fcpca {

/// Versioned JSON container for a fitted model. Doubles are emitted with
/// shortest round-trip formatting, so save -> load -> save reproduces the
/// file byte for byte.
std::string serialize_model(const FcpcaModel& model);
FcpcaModel deserialize_model(const std::string& text);

void save_model(const FcpcaModel& model, const std::string& path);
FcpcaModel load_model(const std::string& path);

} // namespace fcpca
