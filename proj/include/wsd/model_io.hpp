#pragma once

#include <iosfwd>
#include <string>

#include "wsd/classifiers.hpp"

namespace wsd {

// Versioned UTF-8 text format, header "WSDMODEL 1 <algo> <lemma> <k>
// <n_features>". Floating-point fields use 17 significant digits so that
// save -> load -> save is byte-identical.
std::string serialize_model(const Model& model);

Model parse_model(std::istream& in);

void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

}  // namespace wsd
