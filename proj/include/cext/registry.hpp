#pragma once

#include <string>
#include <vector>

#include "cext/lab.hpp"

namespace cext {

// Named bundles available to the command line tool and the test corpus.
ExtensionBundle registry_extension(const std::string& name);
QCEBundle registry_qce(const std::string& name);
Cocycle registry_cocycle(const std::string& name);

std::vector<std::string> registry_extension_names();
std::vector<std::string> registry_qce_names();
std::vector<std::string> registry_cocycle_names();

}  // namespace cext
