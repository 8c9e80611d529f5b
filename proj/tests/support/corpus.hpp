#ifndef TESTS_SUPPORT_CORPUS_HPP
#define TESTS_SUPPORT_CORPUS_HPP

#include <string>

#include "malcev/table_io.hpp"

namespace testsupport {

inline std::string data_path(const std::string& name) {
  return std::string(MALCEV_DATA_DIR) + "/" + name;
}

inline malcev::AlgebraPtr load(const std::string& name) {
  return malcev::load_table_file(data_path(name));
}

}  // namespace testsupport

#endif
